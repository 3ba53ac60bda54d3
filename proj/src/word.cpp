#include "exotic/word.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace exotic {

namespace {

void push_reduced(std::vector<Syllable>& out, Syllable s) {
  if (s.exp == 0) return;
  if (!out.empty() && out.back().gen == s.gen) {
    out.back().exp += s.exp;
    if (out.back().exp == 0) out.pop_back();
    return;
  }
  out.push_back(s);
}

}  // namespace

Word Word::generator(GenIndex g, std::int64_t exp) {
  Word w;
  if (exp != 0) w.syl_.push_back({g, exp});
  return w;
}

Word Word::from_syllables(std::span<const Syllable> raw) {
  Word w;
  w.syl_.reserve(raw.size());
  for (const auto& s : raw) push_reduced(w.syl_, s);
  return w;
}

Word reduce(std::span<const Syllable> raw) { return Word::from_syllables(raw); }

std::uint64_t Word::length() const {
  std::uint64_t n = 0;
  for (const auto& s : syl_) n += static_cast<std::uint64_t>(std::llabs(s.exp));
  return n;
}

Word Word::inverse() const {
  Word w;
  w.syl_.reserve(syl_.size());
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.syl_.push_back({it->gen, -it->exp});
  return w;
}

Word Word::pow(std::int64_t n) const {
  if (n == 0 || empty()) return {};
  if (n < 0) return inverse().pow(-n);
  if (syl_.size() == 1) return generator(syl_.front().gen, syl_.front().exp * n);
  Word result;
  Word base = *this;
  auto e = static_cast<std::uint64_t>(n);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

std::int64_t Word::exponent_sum(GenIndex g) const {
  std::int64_t sum = 0;
  for (const auto& s : syl_)
    if (s.gen == g) sum += s.exp;
  return sum;
}

std::uint64_t Word::occurrences(GenIndex g) const {
  std::uint64_t n = 0;
  for (const auto& s : syl_)
    if (s.gen == g) n += static_cast<std::uint64_t>(std::llabs(s.exp));
  return n;
}

bool Word::contains(GenIndex g) const {
  return std::any_of(syl_.begin(), syl_.end(), [g](const Syllable& s) { return s.gen == g; });
}

GenIndex Word::max_generator() const {
  GenIndex m = 0;
  for (const auto& s : syl_) m = std::max(m, s.gen);
  return m;
}

Word Word::substitute(GenIndex g, const Word& replacement) const {
  if (!contains(g)) return *this;
  const Word inv = replacement.inverse();
  std::vector<Syllable> raw;
  raw.reserve(syl_.size() + replacement.syl_.size());
  for (const auto& s : syl_) {
    if (s.gen != g) {
      raw.push_back(s);
      continue;
    }
    const Word& piece = s.exp > 0 ? replacement : inv;
    for (std::int64_t i = 0; i < std::llabs(s.exp); ++i)
      raw.insert(raw.end(), piece.syl_.begin(), piece.syl_.end());
  }
  return from_syllables(raw);
}

Word Word::renumbered(std::span<const GenIndex> map) const {
  std::vector<Syllable> raw;
  raw.reserve(syl_.size());
  for (const auto& s : syl_) {
    if (s.gen >= map.size()) throw std::out_of_range("Word::renumbered: generator outside map");
    raw.push_back({map[s.gen], s.exp});
  }
  return from_syllables(raw);
}

Word Word::cyclically_reduced() const {
  if (syl_.size() < 2) return *this;
  std::size_t lo = 0;
  std::size_t hi = syl_.size();  // exclusive
  std::int64_t carry = 0;        // merged exponent placed at the front
  // Peel matching outer syllables: x w x^-1 -> w.
  while (hi - lo >= 2 && syl_[lo].gen == syl_[hi - 1].gen) {
    const std::int64_t merged = syl_[lo].exp + syl_[hi - 1].exp;
    if (merged != 0) {
      carry = merged;
      break;
    }
    ++lo;
    --hi;
  }
  Word w;
  if (carry != 0) {
    w.syl_.push_back({syl_[lo].gen, carry});
    w.syl_.insert(w.syl_.end(), syl_.begin() + static_cast<std::ptrdiff_t>(lo) + 1,
                  syl_.begin() + static_cast<std::ptrdiff_t>(hi) - 1);
  } else {
    w.syl_.assign(syl_.begin() + static_cast<std::ptrdiff_t>(lo),
                  syl_.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  return w;
}

std::vector<std::uint32_t> Word::letters() const {
  std::vector<std::uint32_t> out;
  out.reserve(length());
  for (const auto& s : syl_) {
    const std::uint32_t letter = 2 * s.gen + (s.exp < 0 ? 1U : 0U);
    for (std::int64_t i = 0; i < std::llabs(s.exp); ++i) out.push_back(letter);
  }
  return out;
}

Word operator*(const Word& lhs, const Word& rhs) {
  Word w = lhs;
  w *= rhs;
  return w;
}

Word& Word::operator*=(const Word& rhs) {
  for (const auto& s : rhs.syl_) push_reduced(syl_, s);
  return *this;
}

Word commutator(const Word& u, const Word& v) { return u.inverse() * v.inverse() * u * v; }

Word relation(const Word& lhs, const Word& rhs) { return lhs * rhs.inverse(); }

Word canonical_relator(const Word& w) {
  const Word core = w.cyclically_reduced();
  if (core.empty()) return core;
  Word best = core;
  for (const Word& cand : {core, core.inverse()}) {
    const auto s = cand.syllables();
    for (std::size_t r = 0; r < s.size(); ++r) {
      std::vector<Syllable> rot(s.begin() + static_cast<std::ptrdiff_t>(r), s.end());
      rot.insert(rot.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(r));
      Word rw = Word::from_syllables(rot);
      if (rw < best) best = std::move(rw);
    }
  }
  return best;
}

}  // namespace exotic
