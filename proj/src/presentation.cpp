#include "exotic/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "exotic/errors.hpp"

namespace exotic {

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name.front())) && name.front() != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : gens_(std::move(generators)) {
  std::set<std::string_view> seen;
  for (const auto& g : gens_) {
    if (!is_identifier(g)) throw ValidationError("invalid generator name '" + g + "'");
    if (!seen.insert(g).second) throw ValidationError("duplicate generator name '" + g + "'");
  }
  rels_.reserve(relators.size());
  for (auto& r : relators) {
    if (r.empty()) continue;
    if (r.max_generator() >= gens_.size())
      throw ValidationError("relator uses a generator outside the presentation");
    rels_.push_back(std::move(r));
  }
}

std::optional<GenIndex> Presentation::find(std::string_view name) const {
  auto it = std::find(gens_.begin(), gens_.end(), name);
  if (it == gens_.end()) return std::nullopt;
  return static_cast<GenIndex>(it - gens_.begin());
}

GenIndex Presentation::index(std::string_view name) const {
  auto idx = find(name);
  if (!idx) throw ValidationError("unknown generator '" + std::string(name) + "'");
  return *idx;
}

Word Presentation::word(std::string_view name, std::int64_t exp) const {
  return Word::generator(index(name), exp);
}

std::uint64_t Presentation::total_length() const {
  std::uint64_t n = 0;
  for (const auto& r : rels_) n += r.length();
  return n;
}

std::optional<std::size_t> Presentation::find_relator(const Word& w) const {
  const Word target = canonical_relator(w);
  for (std::size_t i = 0; i < rels_.size(); ++i)
    if (canonical_relator(rels_[i]) == target) return i;
  return std::nullopt;
}

Presentation Presentation::with_relator(Word w) const {
  auto rels = rels_;
  rels.push_back(std::move(w));
  return {gens_, std::move(rels)};
}

Presentation Presentation::without_relator(std::size_t i) const {
  if (i >= rels_.size()) throw ValidationError("relator index out of range");
  auto rels = rels_;
  rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(i));
  return {gens_, std::move(rels)};
}

Presentation Presentation::with_relators(std::vector<Word> rels) const {
  return {gens_, std::move(rels)};
}

Presentation Presentation::permuted(std::span<const std::size_t> order) const {
  if (order.size() != rels_.size()) throw ValidationError("permutation size mismatch");
  std::vector<Word> rels;
  rels.reserve(order.size());
  for (auto i : order) rels.push_back(rels_.at(i));
  return {gens_, std::move(rels)};
}

Presentation Presentation::renamed(std::vector<std::string> names) const {
  if (names.size() != gens_.size()) throw ValidationError("rename size mismatch");
  return {std::move(names), rels_};
}

std::string Presentation::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += '*';
    out += gens_.at(s.gen);
    if (s.exp != 1) {
      out += '^';
      out += std::to_string(s.exp);
    }
  }
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(const Presentation& p, std::string_view text, std::size_t line, std::size_t column)
      : p_(p), text_(text), line_(line), column_(column) {}

  Word relation() {
    Word lhs = word();
    skip_ws();
    if (peek() == '=') {
      ++pos_;
      Word rhs = word();
      finish();
      return exotic::relation(lhs, rhs);
    }
    finish();
    return lhs;
  }

  Word single() {
    Word w = word();
    finish();
    return w;
  }

 private:
  Word word() {
    Word w = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') return w;
      ++pos_;
      w *= factor();
    }
  }

  Word factor() {
    Word base = atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    return base.pow(integer());
  }

  Word atom() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      return commutator(u, v);
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      const auto name = text_.substr(start, pos_ - start);
      auto idx = p_.find(name);
      if (!idx) fail("unknown generator '" + std::string(name) + "'", start);
      return Word::generator(*idx);
    }
    if (c == '\0') fail("unexpected end of input", pos_);
    fail(std::string("unexpected character '") + c + "'", pos_);
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      fail("expected integer exponent", start);
    return value;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input", pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[nodiscard]] char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, line_, column_ + at);
  }

  const Presentation& p_;
  std::string_view text_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const Presentation& p, std::string_view text, std::size_t line,
                std::size_t column) {
  return WordParser(p, text, line, column).single();
}

Word parse_relation(const Presentation& p, std::string_view text, std::size_t line,
                    std::size_t column) {
  return WordParser(p, text, line, column).relation();
}

}  // namespace exotic
