#include "exotic/tietze.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>

namespace exotic {

namespace {

struct Candidate {
  std::size_t relator;
  GenIndex gen;
  std::uint64_t relator_length;
};

class Simplifier {
 public:
  Simplifier(const Presentation& p, const TietzeOptions& opt)
      : names_(p.generators()),
        alive_(p.rank(), true),
        rels_(p.relators()),
        opt_(opt),
        cap_(static_cast<std::uint64_t>(opt.growth_factor * static_cast<double>(p.total_length()))) {}

  TietzeResult run() {
    TietzeResult out;
    normalize();
    for (;;) {
      auto cand = pick();
      if (!cand) break;
      if (log_.size() >= opt_.budget) {
        out.budget_exhausted = true;
        break;
      }
      eliminate(*cand);
      normalize();
    }
    out.log = std::move(log_);
    out.presentation = finish();
    return out;
  }

 private:
  /// Cyclically reduce, drop trivial relators, drop duplicates.
  void normalize() {
    std::set<Word> seen;
    std::vector<Word> kept;
    for (auto& r : rels_) {
      Word core = r.cyclically_reduced();
      if (core.empty()) continue;
      if (!seen.insert(canonical_relator(core)).second) continue;
      kept.push_back(std::move(core));
    }
    rels_ = std::move(kept);
  }

  /// Generator occurring exactly once (exponent +-1) in relator `r`.
  static std::vector<GenIndex> solvable(const Word& r) {
    std::vector<GenIndex> out;
    for (const auto& s : r.syllables()) {
      if (std::llabs(s.exp) != 1) continue;
      if (r.occurrences(s.gen) == 1) out.push_back(s.gen);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  [[nodiscard]] std::uint64_t total_length() const {
    std::uint64_t n = 0;
    for (const auto& r : rels_) n += r.length();
    return n;
  }

  [[nodiscard]] std::uint64_t growth(const Candidate& c) const {
    // Each other occurrence of gen becomes (length - 1) letters.
    std::uint64_t occ = 0;
    for (std::size_t i = 0; i < rels_.size(); ++i)
      if (i != c.relator) occ += rels_[i].occurrences(c.gen);
    const std::uint64_t rest = total_length() - c.relator_length;
    return rest + occ * (c.relator_length - 2);
  }

  std::optional<Candidate> pick() const {
    std::optional<Candidate> best;
    for (std::size_t i = 0; i < rels_.size(); ++i) {
      const std::uint64_t len = rels_[i].length();
      for (GenIndex g : solvable(rels_[i])) {
        Candidate c{i, g, len};
        if (len > 2 && growth(c) > cap_) continue;
        const bool better = !best || len < best->relator_length ||
                            (len == best->relator_length && g < best->gen);
        if (better) best = c;
      }
    }
    return best;
  }

  void eliminate(const Candidate& c) {
    const Word r = rels_[c.relator];
    // r = u g^e v  =>  g^e = u^-1 v^-1 = (v u)^-1.
    std::vector<Syllable> before;
    std::vector<Syllable> after;
    std::int64_t e = 0;
    bool past = false;
    for (const auto& s : r.syllables()) {
      if (s.gen == c.gen) {
        e = s.exp;
        past = true;
        continue;
      }
      (past ? after : before).push_back(s);
    }
    Word vu = Word::from_syllables(after) * Word::from_syllables(before);
    Word value = e > 0 ? vu.inverse() : vu;

    log_.push_back({names_[c.gen], format(r), format(value)});
    std::vector<Word> next;
    next.reserve(rels_.size());
    for (std::size_t i = 0; i < rels_.size(); ++i)
      if (i != c.relator) next.push_back(rels_[i].substitute(c.gen, value));
    rels_ = std::move(next);
    alive_[c.gen] = false;
  }

  [[nodiscard]] std::string format(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& s : w.syllables()) {
      if (!out.empty()) out += '*';
      out += names_[s.gen];
      if (s.exp != 1) out += "^" + std::to_string(s.exp);
    }
    return out;
  }

  Presentation finish() const {
    std::vector<GenIndex> map(names_.size(), 0);
    std::vector<std::string> names;
    for (GenIndex g = 0; g < names_.size(); ++g) {
      if (!alive_[g]) continue;
      map[g] = static_cast<GenIndex>(names.size());
      names.push_back(names_[g]);
    }
    std::vector<Word> rels;
    rels.reserve(rels_.size());
    for (const auto& r : rels_) rels.push_back(r.renumbered(map));
    return {std::move(names), std::move(rels)};
  }

  std::vector<std::string> names_;
  std::vector<bool> alive_;
  std::vector<Word> rels_;
  TietzeOptions opt_;
  std::uint64_t cap_;
  std::vector<Elimination> log_;
};

}  // namespace

CertifiedSimplification simplify_with_enumeration(const Presentation& p,
                                                  const TietzeOptions& tietze,
                                                  const EnumerationOptions& enumeration) {
  CertifiedSimplification out;
  out.tietze = tietze_simplify(p, tietze);
  const Presentation& q = out.tietze.presentation;
  Enumeration e = enumerate_table(q, enumeration);
  out.enumeration = e.outcome;
  if (!e.outcome.completed()) return out;

  std::vector<Word> rels = q.relators();
  std::vector<std::string> trivial;
  for (GenIndex g = 0; g < q.rank(); ++g)
    if (e.table.entry(0, 2 * g) == 0) {
      rels.push_back(Word::generator(g));
      trivial.push_back(q.generators()[g]);
    }
  if (trivial.empty()) return out;
  TietzeOptions again = tietze;
  again.budget = tietze.budget > out.tietze.log.size() ? tietze.budget - out.tietze.log.size() : 0;
  TietzeResult second = tietze_simplify(q.with_relators(std::move(rels)), again);
  for (auto& step : second.log) {
    if (std::find(trivial.begin(), trivial.end(), step.generator) != trivial.end() &&
        step.replacement == "1")
      step.relator += " (trivial in the completed coset table)";
    out.tietze.log.push_back(std::move(step));
  }
  out.tietze.presentation = std::move(second.presentation);
  out.tietze.budget_exhausted = second.budget_exhausted;
  return out;
}

TietzeResult tietze_simplify(const Presentation& p, const TietzeOptions& options) {
  return Simplifier(p, options).run();
}

}  // namespace exotic
