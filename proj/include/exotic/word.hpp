#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace exotic {

using GenIndex = std::uint32_t;

/// One run-length block of a word: `gen^exp` with exp != 0.
struct Syllable {
  GenIndex gen = 0;
  std::int64_t exp = 0;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// An element of the free group, always stored freely reduced.
///
/// Storage is run-length: `a^5` is a single syllable, so relators such as
/// `[b2, c1^-1]^n` stay compact for large `n`.
class Word {
 public:
  Word() = default;

  static Word generator(GenIndex g, std::int64_t exp = 1);

  /// Builds a word from arbitrary syllables, reducing them on the way in.
  static Word from_syllables(std::span<const Syllable> raw);

  [[nodiscard]] std::span<const Syllable> syllables() const { return syl_; }
  [[nodiscard]] bool empty() const { return syl_.empty(); }
  [[nodiscard]] std::size_t syllable_count() const { return syl_.size(); }

  /// Number of letters, i.e. the sum of |exp| over all syllables.
  [[nodiscard]] std::uint64_t length() const;

  [[nodiscard]] Word inverse() const;
  [[nodiscard]] Word pow(std::int64_t n) const;

  [[nodiscard]] std::int64_t exponent_sum(GenIndex g) const;
  /// Number of letters equal to `g` or `g^-1`.
  [[nodiscard]] std::uint64_t occurrences(GenIndex g) const;
  [[nodiscard]] bool contains(GenIndex g) const;
  [[nodiscard]] GenIndex max_generator() const;

  /// Replaces every letter `g` by `replacement` (and `g^-1` by its inverse).
  [[nodiscard]] Word substitute(GenIndex g, const Word& replacement) const;

  /// Renumbers generators through `map` (map[old] = new).
  [[nodiscard]] Word renumbered(std::span<const GenIndex> map) const;

  /// The cyclically reduced core: conjugate-equivalent, no cancellation
  /// between the last and first syllable.
  [[nodiscard]] Word cyclically_reduced() const;

  /// Expansion into letters encoded as 2*gen (positive) / 2*gen+1 (inverse).
  [[nodiscard]] std::vector<std::uint32_t> letters() const;

  friend Word operator*(const Word& lhs, const Word& rhs);
  Word& operator*=(const Word& rhs);

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.syl_ <=> b.syl_; }

 private:
  std::vector<Syllable> syl_;
};

/// Free reduction of a raw syllable sequence.
Word reduce(std::span<const Syllable> raw);

/// [u, v] = u^-1 v^-1 u v.
Word commutator(const Word& u, const Word& v);

/// Relation `lhs = rhs` normalized to the relator `lhs * rhs^-1`.
Word relation(const Word& lhs, const Word& rhs);

/// Canonical representative of the cyclic word class of `w` and `w^-1`:
/// the lexicographically smallest syllable rotation of the cyclically
/// reduced forms. Two relators with equal canonical forms have the same
/// normal closure.
Word canonical_relator(const Word& w);

}  // namespace exotic
