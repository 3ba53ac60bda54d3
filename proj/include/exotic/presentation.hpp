#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exotic/word.hpp"

namespace exotic {

/// A finite presentation <generators | relators>.
///
/// Relators are kept freely reduced; empty relators are dropped on
/// construction. Every generator index used by a relator must name one of
/// the generators. The value is immutable: editing operations return a new
/// presentation.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  [[nodiscard]] const std::vector<std::string>& generators() const { return gens_; }
  [[nodiscard]] const std::vector<Word>& relators() const { return rels_; }
  [[nodiscard]] std::size_t rank() const { return gens_.size(); }

  [[nodiscard]] std::optional<GenIndex> find(std::string_view name) const;
  /// Index of `name`; throws ValidationError when absent.
  [[nodiscard]] GenIndex index(std::string_view name) const;
  /// Shorthand for Word::generator(index(name), exp).
  [[nodiscard]] Word word(std::string_view name, std::int64_t exp = 1) const;

  [[nodiscard]] std::uint64_t total_length() const;

  /// Index of a relator with the same normal closure as `w` (equal up to
  /// free reduction, cyclic permutation, and inversion).
  [[nodiscard]] std::optional<std::size_t> find_relator(const Word& w) const;

  [[nodiscard]] Presentation with_relator(Word w) const;
  [[nodiscard]] Presentation without_relator(std::size_t i) const;
  [[nodiscard]] Presentation with_relators(std::vector<Word> rels) const;

  /// Same group, relators listed in a different order.
  [[nodiscard]] Presentation permuted(std::span<const std::size_t> order) const;

  /// Renames generators; names must be unique.
  [[nodiscard]] Presentation renamed(std::vector<std::string> names) const;

  /// Renders a word in the text syntax (`a1^-1*b1^2`). The empty word is `1`.
  [[nodiscard]] std::string format(const Word& w) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> gens_;
  std::vector<Word> rels_;
};

/// Parses a word over the generators of `p`.
///
/// Grammar:
///   word    := factor ('*' factor)*
///   factor  := atom ('^' integer)?
///   atom    := identifier | '1' | '(' word ')' | '[' word ',' word ']'
Word parse_word(const Presentation& p, std::string_view text, std::size_t line = 1,
                std::size_t column = 1);

/// `line` and `column` locate `text` inside a larger document for diagnostics.
///
/// Parses `u = v` (normalized to u*v^-1) or a bare relator `w`.
Word parse_relation(const Presentation& p, std::string_view text, std::size_t line = 1,
                    std::size_t column = 1);

bool is_identifier(std::string_view name);

}  // namespace exotic
