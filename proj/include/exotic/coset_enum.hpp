#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "exotic/presentation.hpp"

namespace exotic {

enum class Strategy {
  hlt,     ///< relator-based definitions (Haselgrove-Leech-Trotter), with lookahead
  felsch,  ///< definitions in first-undefined order, deductions processed eagerly
};

struct EnumerationOptions {
  std::size_t limit = 1'000'000;  ///< maximum coset slots held at once
  Strategy strategy = Strategy::hlt;
  bool lookahead = true;  ///< HLT only: scan without defining when the table fills
};

struct EnumerationStats {
  std::uint64_t definitions = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t max_live = 0;
  std::uint64_t lookaheads = 0;
  double seconds = 0.0;
};

/// Cosets of the trivial subgroup: index == |G| on completion.
struct EnumerationOutcome {
  enum class Result { completed, limit_exceeded };

  Result result = Result::limit_exceeded;
  std::size_t index = 0;         ///< valid when completed
  std::size_t cosets_used = 0;   ///< slots in use when the limit was hit
  EnumerationStats stats;

  [[nodiscard]] bool completed() const { return result == Result::completed; }
  [[nodiscard]] bool completed_with(std::size_t i) const { return completed() && index == i; }
};

/// Coset action table. Column 2g is the action of generator g, 2g+1 of its
/// inverse. Undefined entries are -1.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(std::size_t generators, std::vector<std::int32_t> entries, std::vector<bool> live);

  [[nodiscard]] std::size_t size() const { return live_.size(); }
  [[nodiscard]] std::size_t columns() const { return columns_; }
  [[nodiscard]] std::size_t live_count() const;
  [[nodiscard]] bool live(std::size_t coset) const { return live_[coset]; }
  [[nodiscard]] std::int32_t entry(std::size_t coset, std::size_t column) const {
    return entries_[coset * columns_ + column];
  }

  /// Every live entry defined.
  [[nodiscard]] bool complete() const;
  /// table[c][x] = d implies table[d][x^-1] = c, over live cosets.
  [[nodiscard]] bool is_partial_permutation() const;
  /// Image of `coset` under `w`, if every step is defined.
  [[nodiscard]] std::optional<std::size_t> trace(std::size_t coset, const Word& w) const;

 private:
  std::size_t columns_ = 0;
  std::vector<std::int32_t> entries_;
  std::vector<bool> live_;
};

struct Enumeration {
  EnumerationOutcome outcome;
  CosetTable table;  ///< compacted; complete when outcome.completed()
};

/// Todd-Coxeter enumeration of the cosets of the trivial subgroup.
///
/// Deterministic for fixed presentation and options. Coincidences are
/// resolved by union-find with the smaller coset id surviving.
Enumeration enumerate_table(const Presentation& p, const EnumerationOptions& options = {});

EnumerationOutcome enumerate(const Presentation& p, const EnumerationOptions& options = {});

}  // namespace exotic
