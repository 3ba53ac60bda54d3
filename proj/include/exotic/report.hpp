#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exotic/coset_enum.hpp"
#include "exotic/errors.hpp"
#include "exotic/manifold.hpp"

namespace exotic {

/// Diagnostic raised by parse_spec, with 1-based source position.
class SpecError : public ParseError {
 public:
  enum class Kind { syntax, constraint, empty };

  SpecError(Kind kind, const std::string& msg, std::size_t line, std::size_t column)
      : ParseError(msg, line, column), kind_(kind) {}

  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct IntRange {
  int lo = 0;
  int hi = 0;

  [[nodiscard]] bool contains(int v) const { return lo <= v && v <= hi; }
};

/// Parses "3" or "1..4". Throws SpecError (column relative to `text`).
IntRange parse_range(std::string_view text, std::size_t line = 1, std::size_t column = 1);

struct FamilySpec {
  IntRange k{2, 2};
  IntRange n{1, 1};
  IntRange p{1, 1};
  IntRange r{1, 1};
  IntRange m{1, 1};
};

/// User-supplied relation swaps applied to X_k.
struct CustomSpec {
  int k = 2;
  std::string name;
  std::vector<std::string> removes;  ///< relation text, word syntax
  std::vector<std::string> adds;
};

enum class RunMode { single, family_sweep, custom_schedule };
enum class OutputFormat { json, table };

std::string to_string(RunMode m);

struct RunSpec {
  std::vector<FamilySpec> families;
  std::vector<CustomSpec> customs;
  std::size_t limit = 1'000'000;
  Strategy strategy = Strategy::hlt;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> output_path;
  unsigned jobs = 1;
  bool timings = false;  ///< wall-clock fields break byte stability; off by default

  [[nodiscard]] RunMode mode() const;
  /// Expanded (k, n, p, r, m) grid: families in order, each in
  /// lexicographic (k, n, p, r, m) order, duplicates dropped.
  [[nodiscard]] std::vector<FamilyParams> models() const;
  /// Throws SpecError when nothing would run or a bound is violated.
  void validate() const;
};

/// Grammar, one directive per line (`#` starts a comment):
///
///   family k=<int> n=<int|range> p=<int> r=<int> [m=<int|range>]
///   limit <int>
///   strategy hlt|felsch
///   custom k=<int> [name=<identifier>]
///     remove <relation>
///     add <relation>
///   end
///
/// Relations use the word syntax over the generators of X_k.
RunSpec parse_spec(std::string_view text);

struct Report {
  nlohmann::json body;
  bool all_pass = false;

  [[nodiscard]] int exit_code() const { return all_pass ? 0 : 1; }
  /// Deterministic serialization: sorted keys, two-space indent.
  [[nodiscard]] std::string json_text() const;
};

/// Runs every model of the run description through build, verification, transform,
/// basic classes and classifiers, then the pairwise comparison.
Report run(const RunSpec& spec);

/// Human-readable rendering computed from the JSON body only.
std::string render_table(const nlohmann::json& body);

}  // namespace exotic
