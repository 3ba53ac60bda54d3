#pragma once

#include <string>
#include <vector>

#include "exotic/coset_enum.hpp"
#include "exotic/presentation.hpp"

namespace exotic {

/// One generator elimination: `generator` was solved from `relator` as
/// `generator = replacement` and substituted everywhere. Words are rendered
/// over the generators present at the time of the step.
struct Elimination {
  std::string generator;
  std::string relator;
  std::string replacement;
};

struct TietzeOptions {
  std::size_t budget = 10'000;  ///< maximum number of eliminations
  /// Substitutions that would push the total relator length above
  /// growth_factor * (input total length) are skipped. Length-1 and
  /// length-2 eliminations never grow the total and are always taken.
  double growth_factor = 1.0;
};

struct TietzeResult {
  Presentation presentation;
  std::vector<Elimination> log;
  bool budget_exhausted = false;
};

/// Simplifies by Tietze moves that preserve the group up to isomorphism:
/// cyclic reduction, removal of duplicate relators (up to cyclic
/// permutation and inversion), and elimination of generators occurring
/// exactly once in some relator.
///
/// Order: relators of length <= 2 first, then the shortest relator offering
/// a once-occurring generator; ties go to the lowest generator index.
/// Stops when no admissible elimination remains or the budget is spent.
TietzeResult tietze_simplify(const Presentation& p, const TietzeOptions& options = {});

inline TietzeResult tietze_simplify(const Presentation& p, std::size_t budget) {
  TietzeOptions o;
  o.budget = budget;
  return tietze_simplify(p, o);
}

struct CertifiedSimplification {
  TietzeResult tietze;
  EnumerationOutcome enumeration;
};

/// Tietze simplification followed by enumeration of the result. When the
/// enumeration completes, every generator g with 1.g = 1 in the regular
/// action is trivial in the group; those relators g are added and
/// eliminated, so a trivial group ends as the empty presentation.
CertifiedSimplification simplify_with_enumeration(const Presentation& p,
                                                  const TietzeOptions& tietze = {},
                                                  const EnumerationOptions& enumeration = {});

}  // namespace exotic
