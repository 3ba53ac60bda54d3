#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exotic/coset_enum.hpp"
#include "exotic/intlinalg.hpp"
#include "exotic/presentation.hpp"
#include "exotic/tietze.hpp"

namespace exotic {

/// Selects one member of the surgered family.
///
/// k >= 1 is the genus parameter, n >= 1 the multiplicity of the d1
/// surgery, p, r >= 0 the c2/d2 surgery denominators, and m >= 1 the
/// logarithmic-transform multiplicity (m = 1: no transform).
struct FamilyParams {
  int k = 2;
  int n = 1;
  int p = 1;
  int r = 1;
  int m = 1;

  /// Throws ParameterError naming the violated bound.
  static FamilyParams make(int k, int n, int p, int r, int m = 1);
  void validate() const;

  /// The fundamental-group claims are established for k >= 2 only.
  [[nodiscard]] bool claims_apply() const { return k >= 2; }
  [[nodiscard]] bool simply_connected_target() const { return p == 1 && r == 1; }

  friend auto operator<=>(const FamilyParams&, const FamilyParams&) = default;
};

struct CharNumbers {
  std::int64_t e = 0;
  std::int64_t sigma = 0;
  std::int64_t b1 = 0;
  std::int64_t b2 = 0;
  std::int64_t b2plus = 0;

  /// Closed oriented 4-manifold numbers from e, sigma and b1
  /// (b3 = b1 by duality).
  static CharNumbers from_euler(std::int64_t e, std::int64_t sigma, std::int64_t b1);
  /// e = 2 - 2 b1 + b2 and b2plus = (b2 + sigma) / 2 exactly.
  [[nodiscard]] bool consistent() const;

  friend bool operator==(const CharNumbers&, const CharNumbers&) = default;
};

/// Signed rational surgery coefficient num/den; den = 1 prints as an integer.
struct Coefficient {
  std::int64_t num = -1;
  std::int64_t den = 1;

  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

/// A torus surgery, modeled by its effect on the fundamental group: the
/// removed relators (the meridian was trivial) are replaced by the added
/// ones (the meridian now equals a power of the surgery curve).
struct SurgeryMove {
  std::string torus_label;    ///< e.g. "a2'' x d1'"
  std::string surgery_curve;  ///< generator name
  Coefficient coefficient;
  std::vector<Word> removed_relations;
  std::vector<Word> added_relations;
  bool symplectic = false;  ///< Luttinger surgery
  std::optional<int> family_row;  ///< row of the standard schedule, if any

  /// The reverse swap.
  [[nodiscard]] SurgeryMove inverse() const;
};

struct DualPair {
  std::string first;
  std::string second;
};

struct FormBasis {
  std::vector<DualPair> pairs;
  IntMatrix pairing;  ///< symmetric, 2|pairs| square
};

enum class Tristate { no, yes, unknown };

std::string to_string(Tristate t);

/// Which basic-class formula describes the model.
enum class SwProfile {
  none,      ///< not modeled
  zk,        ///< symplectic Z_k: |SW(+-K)| = 1
  mkn,       ///< M_{k,n}: |SW(+-(2kA+2B))| = n
  mkn_log,   ///< M_{k,n}(m): the m-term spectrum
};

std::string to_string(SwProfile s);

struct ManifoldModel {
  std::string name;
  FamilyParams params;
  Presentation presentation;
  CharNumbers chars;
  std::optional<FormBasis> form;  ///< unset when not determined
  SwProfile sw_profile = SwProfile::none;
  Tristate symplectic = Tristate::unknown;
  bool pi1_trivial_certified = false;
  bool full_family_schedule = false;  ///< every row of schedule_Mkn applied
  std::vector<std::string> notes;
};

/// Generator names for genus parameter k:
/// a1 b1 a2 b2 c1 d1 ... ck dk ct d{k+1}; "ct" is the distinguished lift.
std::vector<std::string> family_generators(int k);

/// The unsurgered model: presentation, (4k, 0, 2k+4, 8k+6, 4k+3), and
/// (4k+3) hyperbolic pairs. Throws ParameterError for k < 1.
ManifoldModel build_Xk(int k);

/// The 2k+4 torus surgeries turning X_k into M_{k,n}(p,r).
std::vector<SurgeryMove> schedule_Mkn(const FamilyParams& params);

/// Row index of the (a2'' x d1', d1', -n) move inside schedule_Mkn.
inline constexpr int kMultiplicityRow = 3;

struct ApplyOptions {
  /// Try Tietze + enumeration on an H1-trivial result to certify pi1 = 1.
  bool certify_pi1 = true;
  EnumerationOptions enumeration{};
  TietzeOptions tietze{};
};

/// Applies moves in order. Throws ScheduleMismatch when a removed relation
/// is absent from the current presentation.
ManifoldModel apply_schedule(const ManifoldModel& base, std::span<const SurgeryMove> moves,
                             const ApplyOptions& options = {});

/// X_k followed by the full schedule.
ManifoldModel build_Mkn(const FamilyParams& params, const ApplyOptions& options = {});

/// X_k followed by every move except the -n one (p = r = 1).
ManifoldModel build_Zk(int k, const ApplyOptions& options = {});

struct Pi1Verdict {
  enum class Status { pass, fail, unverified };

  Status status = Status::unverified;
  AbelianInvariants claimed;
  AbelianInvariants computed;
  bool h1_match = false;
  std::optional<EnumerationOutcome> enumeration;  ///< unset when skipped
  std::size_t simplified_generators = 0;
  std::size_t simplified_relators = 0;
  std::string note;

  [[nodiscard]] bool certifies_trivial() const {
    return status == Status::pass && claimed.trivial() && enumeration &&
           enumeration->completed_with(1);
  }
};

std::string to_string(Pi1Verdict::Status s);

/// Checks H1 against Z/p + Z/r and, for p, r >= 1, enumerates to confirm
/// the group order p*r.
Pi1Verdict verify_pi1(const ManifoldModel& model, const EnumerationOptions& enumeration = {},
                      const TietzeOptions& tietze = {});

/// Rebuild of `model` carrying the verdict: marks pi1 certified trivial and
/// attaches the surviving (2k-1)-pair basis when the verdict certifies it.
ManifoldModel with_pi1_verdict(const ManifoldModel& model, const Pi1Verdict& verdict);

/// The model's presentation without the meridian relator [b1,d2] of the
/// transform torus. Requires k >= 2 and p = r = 1.
Presentation complement_presentation(const ManifoldModel& model);

struct ComplementVerdict {
  bool pass = false;
  EnumerationOutcome enumeration;
};

ComplementVerdict verify_complement(const ManifoldModel& model,
                                    const EnumerationOptions& enumeration = {},
                                    const TietzeOptions& tietze = {});

/// Multiplicity-m transform along the a1' x c2' torus (curve c2, +m).
/// m = 1 returns the model unchanged. Throws Refusal unless `pi1`
/// certifies a trivial group and `complement` certifies a trivial
/// complement.
ManifoldModel apply_log_transform(const ManifoldModel& model, int m, const Pi1Verdict& pi1,
                                  const ComplementVerdict& complement);

}  // namespace exotic
