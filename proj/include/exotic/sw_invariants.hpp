#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace exotic {

struct ManifoldModel;

/// L = s*A + t*B + j*T in the (A, B, T) basis. A and B are dual to the two
/// product surfaces (A.B = 1, A^2 = B^2 = 0); T is the core torus of the
/// logarithmic transform (T^2 = 0, orthogonal to A and B).
struct ClassVector {
  std::int64_t s = 0;
  std::int64_t t = 0;
  std::int64_t j = 0;

  [[nodiscard]] std::int64_t square() const { return 2 * s * t; }
  [[nodiscard]] ClassVector operator-() const { return {-s, -t, -j}; }
  friend ClassVector operator-(const ClassVector& a, const ClassVector& b) {
    return {a.s - b.s, a.t - b.t, a.j - b.j};
  }
  friend auto operator<=>(const ClassVector&, const ClassVector&) = default;
};

struct BasicClass {
  ClassVector cls;
  std::int64_t value = 0;  ///< |SW(L)|

  friend auto operator<=>(const BasicClass&, const BasicClass&) = default;
};

/// Classes with nonzero SW value, sorted by (s, t, j).
struct BasicClassSet {
  std::vector<BasicClass> entries;
  int k = 0;
  int n = 0;
  int m = 1;

  [[nodiscard]] bool closed_under_negation() const;
  /// Sorted |SW| values, one per class.
  [[nodiscard]] std::vector<std::int64_t> value_multiset() const;
};

/// Even (s, t) with |s| <= 2k, |t| <= 2 and 2st >= 2e + 3sigma = 8k.
/// Requires k >= 2.
std::vector<ClassVector> enumerate_Zk_candidates(int k);

/// m = 1: +-(2k, 2, 0) with value n. m >= 2: +-(2k, 2, 0) + (0, 0, j) for
/// j in {-(m-1), -(m-3), ..., m-1}, each with value n.
BasicClassSet basic_classes(int k, int n, int m);

enum class SpinType { spin, nonspin };

std::string to_string(SpinType s);

/// w2 = (m-1) T mod 2 with T primitive: odd m spin, even m nonspin.
SpinType spin_parity(int k, int m);

/// Every class reduces to (m-1) T mod 2, i.e. s, t even and j = m-1 mod 2.
bool characteristic_parity_consistent(const BasicClassSet& classes);

enum class SymplecticTag { symplectic, nonsymplectic };

std::string to_string(SymplecticTag s);

/// n = 1 symplectic (all Luttinger); n >= 2 nonsymplectic since a symplectic
/// manifold with b2+ > 1 has |SW(+-K)| = 1.
SymplecticTag symplectic_tag(int n);

/// "(2k-1)(S2xS2)" for spin, "(2k-1)(CP2#-CP2)" for nonspin.
std::string homeomorphism_type_name(int k, SpinType spin);

struct HomeomorphismVerdict {
  bool classified = false;
  std::string type;    ///< set when classified
  std::string reason;  ///< set when not
};

/// Freedman classification of a simply connected closed model with
/// signature zero and an intersection form of the expected parity.
HomeomorphismVerdict classify_homeomorphism(const ManifoldModel& model);

struct IrreducibilityVerdict {
  bool pass = false;
  std::set<std::int64_t> squares;  ///< all (L - L')^2 over ordered pairs
};

/// Passes iff every (L - L')^2 lies in {0, 32k}; in particular never -4.
IrreducibilityVerdict irreducibility_check(const BasicClassSet& classes, int k);

struct SmoothVerdict {
  enum class Kind { nondiffeomorphic, indistinguishable };

  Kind kind = Kind::indistinguishable;
  std::string witness;
};

std::string to_string(SmoothVerdict::Kind k);

/// Compares two class sets of the same homeomorphism type by their |SW|
/// value multisets and class counts. Throws ContractError when the types
/// differ.
SmoothVerdict distinguish(const BasicClassSet& a, const BasicClassSet& b);

}  // namespace exotic
