#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "exotic/presentation.hpp"

namespace exotic {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix of exact integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);
  /// Block diagonal sum.
  static IntMatrix direct_sum(const std::vector<IntMatrix>& blocks);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  [[nodiscard]] IntMatrix transpose() const;
  [[nodiscard]] bool is_symmetric() const;
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] bool is_diagonal() const;
  /// Exact determinant by fraction-free (Bareiss) elimination.
  [[nodiscard]] BigInt determinant() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  /// Row arrays, e.g. [[0,1],[1,0]].
  [[nodiscard]] std::vector<std::vector<std::string>> to_strings() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> a_;
};

/// Relator-by-generator exponent sums.
IntMatrix exponent_matrix(const Presentation& p);

struct SmithForm {
  IntMatrix d;  ///< diagonal, d_i | d_{i+1}, nonnegative
  IntMatrix u;  ///< rows x rows, unimodular
  IntMatrix v;  ///< cols x cols, unimodular
  bool escalated = false;  ///< true if 64-bit arithmetic overflowed and BigInt was used

  /// Diagonal entries, zeros included, in order.
  [[nodiscard]] std::vector<BigInt> diagonal() const;
};

/// D = U * M * V with unimodular U, V and D in Smith normal form.
///
/// Pivot: smallest nonzero |entry| of the active block, ties broken in
/// row-major order. Runs in checked 64-bit arithmetic first and reruns in
/// BigInt when any intermediate overflows.
SmithForm smith_normal_form(const IntMatrix& m);

/// Finitely generated abelian group Z/d1 + ... + Z/dt + Z^free_rank.
struct AbelianInvariants {
  std::vector<BigInt> torsion;  ///< each >= 2, d_i | d_{i+1}
  std::size_t free_rank = 0;

  [[nodiscard]] bool trivial() const { return torsion.empty() && free_rank == 0; }
  /// Order of the group, or 0 when infinite.
  [[nodiscard]] BigInt order() const;
  /// Canonical invariants of the direct sum of cyclic groups Z/c (c = 0 gives Z).
  static AbelianInvariants of_cyclic_sum(const std::vector<BigInt>& orders);
  /// "0", "Z", "Z/6", "Z/2 + Z/4 + Z^2", ...
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

AbelianInvariants abelian_invariants(const Presentation& p);
/// Invariants of Z^cols / rowspace(m).
AbelianInvariants cokernel_invariants(const IntMatrix& relation_rows);

enum class Parity { even, odd };

struct FormType {
  enum class Kind { hyperbolic, odd, other };

  Kind kind = Kind::other;
  Parity parity = Parity::even;
  std::size_t rank = 0;          ///< rank of the form (nondegenerate part)
  std::int64_t signature = 0;
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  std::size_t hyperbolic_summands = 0;  ///< m for Hyperbolic(m)
  bool unimodular = false;
  IntMatrix matrix;                     ///< the input, kept for Kind::other

  [[nodiscard]] std::string name() const;  ///< "Hyperbolic(3)", "Odd(2,0)", "Other"
};

/// Classifies a symmetric integer form. Throws ValidationError when `m`
/// is not symmetric. Non-unimodular forms classify as Other.
FormType classify_form(const IntMatrix& m);

/// Exact signature data (b+, b-, nullity) by integer congruence reduction.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};
Inertia inertia(const IntMatrix& symmetric);

/// k copies of H = [[0,1],[1,0]].
IntMatrix hyperbolic_form(std::size_t k);

}  // namespace exotic
