#include "exotic/intlinalg.hpp"

#include <limits>
#include <optional>

#include "exotic/errors.hpp"

namespace exotic {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ValidationError("ragged matrix literal");
    for (auto v : r) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::direct_sum(const std::vector<IntMatrix>& blocks) {
  std::size_t r = 0;
  std::size_t c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  IntMatrix m(r, c);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

BigInt IntMatrix::determinant() const {
  if (!is_square()) throw ValidationError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix product dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::vector<std::vector<std::string>> IntMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).str());
  return out;
}

IntMatrix exponent_matrix(const Presentation& p) {
  IntMatrix m(p.relators().size(), p.rank());
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    for (const auto& s : p.relators()[i].syllables()) m(i, s.gen) += s.exp;
  return m;
}

namespace {

struct Overflow {};

/// int64 with overflow trapping; lets the Smith reduction run fast and
/// escalate to BigInt only when an intermediate leaves 64 bits.
struct Checked {
  std::int64_t v = 0;

  Checked() = default;
  Checked(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)

  friend Checked operator+(Checked a, Checked b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator-(Checked a, Checked b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator*(Checked a, Checked b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator/(Checked a, Checked b) {
    if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1) throw Overflow{};
    return a.v / b.v;
  }
  friend Checked operator%(Checked a, Checked b) {
    if (b.v == -1) return 0;
    return a.v % b.v;
  }
  Checked operator-() const {
    if (v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -v;
  }
  friend bool operator==(Checked a, Checked b) { return a.v == b.v; }
  friend bool operator<(Checked a, Checked b) { return a.v < b.v; }
};

BigInt to_big(const Checked& c) { return BigInt(c.v); }
BigInt to_big(const BigInt& b) { return b; }

template <class T>
T abs_value(const T& x) {
  if (x < T(0)) return T(-x);
  return x;
}

template <class T>
struct Dense {
  std::size_t rows;
  std::size_t cols;
  std::vector<T> a;

  T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
};

template <class T>
Dense<T> identity_dense(std::size_t n) {
  Dense<T> d{n, n, std::vector<T>(n * n, T(0))};
  for (std::size_t i = 0; i < n; ++i) d.at(i, i) = T(1);
  return d;
}

template <class T>
IntMatrix to_int_matrix(Dense<T>& d) {
  IntMatrix m(d.rows, d.cols);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j) m(i, j) = to_big(d.at(i, j));
  return m;
}

template <class T>
SmithForm smith_impl(Dense<T> m) {
  const std::size_t R = m.rows;
  const std::size_t C = m.cols;
  Dense<T> u = identity_dense<T>(R);
  Dense<T> v = identity_dense<T>(C);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < C; ++c) std::swap(m.at(i, c), m.at(j, c));
    for (std::size_t c = 0; c < R; ++c) std::swap(u.at(i, c), u.at(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < R; ++r) std::swap(m.at(r, i), m.at(r, j));
    for (std::size_t r = 0; r < C; ++r) std::swap(v.at(r, i), v.at(r, j));
  };
  // row[dst] -= q * row[src]
  auto row_axpy = [&](std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t c = 0; c < C; ++c)
      if (!(m.at(src, c) == T(0))) m.at(dst, c) = m.at(dst, c) - q * m.at(src, c);
    for (std::size_t c = 0; c < R; ++c)
      if (!(u.at(src, c) == T(0))) u.at(dst, c) = u.at(dst, c) - q * u.at(src, c);
  };
  // col[dst] -= q * col[src]
  auto col_axpy = [&](std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t r = 0; r < R; ++r)
      if (!(m.at(r, src) == T(0))) m.at(r, dst) = m.at(r, dst) - q * m.at(r, src);
    for (std::size_t r = 0; r < C; ++r)
      if (!(v.at(r, src) == T(0))) v.at(r, dst) = v.at(r, dst) - q * v.at(r, src);
  };

  const std::size_t steps = std::min(R, C);
  for (std::size_t t = 0; t < steps; ++t) {
    bool any = true;
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      T best(0);
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          if (m.at(i, j) == T(0)) continue;
          T a = abs_value(m.at(i, j));
          if (!piv || a < best) {
            piv = {i, j};
            best = a;
          }
        }
      if (!piv) {
        any = false;
        break;
      }
      swap_rows(t, piv->first);
      swap_cols(t, piv->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m.at(i, t) == T(0)) continue;
        row_axpy(i, t, m.at(i, t) / m.at(t, t));
        if (!(m.at(i, t) == T(0))) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m.at(t, j) == T(0)) continue;
        col_axpy(j, t, m.at(t, j) / m.at(t, t));
        if (!(m.at(t, j) == T(0))) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and retry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < R && divisible; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!(m.at(i, j) % m.at(t, t) == T(0))) {
            row_axpy(t, i, T(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (!any) break;
    if (m.at(t, t) < T(0)) {
      for (std::size_t c = 0; c < C; ++c) m.at(t, c) = -m.at(t, c);
      for (std::size_t c = 0; c < R; ++c) u.at(t, c) = -u.at(t, c);
    }
  }
  return SmithForm{to_int_matrix(m), to_int_matrix(u), to_int_matrix(v), false};
}

}  // namespace

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const BigInt lo = std::numeric_limits<std::int64_t>::min();
  const BigInt hi = std::numeric_limits<std::int64_t>::max();
  bool fits = true;
  Dense<Checked> small{m.rows(), m.cols(), {}};
  small.a.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows() && fits; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const BigInt& x = m(i, j);
      if (x < lo || x > hi) {
        fits = false;
        break;
      }
      small.a.emplace_back(static_cast<std::int64_t>(x));
    }
  if (fits) {
    try {
      return smith_impl(std::move(small));
    } catch (const Overflow&) {
    }
  }
  Dense<BigInt> big{m.rows(), m.cols(), {}};
  big.a.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) big.a.push_back(m(i, j));
  SmithForm s = smith_impl(std::move(big));
  s.escalated = true;
  return s;
}

BigInt AbelianInvariants::order() const {
  if (free_rank != 0) return 0;
  BigInt n = 1;
  for (const auto& d : torsion) n *= d;
  return n;
}

std::string AbelianInvariants::to_string() const {
  if (trivial()) return "0";
  std::string out;
  for (const auto& d : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.str();
  }
  if (free_rank > 0) {
    if (!out.empty()) out += " + ";
    out += free_rank == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank);
  }
  return out;
}

AbelianInvariants cokernel_invariants(const IntMatrix& relation_rows) {
  AbelianInvariants inv;
  const SmithForm s = smith_normal_form(relation_rows);
  std::size_t nonzero = 0;
  for (const auto& d : s.diagonal()) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) inv.torsion.push_back(d);
  }
  inv.free_rank = relation_rows.cols() - nonzero;
  return inv;
}

AbelianInvariants AbelianInvariants::of_cyclic_sum(const std::vector<BigInt>& orders) {
  IntMatrix m(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) m(i, i) = orders[i];
  return cokernel_invariants(m);
}

AbelianInvariants abelian_invariants(const Presentation& p) {
  return cokernel_invariants(exponent_matrix(p));
}

Inertia inertia(const IntMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw ValidationError("inertia: matrix is not symmetric");
  IntMatrix a = symmetric;
  const std::size_t n = a.rows();
  Inertia out;
  auto add_to = [&](std::size_t dst, std::size_t src) {  // e_dst += e_src (congruence)
    for (std::size_t c = 0; c < n; ++c) a(dst, c) += a(src, c);
    for (std::size_t r = 0; r < n; ++r) a(r, dst) += a(r, src);
  };
  auto swap_basis = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0) {
      std::size_t j = i + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        swap_basis(i, j);
      } else {
        j = i + 1;
        while (j < n && a(i, j) == 0) ++j;
        if (j == n) {
          ++out.zero;
          continue;
        }
        add_to(i, j);  // a(i,i) becomes 2*a(i,j) != 0
      }
    }
    const BigInt p = a(i, i);
    if (p > 0)
      ++out.positive;
    else
      ++out.negative;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(j, i) == 0) continue;
      const BigInt q = a(j, i);
      // e_j <- p e_j - q e_i; scaling by p != 0 preserves inertia.
      for (std::size_t c = i; c < n; ++c) a(j, c) = p * a(j, c) - q * a(i, c);
      for (std::size_t r = i; r < n; ++r) a(r, j) = p * a(r, j) - q * a(r, i);
    }
  }
  return out;
}

IntMatrix hyperbolic_form(std::size_t k) {
  std::vector<IntMatrix> blocks(k, IntMatrix{{0, 1}, {1, 0}});
  return IntMatrix::direct_sum(blocks);
}

std::string FormType::name() const {
  switch (kind) {
    case Kind::hyperbolic:
      return "Hyperbolic(" + std::to_string(hyperbolic_summands) + ")";
    case Kind::odd:
      return "Odd(" + std::to_string(b_plus) + "," + std::to_string(b_minus) + ")";
    case Kind::other:
      break;
  }
  return "Other";
}

FormType classify_form(const IntMatrix& m) {
  if (!m.is_symmetric()) throw ValidationError("classify_form: matrix is not symmetric");
  FormType f;
  f.matrix = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, i) % 2 != 0) f.parity = Parity::odd;
  const Inertia in = inertia(m);
  f.b_plus = in.positive;
  f.b_minus = in.negative;
  f.rank = in.positive + in.negative;
  f.signature = static_cast<std::int64_t>(in.positive) - static_cast<std::int64_t>(in.negative);
  const BigInt det = m.determinant();
  f.unimodular = det == 1 || det == -1;
  if (!f.unimodular) return f;
  if (f.parity == Parity::odd) {
    f.kind = FormType::Kind::odd;
  } else if (f.signature == 0) {
    // Indefinite even unimodular with zero signature is a sum of H's.
    f.kind = FormType::Kind::hyperbolic;
    f.hyperbolic_summands = f.rank / 2;
  }
  return f;
}

}  // namespace exotic
