#include <doctest.h>

#include "corpus.hpp"
#include "exotic/errors.hpp"
#include "exotic/intlinalg.hpp"
#include "exotic/manifold.hpp"
#include "oracles.hpp"

using exotic::BigInt;
using exotic::IntMatrix;

namespace {

oracle::Matrix to_oracle(const IntMatrix& m) {
  oracle::Matrix out(m.rows(), std::vector<oracle::Big>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

IntMatrix random_matrix(std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = oracle::uniform(-bound, bound);
  return m;
}

/// Checks every structural claim of a Smith form: D = U M V, D diagonal
/// with a divisibility chain, and U, V unimodular.
void check_smith(const IntMatrix& m, const exotic::SmithForm& s) {
  CHECK(s.u * m * s.v == s.d);
  CHECK(s.d.is_diagonal());
  const auto diag = s.diagonal();
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    CHECK(diag[i] >= 0);
    if (diag[i] == 0)
      CHECK(diag[i + 1] == 0);
    else
      CHECK(diag[i + 1] % diag[i] == 0);
  }
  CHECK(abs(s.u.determinant()) == 1);
  CHECK(abs(s.v.determinant()) == 1);
}

/// Random unimodular W as a product of elementary operations.
IntMatrix random_unimodular(std::size_t n, int steps) {
  IntMatrix w = IntMatrix::identity(n);
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(n) - 1));
    if (i == j) {
      if (oracle::uniform(0, 3) == 0)
        for (std::size_t c = 0; c < n; ++c) w(i, c) = -w(i, c);
      continue;
    }
    const long f = oracle::uniform(-2, 2);
    for (std::size_t c = 0; c < n; ++c) w(i, c) += f * w(j, c);
  }
  return w;
}

}  // namespace

TEST_SUITE("intlinalg") {

TEST_CASE("exponent matrices") {
  CHECK(exotic::exponent_matrix(corpus::make({"a"}, {"a^5"})) == IntMatrix{{5}});
  CHECK(exotic::exponent_matrix(corpus::make({"a", "b"}, {"[a,b]"})) == IntMatrix{{0, 0}});
}

TEST_CASE("the c2 surgery row for p = 2 has -2 in the c2 column only") {
  exotic::ApplyOptions ao;
  ao.certify_pi1 = false;
  const auto model = exotic::build_Mkn(exotic::FamilyParams::make(2, 1, 2, 3), ao);
  const auto& pres = model.presentation;
  // [b2^-1, d2^-1] = c2^2, expanded by hand and normalized.
  const exotic::Word row = exotic::parse_word(pres, "b2*d2*b2^-1*d2^-1*c2^-2");
  const auto idx = pres.find_relator(row);
  REQUIRE(idx.has_value());
  const IntMatrix e = exotic::exponent_matrix(pres);
  for (std::size_t j = 0; j < pres.rank(); ++j) {
    CAPTURE(pres.generators()[j]);
    CHECK(e(*idx, j) == (pres.generators()[j] == "c2" ? -2 : 0));
  }
}

TEST_CASE("Smith normal form examples") {
  const auto s = exotic::smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(s.d == (IntMatrix{{1, 0}, {0, 6}}));
  check_smith(IntMatrix{{2, 0}, {0, 3}}, s);

  const IntMatrix zero(3, 2);
  const auto z = exotic::smith_normal_form(zero);
  CHECK(z.d == zero);
  CHECK(z.u == IntMatrix::identity(3));
  CHECK(z.v == IntMatrix::identity(2));
}

TEST_CASE("Smith diagonal matches determinantal divisors on random matrices") {
  for (int trial = 0; trial < 400; ++trial) {
    const auto rows = static_cast<std::size_t>(oracle::uniform(1, 4));
    const auto cols = static_cast<std::size_t>(oracle::uniform(1, 4));
    const IntMatrix m = random_matrix(rows, cols, 6);
    const auto s = exotic::smith_normal_form(m);
    check_smith(m, s);
    auto diag = s.diagonal();
    std::vector<BigInt> nonzero;
    for (const auto& d : diag)
      if (d != 0) nonzero.push_back(d);
    CHECK(nonzero == oracle::invariant_factors(to_oracle(m)));
  }
}

TEST_CASE("overflow escalates to arbitrary precision") {
  // Coprime diagonal entries near 2^40: the second invariant factor is
  // their product, which does not fit in 64 bits.
  const std::int64_t a = std::int64_t{1} << 40;
  const IntMatrix m{{a, 0}, {0, a + 1}};
  const auto s = exotic::smith_normal_form(m);
  check_smith(m, s);
  CHECK(s.escalated);
  CHECK(s.diagonal().front() == 1);
  CHECK(s.diagonal().back() == BigInt(a) * BigInt(a + 1));
}

TEST_CASE("abelian invariants: p = 2, r = 0 gives Z/2 + Z") {
  exotic::ApplyOptions ao;
  ao.certify_pi1 = false;
  const auto model = exotic::build_Mkn(exotic::FamilyParams::make(2, 1, 2, 0), ao);
  const auto h1 = exotic::abelian_invariants(model.presentation);
  CHECK(h1.torsion == std::vector<BigInt>{2});
  CHECK(h1.free_rank == 1);
  CHECK(h1.to_string() == "Z/2 + Z");
  // Oracle: free rank from the rational rank, 2-torsion and 3-torsion counts
  // from ranks over F_2 and F_3.
  const auto e = to_oracle(exotic::exponent_matrix(model.presentation));
  const std::size_t n = model.presentation.rank();
  const std::size_t q_rank = oracle::rational_rank(e);
  CHECK(n - q_rank == 1);
  CHECK(q_rank - oracle::rank_mod(e, 2) == 1);
  CHECK(q_rank - oracle::rank_mod(e, 3) == 0);
  CHECK(q_rank - oracle::rank_mod(e, 5) == 0);
}

TEST_CASE("cyclic sums normalize to invariant factors") {
  using A = exotic::AbelianInvariants;
  CHECK(A::of_cyclic_sum({2, 3}).torsion == std::vector<BigInt>{6});
  CHECK(A::of_cyclic_sum({2, 4}).torsion == std::vector<BigInt>{2, 4});
  CHECK(A::of_cyclic_sum({1, 1}).trivial());
  CHECK(A::of_cyclic_sum({0, 3}).free_rank == 1);
  CHECK(A::of_cyclic_sum({0, 3}).to_string() == "Z/3 + Z");
  CHECK(A::of_cyclic_sum({4, 6}).to_string() == "Z/2 + Z/12");
  CHECK(A::of_cyclic_sum({}).to_string() == "0");
  CHECK(A::of_cyclic_sum({0, 0}).to_string() == "Z^2");
}

TEST_CASE("cokernel invariants agree with field ranks on random matrices") {
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix m = random_matrix(static_cast<std::size_t>(oracle::uniform(1, 7)),
                                      static_cast<std::size_t>(oracle::uniform(1, 7)), 4);
    const auto inv = exotic::cokernel_invariants(m);
    const auto o = to_oracle(m);
    const std::size_t q_rank = oracle::rational_rank(o);
    CHECK(inv.free_rank == m.cols() - q_rank);
    for (long q : {2L, 3L, 5L, 7L}) {
      std::size_t divisible = 0;
      for (const auto& d : inv.torsion) divisible += (d % q == 0) ? 1 : 0;
      CHECK(divisible == q_rank - oracle::rank_mod(o, q));
    }
  }
}

TEST_CASE("form classification examples") {
  const auto h = exotic::classify_form(IntMatrix{{0, 1}, {1, 0}});
  CHECK(h.kind == exotic::FormType::Kind::hyperbolic);
  CHECK(h.hyperbolic_summands == 1);
  CHECK(h.name() == "Hyperbolic(1)");

  const auto id = exotic::classify_form(IntMatrix::identity(2));
  CHECK(id.kind == exotic::FormType::Kind::odd);
  CHECK(id.name() == "Odd(2,0)");
  CHECK(id.parity == exotic::Parity::odd);

  const auto seven = exotic::classify_form(exotic::hyperbolic_form(7));
  CHECK(seven.name() == "Hyperbolic(7)");
  CHECK(seven.rank == 14);
  CHECK(seven.signature == 0);
  CHECK(seven.parity == exotic::Parity::even);

  CHECK(exotic::classify_form(IntMatrix{{2}}).kind == exotic::FormType::Kind::other);
  CHECK_THROWS_AS((void)exotic::classify_form(IntMatrix{{0, 1}, {2, 0}}), exotic::ValidationError);
}

TEST_CASE("E8 is even, definite and not hyperbolic") {
  const IntMatrix e8{{2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
                     {0, 0, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
                     {0, 0, 0, 0, 0, -1, 2, 0},  {0, 0, -1, 0, 0, 0, 0, 2}};
  const auto f = exotic::classify_form(e8);
  CHECK(f.unimodular);
  CHECK(f.signature == 8);
  CHECK(f.parity == exotic::Parity::even);
  CHECK(f.kind == exotic::FormType::Kind::other);
}

TEST_CASE("classification is invariant under random unimodular change of basis") {
  const std::vector<IntMatrix> forms{
      exotic::hyperbolic_form(3),
      IntMatrix{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}},
      IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}},
      IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}},
  };
  for (const auto& m : forms) {
    const auto base = exotic::classify_form(m);
    for (int trial = 0; trial < 60; ++trial) {
      const IntMatrix w = random_unimodular(m.rows(), 12);
      REQUIRE(abs(w.determinant()) == 1);
      const IntMatrix moved = w.transpose() * m * w;
      const auto f = exotic::classify_form(moved);
      CHECK(f.rank == base.rank);
      CHECK(f.signature == base.signature);
      CHECK(f.parity == base.parity);
      CHECK(f.name() == base.name());
    }
  }
}

TEST_CASE("inertia of a non-unimodular degenerate form") {
  const auto in = exotic::inertia(IntMatrix{{1, 1, 0}, {1, 1, 0}, {0, 0, -3}});
  CHECK(in.positive == 1);
  CHECK(in.negative == 1);
  CHECK(in.zero == 1);
}

}  // TEST_SUITE
