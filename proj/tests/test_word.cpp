#include <doctest.h>

#include "exotic/errors.hpp"
#include "exotic/presentation.hpp"
#include "oracles.hpp"

using exotic::commutator;
using exotic::Presentation;
using exotic::Syllable;
using exotic::Word;

namespace {

Word g(exotic::GenIndex i, std::int64_t e = 1) { return Word::generator(i, e); }

oracle::Letters flat(const Word& w) {
  oracle::Letters out;
  for (const auto& s : w.syllables())
    for (std::int64_t i = 0; i < std::llabs(s.exp); ++i)
      out.push_back(s.exp > 0 ? static_cast<int>(s.gen) + 1 : -static_cast<int>(s.gen) - 1);
  return out;
}

std::vector<Syllable> random_syllables(std::size_t n, int gens) {
  std::vector<Syllable> raw;
  for (std::size_t i = 0; i < n; ++i)
    raw.push_back({static_cast<exotic::GenIndex>(oracle::uniform(0, gens - 1)), oracle::uniform(-3, 3)});
  return raw;
}

oracle::Letters flat(const std::vector<Syllable>& raw) {
  oracle::Letters out;
  for (const auto& s : raw)
    for (std::int64_t i = 0; i < std::llabs(s.exp); ++i)
      out.push_back(s.exp > 0 ? static_cast<int>(s.gen) + 1 : -static_cast<int>(s.gen) - 1);
  return out;
}

Presentation family_like() {
  return Presentation({"a1", "b1", "a2", "b2", "c1", "d1"}, {});
}

}  // namespace

TEST_SUITE("word") {

TEST_CASE("free reduction cancels inverse pairs") {
  CHECK((g(0) * g(0, -1)).empty());
  CHECK(exotic::reduce(std::vector<Syllable>{{0, 1}, {1, 1}, {1, -1}, {0, 1}}) == g(0, 2));
  CHECK(commutator(g(3), g(3)).empty());
}

TEST_CASE("commutator expands as u^-1 v^-1 u v") {
  const Word c = commutator(g(0), g(1));
  CHECK(c.length() == 4);
  CHECK(c == g(0, -1) * g(1, -1) * g(0) * g(1));
  CHECK(commutator(g(0) * g(1), g(0) * g(1)).empty());
}

TEST_CASE("[b2, c1^-1]^2 * d1^-1 reduces to length 9") {
  // Flat expansion by hand: b2^-1 c1 b2 c1^-1 b2^-1 c1 b2 c1^-1 d1^-1.
  const Word b2 = g(3), c1 = g(4), d1 = g(5);
  const Word w = commutator(b2, c1.inverse()).pow(2) * d1.inverse();
  const oracle::Letters hand{-4, 5, 4, -5, -4, 5, 4, -5, -6};
  CHECK(flat(w) == hand);
  CHECK(w.length() == 9);
}

TEST_CASE("large exponents stay run-length encoded") {
  const Word w = commutator(g(3), g(4, -1)).pow(1000);
  CHECK(w.length() == 4000);
  CHECK(w.syllable_count() == 4000);
  CHECK(g(2).pow(1'000'000'000).syllable_count() == 1);
  CHECK(g(2).pow(1'000'000'000).length() == 1'000'000'000ULL);
}

TEST_CASE("reduce agrees with a letter-stack oracle on random words") {
  for (int trial = 0; trial < 500; ++trial) {
    const auto raw = random_syllables(static_cast<std::size_t>(oracle::uniform(0, 30)), 3);
    const Word w = exotic::reduce(raw);
    CHECK(flat(w) == oracle::free_reduce(flat(raw)));
    // idempotent
    CHECK(exotic::reduce(w.syllables()) == w);
  }
}

TEST_CASE("group laws on random words") {
  for (int trial = 0; trial < 300; ++trial) {
    const Word u = exotic::reduce(random_syllables(8, 4));
    const Word v = exotic::reduce(random_syllables(8, 4));
    const Word w = exotic::reduce(random_syllables(8, 4));
    CHECK((u * v) * w == u * (v * w));
    CHECK((u * u.inverse()).empty());
    CHECK((u * v).inverse() == v.inverse() * u.inverse());
    CHECK(commutator(u, v).inverse() == commutator(v, u));
    const auto n = oracle::uniform(-5, 5);
    Word naive;
    for (long i = 0; i < std::labs(n); ++i) naive *= n > 0 ? u : u.inverse();
    CHECK(u.pow(n) == naive);
    CHECK(flat(u * v) == oracle::free_reduce(oracle::concat({flat(u), flat(v)})));
  }
}

TEST_CASE("relations normalize to lhs * rhs^-1") {
  const Word lhs = commutator(g(1, -1), g(5, -1));
  const Word rhs = g(0);
  CHECK(exotic::relation(lhs, rhs) == lhs * rhs.inverse());
}

TEST_CASE("substitution and exponent sums") {
  const Word w = g(0, 2) * g(1) * g(0, -1);
  CHECK(w.exponent_sum(0) == 1);
  CHECK(w.occurrences(0) == 3);
  CHECK(w.substitute(0, g(2) * g(3)) == g(2) * g(3) * g(2) * g(3) * g(1) * g(3, -1) * g(2, -1));
  CHECK(w.substitute(1, Word{}) == g(0));
  CHECK(w.max_generator() == 1);
}

TEST_CASE("cyclic reduction and canonical relators") {
  const Word w = g(0) * g(1) * g(2) * g(0, -1);
  CHECK(w.cyclically_reduced().length() == 2);
  // Rotations and inversion of a cyclic word share a canonical form.
  const Word r = g(0) * g(1, 2) * g(2, -1);
  const Word rot = g(1, 2) * g(2, -1) * g(0);
  CHECK(exotic::canonical_relator(r) == exotic::canonical_relator(rot));
  CHECK(exotic::canonical_relator(r) == exotic::canonical_relator(r.inverse()));
  CHECK(exotic::canonical_relator(r) == exotic::canonical_relator(g(3) * r * g(3, -1)));
  CHECK_FALSE(exotic::canonical_relator(r) == exotic::canonical_relator(g(0) * g(1) * g(2, -1)));
}

}  // TEST_SUITE

TEST_SUITE("presentation") {

TEST_CASE("parse and format the word syntax") {
  const Presentation p = family_like();
  const Word w = exotic::parse_word(p, "[b2, c1^-1]^2 * d1^-1");
  CHECK(w.length() == 9);
  CHECK(p.format(w) == "b2^-1*c1*b2*c1^-1*b2^-1*c1*b2*c1^-1*d1^-1");
  CHECK(p.format(Word{}) == "1");
  CHECK(exotic::parse_word(p, "1").empty());
  CHECK(exotic::parse_word(p, "(a1*b1)^-2") == exotic::parse_word(p, "b1^-1*a1^-1*b1^-1*a1^-1"));
  CHECK(exotic::parse_relation(p, "[b1^-1,d1^-1] = a1") ==
        exotic::relation(commutator(p.word("b1", -1), p.word("d1", -1)), p.word("a1")));
}

TEST_CASE("format then parse round-trips random words") {
  const Presentation p = family_like();
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = exotic::reduce(random_syllables(12, 6));
    CHECK(exotic::parse_word(p, p.format(w)) == w);
  }
}

TEST_CASE("parse errors carry line and column") {
  const Presentation p = family_like();
  try {
    (void)exotic::parse_word(p, "a1 * zz", 4, 10);
    FAIL("expected a parse error");
  } catch (const exotic::ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 15);
  }
  CHECK_THROWS_AS((void)exotic::parse_word(p, "[a1, b1"), exotic::ParseError);
  CHECK_THROWS_AS((void)exotic::parse_word(p, "a1^"), exotic::ParseError);
  CHECK_THROWS_AS((void)exotic::parse_word(p, "a1 b1"), exotic::ParseError);
  CHECK_THROWS_AS((void)exotic::parse_relation(p, "a1 = b1 = c1"), exotic::ParseError);
}

TEST_CASE("presentations validate their generators") {
  CHECK_THROWS_AS(Presentation({"a", "a"}, {}), exotic::ValidationError);
  CHECK_THROWS_AS(Presentation({"a b"}, {}), exotic::ValidationError);
  CHECK_THROWS_AS(Presentation({"a"}, {g(1)}), exotic::ValidationError);
  const Presentation p({"a", "b"}, {g(0) * g(0, -1), g(1, 3)});
  CHECK(p.relators().size() == 1);  // the empty relator is dropped
  CHECK(p.index("b") == 1);
  CHECK_FALSE(p.find("c").has_value());
  CHECK(p.find_relator(g(1, -3)).has_value());
}

}  // TEST_SUITE
