#include <doctest.h>

#include "corpus.hpp"
#include "exotic/intlinalg.hpp"
#include "exotic/manifold.hpp"
#include "exotic/tietze.hpp"
#include "oracles.hpp"

using exotic::Presentation;

namespace {

Presentation random_presentation(int gens, int rels) {
  std::vector<std::string> names;
  for (int i = 0; i < gens; ++i) names.push_back("x" + std::to_string(i));
  std::vector<exotic::Word> words;
  for (int r = 0; r < rels; ++r) {
    exotic::Word w;
    const long len = oracle::uniform(1, 6);
    for (long i = 0; i < len; ++i) {
      const auto g = static_cast<exotic::GenIndex>(oracle::uniform(0, gens - 1));
      const long e = oracle::uniform(-2, 2);
      w *= exotic::Word::generator(g, e);
    }
    words.push_back(w);
  }
  return Presentation(std::move(names), std::move(words));
}

}  // namespace

TEST_SUITE("tietze") {

TEST_CASE("generators killed outright") {
  const auto r = exotic::tietze_simplify(corpus::make({"a", "b"}, {"a", "b"}));
  CHECK(r.presentation.rank() == 0);
  CHECK(r.presentation.relators().empty());
  CHECK(r.log.size() == 2);
  CHECK_FALSE(r.budget_exhausted);
}

TEST_CASE("one substitution leaves a free group of rank one") {
  const auto r = exotic::tietze_simplify(corpus::make({"a", "b"}, {"a*b^-1"}));
  CHECK(r.presentation.rank() == 1);
  CHECK(r.presentation.relators().empty());
  REQUIRE(r.log.size() == 1);
  CHECK(r.log.front().relator == "a*b^-1");
}

TEST_CASE("budget exhaustion returns the best presentation so far") {
  const auto r = exotic::tietze_simplify(corpus::make({"a", "b", "c"}, {"a", "b", "c"}), 1);
  CHECK(r.budget_exhausted);
  CHECK(r.presentation.rank() == 2);
  const auto none = exotic::tietze_simplify(corpus::make({"a", "b"}, {"a", "b"}), 0);
  CHECK(none.presentation.rank() == 2);
}

TEST_CASE("simplification preserves abelian invariants on the corpus") {
  for (const auto& entry : corpus::finite_groups()) {
    CAPTURE(entry.label);
    const auto r = exotic::tietze_simplify(entry.presentation);
    CHECK(exotic::abelian_invariants(r.presentation) == exotic::abelian_invariants(entry.presentation));
    CHECK(r.presentation.rank() <= entry.presentation.rank());
  }
}

TEST_CASE("simplification preserves abelian invariants on random presentations") {
  for (int trial = 0; trial < 300; ++trial) {
    const Presentation p = random_presentation(static_cast<int>(oracle::uniform(1, 5)),
                                               static_cast<int>(oracle::uniform(0, 6)));
    const auto r = exotic::tietze_simplify(p);
    CHECK(exotic::abelian_invariants(r.presentation) == exotic::abelian_invariants(p));
    CHECK(r.presentation.rank() <= p.rank());
  }
}

TEST_CASE("the surgered presentation collapses to zero generators") {
  exotic::ApplyOptions ao;
  ao.certify_pi1 = false;
  const auto model = exotic::build_Mkn(exotic::FamilyParams::make(2, 1, 1, 1), ao);
  const auto cert = exotic::simplify_with_enumeration(model.presentation);
  CHECK(cert.enumeration.completed_with(1));
  CHECK(cert.tietze.presentation.rank() == 0);
}

}  // TEST_SUITE
