#include <doctest.h>

#include "exotic/report.hpp"

using exotic::parse_spec;
using exotic::SpecError;

namespace {

SpecError::Kind kind_of(std::string_view text) {
  try {
    (void)parse_spec(text);
  } catch (const SpecError& e) {
    return e.kind();
  }
  FAIL("expected a diagnostic");
  return SpecError::Kind::syntax;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("family lines expand to a grid") {
  const auto spec = parse_spec("family k=2 n=1..3 p=1 r=1 m=1..2\n");
  CHECK(spec.models().size() == 6);
  CHECK(spec.mode() == exotic::RunMode::family_sweep);
  CHECK(parse_spec("family k=2 n=1 p=1 r=1").mode() == exotic::RunMode::single);
}

TEST_CASE("directives, comments and custom blocks") {
  const auto spec = parse_spec(
      "# sweep\n"
      "limit 5000\n"
      "strategy felsch\n"
      "family k=3 n=2 p=0 r=1   # trailing comment\n"
      "custom k=2 name=swap\n"
      "  remove [a1^-1,d1]\n"
      "  add [a1^-1,d1] = c1\n"
      "end\n");
  CHECK(spec.limit == 5000);
  CHECK(spec.strategy == exotic::Strategy::felsch);
  REQUIRE(spec.customs.size() == 1);
  CHECK(spec.customs[0].name == "swap");
  CHECK(spec.customs[0].removes.size() == 1);
  CHECK(spec.customs[0].adds.front() == "[a1^-1,d1] = c1");
  CHECK(parse_spec("custom k=2\nremove a1\nend\n").mode() == exotic::RunMode::custom_schedule);
}

TEST_CASE("diagnostics") {
  CHECK(kind_of("") == SpecError::Kind::empty);
  CHECK(kind_of("# nothing\n\n") == SpecError::Kind::empty);
  try {
    (void)parse_spec("") ;
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("no run specified") != std::string::npos);
  }
  try {
    (void)parse_spec("limit 10\nfamily k=2 n=0 p=1 r=1 m=1\n");
    FAIL("n=0 accepted");
  } catch (const SpecError& e) {
    CHECK(e.kind() == SpecError::Kind::constraint);
    CHECK(e.line() == 2);
    CHECK(e.column() == 14);
    CHECK(std::string(e.what()).find("n ≥ 1") != std::string::npos);
  }
  CHECK(kind_of("family k=2 n=1 p=-1 r=1") == SpecError::Kind::constraint);
  CHECK(kind_of("family k=2 n=1 p=1 r=1 m=0") == SpecError::Kind::constraint);
  CHECK(kind_of("family k=2 n=1 p=1") == SpecError::Kind::syntax);
  CHECK(kind_of("family k=2 n=1 p=1 r=1 q=3") == SpecError::Kind::syntax);
  CHECK(kind_of("family k=2 n=3..1 p=1 r=1") == SpecError::Kind::syntax);
  CHECK(kind_of("family k=x n=1 p=1 r=1") == SpecError::Kind::syntax);
  CHECK(kind_of("sweep everything") == SpecError::Kind::syntax);
  CHECK(kind_of("custom k=2\nremove a1\n") == SpecError::Kind::syntax);
  CHECK(kind_of("strategy dfs\nfamily k=2 n=1 p=1 r=1") == SpecError::Kind::syntax);
  try {
    (void)parse_spec("custom k=2\n  add [a1, zz]\nend\n");
    FAIL("unknown generator accepted");
  } catch (const SpecError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 12);
  }
}

TEST_CASE("single model with nontrivial pi1 stays unclassified") {
  const auto report = exotic::run(parse_spec("family k=2 n=1 p=2 r=3 m=1"));
  const auto& m = report.body.at("models").at(0);
  CHECK(m.at("verdicts").at("pi1").at("computed") == "Z/6");
  CHECK(m.at("verdicts").at("pi1").at("enumeration").at("index") == 6);
  CHECK(m.at("verdicts").at("homeomorphism").at("status") == "unclassified");
  CHECK(report.exit_code() == 0);
}

TEST_CASE("sweep report: types, pairwise distinction, tags, determinism") {
  exotic::RunSpec spec = parse_spec("family k=2 n=1..3 p=1 r=1 m=1..2");
  const auto a = exotic::run(spec);
  CHECK(a.all_pass);
  const auto& models = a.body.at("models");
  REQUIRE(models.size() == 6);
  for (const auto& m : models) {
    const int mm = m.at("params").at("m");
    CHECK(m.at("status") == "pass");
    CHECK(m.at("verdicts").at("homeomorphism").at("type") == (mm == 1 ? "3(S²×S²)" : "3(CP²#CP²bar)"));
    CHECK(m.at("verdicts").at("symplectic").at("tag") ==
          (m.at("params").at("n") == 1 ? "symplectic" : "nonsymplectic"));
  }
  CHECK(a.body.at("distinction").size() == 6);
  for (const auto& d : a.body.at("distinction")) CHECK(d.at("verdict") == "nondiffeomorphic");
  for (const auto& f : a.body.at("families")) CHECK(f.at("infinity_squared_skeleton") == true);
  CHECK(a.body.at("assumptions").size() >= 4);

  spec.jobs = 3;
  const auto b = exotic::run(spec);
  CHECK(a.json_text() == b.json_text());
  CHECK(exotic::render_table(a.body) == exotic::render_table(b.body));
}

TEST_CASE("schedule mismatch errors one record only") {
  const auto r = exotic::run(parse_spec("family k=2 n=1 p=1 r=1\ncustom k=2 name=bad\nremove a1*b1\nend\n"));
  const auto& models = r.body.at("models");
  REQUIRE(models.size() == 2);
  CHECK(models.at(0).at("status") == "pass");
  CHECK(models.at(1).at("status") == "error");
  CHECK(r.exit_code() == 1);
}

TEST_CASE("k = 1 is reported with unverified claims") {
  const auto r = exotic::run(parse_spec("family k=1 n=1 p=1 r=1"));
  const auto& m = r.body.at("models").at(0);
  CHECK(m.at("verdicts").at("pi1").at("status") == "unverified");
  CHECK(m.at("notes").size() == 1);
}

}  // TEST_SUITE
