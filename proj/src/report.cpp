#include "exotic/report.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "exotic/sw_invariants.hpp"

namespace exotic {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Run-description parsing

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

int parse_int(std::string_view s, std::size_t line, std::size_t column) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw SpecError(SpecError::Kind::syntax, "expected an integer, got '" + std::string(s) + "'",
                    line, column);
  return v;
}

const char* const kConstraintNote =
    "family parameters need k ≥ 1, n ≥ 1, p ≥ 0, r ≥ 0, m ≥ 1";

void check_bound(const IntRange& r, int min, const char* name, std::size_t line,
                 std::size_t column) {
  if (r.lo < min)
    throw SpecError(SpecError::Kind::constraint,
                    std::string(name) + " ≥ " + std::to_string(min) + " required (got " +
                        std::to_string(r.lo) + "); " + kConstraintNote,
                    line, column);
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

IntRange parse_range(std::string_view text, std::size_t line, std::size_t column) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int v = parse_int(text, line, column);
    return {v, v};
  }
  const int lo = parse_int(text.substr(0, dots), line, column);
  const int hi = parse_int(text.substr(dots + 2), line, column + dots + 2);
  if (hi < lo)
    throw SpecError(SpecError::Kind::syntax, "empty range '" + std::string(text) + "'", line,
                    column);
  return {lo, hi};
}

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::single:
      return "single";
    case RunMode::family_sweep:
      return "family-sweep";
    case RunMode::custom_schedule:
      break;
  }
  return "custom-schedule";
}

RunMode RunSpec::mode() const {
  if (families.empty() && !customs.empty()) return RunMode::custom_schedule;
  if (customs.empty() && models().size() == 1) return RunMode::single;
  return RunMode::family_sweep;
}

std::vector<FamilyParams> RunSpec::models() const {
  std::vector<FamilyParams> out;
  std::set<FamilyParams> seen;
  for (const auto& f : families)
    for (int k = f.k.lo; k <= f.k.hi; ++k)
      for (int n = f.n.lo; n <= f.n.hi; ++n)
        for (int p = f.p.lo; p <= f.p.hi; ++p)
          for (int r = f.r.lo; r <= f.r.hi; ++r)
            for (int m = f.m.lo; m <= f.m.hi; ++m) {
              const FamilyParams fp{k, n, p, r, m};
              if (seen.insert(fp).second) out.push_back(fp);
            }
  return out;
}

void RunSpec::validate() const {
  if (families.empty() && customs.empty())
    throw SpecError(SpecError::Kind::empty, "no run specified", 1, 1);
  for (const auto& f : families) {
    check_bound(f.k, 1, "k", 1, 1);
    check_bound(f.n, 1, "n", 1, 1);
    check_bound(f.p, 0, "p", 1, 1);
    check_bound(f.r, 0, "r", 1, 1);
    check_bound(f.m, 1, "m", 1, 1);
  }
  for (const auto& c : customs)
    if (c.k < 1) throw SpecError(SpecError::Kind::constraint, "k ≥ 1 required", 1, 1);
  if (limit == 0) throw SpecError(SpecError::Kind::constraint, "limit must be positive", 1, 1);
}

RunSpec parse_spec(std::string_view text) {
  RunSpec spec;
  std::optional<CustomSpec> open;
  std::optional<Presentation> open_gens;
  std::size_t open_line = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const std::string_view body = strip_comment(raw);
    const auto toks = tokenize(body);
    if (toks.empty()) continue;
    const std::string_view head = toks.front().text;

    if (open) {
      if (head == "end") {
        if (toks.size() != 1)
          throw SpecError(SpecError::Kind::syntax, "unexpected text after 'end'", line_no,
                          toks[1].column);
        spec.customs.push_back(std::move(*open));
        open.reset();
        continue;
      }
      if (head != "remove" && head != "add")
        throw SpecError(SpecError::Kind::syntax,
                        "expected 'remove', 'add' or 'end' inside a custom block", line_no,
                        toks.front().column);
      const std::size_t start = toks.front().column - 1 + head.size();
      const std::string_view rel = body.substr(start);
      if (trim(rel).empty())
        throw SpecError(SpecError::Kind::syntax, "missing relation", line_no, start + 1);
      try {
        (void)parse_relation(*open_gens, rel, line_no, start + 1);
      } catch (const ParseError& e) {
        throw SpecError(SpecError::Kind::syntax, e.detail(), e.line(), e.column());
      }
      (head == "remove" ? open->removes : open->adds).emplace_back(trim(rel));
      continue;
    }

    if (head == "family") {
      FamilySpec f;
      std::set<std::string_view> keys;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto eq = toks[i].text.find('=');
        if (eq == std::string_view::npos)
          throw SpecError(SpecError::Kind::syntax, "expected key=value", line_no, toks[i].column);
        const auto key = toks[i].text.substr(0, eq);
        const auto value = toks[i].text.substr(eq + 1);
        const std::size_t vcol = toks[i].column + eq + 1;
        if (!keys.insert(key).second)
          throw SpecError(SpecError::Kind::syntax, "duplicate key '" + std::string(key) + "'",
                          line_no, toks[i].column);
        const IntRange range = parse_range(value, line_no, vcol);
        if (key == "k") {
          if (range.lo != range.hi)
            throw SpecError(SpecError::Kind::syntax, "k takes a single integer", line_no, vcol);
          check_bound(range, 1, "k", line_no, vcol);
          f.k = range;
        } else if (key == "n") {
          check_bound(range, 1, "n", line_no, vcol);
          f.n = range;
        } else if (key == "p" || key == "r") {
          if (range.lo != range.hi)
            throw SpecError(SpecError::Kind::syntax,
                            std::string(key) + " takes a single integer", line_no, vcol);
          check_bound(range, 0, key == "p" ? "p" : "r", line_no, vcol);
          (key == "p" ? f.p : f.r) = range;
        } else if (key == "m") {
          check_bound(range, 1, "m", line_no, vcol);
          f.m = range;
        } else {
          throw SpecError(SpecError::Kind::syntax, "unknown key '" + std::string(key) + "'",
                          line_no, toks[i].column);
        }
      }
      for (const char* required : {"k", "n", "p", "r"})
        if (keys.count(required) == 0)
          throw SpecError(SpecError::Kind::syntax,
                          std::string("family line needs ") + required + "=", line_no,
                          toks.front().column);
      spec.families.push_back(f);
    } else if (head == "limit") {
      if (toks.size() != 2)
        throw SpecError(SpecError::Kind::syntax, "usage: limit <int>", line_no, toks.front().column);
      const int v = parse_int(toks[1].text, line_no, toks[1].column);
      if (v < 1)
        throw SpecError(SpecError::Kind::constraint, "limit must be positive", line_no,
                        toks[1].column);
      spec.limit = static_cast<std::size_t>(v);
    } else if (head == "strategy") {
      if (toks.size() != 2 || (toks[1].text != "hlt" && toks[1].text != "felsch"))
        throw SpecError(SpecError::Kind::syntax, "usage: strategy hlt|felsch", line_no,
                        toks.front().column);
      spec.strategy = toks[1].text == "hlt" ? Strategy::hlt : Strategy::felsch;
    } else if (head == "custom") {
      CustomSpec c;
      bool have_k = false;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto eq = toks[i].text.find('=');
        const auto key = eq == std::string_view::npos ? toks[i].text : toks[i].text.substr(0, eq);
        const auto value = eq == std::string_view::npos ? std::string_view{} : toks[i].text.substr(eq + 1);
        if (key == "k") {
          c.k = parse_int(value, line_no, toks[i].column + eq + 1);
          if (c.k < 1)
            throw SpecError(SpecError::Kind::constraint, "k ≥ 1 required; " + std::string(kConstraintNote),
                            line_no, toks[i].column + eq + 1);
          have_k = true;
        } else if (key == "name" && is_identifier(value)) {
          c.name = std::string(value);
        } else {
          throw SpecError(SpecError::Kind::syntax, "expected k=<int> or name=<identifier>",
                          line_no, toks[i].column);
        }
      }
      if (!have_k)
        throw SpecError(SpecError::Kind::syntax, "custom block needs k=<int>", line_no,
                        toks.front().column);
      if (c.name.empty()) c.name = "custom" + std::to_string(spec.customs.size() + 1);
      open_gens = Presentation(family_generators(c.k), {});
      open = std::move(c);
      open_line = line_no;
    } else {
      throw SpecError(SpecError::Kind::syntax, "unknown directive '" + std::string(head) + "'",
                      line_no, toks.front().column);
    }
  }
  if (open)
    throw SpecError(SpecError::Kind::syntax, "custom block is not closed by 'end'", open_line, 1);
  if (spec.families.empty() && spec.customs.empty())
    throw SpecError(SpecError::Kind::empty, "no run specified", 1, 1);
  return spec;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

json enumeration_json(const EnumerationOutcome& e, bool timings) {
  json j;
  j["status"] = e.completed() ? "completed" : "limit_exceeded";
  if (e.completed())
    j["index"] = e.index;
  else
    j["cosets_used"] = e.cosets_used;
  j["definitions"] = e.stats.definitions;
  j["coincidences"] = e.stats.coincidences;
  j["max_live_cosets"] = e.stats.max_live;
  j["lookaheads"] = e.stats.lookaheads;
  if (timings) j["seconds"] = e.stats.seconds;
  return j;
}

json presentation_json(const Presentation& p) {
  json j;
  j["generators"] = p.generators();
  json rels = json::array();
  for (const auto& r : p.relators()) rels.push_back(p.format(r));
  j["relators"] = std::move(rels);
  j["relator_count"] = p.relators().size();
  j["total_length"] = p.total_length();
  return j;
}

json chars_json(const CharNumbers& c) {
  return json{{"e", c.e}, {"sigma", c.sigma}, {"b1", c.b1}, {"b2", c.b2}, {"b2plus", c.b2plus}};
}

json form_json(const std::optional<FormBasis>& form) {
  if (!form) return json{{"kind", "undetermined"}};
  const FormType t = classify_form(form->pairing);
  json basis = json::array();
  for (const auto& pr : form->pairs) basis.push_back(json::array({pr.first, pr.second}));
  return json{{"kind", t.name()},
              {"rank", t.rank},
              {"signature", t.signature},
              {"parity", t.parity == Parity::even ? "even" : "odd"},
              {"basis", std::move(basis)},
              {"matrix", form->pairing.to_strings()}};
}

json schedule_json(const Presentation& gens, const std::vector<SurgeryMove>& moves) {
  json arr = json::array();
  for (const auto& mv : moves) {
    json rem = json::array();
    json add = json::array();
    for (const auto& w : mv.removed_relations) rem.push_back(gens.format(w));
    for (const auto& w : mv.added_relations) add.push_back(gens.format(w));
    arr.push_back(json{{"torus", mv.torus_label},
                       {"curve", mv.surgery_curve},
                       {"coefficient", mv.coefficient.to_string()},
                       {"symplectic", mv.symplectic},
                       {"removed", std::move(rem)},
                       {"added", std::move(add)}});
  }
  return arr;
}

json classes_json(const BasicClassSet& set) {
  json arr = json::array();
  for (const auto& e : set.entries)
    arr.push_back(json{{"s", e.cls.s}, {"t", e.cls.t}, {"j", e.cls.j}, {"value", e.value}});
  return arr;
}

struct ModelResult {
  json record;
  bool pass = true;
  std::optional<BasicClassSet> classes;
  std::optional<std::string> homeomorphism_type;
  FamilyParams params;
  std::string name;
};

struct Failures {
  json list = json::array();
  void add(std::string s) { list.push_back(std::move(s)); }
  [[nodiscard]] bool empty() const { return list.empty(); }
};

/// Everything that does not depend on m: the surgered model, its pi1
/// verdict and the complement check.
struct BaseStage {
  ManifoldModel x;
  std::vector<SurgeryMove> moves;
  ManifoldModel model;
  Pi1Verdict pi1;
  std::optional<ComplementVerdict> complement;
};

BaseStage build_base(const FamilyParams& fp, const EnumerationOptions& eo) {
  ApplyOptions ao;
  ao.certify_pi1 = false;
  ao.enumeration = eo;
  BaseStage b{build_Xk(fp.k), schedule_Mkn(fp), {}, {}, std::nullopt};
  const ManifoldModel surgered = build_Mkn(fp, ao);
  b.pi1 = verify_pi1(surgered, eo);
  b.model = with_pi1_verdict(surgered, b.pi1);
  if (fp.claims_apply() && fp.simply_connected_target() && b.pi1.certifies_trivial())
    b.complement = verify_complement(b.model, eo);
  return b;
}

ModelResult run_family_model(const FamilyParams& fp, const RunSpec& spec,
                             const std::function<const BaseStage&()>& base) {
  ModelResult res;
  res.params = fp;
  json& rec = res.record;
  rec["params"] = json{{"k", fp.k}, {"n", fp.n}, {"p", fp.p}, {"r", fp.r}, {"m", fp.m}};
  Failures fail;
  json verdicts;
  json notes = json::array();

  try {
    const BaseStage& stage = base();
    const ManifoldModel& x = stage.x;
    const ManifoldModel& model = stage.model;
    const Pi1Verdict& pi1 = stage.pi1;
    const std::optional<ComplementVerdict>& complement = stage.complement;
    rec["schedule"] = schedule_json(x.presentation, stage.moves);
    rec["base"] = json{{"name", x.name}, {"characteristic_numbers", chars_json(x.chars)},
                       {"form", classify_form(x.form->pairing).name()}};

    json pj{{"status", to_string(pi1.status)},
            {"claimed", pi1.claimed.to_string()},
            {"computed", pi1.computed.to_string()},
            {"h1_match", pi1.h1_match},
            {"enumeration", pi1.enumeration ? enumeration_json(*pi1.enumeration, spec.timings)
                                            : json("skipped")}};
    if (pi1.enumeration)
      pj["simplified"] = json{{"generators", pi1.simplified_generators},
                              {"relators", pi1.simplified_relators}};
    if (!pi1.note.empty()) pj["note"] = pi1.note;
    verdicts["pi1"] = std::move(pj);
    if (pi1.status == Pi1Verdict::Status::fail) fail.add("pi1: expected " + pi1.claimed.to_string());
    for (const auto& n : model.notes) notes.push_back(n);

    const bool family_claims = fp.claims_apply() && fp.simply_connected_target();
    if (complement) {
      verdicts["complement"] = json{{"status", complement->pass ? "pass" : "fail"},
                                    {"enumeration", enumeration_json(complement->enumeration, spec.timings)}};
      if (!complement->pass) fail.add("complement: not certified simply connected");
    } else {
      verdicts["complement"] = json{{"status", "skipped"}};
    }

    ManifoldModel final_model = model;
    if (fp.m >= 2) {
      try {
        final_model = apply_log_transform(model, fp.m, pi1, complement.value_or(ComplementVerdict{}));
        verdicts["log_transform"] = json{{"status", "applied"}, {"multiplicity", fp.m}};
      } catch (const Refusal& e) {
        verdicts["log_transform"] = json{{"status", "refused"}, {"reason", e.what()}};
        fail.add(std::string("log transform: ") + e.what());
      }
    } else {
      verdicts["log_transform"] = json{{"status", "not requested"}};
    }
    res.name = final_model.name;
    rec["name"] = final_model.name;
    rec["presentation"] = presentation_json(final_model.presentation);
    rec["characteristic_numbers"] = chars_json(final_model.chars);
    if (!final_model.chars.consistent()) fail.add("characteristic numbers inconsistent");
    if (final_model.chars.e != x.chars.e || final_model.chars.sigma != x.chars.sigma)
      fail.add("surgery changed e or sigma");
    verdicts["form"] = form_json(final_model.form);

    if (family_claims) {
      const BasicClassSet classes = basic_classes(fp.k, fp.n, fp.m);
      rec["sw_classes"] = classes_json(classes);
      const SpinType spin = spin_parity(fp.k, fp.m);
      verdicts["parity"] = to_string(spin);
      const bool char_ok = characteristic_parity_consistent(classes);
      verdicts["characteristic_parity"] = char_ok;
      if (!char_ok) fail.add("basic classes are not characteristic");
      const IrreducibilityVerdict irr = irreducibility_check(classes, fp.k);
      verdicts["irreducibility"] =
          json{{"status", irr.pass ? "irreducible" : "fail"}, {"squares", irr.squares}};
      if (!irr.pass) fail.add("irreducibility: (L-L')^2 outside {0, 32k}");
      const SymplecticTag tag = symplectic_tag(fp.n);
      verdicts["symplectic"] = json{{"tag", to_string(tag)}, {"model_flag", to_string(final_model.symplectic)}};
      const Tristate expected = tag == SymplecticTag::symplectic ? Tristate::yes : Tristate::no;
      if (final_model.symplectic != expected) fail.add("symplectic flag disagrees with |SW| values");
      if (final_model.chars.b2plus != 2 * fp.k - 1) fail.add("b2+ != 2k-1");
      res.classes = classes;
    } else {
      rec["sw_classes"] = json::array();
      verdicts["parity"] = "unknown";
      verdicts["irreducibility"] = json{{"status", "skipped"}};
      verdicts["symplectic"] = json{{"tag", "unknown"}, {"model_flag", to_string(final_model.symplectic)}};
    }

    const HomeomorphismVerdict homeo = classify_homeomorphism(final_model);
    if (homeo.classified) {
      verdicts["homeomorphism"] = json{{"status", "classified"}, {"type", homeo.type}};
      res.homeomorphism_type = homeo.type;
    } else {
      verdicts["homeomorphism"] = json{{"status", "unclassified"}, {"reason", homeo.reason}};
      if (family_claims && pi1.status == Pi1Verdict::Status::pass)
        fail.add("homeomorphism: " + homeo.reason);
    }
    rec["status"] = fail.empty() ? "pass" : "fail";
  } catch (const std::exception& e) {
    rec["status"] = "error";
    rec["error"] = e.what();
    if (!rec.contains("name")) rec["name"] = "M_{" + std::to_string(fp.k) + "," + std::to_string(fp.n) + "}";
    fail.add(std::string("error: ") + e.what());
  }
  res.pass = fail.empty();
  rec["verdicts"] = std::move(verdicts);
  rec["failures"] = std::move(fail.list);
  rec["notes"] = std::move(notes);
  if (res.name.empty()) res.name = rec["name"].get<std::string>();
  return res;
}

ModelResult run_custom_model(const CustomSpec& c, const RunSpec& spec) {
  ModelResult res;
  json& rec = res.record;
  rec["name"] = c.name;
  res.name = c.name;
  rec["params"] = json{{"k", c.k}};
  Failures fail;
  json verdicts;
  try {
    const ManifoldModel x = build_Xk(c.k);
    SurgeryMove mv;
    mv.torus_label = c.name;
    mv.surgery_curve = "";
    for (const auto& s : c.removes) mv.removed_relations.push_back(parse_relation(x.presentation, s));
    for (const auto& s : c.adds) mv.added_relations.push_back(parse_relation(x.presentation, s));
    const std::vector<SurgeryMove> moves{mv};
    ApplyOptions ao;
    ao.certify_pi1 = false;
    const ManifoldModel model = apply_schedule(x, moves, ao);
    rec["schedule"] = schedule_json(x.presentation, moves);
    rec["presentation"] = presentation_json(model.presentation);
    rec["characteristic_numbers"] = chars_json(model.chars);
    const AbelianInvariants h1 = abelian_invariants(model.presentation);
    json pj{{"computed", h1.to_string()}};
    if (h1.free_rank == 0) {
      EnumerationOptions eo;
      eo.limit = spec.limit;
      eo.strategy = spec.strategy;
      const auto cert = simplify_with_enumeration(model.presentation, {}, eo);
      pj["enumeration"] = enumeration_json(cert.enumeration, spec.timings);
    } else {
      pj["enumeration"] = "skipped";
    }
    verdicts["pi1"] = std::move(pj);
    if (!model.chars.consistent()) fail.add("characteristic numbers inconsistent");
    rec["status"] = fail.empty() ? "pass" : "fail";
  } catch (const std::exception& e) {
    rec["status"] = "error";
    rec["error"] = e.what();
    fail.add(std::string("error: ") + e.what());
  }
  res.pass = fail.empty();
  rec["verdicts"] = std::move(verdicts);
  rec["failures"] = std::move(fail.list);
  return res;
}

json assumption_ledger() {
  json a = json::array();
  auto add = [&](const char* id, const char* statement, const char* citation) {
    a.push_back(json{{"id", id}, {"statement", statement}, {"citation", citation}});
  };
  add("relation-list-completeness",
      "The surgered relation list presents the fundamental group; only the collapse direction "
      "(these relations force the stated group) is machine-checked.",
      "Relation list of the surgered genus-2 bundle model; not machine-checked");
  add("infinite-order-generators",
      "c2 and d2 have infinite order before surgery; used qualitatively, not machine-checked.",
      "Bundle projection onto the genus k+1 base surface");
  add("taubes",
      "A closed symplectic 4-manifold with b2+ > 1 has |SW(+-K)| = 1; Z_k has basic classes "
      "+-(2kA+2B) with |SW| = 1.",
      "Taubes, The Seiberg-Witten invariants and symplectic forms (1994)");
  add("torus-surgery-gluing",
      "The -n surgery multiplies the SW value of +-(2kA+2B) by n and creates no new basic class.",
      "Torus-surgery gluing formula for SW invariants (Morgan-Mrowka-Szabo)");
  add("log-transform-formula",
      "With simply connected torus complement, the multiplicity-m transform has basic classes "
      "+-(2kA+2B)+jT, j = -(m-1), -(m-3), ..., m-1, each with value n.",
      "SW formula for generalized logarithmic transforms along tori with simply connected complement");
  add("t-primitive", "The core-torus class T is primitive, so T is nonzero mod 2.",
      "Input assumption, not verified");
  add("freedman",
      "Simply connected closed topological 4-manifolds are classified by the intersection form "
      "and the Kirby-Siebenmann invariant (zero for smooth manifolds).",
      "Freedman, The topology of four-dimensional manifolds (1982)");
  add("adjunction",
      "Every basic class of Z_k is sA+tB with s, t even, |s| <= 2k, |t| <= 2, and the moduli "
      "space dimension bound L^2 >= 2e+3sigma.",
      "Adjunction inequality and the SW dimension formula");
  add("symplectic-surgery",
      "Luttinger surgeries and the transform along a symplectic torus preserve symplecticity.",
      "Luttinger; Auroux-Donaldson-Katzarkov; Symington");
  return a;
}

void run_parallel(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(count));
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::string Report::json_text() const { return body.dump(2) + "\n"; }

Report run(const RunSpec& spec) {
  spec.validate();
  const auto params = spec.models();
  EnumerationOptions eo;
  eo.limit = spec.limit;
  eo.strategy = spec.strategy;

  // Members differing only in m share one base computation; groups run in
  // parallel and every result lands in its fixed slot.
  std::map<std::tuple<int, int, int, int>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < params.size(); ++i)
    groups[{params[i].k, params[i].n, params[i].p, params[i].r}].push_back(i);
  std::vector<std::vector<std::size_t>> tasks;
  for (auto& [key, members] : groups) tasks.push_back(std::move(members));
  for (std::size_t c = 0; c < spec.customs.size(); ++c) tasks.push_back({params.size() + c});

  std::vector<ModelResult> results(params.size() + spec.customs.size());
  run_parallel(tasks.size(), spec.jobs, [&](std::size_t t) {
    const auto& members = tasks[t];
    if (members.front() >= params.size()) {
      results[members.front()] = run_custom_model(spec.customs[members.front() - params.size()], spec);
      return;
    }
    std::optional<BaseStage> stage;
    std::exception_ptr failure;
    const FamilyParams& first = params[members.front()];
    const std::function<const BaseStage&()> base = [&]() -> const BaseStage& {
      if (failure) std::rethrow_exception(failure);
      if (!stage) {
        try {
          stage = build_base(first, eo);
        } catch (...) {
          failure = std::current_exception();
          throw;
        }
      }
      return *stage;
    };
    for (auto i : members) results[i] = run_family_model(params[i], spec, base);
  });

  Report report;
  json& body = report.body;
  bool all_pass = true;
  json models = json::array();
  for (const auto& r : results) {
    models.push_back(r.record);
    all_pass = all_pass && r.pass;
  }
  body["models"] = std::move(models);

  // Pairwise comparison within each homeomorphism type.
  json pairs = json::array();
  std::map<std::string, std::vector<std::size_t>> by_type;
  for (std::size_t i = 0; i < params.size(); ++i)
    if (results[i].homeomorphism_type && results[i].classes)
      by_type[*results[i].homeomorphism_type].push_back(i);
  json families = json::array();
  for (const auto& [type, members] : by_type) {
    bool pairwise = true;
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const auto& ra = results[members[a]];
        const auto& rb = results[members[b]];
        const SmoothVerdict v = distinguish(*ra.classes, *rb.classes);
        json pj{{"a", ra.name}, {"b", rb.name}, {"type", type}, {"verdict", to_string(v.kind)}};
        if (!v.witness.empty()) pj["witness"] = v.witness;
        pairs.push_back(std::move(pj));
        pairwise = pairwise && v.kind == SmoothVerdict::Kind::nondiffeomorphic;
      }
    json sympl = json::array();
    json nonsympl = json::array();
    for (auto i : members)
      (symplectic_tag(results[i].params.n) == SymplecticTag::symplectic ? sympl : nonsympl)
          .push_back(results[i].name);
    const bool skeleton = pairwise && !sympl.empty() && !nonsympl.empty();
    families.push_back(json{{"type", type},
                            {"members", members.size()},
                            {"pairwise_nondiffeomorphic", pairwise},
                            {"symplectic", std::move(sympl)},
                            {"nonsymplectic", std::move(nonsympl)},
                            {"infinity_squared_skeleton", skeleton}});
    if (!pairwise) all_pass = false;
  }
  body["distinction"] = std::move(pairs);
  body["families"] = std::move(families);
  body["assumptions"] = assumption_ledger();
  body["run"] = json{{"mode", to_string(spec.mode())},
                     {"limit", spec.limit},
                     {"strategy", spec.strategy == Strategy::hlt ? "hlt" : "felsch"},
                     {"commutator_convention", "[u,v] = u^-1*v^-1*u*v"}};
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  report.all_pass = all_pass;
  body["summary"] = json{{"models", results.size()},
                         {"passed", passed},
                         {"failed", results.size() - passed},
                         {"all_pass", all_pass},
                         {"exit_code", report.exit_code()}};
  body["tool"] = json{{"name", "exotic"}, {"version", "0.1.0"}};
  return report;
}

// ---------------------------------------------------------------------------
// Table rendering

namespace {

std::string cell(const json& j, const char* key, const char* fallback = "-") {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

/// Display width, counting UTF-8 code points.
std::size_t width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0U) != 0x80U) ++w;
  return w;
}

std::string pad(const std::string& s, std::size_t w) {
  const std::size_t cur = width(s);
  return cur >= w ? s : s + std::string(w - cur, ' ');
}

std::string grid(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (w.size() <= i) w.push_back(0);
      w[i] = std::max(w[i], width(r[i]));
    }
  std::ostringstream out;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    for (std::size_t i = 0; i < rows[ri].size(); ++i)
      out << (i ? "  " : "") << (i + 1 == rows[ri].size() ? rows[ri][i] : pad(rows[ri][i], w[i]));
    out << '\n';
    if (ri == 0) {
      std::size_t total = 0;
      for (auto x : w) total += x + 2;
      out << std::string(total > 2 ? total - 2 : total, '-') << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::string render_table(const json& body) {
  std::vector<std::vector<std::string>> rows{
      {"model", "status", "pi1", "enum", "complement", "(e,σ,b1,b2,b2+)", "form", "parity",
       "homeomorphism", "irreducible", "symplectic"}};
  for (const auto& m : body.at("models")) {
    const json& v = m.contains("verdicts") ? m.at("verdicts") : json::object();
    const json pi1 = v.contains("pi1") ? v.at("pi1") : json::object();
    std::string en = "-";
    if (pi1.contains("enumeration")) {
      const json& e = pi1.at("enumeration");
      en = e.is_object() ? (e.at("status") == "completed" ? "index " + e.at("index").dump()
                                                          : std::string("limit"))
                         : e.get<std::string>();
    }
    std::string chars = "-";
    if (m.contains("characteristic_numbers")) {
      const json& c = m.at("characteristic_numbers");
      chars = "(" + c.at("e").dump() + "," + c.at("sigma").dump() + "," + c.at("b1").dump() + "," +
              c.at("b2").dump() + "," + c.at("b2plus").dump() + ")";
    }
    const json homeo = v.contains("homeomorphism") ? v.at("homeomorphism") : json::object();
    rows.push_back({cell(m, "name"), cell(m, "status"), cell(pi1, "computed"), en,
                    cell(v.contains("complement") ? v.at("complement") : json::object(), "status"),
                    chars, cell(v.contains("form") ? v.at("form") : json::object(), "kind"),
                    cell(v, "parity"),
                    homeo.contains("type") ? cell(homeo, "type") : cell(homeo, "status"),
                    cell(v.contains("irreducibility") ? v.at("irreducibility") : json::object(), "status"),
                    cell(v.contains("symplectic") ? v.at("symplectic") : json::object(), "tag")});
  }
  std::string out = grid(rows);

  if (!body.at("distinction").empty()) {
    std::vector<std::vector<std::string>> d{{"a", "b", "type", "verdict", "witness"}};
    for (const auto& p : body.at("distinction"))
      d.push_back({cell(p, "a"), cell(p, "b"), cell(p, "type"), cell(p, "verdict"), cell(p, "witness", "")});
    out += "\n" + grid(d);
  }
  for (const auto& f : body.at("families"))
    out += "\nfamily " + cell(f, "type") + ": " + cell(f, "members") +
           " members, pairwise nondiffeomorphic " + cell(f, "pairwise_nondiffeomorphic") +
           ", symplectic " + f.at("symplectic").dump() + ", nonsymplectic " +
           f.at("nonsymplectic").dump() + "\n";
  out += "\nassumptions:\n";
  for (const auto& a : body.at("assumptions"))
    out += "  - " + cell(a, "id") + ": " + cell(a, "statement") + "\n";
  const json& s = body.at("summary");
  out += "\n" + cell(s, "passed") + "/" + cell(s, "models") + " models pass\n";
  return out;
}

}  // namespace exotic
