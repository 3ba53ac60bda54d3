#include "exotic/manifold.hpp"

#include <algorithm>

#include "exotic/errors.hpp"
#include "exotic/sw_invariants.hpp"

namespace exotic {

FamilyParams FamilyParams::make(int k, int n, int p, int r, int m) {
  FamilyParams f{k, n, p, r, m};
  f.validate();
  return f;
}

void FamilyParams::validate() const {
  if (k < 1) throw ParameterError("k >= 1 required (got k=" + std::to_string(k) + ")");
  if (n < 1) throw ParameterError("n >= 1 required (got n=" + std::to_string(n) + ")");
  if (p < 0) throw ParameterError("p >= 0 required (got p=" + std::to_string(p) + ")");
  if (r < 0) throw ParameterError("r >= 0 required (got r=" + std::to_string(r) + ")");
  if (m < 1) throw ParameterError("m >= 1 required (got m=" + std::to_string(m) + ")");
}

CharNumbers CharNumbers::from_euler(std::int64_t e, std::int64_t sigma, std::int64_t b1) {
  CharNumbers c{e, sigma, b1, e - 2 + 2 * b1, 0};
  c.b2plus = (c.b2 + sigma) / 2;
  return c;
}

bool CharNumbers::consistent() const {
  return e == 2 - 2 * b1 + b2 && (b2 + sigma) % 2 == 0 && b2plus == (b2 + sigma) / 2 &&
         b1 >= 0 && b2 >= 0 && b2plus >= 0;
}

std::string Coefficient::to_string() const {
  const std::string sign = num < 0 ? "-" : "+";
  const std::string mag = std::to_string(num < 0 ? -num : num);
  if (den == 1) return sign + mag;
  return sign + mag + "/" + std::to_string(den);
}

SurgeryMove SurgeryMove::inverse() const {
  SurgeryMove inv = *this;
  std::swap(inv.removed_relations, inv.added_relations);
  inv.family_row.reset();
  return inv;
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::no:
      return "false";
    case Tristate::yes:
      return "true";
    case Tristate::unknown:
      break;
  }
  return "unknown";
}

std::string to_string(SwProfile s) {
  switch (s) {
    case SwProfile::none:
      return "none";
    case SwProfile::zk:
      return "Z_k";
    case SwProfile::mkn:
      return "M_k,n";
    case SwProfile::mkn_log:
      return "M_k,n(m)";
  }
  return "none";
}

std::string to_string(Pi1Verdict::Status s) {
  switch (s) {
    case Pi1Verdict::Status::pass:
      return "pass";
    case Pi1Verdict::Status::fail:
      return "fail";
    case Pi1Verdict::Status::unverified:
      break;
  }
  return "unverified";
}

std::vector<std::string> family_generators(int k) {
  std::vector<std::string> g{"a1", "b1", "a2", "b2"};
  for (int j = 1; j <= k; ++j) {
    g.push_back("c" + std::to_string(j));
    g.push_back("d" + std::to_string(j));
  }
  g.emplace_back("ct");
  g.push_back("d" + std::to_string(k + 1));
  return g;
}

namespace {

/// Word builder over the family generators of one k.
struct Gens {
  Presentation names;
  int k;

  explicit Gens(int kk) : names(family_generators(kk), {}), k(kk) {}

  [[nodiscard]] Word operator()(const std::string& name, std::int64_t e = 1) const {
    return names.word(name, e);
  }
  [[nodiscard]] Word c(int j, std::int64_t e = 1) const { return (*this)("c" + std::to_string(j), e); }
  [[nodiscard]] Word d(int j, std::int64_t e = 1) const { return (*this)("d" + std::to_string(j), e); }
  [[nodiscard]] Word ct(std::int64_t e = 1) const { return (*this)("ct", e); }
  [[nodiscard]] Word dk1(std::int64_t e = 1) const { return d(k + 1, e); }
};

Word conj(const Word& x, const Word& by) { return by.inverse() * x * by; }

/// Meridian words of the 2k+4 surgery tori, in schedule order.
std::vector<Word> meridians(const Gens& g) {
  const Word a1 = g("a1");
  const Word b1 = g("b1");
  const Word a2 = g("a2");
  const Word b2 = g("b2");
  std::vector<Word> out{
      commutator(b1.inverse(), g.d(1).inverse()),
      commutator(a1.inverse(), g.d(1)),
      commutator(b2.inverse(), g.d(1).inverse()),
      commutator(b2, g.c(1).inverse()),
  };
  for (int j = 2; j <= g.k; ++j) {
    out.push_back(commutator(b2.inverse(), g.d(j).inverse()));
    out.push_back(commutator(b2, g.c(j).inverse()));
  }
  out.push_back(g.ct(-1) * a1 * a2 * g.ct() * a1.inverse() * a2.inverse());
  out.push_back(commutator(a1, g.dk1(-1)));
  return out;
}

std::vector<DualPair> xk_pairs(int k) {
  std::vector<DualPair> pairs;
  for (int j = 1; j <= k; ++j) {
    const std::string J = std::to_string(j);
    pairs.push_back({"[a1×c" + J + "]", "−[b1×d" + J + "]"});
    pairs.push_back({"[a1×d" + J + "]", "[b1×c" + J + "]"});
    pairs.push_back({"[a2×c" + J + "]", "−[b2×d" + J + "]"});
    pairs.push_back({"[a2×d" + J + "]", "[b2×c" + J + "]"});
  }
  const std::string K = std::to_string(k + 1);
  pairs.push_back({"[(ã1ã2)×c̃" + K + "]", "−[b1×d" + K + "]"});
  pairs.push_back({"[a1×d" + K + "]", "[(b̃1b̃2)×c̃" + K + "]"});
  pairs.push_back({"[Σ2×{w0}]", "[{z0}×Σ" + std::to_string(2 * k + 1) + "]"});
  return pairs;
}

/// Basis surviving the full schedule with p = r = 1.
FormBasis surviving_basis(int k) {
  FormBasis f;
  for (int j = 2; j <= k; ++j) {
    const std::string J = std::to_string(j);
    f.pairs.push_back({"[a1×c" + J + "]", "−[b1×d" + J + "]"});
    f.pairs.push_back({"[a1×d" + J + "]", "[b1×c" + J + "]"});
  }
  f.pairs.push_back({"[Σ2×{w0}]", "[{z0}×Σ" + std::to_string(2 * k + 1) + "]"});
  f.pairing = hyperbolic_form(f.pairs.size());
  return f;
}

/// (2k-1) copies of <+1> + <-1>, labeled by the sphere classes.
FormBasis odd_basis(int k) {
  FormBasis f;
  std::vector<IntMatrix> blocks;
  for (int i = 1; i <= 2 * k - 1; ++i) {
    const std::string I = std::to_string(i);
    f.pairs.push_back({"[CP1]_" + I, "[-CP1]_" + I});
    blocks.push_back(IntMatrix{{1, 0}, {0, -1}});
  }
  f.pairing = IntMatrix::direct_sum(blocks);
  return f;
}

std::string model_name(const FamilyParams& p) {
  std::string s = "M_{" + std::to_string(p.k) + "," + std::to_string(p.n) + "}";
  if (!p.simply_connected_target())
    s += "(p=" + std::to_string(p.p) + ",r=" + std::to_string(p.r) + ")";
  return s;
}

}  // namespace

ManifoldModel build_Xk(int k) {
  if (k < 1) throw ParameterError("k >= 1 required (got k=" + std::to_string(k) + ")");
  const Gens g(k);
  const Word a1 = g("a1");
  const Word b1 = g("b1");
  const Word a2 = g("a2");
  const Word b2 = g("b2");
  const Word ct = g.ct();
  const Word dk = g.dk1();

  std::vector<Word> rels{
      relation(a2, conj(a1, ct)),
      relation(b2, conj(b1, ct)),
      relation(b1, conj(b2, ct)),
      commutator(b2, dk),
      commutator(a1.inverse() * b1.inverse() * a2, dk),
      commutator(a2.inverse() * b2.inverse() * a1, dk),
  };
  for (auto& w : meridians(g)) rels.push_back(std::move(w));
  rels.push_back(commutator(a1, g.c(1)));
  rels.push_back(commutator(b1, g.c(1)));
  rels.push_back(commutator(a2, g.c(1)));
  rels.push_back(commutator(a2, g.d(1)));
  rels.push_back(commutator(b1, dk));
  for (int j = 2; j <= k; ++j) {
    rels.push_back(commutator(a2, g.c(j)));
    rels.push_back(commutator(a2, g.d(j)));
  }
  for (int j = 2; j <= k; ++j) {
    rels.push_back(commutator(a1, g.c(j)));
    rels.push_back(commutator(b1, g.d(j)));
    rels.push_back(commutator(a1, g.d(j)));
    rels.push_back(commutator(b1, g.c(j)));
  }
  rels.push_back(commutator(a1, b1) * commutator(a2, b2));
  Word base_surface;
  for (int j = 1; j <= k; ++j) base_surface *= commutator(g.c(j), g.d(j));
  base_surface *= commutator(ct, dk);
  rels.push_back(base_surface);

  ManifoldModel x;
  x.name = "X_" + std::to_string(k);
  x.params = FamilyParams{k, 1, 1, 1, 1};
  x.presentation = Presentation(family_generators(k), std::move(rels));
  x.chars = CharNumbers{4 * k, 0, 2 * k + 4, 8 * k + 6, 4 * k + 3};
  FormBasis f;
  f.pairs = xk_pairs(k);
  f.pairing = hyperbolic_form(f.pairs.size());
  x.form = std::move(f);
  x.sw_profile = SwProfile::none;
  x.symplectic = Tristate::yes;  // complex surface of general type, Kähler
  return x;
}

std::vector<SurgeryMove> schedule_Mkn(const FamilyParams& params) {
  params.validate();
  const int k = params.k;
  const Gens g(k);
  const std::vector<Word> mer = meridians(g);
  std::vector<SurgeryMove> moves;
  auto add = [&](std::string torus, std::string curve, Coefficient coeff, Word power,
                 bool symplectic) {
    const auto row = static_cast<int>(moves.size());
    SurgeryMove mv;
    mv.torus_label = std::move(torus);
    mv.surgery_curve = std::move(curve);
    mv.coefficient = coeff;
    mv.removed_relations = {mer[static_cast<std::size_t>(row)]};
    mv.symplectic = symplectic;
    mv.family_row = row;
    mv.added_relations = {relation(mer[static_cast<std::size_t>(row)], power)};
    moves.push_back(std::move(mv));
  };
  add("a1' × c1'", "a1", {-1, 1}, g("a1"), true);
  add("b1' × c1''", "b1", {-1, 1}, g("b1"), true);
  add("a2' × c1'", "c1", {-1, 1}, g.c(1), true);
  // The -n row: the meridian raised to the n-th power equals d1.
  {
    SurgeryMove mv;
    mv.torus_label = "a2'' × d1'";
    mv.surgery_curve = "d1";
    mv.coefficient = {-params.n, 1};
    mv.removed_relations = {mer[kMultiplicityRow]};
    mv.added_relations = {relation(mer[kMultiplicityRow].pow(params.n), g.d(1))};
    mv.symplectic = params.n == 1;
    mv.family_row = kMultiplicityRow;
    moves.push_back(std::move(mv));
  }
  if (k >= 2) {
    add("a2' × c2'", "c2", {-1, params.p}, g.c(2, params.p), params.p >= 1);
    add("a2'' × d2'", "d2", {-1, params.r}, g.d(2, params.r), params.r >= 1);
  }
  for (int j = 3; j <= k; ++j) {
    const std::string J = std::to_string(j);
    add("a2' × c" + J + "'", "c" + J, {-1, 1}, g.c(j), true);
    add("a2'' × d" + J + "'", "d" + J, {-1, 1}, g.d(j), true);
  }
  const std::string K = std::to_string(k + 1);
  add("b1'' × d" + K + "'", "d" + K, {-1, 1}, g.dk1(), true);
  add("(b̃1b̃2) × c̃" + K + "'", "ct", {-1, 1}, g.ct(), true);
  return moves;
}

ManifoldModel apply_schedule(const ManifoldModel& base, std::span<const SurgeryMove> moves,
                             const ApplyOptions& options) {
  if (moves.empty()) return base;
  Presentation pres = base.presentation;
  bool all_luttinger = true;
  std::vector<bool> rows_seen;
  for (const auto& mv : moves) {
    for (const auto& w : mv.removed_relations) {
      auto idx = pres.find_relator(w);
      if (!idx)
        throw ScheduleMismatch("surgery " + mv.torus_label + ": relation " + pres.format(w) +
                               " = 1 is not present in " + base.name);
      pres = pres.without_relator(*idx);
    }
    for (const auto& w : mv.added_relations) pres = pres.with_relator(w);
    all_luttinger = all_luttinger && mv.symplectic;
    if (mv.family_row) {
      const auto row = static_cast<std::size_t>(*mv.family_row);
      if (rows_seen.size() <= row) rows_seen.resize(row + 1, false);
      rows_seen[row] = true;
    }
  }

  ManifoldModel out;
  out.name = base.name + "+surgery";
  out.params = base.params;
  out.presentation = std::move(pres);
  const AbelianInvariants h1 = abelian_invariants(out.presentation);
  out.chars = CharNumbers::from_euler(base.chars.e, base.chars.sigma,
                                      static_cast<std::int64_t>(h1.free_rank));
  out.symplectic = (base.symplectic == Tristate::yes && all_luttinger) ? Tristate::yes
                                                                        : Tristate::unknown;
  out.notes = base.notes;

  const auto full_rows = static_cast<std::size_t>(2 * base.params.k + 4);
  out.full_family_schedule =
      rows_seen.size() == full_rows &&
      std::all_of(rows_seen.begin(), rows_seen.end(), [](bool b) { return b; });

  if (options.certify_pi1 && h1.trivial()) {
    const auto cert = simplify_with_enumeration(out.presentation, options.tietze, options.enumeration);
    out.pi1_trivial_certified = cert.enumeration.completed_with(1);
  }
  if (out.pi1_trivial_certified && out.full_family_schedule && base.params.k >= 2)
    out.form = surviving_basis(base.params.k);
  return out;
}

ManifoldModel with_pi1_verdict(const ManifoldModel& model, const Pi1Verdict& verdict) {
  ManifoldModel out = model;
  out.pi1_trivial_certified = verdict.certifies_trivial();
  if (out.pi1_trivial_certified && out.full_family_schedule && out.params.k >= 2 &&
      out.params.m == 1)
    out.form = surviving_basis(out.params.k);
  return out;
}

ManifoldModel build_Mkn(const FamilyParams& params, const ApplyOptions& options) {
  params.validate();
  const ManifoldModel x = build_Xk(params.k);
  const auto moves = schedule_Mkn(params);
  ManifoldModel m = apply_schedule(x, moves, options);
  m.name = model_name(params);
  m.params = params;
  m.params.m = 1;
  m.sw_profile = params.claims_apply() && params.simply_connected_target() ? SwProfile::mkn
                                                                           : SwProfile::none;
  if (!params.claims_apply()) {
    m.notes.emplace_back("k=1: pi1 claims unverified");
  } else if (params.simply_connected_target() && params.n >= 2) {
    // |SW(+-K)| = n != 1 rules out a symplectic structure.
    m.symplectic = Tristate::no;
  }
  return m;
}

ManifoldModel build_Zk(int k, const ApplyOptions& options) {
  const FamilyParams params = FamilyParams::make(k, 1, 1, 1, 1);
  auto moves = schedule_Mkn(params);
  moves.erase(moves.begin() + kMultiplicityRow);
  ManifoldModel z = apply_schedule(build_Xk(k), moves, options);
  z.name = "Z_" + std::to_string(k);
  z.params = params;
  z.sw_profile = SwProfile::zk;
  return z;
}

Pi1Verdict verify_pi1(const ManifoldModel& model, const EnumerationOptions& enumeration,
                      const TietzeOptions& tietze) {
  const FamilyParams& fp = model.params;
  Pi1Verdict v;
  v.claimed = AbelianInvariants::of_cyclic_sum({BigInt(fp.p), BigInt(fp.r)});
  v.computed = abelian_invariants(model.presentation);
  v.h1_match = v.claimed == v.computed;
  if (!fp.claims_apply()) {
    v.status = Pi1Verdict::Status::unverified;
    v.note = "k=1: pi1 claims unverified";
    return v;
  }
  if (fp.p >= 1 && fp.r >= 1) {
    const auto cert = simplify_with_enumeration(model.presentation, tietze, enumeration);
    v.enumeration = cert.enumeration;
    v.simplified_generators = cert.tietze.presentation.rank();
    v.simplified_relators = cert.tietze.presentation.relators().size();
  } else {
    v.note = "infinite target group: enumeration skipped";
  }
  const bool enum_ok =
      !v.enumeration ||
      v.enumeration->completed_with(static_cast<std::size_t>(fp.p) * static_cast<std::size_t>(fp.r));
  v.status = v.h1_match && enum_ok ? Pi1Verdict::Status::pass : Pi1Verdict::Status::fail;
  if (v.enumeration && !v.enumeration->completed()) v.note = "coset limit exceeded";
  return v;
}

Presentation complement_presentation(const ManifoldModel& model) {
  const FamilyParams& fp = model.params;
  if (fp.k < 2 || !fp.simply_connected_target())
    throw ContractError("complement_presentation requires k >= 2 and p = r = 1");
  const Presentation& p = model.presentation;
  const Word meridian = commutator(p.word("b1"), p.word("d2"));
  auto idx = p.find_relator(meridian);
  if (!idx) throw ScheduleMismatch("relation [b1,d2] = 1 is not present in " + model.name);
  return p.without_relator(*idx);
}

ComplementVerdict verify_complement(const ManifoldModel& model,
                                    const EnumerationOptions& enumeration,
                                    const TietzeOptions& tietze) {
  ComplementVerdict v;
  v.enumeration =
      simplify_with_enumeration(complement_presentation(model), tietze, enumeration).enumeration;
  v.pass = v.enumeration.completed_with(1);
  return v;
}

ManifoldModel apply_log_transform(const ManifoldModel& model, int m, const Pi1Verdict& pi1,
                                  const ComplementVerdict& complement) {
  if (m < 1) throw ParameterError("m >= 1 required (got m=" + std::to_string(m) + ")");
  if (m == 1) return model;
  if (!model.params.claims_apply() || !model.params.simply_connected_target())
    throw Refusal("logarithmic transform needs k >= 2 and p = r = 1");
  if (!pi1.certifies_trivial())
    throw Refusal("logarithmic transform refused: pi1 of " + model.name +
                  " is not certified trivial");
  if (!complement.pass)
    throw Refusal("logarithmic transform refused: complement of the a1' × c2' torus in " +
                  model.name + " is not certified simply connected");

  const Presentation comp = complement_presentation(model);
  ManifoldModel out = model;
  out.name = model.name + "(" + std::to_string(m) + ")";
  out.params.m = m;
  // Meridian^m = c2 on the new torus; the group is a quotient of the
  // trivial complement group either way.
  out.presentation = comp.with_relator(
      relation(commutator(comp.word("b1"), comp.word("d2")).pow(m), comp.word("c2")));
  out.chars = CharNumbers::from_euler(model.chars.e, model.chars.sigma,
                                      static_cast<std::int64_t>(
                                          abelian_invariants(out.presentation).free_rank));
  out.pi1_trivial_certified = true;
  out.sw_profile = SwProfile::mkn_log;
  out.form = spin_parity(model.params.k, m) == SpinType::spin ? surviving_basis(model.params.k)
                                                              : odd_basis(model.params.k);
  out.symplectic = model.params.n == 1 ? Tristate::yes : Tristate::no;
  return out;
}

}  // namespace exotic
