#include "exotic/sw_invariants.hpp"

#include <algorithm>

#include "exotic/errors.hpp"
#include "exotic/manifold.hpp"

namespace exotic {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// Smallest even integer >= x.
std::int64_t even_at_least(std::int64_t x) { return x % 2 == 0 ? x : x + 1; }
/// Largest even integer <= x.
std::int64_t even_at_most(std::int64_t x) { return x % 2 == 0 ? x : x - 1; }

}  // namespace

bool BasicClassSet::closed_under_negation() const {
  for (const auto& e : entries) {
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const BasicClass& o) { return o.cls == -e.cls; });
    if (it == entries.end() || it->value != e.value) return false;
  }
  return true;
}

std::vector<std::int64_t> BasicClassSet::value_multiset() const {
  std::vector<std::int64_t> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.value);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<ClassVector> enumerate_Zk_candidates(int k) {
  if (k < 2) throw ParameterError("k >= 2 required (got k=" + std::to_string(k) + ")");
  // Adjunction bounds and the moduli-dimension bound for Z_k:
  // e = 4k, sigma = 0, so 2st >= 2e + 3 sigma = 8k.
  const std::int64_t s_bound = 2 * static_cast<std::int64_t>(k);
  const std::int64_t t_bound = 2;
  const std::int64_t e = 4 * static_cast<std::int64_t>(k);
  const std::int64_t sigma = 0;
  const std::int64_t need = 2 * e + 3 * sigma;  // lower bound on L^2 = 2st

  // For fixed even t != 0, 2st >= need is a half-line in s; intersect it with
  // the even integers of [-s_bound, s_bound]. t = 0 gives L^2 = 0 < need.
  std::vector<ClassVector> out;
  for (std::int64_t t = -t_bound; t <= t_bound; t += 2) {
    if (t == 0) {
      if (need <= 0)
        for (std::int64_t s = -s_bound; s <= s_bound; s += 2) out.push_back({s, 0, 0});
      continue;
    }
    std::int64_t lo = -s_bound;
    std::int64_t hi = s_bound;
    if (t > 0)
      lo = std::max(lo, ceil_div(need, 2 * t));
    else
      hi = std::min(hi, floor_div(need, 2 * t));
    for (std::int64_t s = even_at_least(lo); s <= even_at_most(hi); s += 2) out.push_back({s, t, 0});
  }
  std::sort(out.begin(), out.end());
  return out;
}

BasicClassSet basic_classes(int k, int n, int m) {
  if (k < 2) throw ParameterError("k >= 2 required (got k=" + std::to_string(k) + ")");
  if (n < 1) throw ParameterError("n >= 1 required (got n=" + std::to_string(n) + ")");
  if (m < 1) throw ParameterError("m >= 1 required (got m=" + std::to_string(m) + ")");
  BasicClassSet set;
  set.k = k;
  set.n = n;
  set.m = m;
  const ClassVector canonical{2 * static_cast<std::int64_t>(k), 2, 0};
  for (const ClassVector base : {canonical, -canonical})
    for (std::int64_t j = -(m - 1); j <= m - 1; j += 2)
      set.entries.push_back({{base.s, base.t, base.j + j}, n});
  std::sort(set.entries.begin(), set.entries.end());
  return set;
}

std::string to_string(SpinType s) { return s == SpinType::spin ? "spin" : "nonspin"; }

SpinType spin_parity(int k, int m) {
  if (k < 2) throw ParameterError("k >= 2 required (got k=" + std::to_string(k) + ")");
  if (m < 1) throw ParameterError("m >= 1 required (got m=" + std::to_string(m) + ")");
  // w2 = (m-1) T mod 2 and T is primitive.
  return (m - 1) % 2 == 0 ? SpinType::spin : SpinType::nonspin;
}

bool characteristic_parity_consistent(const BasicClassSet& classes) {
  const std::int64_t w2_j = (classes.m - 1) % 2;
  return std::all_of(classes.entries.begin(), classes.entries.end(), [&](const BasicClass& b) {
    return b.cls.s % 2 == 0 && b.cls.t % 2 == 0 && ((b.cls.j % 2) + 2) % 2 == w2_j;
  });
}

std::string to_string(SymplecticTag s) {
  return s == SymplecticTag::symplectic ? "symplectic" : "nonsymplectic";
}

SymplecticTag symplectic_tag(int n) {
  if (n < 1) throw ParameterError("n >= 1 required (got n=" + std::to_string(n) + ")");
  return n == 1 ? SymplecticTag::symplectic : SymplecticTag::nonsymplectic;
}

std::string homeomorphism_type_name(int k, SpinType spin) {
  const std::string count = std::to_string(2 * k - 1);
  return spin == SpinType::spin ? count + "(S²×S²)" : count + "(CP²#CP²bar)";
}

HomeomorphismVerdict classify_homeomorphism(const ManifoldModel& model) {
  HomeomorphismVerdict v;
  const int k = model.params.k;
  if (!model.params.claims_apply()) {
    v.reason = "k=1: claims unverified";
    return v;
  }
  if (!model.pi1_trivial_certified) {
    v.reason = "not certified simply connected";
    return v;
  }
  if (model.chars.sigma != 0) {
    v.reason = "signature " + std::to_string(model.chars.sigma) + " != 0";
    return v;
  }
  if (!model.form) {
    v.reason = "intersection form not determined";
    return v;
  }
  const FormType form = classify_form(model.form->pairing);
  const auto rank = static_cast<std::int64_t>(form.rank);
  if (rank != model.chars.b2 || rank != 4 * static_cast<std::int64_t>(k) - 2 || rank % 2 != 0) {
    v.reason = "form rank " + std::to_string(rank) + " does not match b2 = 4k-2";
    return v;
  }
  if (!form.unimodular || form.signature != 0) {
    v.reason = "form is not unimodular of signature 0";
    return v;
  }
  const SpinType spin = spin_parity(k, model.params.m);
  const bool even = form.parity == Parity::even;
  if (even != (spin == SpinType::spin)) {
    v.reason = "form parity disagrees with w2";
    return v;
  }
  v.classified = true;
  v.type = homeomorphism_type_name(k, spin);
  return v;
}

IrreducibilityVerdict irreducibility_check(const BasicClassSet& classes, int k) {
  IrreducibilityVerdict v;
  for (const auto& a : classes.entries)
    for (const auto& b : classes.entries) v.squares.insert((a.cls - b.cls).square());
  const std::int64_t allowed = 32 * static_cast<std::int64_t>(k);
  v.pass = !classes.entries.empty() &&
           std::all_of(v.squares.begin(), v.squares.end(),
                       [&](std::int64_t s) { return s == 0 || s == allowed; });
  return v;
}

std::string to_string(SmoothVerdict::Kind k) {
  return k == SmoothVerdict::Kind::nondiffeomorphic ? "nondiffeomorphic" : "indistinguishable";
}

SmoothVerdict distinguish(const BasicClassSet& a, const BasicClassSet& b) {
  const std::string ta = homeomorphism_type_name(a.k, spin_parity(a.k, a.m));
  const std::string tb = homeomorphism_type_name(b.k, spin_parity(b.k, b.m));
  if (ta != tb) throw ContractError("distinguish: homeomorphism types differ (" + ta + " vs " + tb + ")");
  SmoothVerdict v;
  if (a.entries.size() != b.entries.size()) {
    v.kind = SmoothVerdict::Kind::nondiffeomorphic;
    v.witness = "basic class counts " + std::to_string(a.entries.size()) + " vs " +
                std::to_string(b.entries.size());
    return v;
  }
  const auto va = a.value_multiset();
  const auto vb = b.value_multiset();
  if (va != vb) {
    v.kind = SmoothVerdict::Kind::nondiffeomorphic;
    const auto mis = std::mismatch(va.begin(), va.end(), vb.begin());
    v.witness = "|SW| values " + std::to_string(*mis.first) + " vs " + std::to_string(*mis.second);
    return v;
  }
  v.kind = SmoothVerdict::Kind::indistinguishable;
  return v;
}

}  // namespace exotic
