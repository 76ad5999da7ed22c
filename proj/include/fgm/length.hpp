#pragma once

// Invariant length functions on finite groups: axiom and contractivity
// verification, the standard constructions (discrete, Hamming, operator-norm,
// clamping), quotient metrics, and the invariants delta, eta, G_eps.
//
// Values are kept as doubles plus, when the input was rational, exact
// fractions. Every inequality check follows one rule: a violation is
// lhs > rhs + tol, where exact operands with tol == 0 compare exactly.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgm/errors.hpp"
#include "fgm/group.hpp"
#include "fgm/rational.hpp"

namespace fgm {

struct Scalar {
  double value = 0.0;
  std::optional<Rational> exact;

  static Scalar rational(const Rational& r) { return Scalar{r.to_double(), r}; }
  static Scalar real(double v) { return Scalar{v, std::nullopt}; }
  bool is_exact() const { return exact.has_value(); }
};

inline Scalar scalar_add(const Scalar& a, const Scalar& b) {
  if (a.exact && b.exact) {
    try {
      return Scalar::rational(*a.exact + *b.exact);
    } catch (const std::overflow_error&) {
    }
  }
  return Scalar::real(a.value + b.value);
}

inline Scalar scalar_sub(const Scalar& a, const Scalar& b) {
  if (a.exact && b.exact) {
    try {
      return Scalar::rational(*a.exact - *b.exact);
    } catch (const std::overflow_error&) {
    }
  }
  return Scalar::real(a.value - b.value);
}

inline Scalar scalar_mul(const Scalar& a, const Scalar& b) {
  if (a.exact && b.exact) {
    try {
      return Scalar::rational(*a.exact * *b.exact);
    } catch (const std::overflow_error&) {
    }
  }
  return Scalar::real(a.value * b.value);
}

// Strict order, no tolerance. Used for classification thresholds.
inline bool scalar_less(const Scalar& a, const Scalar& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  return a.value < b.value;
}

inline bool scalar_geq(const Scalar& a, const Scalar& b) { return !scalar_less(a, b); }

// The one inequality rule: violation iff lhs > rhs + tol (exact when both
// sides are exact and tol is zero).
inline bool scalar_violates(const Scalar& lhs, const Scalar& rhs, double tol) {
  if (lhs.exact && rhs.exact && tol == 0.0) return *lhs.exact > *rhs.exact;
  return lhs.value > rhs.value + tol;
}

inline bool scalar_eq(const Scalar& a, const Scalar& b, double tol) {
  if (a.exact && b.exact && tol == 0.0) return *a.exact == *b.exact;
  return std::abs(a.value - b.value) <= tol;
}

inline Scalar scalar_min(const Scalar& a, const Scalar& b) { return scalar_less(b, a) ? b : a; }
inline Scalar scalar_max(const Scalar& a, const Scalar& b) { return scalar_less(a, b) ? b : a; }

enum class CheckState { Unknown, Pass, Fail };

enum class WitnessKind { Axiom, Contractive, Lemma };

struct ViolationWitness {
  WitnessKind kind = WitnessKind::Axiom;
  std::string rule;  // "subadditivity", "symmetry", "invariance", ...
  std::vector<elem_t> elements;
  Scalar lhs;
  Scalar rhs;
};

class LengthFunction {
 public:
  LengthFunction(GroupPtr group, std::string name, std::vector<double> values, double tol = 1e-9)
      : group_(std::move(group)), name_(std::move(name)), values_(std::move(values)), tol_(tol) {
    validate();
  }

  LengthFunction(GroupPtr group, std::string name, std::vector<Rational> exact, double tol = 0.0)
      : group_(std::move(group)), name_(std::move(name)), exact_(std::move(exact)), tol_(tol) {
    values_.reserve(exact_.size());
    for (const auto& r : exact_) values_.push_back(r.to_double());
    validate();
  }

  const GroupPtr& group_ptr() const { return group_; }
  const FiniteGroup& group() const { return *group_; }
  const std::string& name() const { return name_; }
  double tol() const { return tol_; }
  bool is_exact() const { return !exact_.empty(); }

  Scalar value(elem_t g) const {
    if (exact_.empty()) return Scalar::real(values_[g]);
    return Scalar{values_[g], exact_[g]};
  }

  CheckState axioms_state() const { return axioms_; }
  CheckState contractive_state() const { return contractive_; }
  const std::optional<ViolationWitness>& axioms_witness() const { return axioms_witness_; }
  const std::optional<ViolationWitness>& contractive_witness() const {
    return contractive_witness_;
  }

  void record_axioms(CheckState s, std::optional<ViolationWitness> w) {
    axioms_ = s;
    axioms_witness_ = std::move(w);
  }
  void record_contractive(CheckState s, std::optional<ViolationWitness> w) {
    contractive_ = s;
    contractive_witness_ = std::move(w);
  }

  void require_axioms() const {
    if (axioms_ != CheckState::Pass)
      throw AxiomsNotVerified("length function '" + name_ + "' has unverified or failing axioms");
  }
  void require_contractive() const {
    if (contractive_ != CheckState::Pass)
      throw NotContractive("length function '" + name_ + "' is not verified commutator-contractive");
  }

  // Same values under a different comparison tolerance; verification resets.
  LengthFunction with_tol(double tol) const {
    if (!exact_.empty()) return LengthFunction(group_, name_, exact_, tol);
    return LengthFunction(group_, name_, values_, tol);
  }

 private:
  void validate() const {
    if (!group_) throw Error("length function without group");
    if (tol_ < 0.0) throw Error("comparison tolerance must be nonnegative");
    if (values_.size() != group_->order())
      throw SizeMismatch("length array size " + std::to_string(values_.size()) +
                         " does not match group order " + std::to_string(group_->order()));
    for (const double v : values_)
      if (!(v >= -tol_) || !(v <= 1.0 + tol_)) throw Error("length value outside [0, 1]");
  }

  GroupPtr group_;
  std::string name_;
  std::vector<double> values_;
  std::vector<Rational> exact_;
  double tol_ = 0.0;
  CheckState axioms_ = CheckState::Unknown;
  CheckState contractive_ = CheckState::Unknown;
  std::optional<ViolationWitness> axioms_witness_;
  std::optional<ViolationWitness> contractive_witness_;
};

// d(g, h) = l(g h^{-1})
inline Scalar dist(const LengthFunction& l, elem_t g, elem_t h) {
  const auto& grp = l.group();
  return l.value(grp.mul(g, grp.inv(h)));
}

// Exhaustive check of the length axioms in a deterministic order: identity,
// positivity, inversion symmetry, conjugation invariance, subadditivity.
// Records the result on l and returns the first witness on failure.
inline std::optional<ViolationWitness> verify_length_axioms(LengthFunction& l) {
  const auto& g = l.group();
  const elem_t n = g.order();
  const elem_t e = g.identity();
  const double tol = l.tol();
  const auto fail = [&](ViolationWitness w) {
    l.record_axioms(CheckState::Fail, w);
    return std::optional<ViolationWitness>(std::move(w));
  };

  if (scalar_violates(l.value(e), Scalar::real(0.0), tol))
    return fail({WitnessKind::Axiom, "identity", {e}, l.value(e), Scalar::real(0.0)});
  for (elem_t x = 0; x < n; ++x) {
    if (x == e) continue;
    const bool positive = l.value(x).is_exact() && tol == 0.0
                              ? *l.value(x).exact > Rational(0, 1)
                              : l.value(x).value > tol;
    if (!positive)
      return fail({WitnessKind::Axiom, "positivity", {x}, l.value(x), Scalar::real(0.0)});
  }
  for (elem_t x = 0; x < n; ++x)
    if (!scalar_eq(l.value(x), l.value(g.inv(x)), tol))
      return fail({WitnessKind::Axiom,
                   "symmetry",
                   {x, g.inv(x)},
                   scalar_max(l.value(x), l.value(g.inv(x))),
                   scalar_min(l.value(x), l.value(g.inv(x)))});
  for (elem_t x = 0; x < n; ++x)
    for (elem_t h = 0; h < n; ++h) {
      const elem_t y = g.conjugate(h, x);
      if (!scalar_eq(l.value(x), l.value(y), tol))
        return fail({WitnessKind::Axiom,
                     "invariance",
                     {x, h, y},
                     scalar_max(l.value(x), l.value(y)),
                     scalar_min(l.value(x), l.value(y))});
    }
  for (elem_t x = 0; x < n; ++x)
    for (elem_t y = 0; y < n; ++y) {
      const elem_t xy = g.mul(x, y);
      const Scalar rhs = scalar_add(l.value(x), l.value(y));
      if (scalar_violates(l.value(xy), rhs, tol))
        return fail({WitnessKind::Axiom, "subadditivity", {x, y, xy}, l.value(xy), rhs});
    }
  l.record_axioms(CheckState::Pass, std::nullopt);
  return std::nullopt;
}

// l([g,h]) <= 4 l(g) l(h) over all ordered pairs.
inline std::optional<ViolationWitness> verify_contractive(LengthFunction& l) {
  l.require_axioms();
  const auto& g = l.group();
  const elem_t n = g.order();
  const Scalar four = Scalar::rational(Rational(4, 1));
  for (elem_t x = 0; x < n; ++x)
    for (elem_t y = 0; y < n; ++y) {
      const elem_t c = g.commutator(x, y);
      const Scalar rhs = scalar_mul(four, scalar_mul(l.value(x), l.value(y)));
      if (scalar_violates(l.value(c), rhs, l.tol())) {
        ViolationWitness w{WitnessKind::Contractive, "contractive", {x, y, c}, l.value(c), rhs};
        l.record_contractive(CheckState::Fail, w);
        return w;
      }
    }
  l.record_contractive(CheckState::Pass, std::nullopt);
  return std::nullopt;
}

inline LengthFunction discrete_length(const GroupPtr& g) {
  std::vector<Rational> v(g->order(), Rational(1, 1));
  v[g->identity()] = Rational(0, 1);
  return LengthFunction(g, "discrete", std::move(v), 0.0);
}

// Normalized Hamming length: moved points / degree. Needs the permutation
// attachment.
inline LengthFunction hamming_length(const GroupPtr& g) {
  if (!g->has_permutations())
    throw NoPermutationAttachment("hamming length needs a permutation group");
  const auto deg = static_cast<std::int64_t>(g->degree());
  if (deg == 0) throw NoPermutationAttachment("hamming length needs degree >= 1");
  std::vector<Rational> v;
  v.reserve(g->order());
  for (elem_t i = 0; i < g->order(); ++i)
    v.emplace_back(static_cast<std::int64_t>(g->permutation(i).moved_points()), deg);
  return LengthFunction(g, "hamming", std::move(v), 0.0);
}

// l(g) = ||1 - U_g|| / 2, computed as max |1 - lambda| / 2 over eigenvalues
// of U_g; exact for unitary matrices and stabler than singular values of the
// difference.
inline LengthFunction unitary_length(const GroupPtr& g, double tol = 1e-9) {
  if (!g->has_matrices()) throw NoMatrixAttachment("unitary length needs a matrix attachment");
  const int dim = g->dimension();
  std::vector<double> v(g->order(), 0.0);
  for (elem_t i = 0; i < g->order(); ++i) {
    if (i == g->identity()) continue;
    const CMatrix& m = g->matrix(i);
    Eigen::MatrixXcd u(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) u(r, c) = m.at(r, c);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw Error("eigenvalue solver failed");
    double worst = 0.0;
    for (int k = 0; k < dim; ++k)
      worst = std::max(worst, std::abs(std::complex<double>(1.0, 0.0) - solver.eigenvalues()[k]));
    v[i] = std::clamp(worst / 2.0, 0.0, 1.0);
  }
  return LengthFunction(g, "unitary", std::move(v), tol);
}

// l'(g) = max(l(g), c) for g != e. Any c in [1/2, 1] makes the result
// commutator-contractive since 4c^2 >= 1.
inline LengthFunction clamp_contractive(const LengthFunction& l, const Scalar& c) {
  l.require_axioms();
  if (scalar_less(c, Scalar::rational(Rational(1, 2))) ||
      scalar_less(Scalar::rational(Rational(1, 1)), c))
    throw InvalidClamp("clamp constant must lie in [1/2, 1]");
  const auto& g = l.group();
  const std::string name = "clamped-" + l.name();
  LengthFunction out = [&] {
    if (l.is_exact() && c.is_exact()) {
      std::vector<Rational> v;
      v.reserve(g.order());
      for (elem_t i = 0; i < g.order(); ++i)
        v.push_back(i == g.identity() ? Rational(0, 1)
                                      : std::max(*l.value(i).exact, *c.exact));
      return LengthFunction(l.group_ptr(), name, std::move(v), l.tol());
    }
    std::vector<double> v;
    v.reserve(g.order());
    for (elem_t i = 0; i < g.order(); ++i)
      v.push_back(i == g.identity() ? 0.0 : std::max(l.value(i).value, c.value));
    return LengthFunction(l.group_ptr(), name, std::move(v), l.tol());
  }();
  verify_length_axioms(out);
  if (out.axioms_state() == CheckState::Pass) verify_contractive(out);
  return out;
}

// Quotient metric: per-coset minimum. The result is verified (axioms always;
// contractivity whenever the source metric is verified contractive).
inline std::pair<QuotientResult, LengthFunction> quotient_length(const LengthFunction& l,
                                                                 const SubgroupHandle& h) {
  l.require_axioms();
  QuotientResult q = quotient(h);
  const elem_t m = q.quotient->order();
  const auto& g = l.group();
  LengthFunction out = [&] {
    if (l.is_exact()) {
      std::vector<Rational> v(m, Rational(1, 1));
      std::vector<bool> seen(m, false);
      for (elem_t x = 0; x < g.order(); ++x) {
        const elem_t c = q.projection[x];
        const Rational r = *l.value(x).exact;
        if (!seen[c] || r < v[c]) {
          v[c] = r;
          seen[c] = true;
        }
      }
      return LengthFunction(q.quotient, l.name() + "/" + std::to_string(h.order()), std::move(v),
                            l.tol());
    }
    std::vector<double> v(m, 2.0);
    for (elem_t x = 0; x < g.order(); ++x)
      v[q.projection[x]] = std::min(v[q.projection[x]], l.value(x).value);
    return LengthFunction(q.quotient, l.name() + "/" + std::to_string(h.order()), std::move(v),
                          l.tol());
  }();
  verify_length_axioms(out);
  if (l.contractive_state() == CheckState::Pass && out.axioms_state() == CheckState::Pass)
    verify_contractive(out);
  return {std::move(q), std::move(out)};
}

// Restriction to a subgroup, as a standalone metric group.
inline std::pair<GroupPtr, LengthFunction> restrict_length(const LengthFunction& l,
                                                           const SubgroupHandle& h) {
  l.require_axioms();
  GroupPtr sub = restrict_to_subgroup(h);
  LengthFunction out = [&] {
    if (l.is_exact()) {
      std::vector<Rational> v;
      v.reserve(h.members.size());
      for (const elem_t x : h.members) v.push_back(*l.value(x).exact);
      return LengthFunction(sub, l.name() + "|" + std::to_string(h.order()), std::move(v), l.tol());
    }
    std::vector<double> v;
    v.reserve(h.members.size());
    for (const elem_t x : h.members) v.push_back(l.value(x).value);
    return LengthFunction(sub, l.name() + "|" + std::to_string(h.order()), std::move(v), l.tol());
  }();
  verify_length_axioms(out);
  if (l.contractive_state() == CheckState::Pass && out.axioms_state() == CheckState::Pass)
    verify_contractive(out);
  return {std::move(sub), std::move(out)};
}

// delta(G) = min length over non-identity elements.
inline Scalar delta(const LengthFunction& l) {
  l.require_axioms();
  const auto& g = l.group();
  if (g.order() <= 1) throw TrivialGroup("delta undefined on the trivial group");
  std::optional<Scalar> best;
  for (elem_t x = 0; x < g.order(); ++x) {
    if (x == g.identity()) continue;
    best = best ? scalar_min(*best, l.value(x)) : l.value(x);
  }
  return *best;
}

// G_eps: subgroup generated by everything of length <= eps. Conjugation
// invariance makes it normal; the handle's flag is still computed honestly.
inline SubgroupHandle epsilon_subgroup(const LengthFunction& l, const Scalar& eps) {
  l.require_axioms();
  const auto& g = l.group();
  std::vector<elem_t> seed;
  for (elem_t x = 0; x < g.order(); ++x)
    if (!scalar_violates(l.value(x), eps, l.tol())) seed.push_back(x);
  return generated_subgroup(l.group_ptr(), seed);
}

// Distinct attained length values, ascending.
inline std::vector<Scalar> attained_values(const LengthFunction& l) {
  std::vector<Scalar> vals;
  for (elem_t x = 0; x < l.group().order(); ++x) vals.push_back(l.value(x));
  std::sort(vals.begin(), vals.end(), scalar_less);
  std::vector<Scalar> out;
  for (const auto& v : vals)
    if (out.empty() || scalar_less(out.back(), v)) out.push_back(v);
  return out;
}

// eta(G) = least attained value v with G_v = G. G_eps is piecewise constant
// in eps with breakpoints at attained values, so scanning them suffices.
inline Scalar eta(const LengthFunction& l) {
  l.require_axioms();
  for (const auto& v : attained_values(l))
    if (epsilon_subgroup(l, v).is_whole_group()) return v;
  throw Error("eta: no attained value generates the group");  // unreachable: G_1 = G
}

struct MetricInvariants {
  std::optional<Scalar> delta;  // empty for the trivial group
  Scalar eta;
  bool discrete = false;
};

inline MetricInvariants metric_invariants(const LengthFunction& l) {
  MetricInvariants mi;
  if (l.group().order() > 1) mi.delta = delta(l);
  mi.eta = eta(l);
  mi.discrete = mi.delta && scalar_eq(*mi.delta, Scalar::rational(Rational(1, 1)), l.tol());
  return mi;
}

// d([g,h],[g,k]) <= 4 d(h,k) l(g), exhaustive over all triples.
inline std::optional<ViolationWitness> check_distance_lemma(const LengthFunction& l) {
  l.require_contractive();
  const auto& g = l.group();
  const elem_t n = g.order();
  const Scalar four = Scalar::rational(Rational(4, 1));
  for (elem_t x = 0; x < n; ++x)
    for (elem_t h = 0; h < n; ++h)
      for (elem_t k = 0; k < n; ++k) {
        const elem_t ch = g.commutator(x, h);
        const elem_t ck = g.commutator(x, k);
        const Scalar lhs = dist(l, ch, ck);
        const Scalar rhs = scalar_mul(four, scalar_mul(dist(l, h, k), l.value(x)));
        if (scalar_violates(lhs, rhs, l.tol()))
          return ViolationWitness{WitnessKind::Lemma, "distance-lemma", {x, h, k}, lhs, rhs};
      }
  return std::nullopt;
}

// The quotient/subgroup statements about delta and eta at one threshold:
//   (a) delta(G/G_eps) > eps, or G_eps = G
//   (b) eta(G/G_eps) = eta(G) whenever eta(G) > eps
//   (c) eta(G_eps) <= eps
//   (d) delta(G_eps) = delta(G) whenever delta(G) <= eps
struct Section2Report {
  Scalar epsilon;
  elem_t g_eps_order = 0;
  bool g_eps_is_whole = false;
  bool g_eps_normal = false;
  std::optional<Scalar> delta_quotient;
  bool delta_quotient_ok = true;
  Scalar eta_full;
  std::optional<Scalar> eta_quotient;
  bool eta_lemma_applicable = false;
  bool eta_quotient_ok = true;
  Scalar eta_sub;
  bool eta_sub_ok = true;
  std::optional<Scalar> delta_full;
  std::optional<Scalar> delta_sub;
  bool delta_remark_applicable = false;
  bool delta_sub_ok = true;

  bool all_ok() const {
    return g_eps_normal && delta_quotient_ok && eta_quotient_ok && eta_sub_ok && delta_sub_ok;
  }
};

// Builds a length function from per-element label assignments. If every
// supplied value is exact the metric is exact with tol 0; otherwise float
// with tol 1e-9 (overridable).
inline LengthFunction length_from_values(const GroupPtr& g,
                                         const std::vector<std::pair<std::string, Scalar>>& entries,
                                         std::string name, double tol = -1.0) {
  const elem_t n = g->order();
  std::vector<std::optional<Scalar>> assigned(n);
  for (const auto& [label, s] : entries) {
    const auto id = g->element_by_label(label);
    if (!id) throw ParseError("unknown element label '" + label + "'");
    if (assigned[*id]) throw ParseError("duplicate value for element '" + label + "'");
    assigned[*id] = s;
  }
  if (!assigned[g->identity()]) assigned[g->identity()] = Scalar::rational(Rational(0, 1));
  bool all_exact = true;
  for (elem_t i = 0; i < n; ++i) {
    if (!assigned[i])
      throw ParseError("missing length value for element '" + g->label(i) + "'");
    all_exact &= assigned[i]->is_exact();
  }
  if (all_exact) {
    std::vector<Rational> v;
    v.reserve(n);
    for (elem_t i = 0; i < n; ++i) v.push_back(*assigned[i]->exact);
    return LengthFunction(g, std::move(name), std::move(v), tol < 0 ? 0.0 : tol);
  }
  std::vector<double> v;
  v.reserve(n);
  for (elem_t i = 0; i < n; ++i) v.push_back(assigned[i]->value);
  return LengthFunction(g, std::move(name), std::move(v), tol < 0 ? 1e-9 : tol);
}

// Shorthand: one value per conjugacy class, keyed by any member's label.
// The identity class defaults to 0.
inline LengthFunction length_from_class_values(
    const GroupPtr& g, const std::vector<std::pair<std::string, Scalar>>& class_entries,
    std::string name, double tol = -1.0,
    const std::vector<std::pair<std::string, Scalar>>& overrides = {}) {
  const auto classes = conjugacy_classes(*g);
  std::vector<std::size_t> class_of(g->order());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const elem_t m : classes[c]) class_of[m] = c;
  std::vector<std::optional<Scalar>> per_class(classes.size());
  for (const auto& [label, s] : class_entries) {
    const auto id = g->element_by_label(label);
    if (!id) throw ParseError("unknown element label '" + label + "'");
    const std::size_t c = class_of[*id];
    if (per_class[c]) throw ParseError("duplicate class value via '" + label + "'");
    per_class[c] = s;
  }
  for (const auto& kv : overrides)
    if (!g->element_by_label(kv.first))
      throw ParseError("unknown element label '" + kv.first + "'");
  std::vector<std::pair<std::string, Scalar>> entries;
  for (elem_t i = 0; i < g->order(); ++i) {
    std::optional<Scalar> v = per_class[class_of[i]];
    for (const auto& [label, s] : overrides)
      if (g->element_by_label(label) == std::optional<elem_t>(i)) v = s;
    if (v)
      entries.emplace_back(g->label(i), *v);
    else if (i != g->identity())
      throw ParseError("missing class value for element '" + g->label(i) + "'");
  }
  return length_from_values(g, entries, std::move(name), tol);
}

inline Section2Report check_section2_lemmas(const LengthFunction& l, const Scalar& eps) {
  l.require_axioms();
  Section2Report r;
  r.epsilon = eps;
  const SubgroupHandle geps = epsilon_subgroup(l, eps);
  r.g_eps_order = geps.order();
  r.g_eps_is_whole = geps.is_whole_group();
  r.g_eps_normal = geps.is_normal;
  r.eta_full = eta(l);
  if (l.group().order() > 1) r.delta_full = delta(l);

  if (!r.g_eps_is_whole) {
    auto [q, ql] = quotient_length(l, geps);
    if (ql.axioms_state() != CheckState::Pass) throw Error("quotient metric failed axioms");
    r.delta_quotient = delta(ql);  // quotient nontrivial here
    r.delta_quotient_ok = scalar_violates(*r.delta_quotient, eps, 0.0);
    r.eta_lemma_applicable = scalar_less(eps, r.eta_full);
    if (r.eta_lemma_applicable) {
      r.eta_quotient = eta(ql);
      r.eta_quotient_ok = scalar_eq(*r.eta_quotient, r.eta_full, l.tol());
    }
  }

  auto [sub, sl] = restrict_length(l, geps);
  if (sl.axioms_state() != CheckState::Pass) throw Error("restricted metric failed axioms");
  r.eta_sub = eta(sl);
  r.eta_sub_ok = !scalar_violates(r.eta_sub, eps, l.tol());
  if (r.delta_full && !scalar_violates(*r.delta_full, eps, l.tol())) {
    r.delta_remark_applicable = true;
    r.delta_sub = delta(sl);  // the delta-attaining element lies in G_eps
    r.delta_sub_ok = scalar_eq(*r.delta_sub, *r.delta_full, l.tol());
  }
  return r;
}

}  // namespace fgm
