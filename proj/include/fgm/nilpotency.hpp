#pragma once

// Lower central series, nilpotency class, and the quantitative Zassenhaus
// bound nil(G_eps) <= ln(4 delta) / ln(4 eps) for eps < 1/4.

#include <cmath>
#include <optional>
#include <vector>

#include "fgm/errors.hpp"
#include "fgm/group.hpp"
#include "fgm/length.hpp"

namespace fgm {

struct CentralSeries {
  std::vector<SubgroupHandle> terms;  // gamma_0 = G first
  bool stabilized = false;            // stopped at a repeated non-trivial term

  bool reaches_trivial() const { return !terms.empty() && terms.back().is_trivial(); }
};

// gamma_0 = G, gamma_{n+1} = [gamma_n, G]; stops at the trivial subgroup or
// the first repeated term (which is kept, so stabilization is visible).
inline CentralSeries lower_central_series(const GroupPtr& g) {
  CentralSeries s;
  const SubgroupHandle whole = whole_group_subgroup(g);
  s.terms.push_back(whole);
  while (!s.terms.back().is_trivial()) {
    SubgroupHandle next = subgroup_commutator(s.terms.back(), whole);
    const bool repeated = next.members == s.terms.back().members;
    s.terms.push_back(std::move(next));
    if (repeated) {
      s.stabilized = true;
      break;
    }
  }
  return s;
}

// Least n with gamma_n trivial; empty if the series stabilizes above it.
inline std::optional<int> nilpotency_class(const GroupPtr& g) {
  const CentralSeries s = lower_central_series(g);
  if (!s.reaches_trivial()) return std::nullopt;
  return static_cast<int>(s.terms.size()) - 1;
}

struct ZassenhausReport {
  Scalar epsilon;
  std::optional<Scalar> delta;  // empty for the trivial group
  elem_t g_eps_order = 0;
  std::optional<int> nil_g_eps;  // empty = not nilpotent (never expected)
  double bound = 0.0;            // ln(4 delta) / ln(4 eps), for display
  bool exact_used = false;
  bool delta_large_case = false;  // delta >= 1/4, so G_eps must be trivial
  bool ok = false;
};

namespace detail {

// nil <= ln(4 delta)/ln(4 eps)  <=>  (4 eps)^nil >= 4 delta  (0 < 4 eps < 1).
// Exact when both sides are rational; overflow falls back to the float form.
inline bool zassenhaus_bound_holds(int nil, const Scalar& eps, const Scalar& dlt, bool* exact_used,
                                   double* bound_out) {
  const double b = std::log(4.0 * dlt.value) / std::log(4.0 * eps.value);
  if (bound_out) *bound_out = b;
  if (eps.is_exact() && dlt.is_exact()) {
    try {
      const Rational four(4, 1);
      Rational pow(1, 1);
      const Rational base = four * *eps.exact;
      for (int i = 0; i < nil; ++i) pow = pow * base;
      if (exact_used) *exact_used = true;
      return pow >= four * *dlt.exact;
    } catch (const std::overflow_error&) {
      if (exact_used) *exact_used = false;
    }
  }
  return static_cast<double>(nil) <= b + 1e-12;
}

}  // namespace detail

inline ZassenhausReport zassenhaus_check(const LengthFunction& l, const Scalar& eps) {
  l.require_contractive();
  if (!scalar_less(eps, Scalar::rational(Rational(1, 4))))
    throw EpsilonOutOfRange("zassenhaus check needs eps < 1/4");
  ZassenhausReport r;
  r.epsilon = eps;
  if (l.group().order() <= 1) {
    r.g_eps_order = 1;
    r.nil_g_eps = 0;
    r.ok = true;
    return r;
  }
  r.delta = delta(l);
  const SubgroupHandle geps = epsilon_subgroup(l, eps);
  r.g_eps_order = geps.order();
  r.nil_g_eps = nilpotency_class(restrict_to_subgroup(geps));
  if (scalar_geq(*r.delta, Scalar::rational(Rational(1, 4)))) {
    // No element besides e has length <= eps < 1/4 <= delta.
    r.delta_large_case = true;
    r.ok = geps.is_trivial() && r.nil_g_eps == 0;
    return r;
  }
  if (!r.nil_g_eps) {
    r.ok = false;  // would contradict the bound
    detail::zassenhaus_bound_holds(0, eps, *r.delta, &r.exact_used, &r.bound);
    return r;
  }
  if (*r.nil_g_eps == 0) {
    detail::zassenhaus_bound_holds(0, eps, *r.delta, &r.exact_used, &r.bound);
    r.ok = true;  // trivial G_eps satisfies any non-negative bound
    return r;
  }
  r.ok = detail::zassenhaus_bound_holds(*r.nil_g_eps, eps, *r.delta, &r.exact_used, &r.bound);
  return r;
}

struct CorollaryReport {
  Scalar eta_value;
  bool applicable = false;  // eta < 1/4
  std::optional<int> nil;
  double bound = 0.0;
  bool exact_used = false;
  bool ok = false;
};

// If eta(G) < 1/4 then nil(G) <= ln(4 delta)/ln(4 eta).
inline CorollaryReport corollary_check(const LengthFunction& l) {
  l.require_contractive();
  CorollaryReport r;
  if (l.group().order() <= 1) {
    r.eta_value = eta(l);
    r.applicable = true;
    r.nil = 0;
    r.ok = true;
    return r;
  }
  r.eta_value = eta(l);
  r.applicable = scalar_less(r.eta_value, Scalar::rational(Rational(1, 4)));
  if (!r.applicable) {
    r.ok = true;
    return r;
  }
  r.nil = nilpotency_class(l.group_ptr());
  const Scalar d = delta(l);
  if (!r.nil) {
    r.ok = false;
    detail::zassenhaus_bound_holds(0, r.eta_value, d, &r.exact_used, &r.bound);
    return r;
  }
  if (*r.nil == 0) {
    detail::zassenhaus_bound_holds(0, r.eta_value, d, &r.exact_used, &r.bound);
    r.ok = true;
    return r;
  }
  r.ok = detail::zassenhaus_bound_holds(*r.nil, r.eta_value, d, &r.exact_used, &r.bound);
  return r;
}

}  // namespace fgm
