#pragma once

// Built-in groups: trivial, cyclic:n (n <= 64), dihedral:n (2n <= 64),
// s3..s6, a4, a5, q8, plus the metric factories that apply to each.

#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include "fgm/errors.hpp"
#include "fgm/group.hpp"
#include "fgm/length.hpp"
#include "fgm/unitary.hpp"

namespace fgm {

inline GroupPtr with_labels(const GroupPtr& g, std::vector<std::string> labels) {
  const elem_t n = g->order();
  if (labels.size() != n) throw SizeMismatch("label list does not match group order");
  FiniteGroup::Data d;
  d.order = n;
  d.mul.resize(std::size_t(n) * n);
  d.inv.resize(n);
  for (elem_t a = 0; a < n; ++a) {
    for (elem_t b = 0; b < n; ++b) d.mul[std::size_t(a) * n + b] = g->mul(a, b);
    d.inv[a] = g->inv(a);
  }
  d.identity = g->identity();
  d.labels = std::move(labels);
  d.name = g->name();
  d.source = g->source();
  if (g->has_permutations())
    for (elem_t i = 0; i < n; ++i) d.perms.push_back(g->permutation(i));
  if (g->has_matrices())
    for (elem_t i = 0; i < n; ++i) d.matrices.push_back(g->matrix(i));
  d.generator_strings = g->generator_strings();
  d.generator_matrices = g->generator_matrices();
  return FiniteGroup::make(std::move(d));
}

namespace detail {

inline Permutation cycle_perm(std::size_t degree, const std::vector<std::uint32_t>& cycle) {
  std::vector<std::uint32_t> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<std::uint32_t>(i);
  for (std::size_t k = 0; k < cycle.size(); ++k) img[cycle[k]] = cycle[(k + 1) % cycle.size()];
  return Permutation::from_images(std::move(img));
}

inline GroupPtr make_symmetric(int n, std::string name) {
  std::vector<std::uint32_t> full(n);
  for (int i = 0; i < n; ++i) full[i] = static_cast<std::uint32_t>(i);
  return FiniteGroup::from_permutations(
      {cycle_perm(n, {0, 1}), cycle_perm(n, full)}, std::move(name));
}

inline GroupPtr make_q8() {
  using cd = std::complex<double>;
  const cd I(0.0, 1.0);
  CMatrix gi(2), gj(2);
  gi.at(0, 0) = I;
  gi.at(1, 1) = -I;
  gj.at(0, 1) = 1.0;
  gj.at(1, 0) = -1.0;
  GroupPtr g = build_from_unitary_matrices({gi, gj}, "q8");
  if (g->order() != 8) throw Error("q8 construction produced order " + std::to_string(g->order()));
  const CMatrix gk = gi.mul(gj);
  const auto neg = [](const CMatrix& m) {
    CMatrix r(m.dim);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = -m.a[i];
    return r;
  };
  const std::vector<std::pair<std::string, CMatrix>> units = {
      {"1", CMatrix::identity(2)}, {"-1", neg(CMatrix::identity(2))}, {"i", gi}, {"-i", neg(gi)},
      {"j", gj}, {"-j", neg(gj)}, {"k", gk}, {"-k", neg(gk)}};
  std::vector<std::string> labels(8);
  for (elem_t e = 0; e < 8; ++e) {
    bool found = false;
    for (const auto& [name, m] : units)
      if (g->matrix(e).max_abs_diff(m) <= 1e-9) {
        labels[e] = name;
        found = true;
        break;
      }
    if (!found) throw Error("q8 element did not match a quaternion unit");
  }
  return with_labels(g, std::move(labels));
}

inline int parse_catalog_param(const std::string& name, std::size_t colon) {
  const std::string tail = name.substr(colon + 1);
  if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("bad catalog parameter in '" + name + "'");
  return std::atoi(tail.c_str());
}

}  // namespace detail

inline GroupPtr catalog_group(const std::string& name) {
  if (name == "trivial") return FiniteGroup::from_permutations({}, "trivial");
  if (name.rfind("cyclic:", 0) == 0) {
    const int n = detail::parse_catalog_param(name, 6);
    if (n < 1 || n > 64) throw ParseError("cyclic:n needs 1 <= n <= 64, got " + name);
    std::vector<std::uint32_t> full(n);
    for (int i = 0; i < n; ++i) full[i] = static_cast<std::uint32_t>(i);
    return FiniteGroup::from_permutations({detail::cycle_perm(n, full)}, name);
  }
  if (name.rfind("dihedral:", 0) == 0) {
    const int n = detail::parse_catalog_param(name, 8);
    if (n < 1 || n > 32) throw ParseError("dihedral:n needs 1 <= n <= 32 (order 2n <= 64), got " + name);
    if (n == 1) return FiniteGroup::from_permutations({detail::cycle_perm(2, {0, 1})}, name);
    if (n == 2)
      return FiniteGroup::from_permutations(
          {detail::cycle_perm(4, {0, 1}), detail::cycle_perm(4, {2, 3})}, name);
    std::vector<std::uint32_t> rot(n);
    for (int i = 0; i < n; ++i) rot[i] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> refl(n);
    for (int i = 0; i < n; ++i) refl[i] = static_cast<std::uint32_t>((n - i) % n);
    return FiniteGroup::from_permutations(
        {detail::cycle_perm(n, rot), Permutation::from_images(std::move(refl))}, name);
  }
  if (name == "s3") return detail::make_symmetric(3, name);
  if (name == "s4") return detail::make_symmetric(4, name);
  if (name == "s5") return detail::make_symmetric(5, name);
  if (name == "s6") return detail::make_symmetric(6, name);
  if (name == "a4")
    return FiniteGroup::from_permutations(
        {detail::cycle_perm(4, {0, 1, 2}), detail::cycle_perm(4, {1, 2, 3})}, name);
  if (name == "a5")
    return FiniteGroup::from_permutations(
        {detail::cycle_perm(5, {0, 1, 2}), detail::cycle_perm(5, {2, 3, 4})}, name);
  if (name == "q8") return detail::make_q8();
  throw ParseError("unknown catalog group '" + name + "'");
}

inline std::vector<std::string> catalog_listing() {
  return {"trivial", "cyclic:n (1 <= n <= 64)", "dihedral:n (1 <= n <= 32, order 2n)",
          "s3", "s4", "s5", "s6", "a4", "a5", "q8"};
}

inline bool has_quaternion_labels(const FiniteGroup& g) {
  return g.order() == 8 && g.element_by_label("-1") && g.element_by_label("i") &&
         g.element_by_label("j") && g.element_by_label("k");
}

// The exact tight metric on q8: e -> 0, -1 -> 4/25, the six axis elements
// -> 1/5. Contractivity is tight at [i, j] = -1.
inline LengthFunction q8_exact_metric(const GroupPtr& g) {
  if (!has_quaternion_labels(*g))
    throw ParseError("metric 'q8-exact' needs the q8 catalog labels");
  return length_from_class_values(g,
                                  {{"-1", Scalar::rational(Rational(4, 25))},
                                   {"i", Scalar::rational(Rational(1, 5))},
                                   {"j", Scalar::rational(Rational(1, 5))},
                                   {"k", Scalar::rational(Rational(1, 5))}},
                                  "q8-exact");
}

// Metric source names that make sense for this group.
inline std::vector<std::string> applicable_metrics(const FiniteGroup& g) {
  std::vector<std::string> out = {"discrete"};
  if (g.has_permutations() && g.degree() >= 1) {
    out.push_back("hamming");
    out.push_back("clamped-hamming");
  }
  if (g.has_matrices()) out.push_back("unitary");
  if (has_quaternion_labels(g)) out.push_back("q8-exact");
  return out;
}

struct CatalogEntry {
  std::string name;
  GroupPtr group;
  std::vector<std::string> metrics;
};

inline CatalogEntry catalog_entry(const std::string& name) {
  CatalogEntry e;
  e.name = name;
  e.group = catalog_group(name);
  e.metrics = applicable_metrics(*e.group);
  return e;
}

}  // namespace fgm
