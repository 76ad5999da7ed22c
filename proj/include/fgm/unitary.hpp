#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fgm/cmatrix.hpp"
#include "fgm/errors.hpp"
#include "fgm/group.hpp"

namespace fgm {

namespace detail {

// Entrywise dedup against the elements found so far. A product closer than
// tol/10 to an existing element is that element; one inside (tol/10, tol] is
// neither clearly equal nor clearly distinct and aborts the build instead of
// silently corrupting the Cayley table.
inline std::pair<elem_t, bool> match_or_append(std::vector<CMatrix>& elems, const CMatrix& p,
                                               double tol, elem_t cap) {
  double best = -1.0;
  elem_t best_id = 0;
  for (elem_t i = 0; i < elems.size(); ++i) {
    const double d = elems[i].max_abs_diff(p);
    if (best < 0 || d < best) {
      best = d;
      best_id = i;
    }
  }
  if (best >= 0 && best <= tol / 10) return {best_id, false};
  if (best >= 0 && best <= tol)
    throw AmbiguousDeduplication("product within [" + std::to_string(tol / 10) + ", " +
                                 std::to_string(tol) + "] of element " + std::to_string(best_id));
  if (elems.size() >= cap) throw ClosureExceedsCap("closure exceeds cap " + std::to_string(cap));
  elems.push_back(p);
  return {static_cast<elem_t>(elems.size() - 1), true};
}

inline elem_t find_element(const std::vector<CMatrix>& elems, const CMatrix& p, double tol,
                           const char* what) {
  double best = -1.0;
  elem_t best_id = 0;
  for (elem_t i = 0; i < elems.size(); ++i) {
    const double d = elems[i].max_abs_diff(p);
    if (best < 0 || d < best) {
      best = d;
      best_id = i;
    }
  }
  if (best < 0 || best > tol) throw Error(std::string("unitary closure not closed under ") + what);
  if (best > tol / 10)
    throw AmbiguousDeduplication("product within [" + std::to_string(tol / 10) + ", " +
                                 std::to_string(tol) + "] of element " + std::to_string(best_id));
  return best_id;
}

}  // namespace detail

// Breadth-first closure over matrix products, mirroring the permutation
// builder's element ordering. The abstract group uses the exact integer
// tables; the matrices ride along for the operator-norm length.
inline GroupPtr build_from_unitary_matrices(const std::vector<CMatrix>& generators,
                                            std::string name = {}, double tol = 1e-9,
                                            elem_t cap = kDefaultClosureCap) {
  const int dim = generators.empty() ? 1 : generators[0].dim;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].dim != dim) throw NotUnitary("generator dimension mismatch");
    const double defect = generators[i].unitarity_defect();
    if (defect > tol)
      throw NotUnitary("generator " + std::to_string(i) + " is not unitary (defect " +
                       std::to_string(defect) + ")");
  }

  std::vector<CMatrix> elems;
  detail::match_or_append(elems, CMatrix::identity(dim), tol, cap);
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& g : generators) {
      const CMatrix prod = elems[head].mul(g);
      detail::match_or_append(elems, prod, tol, cap);
    }

  const elem_t n = static_cast<elem_t>(elems.size());
  FiniteGroup::Data d;
  d.order = n;
  d.identity = 0;
  d.mul.resize(std::size_t(n) * n);
  d.inv.resize(n);
  for (elem_t a = 0; a < n; ++a) {
    for (elem_t b = 0; b < n; ++b)
      d.mul[std::size_t(a) * n + b] =
          detail::find_element(elems, elems[a].mul(elems[b]), tol, "multiplication");
    d.inv[a] = detail::find_element(elems, elems[a].adjoint(), tol, "inversion");
  }
  d.labels.reserve(n);
  d.labels.push_back("e");
  for (elem_t i = 1; i < n; ++i) d.labels.push_back("u" + std::to_string(i));
  d.name = std::move(name);
  d.source = GroupSource::Unitary;
  d.matrices = std::move(elems);
  d.generator_matrices = generators;
  return FiniteGroup::make(std::move(d));
}

}  // namespace fgm
