#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace fgm {

// Dense square complex matrix, row-major. Just enough arithmetic for group
// closure; eigenvalue work is delegated to Eigen where lengths are computed.
struct CMatrix {
  int dim = 0;
  std::vector<std::complex<double>> a;

  CMatrix() = default;
  explicit CMatrix(int d) : dim(d), a(static_cast<std::size_t>(d) * d) {}

  static CMatrix identity(int d) {
    CMatrix m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }

  std::complex<double>& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  const std::complex<double>& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * dim + j];
  }

  CMatrix mul(const CMatrix& rhs) const {
    CMatrix r(dim);
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) {
        const auto v = at(i, k);
        if (v == std::complex<double>{}) continue;
        for (int j = 0; j < dim; ++j) r.at(i, j) += v * rhs.at(k, j);
      }
    return r;
  }

  CMatrix adjoint() const {
    CMatrix r(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
  }

  double max_abs_diff(const CMatrix& rhs) const {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - rhs.a[i]));
    return m;
  }

  double unitarity_defect() const { return adjoint().mul(*this).max_abs_diff(identity(dim)); }
};

}  // namespace fgm
