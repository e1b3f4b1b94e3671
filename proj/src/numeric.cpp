#include "cone_closure/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cone {

namespace {

double max_offdiag(const SymMat& a) {
  double m = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m = std::max(m, std::fabs(a.at(i, j)));
  return m;
}

}  // namespace

EigenDecomposition jacobi_eigen(SymMat a, double tol_scale, unsigned max_sweeps) {
  const std::size_t n = a.dim();
  SymMat v(n);
  for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

  const double thresh = tol_scale * static_cast<double>(n);
  unsigned sweeps = 0;
  while (n > 1 && max_offdiag(a) > thresh && sweeps < max_sweeps) {
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (std::fabs(apq) <= thresh) continue;
        const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a.at(p, p);
        const double aqq = a.at(q, q);
        a.at(p, p) = app - t * apq;
        a.at(q, q) = aqq + t * apq;
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a.at(k, p);
          const double akq = a.at(k, q);
          a.set_sym(k, p, akp - s * (akq + tau * akp));
          a.set_sym(k, q, akq + s * (akp - tau * akq));
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v.at(k, p);
          const double vkq = v.at(k, q);
          v.at(k, p) = vkp - s * (vkq + tau * vkp);
          v.at(k, q) = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }

  std::vector<std::size_t> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(),
            [&](std::size_t i, std::size_t j) { return a.at(i, i) < a.at(j, j); });

  EigenDecomposition e;
  e.sweeps = sweeps;
  e.values.resize(n);
  e.vectors = SymMat(n);
  for (std::size_t k = 0; k < n; ++k) {
    e.values[k] = a.at(ord[k], ord[k]);
    for (std::size_t i = 0; i < n; ++i) e.vectors.at(i, k) = v.at(i, ord[k]);
  }
  return e;
}

SymMat psd_project(const SymMat& a, double tol_scale) {
  const std::size_t n = a.dim();
  const EigenDecomposition e = jacobi_eigen(a, tol_scale);
  SymMat b(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = e.values[k];
    if (w <= 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double wi = w * e.vectors.at(i, k);
      for (std::size_t j = i; j < n; ++j) {
        const double x = b.at(i, j) + wi * e.vectors.at(j, k);
        b.at(i, j) = x;
        b.at(j, i) = x;
      }
    }
  }
  return b;
}

double min_eigenvalue(const SymMat& a, double tol_scale) {
  if (a.dim() == 0) return 0.0;
  return jacobi_eigen(a, tol_scale).values.front();
}

}  // namespace cone
