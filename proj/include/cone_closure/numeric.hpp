#pragma once

#include <cstddef>
#include <vector>

namespace cone {

// Dense symmetric matrix with double entries, full row-major storage.
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t dim() const { return n_; }
  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set_sym(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  SymMat vectors;              // column k pairs with values[k]
  unsigned sweeps = 0;
};

// Cyclic Jacobi; iterates until every off-diagonal entry is at most
// tol_scale * dim (or max_sweeps is hit, which in practice means the input
// had NaNs).
EigenDecomposition jacobi_eigen(SymMat a, double tol_scale = 1e-12, unsigned max_sweeps = 80);

// Frobenius-nearest positive semidefinite matrix: negative eigenvalues
// clipped to zero.
SymMat psd_project(const SymMat& a, double tol_scale = 1e-12);

double min_eigenvalue(const SymMat& a, double tol_scale = 1e-12);

}  // namespace cone
