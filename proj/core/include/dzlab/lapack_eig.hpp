#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace dzlab {

struct EigensolveError : std::runtime_error {
  explicit EigensolveError(const std::string& what) : std::runtime_error(what) {}
};

// Eigenvalues of a dense complex matrix (LAPACK zgeev, eigenvalues only).
// The input is destroyed. Throws EigensolveError if the QR iteration fails.
std::vector<std::complex<double>> eigenvalues_inplace(Eigen::MatrixXcd& a);

}  // namespace dzlab
