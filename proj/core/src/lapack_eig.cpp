#include "dzlab/lapack_eig.hpp"

#include <lapacke.h>

#include <mutex>
#include <string>

extern "C" void openblas_set_num_threads(int);

namespace dzlab {

std::vector<std::complex<double>> eigenvalues_inplace(Eigen::MatrixXcd& a) {
  // BLAS-level threading is disabled once; parallelism lives at the
  // sample level where it is deterministic.
  static std::once_flag once;
  std::call_once(once, [] { openblas_set_num_threads(1); });

  const int n = static_cast<int>(a.rows());
  if (n == 0 || a.cols() != n) throw EigensolveError("eigenvalues: matrix not square");
  std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
  int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n,
      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw EigensolveError("zgeev failed, info=" + std::to_string(info));
  }
  return w;
}

}  // namespace dzlab
