#include "cld/linalg.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cld/errors.hpp"

namespace cld {

HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& A) {
  return hermitian_eigen(A, -std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity());
}

HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& A, double lo, double hi) {
  if (A.rows() != A.cols()) fail(Status::invalid_argument, "eigen solve needs a square matrix");
  HermitianEigen r;
  const lapack_int n = static_cast<lapack_int>(A.rows());
  if (n == 0) return r;
  Eigen::MatrixXcd work = (A + A.adjoint()) / 2.0;
  const bool all = std::isinf(lo) && std::isinf(hi);
  // MRRR driver; the divide-and-conquer zheevd of the system LAPACK loses
  // orthogonality at moderate sizes.
  lapack_int found = 0;
  Eigen::VectorXd w(n);
  Eigen::MatrixXcd z(n, n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', all ? 'A' : 'V', 'U', n, work.data(), n, lo, hi, 0, 0,
                     0.0, &found, w.data(), z.data(), n, support.data());
  if (info != 0) fail(Status::not_converged, "zheevr failed, info=" + std::to_string(info));
  r.values = w.head(found);
  r.vectors = z.leftCols(found);
  return r;
}

Svd singular_value_decomposition(const Eigen::MatrixXcd& A) {
  Svd r;
  const lapack_int m = static_cast<lapack_int>(A.rows()), n = static_cast<lapack_int>(A.cols());
  const lapack_int k = std::min(m, n);
  Eigen::MatrixXcd work = A;
  r.values.resize(k);
  r.U.resize(m, k);
  Eigen::MatrixXcd vt(k, n);
  if (k == 0) {
    r.V.resize(n, 0);
    return r;
  }
  // zgesvd rather than zgesdd: the divide-and-conquer driver in the system LAPACK
  // returns wrong vectors above a few hundred columns.
  Eigen::VectorXd superb(std::max<lapack_int>(k - 1, 1));
  const lapack_int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, work.data(), m,
                                         r.values.data(), r.U.data(), m, vt.data(), k,
                                         superb.data());
  if (info != 0) fail(Status::not_converged, "zgesvd failed, info=" + std::to_string(info));
  r.V = vt.adjoint();
  return r;
}

}  // namespace cld
