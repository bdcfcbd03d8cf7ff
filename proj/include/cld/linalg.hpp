#pragma once
#include <Eigen/Dense>

namespace cld {

struct HermitianEigen {
  Eigen::VectorXd values;     // ascending
  Eigen::MatrixXcd vectors;   // columns
};
// A is symmetrized as (A + A*)/2 before the solve.
HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& A);
// Only the eigenpairs with lo < value <= hi.
HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& A, double lo, double hi);

struct Svd {
  Eigen::VectorXd values;  // descending
  Eigen::MatrixXcd U;
  Eigen::MatrixXcd V;      // A = U diag(values) V*
};
Svd singular_value_decomposition(const Eigen::MatrixXcd& A);

}  // namespace cld
