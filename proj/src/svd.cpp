#include "svd_impl.hpp"

#include <algorithm>
#include <cmath>

#include "topicrank/errors.hpp"

namespace topicrank::detail {

using Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;

TruncatedSvd truncated_left_svd(const SpMat& B, int k, int dense_threshold) {
  const long p = B.rows(), n = B.cols();
  const long mindim = std::min(p, n);
  if (k < 1 || k > mindim) fail(Err::InvalidArgument, "svd: k out of range");

  TruncatedSvd out;
  if (mindim <= dense_threshold) {
    MatrixXd dense(B);
    Eigen::BDCSVD<MatrixXd> svd(dense, Eigen::ComputeThinU);
    out.U = svd.matrixU().leftCols(k);
    out.S = svd.singularValues().head(k);
    return out;
  }

  if (p <= n) {
    SpMat Bt = B.transpose();
    MatrixXd G = MatrixXd(SpMat(B * Bt));
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(G);
    out.U.resize(p, k);
    out.S.resize(k);
    for (int j = 0; j < k; ++j) {
      const long src = p - 1 - j;  // eigenvalues come out ascending
      out.U.col(j) = es.eigenvectors().col(src);
      out.S[j] = std::sqrt(std::max(0.0, es.eigenvalues()[src]));
    }
    return out;
  }

  SpMat Bt = B.transpose();
  MatrixXd G = MatrixXd(SpMat(Bt * B));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(G);
  MatrixXd V(n, k);
  out.S.resize(k);
  for (int j = 0; j < k; ++j) {
    const long src = n - 1 - j;
    V.col(j) = es.eigenvectors().col(src);
    out.S[j] = std::sqrt(std::max(0.0, es.eigenvalues()[src]));
  }
  MatrixXd U = B * V;
  for (int j = 0; j < k; ++j) {
    if (out.S[j] > 0.0)
      U.col(j) /= out.S[j];
    else
      U.col(j).setZero();
  }
  // U inherits roundoff amplified by 1/sigma; re-orthonormalize without
  // losing the original orientation.
  Eigen::HouseholderQR<MatrixXd> qr(U);
  MatrixXd Q = qr.householderQ() * MatrixXd::Identity(p, k);
  for (int j = 0; j < k; ++j)
    if (Q.col(j).dot(U.col(j)) < 0.0) Q.col(j) = -Q.col(j);
  out.U = Q;
  return out;
}

}  // namespace topicrank::detail
