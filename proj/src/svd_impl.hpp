#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace topicrank::detail {

struct TruncatedSvd {
  Eigen::MatrixXd U;   // left singular vectors, one column per value
  Eigen::VectorXd S;   // singular values, nonincreasing
};

// Top-k left singular pairs of a sparse matrix.
//
// Small problems (min dimension <= dense_threshold) go through a dense
// BDCSVD, which is exact to machine precision and serves as its own
// reference. Larger problems form the Gram matrix on the smaller side and
// eigendecompose it; singular values then carry sqrt(eps)-level absolute
// error near zero, which is irrelevant for the leading part of the
// spectrum used here.
TruncatedSvd truncated_left_svd(const Eigen::SparseMatrix<double>& B, int k,
                                int dense_threshold = 512);

}  // namespace topicrank::detail
