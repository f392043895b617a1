#include <Eigen/Dense>

#include "doctest.h"
#include "topicrank/errors.hpp"
#include "topicrank/spectral.hpp"
#include "topicrank/synth.hpp"
#include "topicrank/weights.hpp"

using namespace topicrank;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

SparseMatrixD to_sparse(const MatrixXd& m) {
  SparseMatrixD s(m.rows(), m.cols());
  std::vector<Eigen::Triplet<double>> trips;
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0.0) trips.emplace_back(i, j, m(i, j));
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

SparseMatrixD frequency_of(const MatrixXd& A, const MatrixXd& W, long N, Rng& rng) {
  auto dtm = sample_counts(A, W, N, rng);
  return frequency_matrix(dtm);
}

}  // namespace

TEST_SUITE_BEGIN("weights");

TEST_CASE("pure document with exact system recovers the unit vector") {
  Rng rng(3);
  MatrixXd A = random_topic_matrix(20, 3, 2, 5.0, rng);
  SparseMatrixD D = to_sparse(A.col(1));
  auto w = estimate_weights_ridge(A, D, 0.0);
  CHECK(w.W_hat.col(0).isApprox(Eigen::Vector3d(0, 1, 0), 1e-10));
  CHECK(w.dominant[0] == 1);
}

TEST_CASE("ridge hand example: orthonormal design, lambda 0.3") {
  // A'A = I and A'd = (0.6, 0.4): raw solution (0.6, 0.4)/1.3, then
  // renormalization recovers (0.6, 0.4).
  MatrixXd A = MatrixXd::Zero(3, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 1.0;
  VectorXd d(3);
  d << 0.6, 0.4, 0.0;
  auto w = estimate_weights_ridge(A, to_sparse(d), 0.3);
  VectorXd raw = Eigen::Vector2d(0.6, 0.4) / 1.3;
  CHECK(raw[0] == doctest::Approx(0.46153846));
  CHECK(raw[1] == doctest::Approx(0.30769231));
  CHECK(w.W_hat(0, 0) == doctest::Approx(0.6));
  CHECK(w.W_hat(1, 0) == doctest::Approx(0.4));
}

TEST_CASE("noiseless corpus with the true A recovers W") {
  Rng rng(9);
  MatrixXd A = random_topic_matrix(40, 3, 2, 10.0, rng);
  MatrixXd W = random_weights(60, 3, 1.0, 0.25, rng);
  SparseMatrixD D = to_sparse(A * W);
  auto est = estimate_weights_ridge(A, D, 0.0);
  CHECK((est.W_hat - W).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("weighted least squares with constant weights equals plain least squares") {
  Rng rng(11);
  MatrixXd A = random_topic_matrix(30, 3, 2, 8.0, rng);
  MatrixXd W = random_weights(20, 3, 1.0, 0.2, rng);
  MatrixXd noise(30, 20);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 20; ++j) noise(i, j) = 0.001 * rng.uniform();
  SparseMatrixD D = to_sparse(A * W + noise);

  auto wls = estimate_weights_wls(A, D, VectorXd::Constant(30, 0.25));
  auto ls = estimate_weights_ridge(A, D, 0.0);
  CHECK((wls.W_hat - ls.W_hat).cwiseAbs().maxCoeff() < 1e-9);

  SparseMatrixD pure = to_sparse(A.col(2));
  VectorXd M = VectorXd::LinSpaced(30, 0.1, 2.0);
  auto w = estimate_weights_wls(A, pure, M);
  CHECK(w.W_hat.col(0).isApprox(Eigen::Vector3d(0, 0, 1), 1e-10));
}

TEST_CASE("singular systems are reported") {
  MatrixXd A(4, 2);
  A.col(0) << 0.25, 0.25, 0.25, 0.25;
  A.col(1) = A.col(0);  // duplicate topic
  SparseMatrixD D = to_sparse(A.col(0));
  CHECK_THROWS_AS(estimate_weights_ridge(A, D, 0.0), Error);
  CHECK_THROWS_AS(estimate_weights_wls(A, D, VectorXd::Constant(4, 1.0)), Error);
  // ridge regularization repairs it
  auto w = estimate_weights_ridge(A, D, 0.3);
  CHECK(w.W_hat.col(0).sum() == doctest::Approx(1.0));
}

TEST_CASE("all-zero documents get the uniform vector and a flag") {
  Rng rng(13);
  MatrixXd A = random_topic_matrix(10, 2, 1, 3.0, rng);
  MatrixXd Dm = MatrixXd::Zero(10, 3);
  Dm.col(0) = A.col(0);
  Dm.col(2) = A.col(1);
  auto w = estimate_weights_ridge(A, to_sparse(Dm), 0.3);
  CHECK(w.uniform_docs == std::vector<int>{1});
  CHECK(w.W_hat.col(1).isApprox(Eigen::Vector2d(0.5, 0.5)));
}

TEST_CASE("columns stay on the simplex and clipping preserves a nonnegative argmax") {
  Rng rng(17);
  MatrixXd A = random_topic_matrix(50, 4, 2, 20.0, rng);
  MatrixXd W = random_weights(100, 4, 0.7, 0.1, rng);
  SparseMatrixD D = frequency_of(A, W, 200, rng);

  for (double lambda : {0.0, 0.3, 1.0}) {
    auto est = estimate_weights_ridge(A, D, lambda);
    for (int i = 0; i < est.W_hat.cols(); ++i) {
      CHECK(est.W_hat.col(i).sum() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(est.W_hat.col(i).minCoeff() >= 0.0);
    }
  }

  // raw nonnegative solutions keep their argmax through clip+renormalize
  MatrixXd G = A.transpose() * A + 0.3 * MatrixXd::Identity(4, 4);
  auto est = estimate_weights_ridge(A, D, 0.3);
  MatrixXd raw = G.ldlt().solve(A.transpose() * MatrixXd(D));
  for (int i = 0; i < raw.cols(); ++i) {
    if (raw.col(i).minCoeff() >= 0.0) {
      int raw_arg = 0, est_arg = 0;
      raw.col(i).maxCoeff(&raw_arg);
      est.W_hat.col(i).maxCoeff(&est_arg);
      CHECK(raw_arg == est_arg);
    }
  }
}

TEST_CASE("an all-clipped column is an error, not a silent zero") {
  // A violating column-stochasticity can push the whole ridge solution
  // negative; the clip would leave nothing to renormalize.
  MatrixXd A(2, 1);
  A << 1.0, -2.0;
  SparseMatrixD D(2, 1);
  D.insert(1, 0) = 1.0;
  try {
    estimate_weights_ridge(A, D, 0.3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::AllZeroSolution);
    CHECK(std::string(e.what()).find('0') != std::string::npos);
  }
}

TEST_CASE("weighted solver beats unweighted under frequency heterogeneity (recorded)") {
  // Comparison harness, not a hard bound: the gap depends on the draw.
  double wls_total = 0.0, ridge_total = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    MatrixXd A = random_topic_matrix(60, 3, 3, 100.0, rng);
    MatrixXd W = random_weights(150, 3, 1.0, 0.2, rng);
    auto dtm = sample_counts(A, W, 200, rng);
    auto D = frequency_matrix(dtm);
    VectorXd M = normalization_matrix(D);
    wls_total += w_error(estimate_weights_wls(A, D, M).W_hat, W).error;
    ridge_total += w_error(estimate_weights_ridge(A, D, 0.0).W_hat, W).error;
  }
  MESSAGE("mean w_error over 5 seeds: wls=", wls_total / 5, " ridge0=", ridge_total / 5);
  CHECK(wls_total > 0.0);  // recorded comparison; no ordering asserted
}

TEST_CASE("dominant_topic takes the smallest index on ties") {
  MatrixXd W(3, 3);
  W.col(0) << 0.2, 0.5, 0.3;
  W.col(1) << 0.5, 0.5, 0.0;
  W.col(2) << 1.0, 0.0, 0.0;
  CHECK(dominant_topic(W) == std::vector<int>{1, 0, 0});
}

TEST_SUITE_END();
