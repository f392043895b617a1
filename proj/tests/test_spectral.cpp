#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "topicrank/errors.hpp"
#include "topicrank/spectral.hpp"
#include "topicrank/synth.hpp"

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

// Noiseless frequency matrix D = A W from the generators.
struct NoiselessInstance {
  MatrixXd A;
  MatrixXd W;
  SparseMatrixD D;
};

NoiselessInstance noiseless(int p, int n, int K, std::uint64_t seed, int anchors = 3) {
  Rng rng(seed);
  NoiselessInstance inst;
  inst.A = random_topic_matrix(p, K, anchors, 20.0, rng);
  inst.W = random_weights(n, K, 1.0, 0.2, rng);
  inst.D = to_sparse(inst.A * inst.W);
  return inst;
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("normalization_matrix is the vector of row means") {
  MatrixXd D1(2, 2), D2(2, 2), D3(2, 2);
  D1 << 0.5, 0.5, 0.5, 0.5;
  D2 << 1, 0, 0, 1;
  D3 << 0.2, 0.4, 0.8, 0.6;
  CHECK(normalization_matrix(to_sparse(D1)).isApprox(VectorXd::Constant(2, 0.5)));
  CHECK(normalization_matrix(to_sparse(D2)).isApprox(VectorXd::Constant(2, 0.5)));
  VectorXd expected(2);
  expected << 0.3, 0.7;
  CHECK(normalization_matrix(to_sparse(D3)).isApprox(expected));

  MatrixXd Dz(2, 2);
  Dz << 1, 1, 0, 0;
  try {
    normalization_matrix(to_sparse(Dz));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::ZeroRow);
  }
}

TEST_CASE("score_embed matches a dense SVD oracle on both code paths") {
  Rng rng(21);
  MatrixXd dense(50, 200);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 200; ++j) dense(i, j) = 0.05 + rng.uniform();
  for (int j = 0; j < 200; ++j) dense.col(j) /= dense.col(j).sum();
  SparseMatrixD D = to_sparse(dense);

  VectorXd M = normalization_matrix(D);
  MatrixXd B = M.array().rsqrt().matrix().asDiagonal() * dense;
  Eigen::JacobiSVD<MatrixXd> oracle(B, Eigen::ComputeThinU);

  for (int threshold : {512, 1}) {  // dense BDCSVD path, then the Gram path
    auto emb = score_embed(D, 4, threshold);
    CHECK((emb.xi.transpose() * emb.xi - MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
    for (int k = 0; k < 4; ++k)
      CHECK(emb.singular_values[k] ==
            doctest::Approx(oracle.singularValues()[k]).epsilon(1e-8));
    CHECK(emb.xi.col(0).minCoeff() > 0.0);
    // singular values nonincreasing
    for (int k = 1; k < 4; ++k) CHECK(emb.singular_values[k] <= emb.singular_values[k - 1]);
    // R is the entrywise ratio against the leading vector
    for (int k = 1; k < 4; ++k)
      for (int j = 0; j < 50; ++j)
        CHECK(emb.R(j, k - 1) == doctest::Approx(emb.xi(j, k) / emb.xi(j, 0)));
  }
}

TEST_CASE("score_embed K=1 gives an empty ratio matrix") {
  auto inst = noiseless(20, 40, 2, 3);
  auto emb = score_embed(inst.D, 1);
  CHECK(emb.R.cols() == 0);
  CHECK(emb.R.rows() == 20);
}

TEST_CASE("noiseless rank-K matrices have vanishing trailing spectrum") {
  auto inst = noiseless(30, 60, 3, 5);
  auto report = select_k_scree(inst.D, std::nullopt, 10);
  CHECK(report.singular_values[3] < 1e-6 * report.singular_values[0]);
  // rank deficiency is an error when K exceeds the numerical rank
  CHECK_THROWS_AS(score_embed(inst.D, 5), Error);
}

TEST_CASE("vertex_hunt recovers a planted triangle") {
  // 3 vertices with 30 points each, plus interior points: clusters sit
  // exactly on the vertices, so SPA must return them.
  MatrixXd V(2, 3);
  V << 0, 4, 0, 0, 0, 3;
  Rng rng(17);
  std::vector<Eigen::RowVector2d> rows;
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < 30; ++c) rows.emplace_back(V(0, k), V(1, k));
  for (int i = 0; i < 40; ++i) {
    VectorXd pi = rng.dirichlet(3.0, 3);
    Eigen::Vector2d x = V * pi;
    rows.emplace_back(x[0], x[1]);
  }
  MatrixXd R(rows.size(), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) R.row(i) = rows[i];

  VertexHuntOptions opt;
  opt.seed = 11;
  auto verts = vertex_hunt(R, 3, opt);
  // match recovered vertices to planted ones
  for (int k = 0; k < 3; ++k) {
    double best = 1e9;
    for (int l = 0; l < 3; ++l) best = std::min(best, (verts.V.col(l) - V.col(k)).norm());
    CHECK(best < 1e-6);
  }

  VertexHuntOptions raw = opt;
  raw.cluster = false;
  auto verts_raw = vertex_hunt(R, 3, raw);
  for (int k = 0; k < 3; ++k) {
    double best = 1e9;
    for (int l = 0; l < 3; ++l) best = std::min(best, (verts_raw.V.col(l) - V.col(k)).norm());
    CHECK(best == doctest::Approx(0.0));
  }
}

TEST_CASE("vertex_hunt on a segment returns the endpoints") {
  MatrixXd R(9, 1);
  R << 0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0;
  VertexHuntOptions opt;
  opt.sketch_centers = 9;
  auto verts = vertex_hunt(R, 2, opt);
  CHECK(std::min(verts.V(0, 0), verts.V(0, 1)) == doctest::Approx(0.0));
  CHECK(std::max(verts.V(0, 0), verts.V(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("degenerate leading vector is rejected") {
  // two disconnected word blocks: the leading singular vector of the
  // normalized matrix has exact zero entries
  MatrixXd D(2, 2);
  D << 1, 0, 0, 1;
  try {
    score_embed(to_sparse(D), 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::DegenerateLeadVector);
  }
}

TEST_CASE("vertex_hunt degenerate inputs") {
  auto trivial = vertex_hunt(MatrixXd::Zero(5, 0), 1);
  CHECK(trivial.V.cols() == 1);
  CHECK(trivial.V.rows() == 0);

  CHECK_THROWS_AS(vertex_hunt(MatrixXd::Zero(2, 2), 3), Error);  // too few points

  // collinear points cannot span a 2-simplex
  MatrixXd line(10, 2);
  for (int i = 0; i < 10; ++i) line.row(i) << i, 2.0 * i;
  VertexHuntOptions opt;
  opt.cluster = false;
  try {
    vertex_hunt(line, 3, opt);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::CollapsedVertices);
  }
}

TEST_CASE("barycentric coordinates: vertices, centroid, and exterior clipping") {
  SimplexVertices verts;
  verts.V.resize(2, 3);
  verts.V << 0, 2, 0, 0, 0, 2;

  CHECK(barycentric(verts.V.col(1), verts).isApprox(Eigen::Vector3d(0, 1, 0), 1e-12));
  VectorXd centroid = verts.V.rowwise().mean();
  CHECK(barycentric(centroid, verts).isApprox(Eigen::Vector3d::Constant(1.0 / 3), 1e-12));

  SimplexVertices seg;
  seg.V.resize(1, 2);
  seg.V << 0, 1;
  VectorXd r(1);
  r << 1.5;
  CHECK(barycentric(r, seg).isApprox(Eigen::Vector2d(0, 1)));
  CHECK(barycentric(r, seg, true).isApprox(Eigen::Vector2d(0, 1)));

  // exact mode projects onto the simplex in the V metric
  VectorXd outside(2);
  outside << 3, 3;
  VectorXd pi = barycentric(outside, verts, true);
  CHECK(pi.sum() == doctest::Approx(1.0));
  CHECK(pi.minCoeff() >= 0.0);
  CHECK(pi[0] == doctest::Approx(0.0));
}

TEST_CASE("estimate_topic_matrix recovers A exactly in the noiseless case") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto inst = noiseless(60, 150, 3, seed);
    TopicScoreOptions opt;
    opt.vertex_hunt.seed = seed;
    auto fit = estimate_topic_matrix(inst.D, 3, opt);
    auto err = l1_error(fit.A_hat, inst.A);
    MatrixXd aligned(60, 3);
    for (int k = 0; k < 3; ++k) aligned.col(err.perm[k]) = fit.A_hat.col(k);
    CHECK((aligned - inst.A).cwiseAbs().maxCoeff() < 1e-8);

    for (int k = 0; k < 3; ++k) {
      CHECK(fit.A_hat.col(k).sum() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(fit.A_hat.col(k).minCoeff() >= 0.0);
    }
    for (int j = 0; j < 60; ++j)
      CHECK(fit.pi.row(j).sum() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("estimate_topic_matrix K=1 equals normalized row means") {
  Rng rng(31);
  MatrixXd A = random_topic_matrix(25, 1, 1, 10.0, rng);
  MatrixXd W = MatrixXd::Ones(1, 40);
  SparseMatrixD D = to_sparse(A * W);
  auto fit = estimate_topic_matrix(D, 1);
  VectorXd row_means = MatrixXd(D).rowwise().mean();
  row_means /= row_means.sum();
  CHECK((fit.A_hat.col(0) - row_means).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fit is invariant to an exact doc-length rescaling, bit for bit") {
  Rng rng(41);
  MatrixXd A = random_topic_matrix(40, 3, 2, 10.0, rng);
  MatrixXd W = random_weights(80, 3, 1.0, 0.3, rng);
  auto dtm = sample_counts(A, W, 60, rng);

  DocumentTermMatrix scaled = dtm;
  scaled.counts *= 7.0;
  for (auto& N : scaled.doc_lengths) N *= 7;

  SparseMatrixD D1 = frequency_matrix(dtm);
  SparseMatrixD D2 = frequency_matrix(scaled);
  CHECK(MatrixXd(D1).cwiseEqual(MatrixXd(D2)).all());

  TopicScoreOptions opt;
  opt.vertex_hunt.seed = 5;
  auto f1 = estimate_topic_matrix(D1, 3, opt);
  auto f2 = estimate_topic_matrix(D2, 3, opt);
  CHECK(f1.A_hat.cwiseEqual(f2.A_hat).all());
}

TEST_CASE("select_k_scree counts singular values above the threshold") {
  MatrixXd D = MatrixXd::Zero(3, 3);
  D.diagonal() << 10.0, 5.0, 0.1;
  auto report = select_k_scree(to_sparse(D), 1.0, 3);
  CHECK(report.k_hat == 2);
  CHECK(report.singular_values[0] == doctest::Approx(10.0));

  auto none = select_k_scree(to_sparse(D), 50.0, 3);
  CHECK(none.k_hat == 0);

  auto inst = noiseless(30, 50, 3, 9);
  auto scree = select_k_scree(inst.D, std::nullopt, 8);
  auto with_t = select_k_scree(inst.D, 1e-6 * scree.singular_values[0], 8);
  CHECK(with_t.k_hat == 3);
}

TEST_CASE("topic_loadings normalizes rows; anchors get loading one") {
  MatrixXd A(3, 3);
  A << 0.2, 0, 0, 0.1, 0.1, 0, 0.25, 0.25, 0.5;
  auto a = topic_loadings(A.leftCols(2).eval());
  CHECK(a.row(0).isApprox(Eigen::RowVector2d(1, 0)));
  CHECK(a.row(1).isApprox(Eigen::RowVector2d(0.5, 0.5)));
  auto full = topic_loadings(A);
  for (int j = 0; j < 3; ++j) CHECK(full.row(j).sum() == doctest::Approx(1.0).epsilon(1e-12));

  MatrixXd Az = MatrixXd::Zero(2, 2);
  Az(0, 0) = 1.0;
  CHECK_THROWS_AS(topic_loadings(Az), Error);
}

TEST_CASE("frequent_anchor_words sorts by loading with index tie-break") {
  MatrixXd a(3, 1);
  a << 0.9, 0.1, 0.5;
  CHECK(frequent_anchor_words(a, 0, 2) == std::vector<int>{0, 2});

  MatrixXd equal = MatrixXd::Constant(4, 1, 0.25);
  CHECK(frequent_anchor_words(equal, 0, 1) == std::vector<int>{0});
}

TEST_CASE("fixed seed gives identical fits across runs") {
  auto inst = noiseless(50, 100, 4, 77, 2);
  TopicScoreOptions opt;
  opt.vertex_hunt.seed = 13;
  auto f1 = estimate_topic_matrix(inst.D, 4, opt);
  auto f2 = estimate_topic_matrix(inst.D, 4, opt);
  CHECK(f1.A_hat.cwiseEqual(f2.A_hat).all());
  CHECK(f1.pi.cwiseEqual(f2.pi).all());
  CHECK(f1.vertices.V.cwiseEqual(f2.vertices.V).all());
}

TEST_SUITE_END();
