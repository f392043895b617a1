#include "topicrank/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "svd_impl.hpp"
#include "topicrank/errors.hpp"
#include "topicrank/rng.hpp"

namespace topicrank {

namespace {

constexpr double kEpsPositive = 1e-12;
constexpr double kCondLimit = 1e8;

double condition_number(const MatrixXd& A) {
  Eigen::JacobiSVD<MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[s.size() - 1] <= 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / s[s.size() - 1];
}

// Lloyd's algorithm with k-means++ seeding. Points are rows of X. Returns
// L centers; empty clusters are reseeded at the point farthest from its
// center, so the center count stays exact.
MatrixXd lloyd_centers(const MatrixXd& X, int L, std::uint64_t seed, int max_iter, double tol) {
  const int m = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  Rng rng(seed);

  MatrixXd centers(L, d);
  std::vector<double> dist2(m, std::numeric_limits<double>::infinity());
  {
    int first = static_cast<int>(rng.uniform_int(m));
    centers.row(0) = X.row(first);
    for (int c = 1; c < L; ++c) {
      double total = 0.0;
      for (int i = 0; i < m; ++i) {
        double d2 = (X.row(i) - centers.row(c - 1)).squaredNorm();
        dist2[i] = std::min(dist2[i], d2);
        total += dist2[i];
      }
      if (total <= 0.0) {
        centers.row(c) = X.row(static_cast<int>(rng.uniform_int(m)));
        continue;
      }
      double u = rng.uniform() * total;
      double acc = 0.0;
      int pick = m - 1;
      for (int i = 0; i < m; ++i) {
        acc += dist2[i];
        if (acc >= u) {
          pick = i;
          break;
        }
      }
      centers.row(c) = X.row(pick);
    }
  }

  std::vector<int> assign(m, 0);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (int i = 0; i < m; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < L; ++c) {
        double d2 = (X.row(i) - centers.row(c)).squaredNorm();
        if (d2 < best) {
          best = d2;
          arg = c;
        }
      }
      assign[i] = arg;
    }
    MatrixXd next = MatrixXd::Zero(L, d);
    std::vector<int> count(L, 0);
    for (int i = 0; i < m; ++i) {
      next.row(assign[i]) += X.row(i);
      ++count[assign[i]];
    }
    for (int c = 0; c < L; ++c) {
      if (count[c] > 0) {
        next.row(c) /= count[c];
      } else {
        int far = 0;
        double best = -1.0;
        for (int i = 0; i < m; ++i) {
          double d2 = (X.row(i) - centers.row(assign[i])).squaredNorm();
          if (d2 > best) {
            best = d2;
            far = i;
          }
        }
        next.row(c) = X.row(far);
      }
    }
    double shift = (next - centers).norm();
    double scale = centers.norm() + 1e-30;
    centers = next;
    if (shift / scale < tol) break;
  }
  return centers;
}

// Successive projection on the rows of P, augmented with a constant
// coordinate so the affine structure of the simplex becomes conic. Picks
// K row indices; ties go to the smaller index.
std::vector<int> successive_projection(const MatrixXd& P, int K) {
  const int m = static_cast<int>(P.rows());
  MatrixXd aug(m, P.cols() + 1);
  aug.leftCols(P.cols()) = P;
  aug.col(P.cols()).setOnes();

  std::vector<int> picked;
  for (int step = 0; step < K; ++step) {
    int arg = -1;
    double best = -1.0;
    for (int i = 0; i < m; ++i) {
      double norm2 = aug.row(i).squaredNorm();
      if (norm2 > best) {
        best = norm2;
        arg = i;
      }
    }
    picked.push_back(arg);
    Eigen::RowVectorXd u = aug.row(arg);
    double un = u.squaredNorm();
    if (un <= 0.0) break;
    aug -= (aug * u.transpose()) * (u / un);
  }
  return picked;
}

}  // namespace

VectorXd normalization_matrix(const SparseMatrixD& D) {
  const int p = static_cast<int>(D.rows());
  const int n = static_cast<int>(D.cols());
  VectorXd M = VectorXd::Zero(p);
  for (int i = 0; i < D.outerSize(); ++i)
    for (SparseMatrixD::InnerIterator it(D, i); it; ++it) M[it.row()] += it.value();
  M /= static_cast<double>(n);
  for (int j = 0; j < p; ++j)
    if (M[j] <= 0.0)
      fail(Err::ZeroRow, "word " + std::to_string(j) + " never occurs");
  return M;
}

ScoreEmbedding score_embed(const SparseMatrixD& D, int K, int dense_svd_threshold) {
  const int p = static_cast<int>(D.rows());
  const int n = static_cast<int>(D.cols());
  if (K < 1 || K > std::min(p, n)) fail(Err::InvalidArgument, "score_embed: K out of range");

  ScoreEmbedding emb;
  emb.M_diag = normalization_matrix(D);

  SparseMatrixD B = D;
  VectorXd inv_sqrt = emb.M_diag.array().rsqrt();
  for (int i = 0; i < B.outerSize(); ++i)
    for (SparseMatrixD::InnerIterator it(B, i); it; ++it)
      it.valueRef() *= inv_sqrt[it.row()];

  auto svd = detail::truncated_left_svd(B, K, dense_svd_threshold);
  emb.xi = svd.U;
  emb.singular_values = svd.S;
  if (svd.S[K - 1] < 1e-12 * svd.S[0])
    fail(Err::RankDeficient, "singular value ratio below 1e-12 at K=" + std::to_string(K));

  if (emb.xi.col(0).sum() < 0.0) emb.xi.col(0) = -emb.xi.col(0);
  for (int k = 1; k < K; ++k) {
    int arg = 0;
    emb.xi.col(k).cwiseAbs().maxCoeff(&arg);
    if (emb.xi(arg, k) < 0.0) emb.xi.col(k) = -emb.xi.col(k);
  }
  for (int j = 0; j < p; ++j)
    if (emb.xi(j, 0) < kEpsPositive)
      fail(Err::DegenerateLeadVector,
           "leading singular vector is not entrywise positive at word " + std::to_string(j));

  emb.R.resize(p, K - 1);
  for (int k = 1; k < K; ++k)
    emb.R.col(k - 1) = emb.xi.col(k).array() / emb.xi.col(0).array();
  return emb;
}

SimplexVertices vertex_hunt(const MatrixXd& R, int K, const VertexHuntOptions& options) {
  const int p = static_cast<int>(R.rows());
  if (K < 1) fail(Err::InvalidArgument, "vertex_hunt: K must be >= 1");
  if (p < K) fail(Err::TooFewPoints, "vertex_hunt: fewer points than vertices");

  SimplexVertices out;
  if (K == 1) {
    out.V.resize(0, 1);
    out.cond = 1.0;
    return out;
  }

  MatrixXd candidates;
  if (options.cluster) {
    int L = options.sketch_centers > 0 ? options.sketch_centers : 10 * K;
    L = std::min(L, p);
    candidates = lloyd_centers(R, L, options.seed, options.lloyd_max_iter, options.lloyd_tol);
  } else {
    candidates = R;
  }

  std::vector<int> picked = successive_projection(candidates, K);
  out.V.resize(K - 1, K);
  for (int k = 0; k < K; ++k) out.V.col(k) = candidates.row(picked[k]).transpose();

  MatrixXd aug(K, K);
  aug.topRows(K - 1) = out.V;
  aug.row(K - 1).setOnes();
  out.cond = condition_number(aug);
  if (!(out.cond < kCondLimit))
    fail(Err::CollapsedVertices, "selected vertices are affinely degenerate (cond ~ " +
                                     std::to_string(out.cond) + ")");
  return out;
}

VectorXd barycentric(const VectorXd& r, const SimplexVertices& vertices, bool exact_ls) {
  const int K = static_cast<int>(vertices.V.cols());
  if (K == 1) return VectorXd::Ones(1);
  if (r.size() != K - 1) fail(Err::InvalidArgument, "barycentric: point dimension mismatch");

  MatrixXd aug(K, K);
  aug.topRows(K - 1) = vertices.V;
  aug.row(K - 1).setOnes();
  Eigen::PartialPivLU<MatrixXd> lu(aug);
  VectorXd rhs(K);
  rhs.head(K - 1) = r;
  rhs[K - 1] = 1.0;
  VectorXd pi = lu.solve(rhs);
  if (!pi.allFinite()) fail(Err::DegenerateSimplex, "barycentric solve failed");

  if (!exact_ls) {
    pi = pi.cwiseMax(0.0);
    double s = pi.sum();
    if (s <= 0.0) fail(Err::DegenerateSimplex, "clipped barycentric coordinates sum to zero");
    return pi / s;
  }

  // Active-set refinement: drop the most negative coordinate and re-solve
  // the equality-constrained least squares on the remaining vertices.
  std::vector<int> active(K);
  std::iota(active.begin(), active.end(), 0);
  VectorXd full = VectorXd::Zero(K);
  for (int round = 0; round < K; ++round) {
    const int m = static_cast<int>(active.size());
    if (m == 1) {
      full.setZero();
      full[active[0]] = 1.0;
      return full;
    }
    // minimize ||V_A x - r||^2 s.t. 1'x = 1 via KKT.
    MatrixXd Va(K - 1, m);
    for (int c = 0; c < m; ++c) Va.col(c) = vertices.V.col(active[c]);
    MatrixXd kkt = MatrixXd::Zero(m + 1, m + 1);
    kkt.topLeftCorner(m, m) = Va.transpose() * Va;
    kkt.topRightCorner(m, 1).setOnes();
    kkt.bottomLeftCorner(1, m).setOnes();
    VectorXd krhs(m + 1);
    krhs.head(m) = Va.transpose() * r;
    krhs[m] = 1.0;
    VectorXd sol = kkt.fullPivLu().solve(krhs);
    if (!sol.allFinite()) fail(Err::DegenerateSimplex, "simplex least-squares solve failed");
    int worst = -1;
    double most_negative = -1e-12;
    for (int c = 0; c < m; ++c)
      if (sol[c] < most_negative) {
        most_negative = sol[c];
        worst = c;
      }
    if (worst < 0) {
      full.setZero();
      for (int c = 0; c < m; ++c) full[active[c]] = std::max(0.0, sol[c]);
      double s = full.sum();
      return full / s;
    }
    active.erase(active.begin() + worst);
  }
  fail(Err::DegenerateSimplex, "simplex projection did not terminate");
}

TopicModelFit estimate_topic_matrix(const SparseMatrixD& D, int K,
                                    const TopicScoreOptions& options) {
  TopicModelFit fit;
  fit.embedding = score_embed(D, K, options.dense_svd_threshold);
  fit.vertices = vertex_hunt(fit.embedding.R, K, options.vertex_hunt);

  const int p = static_cast<int>(D.rows());
  fit.pi.resize(p, K);
  for (int j = 0; j < p; ++j)
    fit.pi.row(j) =
        barycentric(fit.embedding.R.row(j).transpose(), fit.vertices, options.exact_simplex_ls)
            .transpose();

  fit.A_hat.resize(p, K);
  for (int j = 0; j < p; ++j) {
    double scale = std::sqrt(fit.embedding.M_diag[j]) * fit.embedding.xi(j, 0);
    fit.A_hat.row(j) = (scale * fit.pi.row(j)).cwiseMax(0.0);
  }
  for (int k = 0; k < K; ++k) {
    double s = fit.A_hat.col(k).sum();
    if (s <= 0.0) fail(Err::DegenerateSimplex, "estimated topic " + std::to_string(k) + " is empty");
    fit.A_hat.col(k) /= s;
  }
  return fit;
}

ScreeReport select_k_scree(const SparseMatrixD& X, std::optional<double> threshold, int max_L,
                           int dense_svd_threshold) {
  const int mindim = static_cast<int>(std::min(X.rows(), X.cols()));
  if (max_L < 1 || max_L > mindim) fail(Err::InvalidArgument, "select_k_scree: max_L out of range");

  auto svd = detail::truncated_left_svd(X, max_L, dense_svd_threshold);
  ScreeReport report;
  report.singular_values = svd.S;
  report.threshold = threshold;
  if (threshold) {
    int k = 0;
    for (int i = 0; i < svd.S.size(); ++i)
      if (svd.S[i] > *threshold) ++k;
    report.k_hat = k;
  }
  return report;
}

MatrixXd topic_loadings(const MatrixXd& A_hat) {
  MatrixXd a = A_hat;
  for (int j = 0; j < a.rows(); ++j) {
    double s = a.row(j).sum();
    if (s <= 0.0) fail(Err::ZeroRow, "topic_loadings: row " + std::to_string(j) + " is all zero");
    a.row(j) /= s;
  }
  return a;
}

std::vector<int> frequent_anchor_words(const MatrixXd& loadings, int k, int m) {
  const int p = static_cast<int>(loadings.rows());
  if (k < 0 || k >= loadings.cols()) fail(Err::InvalidArgument, "anchor words: bad topic index");
  if (m < 1 || m > p) fail(Err::InvalidArgument, "anchor words: m out of range");
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (loadings(a, k) != loadings(b, k)) return loadings(a, k) > loadings(b, k);
    return a < b;
  });
  order.resize(m);
  return order;
}

}  // namespace topicrank
