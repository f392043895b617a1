#include "topicrank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "topicrank/errors.hpp"

namespace topicrank {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Hungarian algorithm (Jonker-Volgenant potentials), O(K^3). cost is
// square; returns the column assigned to each row.
std::vector<int> min_cost_assignment(const MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = std::numeric_limits<double>::infinity();
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

MatchedError match_columns(const MatrixXd& cost) {
  const int K = static_cast<int>(cost.rows());
  MatchedError out;
  if (K <= 8) {
    std::vector<int> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_perm = perm;
    do {
      double total = 0.0;
      for (int k = 0; k < K; ++k) total += cost(k, perm[k]);
      if (total < best) {
        best = total;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.error = best;
    out.perm = best_perm;
    return out;
  }
  out.perm = min_cost_assignment(cost);
  out.error = 0.0;
  for (int k = 0; k < K; ++k) out.error += cost(k, out.perm[k]);
  return out;
}

}  // namespace

MatrixXd random_topic_matrix(int p, int K, int anchor_count, double heterogeneity, Rng& rng) {
  if (p < K * anchor_count || K < 1 || anchor_count < 1)
    fail(Err::InvalidShape, "random_topic_matrix: need p >= K * anchor_count");
  if (heterogeneity < 1.0) fail(Err::InvalidArgument, "heterogeneity must be >= 1");

  // Row mass: geometric profile times a narrow uniform jitter, so the
  // max/min row-sum ratio tracks the declared heterogeneity factor.
  MatrixXd A = MatrixXd::Zero(p, K);
  for (int j = 0; j < p; ++j) {
    const double profile =
        p > 1 ? std::pow(heterogeneity, static_cast<double>(j) / (p - 1)) : 1.0;
    const double mass = profile * (0.9 + 0.2 * rng.uniform());
    if (j < K * anchor_count) {
      A(j, j / anchor_count) = mass;
    } else {
      // Concentrated Dirichlet keeps interior rows away from vertices.
      A.row(j) = (mass * rng.dirichlet(5.0, K)).transpose();
    }
  }
  for (int k = 0; k < K; ++k) A.col(k) /= A.col(k).sum();
  return A;
}

MatrixXd random_weights(int n, int K, double dirichlet_alpha, double pure_fraction, Rng& rng) {
  if (pure_fraction < 0.0 || pure_fraction > 1.0)
    fail(Err::InvalidArgument, "pure_fraction must be in [0,1]");
  MatrixXd W = MatrixXd::Zero(K, n);
  const int n_pure = static_cast<int>(std::ceil(pure_fraction * n));
  for (int i = 0; i < n; ++i) {
    if (i < n_pure)
      W(i % K, i) = 1.0;
    else
      W.col(i) = rng.dirichlet(dirichlet_alpha, K);
  }
  return W;
}

DocumentTermMatrix sample_counts(const MatrixXd& A, const MatrixXd& W, long N, Rng& rng) {
  const int p = static_cast<int>(A.rows());
  const int K = static_cast<int>(A.cols());
  const int n = static_cast<int>(W.cols());
  if (W.rows() != K) fail(Err::ShapeMismatch, "sample_counts: A and W disagree on K");
  if (N < 1) fail(Err::InvalidArgument, "document length must be >= 1");

  // Per-topic word CDFs, built once; each word draw is topic then word.
  std::vector<std::vector<double>> word_cdf(K, std::vector<double>(p));
  for (int k = 0; k < K; ++k) {
    double acc = 0.0;
    for (int j = 0; j < p; ++j) {
      acc += A(j, k);
      word_cdf[k][j] = acc;
    }
  }

  std::vector<Eigen::Triplet<double>> trips;
  std::vector<double> topic_cdf(K), col(p);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
      acc += W(k, i);
      topic_cdf[k] = acc;
    }
    std::fill(col.begin(), col.end(), 0.0);
    for (long t = 0; t < N; ++t) {
      const int k = rng.categorical(topic_cdf);
      const int j = rng.categorical(word_cdf[k]);
      col[j] += 1.0;
    }
    for (int j = 0; j < p; ++j)
      if (col[j] != 0.0) trips.emplace_back(j, i, col[j]);
  }

  DocumentTermMatrix dtm;
  dtm.counts.resize(p, n);
  dtm.counts.setFromTriplets(trips.begin(), trips.end());
  dtm.doc_lengths.assign(n, N);
  for (int j = 0; j < p; ++j) dtm.vocabulary.push("w" + std::to_string(j));
  return dtm;
}

CitationGraph sample_citations(const MatrixXd& W, const VectorXd& mu, double pair_prob, Rng& rng,
                               bool duplicate_pairs) {
  const int n = static_cast<int>(W.cols());
  if (mu.size() != W.rows()) fail(Err::ShapeMismatch, "sample_citations: mu and W disagree on K");
  if (pair_prob < 0.0 || pair_prob > 1.0)
    fail(Err::InvalidArgument, "pair_prob must be in [0,1]");

  CitationGraph g;
  g.n = n;
  if (pair_prob == 0.0 || n < 2) return g;

  const VectorXd score = W.transpose() * mu;
  std::set<std::pair<int, int>> edges;
  auto draw_direction = [&](int i, int j) {
    const double eta = score[i] - score[j];
    const double prob_ij = 1.0 / (1.0 + std::exp(-eta));
    if (rng.uniform() < prob_ij)
      edges.emplace(i, j);
    else
      edges.emplace(j, i);
  };

  // Bernoulli skip-sampling over the linear pair index space: O(#pairs
  // selected) instead of O(n^2) uniforms.
  const long long total = static_cast<long long>(n) * (n - 1) / 2;
  const double log1mq = pair_prob < 1.0 ? std::log1p(-pair_prob) : 0.0;
  long long cur = -1;
  for (;;) {
    if (pair_prob >= 1.0) {
      ++cur;
    } else {
      double u = rng.uniform();
      while (u <= 0.0) u = rng.uniform();
      cur += 1 + static_cast<long long>(std::floor(std::log(u) / log1mq));
    }
    if (cur >= total) break;
    // invert m = offset(i) + (j - i - 1), offset(i) = i(n-1) - i(i-1)/2
    auto offset = [&](long long a) { return a * (n - 1) - a * (a - 1) / 2; };
    const double fi = (2.0 * n - 1.0 - std::sqrt((2.0 * n - 1.0) * (2.0 * n - 1.0) -
                                                 8.0 * static_cast<double>(cur))) /
                      2.0;
    long long i = std::clamp<long long>(static_cast<long long>(fi), 0, n - 2);
    while (i > 0 && offset(i) > cur) --i;
    while (i < n - 2 && offset(i + 1) <= cur) ++i;
    const long long j = cur - offset(i) + i + 1;
    draw_direction(static_cast<int>(i), static_cast<int>(j));
    if (duplicate_pairs) draw_direction(static_cast<int>(i), static_cast<int>(j));
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

MatchedError l1_error(const MatrixXd& A_hat, const MatrixXd& A_true) {
  if (A_hat.rows() != A_true.rows() || A_hat.cols() != A_true.cols())
    fail(Err::ShapeMismatch, "l1_error: shapes differ");
  const int K = static_cast<int>(A_hat.cols());
  MatrixXd cost(K, K);
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < K; ++l) cost(k, l) = (A_hat.col(k) - A_true.col(l)).cwiseAbs().sum();
  return match_columns(cost);
}

MatchedError w_error(const MatrixXd& W_hat, const MatrixXd& W_true) {
  if (W_hat.rows() != W_true.rows() || W_hat.cols() != W_true.cols())
    fail(Err::ShapeMismatch, "w_error: shapes differ");
  const int K = static_cast<int>(W_hat.rows());
  const double n = static_cast<double>(W_hat.cols());
  MatrixXd cost(K, K);
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < K; ++l) cost(k, l) = (W_hat.row(k) - W_true.row(l)).cwiseAbs().sum();
  MatchedError out = match_columns(cost);
  out.error /= n;
  return out;
}

}  // namespace topicrank
