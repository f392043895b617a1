#include "topicrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "topicrank/errors.hpp"

namespace topicrank {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// One binomial observation: y successes out of m trials with dense
// predictor row x (logit scale).
struct PairObs {
  VectorXd x;
  double y = 0.0;
  double m = 0.0;
};

// Win and loss probabilities are evaluated independently rather than as
// p and 1-p: this makes every IRLS quantity an exact mirror under data
// transposition (beta -> -beta holds bitwise), which the tests assert.
inline double p_win(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }
inline double p_loss(double eta) { return 1.0 / (1.0 + std::exp(eta)); }

double log_likelihood(const std::vector<PairObs>& pairs, const VectorXd& beta) {
  double ll = 0.0;
  for (const auto& ob : pairs) {
    const double eta = ob.x.dot(beta);
    const double pw = p_win(eta), pl = p_loss(eta);
    double term = 0.0;
    if (ob.y > 0.0) term += ob.y * std::log(pw);
    if (ob.m - ob.y > 0.0) term += (ob.m - ob.y) * std::log(pl);
    ll += term;
  }
  return ll;
}

struct GlmFit {
  VectorXd beta;
  bool converged = false;
};

// Newton/IRLS for the binomial logit with step halving on likelihood
// decrease. Degenerate designs (no predictor variation) are reported via
// the flag instead of an error.
GlmFit irls_logit(const std::vector<PairObs>& pairs, int d, double tol, int max_iter,
                  bool* degenerate) {
  GlmFit fit;
  fit.beta = VectorXd::Zero(d);
  *degenerate = false;

  MatrixXd xtx = MatrixXd::Zero(d, d);
  for (const auto& ob : pairs) xtx += ob.x * ob.x.transpose();
  if (d == 0 || xtx.norm() < 1e-12 ||
      Eigen::SelfAdjointEigenSolver<MatrixXd>(xtx).eigenvalues()[0] < 1e-12 * (1.0 + xtx.norm())) {
    *degenerate = true;
    return fit;
  }

  double ll = log_likelihood(pairs, fit.beta);
  for (int iter = 0; iter < max_iter; ++iter) {
    MatrixXd H = MatrixXd::Zero(d, d);
    VectorXd g = VectorXd::Zero(d);
    for (const auto& ob : pairs) {
      const double eta = ob.x.dot(fit.beta);
      const double pw = p_win(eta), pl = p_loss(eta);
      const double w = ob.m * (pw * pl);
      const double r = ob.y * pl - (ob.m - ob.y) * pw;  // = y - m*pw, mirror-exact form
      H += w * (ob.x * ob.x.transpose());
      g += r * ob.x;
    }
    Eigen::LDLT<MatrixXd> ldlt(H);
    VectorXd delta = ldlt.solve(g);
    if (!delta.allFinite()) fail(Err::SingularSystem, "IRLS normal equations are singular");

    double step = 1.0;
    VectorXd candidate = fit.beta + delta;
    double ll_new = log_likelihood(pairs, candidate);
    for (int h = 0; h < 30 && !(ll_new >= ll); ++h) {
      step *= 0.5;
      candidate = fit.beta + step * delta;
      ll_new = log_likelihood(pairs, candidate);
    }
    const double move = (step * delta).cwiseAbs().maxCoeff();
    fit.beta = candidate;
    ll = ll_new;
    if (move < tol) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

double median_of(VectorXd v) {
  std::sort(v.data(), v.data() + v.size());
  const long n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Finish a fit: recenter to median zero and estimate dispersion from the
// Pearson residuals of all comparable pairs. n_entities enters the
// degrees-of-freedom correction N - K + 1.
void finalize_scores(ExportScores* scores, const std::vector<PairObs>& pairs,
                     const std::vector<VectorXd>& full_predictors, const VectorXd& mu_raw,
                     int n_entities, long n_counted) {
  scores->mu = mu_raw.array() - median_of(mu_raw);
  scores->n_pairs = n_counted;

  double pearson = 0.0;
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const double eta = full_predictors[t].dot(scores->mu);
    const double pw = p_win(eta), pl = p_loss(eta);
    const double denom = pairs[t].m * pw * pl;
    if (denom > 0.0) {
      const double resid = pairs[t].y - pairs[t].m * pw;
      pearson += resid * resid / denom;
    }
  }
  const double dof = static_cast<double>(n_counted) - n_entities + 1;
  if (dof >= 1.0) {
    scores->phi = pearson / dof;
    scores->phi_defined = true;
  } else {
    scores->phi = 0.0;
    scores->phi_defined = false;
  }
}

}  // namespace

PairedComparisons journal_citation_matrix(const std::vector<PaperMeta>& metas,
                                          const CitationGraph& graph, int window_years,
                                          const std::vector<int>& base_years) {
  if (window_years < 1) fail(Err::InvalidArgument, "window_years must be >= 1");
  PairedComparisons pc;
  std::unordered_map<std::string, int> journal_idx;
  for (const auto& m : metas) {
    if (m.journal_id.empty()) fail(Err::UnknownJournal, "paper " + m.paper_id + " has no journal");
    if (journal_idx.emplace(m.journal_id, static_cast<int>(pc.entities.size())).second)
      pc.entities.push_back(m.journal_id);
  }
  const int J = static_cast<int>(pc.entities.size());
  pc.wins = MatrixXd::Zero(J, J);

  for (const auto& [i, j] : graph.edges) {
    const auto& citer = metas[i];
    const auto& cited = metas[j];
    if (std::find(base_years.begin(), base_years.end(), citer.year) == base_years.end()) continue;
    if (cited.year < citer.year - window_years + 1 || cited.year > citer.year) continue;
    const int a = journal_idx.at(citer.journal_id);
    const int b = journal_idx.at(cited.journal_id);
    if (a == b) continue;
    pc.wins(a, b) += 1.0;
  }
  return pc;
}

ExportScores fit_stigler(const PairedComparisons& pc, const StiglerOptions& options) {
  const int J = static_cast<int>(pc.entities.size());
  if (J < 2) fail(Err::InvalidArgument, "fit_stigler needs at least two entities");

  // Comparability graph connectivity (union-find).
  std::vector<int> parent(J);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int a = 0; a < J; ++a)
    for (int b = a + 1; b < J; ++b)
      if (pc.wins(a, b) + pc.wins(b, a) >= 1.0) parent[find(a)] = find(b);
  std::unordered_map<int, std::vector<int>> components;
  for (int a = 0; a < J; ++a) components[find(a)].push_back(a);
  if (components.size() > 1) {
    std::string msg = "comparison graph is disconnected:";
    for (const auto& [root, members] : components) {
      msg += " {";
      for (std::size_t i = 0; i < members.size(); ++i)
        msg += (i ? "," : "") + pc.entities[members[i]];
      msg += "}";
    }
    fail(Err::DisconnectedComparisonGraph, msg);
  }

  // Complete separation: an entity winning or losing all its comparisons
  // has no finite maximum-likelihood score.
  for (int a = 0; a < J; ++a) {
    double won = 0.0, lost = 0.0;
    for (int b = 0; b < J; ++b) {
      if (b == a) continue;
      won += pc.wins(a, b);
      lost += pc.wins(b, a);
    }
    if (won == 0.0 || lost == 0.0)
      fail(Err::Separation, "entity " + pc.entities[a] +
                                (won == 0.0 ? " loses" : " wins") + " every comparison");
  }

  std::vector<PairObs> pairs;
  std::vector<VectorXd> full_x;
  long n_counted = 0;
  for (int a = 0; a < J; ++a)
    for (int b = a + 1; b < J; ++b) {
      const double m = pc.wins(a, b) + pc.wins(b, a);
      if (m < 1.0) continue;
      PairObs ob;
      ob.x = VectorXd::Zero(J - 1);
      if (a > 0) ob.x[a - 1] = 1.0;
      if (b > 0) ob.x[b - 1] = -1.0;
      ob.y = pc.wins(a, b);
      ob.m = m;
      pairs.push_back(std::move(ob));
      VectorXd fx = VectorXd::Zero(J);
      fx[a] = 1.0;
      fx[b] = -1.0;
      full_x.push_back(std::move(fx));
      if (options.count_pairs_geq1 || m == 1.0) ++n_counted;
    }
  if (pairs.empty()) fail(Err::NoComparablePairs, "no comparable pairs");

  ExportScores scores;
  GlmFit fit = irls_logit(pairs, J - 1, options.tol, options.max_iter, &scores.degenerate);
  VectorXd mu_raw = VectorXd::Zero(J);
  mu_raw.tail(J - 1) = fit.beta;

  finalize_scores(&scores, pairs, full_x, mu_raw, J, n_counted);
  return scores;
}

VectorXd pagerank(const MatrixXd& adjacency, double alpha, double tol) {
  if (alpha <= 0.0 || alpha >= 1.0) fail(Err::InvalidArgument, "pagerank alpha must be in (0,1)");
  const int J = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != J || J < 1) fail(Err::InvalidShape, "pagerank needs a square matrix");

  // Column i of S = where entity i's citations go.
  MatrixXd S(J, J);
  for (int i = 0; i < J; ++i) {
    const double out = adjacency.row(i).sum();
    if (out > 0.0)
      S.col(i) = adjacency.row(i).transpose() / out;
    else
      S.col(i).setConstant(1.0 / J);
  }

  VectorXd x = VectorXd::Constant(J, 1.0 / J);
  const VectorXd teleport = VectorXd::Constant(J, (1.0 - alpha) / J);
  for (int iter = 0; iter < 100000; ++iter) {
    VectorXd next = alpha * (S * x) + teleport;
    const double diff = (next - x).cwiseAbs().sum();
    x = next;
    if (diff < tol) break;
  }
  return x / x.sum();
}

ExportScores fit_export_scores(const MatrixXd& W_hat, const CitationGraph& C,
                               const StiglerOptions& options) {
  const int K = static_cast<int>(W_hat.rows());
  const int n = static_cast<int>(W_hat.cols());
  if (C.n != n) fail(Err::ShapeMismatch, "citation graph and weight matrix disagree on n");

  // Directed counts per unordered pair, canonical orientation i < j.
  std::unordered_map<std::uint64_t, std::pair<int, int>> tally;
  for (const auto& [i, j] : C.edges) {
    const int lo = std::min(i, j), hi = std::max(i, j);
    const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
    auto& cell = tally[key];
    if (i < j)
      ++cell.first;
    else
      ++cell.second;
  }
  if (tally.empty()) fail(Err::NoComparablePairs, "citation graph has no comparable pairs");

  std::vector<std::uint64_t> keys;
  keys.reserve(tally.size());
  for (const auto& [key, cell] : tally) keys.push_back(key);
  std::sort(keys.begin(), keys.end());  // deterministic pair order

  std::vector<PairObs> pairs;
  std::vector<VectorXd> full_x;
  pairs.reserve(keys.size());
  full_x.reserve(keys.size());
  long n_counted = 0;
  for (auto key : keys) {
    const int lo = static_cast<int>(key >> 32);
    const int hi = static_cast<int>(key & 0xffffffffu);
    const auto& cell = tally.at(key);
    PairObs ob;
    VectorXd diff = W_hat.col(lo) - W_hat.col(hi);
    ob.x = diff.tail(K - 1);  // mu_1 = 0 identification
    ob.y = cell.first;
    ob.m = cell.first + cell.second;
    pairs.push_back(std::move(ob));
    full_x.push_back(std::move(diff));
    if (options.count_pairs_geq1 || cell.first + cell.second == 1) ++n_counted;
  }

  ExportScores scores;
  GlmFit fit = irls_logit(pairs, K - 1, options.tol, options.max_iter, &scores.degenerate);
  VectorXd mu_raw = VectorXd::Zero(K);
  mu_raw.tail(K - 1) = fit.beta;

  finalize_scores(&scores, pairs, full_x, mu_raw, K, n_counted);
  return scores;
}

TrScoreResult tr_score(const SparseMatrixD& D, const CitationGraph& C, int K,
                       const TrScoreOptions& options) {
  TrScoreResult result;
  result.fit = estimate_topic_matrix(D, K, options.topic_score);
  result.weights = estimate_weights_ridge(result.fit.A_hat, D, options.lambda);
  result.scores = fit_export_scores(result.weights.W_hat, C, options.stigler);
  return result;
}

CrossTopicGraph cross_topic_graph(const MatrixXd& W_hat, const CitationGraph& C,
                                  CrossTopicMode mode) {
  const int K = static_cast<int>(W_hat.rows());
  const int n = static_cast<int>(W_hat.cols());
  if (C.n != n) fail(Err::ShapeMismatch, "citation graph and weight matrix disagree on n");

  CrossTopicGraph graph;
  graph.mode = mode;
  graph.N_counts = MatrixXd::Zero(K, K);

  if (mode == CrossTopicMode::Dominant) {
    std::vector<int> labels = dominant_topic(W_hat);
    for (const auto& [i, j] : C.edges) graph.N_counts(labels[i], labels[j]) += 1.0;
  } else {
    for (const auto& [i, j] : C.edges)
      graph.N_counts += W_hat.col(i) * W_hat.col(j).transpose();
  }

  graph.P = MatrixXd::Zero(K, K);
  for (int k = 0; k < K; ++k) {
    const double row_sum = graph.N_counts.row(k).sum();
    if (row_sum > 0.0)
      graph.P.row(k) = graph.N_counts.row(k) / row_sum;
    else
      graph.zero_rows.push_back(k);
  }
  return graph;
}

std::vector<GraphEdge> threshold_edges(const CrossTopicGraph& graph, double cutoff) {
  if (cutoff < 0.0 || cutoff > 1.0) fail(Err::InvalidArgument, "edge cutoff must be in [0,1]");
  std::vector<GraphEdge> edges;
  const int K = static_cast<int>(graph.P.rows());
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < K; ++l)
      if (k != l && graph.P(k, l) >= cutoff) edges.push_back({k, l, graph.P(k, l)});
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.from != b.from) return a.from < b.from;
    return a.to < b.to;
  });
  return edges;
}

}  // namespace topicrank
