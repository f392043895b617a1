// Python bindings for the main operations. Dense numpy arrays cross the
// boundary; they are converted to the sparse layout internally.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "topicrank/corpus.hpp"
#include "topicrank/errors.hpp"
#include "topicrank/metrics.hpp"
#include "topicrank/ranking.hpp"
#include "topicrank/rng.hpp"
#include "topicrank/spectral.hpp"
#include "topicrank/synth.hpp"
#include "topicrank/weights.hpp"

namespace py = pybind11;
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

CitationGraph to_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  CitationGraph g;
  g.n = n;
  std::set<std::pair<int, int>> dedup(edges.begin(), edges.end());
  for (const auto& [i, j] : dedup) {
    if (i < 0 || i >= n || j < 0 || j >= n) fail(Err::InvalidArgument, "edge index out of range");
    if (i != j) g.edges.emplace_back(i, j);
  }
  return g;
}

py::dict scores_dict(const ExportScores& s) {
  py::dict d;
  d["mu"] = s.mu;
  d["phi"] = s.phi_defined ? py::cast(s.phi) : py::none();
  d["n_pairs"] = s.n_pairs;
  d["degenerate"] = s.degenerate;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral topic estimation, topic/journal ranking, and bibliometrics";

  py::register_exception<Error>(m, "TopicRankError");

  m.def(
      "estimate_topic_matrix",
      [](const MatrixXd& D, int K, std::uint64_t seed, bool cluster, int sketch_centers,
         bool exact_simplex) {
        TopicScoreOptions opt;
        opt.vertex_hunt.seed = seed;
        opt.vertex_hunt.cluster = cluster;
        opt.vertex_hunt.sketch_centers = sketch_centers;
        opt.exact_simplex_ls = exact_simplex;
        auto fit = estimate_topic_matrix(to_sparse(D), K, opt);
        py::dict out;
        out["A_hat"] = fit.A_hat;
        out["xi"] = fit.embedding.xi;
        out["singular_values"] = fit.embedding.singular_values;
        out["R"] = fit.embedding.R;
        out["M_diag"] = fit.embedding.M_diag;
        out["vertices"] = fit.vertices.V;
        out["pi"] = fit.pi;
        return out;
      },
      py::arg("D"), py::arg("K"), py::arg("seed") = 0, py::arg("cluster") = true,
      py::arg("sketch_centers") = 0, py::arg("exact_simplex") = false);

  m.def(
      "estimate_weights_ridge",
      [](const MatrixXd& A_hat, const MatrixXd& D, double lam) {
        auto w = estimate_weights_ridge(A_hat, to_sparse(D), lam);
        py::dict out;
        out["W_hat"] = w.W_hat;
        out["dominant"] = w.dominant;
        out["uniform_docs"] = w.uniform_docs;
        return out;
      },
      py::arg("A_hat"), py::arg("D"), py::arg("lam") = 0.3);

  m.def(
      "estimate_weights_wls",
      [](const MatrixXd& A_hat, const MatrixXd& D, const VectorXd& M_diag) {
        auto w = estimate_weights_wls(A_hat, to_sparse(D), M_diag);
        py::dict out;
        out["W_hat"] = w.W_hat;
        out["dominant"] = w.dominant;
        return out;
      },
      py::arg("A_hat"), py::arg("D"), py::arg("M_diag"));

  m.def("dominant_topic", &dominant_topic, py::arg("W_hat"));
  m.def(
      "normalization_matrix", [](const MatrixXd& D) { return normalization_matrix(to_sparse(D)); },
      py::arg("D"));
  m.def("topic_loadings", &topic_loadings, py::arg("A_hat"));
  m.def("frequent_anchor_words", &frequent_anchor_words, py::arg("loadings"), py::arg("topic"),
        py::arg("m"));

  m.def(
      "select_k_scree",
      [](const MatrixXd& X, std::optional<double> threshold, int max_L) {
        auto r = select_k_scree(to_sparse(X), threshold, max_L);
        py::dict out;
        out["singular_values"] = r.singular_values;
        out["k_hat"] = r.k_hat ? py::cast(*r.k_hat) : py::none();
        return out;
      },
      py::arg("X"), py::arg("threshold") = py::none(), py::arg("max_L") = 30);

  m.def(
      "fit_stigler",
      [](const std::vector<std::string>& entities, const MatrixXd& wins, bool count_pairs_geq1) {
        PairedComparisons pc;
        pc.entities = entities;
        pc.wins = wins;
        StiglerOptions opt;
        opt.count_pairs_geq1 = count_pairs_geq1;
        return scores_dict(fit_stigler(pc, opt));
      },
      py::arg("entities"), py::arg("wins"), py::arg("count_pairs_geq1") = true);

  m.def("pagerank", &pagerank, py::arg("adjacency"), py::arg("alpha") = 0.85,
        py::arg("tol") = 1e-12);

  m.def(
      "tr_score",
      [](const MatrixXd& D, int n, const std::vector<std::pair<int, int>>& edges, int K,
         double lam, std::uint64_t seed) {
        TrScoreOptions opt;
        opt.lambda = lam;
        opt.topic_score.vertex_hunt.seed = seed;
        auto r = tr_score(to_sparse(D), to_graph(n, edges), K, opt);
        py::dict out;
        out["scores"] = scores_dict(r.scores);
        out["A_hat"] = r.fit.A_hat;
        out["W_hat"] = r.weights.W_hat;
        out["dominant"] = r.weights.dominant;
        return out;
      },
      py::arg("D"), py::arg("n"), py::arg("edges"), py::arg("K"), py::arg("lam") = 0.3,
      py::arg("seed") = 0);

  m.def(
      "fit_export_scores",
      [](const MatrixXd& W_hat, int n, const std::vector<std::pair<int, int>>& edges) {
        return scores_dict(fit_export_scores(W_hat, to_graph(n, edges)));
      },
      py::arg("W_hat"), py::arg("n"), py::arg("edges"));

  m.def(
      "cross_topic_graph",
      [](const MatrixXd& W_hat, int n, const std::vector<std::pair<int, int>>& edges,
         const std::string& mode) {
        auto g = cross_topic_graph(W_hat, to_graph(n, edges),
                                   mode == "weighted" ? CrossTopicMode::Weighted
                                                      : CrossTopicMode::Dominant);
        py::dict out;
        out["P"] = g.P;
        out["N"] = g.N_counts;
        out["zero_rows"] = g.zero_rows;
        return out;
      },
      py::arg("W_hat"), py::arg("n"), py::arg("edges"), py::arg("mode") = "dominant");

  m.def(
      "sleeping_beauty",
      [](const std::vector<long>& counts, bool latest_peak) {
        auto b = sleeping_beauty({"", counts}, latest_peak);
        return py::make_tuple(b.B, b.t_star);
      },
      py::arg("counts"), py::arg("latest_peak") = false);

  m.def(
      "random_topic_matrix",
      [](int p, int K, int anchor_count, double heterogeneity, std::uint64_t seed) {
        Rng rng(seed);
        return random_topic_matrix(p, K, anchor_count, heterogeneity, rng);
      },
      py::arg("p"), py::arg("K"), py::arg("anchor_count") = 3, py::arg("heterogeneity") = 100.0,
      py::arg("seed") = 1);

  m.def(
      "random_weights",
      [](int n, int K, double alpha, double pure_fraction, std::uint64_t seed) {
        Rng rng(seed);
        return random_weights(n, K, alpha, pure_fraction, rng);
      },
      py::arg("n"), py::arg("K"), py::arg("alpha") = 1.0, py::arg("pure_fraction") = 0.2,
      py::arg("seed") = 1);

  m.def(
      "sample_counts",
      [](const MatrixXd& A, const MatrixXd& W, long N, std::uint64_t seed) {
        Rng rng(seed);
        return MatrixXd(sample_counts(A, W, N, rng).counts);
      },
      py::arg("A"), py::arg("W"), py::arg("N"), py::arg("seed") = 1);

  m.def(
      "sample_citations",
      [](const MatrixXd& W, const VectorXd& mu, double pair_prob, std::uint64_t seed,
         bool duplicate_pairs) {
        Rng rng(seed);
        return sample_citations(W, mu, pair_prob, rng, duplicate_pairs).edges;
      },
      py::arg("W"), py::arg("mu"), py::arg("pair_prob"), py::arg("seed") = 1,
      py::arg("duplicate_pairs") = false);

  m.def(
      "l1_error",
      [](const MatrixXd& A_hat, const MatrixXd& A_true) {
        auto e = l1_error(A_hat, A_true);
        return py::make_tuple(e.error, e.perm);
      },
      py::arg("A_hat"), py::arg("A_true"));

  m.def(
      "w_error",
      [](const MatrixXd& W_hat, const MatrixXd& W_true) {
        auto e = w_error(W_hat, W_true);
        return py::make_tuple(e.error, e.perm);
      },
      py::arg("W_hat"), py::arg("W_true"));
}
