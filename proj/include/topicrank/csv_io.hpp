#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topicrank/ranking.hpp"
#include "topicrank/spectral.hpp"
#include "topicrank/weights.hpp"

namespace topicrank {

// Numeric CSVs are headerless, comma-separated, 17 significant digits, so
// a save/load round trip is value-exact.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);
Eigen::MatrixXd read_matrix_csv(const std::string& path);
Eigen::VectorXd read_vector_csv(const std::string& path);

// Fit directory layout: A_hat.csv (p x K), vertices.csv ((K-1) x K),
// singular_values.csv, pi.csv (p x K), W_hat.csv (n rows, K columns),
// dominant.csv (paper_id,topic_index).
void save_fit(const std::string& dir, const TopicModelFit& fit, const TopicWeights& weights,
              const std::vector<std::string>& paper_ids);
struct LoadedFit {
  Eigen::MatrixXd A_hat;
  Eigen::MatrixXd W_hat;  // K x n
  std::vector<int> dominant;
  std::vector<std::string> paper_ids;
};
LoadedFit load_fit(const std::string& dir);

// Anchor-word report: "topic,rank,word,loading".
void write_anchor_report(const std::string& path, const Eigen::MatrixXd& loadings,
                         const std::vector<std::string>& words, int top_m);

// Scores file "entity,mu,rank" plus a JSON sidecar {"phi":..., "n_pairs":...}.
void write_scores(const std::string& csv_path, const std::string& json_path,
                  const std::vector<std::string>& entities, const ExportScores& scores);

void write_graph_edges(const std::string& path, const std::vector<GraphEdge>& edges);

}  // namespace topicrank
