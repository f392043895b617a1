#include "topicrank/csv_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "topicrank/errors.hpp"

namespace topicrank {

namespace {

namespace fs = std::filesystem;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Err::ParseError, "cannot write file: " + path);
  return out;
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(Err::ParseError, path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      fail(Err::ParseError, path + ":" + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  auto out = open_out(path);
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << fmt(m(i, j));
    }
    out << '\n';
  }
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  auto out = open_out(path);
  for (long i = 0; i < v.size(); ++i) out << fmt(v[i]) << '\n';
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  auto rows = read_rows(path);
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  auto rows = read_rows(path);
  Eigen::VectorXd v(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 1) fail(Err::ParseError, path + ": expected one column");
    v[i] = rows[i][0];
  }
  return v;
}

void save_fit(const std::string& dir, const TopicModelFit& fit, const TopicWeights& weights,
              const std::vector<std::string>& paper_ids) {
  fs::create_directories(dir);
  write_matrix_csv(dir + "/A_hat.csv", fit.A_hat);
  write_matrix_csv(dir + "/vertices.csv", fit.vertices.V);
  write_vector_csv(dir + "/singular_values.csv", fit.embedding.singular_values);
  write_matrix_csv(dir + "/pi.csv", fit.pi);
  write_matrix_csv(dir + "/W_hat.csv", weights.W_hat.transpose());
  auto out = open_out(dir + "/dominant.csv");
  out << "paper_id,topic_index\n";
  for (std::size_t i = 0; i < weights.dominant.size(); ++i) {
    const std::string id = i < paper_ids.size() ? paper_ids[i] : "d" + std::to_string(i);
    out << id << ',' << weights.dominant[i] << '\n';
  }
}

LoadedFit load_fit(const std::string& dir) {
  LoadedFit fit;
  fit.A_hat = read_matrix_csv(dir + "/A_hat.csv");
  fit.W_hat = read_matrix_csv(dir + "/W_hat.csv").transpose();
  std::ifstream in(dir + "/dominant.csv");
  if (!in) fail(Err::ParseError, "cannot open file: " + dir + "/dominant.csv");
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto pos = line.rfind(',');
    if (pos == std::string::npos) fail(Err::ParseError, dir + "/dominant.csv: bad row " + line);
    fit.paper_ids.push_back(line.substr(0, pos));
    fit.dominant.push_back(std::stoi(line.substr(pos + 1)));
  }
  return fit;
}

void write_anchor_report(const std::string& path, const Eigen::MatrixXd& loadings,
                         const std::vector<std::string>& words, int top_m) {
  auto out = open_out(path);
  out << "topic,rank,word,loading\n";
  for (int k = 0; k < loadings.cols(); ++k) {
    auto top = frequent_anchor_words(loadings, k, std::min<int>(top_m, loadings.rows()));
    for (std::size_t r = 0; r < top.size(); ++r) {
      const int j = top[r];
      const std::string w =
          j < static_cast<int>(words.size()) ? words[j] : "w" + std::to_string(j);
      out << k << ',' << (r + 1) << ',' << w << ',' << fmt(loadings(j, k)) << '\n';
    }
  }
}

void write_scores(const std::string& csv_path, const std::string& json_path,
                  const std::vector<std::string>& entities, const ExportScores& scores) {
  std::vector<int> order(scores.mu.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores.mu[a] != scores.mu[b]) return scores.mu[a] > scores.mu[b];
    return a < b;
  });
  std::vector<int> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r) + 1;

  auto out = open_out(csv_path);
  out << "entity,mu,rank\n";
  for (long k = 0; k < scores.mu.size(); ++k) {
    const std::string name =
        k < static_cast<long>(entities.size()) ? entities[k] : "e" + std::to_string(k);
    out << name << ',' << fmt(scores.mu[k]) << ',' << rank[k] << '\n';
  }

  nlohmann::json sidecar;
  if (scores.phi_defined)
    sidecar["phi"] = scores.phi;
  else
    sidecar["phi"] = nullptr;
  sidecar["n_pairs"] = scores.n_pairs;
  sidecar["degenerate"] = scores.degenerate;
  auto js = open_out(json_path);
  js << sidecar.dump(2) << '\n';
}

void write_graph_edges(const std::string& path, const std::vector<GraphEdge>& edges) {
  auto out = open_out(path);
  out << "from_topic,to_topic,weight\n";
  for (const auto& e : edges) out << e.from << ',' << e.to << ',' << fmt(e.weight) << '\n';
}

}  // namespace topicrank
