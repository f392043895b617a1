// Command-line surface: preprocess, fit, select-k, rank, metrics, graph,
// synth, eval. All outputs are CSV/JSON; exit codes are 0 success,
// 2 input/parse, 3 empty result, 4 numerical failure, 5 model degeneracy.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "topicrank/corpus.hpp"
#include "topicrank/csv_io.hpp"
#include "topicrank/errors.hpp"
#include "topicrank/metrics.hpp"
#include "topicrank/ranking.hpp"
#include "topicrank/rng.hpp"
#include "topicrank/spectral.hpp"
#include "topicrank/synth.hpp"
#include "topicrank/weights.hpp"

namespace fs = std::filesystem;
using namespace topicrank;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void dump_flags(bool enabled, const std::string& out_dir, int argc, char** argv) {
  if (!enabled) return;
  nlohmann::json j;
  j["argv"] = std::vector<std::string>(argv, argv + argc);
  fs::create_directories(out_dir);
  std::ofstream out(out_dir + "/invocation.json");
  out << j.dump(2) << '\n';
}

void require_file(const std::string& path) {
  if (!fs::exists(path)) fail(Err::ParseError, "input file does not exist: " + path);
}

// For commands whose --out is a file: record the invocation next to it.
void dump_flags_for_file(bool enabled, const std::string& out_file, int argc, char** argv) {
  if (!enabled) return;
  fs::path p(out_file);
  dump_flags(true, p.has_parent_path() ? p.parent_path().string() : ".", argc, argv);
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::istringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

VectorXd parse_double_list(const std::string& csv) {
  std::vector<double> vals;
  std::istringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) vals.push_back(std::stod(tok));
  VectorXd v(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
  return v;
}

// --- preprocess ---

struct PreprocessArgs {
  std::string input, stopwords, meta, citations, out;
  int min_doc_count = 100;
  double short_doc_quantile = 0.10;
  bool no_lowercase = false;
  bool dump = false;
};

int run_preprocess(const PreprocessArgs& a, int argc, char** argv) {
  require_file(a.input);
  PreprocessConfig cfg;
  cfg.min_doc_count = a.min_doc_count;
  cfg.short_doc_quantile = a.short_doc_quantile;
  cfg.lowercase = !a.no_lowercase;
  if (!a.stopwords.empty()) {
    require_file(a.stopwords);
    cfg.stop_words = load_stopwords(a.stopwords);
  }

  auto docs = load_raw_corpus(a.input);
  std::vector<std::vector<std::string>> token_lists;
  token_lists.reserve(docs.size());
  for (const auto& d : docs) token_lists.push_back(tokenize(d, cfg));

  auto result = build_matrix(token_lists, cfg);
  fs::create_directories(a.out);
  dump_flags(a.dump, a.out, argc, argv);
  save_dtm(a.out + "/dtm.txt", result.dtm);
  {
    std::ofstream vout(a.out + "/vocab.txt");
    for (const auto& w : result.dtm.vocabulary.words) vout << w << '\n';
  }

  if (!a.meta.empty()) {
    require_file(a.meta);
    auto metas = load_metadata(a.meta);
    if (metas.size() != docs.size())
      fail(Err::ParseError, "metadata rows (" + std::to_string(metas.size()) +
                                ") do not match corpus lines (" + std::to_string(docs.size()) +
                                ")");
    std::vector<PaperMeta> kept;
    for (int idx : result.kept_docs) kept.push_back(metas[idx]);
    save_metadata(a.out + "/metadata.tsv", kept);
    if (!a.citations.empty()) {
      require_file(a.citations);
      auto graph = load_citations(a.citations, metas);
      // keep only edges between surviving documents, reindexed
      std::vector<int> new_index(metas.size(), -1);
      for (std::size_t i = 0; i < result.kept_docs.size(); ++i)
        new_index[result.kept_docs[i]] = static_cast<int>(i);
      CitationGraph filtered;
      filtered.n = static_cast<int>(kept.size());
      for (const auto& [x, y] : graph.edges)
        if (new_index[x] >= 0 && new_index[y] >= 0)
          filtered.edges.emplace_back(new_index[x], new_index[y]);
      save_citations(a.out + "/citations.tsv", filtered, kept);
    }
  }

  std::printf("vocabulary p=%d kept n=%d removed=%d\n", result.dtm.p(), result.dtm.n(),
              static_cast<int>(docs.size()) - result.dtm.n());
  return 0;
}

// --- fit ---

struct FitArgs {
  std::string dtm, meta, vocab, out, weights_mode = "ridge", k_range;
  int K = 0;
  double lambda = 0.3;
  int anchor_top = 20;
  std::uint64_t seed = 0;
  int vh_centers = 0;
  bool vh_raw = false;
  bool exact_simplex = false;
  int max_l = 30;
  bool dump = false;
};

TopicScoreOptions fit_options(const FitArgs& a) {
  TopicScoreOptions opt;
  opt.vertex_hunt.seed = a.seed;
  opt.vertex_hunt.sketch_centers = a.vh_centers;
  opt.vertex_hunt.cluster = !a.vh_raw;
  opt.exact_simplex_ls = a.exact_simplex;
  return opt;
}

int run_fit(const FitArgs& a, int argc, char** argv) {
  require_file(a.dtm);
  auto dtm = load_dtm(a.dtm);
  auto D = frequency_matrix(dtm);

  std::vector<std::string> paper_ids;
  if (!a.meta.empty()) {
    require_file(a.meta);
    auto metas = load_metadata(a.meta);
    if (static_cast<int>(metas.size()) != dtm.n())
      fail(Err::ParseError, "metadata rows do not match document count");
    for (const auto& m : metas) paper_ids.push_back(m.paper_id);
  }
  std::vector<std::string> words = dtm.vocabulary.words;
  if (!a.vocab.empty()) {
    require_file(a.vocab);
    auto stop_format = load_raw_corpus(a.vocab);
    if (static_cast<int>(stop_format.size()) == dtm.p()) words = stop_format;
  }

  fs::create_directories(a.out);
  dump_flags(a.dump, a.out, argc, argv);

  if (!a.k_range.empty()) {
    const auto pos = a.k_range.find(':');
    if (pos == std::string::npos) fail(Err::InvalidArgument, "--k-range expects lo:hi");
    const int lo = std::stoi(a.k_range.substr(0, pos));
    const int hi = std::stoi(a.k_range.substr(pos + 1));
    const int lim = static_cast<int>(std::min<long>(a.max_l, std::min(D.rows(), D.cols())));
    auto scree = select_k_scree(D, std::nullopt, lim);
    write_vector_csv(a.out + "/scree.csv", scree.singular_values);
    for (int k = lo; k <= hi; ++k) {
      auto fit = estimate_topic_matrix(D, k, fit_options(a));
      write_anchor_report(a.out + "/anchors_K" + std::to_string(k) + ".csv",
                          topic_loadings(fit.A_hat), words, a.anchor_top);
    }
    std::printf("scree and anchor reports for K in [%d,%d] written to %s\n", lo, hi,
               a.out.c_str());
    return 0;
  }

  if (a.K < 1) fail(Err::InvalidArgument, "--k is required");
  auto fit = estimate_topic_matrix(D, a.K, fit_options(a));
  TopicWeights weights;
  if (a.weights_mode == "ridge")
    weights = estimate_weights_ridge(fit.A_hat, D, a.lambda);
  else if (a.weights_mode == "wls")
    weights = estimate_weights_wls(fit.A_hat, D, fit.embedding.M_diag);
  else
    fail(Err::InvalidArgument, "--weights must be ridge or wls");

  save_fit(a.out, fit, weights, paper_ids);
  write_anchor_report(a.out + "/anchors.csv", topic_loadings(fit.A_hat), words, a.anchor_top);
  std::printf("fit K=%d p=%d n=%d written to %s\n", a.K, dtm.p(), dtm.n(), a.out.c_str());
  return 0;
}

// --- select-k ---

struct SelectKArgs {
  std::string dtm, out, matrix = "d";
  int max_l = 30;
  std::optional<double> threshold;
  bool dump = false;
};

int run_select_k(const SelectKArgs& a, int argc, char** argv) {
  require_file(a.dtm);
  auto dtm = load_dtm(a.dtm);
  SparseMatrixD M = a.matrix == "x" ? dtm.counts : frequency_matrix(dtm);
  const int max_l = std::min<long>(a.max_l, std::min(M.rows(), M.cols()));
  auto report = select_k_scree(M, a.threshold, max_l);

  fs::path out_path(a.out);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  dump_flags(a.dump, out_path.has_parent_path() ? out_path.parent_path().string() : ".", argc,
             argv);
  std::ofstream out(a.out);
  if (!out) fail(Err::ParseError, "cannot write file: " + a.out);
  out << "rank,sigma\n";
  for (long i = 0; i < report.singular_values.size(); ++i)
    out << (i + 1) << ',' << fmt(report.singular_values[i]) << '\n';

  if (report.k_hat)
    std::printf("k_hat=%d at threshold %s\n", *report.k_hat, fmt(*report.threshold).c_str());
  else
    std::printf("top-%d singular values written to %s\n", max_l, a.out.c_str());
  return 0;
}

// --- rank ---

struct RankArgs {
  std::string mode, fit, meta, citations, out;
  int window = 10;
  std::string base_years = "2014,2015";
  double alpha = 0.85;
  bool drop_self_citations = false;
  std::string count_pairs = "geq1";
  bool dump = false;
};

int run_rank(const RankArgs& a, int argc, char** argv) {
  fs::create_directories(a.out);
  dump_flags(a.dump, a.out, argc, argv);
  StiglerOptions sopt;
  sopt.count_pairs_geq1 = a.count_pairs != "eq1";

  if (a.mode == "topics") {
    auto fit = load_fit(a.fit);
    require_file(a.meta);
    require_file(a.citations);
    auto metas = load_metadata(a.meta);
    if (static_cast<long>(metas.size()) != fit.W_hat.cols())
      fail(Err::ParseError, "metadata rows do not match the fitted weight matrix");
    auto graph = load_citations(a.citations, metas);
    auto scores = fit_export_scores(fit.W_hat, graph, sopt);
    std::vector<std::string> topics;
    for (long k = 0; k < scores.mu.size(); ++k) topics.push_back("topic" + std::to_string(k));
    write_scores(a.out + "/scores.csv", a.out + "/scores.json", topics, scores);
    std::printf("topic scores written to %s (phi=%s, pairs=%ld)\n", a.out.c_str(),
                scores.phi_defined ? fmt(scores.phi).c_str() : "undefined", scores.n_pairs);
    return 0;
  }

  require_file(a.meta);
  require_file(a.citations);
  auto metas = load_metadata(a.meta);
  auto graph = load_citations(a.citations, metas);
  auto base_years = parse_int_list(a.base_years);
  auto pc = journal_citation_matrix(metas, graph, a.window, base_years);

  if (a.mode == "journals") {
    auto scores = fit_stigler(pc, sopt);
    write_scores(a.out + "/scores.csv", a.out + "/scores.json", pc.entities, scores);
    std::printf("journal scores written to %s (phi=%s, pairs=%ld)\n", a.out.c_str(),
                scores.phi_defined ? fmt(scores.phi).c_str() : "undefined", scores.n_pairs);
    return 0;
  }
  if (a.mode == "pagerank") {
    // The paired-comparison matrix excludes within-journal citations; for
    // PageRank the diagonal matters, so rebuild it unless dropped.
    Eigen::MatrixXd adjacency = pc.wins;
    if (!a.drop_self_citations) {
      std::unordered_map<std::string, int> idx;
      for (std::size_t k = 0; k < pc.entities.size(); ++k) idx[pc.entities[k]] = k;
      for (const auto& [i, j] : graph.edges) {
        const auto& citer = metas[i];
        const auto& cited = metas[j];
        if (citer.journal_id != cited.journal_id) continue;
        bool in_base = false;
        for (int y : base_years) in_base |= citer.year == y;
        if (!in_base) continue;
        if (cited.year < citer.year - a.window + 1 || cited.year > citer.year) continue;
        const int k = idx.at(citer.journal_id);
        adjacency(k, k) += 1.0;
      }
    }
    VectorXd pr = pagerank(adjacency, a.alpha);
    ExportScores as_scores;
    as_scores.mu = pr;
    as_scores.phi_defined = false;
    as_scores.n_pairs = static_cast<long>(graph.edges.size());
    write_scores(a.out + "/scores.csv", a.out + "/scores.json", pc.entities, as_scores);
    std::printf("pagerank scores written to %s (alpha=%s)\n", a.out.c_str(),
                fmt(a.alpha).c_str());
    return 0;
  }
  fail(Err::InvalidArgument, "--mode must be topics, journals, or pagerank");
}

// --- graph ---

struct GraphArgs {
  std::string fit, meta, citations, out, mode = "dominant";
  double edge_cutoff = -1.0;  // default depends on mode
  bool dump = false;
};

int run_graph(const GraphArgs& a, int argc, char** argv) {
  auto fit = load_fit(a.fit);
  require_file(a.meta);
  require_file(a.citations);
  auto metas = load_metadata(a.meta);
  if (static_cast<long>(metas.size()) != fit.W_hat.cols())
    fail(Err::ParseError, "metadata rows do not match the fitted weight matrix");
  auto graph = load_citations(a.citations, metas);

  const auto mode = a.mode == "weighted" ? CrossTopicMode::Weighted : CrossTopicMode::Dominant;
  const double cutoff =
      a.edge_cutoff >= 0 ? a.edge_cutoff : (mode == CrossTopicMode::Dominant ? 0.09 : 0.11);

  auto ct = cross_topic_graph(fit.W_hat, graph, mode);
  fs::create_directories(a.out);
  dump_flags(a.dump, a.out, argc, argv);
  write_matrix_csv(a.out + "/graph_full.csv", ct.P);
  write_matrix_csv(a.out + "/graph_counts.csv", ct.N_counts);
  write_graph_edges(a.out + "/graph_edges.csv", threshold_edges(ct, cutoff));
  std::printf("cross-topic graph (%s, cutoff %s) written to %s\n", a.mode.c_str(),
              fmt(cutoff).c_str(), a.out.c_str());
  return 0;
}

// --- metrics ---

struct MetricsArgs {
  std::string meta, citations, fit, out;
  int top_by_peak = 300;
  std::string tstar = "earliest";
  int last_year = 0;
  double fraction = 0.5;
  std::string group_by = "all";
  int top = 0;
  bool dump = false;
};

std::vector<std::pair<std::string, std::vector<int>>> author_paper_sets(
    const std::vector<PaperMeta>& metas) {
  std::map<std::string, std::vector<int>> by_author;
  for (int i = 0; i < static_cast<int>(metas.size()); ++i)
    for (const auto& a : metas[i].author_ids) by_author[a].push_back(i);
  return {by_author.begin(), by_author.end()};
}

int run_metrics_counts(const MetricsArgs& a, int argc, char** argv) {
  require_file(a.meta);
  auto metas = load_metadata(a.meta);
  auto table = paper_counts(metas);
  dump_flags_for_file(a.dump, a.out, argc, argv);
  fs::path out_path(a.out);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  std::ofstream out(a.out);
  if (!out) fail(Err::ParseError, "cannot write file: " + a.out);
  out << "year,papers,active_authors,papers_per_author_standard,papers_per_author_fractional,"
         "authors_per_paper,m1,m2,m3,m4_plus,seniority_0_2,seniority_3_5,seniority_6_10,"
         "seniority_11_plus\n";
  for (const auto& r : table)
    out << r.year << ',' << r.papers << ',' << r.active_authors << ','
        << fmt(r.papers_per_author_standard) << ',' << fmt(r.papers_per_author_fractional) << ','
        << fmt(r.authors_per_paper) << ',' << r.m1 << ',' << r.m2 << ',' << r.m3 << ','
        << r.m4_plus << ',' << r.seniority_0_2 << ',' << r.seniority_3_5 << ','
        << r.seniority_6_10 << ',' << r.seniority_11_plus << '\n';
  std::printf("%zu year rows written to %s\n", table.size(), a.out.c_str());
  return 0;
}

int run_metrics_centrality(const MetricsArgs& a, int argc, char** argv) {
  require_file(a.meta);
  require_file(a.citations);
  auto metas = load_metadata(a.meta);
  auto graph = load_citations(a.citations, metas);
  auto tables = centrality(metas, graph);
  fs::create_directories(a.out);
  dump_flags(a.dump, a.out, argc, argv);
  {
    std::ofstream out(a.out + "/centrality_authors.csv");
    out << "author,coauthors,citers,citations\n";
    long limit = a.top > 0 ? a.top : static_cast<long>(tables.authors.size());
    for (long i = 0; i < limit && i < static_cast<long>(tables.authors.size()); ++i) {
      const auto& r = tables.authors[i];
      out << r.author_id << ',' << r.coauthors << ',' << r.citers << ',' << r.citations << '\n';
    }
  }
  {
    std::ofstream out(a.out + "/centrality_papers.csv");
    out << "paper_id,citations\n";
    long limit = a.top > 0 ? a.top : static_cast<long>(tables.papers.size());
    for (long i = 0; i < limit && i < static_cast<long>(tables.papers.size()); ++i)
      out << tables.papers[i].paper_id << ',' << tables.papers[i].citations << '\n';
  }
  std::printf("centrality tables written to %s\n", a.out.c_str());
  return 0;
}

int run_metrics_sleeping_beauty(const MetricsArgs& a, int argc, char** argv) {
  require_file(a.meta);
  require_file(a.citations);
  auto metas = load_metadata(a.meta);
  auto graph = load_citations(a.citations, metas);
  int last_year = a.last_year;
  if (last_year == 0)
    for (const auto& m : metas) last_year = std::max(last_year, m.year);
  auto curves = citation_curves(metas, graph, last_year);
  auto rows = rank_sleeping_beauties(curves, a.top_by_peak, a.tstar == "latest");
  dump_flags_for_file(a.dump, a.out, argc, argv);
  fs::path out_path(a.out);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  std::ofstream out(a.out);
  if (!out) fail(Err::ParseError, "cannot write file: " + a.out);
  out << "paper_id,TC,B,t_star\n";
  for (const auto& r : rows)
    out << r.paper_id << ',' << r.total_citations << ',' << fmt(r.B) << ',' << r.t_star << '\n';
  std::printf("%zu sleeping-beauty rows written to %s\n", rows.size(), a.out.c_str());
  return 0;
}

int run_metrics_interest(const MetricsArgs& a, int argc, char** argv) {
  require_file(a.meta);
  auto metas = load_metadata(a.meta);
  auto fit = load_fit(a.fit);
  if (static_cast<long>(metas.size()) != fit.W_hat.cols())
    fail(Err::ParseError, "metadata rows do not match the fitted weight matrix");
  auto interests = topic_interest(author_paper_sets(metas), fit.W_hat);
  dump_flags_for_file(a.dump, a.out, argc, argv);
  fs::path out_path(a.out);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  std::ofstream out(a.out);
  if (!out) fail(Err::ParseError, "cannot write file: " + a.out);
  const int K = static_cast<int>(fit.W_hat.rows());
  out << "author,papers";
  for (int k = 0; k < K; ++k) out << ",z_" << k;
  out << ",major_topics\n";
  for (const auto& ti : interests) {
    out << ti.author_id << ',' << ti.paper_count;
    for (int k = 0; k < K; ++k) out << ',' << fmt(ti.z[k]);
    auto major = major_topics(ti.z, a.fraction);
    out << ',';
    for (std::size_t i = 0; i < major.topics.size(); ++i) {
      if (i) out << ';';
      out << major.topics[i];
    }
    out << '\n';
  }
  std::printf("%zu author rows written to %s\n", interests.size(), a.out.c_str());
  return 0;
}

int run_metrics_trends(const MetricsArgs& a, int argc, char** argv) {
  require_file(a.meta);
  auto metas = load_metadata(a.meta);
  auto fit = load_fit(a.fit);
  if (static_cast<long>(metas.size()) != fit.W_hat.cols())
    fail(Err::ParseError, "metadata rows do not match the fitted weight matrix");
  auto rows = topic_trends(fit.W_hat, metas,
                           a.group_by == "journal" ? TrendGroup::Journal : TrendGroup::All);
  dump_flags_for_file(a.dump, a.out, argc, argv);
  fs::path out_path(a.out);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  std::ofstream out(a.out);
  if (!out) fail(Err::ParseError, "cannot write file: " + a.out);
  const int K = static_cast<int>(fit.W_hat.rows());
  out << "group,year";
  for (int k = 0; k < K; ++k) out << ",w_" << k;
  out << '\n';
  for (const auto& r : rows) {
    out << r.group << ',' << r.year;
    for (int k = 0; k < K; ++k) out << ',' << fmt(r.w[k]);
    out << '\n';
  }
  std::printf("%zu trend rows written to %s\n", rows.size(), a.out.c_str());
  return 0;
}

// --- synth ---

struct SynthArgs {
  int p = 100, n = 500, K = 3;
  long doc_length = 300;
  int anchor_count = 3;
  double heterogeneity = 100.0;
  double dirichlet_alpha = 1.0;
  double pure_fraction = 0.2;
  double pair_prob = 0.0;
  std::string mu;
  bool duplicate_pairs = false;
  std::uint64_t seed = 1;
  std::string out;
  int years_start = 2000, years_span = 16, journals = 4;
  bool emit_raw = false;
  bool dump = false;
};

int run_synth(const SynthArgs& a, int argc, char** argv) {
  Rng master(a.seed);
  Rng rng_a = master.fork(1);
  Rng rng_w = master.fork(2);
  Rng rng_x = master.fork(3);
  Rng rng_c = master.fork(4);

  VectorXd mu;
  if (!a.mu.empty()) {
    mu = parse_double_list(a.mu);
    if (mu.size() != a.K) fail(Err::InvalidArgument, "--mu needs exactly K values");
  } else {
    mu = VectorXd::LinSpaced(a.K, 1.0, -1.0);
  }
  // enforce the median-zero identification on the ground truth
  {
    VectorXd sorted = mu;
    std::sort(sorted.data(), sorted.data() + sorted.size());
    const long m = sorted.size();
    const double med =
        (m % 2 == 1) ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    mu.array() -= med;
  }

  MatrixXd A = random_topic_matrix(a.p, a.K, a.anchor_count, a.heterogeneity, rng_a);
  MatrixXd W = random_weights(a.n, a.K, a.dirichlet_alpha, a.pure_fraction, rng_w);
  auto dtm = sample_counts(A, W, a.doc_length, rng_x);
  auto graph = sample_citations(W, mu, a.pair_prob, rng_c, a.duplicate_pairs);

  // Metadata attributes are drawn from their own stream so year, journal,
  // and author assignments stay uncorrelated.
  Rng rng_meta = master.fork(5);
  std::vector<PaperMeta> metas;
  for (int i = 0; i < a.n; ++i) {
    PaperMeta m;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "p%06d", i);
    m.paper_id = buf;
    m.year = a.years_start + static_cast<int>(rng_meta.uniform_int(a.years_span));
    std::snprintf(buf, sizeof(buf), "J%02d", static_cast<int>(rng_meta.uniform_int(a.journals)));
    m.journal_id = buf;
    const int n_auth = 1 + static_cast<int>(rng_meta.uniform_int(3));
    for (int k = 0; k < n_auth; ++k) {
      std::snprintf(buf, sizeof(buf), "a%04d", static_cast<int>(rng_meta.uniform_int(357)));
      m.author_ids.push_back(buf);
    }
    std::sort(m.author_ids.begin(), m.author_ids.end());
    m.author_ids.erase(std::unique(m.author_ids.begin(), m.author_ids.end()), m.author_ids.end());
    metas.push_back(std::move(m));
  }

  fs::create_directories(a.out);
  dump_flags(a.dump, a.out, argc, argv);
  save_dtm(a.out + "/dtm.txt", dtm);
  save_metadata(a.out + "/metadata.tsv", metas);
  save_citations(a.out + "/citations.tsv", graph, metas);
  write_matrix_csv(a.out + "/A_true.csv", A);
  write_matrix_csv(a.out + "/W_true.csv", W.transpose());
  write_vector_csv(a.out + "/mu_true.csv", mu);
  if (a.emit_raw) {
    std::ofstream raw(a.out + "/raw.txt");
    for (int i = 0; i < a.n; ++i) {
      bool first = true;
      for (SparseMatrixD::InnerIterator it(dtm.counts, i); it; ++it)
        for (long c = 0; c < static_cast<long>(it.value()); ++c) {
          if (!first) raw << ' ';
          raw << dtm.vocabulary.words[it.row()];
          first = false;
        }
      raw << '\n';
    }
  }
  std::printf("synthetic corpus p=%d n=%d K=%d edges=%zu written to %s\n", a.p, a.n, a.K,
              graph.edges.size(), a.out.c_str());
  return 0;
}

// --- eval ---

struct EvalArgs {
  std::string fit, truth, scores;
};

int run_eval(const EvalArgs& a) {
  auto fit = load_fit(a.fit);
  MatrixXd A_true = read_matrix_csv(a.truth + "/A_true.csv");
  MatrixXd W_true = read_matrix_csv(a.truth + "/W_true.csv").transpose();

  auto a_err = l1_error(fit.A_hat, A_true);
  auto w_err = w_error(fit.W_hat, W_true);

  nlohmann::json report;
  report["l1_error"] = a_err.error;
  report["w_error"] = w_err.error;
  report["permutation"] = a_err.perm;

  const std::string mu_path = a.truth + "/mu_true.csv";
  if (!a.scores.empty() && fs::exists(mu_path)) {
    VectorXd mu_true = read_vector_csv(mu_path);
    // scores.csv: entity,mu,rank
    std::ifstream in(a.scores);
    if (!in) fail(Err::ParseError, "cannot open file: " + a.scores);
    std::string line;
    std::getline(in, line);
    VectorXd mu_hat(mu_true.size());
    long idx = 0;
    while (std::getline(in, line) && idx < mu_hat.size()) {
      const auto first = line.find(',');
      const auto second = line.find(',', first + 1);
      mu_hat[idx++] = std::stod(line.substr(first + 1, second - first - 1));
    }
    VectorXd mu_aligned(mu_hat.size());
    for (long k = 0; k < mu_hat.size(); ++k) mu_aligned[a_err.perm[k]] = mu_hat[k];
    report["mu_linf"] = (mu_aligned - mu_true).cwiseAbs().maxCoeff();
  }

  std::printf("%s\n", report.dump().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic estimation, ranking, and bibliometrics toolkit"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* cmd_pre = app.add_subcommand("preprocess", "Tokenize a raw corpus into corpus files");
  cmd_pre->add_option("--input", pre.input, "raw corpus, one document per line")->required();
  cmd_pre->add_option("--stopwords", pre.stopwords, "stop-word file, one token per line");
  cmd_pre->add_option("--meta", pre.meta, "metadata file aligned with the corpus");
  cmd_pre->add_option("--citations", pre.citations, "citation file (requires --meta)");
  cmd_pre->add_option("--out", pre.out, "output directory")->required();
  cmd_pre->add_option("--min-doc-count", pre.min_doc_count);
  cmd_pre->add_option("--short-doc-quantile", pre.short_doc_quantile);
  cmd_pre->add_flag("--no-lowercase", pre.no_lowercase);
  cmd_pre->add_flag("--dump-flags", pre.dump);

  FitArgs fit;
  auto* cmd_fit = app.add_subcommand("fit", "Estimate the topic matrix and weights");
  cmd_fit->add_option("--dtm", fit.dtm, "document-term triplet file")->required();
  cmd_fit->add_option("--meta", fit.meta);
  cmd_fit->add_option("--vocab", fit.vocab);
  cmd_fit->add_option("--k", fit.K);
  cmd_fit->add_option("--k-range", fit.k_range, "lo:hi scree/anchor sweep");
  cmd_fit->add_option("--out", fit.out)->required();
  cmd_fit->add_option("--lambda", fit.lambda);
  cmd_fit->add_option("--weights", fit.weights_mode, "ridge or wls");
  cmd_fit->add_option("--anchor-top", fit.anchor_top);
  cmd_fit->add_option("--seed", fit.seed);
  cmd_fit->add_option("--vh-centers", fit.vh_centers);
  cmd_fit->add_flag("--vh-raw", fit.vh_raw, "successive projection on raw rows");
  cmd_fit->add_flag("--exact-simplex", fit.exact_simplex);
  cmd_fit->add_option("--max-l", fit.max_l);
  cmd_fit->add_flag("--dump-flags", fit.dump);

  SelectKArgs sk;
  auto* cmd_sk = app.add_subcommand("select-k", "Scree report for choosing K");
  cmd_sk->add_option("--dtm", sk.dtm)->required();
  cmd_sk->add_option("--out", sk.out)->required();
  cmd_sk->add_option("--max-l", sk.max_l);
  cmd_sk->add_option("--matrix", sk.matrix, "d (frequencies) or x (counts)");
  double sk_threshold = 0.0;
  auto* thr = cmd_sk->add_option("--threshold", sk_threshold);
  cmd_sk->add_flag("--dump-flags", sk.dump);

  RankArgs rank;
  auto* cmd_rank = app.add_subcommand("rank", "Export scores for topics or journals");
  cmd_rank->add_option("--mode", rank.mode, "topics, journals, or pagerank")->required();
  cmd_rank->add_option("--fit", rank.fit);
  cmd_rank->add_option("--meta", rank.meta);
  cmd_rank->add_option("--citations", rank.citations);
  cmd_rank->add_option("--out", rank.out)->required();
  cmd_rank->add_option("--window", rank.window);
  cmd_rank->add_option("--base-years", rank.base_years);
  cmd_rank->add_option("--alpha", rank.alpha);
  cmd_rank->add_flag("--drop-self-citations", rank.drop_self_citations);
  cmd_rank->add_option("--count-pairs", rank.count_pairs, "geq1 or eq1");
  cmd_rank->add_flag("--dump-flags", rank.dump);

  GraphArgs graph;
  auto* cmd_graph = app.add_subcommand("graph", "Cross-topic citation graph");
  cmd_graph->add_option("--fit", graph.fit)->required();
  cmd_graph->add_option("--meta", graph.meta)->required();
  cmd_graph->add_option("--citations", graph.citations)->required();
  cmd_graph->add_option("--out", graph.out)->required();
  cmd_graph->add_option("--mode", graph.mode, "dominant or weighted");
  cmd_graph->add_option("--edge-cutoff", graph.edge_cutoff);
  cmd_graph->add_flag("--dump-flags", graph.dump);

  MetricsArgs met;
  auto* cmd_met = app.add_subcommand("metrics", "Bibliometric tables");
  cmd_met->require_subcommand(1);
  auto* met_counts = cmd_met->add_subcommand("counts", "Yearly paper and author counts");
  met_counts->add_option("--meta", met.meta)->required();
  met_counts->add_option("--out", met.out)->required();
  auto* met_cent = cmd_met->add_subcommand("centrality", "Coauthor/citer/citation tables");
  met_cent->add_option("--meta", met.meta)->required();
  met_cent->add_option("--citations", met.citations)->required();
  met_cent->add_option("--out", met.out)->required();
  met_cent->add_option("--top", met.top, "keep only the top rows (0 = all)");
  auto* met_sb = cmd_met->add_subcommand("sleeping-beauty", "Citation-delay ranking");
  met_sb->add_option("--meta", met.meta)->required();
  met_sb->add_option("--citations", met.citations)->required();
  met_sb->add_option("--out", met.out)->required();
  met_sb->add_option("--top-by-peak", met.top_by_peak);
  met_sb->add_option("--tstar", met.tstar, "earliest or latest");
  met_sb->add_option("--last-year", met.last_year);
  auto* met_int = cmd_met->add_subcommand("interest", "Centered author topic interests");
  met_int->add_option("--meta", met.meta)->required();
  met_int->add_option("--fit", met.fit)->required();
  met_int->add_option("--out", met.out)->required();
  met_int->add_option("--fraction", met.fraction);
  auto* met_tr = cmd_met->add_subcommand("trends", "Smoothed yearly topic weights");
  met_tr->add_option("--meta", met.meta)->required();
  met_tr->add_option("--fit", met.fit)->required();
  met_tr->add_option("--out", met.out)->required();
  met_tr->add_option("--group-by", met.group_by, "all or journal");
  for (auto* c : {met_counts, met_cent, met_sb, met_int, met_tr})
    c->add_flag("--dump-flags", met.dump);

  SynthArgs synth;
  auto* cmd_synth = app.add_subcommand("synth", "Generate a ground-truth corpus");
  cmd_synth->add_option("--p", synth.p);
  cmd_synth->add_option("--n", synth.n);
  cmd_synth->add_option("--k", synth.K);
  cmd_synth->add_option("--doc-length", synth.doc_length);
  cmd_synth->add_option("--anchor-count", synth.anchor_count);
  cmd_synth->add_option("--heterogeneity", synth.heterogeneity);
  cmd_synth->add_option("--dirichlet-alpha", synth.dirichlet_alpha);
  cmd_synth->add_option("--pure-fraction", synth.pure_fraction);
  cmd_synth->add_option("--pair-prob", synth.pair_prob);
  cmd_synth->add_option("--mu", synth.mu, "comma-separated true export scores");
  cmd_synth->add_flag("--duplicate-pairs", synth.duplicate_pairs);
  cmd_synth->add_option("--seed", synth.seed);
  cmd_synth->add_option("--out", synth.out)->required();
  cmd_synth->add_option("--years-start", synth.years_start);
  cmd_synth->add_option("--years-span", synth.years_span);
  cmd_synth->add_option("--journals", synth.journals);
  cmd_synth->add_flag("--emit-raw", synth.emit_raw);
  cmd_synth->add_flag("--dump-flags", synth.dump);

  EvalArgs eval;
  auto* cmd_eval = app.add_subcommand("eval", "Compare a fit against generator truth");
  cmd_eval->add_option("--fit", eval.fit)->required();
  cmd_eval->add_option("--truth", eval.truth)->required();
  cmd_eval->add_option("--scores", eval.scores, "scores.csv for mu comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_pre) return run_preprocess(pre, argc, argv);
    if (*cmd_fit) return run_fit(fit, argc, argv);
    if (*cmd_sk) {
      if (*thr) sk.threshold = sk_threshold;
      return run_select_k(sk, argc, argv);
    }
    if (*cmd_rank) return run_rank(rank, argc, argv);
    if (*cmd_graph) return run_graph(graph, argc, argv);
    if (*met_counts) return run_metrics_counts(met, argc, argv);
    if (*met_cent) return run_metrics_centrality(met, argc, argv);
    if (*met_sb) return run_metrics_sleeping_beauty(met, argc, argv);
    if (*met_int) return run_metrics_interest(met, argc, argv);
    if (*met_tr) return run_metrics_trends(met, argc, argv);
    if (*cmd_synth) return run_synth(synth, argc, argv);
    if (*cmd_eval) return run_eval(eval);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_category(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
