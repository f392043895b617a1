#include "topicrank/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "topicrank/errors.hpp"

namespace topicrank {

namespace {

bool all_digits(const std::string& tok) {
  for (unsigned char c : tok)
    if (!std::isdigit(c)) return false;
  return !tok.empty();
}

std::ifstream open_or_fail(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open file: " + path);
  return in;
}

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::vector<std::string> tokenize(const std::string& raw_text, const PreprocessConfig& config) {
  std::string cleaned;
  cleaned.reserve(raw_text.size());
  for (unsigned char c : raw_text) {
    if (std::ispunct(c)) continue;
    cleaned.push_back(config.lowercase ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }
  std::vector<std::string> tokens;
  std::istringstream ss(cleaned);
  std::string tok;
  while (ss >> tok) {
    if (all_digits(tok)) continue;
    if (config.stop_words.count(tok)) continue;
    tokens.push_back(tok);
  }
  return tokens;
}

BuildResult build_matrix(const std::vector<std::vector<std::string>>& token_lists,
                         const PreprocessConfig& config) {
  if (config.min_doc_count < 1) fail(Err::InvalidArgument, "min_doc_count must be >= 1");
  if (config.short_doc_quantile < 0.0 || config.short_doc_quantile >= 1.0)
    fail(Err::InvalidArgument, "short_doc_quantile must be in [0,1)");
  const int n = static_cast<int>(token_lists.size());
  if (n < 1) fail(Err::InvalidArgument, "build_matrix needs at least one document");

  // Document frequency per token, and first-appearance order.
  std::unordered_map<std::string, int> doc_freq;
  std::vector<std::string> appearance;
  for (const auto& doc : token_lists) {
    std::set<std::string> seen;
    for (const auto& tok : doc) {
      if (seen.insert(tok).second) {
        auto [it, fresh] = doc_freq.emplace(tok, 0);
        if (fresh) appearance.push_back(tok);
        ++it->second;
      }
    }
  }

  Vocabulary vocab;
  for (const auto& tok : appearance)
    if (doc_freq[tok] >= config.min_doc_count) vocab.push(tok);
  if (vocab.size() == 0)
    fail(Err::EmptyVocabulary, "no token appears in at least " +
                                   std::to_string(config.min_doc_count) + " documents");

  // In-vocabulary length of each document, computed before removal so the
  // quantile is taken over the full corpus.
  std::vector<long> len(n, 0);
  for (int i = 0; i < n; ++i)
    for (const auto& tok : token_lists[i])
      if (vocab.index.count(tok)) ++len[i];

  const int n_remove = static_cast<int>(std::floor(config.short_doc_quantile * n));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Shortest first; equal lengths drop the later document.
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (len[a] != len[b]) return len[a] < len[b];
    return a > b;
  });
  std::vector<char> removed(n, 0);
  for (int r = 0; r < n_remove; ++r) removed[order[r]] = 1;

  BuildResult out;
  for (int i = 0; i < n; ++i)
    if (!removed[i]) out.kept_docs.push_back(i);
  if (out.kept_docs.empty()) fail(Err::AllDocumentsRemoved, "no document survives preprocessing");

  const int p = vocab.size();
  const int m = static_cast<int>(out.kept_docs.size());
  std::vector<Eigen::Triplet<double>> trips;
  std::vector<long> lengths(m);
  std::vector<double> col(p);
  for (int c = 0; c < m; ++c) {
    std::fill(col.begin(), col.end(), 0.0);
    for (const auto& tok : token_lists[out.kept_docs[c]]) {
      auto it = vocab.index.find(tok);
      if (it != vocab.index.end()) col[it->second] += 1.0;
    }
    for (int j = 0; j < p; ++j)
      if (col[j] != 0.0) trips.emplace_back(j, c, col[j]);
    lengths[c] = len[out.kept_docs[c]];
  }

  out.dtm.counts.resize(p, m);
  out.dtm.counts.setFromTriplets(trips.begin(), trips.end());
  out.dtm.doc_lengths = std::move(lengths);
  out.dtm.vocabulary = std::move(vocab);
  return out;
}

SparseMatrixD frequency_matrix(const DocumentTermMatrix& dtm) {
  SparseMatrixD D = dtm.counts;
  for (int i = 0; i < D.outerSize(); ++i) {
    const long N = dtm.doc_lengths[i];
    if (N <= 0) fail(Err::ZeroLengthDocument, "document " + std::to_string(i) + " has length 0");
    for (SparseMatrixD::InnerIterator it(D, i); it; ++it)
      it.valueRef() /= static_cast<double>(N);
  }
  return D;
}

DocumentTermMatrix load_dtm(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  long p = 0, n = 0, nnz = 0;
  std::string line;
  if (!std::getline(in, line)) fail(Err::ParseError, path + ":1: missing header");
  if (std::sscanf(line.c_str(), "%ld %ld %ld", &p, &n, &nnz) != 3 || p <= 0 || n <= 0 || nnz < 0)
    fail(Err::ParseError, path + ":1: header must be 'p n nnz'");

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(nnz);
  for (long k = 0; k < nnz; ++k) {
    if (!std::getline(in, line))
      fail(Err::ParseError, path + ":" + std::to_string(k + 2) + ": unexpected end of file");
    long r = 0, c = 0, v = 0;
    if (std::sscanf(line.c_str(), "%ld %ld %ld", &r, &c, &v) != 3 || r < 0 || r >= p || c < 0 ||
        c >= n || v < 0)
      fail(Err::ParseError, path + ":" + std::to_string(k + 2) + ": bad triplet '" + line + "'");
    trips.emplace_back(r, c, static_cast<double>(v));
  }

  DocumentTermMatrix dtm;
  dtm.counts.resize(p, n);
  dtm.counts.setFromTriplets(trips.begin(), trips.end());
  dtm.doc_lengths.assign(n, 0);
  for (int i = 0; i < dtm.counts.outerSize(); ++i)
    for (SparseMatrixD::InnerIterator it(dtm.counts, i); it; ++it)
      dtm.doc_lengths[i] += static_cast<long>(it.value());
  for (long j = 0; j < p; ++j) dtm.vocabulary.push("w" + std::to_string(j));
  return dtm;
}

std::vector<std::string> load_raw_corpus(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  std::vector<std::string> docs;
  std::string line;
  while (std::getline(in, line)) docs.push_back(line);
  return docs;
}

std::vector<PaperMeta> load_metadata(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  std::vector<PaperMeta> metas;
  std::string line;
  long lineno = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_tab(line);
    if (fields.size() != 4)
      fail(Err::ParseError, path + ":" + std::to_string(lineno) + ": expected 4 tab-separated fields");
    PaperMeta m;
    m.paper_id = fields[0];
    try {
      m.year = std::stoi(fields[1]);
    } catch (const std::exception&) {
      fail(Err::ParseError, path + ":" + std::to_string(lineno) + ": bad year '" + fields[1] + "'");
    }
    m.journal_id = fields[2];
    std::istringstream as(fields[3]);
    std::string a;
    while (std::getline(as, a, ','))
      if (!a.empty()) m.author_ids.push_back(a);
    if (!ids.insert(m.paper_id).second)
      fail(Err::ParseError, path + ":" + std::to_string(lineno) + ": duplicate paper id '" +
                                m.paper_id + "'");
    metas.push_back(std::move(m));
  }
  return metas;
}

CitationGraph load_citations(const std::string& path, const std::vector<PaperMeta>& metas) {
  std::unordered_map<std::string, int> id_to_idx;
  for (int i = 0; i < static_cast<int>(metas.size()); ++i) id_to_idx.emplace(metas[i].paper_id, i);

  std::ifstream in = open_or_fail(path);
  std::set<std::pair<int, int>> edges;
  std::vector<std::string> dangling;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_tab(line);
    if (fields.size() != 2)
      fail(Err::ParseError, path + ":" + std::to_string(lineno) + ": expected 'citer<TAB>cited'");
    auto a = id_to_idx.find(fields[0]);
    auto b = id_to_idx.find(fields[1]);
    if (a == id_to_idx.end()) dangling.push_back(fields[0]);
    if (b == id_to_idx.end()) dangling.push_back(fields[1]);
    if (a == id_to_idx.end() || b == id_to_idx.end()) continue;
    if (a->second == b->second) continue;  // self-citation at the paper level is dropped
    edges.emplace(a->second, b->second);
  }
  if (!dangling.empty()) {
    std::string msg = path + ": citations reference unknown paper ids:";
    for (std::size_t i = 0; i < dangling.size() && i < 10; ++i) msg += " " + dangling[i];
    if (dangling.size() > 10) msg += " ... (" + std::to_string(dangling.size()) + " total)";
    fail(Err::DanglingCitation, msg);
  }
  CitationGraph g;
  g.n = static_cast<int>(metas.size());
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) words.insert(line);
  return words;
}

void save_dtm(const std::string& path, const DocumentTermMatrix& dtm) {
  std::ofstream out(path);
  if (!out) fail(Err::ParseError, "cannot write file: " + path);
  out << dtm.p() << ' ' << dtm.n() << ' ' << dtm.counts.nonZeros() << '\n';
  for (int i = 0; i < dtm.counts.outerSize(); ++i)
    for (SparseMatrixD::InnerIterator it(dtm.counts, i); it; ++it)
      out << it.row() << ' ' << it.col() << ' ' << static_cast<long>(it.value()) << '\n';
}

void save_metadata(const std::string& path, const std::vector<PaperMeta>& metas) {
  std::ofstream out(path);
  if (!out) fail(Err::ParseError, "cannot write file: " + path);
  for (const auto& m : metas) {
    out << m.paper_id << '\t' << m.year << '\t' << m.journal_id << '\t';
    for (std::size_t i = 0; i < m.author_ids.size(); ++i) {
      if (i) out << ',';
      out << m.author_ids[i];
    }
    out << '\n';
  }
}

void save_citations(const std::string& path, const CitationGraph& graph,
                    const std::vector<PaperMeta>& metas) {
  std::ofstream out(path);
  if (!out) fail(Err::ParseError, "cannot write file: " + path);
  for (const auto& [i, j] : graph.edges)
    out << metas[i].paper_id << '\t' << metas[j].paper_id << '\n';
}

}  // namespace topicrank
