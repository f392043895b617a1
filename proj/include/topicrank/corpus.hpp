#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

namespace topicrank {

using SparseMatrixD = Eigen::SparseMatrix<double>;

// Token list with a bijective token -> index map. Order is first
// appearance in the source stream, which makes indexing reproducible.
struct Vocabulary {
  std::vector<std::string> words;
  std::unordered_map<std::string, int> index;

  int size() const { return static_cast<int>(words.size()); }
  void push(const std::string& w) {
    index.emplace(w, static_cast<int>(words.size()));
    words.push_back(w);
  }
};

// Sparse p x n word-document count matrix plus per-document lengths.
// Column i sums to doc_lengths[i] exactly.
struct DocumentTermMatrix {
  SparseMatrixD counts;               // p x n, integer-valued
  std::vector<long> doc_lengths;      // n
  Vocabulary vocabulary;

  int p() const { return static_cast<int>(counts.rows()); }
  int n() const { return static_cast<int>(counts.cols()); }
};

struct PaperMeta {
  std::string paper_id;
  int year = 0;
  std::string journal_id;
  std::vector<std::string> author_ids;
};

// Directed citation edges over paper indices 0..n-1. No self-loops,
// duplicate-free, kept sorted.
struct CitationGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (citer, cited)
};

struct PreprocessConfig {
  std::set<std::string> stop_words;
  int min_doc_count = 100;
  double short_doc_quantile = 0.10;
  bool lowercase = true;
};

// Lowercase (if configured), strip punctuation characters, drop
// all-digit tokens and stop words. Whitespace-splitting happens after
// punctuation removal, so hyphenated forms collapse into one token.
std::vector<std::string> tokenize(const std::string& raw_text, const PreprocessConfig& config);

struct BuildResult {
  DocumentTermMatrix dtm;
  std::vector<int> kept_docs;  // surviving document indices, original order
};

// Vocabulary = tokens in >= min_doc_count distinct documents (first-appearance
// order); then the short_doc_quantile fraction of documents with smallest
// in-vocabulary length is dropped (ties keep earlier documents).
BuildResult build_matrix(const std::vector<std::vector<std::string>>& token_lists,
                         const PreprocessConfig& config);

// D(j,i) = X(j,i)/N_i; every column sums to 1. Sparsity pattern of counts
// is preserved.
SparseMatrixD frequency_matrix(const DocumentTermMatrix& dtm);

// --- file ingestion (formats documented in the README) ---

DocumentTermMatrix load_dtm(const std::string& path);
std::vector<std::string> load_raw_corpus(const std::string& path);
std::vector<PaperMeta> load_metadata(const std::string& path);
CitationGraph load_citations(const std::string& path, const std::vector<PaperMeta>& metas);
std::set<std::string> load_stopwords(const std::string& path);

void save_dtm(const std::string& path, const DocumentTermMatrix& dtm);
void save_metadata(const std::string& path, const std::vector<PaperMeta>& metas);
void save_citations(const std::string& path, const CitationGraph& graph,
                    const std::vector<PaperMeta>& metas);

}  // namespace topicrank
