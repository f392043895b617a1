#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topicrank/corpus.hpp"

namespace topicrank {

// Per-year publication statistics. Seniority buckets partition the active
// authors of the year by years since their first paper.
struct YearCounts {
  int year = 0;
  long papers = 0;
  long active_authors = 0;
  double papers_per_author_standard = 0.0;   // mean papers per active author
  double papers_per_author_fractional = 0.0; // 1/m credit per m-author paper
  double authors_per_paper = 0.0;
  long m1 = 0, m2 = 0, m3 = 0, m4_plus = 0;  // paper counts by author count
  long seniority_0_2 = 0, seniority_3_5 = 0, seniority_6_10 = 0, seniority_11_plus = 0;
};

std::vector<YearCounts> paper_counts(const std::vector<PaperMeta>& metas);

struct AuthorCentrality {
  std::string author_id;
  long coauthors = 0;
  long citers = 0;     // distinct other authors with >= 1 citing paper
  long citations = 0;  // total in-range citations over the author's papers
};

struct PaperCitations {
  std::string paper_id;
  long citations = 0;
};

struct CentralityTables {
  std::vector<AuthorCentrality> authors;  // sorted by citations desc, id asc
  std::vector<PaperCitations> papers;     // sorted by citations desc, id asc
};

CentralityTables centrality(const std::vector<PaperMeta>& metas, const CitationGraph& graph);

// Yearly citation counts of one paper; counts[t-1] is the number of
// citations in the t-th year after publication (t = 1 is the publication
// year itself).
struct CitationCurve {
  std::string paper_id;
  std::vector<long> counts;
};

struct BeautyScore {
  double B = 0.0;
  int t_star = 1;  // 1-based peak year
};

// Sleeping-beauty coefficient: sum over t <= t* of
// [n(t*)/t* - n(t)/t] / [(n(t) v 1)/t]. Ties in the peak go to the
// earliest year unless latest_peak is set.
BeautyScore sleeping_beauty(const CitationCurve& curve, bool latest_peak = false);

struct BeautyRow {
  std::string paper_id;
  long total_citations = 0;
  long peak = 0;
  double B = 0.0;
  int t_star = 1;
};

// Keep the top_by_peak curves with the largest maximum yearly citations,
// then order by B descending (ties: total citations descending, then id).
std::vector<BeautyRow> rank_sleeping_beauties(const std::vector<CitationCurve>& curves,
                                              int top_by_peak = 300, bool latest_peak = false);

// Build per-paper citation curves from metadata years; citations landing
// before publication or past last_year are ignored.
std::vector<CitationCurve> citation_curves(const std::vector<PaperMeta>& metas,
                                           const CitationGraph& graph, int last_year);

// Centered topic interest of one author: mean weight over the author's
// papers minus the grand mean; entries sum to zero.
struct TopicInterest {
  std::string author_id;
  Eigen::VectorXd z;
  long paper_count = 0;
};

std::vector<TopicInterest> topic_interest(
    const std::vector<std::pair<std::string, std::vector<int>>>& author_papers,
    const Eigen::MatrixXd& W_hat);

struct MajorTopics {
  std::vector<int> topics;
  bool no_positive = false;  // all z <= 0: empty set, flagged
};

MajorTopics major_topics(const Eigen::VectorXd& z, double fraction = 0.5);

struct TrendRow {
  std::string group;  // "all" or a journal id
  int year = 0;
  Eigen::VectorXd w;  // smoothed mean weight vector
};

enum class TrendGroup { All, Journal };

// Yearly mean weight vectors per group, smoothed with the (0.25, 0.5,
// 0.25) kernel; at boundaries (or across gap years) the kernel is
// renormalized over the available neighbors.
std::vector<TrendRow> topic_trends(const Eigen::MatrixXd& W_hat,
                                   const std::vector<PaperMeta>& metas, TrendGroup group_by);

}  // namespace topicrank
