#include "topicrank/metrics.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "topicrank/errors.hpp"

namespace topicrank {

std::vector<YearCounts> paper_counts(const std::vector<PaperMeta>& metas) {
  std::map<int, YearCounts> by_year;
  std::unordered_map<std::string, int> first_year;
  for (const auto& m : metas)
    for (const auto& a : m.author_ids) {
      auto [it, fresh] = first_year.emplace(a, m.year);
      if (!fresh) it->second = std::min(it->second, m.year);
    }

  std::map<int, std::set<std::string>> active;
  std::map<int, long> author_slots;  // sum of m over papers of the year
  std::map<int, double> fractional;  // sum over papers of m * (1/m) accumulated per author

  for (const auto& m : metas) {
    auto& yc = by_year[m.year];
    yc.year = m.year;
    ++yc.papers;
    const long a = static_cast<long>(m.author_ids.size());
    if (a == 1)
      ++yc.m1;
    else if (a == 2)
      ++yc.m2;
    else if (a == 3)
      ++yc.m3;
    else if (a >= 4)
      ++yc.m4_plus;
    author_slots[m.year] += a;
    for (const auto& id : m.author_ids) {
      active[m.year].insert(id);
      fractional[m.year] += 1.0 / static_cast<double>(a);
    }
  }

  std::vector<YearCounts> out;
  for (auto& [year, yc] : by_year) {
    yc.active_authors = static_cast<long>(active[year].size());
    if (yc.active_authors > 0) {
      yc.papers_per_author_standard =
          static_cast<double>(author_slots[year]) / yc.active_authors;
      yc.papers_per_author_fractional = fractional[year] / yc.active_authors;
    }
    if (yc.papers > 0)
      yc.authors_per_paper = static_cast<double>(author_slots[year]) / yc.papers;
    for (const auto& id : active[year]) {
      const int seniority = year - first_year[id];
      if (seniority <= 2)
        ++yc.seniority_0_2;
      else if (seniority <= 5)
        ++yc.seniority_3_5;
      else if (seniority <= 10)
        ++yc.seniority_6_10;
      else
        ++yc.seniority_11_plus;
    }
    out.push_back(yc);
  }
  return out;
}

CentralityTables centrality(const std::vector<PaperMeta>& metas, const CitationGraph& graph) {
  std::unordered_map<std::string, std::set<std::string>> coauthors;
  std::unordered_map<std::string, std::set<std::string>> citers;
  std::unordered_map<std::string, long> citations;
  std::vector<long> paper_cites(metas.size(), 0);

  for (const auto& m : metas)
    for (const auto& a : m.author_ids) {
      coauthors.try_emplace(a);
      citers.try_emplace(a);
      citations.try_emplace(a, 0);
      for (const auto& b : m.author_ids)
        if (a != b) coauthors[a].insert(b);
    }

  for (const auto& [i, j] : graph.edges) {
    ++paper_cites[j];
    for (const auto& cited_author : metas[j].author_ids) {
      citations[cited_author] += 1;
      for (const auto& citing_author : metas[i].author_ids)
        if (citing_author != cited_author) citers[cited_author].insert(citing_author);
    }
  }

  CentralityTables tables;
  for (const auto& [a, set] : coauthors)
    tables.authors.push_back({a, static_cast<long>(set.size()),
                              static_cast<long>(citers[a].size()), citations[a]});
  std::sort(tables.authors.begin(), tables.authors.end(),
            [](const AuthorCentrality& x, const AuthorCentrality& y) {
              if (x.citations != y.citations) return x.citations > y.citations;
              return x.author_id < y.author_id;
            });
  for (std::size_t i = 0; i < metas.size(); ++i)
    tables.papers.push_back({metas[i].paper_id, paper_cites[i]});
  std::sort(tables.papers.begin(), tables.papers.end(),
            [](const PaperCitations& x, const PaperCitations& y) {
              if (x.citations != y.citations) return x.citations > y.citations;
              return x.paper_id < y.paper_id;
            });
  return tables;
}

std::vector<CitationCurve> citation_curves(const std::vector<PaperMeta>& metas,
                                           const CitationGraph& graph, int last_year) {
  std::vector<CitationCurve> curves(metas.size());
  for (std::size_t i = 0; i < metas.size(); ++i) {
    curves[i].paper_id = metas[i].paper_id;
    const int T = last_year - metas[i].year + 1;
    curves[i].counts.assign(std::max(T, 1), 0);
  }
  for (const auto& [i, j] : graph.edges) {
    const int t = metas[i].year - metas[j].year + 1;
    if (t >= 1 && t <= static_cast<int>(curves[j].counts.size())) ++curves[j].counts[t - 1];
  }
  return curves;
}

BeautyScore sleeping_beauty(const CitationCurve& curve, bool latest_peak) {
  const int T = static_cast<int>(curve.counts.size());
  if (T < 1) fail(Err::InvalidArgument, "citation curve must cover at least one year");

  int t_star = 1;
  long peak = curve.counts[0];
  for (int t = 2; t <= T; ++t) {
    const long c = curve.counts[t - 1];
    if (c > peak || (latest_peak && c == peak)) {
      peak = c;
      t_star = t;
    }
  }

  const double peak_rate = static_cast<double>(peak) / t_star;
  double B = 0.0;
  for (int t = 1; t <= t_star; ++t) {
    const double n_t = static_cast<double>(curve.counts[t - 1]);
    const double rate = n_t / t;
    const double guard = std::max(n_t, 1.0) / t;
    B += (peak_rate - rate) / guard;
  }
  return {B, t_star};
}

std::vector<BeautyRow> rank_sleeping_beauties(const std::vector<CitationCurve>& curves,
                                              int top_by_peak, bool latest_peak) {
  std::vector<BeautyRow> rows;
  for (const auto& c : curves) {
    BeautyRow row;
    row.paper_id = c.paper_id;
    row.peak = *std::max_element(c.counts.begin(), c.counts.end());
    row.total_citations = 0;
    for (long x : c.counts) row.total_citations += x;
    const BeautyScore score = sleeping_beauty(c, latest_peak);
    row.B = score.B;
    row.t_star = score.t_star;
    rows.push_back(std::move(row));
  }
  // Peak filter first (ties by total citations, then id, for a stable cut).
  std::sort(rows.begin(), rows.end(), [](const BeautyRow& a, const BeautyRow& b) {
    if (a.peak != b.peak) return a.peak > b.peak;
    if (a.total_citations != b.total_citations) return a.total_citations > b.total_citations;
    return a.paper_id < b.paper_id;
  });
  if (static_cast<int>(rows.size()) > top_by_peak) rows.resize(top_by_peak);
  std::sort(rows.begin(), rows.end(), [](const BeautyRow& a, const BeautyRow& b) {
    if (a.B != b.B) return a.B > b.B;
    if (a.total_citations != b.total_citations) return a.total_citations > b.total_citations;
    return a.paper_id < b.paper_id;
  });
  return rows;
}

std::vector<TopicInterest> topic_interest(
    const std::vector<std::pair<std::string, std::vector<int>>>& author_papers,
    const Eigen::MatrixXd& W_hat) {
  const int n = static_cast<int>(W_hat.cols());
  const Eigen::VectorXd grand_mean = W_hat.rowwise().mean();

  std::vector<TopicInterest> out;
  for (const auto& [author, papers] : author_papers) {
    if (papers.empty()) continue;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(W_hat.rows());
    for (int i : papers) {
      if (i < 0 || i >= n) fail(Err::InvalidArgument, "paper index out of range for " + author);
      mean += W_hat.col(i);
    }
    mean /= static_cast<double>(papers.size());
    out.push_back({author, mean - grand_mean, static_cast<long>(papers.size())});
  }
  return out;
}

MajorTopics major_topics(const Eigen::VectorXd& z, double fraction) {
  MajorTopics out;
  const double zmax = z.maxCoeff();
  if (zmax <= 0.0) {
    out.no_positive = true;
    return out;
  }
  for (int k = 0; k < z.size(); ++k)
    if (z[k] > fraction * zmax) out.topics.push_back(k);
  return out;
}

std::vector<TrendRow> topic_trends(const Eigen::MatrixXd& W_hat,
                                   const std::vector<PaperMeta>& metas, TrendGroup group_by) {
  const int n = static_cast<int>(W_hat.cols());
  if (static_cast<int>(metas.size()) != n)
    fail(Err::ShapeMismatch, "metadata and weight matrix disagree on n");
  const int K = static_cast<int>(W_hat.rows());

  // group -> year -> (sum, count)
  std::map<std::string, std::map<int, std::pair<Eigen::VectorXd, long>>> acc;
  for (int i = 0; i < n; ++i) {
    const std::string group = group_by == TrendGroup::All ? "all" : metas[i].journal_id;
    auto& cell = acc[group].try_emplace(metas[i].year, Eigen::VectorXd::Zero(K), 0L).first->second;
    cell.first += W_hat.col(i);
    ++cell.second;
  }

  std::vector<TrendRow> out;
  for (const auto& [group, years] : acc) {
    std::vector<int> ys;
    std::vector<Eigen::VectorXd> means;
    for (const auto& [year, cell] : years) {
      ys.push_back(year);
      means.push_back(cell.first / static_cast<double>(cell.second));
    }
    // (0.25, 0.5, 0.25) over adjacent calendar years present in the group;
    // missing neighbors renormalize the kernel.
    for (std::size_t t = 0; t < ys.size(); ++t) {
      Eigen::VectorXd sm = 0.5 * means[t];
      double weight = 0.5;
      if (t > 0 && ys[t - 1] == ys[t] - 1) {
        sm += 0.25 * means[t - 1];
        weight += 0.25;
      }
      if (t + 1 < ys.size() && ys[t + 1] == ys[t] + 1) {
        sm += 0.25 * means[t + 1];
        weight += 0.25;
      }
      out.push_back({group, ys[t], sm / weight});
    }
  }
  return out;
}

}  // namespace topicrank
