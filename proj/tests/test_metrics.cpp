#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "topicrank/errors.hpp"
#include "topicrank/metrics.hpp"
#include "topicrank/synth.hpp"

using namespace topicrank;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("paper_counts: fractional credit, partitions, seniority") {
  std::vector<PaperMeta> metas = {
      {"p0", 2000, "J", {"alice"}},
      {"p1", 2005, "J", {"alice", "bob"}},
      {"p2", 2005, "J", {"carol", "dave", "erin"}},
  };
  auto table = paper_counts(metas);
  REQUIRE(table.size() == 2);

  const auto& y2000 = table[0];
  CHECK(y2000.year == 2000);
  CHECK(y2000.papers == 1);
  CHECK(y2000.active_authors == 1);
  CHECK(y2000.m1 == 1);
  CHECK(y2000.seniority_0_2 == 1);

  const auto& y2005 = table[1];
  CHECK(y2005.papers == 2);
  CHECK(y2005.active_authors == 5);
  CHECK(y2005.m2 == 1);
  CHECK(y2005.m3 == 1);
  // a 2-author paper credits each author 1 (standard) and 1/2 (fractional)
  CHECK(y2005.papers_per_author_standard == doctest::Approx(1.0));
  CHECK(y2005.papers_per_author_fractional == doctest::Approx(2.0 / 5.0));
  CHECK(y2005.authors_per_paper == doctest::Approx(2.5));
  // alice's first paper was 2000, so she is 5-year senior in 2005
  CHECK(y2005.seniority_3_5 == 1);
  CHECK(y2005.seniority_0_2 == 4);
}

TEST_CASE("fractional counts sum to the yearly paper count") {
  Rng rng(3);
  std::vector<PaperMeta> metas;
  for (int i = 0; i < 200; ++i) {
    PaperMeta m;
    m.paper_id = "p" + std::to_string(i);
    m.year = 2000 + static_cast<int>(rng.uniform_int(5));
    m.journal_id = "J";
    const int n_auth = 1 + static_cast<int>(rng.uniform_int(5));
    for (int a = 0; a < n_auth; ++a)
      m.author_ids.push_back("a" + std::to_string(rng.uniform_int(40)));
    std::sort(m.author_ids.begin(), m.author_ids.end());
    m.author_ids.erase(std::unique(m.author_ids.begin(), m.author_ids.end()),
                       m.author_ids.end());
    metas.push_back(std::move(m));
  }
  auto table = paper_counts(metas);
  for (const auto& row : table) {
    const double total_fractional = row.papers_per_author_fractional * row.active_authors;
    CHECK(total_fractional == doctest::Approx(row.papers).epsilon(1e-9));
    CHECK(row.m1 + row.m2 + row.m3 + row.m4_plus == row.papers);
    CHECK(row.seniority_0_2 + row.seniority_3_5 + row.seniority_6_10 + row.seniority_11_plus ==
          row.active_authors);
  }
}

TEST_CASE("centrality: citers exclude self, citations count per edge") {
  std::vector<PaperMeta> metas = {
      {"p0", 2000, "J", {"a"}},
      {"p1", 2001, "J", {"a"}},  // a cites own paper
      {"p2", 2002, "J", {"b"}},
      {"p3", 2003, "J", {"b"}},
      {"p4", 2004, "J", {"c"}},  // isolated
  };
  CitationGraph g;
  g.n = 5;
  g.edges = {{1, 0}, {2, 0}, {3, 0}};

  auto tables = centrality(metas, g);
  auto find = [&](const std::string& id) {
    for (const auto& row : tables.authors)
      if (row.author_id == id) return row;
    return AuthorCentrality{};
  };
  CHECK(find("a").citers == 1);     // only b; a's self-citation is excluded
  CHECK(find("a").citations == 3);  // paper p0 received 3 citations
  CHECK(find("b").citers == 0);
  CHECK(find("c").citations == 0);
  CHECK(find("c").coauthors == 0);

  CHECK(tables.papers.front().paper_id == "p0");
  CHECK(tables.papers.front().citations == 3);
}

TEST_CASE("centrality: a repeat citing author counts once as citer") {
  std::vector<PaperMeta> metas = {
      {"p0", 2000, "J", {"target"}},
      {"p1", 2001, "J", {"citer"}},
      {"p2", 2002, "J", {"citer"}},
  };
  CitationGraph g;
  g.n = 3;
  g.edges = {{1, 0}, {2, 0}};
  auto tables = centrality(metas, g);
  for (const auto& row : tables.authors)
    if (row.author_id == "target") {
      CHECK(row.citers == 1);
      CHECK(row.citations == 2);
    }
}

TEST_CASE("sleeping_beauty oracle values") {
  auto b = sleeping_beauty({"lin", {2, 4, 6, 8}});
  CHECK(b.B == 0.0);
  CHECK(b.t_star == 4);

  b = sleeping_beauty({"quad", {1, 4, 9}});
  CHECK(b.B == 2.5);
  CHECK(b.t_star == 3);

  b = sleeping_beauty({"guard", {0, 0, 5}});
  CHECK(b.B == 5.0);
  CHECK(b.t_star == 3);
}

TEST_CASE("sleeping_beauty peak ties and scale property") {
  CitationCurve twin{"twin", {3, 1, 3}};
  CHECK(sleeping_beauty(twin).t_star == 1);
  CHECK(sleeping_beauty(twin, true).t_star == 3);

  // scaling all positive counts by an integer leaves B unchanged
  CitationCurve base{"b", {1, 3, 2, 7, 4}};
  CitationCurve scaled{"s", {5, 15, 10, 35, 20}};
  CHECK(sleeping_beauty(base).B == doctest::Approx(sleeping_beauty(scaled).B).epsilon(1e-12));

  // strictly decreasing rate n(t)/t gives negative B
  CitationCurve sublinear{"sub", {8, 9, 10}};
  CHECK(sleeping_beauty(sublinear).B < 0.0);
}

TEST_CASE("rank_sleeping_beauties filters by peak then sorts by B") {
  std::vector<CitationCurve> curves = {
      {"big_peak", {0, 0, 10}},
      {"small_peak", {0, 3}},  // dropped when top_by_peak = 1
  };
  auto rows = rank_sleeping_beauties(curves, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].paper_id == "big_peak");
  CHECK(rows[0].total_citations == 10);
  CHECK(rows[0].B == doctest::Approx(10.0));

  // equal B: total-citation tie-break
  std::vector<CitationCurve> tied = {
      {"low", {1, 2, 3}},
      {"high", {2, 4, 6}},
  };
  auto tie_rows = rank_sleeping_beauties(tied, 10);
  CHECK(tie_rows[0].paper_id == "high");
  CHECK(tie_rows[0].B == 0.0);
  CHECK(tie_rows[1].B == 0.0);
}

TEST_CASE("citation_curves aligns years with t = 1 at publication") {
  std::vector<PaperMeta> metas = {
      {"old", 2000, "J", {"a"}},
      {"citer_same_year", 2000, "J", {"b"}},
      {"citer_later", 2003, "J", {"c"}},
  };
  CitationGraph g;
  g.n = 3;
  g.edges = {{1, 0}, {2, 0}};
  auto curves = citation_curves(metas, g, 2005);
  REQUIRE(curves[0].counts.size() == 6);
  CHECK(curves[0].counts[0] == 1);  // cited in its publication year
  CHECK(curves[0].counts[3] == 1);  // cited three years later
}

TEST_CASE("topic_interest centering") {
  MatrixXd W(2, 2);
  W.col(0) = Eigen::Vector2d(1, 0);
  W.col(1) = Eigen::Vector2d(0, 1);
  auto interests = topic_interest({{"a", {0}}, {"both", {0, 1}}, {"skip", {}}}, W);
  REQUIRE(interests.size() == 2);  // the paperless author is skipped
  CHECK(interests[0].z.isApprox(Eigen::Vector2d(0.5, -0.5)));
  CHECK(interests[0].z.sum() == doctest::Approx(0.0).epsilon(1e-12));
  // an author owning every paper matches the grand mean exactly
  CHECK(interests[1].z.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("topic_interest zero-sum over random corpora") {
  Rng rng(8);
  MatrixXd W = random_weights(30, 4, 1.0, 0.2, rng);
  std::vector<std::pair<std::string, std::vector<int>>> authors = {
      {"x", {0, 1, 2}}, {"y", {3, 4}}, {"z", {5, 6, 7, 8, 9}}};
  for (const auto& ti : topic_interest(authors, W))
    CHECK(ti.z.sum() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("major_topics threshold rule") {
  Eigen::Vector3d z1(0.3, 0.2, -0.5);
  auto m1 = major_topics(z1, 0.5);
  CHECK(m1.topics == std::vector<int>{0, 1});  // 0.2 > 0.15
  CHECK(!m1.no_positive);

  Eigen::Vector3d z2(0.3, 0.1, -0.4);
  CHECK(major_topics(z2, 0.5).topics == std::vector<int>{0});  // 0.1 < 0.15

  Eigen::Vector3d z3(-0.1, -0.2, 0.0);
  auto m3 = major_topics(z3, 0.5);
  CHECK(m3.topics.empty());
  CHECK(m3.no_positive);
}

TEST_CASE("topic_trends smoothing kernel and boundaries") {
  MatrixXd W(2, 3);
  W.col(0) = Eigen::Vector2d(0, 1);
  W.col(1) = Eigen::Vector2d(1, 0);
  W.col(2) = Eigen::Vector2d(0, 1);
  std::vector<PaperMeta> metas = {
      {"p0", 2000, "J", {"a"}}, {"p1", 2001, "J", {"a"}}, {"p2", 2002, "J", {"a"}}};
  auto rows = topic_trends(W, metas, TrendGroup::All);
  REQUIRE(rows.size() == 3);
  // middle year: 0.25*0 + 0.5*1 + 0.25*0 = 0.5 in the first coordinate
  CHECK(rows[1].w[0] == doctest::Approx(0.5));
  // boundary year: kernel renormalized over (0.5, 0.25)
  CHECK(rows[0].w[0] == doctest::Approx(0.25 / 0.75));

  // constant series are fixed points
  MatrixXd Wc = MatrixXd::Constant(2, 3, 0.5);
  auto const_rows = topic_trends(Wc, metas, TrendGroup::All);
  for (const auto& r : const_rows) CHECK(r.w.isApprox(Eigen::Vector2d(0.5, 0.5)));

  // single-year corpus: smoothing is the identity
  std::vector<PaperMeta> one_year = {{"p0", 2010, "J", {"a"}}, {"p1", 2010, "J", {"b"}}};
  MatrixXd W2(2, 2);
  W2.col(0) = Eigen::Vector2d(1, 0);
  W2.col(1) = Eigen::Vector2d(0, 1);
  auto single = topic_trends(W2, one_year, TrendGroup::All);
  REQUIRE(single.size() == 1);
  CHECK(single[0].w.isApprox(Eigen::Vector2d(0.5, 0.5)));
}

TEST_CASE("topic_trends stays on the simplex and splits by journal") {
  Rng rng(12);
  MatrixXd W = random_weights(60, 3, 0.8, 0.1, rng);
  std::vector<PaperMeta> metas;
  for (int i = 0; i < 60; ++i)
    metas.push_back({"p" + std::to_string(i), 1990 + i % 7, i % 2 ? "Ja" : "Jb", {"a"}});

  for (auto mode : {TrendGroup::All, TrendGroup::Journal}) {
    auto rows = topic_trends(W, metas, mode);
    for (const auto& r : rows) {
      CHECK(r.w.sum() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(r.w.minCoeff() >= 0.0);
    }
    if (mode == TrendGroup::Journal) {
      bool has_ja = false, has_jb = false;
      for (const auto& r : rows) {
        has_ja |= r.group == "Ja";
        has_jb |= r.group == "Jb";
      }
      CHECK(has_ja);
      CHECK(has_jb);
    }
  }
}

TEST_SUITE_END();
