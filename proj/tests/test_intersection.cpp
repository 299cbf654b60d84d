#include "oracles.hpp"
#include "qrcut/intersection.hpp"

#include <gtest/gtest.h>

#include <map>
#include <sstream>

using namespace qrcut;

namespace {

std::vector<int> V(std::initializer_list<int> xs) { return xs; }

std::multiset<std::vector<int>> row_multiset(const ExactMatrix& m) {
    std::multiset<std::vector<int>> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<int> r;
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(static_cast<int>(m(i, j).get_num().get_si()));
        rows.insert(r);
    }
    return rows;
}

std::multiset<std::vector<int>> row_multiset(const oracle::Matrix& m) {
    std::multiset<std::vector<int>> rows;
    for (const auto& row : m) {
        std::vector<int> r;
        for (const auto& x : row) r.push_back(static_cast<int>(x.get_num().get_si()));
        rows.insert(r);
    }
    return rows;
}

}  // namespace

TEST(BuildA, SmallShapes) {
    const ExactMatrix a = build_A(4, 2, V({2, 2}));
    EXPECT_EQ(a.rows(), 3u);
    EXPECT_EQ(a.cols(), 6u);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BigRational sum = 0;
        for (const auto& x : a.row(i)) sum += x;
        EXPECT_EQ(sum, 4);
    }
    const ExactMatrix b = build_A(6, 2, V({3, 3}));
    EXPECT_EQ(b.rows(), 10u);
    EXPECT_EQ(b.cols(), 15u);
}

TEST(BuildA, PartsMustMatchK) {
    EXPECT_THROW(build_A(6, 3, V({3, 3})), std::invalid_argument);
    EXPECT_THROW(build_A(7, 2, V({3, 3})), std::invalid_argument);
}

TEST(BuildA, MatchesIndependentConstruction) {
    const std::vector<std::pair<int, std::vector<int>>> cases{
        {4, {2, 2}}, {5, {2, 3}}, {6, {3, 3}}, {6, {2, 2, 2}}, {7, {3, 4}}, {7, {2, 2, 3}}, {8, {2, 2, 2, 2}}, {6, {1, 5}}};
    for (const auto& [t, v] : cases) {
        const ExactMatrix a = build_A(t, v);
        const oracle::Matrix o = oracle::intersection_matrix(t, v);
        ASSERT_EQ(row_multiset(a), row_multiset(o)) << "t=" << t;
        EXPECT_EQ(exact_rank(a), oracle::rank(o)) << "t=" << t;
    }
}

TEST(BuildA, RowSumsAreProductOfSizes) {
    const std::vector<std::pair<int, std::vector<int>>> cases{{7, {3, 4}}, {9, {3, 3, 3}}, {10, {3, 3, 4}}, {9, {2, 3, 4}}};
    for (const auto& [t, v] : cases) {
        const ExactMatrix a = build_A(t, v);
        BigRational expected = 1;
        for (int x : v) expected *= x;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            BigRational sum = 0;
            for (const auto& x : a.row(i)) sum += x;
            ASSERT_EQ(sum, expected);
        }
    }
}

TEST(BuildA, BalancedColumnSumsConstant) {
    for (auto [t, k] : std::vector<std::pair<int, int>>{{6, 2}, {8, 2}, {6, 3}, {9, 3}, {8, 4}}) {
        const ExactMatrix a = build_A(t, balanced_sizes(t, k));
        const ExactMatrix at = a.transpose();
        std::set<BigRational> sums;
        for (std::size_t j = 0; j < at.rows(); ++j) {
            BigRational s = 0;
            for (const auto& x : at.row(j)) s += x;
            sums.insert(s);
        }
        EXPECT_EQ(sums.size(), 1u) << t << "," << k;
    }
}

TEST(RankA, KnownValues) {
    EXPECT_EQ(exact_rank(build_A(6, 2, V({3, 3}))), 10u);
    EXPECT_EQ(exact_rank(build_A(9, 2, V({4, 5}))), 36u);
    EXPECT_EQ(exact_rank(build_A(7, 2, V({3, 4}))), 21u);
}

TEST(RankA, BalancedAtLeastSubmatrixBound) {
    for (auto [t, k] : std::vector<std::pair<int, int>>{{6, 2}, {8, 2}, {10, 2}, {6, 3}, {9, 3}, {8, 4}}) {
        const std::size_t r = exact_rank(build_A(t, balanced_sizes(t, k)));
        EXPECT_GE(BigInt(static_cast<unsigned long>(r)), binomial(t - 1, k)) << t << "," << k;
    }
}

TEST(RankReport, Regimes) {
    auto r = verify_rank_theorem(8, 2, V({4, 4}));
    EXPECT_EQ(r.computed_rank, 21u);
    ASSERT_TRUE(r.predicted_rank);
    EXPECT_EQ(*r.predicted_rank, 21);
    EXPECT_TRUE(r.match);
    EXPECT_TRUE(r.balanced);
    EXPECT_EQ(r.regime, RankRegime::proven);
    EXPECT_EQ(r.row_count, 35u);
    EXPECT_EQ(r.col_count, 28u);

    r = verify_rank_theorem(9, 3, V({3, 3, 3}));
    EXPECT_EQ(r.regime, RankRegime::unguaranteed);
    EXPECT_EQ(*r.predicted_rank, 76);

    r = verify_rank_theorem(10, 3, V({3, 3, 4}));
    EXPECT_EQ(r.regime, RankRegime::proven);
    EXPECT_EQ(r.computed_rank, 120u);
    EXPECT_TRUE(r.match);

    r = verify_rank_theorem(8, 4, V({2, 2, 2, 2}));
    EXPECT_EQ(r.regime, RankRegime::degenerate);
    EXPECT_FALSE(r.predicted_rank);
    EXPECT_FALSE(r.match);

    EXPECT_EQ(rank_regime(16, V({4, 4, 4, 4})), RankRegime::empirical);
    EXPECT_EQ(rank_regime(12, V({4, 4, 4})), RankRegime::proven);
    EXPECT_EQ(to_string(RankRegime::empirical), "empirical");
}

TEST(BuildB, ShapeAndContents) {
    const ExactMatrix b = build_B(5, 3, 2);
    EXPECT_EQ(b.rows(), 10u);
    EXPECT_EQ(b.cols(), 10u);
    const auto hs = oracle::ksubsets_colex(5, 3);
    const auto ks = oracle::ksubsets_colex(5, 2);
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = 0; j < ks.size(); ++j) {
            const bool inside = std::includes(hs[i].begin(), hs[i].end(), ks[j].begin(), ks[j].end());
            ASSERT_EQ(b(i, j), inside ? 1 : 0);
        }
    EXPECT_THROW(build_B(5, 5, 2), std::invalid_argument);
    EXPECT_THROW(build_B(5, 2, 3), std::invalid_argument);
}

TEST(BuildB, FullColumnRankWhenTAtLeastHPlusK) {
    for (auto [t, h, k] : std::vector<std::tuple<int, int, int>>{{5, 3, 2}, {6, 3, 2}, {6, 4, 2}, {7, 4, 3}, {8, 4, 3}, {8, 5, 3}})
        EXPECT_EQ(BigInt(static_cast<unsigned long>(exact_rank(build_B(t, h, k)))), binomial(t, k)) << t << "," << h << "," << k;
}

TEST(BuildB, RankDropsBelowThreshold) {
    // t < h + k: rank is C(t, t-h) < C(t,k)
    EXPECT_EQ(exact_rank(build_B(6, 5, 2)), 6u);
}

TEST(MatrixText, IntersectionMatrixRoundTrip) {
    const ExactMatrix a = build_A(6, 2, V({3, 3}));
    std::stringstream ss;
    write_matrix(ss, a);
    EXPECT_EQ(read_matrix(ss), a);
}
