#include "oracles.hpp"
#include "qrcut/structure.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace qrcut;

namespace {

const BigRational quarter = ratio(1, 4);

VertexSet range(int lo, int hi) {
    VertexSet s;
    for (int x = lo; x <= hi; ++x) s.push_back(x);
    return s;
}

WeightedHypergraph complete(int n, int k) {
    std::vector<Rank> all(binomial_u64(n, k));
    std::iota(all.begin(), all.end(), Rank{0});
    return WeightedHypergraph::indicator(n, k, all);
}

WeightedGraph random_graph(int n, CounterRng& rng) {
    WeightedGraph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.set(u, v, ratio(static_cast<long>(rng.below(9)) - 4, 1 + static_cast<long>(rng.below(3))));
    return g;
}

oracle::Matrix to_oracle(const WeightedGraph& g) {
    oracle::Matrix m(static_cast<std::size_t>(g.n()), std::vector<BigRational>(static_cast<std::size_t>(g.n())));
    for (int u = 1; u <= g.n(); ++u)
        for (int v = 1; v <= g.n(); ++v) m[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>(v - 1)] = g.weight(u, v);
    return m;
}

BigRational e_st(const WeightedGraph& g, const VertexSet& s, const VertexSet& t) {
    BigRational e = 0;
    for (int i : s)
        for (int j : t) e += g.weight(i, j);
    return e;
}

}  // namespace

TEST(SolutionVectors, Uniform) {
    const auto u = make_u(6, 3, ratio(1, 3));
    EXPECT_EQ(u.entries.size(), 20u);
    for (const auto& x : u.entries) EXPECT_EQ(x, ratio(1, 3));
    BigRational total = 0;
    for (const auto& x : u.entries) total += x;
    EXPECT_EQ(total, ratio(20, 3));
    EXPECT_EQ(u.provenance, Provenance::uniform);
    EXPECT_TRUE(is_Pstar_solution(u, 6, 3, ratio(1, 3)));
    EXPECT_TRUE(u.is_realizable());
}

TEST(SolutionVectors, Planted) {
    const auto v = make_v(8, 2, quarter, range(1, 4));
    EXPECT_EQ(v.entries[ksubset_rank(KSubset({5, 6}, 8))], 0);
    EXPECT_EQ(v.entries[ksubset_rank(KSubset({1, 2}, 8))], ratio(1, 2));
    EXPECT_EQ(v.entries[ksubset_rank(KSubset({1, 6}, 8))], quarter);
    EXPECT_EQ(v.provenance, Provenance::planted);
    EXPECT_TRUE(is_Pstar_solution(v, 8, 2, quarter));
    EXPECT_TRUE(is_Pstar_solution(make_v(12, 3, quarter, VertexSet{1, 3, 5, 7, 9, 11}), 12, 3, quarter));
    EXPECT_THROW(make_v(8, 2, quarter, range(1, 3)), std::invalid_argument);
}

TEST(SolutionVectors, ExhaustiveOverBipartitions) {
    for (auto [t, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 3}, {8, 2}, {8, 4}, {10, 2}}) {
        const PstarSystem sys(t, k, quarter);
        EXPECT_TRUE(sys.accepts(make_u(t, k, quarter).entries));
        for (const auto& a : all_half_sets(t)) ASSERT_TRUE(sys.accepts(make_v(t, k, quarter, a).entries)) << t << "," << k;
    }
}

TEST(SolutionVectors, BasisVectorIsNotASolution) {
    const PstarSystem sys(8, 2, quarter);
    for (Rank r : {0u, 5u, 27u}) {
        RationalVector e(28, BigRational(0));
        e[r] = 17;
        EXPECT_FALSE(sys.accepts(e));
    }
    EXPECT_THROW(sys.accepts(RationalVector(5)), std::invalid_argument);
}

TEST(SolutionVectors, BigRationalFallbackPath) {
    // entries whose scaled sums overflow machine words still check exactly
    const BigRational huge = ratio(BigInt("1000000000000000000000000000001"), BigInt("4000000000000000000000000000004"));
    const PstarSystem sys(6, 2, huge);
    EXPECT_TRUE(sys.accepts(make_u(6, 2, huge).entries));
    auto off = make_u(6, 2, huge).entries;
    off[3] += ratio(1, BigInt("99999999999999999999999"));
    EXPECT_FALSE(sys.accepts(off));
}

TEST(SolutionSpace, Nullities) {
    EXPECT_EQ(solution_space(6, 2, quarter).nullity(), 5u);
    EXPECT_EQ(solution_space(8, 2, quarter).nullity(), 7u);
    const auto s = solution_space(6, 3, quarter);
    // blocks of size 2 < k: degenerate shape, rank taken from naive elimination
    EXPECT_EQ(s.system_rank, oracle::rank(oracle::intersection_matrix(6, {2, 2, 2})));
    EXPECT_EQ(s.nullity(), 20 - s.system_rank);
}

TEST(StructureTheorem, SmallCases) {
    for (auto [t, k] : std::vector<std::pair<int, int>>{{6, 2}, {8, 2}}) {
        const auto rep = verify_structure_theorem(t, k, quarter);
        EXPECT_TRUE(rep.all_are_solutions);
        EXPECT_EQ(rep.affine_point_rank, static_cast<std::size_t>(t));
        EXPECT_EQ(rep.affine_direction_dim, static_cast<std::size_t>(t - 1));
        EXPECT_EQ(rep.nullity, static_cast<std::size_t>(t - 1));
        EXPECT_TRUE(rep.nullspace_in_span);
        EXPECT_TRUE(rep.pass);
        EXPECT_EQ(rep.planted_vectors, static_cast<std::size_t>(binomial_u64(t, t / 2)));
    }
    EXPECT_THROW(verify_structure_theorem(9, 3, quarter), std::invalid_argument);
}

TEST(StructureTheorem, FailsBelowRankThreshold) {
    // (6,3): the balanced system has extra freedom, so the planted vectors do not span it
    const auto rep = verify_structure_theorem(6, 3, quarter);
    EXPECT_TRUE(rep.all_are_solutions);
    EXPECT_GT(rep.nullity, 5u);
    EXPECT_FALSE(rep.nullspace_in_span);
    EXPECT_FALSE(rep.pass);
}

TEST(DensityVector, Examples) {
    const auto parts = consecutive_equipartition(12, 4);
    const auto full = density_vector(complete(12, 3), parts);
    EXPECT_EQ(full.entries.size(), 4u);
    for (const auto& x : full.entries) EXPECT_EQ(x, 1);
    EXPECT_FALSE(full.exceeds_one);
    const auto empty = density_vector(WeightedHypergraph::indicator(12, 3, {}), parts);
    for (const auto& x : empty.entries) EXPECT_EQ(x, 0);
    EXPECT_THROW(density_vector(complete(12, 3), consecutive_equipartition(12, 2)), std::invalid_argument);
    EXPECT_THROW(consecutive_equipartition(12, 5), std::invalid_argument);
    EXPECT_THROW(density_vector(complete(12, 3), {range(1, 6), range(6, 11)}), std::invalid_argument);
}

TEST(DensityVector, ExactPlantedQuotientsToPlantedVector) {
    const int n = 24, t = 12, k = 3;
    const auto h = exact_ckp_weights(n, k, quarter, range(1, 12));
    const auto d = density_vector(h, consecutive_equipartition(n, t));
    const auto v = make_v(t, k, quarter, range(1, 6));
    EXPECT_TRUE(d.entries == v.entries);
    EXPECT_TRUE(is_Pstar_solution(SolutionVector{t, k, quarter, d.entries, Provenance::general, std::nullopt}, t, k, quarter));
}

TEST(DensityVector, WeightsAboveOneFlagged) {
    RationalVector w(binomial_u64(6, 2), BigRational(3));
    const auto d = density_vector(WeightedHypergraph::fractional(6, 2, w), consecutive_equipartition(6, 3));
    EXPECT_TRUE(d.exceeds_one);
}

TEST(DeltaCloseness, Examples) {
    const auto exact = delta_closeness(exact_ckp_weights(12, 3, quarter, range(1, 6)), quarter);
    EXPECT_TRUE(exact.exhaustive);
    EXPECT_EQ(exact.cuts_inspected, 5775u);
    EXPECT_EQ(exact.delta, 0);
    EXPECT_EQ(delta_closeness(complete(9, 3), quarter).delta, (1 - quarter) / 27);
    EXPECT_EQ(delta_closeness(WeightedHypergraph::indicator(8, 2, {}), quarter).delta, quarter / 4);
    const auto sampled = delta_closeness(complete(30, 3), quarter, 10, 3);
    EXPECT_FALSE(sampled.exhaustive);
    EXPECT_EQ(sampled.cuts_inspected, 10u);
    EXPECT_EQ(sampled.delta, (1 - quarter) / 27);
    EXPECT_THROW(delta_closeness(complete(10, 3), quarter), std::invalid_argument);
}

TEST(QuotientGraph, Examples) {
    const auto parts = consecutive_equipartition(8, 4);
    const auto q = quotient_graph(WeightedGraph::complete(8), parts);
    for (int u = 1; u <= 8; ++u)
        for (int v = u + 1; v <= 8; ++v) EXPECT_EQ(q.weight(u, v), (u - 1) / 2 == (v - 1) / 2 ? 0 : 1);

    // block-constant graph is a fixed point up to zeroing the diagonal blocks
    WeightedGraph blown(8);
    for (int u = 1; u <= 8; ++u)
        for (int v = u + 1; v <= 8; ++v) blown.set(u, v, ratio((u - 1) / 2 + (v - 1) / 2 + 1, 7));
    const auto fixed = quotient_graph(blown, parts);
    for (int u = 1; u <= 8; ++u)
        for (int v = u + 1; v <= 8; ++v) EXPECT_EQ(fixed.weight(u, v), (u - 1) / 2 == (v - 1) / 2 ? BigRational(0) : blown.weight(u, v));
    EXPECT_THROW(quotient_graph(WeightedGraph::complete(8), consecutive_equipartition(9, 3)), std::invalid_argument);
}

TEST(QuotientGraph, PlantedGraphBlocks) {
    const int n = 120;
    const auto s = sample_ckp(n, 2, quarter, 17);
    const auto q = quotient_graph(to_graph(s.hypergraph), consecutive_equipartition(n, 4));
    // parts 1,2 lie in A = {1..60}; parts 3,4 in B
    const double aa = to_double(q.weight(1, 31)), ab = to_double(q.weight(1, 61)), bb = to_double(q.weight(61, 91));
    EXPECT_NEAR(aa, 0.5, 3 * std::sqrt(0.25 / 900));
    EXPECT_NEAR(ab, 0.25, 3 * std::sqrt(0.1875 / 900));
    EXPECT_EQ(bb, 0);
}

TEST(CutNorm, Examples) {
    const auto g = WeightedGraph::complete(6);
    EXPECT_EQ(cut_norm(g, g).value, 0);
    const auto r = cut_norm(WeightedGraph::complete(4), WeightedGraph(4));
    EXPECT_EQ(r.value, ratio(3, 4));
    EXPECT_TRUE(r.exact);
    EXPECT_THROW(cut_norm(WeightedGraph(3), WeightedGraph(4)), std::invalid_argument);
    EXPECT_THROW(cut_norm(WeightedGraph(kCutNormExactMax + 1), WeightedGraph(kCutNormExactMax + 1)), std::invalid_argument);
}

TEST(CutNorm, MatchesFourToTheNOracle) {
    CounterRng rng(12, Stream::test_data);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 4;
        const auto g1 = random_graph(n, rng), g2 = random_graph(n, rng);
        const auto r = cut_norm(g1, g2);
        ASSERT_EQ(r.value, oracle::cut_norm(to_oracle(g1), to_oracle(g2))) << "trial " << trial;
        // the reported witness attains the value
        EXPECT_EQ(abs(e_st(g1, r.s, r.t) - e_st(g2, r.s, r.t)) / (n * n), r.value);
    }
}

TEST(CutNorm, MetricProperties) {
    CounterRng rng(8, Stream::test_data);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = random_graph(8, rng), b = random_graph(8, rng), c = random_graph(8, rng);
        const auto ab = cut_norm(a, b).value, bc = cut_norm(b, c).value, ac = cut_norm(a, c).value;
        EXPECT_EQ(ab, cut_norm(b, a).value);
        EXPECT_LE(ac, ab + bc);
    }
}

TEST(CutNorm, HeuristicIsALowerBound) {
    CounterRng rng(99, Stream::test_data);
    const auto big_a = random_graph(kCutNormExactMax + 2, rng), big_b = random_graph(kCutNormExactMax + 2, rng);
    const auto h = cut_norm(big_a, big_b, true, 5);
    EXPECT_FALSE(h.exact);
    const int n = kCutNormExactMax + 2;
    EXPECT_EQ(abs(e_st(big_a, h.s, h.t) - e_st(big_b, h.s, h.t)) / (n * n), h.value);
    EXPECT_GT(h.value, 0);
}

TEST(CutNorm, QuotientDistanceReported) {
    const auto g = to_graph(sample_gnp(12, 2, ratio(1, 2), 4));
    const auto q = quotient_graph(g, consecutive_equipartition(12, 4));
    const auto r = cut_norm(g, q);
    EXPECT_TRUE(r.exact);
    EXPECT_GT(r.value, 0);
    EXPECT_LT(r.value, 1);
}

TEST(TextFormats, VectorAndGraphRoundTrip) {
    const auto v = make_v(8, 2, quarter, range(1, 4));
    std::stringstream a;
    write_solution_vector(a, v);
    const auto back = read_solution_vector(a);
    EXPECT_EQ(back.t, 8);
    EXPECT_EQ(back.k, 2);
    EXPECT_EQ(back.p, quarter);
    EXPECT_TRUE(back.entries == v.entries);

    CounterRng rng(1, Stream::test_data);
    const auto g = random_graph(6, rng);
    std::stringstream b;
    write_graph(b, g);
    EXPECT_EQ(read_graph(b), g);

    std::stringstream bad("3\n1 2\n");
    EXPECT_THROW(read_graph(bad), std::runtime_error);
    std::stringstream dash("4 2 -\n0 1/2\n");
    EXPECT_EQ(read_solution_vector(dash).p, 0);
}
