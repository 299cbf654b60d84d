#pragma once

// Partition-intersection matrices A_{t,k,v} and set-inclusion matrices B(t,h,k),
// plus the rank report comparing computed ranks to the closed-form prediction.

#include "qrcut/combinatorics.hpp"
#include "qrcut/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qrcut {

/// Rows: canonical partitions of [t] with block sizes v (stream order). Columns: colex k-subsets.
/// Entry 1 iff the subset meets every block exactly once; k is the number of blocks.
inline ExactMatrix build_A(int t, std::span<const int> v) {
    validate_size_vector(t, v);
    const int k = static_cast<int>(v.size());
    const auto partitions = enumerate_partitions(t, v);
    const Rank cols = binomial_u64(t, k);
    ExactMatrix a(partitions.size(), cols);
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        const auto& p = partitions[i];
        for_each_ksubset(t, k, [&](Rank r, std::span<const int> s) {
            if (is_transversal(s, p)) a(i, r) = 1;
        });
    }
    return a;
}

inline ExactMatrix build_A(int t, int k, std::span<const int> v) {
    if (static_cast<int>(v.size()) != k)
        throw std::invalid_argument("build_A: size vector has " + std::to_string(v.size()) + " parts, expected k = " + std::to_string(k));
    return build_A(t, v);
}

/// Inclusion matrix: rows h-subsets, columns k-subsets (both colex), entry 1 iff column set is inside row set.
inline ExactMatrix build_B(int t, int h, int k) {
    if (!(t > h && h >= k && k >= 2))
        throw std::invalid_argument("build_B: need t > h >= k >= 2");
    ExactMatrix b(binomial_u64(t, h), binomial_u64(t, k));
    std::vector<int> sub(static_cast<std::size_t>(k));
    for_each_ksubset(t, h, [&](Rank row, std::span<const int> hs) {
        // enumerate k-subsets of the h-set by position, then rank them in [t]
        for_each_ksubset(h, k, [&](Rank, std::span<const int> pos) {
            for (int i = 0; i < k; ++i) sub[static_cast<std::size_t>(i)] = hs[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)] - 1)];
            b(row, colex_rank(sub)) = 1;
        });
    });
    return b;
}

enum class RankRegime {
    proven,        // the closed form is established for these parameters
    unguaranteed,  // balanced, below the known threshold
    empirical,     // balanced, no known threshold (k >= 4)
    degenerate,    // some block smaller than k; no prediction
};

inline std::string to_string(RankRegime r) {
    switch (r) {
        case RankRegime::proven: return "proven";
        case RankRegime::unguaranteed: return "unguaranteed";
        case RankRegime::empirical: return "empirical";
        case RankRegime::degenerate: return "degenerate";
    }
    return "unknown";
}

struct RankReport {
    int t = 0;
    int k = 0;
    std::vector<int> v;
    std::size_t computed_rank = 0;
    std::optional<BigInt> predicted_rank;
    bool match = false;
    std::size_t row_count = 0;
    std::size_t col_count = 0;
    bool balanced = false;
    RankRegime regime = RankRegime::degenerate;
};

inline bool is_constant(std::span<const int> v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

/// Predicted rank of A_{t,k,v}: C(t,k) - t + 1 for constant v, C(t,k) otherwise.
/// No prediction when some v_i < k.
inline std::optional<BigInt> predicted_rank_A(int t, std::span<const int> v) {
    const int k = static_cast<int>(v.size());
    if (std::any_of(v.begin(), v.end(), [k](int x) { return x < k; })) return std::nullopt;
    if (is_constant(v)) return binomial(t, k) - t + 1;
    return binomial(t, k);
}

inline RankRegime rank_regime(int t, std::span<const int> v) {
    const int k = static_cast<int>(v.size());
    if (std::any_of(v.begin(), v.end(), [k](int x) { return x < k; })) return RankRegime::degenerate;
    if (!is_constant(v) || k <= 2) return RankRegime::proven;
    if (k == 3) return t >= 12 ? RankRegime::proven : RankRegime::unguaranteed;
    return RankRegime::empirical;
}

inline RankReport verify_rank_theorem(int t, int k, std::span<const int> v) {
    const ExactMatrix a = build_A(t, k, v);
    RankReport rep;
    rep.t = t;
    rep.k = k;
    rep.v.assign(v.begin(), v.end());
    rep.row_count = a.rows();
    rep.col_count = a.cols();
    rep.balanced = is_constant(v);
    rep.computed_rank = exact_rank(a);
    rep.predicted_rank = predicted_rank_A(t, v);
    rep.regime = rank_regime(t, v);
    rep.match = rep.predicted_rank && *rep.predicted_rank == rep.computed_rank;
    return rep;
}

}  // namespace qrcut
