#pragma once

// k-subsets of [t] = {1..t} in colexicographic order, and partitions of [t]
// with a prescribed multiset of block sizes.

#include "qrcut/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrcut {

using Rank = std::uint64_t;

/// Exact binomial coefficient; zero outside 0 <= r <= n.
inline BigInt binomial(long n, long r) {
    if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
    if (r < 0 || r > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return out;
}

/// Binomial coefficient as a machine word, for index arithmetic. Throws on overflow.
inline Rank binomial_u64(long n, long r) {
    if (n < 0 || r < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    unsigned __int128 acc = 1;
    for (long i = 0; i < r; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - i) / static_cast<unsigned __int128>(i + 1);
        if (acc > std::numeric_limits<Rank>::max())
            throw std::overflow_error("binomial(" + std::to_string(n) + "," + std::to_string(r) + ") exceeds 64 bits");
    }
    return static_cast<Rank>(acc);
}

/// A k-element subset of [t], stored sorted and 1-based.
class KSubset {
public:
    KSubset() = default;

    KSubset(std::vector<int> elements, int t) : elements_(std::move(elements)), t_(t) {
        if (t_ < 0) throw std::invalid_argument("KSubset: negative ground set size");
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (elements_[i] < 1 || elements_[i] > t_)
                throw std::invalid_argument("KSubset: element " + std::to_string(elements_[i]) + " outside [1," + std::to_string(t_) + "]");
            if (i > 0 && elements_[i] <= elements_[i - 1])
                throw std::invalid_argument("KSubset: elements must be strictly increasing");
        }
    }

    int t() const { return t_; }
    int k() const { return static_cast<int>(elements_.size()); }
    std::span<const int> elements() const { return elements_; }
    int operator[](std::size_t i) const { return elements_[i]; }

    bool contains(int x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

    friend bool operator==(const KSubset&, const KSubset&) = default;

private:
    std::vector<int> elements_;
    int t_ = 0;
};

/// Colex rank of a sorted 1-based subset: sum over positions i (1-based) of C(e_i - 1, i).
inline Rank colex_rank(std::span<const int> sorted_elements) {
    Rank r = 0;
    for (std::size_t i = 0; i < sorted_elements.size(); ++i)
        r += binomial_u64(sorted_elements[i] - 1, static_cast<long>(i + 1));
    return r;
}

inline Rank ksubset_rank(const KSubset& s) { return colex_rank(s.elements()); }

inline KSubset ksubset_unrank(Rank index, int t, int k) {
    if (k < 0 || k > t) throw std::invalid_argument("ksubset_unrank: need 0 <= k <= t");
    if (index >= binomial_u64(t, k))
        throw std::out_of_range("ksubset_unrank: index " + std::to_string(index) + " out of range for C(" + std::to_string(t) + "," + std::to_string(k) + ")");
    std::vector<int> out(static_cast<std::size_t>(k));
    int c = t;
    for (int i = k; i >= 1; --i) {
        // largest c with C(c, i) <= index
        while (binomial_u64(c, i) > index) --c;
        out[static_cast<std::size_t>(i - 1)] = c + 1;
        index -= binomial_u64(c, i);
        --c;
    }
    return KSubset(std::move(out), t);
}

/// Advances a sorted 1-based k-subset of [t] to its colex successor. Returns false after the last one.
inline bool next_colex(std::vector<int>& s, int t) {
    const std::size_t k = s.size();
    for (std::size_t i = 0; i < k; ++i) {
        const int limit = (i + 1 < k) ? s[i + 1] : t + 1;
        if (s[i] + 1 < limit) {
            ++s[i];
            for (std::size_t j = 0; j < i; ++j) s[j] = static_cast<int>(j) + 1;
            return true;
        }
    }
    return false;
}

/// Calls visit(rank, elements) for every k-subset of [t] in colex order.
template <typename Visitor>
void for_each_ksubset(int t, int k, Visitor&& visit) {
    if (k < 0 || k > t) return;
    std::vector<int> s(static_cast<std::size_t>(k));
    std::iota(s.begin(), s.end(), 1);
    Rank r = 0;
    do {
        visit(r++, std::span<const int>(s));
    } while (next_colex(s, t));
}

/// Partition of [t] into blocks with sizes v (block i has size v[i]).
///
/// Blocks of equal size are unordered; the canonical representative lists them in
/// increasing order of minimum element, so each unordered partition appears once.
class BalancedPartition {
public:
    BalancedPartition() = default;

    BalancedPartition(std::vector<std::vector<int>> blocks, int t) : blocks_(std::move(blocks)), t_(t) {
        labels_.assign(static_cast<std::size_t>(t_) + 1, -1);
        int covered = 0;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            auto& block = blocks_[b];
            std::sort(block.begin(), block.end());
            for (int x : block) {
                if (x < 1 || x > t_) throw std::invalid_argument("BalancedPartition: element outside [1,t]");
                if (labels_[static_cast<std::size_t>(x)] != -1) throw std::invalid_argument("BalancedPartition: blocks overlap");
                labels_[static_cast<std::size_t>(x)] = static_cast<int>(b);
                ++covered;
            }
        }
        if (covered != t_) throw std::invalid_argument("BalancedPartition: blocks do not cover [t]");
    }

    int t() const { return t_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& block(std::size_t i) const { return blocks_[i]; }

    std::vector<int> sizes() const {
        std::vector<int> v;
        for (const auto& b : blocks_) v.push_back(static_cast<int>(b.size()));
        return v;
    }

    /// Block index of element x (1-based).
    int block_of(int x) const { return labels_[static_cast<std::size_t>(x)]; }

    /// True when equal-size blocks appear in increasing order of minimum element.
    bool is_canonical() const {
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            for (std::size_t j = i + 1; j < blocks_.size(); ++j)
                if (blocks_[i].size() == blocks_[j].size() && !blocks_[i].empty() && blocks_[i].front() > blocks_[j].front())
                    return false;
        return true;
    }

    friend bool operator==(const BalancedPartition& a, const BalancedPartition& b) {
        return a.t_ == b.t_ && a.blocks_ == b.blocks_;
    }

private:
    std::vector<std::vector<int>> blocks_;
    std::vector<int> labels_;  // index 0 unused
    int t_ = 0;
};

inline void validate_size_vector(int t, std::span<const int> v) {
    if (v.empty()) throw std::invalid_argument("size vector is empty");
    long sum = 0;
    for (int x : v) {
        if (x < 1) throw std::invalid_argument("size vector entries must be >= 1");
        sum += x;
    }
    if (sum != t)
        throw std::invalid_argument("size vector sums to " + std::to_string(sum) + ", expected t = " + std::to_string(t));
}

/// t! / (prod v_i! * prod_m c_m!) where c_m counts blocks of size m.
inline BigInt count_partitions(int t, std::span<const int> v) {
    validate_size_vector(t, v);
    BigInt denom = 1;
    std::map<int, unsigned long> multiplicity;
    for (int x : v) {
        denom *= factorial(static_cast<unsigned long>(x));
        ++multiplicity[x];
    }
    for (const auto& [size, c] : multiplicity) denom *= factorial(c);
    return factorial(static_cast<unsigned long>(t)) / denom;
}

/// Streams every canonical partition of [t] with block sizes v, in a fixed depth-first order.
template <typename Visitor>
void for_each_partition(int t, std::span<const int> v, Visitor&& visit) {
    validate_size_vector(t, v);
    const std::size_t k = v.size();

    // Positions sharing a block size form a group; within a group blocks are opened in index order.
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < k; ++i) groups[v[i]].push_back(i);
    std::vector<std::vector<std::size_t>> group_positions;
    for (auto& [size, positions] : groups) group_positions.push_back(positions);
    std::vector<std::size_t> opened(group_positions.size(), 0);

    std::vector<std::vector<int>> blocks(k);
    for (std::size_t i = 0; i < k; ++i) blocks[i].reserve(static_cast<std::size_t>(v[i]));

    std::function<void(int)> place = [&](int element) {
        if (element > t) {
            visit(BalancedPartition(blocks, t));
            return;
        }
        for (std::size_t g = 0; g < group_positions.size(); ++g) {
            const auto& positions = group_positions[g];
            for (std::size_t o = 0; o < opened[g]; ++o) {
                const std::size_t pos = positions[o];
                if (static_cast<int>(blocks[pos].size()) < v[pos]) {
                    blocks[pos].push_back(element);
                    place(element + 1);
                    blocks[pos].pop_back();
                }
            }
            if (opened[g] < positions.size()) {
                const std::size_t pos = positions[opened[g]];
                ++opened[g];
                blocks[pos].push_back(element);
                place(element + 1);
                blocks[pos].pop_back();
                --opened[g];
            }
        }
    };
    place(1);
}

inline std::vector<BalancedPartition> enumerate_partitions(int t, std::span<const int> v) {
    std::vector<BalancedPartition> out;
    for_each_partition(t, v, [&](const BalancedPartition& p) { out.push_back(p); });
    return out;
}

/// True iff s meets every block of p in exactly one element.
inline bool is_transversal(std::span<const int> s, const BalancedPartition& p) {
    if (s.size() != p.block_count())
        throw std::invalid_argument("is_transversal: subset size differs from block count");
    std::vector<int> hits(p.block_count(), 0);
    for (int x : s) {
        if (x < 1 || x > p.t()) throw std::invalid_argument("is_transversal: element outside ground set");
        if (++hits[static_cast<std::size_t>(p.block_of(x))] > 1) return false;
    }
    return true;
}

inline bool is_transversal(const KSubset& s, const BalancedPartition& p) {
    if (s.t() != p.t()) throw std::invalid_argument("is_transversal: ground sets differ");
    return is_transversal(s.elements(), p);
}

/// Constant size vector (t/k, ..., t/k). Requires k | t.
inline std::vector<int> balanced_sizes(int t, int k) {
    if (k <= 0 || t % k != 0)
        throw std::invalid_argument("balanced size vector needs k | t (t=" + std::to_string(t) + ", k=" + std::to_string(k) + ")");
    return std::vector<int>(static_cast<std::size_t>(k), t / k);
}

}  // namespace qrcut
