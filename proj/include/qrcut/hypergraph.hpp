#pragma once

// k-uniform hypergraphs on [n] with weights indexed by colex rank, the random
// constructions G_k(n,p) and C_k(n,p), cut and induced edge counts, the type-z
// cut density identity, and Monte Carlo checks of the cut property and of D_1.

#include "qrcut/combinatorics.hpp"
#include "qrcut/random.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qrcut {

using VertexSet = std::vector<int>;  // 1-based vertex labels

enum class WeightMode { indicator, fractional };

inline std::string to_string(WeightMode m) { return m == WeightMode::indicator ? "indicator" : "fractional"; }

/// Weighted k-uniform hypergraph on [n].
///
/// Indicator mode keeps the sorted list of edge ranks (plus their vertex tuples);
/// fractional mode keeps a dense weight per colex rank. weight(r) is defined for
/// every rank in both modes.
class WeightedHypergraph {
public:
    WeightedHypergraph() = default;

    static WeightedHypergraph indicator(int n, int k, std::vector<Rank> edge_ranks) {
        WeightedHypergraph h(n, k, WeightMode::indicator);
        std::sort(edge_ranks.begin(), edge_ranks.end());
        if (std::adjacent_find(edge_ranks.begin(), edge_ranks.end()) != edge_ranks.end())
            throw std::invalid_argument("indicator hypergraph: duplicate edge rank");
        if (!edge_ranks.empty() && edge_ranks.back() >= h.slots_)
            throw std::out_of_range("indicator hypergraph: edge rank out of range");
        h.edges_ = std::move(edge_ranks);
        h.edge_vertices_.reserve(h.edges_.size() * static_cast<std::size_t>(k));
        for (Rank r : h.edges_) {
            const KSubset s = ksubset_unrank(r, n, k);
            h.edge_vertices_.insert(h.edge_vertices_.end(), s.elements().begin(), s.elements().end());
        }
        return h;
    }

    static WeightedHypergraph fractional(int n, int k, RationalVector weights) {
        WeightedHypergraph h(n, k, WeightMode::fractional);
        if (weights.size() != h.slots_)
            throw std::invalid_argument("fractional hypergraph: expected " + std::to_string(h.slots_) + " weights");
        h.weights_ = std::move(weights);
        return h;
    }

    int n() const { return n_; }
    int k() const { return k_; }
    WeightMode mode() const { return mode_; }
    Rank slot_count() const { return slots_; }

    BigRational weight(Rank r) const {
        if (r >= slots_) throw std::out_of_range("hypergraph weight: rank out of range");
        if (mode_ == WeightMode::fractional) return weights_[r];
        return std::binary_search(edges_.begin(), edges_.end(), r) ? 1 : 0;
    }

    const std::vector<Rank>& edge_ranks() const { return edges_; }
    const RationalVector& weights() const { return weights_; }

    /// Number of edges (indicator) or of nonzero weights (fractional).
    std::size_t support_size() const {
        if (mode_ == WeightMode::indicator) return edges_.size();
        return static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(), [](const BigRational& w) { return sgn(w) != 0; }));
    }

    BigRational total_weight() const {
        if (mode_ == WeightMode::indicator) return BigRational(static_cast<unsigned long>(edges_.size()));
        BigRational s = 0;
        for (const auto& w : weights_) s += w;
        return s;
    }

    /// Weighted sum over k-sets whose vertex tuple satisfies pred. Indicator mode counts in machine words.
    template <typename Pred>
    BigRational sum_where(Pred&& pred) const {
        if (mode_ == WeightMode::indicator) {
            std::uint64_t count = 0;
            const std::size_t kk = static_cast<std::size_t>(k_);
            for (std::size_t e = 0; e < edges_.size(); ++e)
                if (pred(std::span<const int>(edge_vertices_.data() + e * kk, kk))) ++count;
            return BigRational(BigInt(static_cast<unsigned long>(count)));
        }
        BigRational s = 0;
        for_each_ksubset(n_, k_, [&](Rank r, std::span<const int> verts) {
            if (sgn(weights_[r]) != 0 && pred(verts)) s += weights_[r];
        });
        return s;
    }

    /// Calls visit(vertices, weight) for every k-set with nonzero weight.
    template <typename Visitor>
    void for_each_weighted(Visitor&& visit) const {
        if (mode_ == WeightMode::indicator) {
            const BigRational one = 1;
            const std::size_t kk = static_cast<std::size_t>(k_);
            for (std::size_t e = 0; e < edges_.size(); ++e) visit(std::span<const int>(edge_vertices_.data() + e * kk, kk), one);
            return;
        }
        for_each_ksubset(n_, k_, [&](Rank r, std::span<const int> verts) {
            if (sgn(weights_[r]) != 0) visit(verts, weights_[r]);
        });
    }

    friend bool operator==(const WeightedHypergraph& a, const WeightedHypergraph& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.mode_ == b.mode_ && a.edges_ == b.edges_ && a.weights_ == b.weights_;
    }

private:
    WeightedHypergraph(int n, int k, WeightMode mode) : n_(n), k_(k), mode_(mode) {
        if (n < 1 || k < 1 || k > n) throw std::invalid_argument("hypergraph needs 1 <= k <= n");
        slots_ = binomial_u64(n, k);
    }

    int n_ = 0;
    int k_ = 0;
    WeightMode mode_ = WeightMode::indicator;
    Rank slots_ = 0;
    std::vector<Rank> edges_;
    std::vector<int> edge_vertices_;
    RationalVector weights_;
};

inline void require_probability(const BigRational& p, const BigRational& max = 1) {
    if (p < 0 || p > max) throw std::invalid_argument("probability " + to_string(p) + " outside [0, " + to_string(max) + "]");
}

/// G_k(n,p): each k-set is an edge independently with probability p; draw for rank r is counter_hash(seed, edges, r).
inline WeightedHypergraph sample_gnp(int n, int k, const BigRational& p, std::uint64_t seed) {
    require_probability(p);
    const BernoulliThreshold coin(p);
    std::vector<Rank> edges;
    for_each_ksubset(n, k, [&](Rank r, std::span<const int>) {
        if (coin(counter_hash(seed, static_cast<std::uint64_t>(Stream::edges), r))) edges.push_back(r);
    });
    return WeightedHypergraph::indicator(n, k, std::move(edges));
}

struct PlantedSample {
    WeightedHypergraph hypergraph;
    VertexSet a;  // sorted
    VertexSet b;  // sorted
};

inline void require_half(int n, const VertexSet& a) {
    if (n % 2 != 0) throw std::invalid_argument("planted bipartition needs even n");
    if (static_cast<int>(a.size()) != n / 2) throw std::invalid_argument("planted set A must have n/2 vertices");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 1 || a[i] > n) throw std::invalid_argument("planted set A has a vertex outside [1,n]");
        if (i && a[i] <= a[i - 1]) throw std::invalid_argument("planted set A must be sorted without repeats");
    }
}

inline VertexSet complement(int n, const VertexSet& a) {
    std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
    for (int x : a) in[static_cast<std::size_t>(x)] = 1;
    VertexSet b;
    for (int x = 1; x <= n; ++x)
        if (!in[static_cast<std::size_t>(x)]) b.push_back(x);
    return b;
}

inline std::vector<char> membership(int n, const VertexSet& s) {
    std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
    for (int x : s) {
        if (x < 1 || x > n) throw std::invalid_argument("vertex " + std::to_string(x) + " outside [1," + std::to_string(n) + "]");
        in[static_cast<std::size_t>(x)] = 1;
    }
    return in;
}

/// Edge probability 2pj/k for a k-set with j vertices in A.
inline BigRational planted_probability(const BigRational& p, int k, int j) { return ratio(2 * j, k) * p; }

/// C_k(n,p). A = {1..n/2} unless shuffle is set, in which case A is the image of that set
/// under a seed-driven permutation.
inline PlantedSample sample_ckp(int n, int k, const BigRational& p, std::uint64_t seed, bool shuffle = false) {
    if (n % 2 != 0) throw std::invalid_argument("C_k(n,p) needs even n");
    require_probability(p, BigRational(1, 2));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    if (shuffle) CounterRng(seed, Stream::vertex_shuffle).shuffle(perm);
    VertexSet a(perm.begin(), perm.begin() + n / 2);
    std::sort(a.begin(), a.end());
    const auto in_a = membership(n, a);

    std::vector<BernoulliThreshold> coins;
    for (int j = 0; j <= k; ++j) coins.emplace_back(planted_probability(p, k, j));
    std::vector<Rank> edges;
    for_each_ksubset(n, k, [&](Rank r, std::span<const int> s) {
        int j = 0;
        for (int x : s) j += in_a[static_cast<std::size_t>(x)];
        if (coins[static_cast<std::size_t>(j)](counter_hash(seed, static_cast<std::uint64_t>(Stream::edges), r))) edges.push_back(r);
    });
    return {WeightedHypergraph::indicator(n, k, std::move(edges)), a, complement(n, a)};
}

/// Expectation of C_k(n,p) given A: weight 2pj/k on every k-set with j vertices in A.
inline WeightedHypergraph exact_ckp_weights(int n, int k, const BigRational& p, const VertexSet& a) {
    require_half(n, a);
    require_probability(p, BigRational(1, 2));
    const auto in_a = membership(n, a);
    RationalVector w(binomial_u64(n, k));
    for_each_ksubset(n, k, [&](Rank r, std::span<const int> s) {
        int j = 0;
        for (int x : s) j += in_a[static_cast<std::size_t>(x)];
        w[r] = planted_probability(p, k, j);
    });
    return WeightedHypergraph::fractional(n, k, std::move(w));
}

/// e(U): total weight of k-sets inside U.
inline BigRational edge_weight_within(const WeightedHypergraph& h, const VertexSet& u) {
    const auto in = membership(h.n(), u);
    return h.sum_where([&](std::span<const int> s) {
        for (int x : s)
            if (!in[static_cast<std::size_t>(x)]) return false;
        return true;
    });
}

/// Vertex classes V_1..V_r of a cut. Classes are disjoint; covering [n] is required for
/// cut specs built through make_cut.
struct CutSpec {
    int n = 0;
    std::vector<VertexSet> classes;

    std::vector<BigRational> alpha() const {
        std::vector<BigRational> a;
        for (const auto& c : classes) a.emplace_back(static_cast<long>(c.size()), n);
        for (auto& x : a) x.canonicalize();
        return a;
    }

    /// Class index per vertex (index 0 unused), -1 for vertices in no class.
    std::vector<int> labels() const {
        std::vector<int> lab(static_cast<std::size_t>(n) + 1, -1);
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (int x : classes[i]) {
                if (x < 1 || x > n) throw std::invalid_argument("cut class contains vertex outside [1,n]");
                if (lab[static_cast<std::size_t>(x)] != -1) throw std::invalid_argument("cut classes overlap");
                lab[static_cast<std::size_t>(x)] = static_cast<int>(i);
            }
        return lab;
    }
};

inline CutSpec make_cut(int n, std::vector<VertexSet> classes, const std::optional<std::vector<BigRational>>& alpha = std::nullopt) {
    CutSpec c{n, std::move(classes)};
    const auto lab = c.labels();
    for (int x = 1; x <= n; ++x)
        if (lab[static_cast<std::size_t>(x)] == -1) throw std::invalid_argument("cut classes do not cover [1,n]");
    if (alpha) {
        if (alpha->size() != c.classes.size()) throw std::invalid_argument("cut: alpha has wrong length");
        for (std::size_t i = 0; i < c.classes.size(); ++i)
            if ((*alpha)[i] * n != static_cast<long>(c.classes[i].size()))
                throw std::invalid_argument("cut: class " + std::to_string(i) + " has size " + std::to_string(c.classes[i].size()) + ", expected alpha_i n");
    }
    return c;
}

/// Weight of k-sets whose k vertices lie in k distinct classes.
inline BigRational cut_weight(const WeightedHypergraph& h, const CutSpec& cut) {
    if (cut.n != h.n()) throw std::invalid_argument("cut_weight: cut and hypergraph differ in n");
    const auto lab = cut.labels();
    const std::size_t r = cut.classes.size();
    std::vector<int> stamp(r, -1);
    int tick = 0;
    return h.sum_where([&](std::span<const int> s) {
        ++tick;
        for (int x : s) {
            const int c = lab[static_cast<std::size_t>(x)];
            if (c < 0 || stamp[static_cast<std::size_t>(c)] == tick) return false;
            stamp[static_cast<std::size_t>(c)] = tick;
        }
        return true;
    });
}

/// sum over nonempty S of (-1)^{k-|S|} e(union_{i in S} V_i), for exactly k disjoint classes.
inline BigRational inclusion_exclusion_cut(const WeightedHypergraph& h, const std::vector<VertexSet>& classes) {
    if (static_cast<int>(classes.size()) != h.k())
        throw std::invalid_argument("inclusion_exclusion_cut: need exactly k classes");
    CutSpec probe{h.n(), classes};
    (void)probe.labels();  // validates disjointness
    const std::size_t k = classes.size();
    BigRational total = 0;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        VertexSet u;
        int size = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                u.insert(u.end(), classes[i].begin(), classes[i].end());
                ++size;
            }
        std::sort(u.begin(), u.end());
        const BigRational e = edge_weight_within(h, u);
        if ((static_cast<int>(k) - size) % 2) total -= e;
        else total += e;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Type-z cuts of the planted construction

inline void require_type_z(int r, int k, const std::vector<BigRational>& z) {
    if (k < 1 || r < k) throw std::invalid_argument("type-z density needs r >= k >= 1");
    if (static_cast<int>(z.size()) != r) throw std::invalid_argument("type-z vector must have r entries");
    BigRational sum = 0;
    for (const auto& x : z) {
        if (sgn(x) <= 0) throw std::invalid_argument("type-z entries must be positive");
        sum += x;
    }
    if (sum * 2 != r) throw std::invalid_argument("type-z entries must sum to r/2, got " + to_string(sum));
}

/// s_{r,k,j} = sum over K in C([r],k), J in C(K,j) of prod_{J} z * prod_{K-J} (1 - z).
inline BigRational s_rkj(int r, int k, int j, const std::vector<BigRational>& z) {
    BigRational total = 0;
    for_each_ksubset(r, k, [&](Rank, std::span<const int> kset) {
        for_each_ksubset(k, j, [&](Rank, std::span<const int> pos) {
            BigRational term = 1;
            std::size_t p = 0;
            for (int idx = 1; idx <= k; ++idx) {
                const auto& zi = z[static_cast<std::size_t>(kset[static_cast<std::size_t>(idx - 1)] - 1)];
                if (p < pos.size() && pos[p] == idx) {
                    term *= zi;
                    ++p;
                } else {
                    term *= 1 - zi;
                }
            }
            total += term;
        });
    });
    return total;
}

/// Expected crossing density of a type-z balanced r-cut of C_k(n,p):
/// (1 / C(r,k)) * sum_j (2pj/k) s_{r,k,j}.
inline BigRational type_z_density(int r, int k, const BigRational& p, const std::vector<BigRational>& z) {
    require_type_z(r, k, z);
    BigRational sum = 0;
    for (int j = 1; j <= k; ++j) sum += planted_probability(p, k, j) * s_rkj(r, k, j, z);
    return sum / BigRational(binomial(r, k));
}

inline constexpr int kMonomialMaxR = 10;

/// Multilinear expansion of sum_j (2j/k) s_{r,k,j} in z_1..z_r; keys are bitmasks of J,
/// values the coefficient of p * prod_{i in J} z_i.
inline std::map<std::uint32_t, BigRational> monomial_coefficients(int r, int k) {
    if (k < 2 || r < k) throw std::invalid_argument("monomial_coefficients needs r >= k >= 2");
    if (r > kMonomialMaxR) throw std::invalid_argument("monomial_coefficients: r exceeds " + std::to_string(kMonomialMaxR));
    std::map<std::uint32_t, BigRational> coeff;
    for_each_ksubset(r, k, [&](Rank, std::span<const int> kset) {
        std::uint32_t kmask = 0;
        for (int x : kset) kmask |= 1u << (x - 1);
        // z_{K,J} = prod_J z * prod_{K-J}(1-z) = sum_{T subset K-J} (-1)^{|T|} z^{J cup T}
        for (std::uint32_t jmask = kmask;; jmask = (jmask - 1) & kmask) {
            const int j = std::popcount(jmask);
            if (j >= 1) {
                const BigRational weight = ratio(2 * j, k);
                const std::uint32_t rest = kmask & ~jmask;
                for (std::uint32_t tmask = rest;; tmask = (tmask - 1) & rest) {
                    const BigRational term = (std::popcount(tmask) % 2) ? BigRational(-weight) : weight;
                    coeff[jmask | tmask] += term;
                    if (tmask == 0) break;
                }
            }
            if (jmask == 0) break;
        }
    });
    for (auto& [mask, c] : coeff) c.canonicalize();
    return coeff;
}

inline BigRational evaluate_multilinear(const std::map<std::uint32_t, BigRational>& coeff, const std::vector<BigRational>& z) {
    BigRational total = 0;
    for (const auto& [mask, c] : coeff) {
        BigRational term = c;
        for (std::size_t i = 0; i < z.size(); ++i)
            if (mask & (1u << i)) term *= z[i];
        total += term;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Monte Carlo statistics

/// Reference model for variances: independent edges with probability p, or the planted
/// model with probability 2pj/k for j vertices in A.
struct EdgeModel {
    BigRational p;
    std::optional<VertexSet> planted_a;
};

/// Counts N_j of crossing k-sets (vertices in distinct classes) with j vertices in A.
inline std::vector<BigInt> crossing_counts_by_a(const CutSpec& cut, int k, const std::vector<char>& in_a) {
    // dp[c][j]: ways to pick c vertices from distinct processed classes, j of them in A
    std::vector<std::vector<BigInt>> dp(static_cast<std::size_t>(k) + 1, std::vector<BigInt>(static_cast<std::size_t>(k) + 1, 0));
    dp[0][0] = 1;
    for (const auto& cls : cut.classes) {
        long a = 0, b = 0;
        for (int x : cls) (in_a.empty() || !in_a[static_cast<std::size_t>(x)]) ? ++b : ++a;
        for (int c = k - 1; c >= 0; --c)
            for (int j = c; j >= 0; --j) {
                const BigInt& cur = dp[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
                if (cur == 0) continue;
                dp[static_cast<std::size_t>(c) + 1][static_cast<std::size_t>(j) + 1] += cur * a;
                dp[static_cast<std::size_t>(c) + 1][static_cast<std::size_t>(j)] += cur * b;
            }
    }
    return dp[static_cast<std::size_t>(k)];
}

struct CutMoments {
    BigRational crossing_sets;  // number of crossing k-sets
    BigRational target;         // p * crossing_sets = p n^k sum prod alpha_i
    BigRational variance;       // under the reference model
};

inline CutMoments cut_moments(const CutSpec& cut, int k, const EdgeModel& model) {
    std::vector<char> in_a;
    if (model.planted_a) in_a = membership(cut.n, *model.planted_a);
    const auto counts = crossing_counts_by_a(cut, k, in_a);
    CutMoments m;
    m.crossing_sets = 0;
    m.variance = 0;
    for (int j = 0; j <= k; ++j) {
        const BigRational nj(counts[static_cast<std::size_t>(j)]);
        m.crossing_sets += nj;
        const BigRational q = model.planted_a ? planted_probability(model.p, k, j) : model.p;
        m.variance += nj * q * (1 - q);
    }
    m.target = model.p * m.crossing_sets;
    return m;
}

struct DeviationSample {
    BigRational observed;
    BigRational target;
    BigRational deviation;             // observed - target
    BigRational normalized_deviation;  // deviation / n^k
    double sigma = 0;                  // sqrt(variance) under the reference model
    double z_score = 0;                // deviation / sigma (0 when both vanish, inf when sigma = 0 only)
    bool pass = false;
};

struct StatisticsReport {
    std::string check;
    int n = 0;
    int k = 0;
    BigRational p;
    std::uint64_t seed = 0;
    double z_tolerance = 3.0;
    std::vector<DeviationSample> samples;
    BigRational max_abs_normalized_deviation = 0;
    BigRational mean_abs_normalized_deviation = 0;
    double max_abs_z = 0;
    bool pass = true;
};

inline DeviationSample make_sample(const BigRational& observed, const BigRational& target, const BigRational& variance,
                                   const BigRational& scale, double z_tolerance) {
    DeviationSample s;
    s.observed = observed;
    s.target = target;
    s.deviation = observed - target;
    s.normalized_deviation = s.deviation / scale;
    s.sigma = std::sqrt(variance.get_d());
    if (sgn(s.deviation) == 0) {
        s.z_score = 0;
        s.pass = true;
    } else if (sgn(variance) == 0) {
        s.z_score = s.deviation > 0 ? INFINITY : -INFINITY;
        s.pass = false;
    } else {
        s.z_score = s.deviation.get_d() / s.sigma;
        s.pass = std::fabs(s.z_score) <= z_tolerance;
    }
    return s;
}

inline void finalize(StatisticsReport& rep) {
    rep.pass = true;
    rep.max_abs_normalized_deviation = 0;
    BigRational sum = 0;
    rep.max_abs_z = 0;
    for (const auto& s : rep.samples) {
        const BigRational a = abs(s.normalized_deviation);
        if (a > rep.max_abs_normalized_deviation) rep.max_abs_normalized_deviation = a;
        sum += a;
        rep.max_abs_z = std::max(rep.max_abs_z, std::fabs(s.z_score));
        rep.pass = rep.pass && s.pass;
    }
    rep.mean_abs_normalized_deviation = rep.samples.empty() ? BigRational(0) : sum / static_cast<long>(rep.samples.size());
}

inline BigRational n_pow_k(int n, int k) { return BigRational(power(BigInt(n), static_cast<unsigned long>(k))); }

/// Uniformly random cut of [n] with class sizes alpha_i n; trial t uses its own counter stream.
inline CutSpec random_cut(int n, const std::vector<BigRational>& alpha, std::uint64_t seed, std::uint64_t trial) {
    std::vector<long> sizes;
    BigRational total = 0;
    for (const auto& a : alpha) {
        const BigRational s = a * n;
        if (s.get_den() != 1 || sgn(s) <= 0) throw std::invalid_argument("alpha_i n must be a positive integer, got " + to_string(s));
        sizes.push_back(s.get_num().get_si());
        total += a;
    }
    if (total != 1) throw std::invalid_argument("alpha must sum to 1");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    CounterRng(seed, Stream::cut_trials, trial).shuffle(perm);
    std::vector<VertexSet> classes;
    std::size_t at = 0;
    for (long s : sizes) {
        VertexSet c(perm.begin() + static_cast<long>(at), perm.begin() + static_cast<long>(at) + s);
        std::sort(c.begin(), c.end());
        classes.push_back(std::move(c));
        at += static_cast<std::size_t>(s);
    }
    return make_cut(n, std::move(classes), alpha);
}

/// Samples random cuts of shape alpha and compares cut weights with p n^k sum_{|S|=k} prod alpha_i.
inline StatisticsReport check_P_alpha(const WeightedHypergraph& h, const EdgeModel& model, const std::vector<BigRational>& alpha,
                                      std::size_t trials, std::uint64_t seed, double z_tolerance = 3.0) {
    if (static_cast<int>(alpha.size()) < h.k()) throw std::invalid_argument("check_P_alpha: need at least k classes");
    StatisticsReport rep;
    rep.check = "P_alpha";
    rep.n = h.n();
    rep.k = h.k();
    rep.p = model.p;
    rep.seed = seed;
    rep.z_tolerance = z_tolerance;
    const BigRational scale = n_pow_k(h.n(), h.k());
    for (std::size_t t = 0; t < trials; ++t) {
        const CutSpec cut = random_cut(h.n(), alpha, seed, t);
        const CutMoments m = cut_moments(cut, h.k(), model);
        rep.samples.push_back(make_sample(cut_weight(h, cut), m.target, m.variance, scale, z_tolerance));
    }
    finalize(rep);
    return rep;
}

/// D_1 deviation of a single vertex set: reports e(U) - (p/k!)|U|^k normalised by n^k, and a
/// z-score of e(U) against p C(|U|,k) with the independent-edge variance p(1-p) C(|U|,k).
inline DeviationSample d1_sample(const WeightedHypergraph& h, const BigRational& p, const VertexSet& u, double z_tolerance) {
    const int k = h.k();
    const BigRational observed = edge_weight_within(h, u);
    const BigRational size(static_cast<long>(u.size()));
    const BigRational target = p * power(size, static_cast<unsigned long>(k)) / BigRational(factorial(static_cast<unsigned long>(k)));
    const BigRational inside(binomial(static_cast<long>(u.size()), k));
    DeviationSample s = make_sample(observed, p * inside, p * (1 - p) * inside, n_pow_k(h.n(), k), z_tolerance);
    s.target = target;
    s.deviation = observed - target;
    s.normalized_deviation = s.deviation / n_pow_k(h.n(), k);
    return s;
}

inline StatisticsReport check_D1(const WeightedHypergraph& h, const BigRational& p, const std::vector<int>& sizes, std::size_t trials,
                                 std::uint64_t seed, double z_tolerance = 3.0) {
    StatisticsReport rep;
    rep.check = "D1";
    rep.n = h.n();
    rep.k = h.k();
    rep.p = p;
    rep.seed = seed;
    rep.z_tolerance = z_tolerance;
    std::uint64_t stream = 0;
    for (int size : sizes) {
        if (size < 1 || size > h.n()) throw std::invalid_argument("check_D1: subset size outside [1,n]");
        for (std::size_t t = 0; t < trials; ++t, ++stream) {
            std::vector<int> perm(static_cast<std::size_t>(h.n()));
            std::iota(perm.begin(), perm.end(), 1);
            CounterRng(seed, Stream::subset_trials, stream).shuffle(perm);
            VertexSet u(perm.begin(), perm.begin() + size);
            std::sort(u.begin(), u.end());
            rep.samples.push_back(d1_sample(h, p, u, z_tolerance));
        }
    }
    finalize(rep);
    return rep;
}

inline StatisticsReport check_D1_on_set(const WeightedHypergraph& h, const BigRational& p, const VertexSet& u, double z_tolerance = 3.0) {
    StatisticsReport rep;
    rep.check = "D1";
    rep.n = h.n();
    rep.k = h.k();
    rep.p = p;
    rep.z_tolerance = z_tolerance;
    rep.samples.push_back(d1_sample(h, p, u, z_tolerance));
    finalize(rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Text format: header "n k mode", then one rank per line (indicator) or "rank num/den" (fractional).

inline void write_hypergraph(std::ostream& out, const WeightedHypergraph& h) {
    out << h.n() << ' ' << h.k() << ' ' << to_string(h.mode()) << '\n';
    if (h.mode() == WeightMode::indicator) {
        for (Rank r : h.edge_ranks()) out << r << '\n';
    } else {
        const auto& w = h.weights();
        for (Rank r = 0; r < w.size(); ++r)
            if (sgn(w[r]) != 0) out << r << ' ' << to_string(w[r]) << '\n';
    }
}

inline WeightedHypergraph read_hypergraph(std::istream& in) {
    int n = 0, k = 0;
    std::string mode;
    if (!(in >> n >> k >> mode)) throw std::runtime_error("hypergraph file: missing 'n k mode' header");
    if (mode == "indicator") {
        std::vector<Rank> edges;
        Rank r;
        while (in >> r) edges.push_back(r);
        if (!in.eof()) throw std::runtime_error("hypergraph file: malformed edge rank");
        return WeightedHypergraph::indicator(n, k, std::move(edges));
    }
    if (mode == "fractional") {
        RationalVector w(binomial_u64(n, k));
        Rank r;
        std::string value;
        while (in >> r) {
            if (!(in >> value)) throw std::runtime_error("hypergraph file: rank without weight");
            if (r >= w.size()) throw std::runtime_error("hypergraph file: rank out of range");
            w[r] = parse_rational(value);
        }
        if (!in.eof()) throw std::runtime_error("hypergraph file: malformed line");
        return WeightedHypergraph::fractional(n, k, std::move(w));
    }
    throw std::runtime_error("hypergraph file: unknown mode '" + mode + "'");
}

}  // namespace qrcut
