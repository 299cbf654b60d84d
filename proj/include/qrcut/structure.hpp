#pragma once

// Solutions of the fractional balanced-cut system A_{t,k,(t/k,...)} x = p (t/k)^k:
// the uniform vector u, the planted vectors v(A), the full solution space, and the
// check that the latter is the affine span of the former. Also density vectors of
// equipartitions, delta-closeness, quotient graphs, and the cut norm.

#include "qrcut/hypergraph.hpp"
#include "qrcut/intersection.hpp"

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qrcut {

enum class Provenance { uniform, planted, general };

inline std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::uniform: return "uniform";
        case Provenance::planted: return "planted";
        case Provenance::general: return "general";
    }
    return "general";
}

/// Weight vector on the k-subsets of [t], colex-indexed.
struct SolutionVector {
    int t = 0;
    int k = 0;
    BigRational p;
    RationalVector entries;
    Provenance provenance = Provenance::general;
    std::optional<VertexSet> planted_a;

    /// All entries in [0,1], i.e. realisable as edge probabilities.
    bool is_realizable() const {
        return std::all_of(entries.begin(), entries.end(), [](const BigRational& x) { return x >= 0 && x <= 1; });
    }
};

inline SolutionVector make_u(int t, int k, const BigRational& p) {
    return {t, k, p, RationalVector(binomial_u64(t, k), p), Provenance::uniform, std::nullopt};
}

/// Entry of S is 2pj/k with j = |S cap A|; requires |A| = t/2.
inline SolutionVector make_v(int t, int k, const BigRational& p, const VertexSet& a) {
    require_half(t, a);
    const auto in_a = membership(t, a);
    RationalVector x(binomial_u64(t, k));
    for_each_ksubset(t, k, [&](Rank r, std::span<const int> s) {
        int j = 0;
        for (int v : s) j += in_a[static_cast<std::size_t>(v)];
        x[r] = planted_probability(p, k, j);
    });
    return {t, k, p, std::move(x), Provenance::planted, a};
}

/// Every A subset of [t] with |A| = t/2 (ordered bipartitions (A, complement)).
inline std::vector<VertexSet> all_half_sets(int t) {
    if (t % 2 != 0) throw std::invalid_argument("all_half_sets needs even t");
    std::vector<VertexSet> out;
    for_each_ksubset(t, t / 2, [&](Rank, std::span<const int> s) { out.emplace_back(s.begin(), s.end()); });
    return out;
}

/// The balanced system A x = p (t/k)^k 1, with the matrix kept as 0/1 column lists per row.
class PstarSystem {
public:
    PstarSystem(int t, int k, const BigRational& p) : t_(t), k_(k), p_(p), matrix_(build_A(t, k, balanced_sizes(t, k))) {
        rhs_ = p * power(BigRational(t / k), static_cast<unsigned long>(k));
        support_.resize(matrix_.rows());
        for (std::size_t i = 0; i < matrix_.rows(); ++i)
            for (std::size_t j = 0; j < matrix_.cols(); ++j)
                if (sgn(matrix_(i, j)) != 0) support_[i].push_back(static_cast<std::uint32_t>(j));
    }

    int t() const { return t_; }
    int k() const { return k_; }
    const BigRational& p() const { return p_; }
    const ExactMatrix& matrix() const { return matrix_; }
    const BigRational& rhs() const { return rhs_; }

    bool accepts(std::span<const BigRational> x) const {
        if (x.size() != matrix_.cols())
            throw std::invalid_argument("P* system: vector has " + std::to_string(x.size()) + " entries, expected " + std::to_string(matrix_.cols()));
        // Clear denominators; use machine words when the scaled sums cannot overflow.
        BigInt l = 1;
        for (const auto& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        const BigRational target = rhs_ * l;
        std::vector<long> scaled(x.size());
        bool small = target.get_den() == 1 && mpz_fits_slong_p(target.get_num_mpz_t());
        const long bound = std::numeric_limits<long>::max() / static_cast<long>(x.size() + 1);
        for (std::size_t j = 0; j < x.size() && small; ++j) {
            const BigInt s = x[j].get_num() * (l / x[j].get_den());
            if (!mpz_fits_slong_p(s.get_mpz_t()) || abs(s) > bound) small = false;
            else scaled[j] = s.get_si();
        }
        if (small) {
            const long want = target.get_num().get_si();
            for (const auto& row : support_) {
                long sum = 0;
                for (auto j : row) sum += scaled[j];
                if (sum != want) return false;
            }
            return true;
        }
        for (const auto& row : support_) {
            BigRational sum = 0;
            for (auto j : row) sum += x[j];
            if (sum != rhs_) return false;
        }
        return true;
    }

private:
    int t_, k_;
    BigRational p_;
    ExactMatrix matrix_;
    BigRational rhs_;
    std::vector<std::vector<std::uint32_t>> support_;
};

inline bool is_Pstar_solution(const SolutionVector& x, int t, int k, const BigRational& p) {
    return PstarSystem(t, k, p).accepts(x.entries);
}

inline SolutionSpace solution_space(const PstarSystem& sys) {
    const RationalVector b(sys.matrix().rows(), sys.rhs());
    auto result = solve_affine(sys.matrix(), b);
    if (!is_feasible(result)) throw std::logic_error("balanced system reported infeasible although u is a solution");
    return std::get<SolutionSpace>(std::move(result));
}

inline SolutionSpace solution_space(int t, int k, const BigRational& p) { return solution_space(PstarSystem(t, k, p)); }

struct StructureReport {
    int t = 0;
    int k = 0;
    BigRational p;
    std::size_t planted_vectors = 0;
    bool all_are_solutions = false;          // u and every v(A) solve the system
    std::size_t affine_point_rank = 0;       // affinely independent points among {u} cup V
    std::size_t affine_direction_dim = 0;    // = affine_point_rank - 1
    std::size_t system_rank = 0;
    std::size_t nullity = 0;
    bool nullspace_in_span = false;          // every nullspace basis vector lies in span{v(A) - u}
    bool pass = false;
};

inline StructureReport verify_structure_theorem(int t, int k, const BigRational& p) {
    if (t % 2 != 0 || t % k != 0) throw std::invalid_argument("structure check needs t even and k | t");
    const PstarSystem sys(t, k, p);
    StructureReport rep;
    rep.t = t;
    rep.k = k;
    rep.p = p;

    const SolutionVector u = make_u(t, k, p);
    std::vector<RationalVector> points{u.entries};
    bool ok = sys.accepts(u.entries);
    for (const auto& a : all_half_sets(t)) {
        auto v = make_v(t, k, p, a);
        ok = ok && sys.accepts(v.entries);
        points.push_back(std::move(v.entries));
    }
    rep.planted_vectors = points.size() - 1;
    rep.all_are_solutions = ok;
    rep.affine_point_rank = affine_rank(points);
    rep.affine_direction_dim = rep.affine_point_rank - 1;

    const SolutionSpace space = solution_space(sys);
    rep.system_rank = space.system_rank;
    rep.nullity = space.nullity();

    const std::size_t d = u.entries.size();
    ExactMatrix diffs(points.size() - 1, d);
    for (std::size_t i = 1; i < points.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) diffs(i - 1, j) = points[i][j] - points[0][j];
    const std::size_t span_rank = exact_rank(diffs);
    ExactMatrix joined(diffs.rows() + space.nullity(), d);
    for (std::size_t i = 0; i < diffs.rows(); ++i)
        for (std::size_t j = 0; j < d; ++j) joined(i, j) = diffs(i, j);
    for (std::size_t b = 0; b < space.nullity(); ++b)
        for (std::size_t j = 0; j < d; ++j) joined(diffs.rows() + b, j) = space.nullspace_basis[b][j];
    rep.nullspace_in_span = exact_rank(joined) == span_rank;

    rep.pass = rep.all_are_solutions && rep.affine_point_rank == static_cast<std::size_t>(t) && rep.nullspace_in_span;
    return rep;
}

// ---------------------------------------------------------------------------
// Equipartitions and density vectors

inline void require_equipartition(int n, const std::vector<VertexSet>& parts) {
    if (parts.empty()) throw std::invalid_argument("equipartition has no parts");
    const int t = static_cast<int>(parts.size());
    if (n % t != 0) throw std::invalid_argument("equipartition: " + std::to_string(t) + " does not divide n = " + std::to_string(n));
    for (const auto& part : parts)
        if (static_cast<int>(part.size()) != n / t) throw std::invalid_argument("equipartition parts must all have n/t vertices");
    CutSpec probe{n, parts};
    const auto lab = probe.labels();
    for (int x = 1; x <= n; ++x)
        if (lab[static_cast<std::size_t>(x)] < 0) throw std::invalid_argument("equipartition does not cover [1,n]");
}

/// Consecutive blocks {1..n/t}, {n/t+1..2n/t}, ...
inline std::vector<VertexSet> consecutive_equipartition(int n, int t) {
    if (t < 1 || n % t != 0) throw std::invalid_argument("consecutive_equipartition: t must divide n");
    std::vector<VertexSet> parts(static_cast<std::size_t>(t));
    for (int x = 1; x <= n; ++x) parts[static_cast<std::size_t>((x - 1) / (n / t))].push_back(x);
    return parts;
}

struct DensityVector {
    int t = 0;
    int k = 0;
    RationalVector entries;  // d_K over colex k-subsets K of [t]
    bool exceeds_one = false;
};

/// d_K = (weight of k-sets with one vertex in each V_i, i in K) / (n/t)^k.
inline DensityVector density_vector(const WeightedHypergraph& h, const std::vector<VertexSet>& parts) {
    require_equipartition(h.n(), parts);
    const int t = static_cast<int>(parts.size());
    const int k = h.k();
    if (k > t) throw std::invalid_argument("density_vector needs at least k parts");
    CutSpec probe{h.n(), parts};
    const auto lab = probe.labels();
    DensityVector d;
    d.t = t;
    d.k = k;
    d.entries.assign(binomial_u64(t, k), BigRational(0));
    std::vector<int> key(static_cast<std::size_t>(k));
    h.for_each_weighted([&](std::span<const int> s, const BigRational& w) {
        for (std::size_t i = 0; i < s.size(); ++i) key[i] = lab[static_cast<std::size_t>(s[i])] + 1;
        std::sort(key.begin(), key.end());
        if (std::adjacent_find(key.begin(), key.end()) != key.end()) return;
        d.entries[colex_rank(key)] += w;
    });
    const BigRational scale = power(BigRational(h.n() / t), static_cast<unsigned long>(k));
    for (auto& x : d.entries) {
        x /= scale;
        if (x > 1) d.exceeds_one = true;
    }
    return d;
}

struct DeltaReport {
    BigRational delta;  // max |cut weight - p (n/k)^k| / n^k over inspected cuts
    std::size_t cuts_inspected = 0;
    bool exhaustive = false;
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kExhaustiveCutLimit = 200'000;

/// delta-closeness to the balanced k-cut property. Exhaustive when the number of balanced
/// k-cuts is at most kExhaustiveCutLimit and sampled_trials is zero; sampled otherwise.
inline DeltaReport delta_closeness(const WeightedHypergraph& h, const BigRational& p, std::size_t sampled_trials = 0, std::uint64_t seed = 0) {
    const int n = h.n(), k = h.k();
    if (n % k != 0) throw std::invalid_argument("delta_closeness needs k | n");
    const BigRational target = p * power(BigRational(n / k), static_cast<unsigned long>(k));
    const BigRational scale = n_pow_k(n, k);
    const auto v = balanced_sizes(n, k);
    DeltaReport rep;
    rep.delta = 0;
    rep.seed = seed;
    auto inspect = [&](const CutSpec& cut) {
        const BigRational dev = abs(cut_weight(h, cut) - target) / scale;
        if (dev > rep.delta) rep.delta = dev;
        ++rep.cuts_inspected;
    };
    const BigInt count = count_partitions(n, v);
    if (sampled_trials == 0 && count <= kExhaustiveCutLimit) {
        rep.exhaustive = true;
        for_each_partition(n, v, [&](const BalancedPartition& part) { inspect(CutSpec{n, part.blocks()}); });
        return rep;
    }
    const std::size_t trials = sampled_trials == 0 ? 1000 : sampled_trials;
    const std::vector<BigRational> alpha(static_cast<std::size_t>(k), BigRational(1, k));
    for (std::size_t i = 0; i < trials; ++i) inspect(random_cut(n, alpha, seed, i));
    return rep;
}

// ---------------------------------------------------------------------------
// Weighted graphs, quotients, cut norm

/// Symmetric weighted graph on [n] with zero diagonal.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n) : n_(n), w_(static_cast<std::size_t>(n), static_cast<std::size_t>(n)) {
        if (n < 0) throw std::invalid_argument("graph size must be non-negative");
    }

    static WeightedGraph complete(int n) {
        WeightedGraph g(n);
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v) g.set(u, v, 1);
        return g;
    }

    int n() const { return n_; }
    const BigRational& weight(int u, int v) const { return w_(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1)); }

    void set(int u, int v, const BigRational& w) {
        if (u < 1 || v < 1 || u > n_ || v > n_) throw std::out_of_range("graph vertex out of range");
        if (u == v) {
            if (sgn(w) != 0) throw std::invalid_argument("graph diagonal must be zero");
            return;
        }
        w_(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1)) = w;
        w_(static_cast<std::size_t>(v - 1), static_cast<std::size_t>(u - 1)) = w;
    }

    const ExactMatrix& matrix() const { return w_; }

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

private:
    int n_ = 0;
    ExactMatrix w_;
};

/// Graph view of a 2-uniform hypergraph.
inline WeightedGraph to_graph(const WeightedHypergraph& h) {
    if (h.k() != 2) throw std::invalid_argument("to_graph needs a 2-uniform hypergraph");
    WeightedGraph g(h.n());
    h.for_each_weighted([&](std::span<const int> s, const BigRational& w) { g.set(s[0], s[1], w); });
    return g;
}

/// G[P]: zero inside parts; between V_i and V_j every pair gets e(V_i,V_j)/(|V_i||V_j|).
inline WeightedGraph quotient_graph(const WeightedGraph& g, const std::vector<VertexSet>& parts) {
    require_equipartition(g.n(), parts);
    const std::size_t t = parts.size();
    WeightedGraph q(g.n());
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            BigRational e = 0;
            for (int u : parts[i])
                for (int v : parts[j]) e += g.weight(u, v);
            const BigRational density = e / BigRational(static_cast<long>(parts[i].size() * parts[j].size()));
            for (int u : parts[i])
                for (int v : parts[j]) q.set(u, v, density);
        }
    return q;
}

struct CutNormResult {
    BigRational value;  // max |e_G1(S,T) - e_G2(S,T)| / n^2 (a lower bound when !exact)
    bool exact = false;
    VertexSet s;
    VertexSet t;
};

inline constexpr int kCutNormExactMax = 16;

namespace detail {

/// Best T for fixed column sums d_S: all positive columns or all negative columns.
inline std::pair<BigRational, VertexSet> best_partner(const RationalVector& col) {
    BigRational pos = 0, neg = 0;
    for (const auto& c : col) (sgn(c) > 0 ? pos : neg) += c;
    VertexSet t;
    const bool take_pos = pos >= -neg;
    for (std::size_t j = 0; j < col.size(); ++j)
        if (take_pos ? sgn(col[j]) > 0 : sgn(col[j]) < 0) t.push_back(static_cast<int>(j) + 1);
    return {take_pos ? pos : BigRational(-neg), std::move(t)};
}

}  // namespace detail

/// d_box(G1,G2) with e(S,T) = sum_{i in S} sum_{j in T} w(i,j) over ordered pairs.
///
/// Exact mode walks all 2^n sets S in Gray-code order and picks the optimal T in closed
/// form, which equals the maximum over all 4^n pairs. Above kCutNormExactMax vertices it
/// requires allow_heuristic and returns an alternating-maximisation lower bound.
inline CutNormResult cut_norm(const WeightedGraph& g1, const WeightedGraph& g2, bool allow_heuristic = false, std::uint64_t seed = 0,
                              std::size_t restarts = 32) {
    if (g1.n() != g2.n()) throw std::invalid_argument("cut_norm: graphs differ in size");
    const int n = g1.n();
    CutNormResult res;
    res.value = 0;
    if (n == 0) {
        res.exact = true;
        return res;
    }
    const ExactMatrix d = g1.matrix() - g2.matrix();
    const std::size_t un = static_cast<std::size_t>(n);
    const BigRational norm = BigRational(n) * n;

    if (n <= kCutNormExactMax) {
        res.exact = true;
        RationalVector col(un, BigRational(0));
        std::vector<char> in_s(un, 0);
        BigRational best = 0;
        std::uint64_t best_gray = 0;
        for (std::uint64_t step = 1; step < (1ULL << n); ++step) {
            const int bit = std::countr_zero(step);
            const std::size_t i = static_cast<std::size_t>(bit);
            in_s[i] ^= 1;
            for (std::size_t j = 0; j < un; ++j)
                if (sgn(d(i, j)) != 0) {
                    if (in_s[i]) col[j] += d(i, j);
                    else col[j] -= d(i, j);
                }
            auto [val, t] = detail::best_partner(col);
            if (val > best) {
                best = val;
                best_gray = step ^ (step >> 1);
                res.t = std::move(t);
            }
        }
        for (std::size_t i = 0; i < un; ++i)
            if (best_gray & (1ULL << i)) res.s.push_back(static_cast<int>(i) + 1);
        res.value = best / norm;
        return res;
    }

    if (!allow_heuristic)
        throw std::invalid_argument("cut_norm: n = " + std::to_string(n) + " exceeds the exact limit " + std::to_string(kCutNormExactMax) + "; enable the heuristic lower bound");
    const ExactMatrix dt = d.transpose();
    BigRational best = 0;
    for (std::size_t rs = 0; rs < restarts; ++rs) {
        CounterRng rng(seed, Stream::cut_trials, rs);
        std::vector<char> in_s(un);
        for (auto& b : in_s) b = static_cast<char>(rng.next() & 1);
        BigRational current = -1;
        for (int iter = 0; iter < 100; ++iter) {
            RationalVector col(un, BigRational(0));
            for (std::size_t i = 0; i < un; ++i)
                if (in_s[i])
                    for (std::size_t j = 0; j < un; ++j) col[j] += d(i, j);
            auto [val_t, t] = detail::best_partner(col);
            std::vector<char> in_t(un, 0);
            for (int x : t) in_t[static_cast<std::size_t>(x - 1)] = 1;
            RationalVector row(un, BigRational(0));
            for (std::size_t j = 0; j < un; ++j)
                if (in_t[j])
                    for (std::size_t i = 0; i < un; ++i) row[i] += dt(j, i);
            auto [val_s, s] = detail::best_partner(row);
            if (val_s > best) {
                best = val_s;
                res.s = s;
                res.t = t;
            }
            if (val_s <= current) break;
            current = val_s;
            std::fill(in_s.begin(), in_s.end(), 0);
            for (int x : s) in_s[static_cast<std::size_t>(x - 1)] = 1;
        }
    }
    res.value = best / norm;
    return res;
}

// ---------------------------------------------------------------------------
// Text formats

/// "t k p" header then "rank num/den" per entry.
inline void write_vector(std::ostream& out, int t, int k, const std::string& p, const RationalVector& entries) {
    out << t << ' ' << k << ' ' << p << '\n';
    for (std::size_t r = 0; r < entries.size(); ++r) out << r << ' ' << to_string(entries[r]) << '\n';
}

inline void write_solution_vector(std::ostream& out, const SolutionVector& x) { write_vector(out, x.t, x.k, to_string(x.p), x.entries); }

inline SolutionVector read_solution_vector(std::istream& in) {
    SolutionVector x;
    std::string p;
    if (!(in >> x.t >> x.k >> p)) throw std::runtime_error("vector file: missing 't k p' header");
    x.p = p == "-" ? BigRational(0) : parse_rational(p);
    x.entries.assign(binomial_u64(x.t, x.k), BigRational(0));
    Rank r;
    std::string value;
    while (in >> r) {
        if (!(in >> value)) throw std::runtime_error("vector file: rank without value");
        if (r >= x.entries.size()) throw std::runtime_error("vector file: rank out of range");
        x.entries[r] = parse_rational(value);
    }
    if (!in.eof()) throw std::runtime_error("vector file: malformed line");
    return x;
}

/// "n" header then the upper triangle, row by row (row i lists w(i,i+1..n)).
inline void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << g.n() << '\n';
    for (int u = 1; u < g.n(); ++u) {
        for (int v = u + 1; v <= g.n(); ++v) {
            if (v > u + 1) out << ' ';
            out << to_string(g.weight(u, v));
        }
        out << '\n';
    }
}

inline WeightedGraph read_graph(std::istream& in) {
    int n = 0;
    if (!(in >> n)) throw std::runtime_error("graph file: missing 'n' header");
    WeightedGraph g(n);
    std::string token;
    for (int u = 1; u < n; ++u)
        for (int v = u + 1; v <= n; ++v) {
            if (!(in >> token)) throw std::runtime_error("graph file: too few weights");
            g.set(u, v, parse_rational(token));
        }
    return g;
}

}  // namespace qrcut
