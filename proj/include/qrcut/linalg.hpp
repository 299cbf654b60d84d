#pragma once

// Exact linear algebra over Q: fraction-free (Bareiss) echelon form for rank and
// row selection, rational reduction for solving, affine rank and affine span tests.

#include "qrcut/exact_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

namespace qrcut {

namespace detail {
inline std::atomic<unsigned> thread_cap{1};
}

/// Caps the number of threads used inside elimination. 0 means hardware concurrency.
inline void set_worker_threads(unsigned n) {
    detail::thread_cap = n == 0 ? std::max(1u, std::thread::hardware_concurrency()) : n;
}

inline unsigned worker_threads() { return detail::thread_cap.load(); }

struct EchelonInfo {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_rows;  // original row indices, one per pivot
    std::vector<std::size_t> pivot_cols;
};

namespace detail {

using IntRow = std::vector<BigInt>;

/// Scales each row by the lcm of its denominators; row scaling preserves rank and row space.
inline std::vector<IntRow> integer_rows(const ExactMatrix& m) {
    std::vector<IntRow> rows(m.rows(), IntRow(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (const auto& x : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& x = m(i, j);
            if (sgn(x) == 0) continue;
            rows[i][j] = (l / x.get_den()) * x.get_num();
        }
    }
    return rows;
}

template <typename Fn>
void parallel_rows(std::size_t begin, std::size_t end, std::size_t work_per_row, Fn&& fn) {
    const unsigned threads = qrcut::worker_threads();
    const std::size_t n = end > begin ? end - begin : 0;
    if (threads <= 1 || n < 2 * threads || n * work_per_row < 4096) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t lo = begin + w * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

/// Fraction-free Gaussian elimination. Pivot = nonzero entry of fewest bits in the
/// current column, ties broken by lowest current row position.
inline EchelonInfo bareiss_echelon(const ExactMatrix& m) {
    auto rows = detail::integer_rows(m);
    const std::size_t nrows = m.rows(), ncols = m.cols();
    std::vector<std::size_t> origin(nrows);
    for (std::size_t i = 0; i < nrows; ++i) origin[i] = i;
    // rows known to be identically zero are parked and skipped
    std::vector<char> dead(nrows, 0);

    EchelonInfo info;
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t best = nrows;
        std::size_t best_bits = 0;
        for (std::size_t i = r; i < nrows; ++i) {
            if (dead[i] || sgn(rows[i][c]) == 0) continue;
            const std::size_t bits = mpz_sizeinbase(rows[i][c].get_mpz_t(), 2);
            if (best == nrows || bits < best_bits) {
                best = i;
                best_bits = bits;
            }
        }
        if (best == nrows) continue;
        std::swap(rows[r], rows[best]);
        std::swap(origin[r], origin[best]);
        std::swap(dead[r], dead[best]);

        const BigInt pivot = rows[r][c];
        const bool same_scale = pivot == prev;
        const auto& prow = rows[r];
        detail::parallel_rows(r + 1, nrows, ncols - c, [&](std::size_t i) {
            if (dead[i]) return;
            auto& row = rows[i];
            const bool zero_lead = sgn(row[c]) == 0;
            if (zero_lead && same_scale) return;
            BigInt tmp;
            bool any = false;
            for (std::size_t j = c + 1; j < ncols; ++j) {
                auto* x = row[j].get_mpz_t();
                if (zero_lead) {
                    if (mpz_sgn(x) == 0) continue;
                    mpz_mul(x, x, pivot.get_mpz_t());
                } else {
                    mpz_mul(x, x, pivot.get_mpz_t());
                    if (mpz_sgn(prow[j].get_mpz_t()) != 0) {
                        mpz_mul(tmp.get_mpz_t(), row[c].get_mpz_t(), prow[j].get_mpz_t());
                        mpz_sub(x, x, tmp.get_mpz_t());
                    }
                    if (mpz_sgn(x) == 0) continue;
                }
                mpz_divexact(x, x, prev.get_mpz_t());
                any = true;
            }
            row[c] = 0;
            if (!any) dead[i] = 1;
        });
        prev = pivot;
        info.pivot_rows.push_back(origin[r]);
        info.pivot_cols.push_back(c);
        ++r;
    }
    info.rank = r;
    return info;
}

inline std::size_t exact_rank(const ExactMatrix& m) { return bareiss_echelon(m).rank; }

/// Reduced row echelon form over Q, in place. Returns pivot columns (only columns < limit_cols are eligible).
inline std::vector<std::size_t> rational_rref(ExactMatrix& a, std::size_t limit_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const std::size_t rows = a.rows(), cols = a.cols();
    for (std::size_t c = 0; c < limit_cols && r < rows; ++c) {
        std::size_t p = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (sgn(a(i, c)) != 0) {
                p = i;
                break;
            }
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
        const BigRational inv = 1 / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            const BigRational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Solution set {particular + span(nullspace_basis)} of M x = b.
struct SolutionSpace {
    RationalVector particular;
    std::vector<RationalVector> nullspace_basis;
    std::size_t system_rank = 0;

    std::size_t nullity() const { return nullspace_basis.size(); }
};

/// Certificate that M x = b has no solution: y^T M = 0 while y^T b != 0.
struct Infeasible {
    RationalVector witness;
};

using AffineSolveResult = std::variant<SolutionSpace, Infeasible>;

namespace detail {

inline BigRational dot(std::span<const BigRational> a, std::span<const BigRational> b) {
    BigRational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

}  // namespace detail

inline AffineSolveResult solve_affine(const ExactMatrix& m, std::span<const BigRational> b) {
    if (b.size() != m.rows())
        throw std::invalid_argument("solve_affine: right-hand side has " + std::to_string(b.size()) + " entries, matrix has " + std::to_string(m.rows()) + " rows");
    const std::size_t n = m.cols();
    const EchelonInfo ech = bareiss_echelon(m);
    const std::size_t r = ech.rank;

    // The pivot rows span the row space; solve on them and verify against every row afterwards.
    ExactMatrix sub(r, n + 1);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) sub(i, j) = m(ech.pivot_rows[i], j);
        sub(i, n) = b[ech.pivot_rows[i]];
    }
    const auto pivots = rational_rref(sub, n);
    if (pivots.size() != r) throw std::logic_error("solve_affine: pivot rows are not independent");

    SolutionSpace space;
    space.system_rank = r;
    space.particular.assign(n, BigRational(0));
    for (std::size_t i = 0; i < r; ++i) space.particular[pivots[i]] = sub(i, n);

    std::vector<char> is_pivot(n, 0);
    for (auto c : pivots) is_pivot[c] = 1;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(n, BigRational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < r; ++i) v[pivots[i]] = -sub(i, f);
        space.nullspace_basis.push_back(std::move(v));
    }

    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (detail::dot(m.row(i), space.particular) == b[i]) continue;
        // Row i is a combination of the pivot rows; that combination exposes the inconsistency.
        ExactMatrix t(n, r + 1);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t q = 0; q < r; ++q) t(j, q) = m(ech.pivot_rows[q], j);
            t(j, r) = m(i, j);
        }
        const auto tp = rational_rref(t, r);
        RationalVector y(m.rows(), BigRational(0));
        y[i] = 1;
        for (std::size_t q = 0; q < tp.size(); ++q) y[ech.pivot_rows[tp[q]]] -= t(q, r);
        return Infeasible{std::move(y)};
    }
    for (const auto& v : space.nullspace_basis)
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (sgn(detail::dot(m.row(i), v)) != 0) throw std::logic_error("solve_affine: nullspace vector not annihilated");
    return space;
}

inline bool is_feasible(const AffineSolveResult& r) { return std::holds_alternative<SolutionSpace>(r); }

/// Maximum number of affinely independent points: 1 + rank{w_1 - w_i}. Zero for an empty list.
inline std::size_t affine_rank(const std::vector<RationalVector>& points) {
    if (points.empty()) return 0;
    const std::size_t d = points.front().size();
    for (const auto& p : points)
        if (p.size() != d) throw std::invalid_argument("affine_rank: vectors have different lengths");
    if (points.size() == 1) return 1;
    ExactMatrix diffs(points.size() - 1, d);
    for (std::size_t i = 1; i < points.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) diffs(i - 1, j) = points[0][j] - points[i][j];
    return 1 + exact_rank(diffs);
}

/// True iff x = sum lambda_i w_i with sum lambda_i = 1 for some rational lambda.
inline bool in_affine_span(std::span<const BigRational> x, const std::vector<RationalVector>& points) {
    if (points.empty()) return false;
    const std::size_t d = x.size();
    for (const auto& p : points)
        if (p.size() != d) throw std::invalid_argument("in_affine_span: dimension mismatch");
    ExactMatrix system(d + 1, points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) system(j, i) = points[i][j];
        system(d, i) = 1;
    }
    RationalVector rhs(x.begin(), x.end());
    rhs.push_back(1);
    return is_feasible(solve_affine(system, rhs));
}

}  // namespace qrcut
