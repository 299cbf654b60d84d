#pragma once

// Johnson scheme J(t,k): scheme matrices W_i, closed-form eigenvalues p_i(j) and
// multiplicities, the Gram matrix C = A^T A of the balanced intersection matrix as
// sum alpha_i W_i, its spectrum lambda(j), and the good-function count P_j(k).

#include "qrcut/intersection.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qrcut {

struct SchemeMatrix {
    int t = 0;
    int k = 0;
    int i = 0;
    ExactMatrix matrix;
};

/// W_i(X,Y) = 1 iff |X cap Y| = k - i, over colex-indexed k-subsets of [t].
inline SchemeMatrix build_W(int t, int k, int i) {
    if (!(0 <= i && i <= k && k <= t)) throw std::invalid_argument("build_W: need 0 <= i <= k <= t");
    const Rank n = binomial_u64(t, k);
    std::vector<std::vector<int>> sets;
    sets.reserve(n);
    for_each_ksubset(t, k, [&](Rank, std::span<const int> s) { sets.emplace_back(s.begin(), s.end()); });
    ExactMatrix w(n, n);
    for (Rank x = 0; x < n; ++x)
        for (Rank y = 0; y < n; ++y) {
            std::size_t common = 0, a = 0, b = 0;
            while (a < sets[x].size() && b < sets[y].size()) {
                if (sets[x][a] == sets[y][b]) {
                    ++common;
                    ++a;
                    ++b;
                } else if (sets[x][a] < sets[y][b]) {
                    ++a;
                } else {
                    ++b;
                }
            }
            if (static_cast<int>(common) == k - i) w(x, y) = 1;
        }
    return {t, k, i, std::move(w)};
}

inline void require_scheme_range(int t, int k, int i, int j) {
    if (k < 1 || t < 2 * k) throw std::invalid_argument("Johnson eigenvalues need t >= 2k >= 2");
    if (i < 0 || i > k || j < 0 || j > k) throw std::invalid_argument("Johnson eigenvalues need 0 <= i, j <= k");
}

/// p_i(j) = sum_{r=0}^{i} (-1)^{i-r} C(k-r, i-r) C(t-k+r-j, r) C(k-j, r).
inline BigInt eigenvalue_p(int t, int k, int i, int j) {
    require_scheme_range(t, k, i, j);
    BigInt sum = 0;
    for (int r = 0; r <= i; ++r) {
        BigInt term = binomial(k - r, i - r) * binomial(t - k + r - j, r) * binomial(k - j, r);
        if ((i - r) % 2) sum -= term;
        else sum += term;
    }
    return sum;
}

/// C(t,j) - C(t,j-1), with C(t,-1) = 0.
inline BigInt multiplicity(int t, int j) {
    if (j < 0 || j > t) throw std::invalid_argument("multiplicity: need 0 <= j <= t");
    return binomial(t, j) - (j >= 1 ? binomial(t, j - 1) : BigInt(0));
}

inline void require_balanced_scheme(int t, int k, int i) {
    if (k < 1 || t % k != 0) throw std::invalid_argument("t = " + std::to_string(t) + " is not divisible by k = " + std::to_string(k));
    if (t / k < 2) throw std::invalid_argument("need t/k >= 2");
    if (i < 0 || i > k) throw std::invalid_argument("need 0 <= i <= k");
}

/// Number of balanced k-cuts of [t] in which two k-sets meeting in k-i points are both transversals:
/// i! (t-k-i)! / ((t/k-1)!^{k-i} (t/k-2)!^i).
inline BigRational alpha(int t, int k, int i) {
    require_balanced_scheme(t, k, i);
    const unsigned long m = static_cast<unsigned long>(t / k);
    BigRational q(factorial(static_cast<unsigned long>(i)) * factorial(static_cast<unsigned long>(t - k - i)),
                  power(factorial(m - 1), static_cast<unsigned long>(k - i)) * power(factorial(m - 2), static_cast<unsigned long>(i)));
    q.canonicalize();
    return q;
}

/// alpha_i scaled by (t/k-1)!^k / (t-2k)!, via the product form i! (t/k-1)^i prod_{s=k+i}^{2k-1} (t-s).
inline BigRational alpha_star(int t, int k, int i) {
    require_balanced_scheme(t, k, i);
    if (t < 2 * k) throw std::invalid_argument("alpha_star needs t >= 2k");
    BigInt prod = factorial(static_cast<unsigned long>(i)) * power(BigInt(t / k - 1), static_cast<unsigned long>(i));
    for (int s = k + i; s <= 2 * k - 1; ++s) prod *= (t - s);
    return BigRational(prod);
}

/// The same normalisation applied directly to alpha(t,k,i).
inline BigRational alpha_star_from_alpha(int t, int k, int i) {
    const unsigned long m = static_cast<unsigned long>(t / k);
    BigRational scale(power(factorial(m - 1), static_cast<unsigned long>(k)), factorial(static_cast<unsigned long>(t - 2 * k)));
    scale.canonicalize();
    return alpha(t, k, i) * scale;
}

struct SchemeSpectrum {
    int t = 0;
    int k = 0;
    std::vector<BigRational> lambdas;       // lambda(0..k)
    std::vector<BigRational> lambdas_star;  // normalised lambda(0..k)*
    std::vector<BigInt> multiplicities;
    std::vector<BigRational> alphas;
    std::vector<BigRational> alphas_star;

    BigInt multiplicity_sum() const {
        BigInt s = 0;
        for (const auto& m : multiplicities) s += m;
        return s;
    }

    /// Rank of C read off the spectrum: sum of multiplicities of nonzero eigenvalues.
    BigInt implied_rank() const {
        BigInt s = 0;
        for (std::size_t j = 0; j < lambdas.size(); ++j)
            if (sgn(lambdas[j]) != 0) s += multiplicities[j];
        return s;
    }
};

inline SchemeSpectrum gram_spectrum(int t, int k) {
    require_balanced_scheme(t, k, 0);
    if (t < 2 * k) throw std::invalid_argument("gram_spectrum needs t >= 2k");
    SchemeSpectrum s;
    s.t = t;
    s.k = k;
    for (int i = 0; i <= k; ++i) {
        s.alphas.push_back(alpha(t, k, i));
        s.alphas_star.push_back(alpha_star(t, k, i));
    }
    for (int j = 0; j <= k; ++j) {
        BigRational lam = 0, lam_star = 0;
        for (int i = 0; i <= k; ++i) {
            const BigRational p(eigenvalue_p(t, k, i, j));
            lam += s.alphas[static_cast<std::size_t>(i)] * p;
            lam_star += s.alphas_star[static_cast<std::size_t>(i)] * p;
        }
        s.lambdas.push_back(lam);
        s.lambdas_star.push_back(lam_star);
        s.multiplicities.push_back(multiplicity(t, j));
    }
    return s;
}

/// C = A^T A for A = A_{t,k,(t/k,...,t/k)}.
inline ExactMatrix gram_matrix(int t, int k) {
    const auto v = balanced_sizes(t, k);
    const ExactMatrix a = build_A(t, k, v);
    return a.transpose() * a;
}

inline ExactMatrix scheme_combination(int t, int k, std::span<const BigRational> coefficients) {
    if (static_cast<int>(coefficients.size()) != k + 1) throw std::invalid_argument("scheme_combination: need k+1 coefficients");
    const Rank n = binomial_u64(t, k);
    ExactMatrix c(n, n);
    for (int i = 0; i <= k; ++i) c = c + coefficients[static_cast<std::size_t>(i)] * build_W(t, k, i).matrix;
    return c;
}

inline constexpr Rank kGramDeskLimit = 300;

/// Checks A^T A == sum_i alpha_i W_i entrywise.
inline bool verify_gram_decomposition(int t, int k) {
    require_balanced_scheme(t, k, 0);
    if (binomial_u64(t, k) > kGramDeskLimit)
        throw std::invalid_argument("verify_gram_decomposition: C(t,k) exceeds " + std::to_string(kGramDeskLimit));
    std::vector<BigRational> coeffs;
    for (int i = 0; i <= k; ++i) coeffs.push_back(alpha(t, k, i));
    return gram_matrix(t, k) == scheme_combination(t, k, coeffs);
}

/// dim ker(C - lambda I).
inline std::size_t eigenspace_dimension(const ExactMatrix& c, const BigRational& lambda) {
    ExactMatrix shifted = c;
    for (std::size_t i = 0; i < c.rows(); ++i) shifted(i, i) -= lambda;
    return c.cols() - exact_rank(shifted);
}

/// P_j(k) = sum_{s=0}^{j} (-1)^s C(j,s) k^{j-s} (s+k-j)!/(k-j)!.
inline BigInt leading_coefficient(int j, int k) {
    if (j < 0 || j > k) throw std::invalid_argument("leading_coefficient: need 0 <= j <= k");
    BigInt sum = 0;
    for (int s = 0; s <= j; ++s) {
        BigInt term = binomial(j, s) * power(BigInt(k), static_cast<unsigned long>(j - s)) *
                      (factorial(static_cast<unsigned long>(s + k - j)) / factorial(static_cast<unsigned long>(k - j)));
        if (s % 2) sum -= term;
        else sum += term;
    }
    return sum;
}

inline constexpr std::uint64_t kGoodFunctionLimit = 20'000'000;

/// Brute-force count of f: Z_j -> Z_k good at every point. f is good at i when some
/// s in {0..j-2} has |f^{-1}{f(i), ..., f(i)+s}| > s+1 (values mod k).
inline std::uint64_t count_good_functions(int j, int k) {
    if (j < 0 || k < 1 || j > k) throw std::invalid_argument("count_good_functions: need 0 <= j <= k, k >= 1");
    std::uint64_t total = 1;
    for (int x = 0; x < j; ++x) {
        total *= static_cast<std::uint64_t>(k);
        if (total > kGoodFunctionLimit)
            throw std::invalid_argument("count_good_functions: k^j exceeds " + std::to_string(kGoodFunctionLimit));
    }
    std::vector<int> f(static_cast<std::size_t>(j), 0);
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    count[0] = j;
    std::vector<char> dense(static_cast<std::size_t>(k));
    std::uint64_t good = 0;
    for (std::uint64_t n = 0; n < total; ++n) {
        for (int y = 0; y < k; ++y) {
            int covered = 0;
            char hit = 0;
            for (int s = 0; s <= j - 2; ++s) {
                covered += count[static_cast<std::size_t>((y + s) % k)];
                if (covered > s + 1) {
                    hit = 1;
                    break;
                }
            }
            dense[static_cast<std::size_t>(y)] = hit;
        }
        bool all = true;
        for (int x = 0; x < j && all; ++x) all = dense[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])];
        if (all) ++good;
        // odometer step
        for (int x = 0; x < j; ++x) {
            --count[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])];
            if (++f[static_cast<std::size_t>(x)] < k) {
                ++count[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])];
                break;
            }
            f[static_cast<std::size_t>(x)] = 0;
            ++count[0];
        }
    }
    return good;
}

}  // namespace qrcut
