#pragma once

// Arbitrary-precision integer and rational carriers, backed by GMP.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qrcut {

using BigInt = mpz_class;
using BigRational = mpq_class;
using RationalVector = std::vector<BigRational>;

/// Canonical text form: "n" for integers, "n/d" otherwise.
inline std::string to_string(const BigRational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// Parses "n", "n/d", or a finite decimal such as "0.25" or "-1.5e-2" into an exact rational.
inline BigRational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    std::size_t start = s.find_first_not_of(" \t");
    if (start == std::string::npos) throw std::invalid_argument("empty rational literal");
    s = s.substr(start);

    auto parse_int = [&](const std::string& part) {
        BigInt z;
        if (part.empty() || z.set_str(part, 10) != 0)
            throw std::invalid_argument("malformed rational literal: '" + s + "'");
        return z;
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt num = parse_int(s.substr(0, slash));
        BigInt den = parse_int(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        BigRational q(num, den);
        q.canonicalize();
        return q;
    }

    std::string mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        try {
            exponent = std::stol(s.substr(e + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed exponent in '" + s + "'");
        }
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
        negative = mantissa[0] == '-';
        mantissa.erase(0, 1);
    }
    std::string digits;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        exponent -= static_cast<long>(mantissa.size() - dot - 1);
    } else {
        digits = mantissa;
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed rational literal: '" + s + "'");

    BigRational q(parse_int(digits));
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0)
        q /= scale;
    else
        q *= scale;
    q.canonicalize();
    return negative ? BigRational(-q) : q;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt power(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline BigRational power(const BigRational& base, unsigned long exp) {
    BigRational r(power(base.get_num(), exp), power(base.get_den(), exp));
    r.canonicalize();
    return r;
}

/// num/den in lowest terms. mpq_class(num, den) leaves the fraction as given, and GMP
/// arithmetic on non-canonical operands is undefined.
inline BigRational ratio(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("ratio: zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

/// Exact ordering comparison helpers; mpq_class supports <, but sign() reads better in reports.
inline int sign(const BigRational& q) { return sgn(q); }

inline double to_double(const BigRational& q) { return q.get_d(); }

}  // namespace qrcut
