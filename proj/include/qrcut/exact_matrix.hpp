#pragma once

// Dense row-major matrix of exact rationals, with the plain-text exchange format
//   rows cols
//   a11 a12 ... (integers or num/den)

#include "qrcut/rational.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrcut {

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static ExactMatrix from_rows(const std::vector<RationalVector>& rows) {
        if (rows.empty()) return {};
        ExactMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const BigRational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<BigRational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (sgn(x) != 0) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    BigRational trace() const {
        BigRational s = 0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend ExactMatrix operator*(const BigRational& s, ExactMatrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
        ExactMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const BigRational& x = a(i, l);
                if (sgn(x) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (sgn(b(l, j)) != 0) out(i, j) += x * b(l, j);
            }
        return out;
    }

    friend RationalVector operator*(const ExactMatrix& a, std::span<const BigRational> x) {
        if (x.size() != a.cols_) throw std::invalid_argument("matrix-vector product: dimension mismatch");
        RationalVector out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            BigRational s = 0;
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (sgn(a(i, j)) != 0 && sgn(x[j]) != 0) s += a(i, j) * x[j];
            out[i] = s;
        }
        return out;
    }

private:
    void require_same_shape(const ExactMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigRational> data_;
};

inline void write_matrix(std::ostream& out, const ExactMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << to_string(m(i, j));
        }
        out << '\n';
    }
}

inline ExactMatrix read_matrix(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw std::runtime_error("matrix file: missing 'rows cols' header");
    ExactMatrix m(rows, cols);
    std::string token;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(in >> token))
                throw std::runtime_error("matrix file: expected " + std::to_string(rows * cols) + " entries");
            m(i, j) = parse_rational(token);
        }
    return m;
}

}  // namespace qrcut
