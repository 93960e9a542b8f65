#pragma once

#include "chow/core/error.hpp"
#include "chow/core/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace chow {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw ShapeMismatch("entry count " + std::to_string(data_.size()) + " != " +
                                std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    /// Literal construction, e.g. `IntMatrix{{3, 1, -4}, {1, -4, 3}}`.
    Matrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw ShapeMismatch("ragged matrix literal");
            for (long v : r) data_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw ShapeMismatch("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> row_vector(std::size_t i) const {
        auto r = row(i);
        return {r.begin(), r.end()};
    }

    const std::vector<T>& entries() const noexcept { return data_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != cols_) throw ShapeMismatch("vector length != cols");
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn((*this)(i, j)) != 0) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    /// Row-vector product v * M.
    std::vector<T> left_apply(std::span<const T> v) const {
        if (v.size() != rows_) throw ShapeMismatch("vector length != rows");
        std::vector<T> out(cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (sgn(v[i]) == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j) out[j] += v[i] * (*this)(i, j);
        }
        return out;
    }

    void append_row(std::span<const T> r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw ShapeMismatch("appended row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << to_string(m(i, j));
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ExactMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

inline ExactMatrix to_exact(const IntMatrix& m) {
    ExactMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

template <class T>
bool is_zero_vector(std::span<const T> v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

} // namespace chow
