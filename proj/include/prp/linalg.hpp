#pragma once

#include "prp/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace prp {

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    Matrix transpose() const;
    Matrix select_columns(const std::vector<std::size_t>& columns) const;
    Matrix select_rows(const std::vector<std::size_t>& rows) const;

    /// Appends a row; on an empty 0x0 matrix the row length fixes the column count.
    void append_row(const Vector& row);

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Vector multiply(const Matrix& a, const Vector& x);
Matrix multiply(const Matrix& a, const Matrix& b);

struct EchelonForm {
    Matrix reduced;
    std::vector<std::size_t> pivot_columns;
};

/// Gauss-Jordan elimination; pivots are normalised to 1.
EchelonForm reduced_row_echelon(Matrix m);

std::size_t rank(const Matrix& m);

/// Pivot columns of the echelon form: the first maximal linearly independent
/// subset of columns, in column order.
std::vector<std::size_t> independent_columns(const Matrix& m);
std::vector<std::size_t> independent_rows(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vector> nullspace(const Matrix& m);

/// A particular solution (free variables set to zero), or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

/// The solution of minimum Euclidean norm, or nullopt if inconsistent.
std::optional<Vector> min_norm_solve(const Matrix& a, const Vector& b);

/// True when v lies in the column span of m.
bool in_column_span(const Matrix& m, const Vector& v);

}  // namespace prp
