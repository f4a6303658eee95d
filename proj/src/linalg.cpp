#include "prp/linalg.hpp"

#include "prp/error.hpp"

#include <utility>

namespace prp {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "matrix row length");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw Error(ErrorCode::DimensionMismatch, "matrix column length");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& columns) const {
    Matrix out(rows_, columns.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < columns.size(); ++k) out(r, k) = (*this)(r, columns[k]);
    return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
    Matrix out(rows.size(), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (std::size_t c = 0; c < cols_; ++c) out(k, c) = (*this)(rows[k], c);
    return out;
}

void Matrix::append_row(const Vector& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "appended row length");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

Vector multiply(const Matrix& a, const Vector& x) {
    if (x.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    Vector out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Rational sum = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (a(r, c) != 0) sum += a(r, c) * x[c];
        }
        out[r] = sum;
    }
    return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(r, k) == 0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += a(r, k) * b(k, c);
        }
    return out;
}

EchelonForm reduced_row_echelon(Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
        std::size_t pivot = lead_row;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != lead_row) {
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(lead_row, c));
        }
        const Rational inv = 1 / m(lead_row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(lead_row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || m(r, col) == 0) continue;
            const Rational factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (m(lead_row, c) != 0) m(r, c) -= factor * m(lead_row, c);
            }
        }
        pivots.push_back(col);
        ++lead_row;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return reduced_row_echelon(m).pivot_columns.size(); }

std::vector<std::size_t> independent_columns(const Matrix& m) { return reduced_row_echelon(m).pivot_columns; }

std::vector<std::size_t> independent_rows(const Matrix& m) { return independent_columns(m.transpose()); }

std::vector<Vector> nullspace(const Matrix& m) {
    const auto ech = reduced_row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivot_columns) is_pivot[p] = true;

    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) v[ech.pivot_columns[r]] = -ech.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: rhs length");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const auto ech = reduced_row_echelon(std::move(aug));
    if (!ech.pivot_columns.empty() && ech.pivot_columns.back() == a.cols()) return std::nullopt;
    Vector x(a.cols());
    for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) x[ech.pivot_columns[r]] = ech.reduced(r, a.cols());
    return x;
}

std::optional<Vector> min_norm_solve(const Matrix& a, const Vector& b) {
    if (!solve(a, b)) return std::nullopt;
    // The minimum-norm solution lies in the row space: x = R^T y with (R R^T) y = b_R
    // over a maximal independent set of rows R.
    const auto rows = independent_rows(a);
    if (rows.empty()) return Vector(a.cols());
    const Matrix r = a.select_rows(rows);
    Vector br(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) br[k] = b[rows[k]];
    const auto y = solve(multiply(r, r.transpose()), br);
    return multiply(r.transpose(), *y);
}

bool in_column_span(const Matrix& m, const Vector& v) { return solve(m, v).has_value(); }

}  // namespace prp
