#include "prp/simplex.hpp"

#include "prp/error.hpp"

#include <limits>
#include <optional>

namespace prp {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Tableau rows are [coefficients | rhs]; basis[i] is the basic column of row i.
struct Tableau {
    Matrix t;
    std::vector<std::size_t> basis;

    std::size_t width() const { return t.cols() - 1; }
    const Rational& rhs(std::size_t r) const { return t(r, t.cols() - 1); }

    void pivot(std::size_t row, std::size_t col) {
        const Rational inv = 1 / t(row, col);
        for (std::size_t c = 0; c < t.cols(); ++c) t(row, c) *= inv;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            if (r == row || t(r, col) == 0) continue;
            const Rational factor = t(r, col);
            for (std::size_t c = 0; c < t.cols(); ++c) {
                if (t(row, c) != 0) t(r, c) -= factor * t(row, c);
            }
        }
        basis[row] = col;
    }
};

// Runs simplex iterations on columns [0, allowed) for the given costs.
// Returns false when the objective is unbounded below.
bool run(Tableau& tab, const Vector& cost, std::size_t allowed) {
    const std::size_t m = tab.t.rows();
    for (;;) {
        std::size_t entering = npos;
        for (std::size_t j = 0; j < allowed && entering == npos; ++j) {
            Rational reduced = cost[j];
            for (std::size_t i = 0; i < m; ++i) {
                if (tab.t(i, j) != 0) reduced -= cost[tab.basis[i]] * tab.t(i, j);
            }
            if (reduced < 0) entering = j;
        }
        if (entering == npos) return true;

        std::size_t leaving = npos;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.t(i, entering) <= 0) continue;
            const Rational ratio = tab.rhs(i) / tab.t(i, entering);
            if (leaving == npos || ratio < best_ratio ||
                (ratio == best_ratio && tab.basis[i] < tab.basis[leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving == npos) return false;
        tab.pivot(leaving, entering);
    }
}

}  // namespace

LpResult minimize(const Matrix& a, const Vector& b, const Vector& c) {
    if (b.size() != a.rows() || c.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "linear program shape");
    const std::size_t n = a.cols();

    // Independent, consistent equality system.
    Matrix aug(a.rows(), n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t j = 0; j < n; ++j) aug(r, j) = a(r, j);
        aug(r, n) = b[r];
    }
    const auto ech = reduced_row_echelon(std::move(aug));
    if (!ech.pivot_columns.empty() && ech.pivot_columns.back() == n) return {LpStatus::Infeasible, {}, {}};
    const std::size_t m = ech.pivot_columns.size();

    // Phase one: artificial column n + i for each row, rhs made nonnegative.
    Tableau tab{Matrix(m, n + m + 1), std::vector<std::size_t>(m)};
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = ech.reduced(i, n) < 0;
        for (std::size_t j = 0; j <= n; ++j) {
            const Rational& v = ech.reduced(i, j);
            tab.t(i, j == n ? n + m : j) = flip ? Rational(-v) : v;
        }
        tab.t(i, n + i) = 1;
        tab.basis[i] = n + i;
    }
    Vector phase_one(n + m);
    for (std::size_t i = 0; i < m; ++i) phase_one[n + i] = 1;
    run(tab, phase_one, n + m);

    Rational infeasibility = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] >= n) infeasibility += tab.rhs(i);
    }
    if (infeasibility != 0) return {LpStatus::Infeasible, {}, {}};

    // Drive zero-level artificials out; rows are independent so a pivot exists.
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (tab.t(i, j) != 0) {
                tab.pivot(i, j);
                break;
            }
        }
    }

    Vector cost(n + m);
    for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
    if (!run(tab, cost, n)) return {LpStatus::Unbounded, {}, {}};

    LpResult result{LpStatus::Optimal, Vector(n), Rational(0)};
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n) result.x[tab.basis[i]] = tab.rhs(i);
    }
    result.objective = dot(c, result.x);
    return result;
}

}  // namespace prp
