#pragma once

#include "prp/linalg.hpp"

namespace prp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vector x;            ///< an optimal basic solution when status == Optimal
    Rational objective;  ///< c . x at that solution
};

/// Minimises c.x subject to a x = b, x >= 0.
///
/// Exact two-phase simplex with Bland's rule, so it terminates on degenerate
/// problems. Equality rows are reduced to an independent set first. Optimal
/// solutions returned are vertices of the feasible region.
LpResult minimize(const Matrix& a, const Vector& b, const Vector& c);

}  // namespace prp
