#pragma once

#include "prp/space.hpp"

namespace prp {

/// X = X_0 + M + A with M a martingale and A predictable, both null at 0.
struct Decomposition {
    RandomVariable initial;
    Process martingale_part;
    Process drift_part;

    /// Total variation |A|_t = sum_{s<=t} |dA_s|.
    Process drift_variation() const;
};

/// Drift of the structure condition A = int alpha d<M>.
struct StructureData {
    Integrand alpha;
    Process predictable_qv;
    bool satisfied = false;
};

/// dA_t = E[dX_t | F_{t-1}]. Throws NotAdapted.
Decomposition doob_decomposition(const Process& x, const Filtration& f, const Measure& measure);

/// (xi . X)_t = sum_{s=1..t} xi_s (X_s - X_{s-1}), null at 0.
/// Throws NotPredictable when xi is not predictable for f.
Process stochastic_integral(const Integrand& xi, const Process& x, const Filtration& f);

/// [X,Y]_t = sum_{s<=t} dX_s dY_s with [X,Y]_0 = 0.
Process quadratic_covariation(const Process& x, const Process& y);

/// <M>: d<M>_t = E[(dM_t)^2 | F_{t-1}]. Throws NotMartingale.
Process predictable_qv(const Process& m, const Filtration& f, const Measure& measure);

/// alpha_t = dA_t / d<M>_t on blocks where d<M>_t != 0, and 0 elsewhere.
/// Throws StructureConditionFails if dA_t != 0 on a block with d<M>_t = 0.
StructureData structure_alpha(const Decomposition& dec, const Filtration& f, const Measure& measure);

/// alpha_t dM_t < 1 at every outcome and time.
bool jump_condition(const Integrand& alpha, const Process& m);

/// L_t = prod_{s<=t} (1 - alpha_s dM_s), the solution of L = 1 - int L_- alpha dM.
/// Throws JumpConditionViolated.
Process doleans_exponential(const Integrand& alpha, const Process& m);

/// UV is a martingale and U_0 V_0 = 0. Throws NotMartingale if U or V is not one.
bool is_strongly_orthogonal(const Process& u, const Process& v, const Filtration& f, const Measure& measure);

/// Terminal partitions of fa and fb are independent under the measure.
bool are_independent(const Filtration& fa, const Filtration& fb, const Measure& measure);

/// [M,A] is a martingale. Throws NotMartingale for M, NotPredictable for A
/// (A must also be null at 0).
bool check_yoeurp(const Process& m, const Process& a, const Filtration& f, const Measure& measure);

}  // namespace prp
