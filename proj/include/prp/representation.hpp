#pragma once

#include "prp/calculus.hpp"
#include "prp/linalg.hpp"
#include "prp/measures.hpp"

#include <span>
#include <vector>

namespace prp {

/// One elementary predictable integrand: the indicator of `block` (an atom of
/// F_{time-1}) integrated against integrator `integrator` over (time-1, time].
struct ElementaryIntegrand {
    std::size_t integrator = 0;
    std::size_t time = 0;
    std::size_t block = 0;
};

/// Terminal values of every elementary integral; their span is the set of
/// terminal values of predictable stochastic integrals.
struct ElementarySystem {
    std::vector<ElementaryIntegrand> labels;
    std::vector<RandomVariable> terminal_values;

    Matrix as_columns(std::size_t outcome_count) const;
};

/// Throws NotAdapted if an integrator is not adapted to f.
ElementarySystem elementary_integrals(std::span<const Process> integrators, const Filtration& f);

struct SpanBasis {
    std::vector<RandomVariable> basis_vectors;
    std::size_t dimension = 0;
};

struct RepresentationResult {
    Rational constant;
    std::vector<Integrand> integrands;  ///< one per integrator
    RandomVariable reconstruction;
    RandomVariable residual;
    bool unique = false;  ///< the elementary coordinate system has full column rank

    bool exact() const { return residual.is_zero(); }
};

/// Basis of { sum_j (xi_j . X_j)_T : xi_j predictable }. Throws NotAdapted.
SpanBasis integral_span(std::span<const Process> integrators, const Filtration& f, const FiniteFilteredSpace& space);

/// Every terminal variable is a constant plus integrals, and F_0 is trivial
/// under the measure. Throws NotAdapted.
bool is_complete(std::span<const Process> integrators, const Filtration& f, const FiniteFilteredSpace& space,
                 const Measure& measure);

/// Projects H onto constants + integral span in the measure-weighted inner
/// product and returns minimum-norm coefficients in elementary coordinates.
/// The residual is zero exactly when H is representable and is otherwise
/// orthogonal to the span under the measure. Throws NotAdapted.
RepresentationResult represent(const RandomVariable& h, std::span<const Process> integrators, const Filtration& f,
                               const FiniteFilteredSpace& space, const Measure& measure);

/// Terminal values -> constant + sum of integrals, evaluated along the path.
Process reconstruct_path(const RepresentationResult& r, std::span<const Process> integrators, const Filtration& f);

// ---------------------------------------------------------------------------
// Hypothesis checks shared by the reports

/// P(X, F) = {q} checked on (Omega, F_T). Returns the unique equivalent
/// martingale measure lifted to Omega (spread by the base measure inside the
/// atoms of F_T), or nullopt.
std::optional<Measure> unique_emm_on_terminal_atoms(const Process& x, const Filtration& f,
                                                    const FiniteFilteredSpace& space);

/// Orthogonal decomposition L^2_0(G_T) = K(M) + K(N) + K([M,N]) with G = F^M v F^N.
struct OrthogonalDecompositionReport {
    std::size_t outcome_dimension = 0;  ///< dim L^2(G_T)
    std::size_t dim_m = 0;
    std::size_t dim_n = 0;
    std::size_t dim_covariation = 0;
    bool spans_orthogonal = false;
    bool direct_sum_complete = false;
    bool covariation_orthogonal_to_m = false;
    bool covariation_orthogonal_to_n = false;

    bool all_hold() const {
        return spans_orthogonal && direct_sum_complete && covariation_orthogonal_to_m && covariation_orthogonal_to_n;
    }
};

/// Throws HypothesisViolated naming the failed hypothesis (martingality, the
/// unique-measure hypothesis for either process, strong orthogonality).
OrthogonalDecompositionReport orthogonal_decomposition_report(const Process& m, const Process& n,
                                                              const FiniteFilteredSpace& space,
                                                              const Measure& measure);

/// [X,Y] == 0 iff the pair (X,Y) has the representation property for F^X v F^Y.
struct CovariationVanishingReport {
    bool covariation_vanishes = false;
    bool pair_complete = false;

    bool biconditional_holds() const { return covariation_vanishes == pair_complete; }
};

CovariationVanishingReport covariation_vanishing_report(const Process& x, const Process& y,
                                                        const FiniteFilteredSpace& space, const Measure& measure);

/// The martingale part inherits the representation property from X.
struct PrpInheritanceReport {
    Decomposition decomposition;  ///< w.r.t. F^X
    StructureData structure;
    Process density;          ///< Doleans exponential of -int alpha dM, on Omega
    Measure doleans_measure;  ///< P reweighted by the terminal density
    bool doleans_is_unique_emm = false;
    bool doleans_is_minimal = false;
    bool martingale_part_complete = false;

    bool all_hold() const { return doleans_is_unique_emm && doleans_is_minimal && martingale_part_complete; }
};

/// Throws HypothesisViolated (no unique measure for X on F^X, structure
/// condition or jump condition fails).
PrpInheritanceReport prp_inheritance_report(const Process& x, const FiniteFilteredSpace& space);

/// Representation of L^2(G_T) by (X, Y, [X,Y]) and of P-martingales by (M, N, [M,N]).
struct TripletRepresentationReport {
    Measure product_measure;  ///< dQ/dP = L^X L^Y
    bool q_equivalent = false;
    bool factors_independent_under_q = false;
    bool x_q_martingale = false;
    bool y_q_martingale = false;
    std::size_t basis_size = 0;
    std::size_t triplet_failures = 0;     ///< basis elements with nonzero residual against (X,Y,[X,Y])
    std::size_t martingale_failures = 0;  ///< P-martingale basis elements not represented by (M,N,[M,N])
    std::size_t span_dimension_xy = 0;    ///< dim of the (X,Y,[X,Y]) integral span
    std::size_t span_dimension_mn = 0;
    bool integrands_unique_xy = false;
    bool integrands_unique_mn = false;

    bool all_hold() const {
        return q_equivalent && factors_independent_under_q && x_q_martingale && y_q_martingale &&
               triplet_failures == 0 && martingale_failures == 0;
    }
};

/// Throws HypothesisViolated (unique measure for X or Y, jump conditions,
/// strong orthogonality of the martingale parts under F^X v F^Y).
TripletRepresentationReport triplet_representation_report(const Process& x, const Process& y,
                                                          const FiniteFilteredSpace& space, const Measure& measure);

}  // namespace prp
