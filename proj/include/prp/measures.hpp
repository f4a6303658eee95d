#pragma once

#include "prp/linalg.hpp"
#include "prp/space.hpp"

#include <optional>
#include <span>
#include <vector>

namespace prp {

/// Martingale measures of a process family as {q >= 0 : A q = b, sum q = 1}.
///
/// One row per (time t, atom B of F_{t-1}, process X): sum_{w in B} q_w dX_t(w) = 0.
/// The normalisation row is kept separately and added by full_system().
class MeasurePolytope {
public:
    MeasurePolytope() = default;
    MeasurePolytope(Matrix constraint_matrix, Vector rhs, std::size_t outcome_count);

    const Matrix& constraint_matrix() const noexcept { return constraints_; }
    const Vector& rhs() const noexcept { return rhs_; }
    std::size_t outcome_count() const noexcept { return outcome_count_; }

    /// Constraint rows followed by the normalisation row.
    Matrix full_matrix() const;
    Vector full_rhs() const;

    bool contains(const Measure& q) const;

private:
    Matrix constraints_;
    Vector rhs_;
    std::size_t outcome_count_ = 0;
};

/// Throws NotAdapted.
MeasurePolytope martingale_polytope(std::span<const Process> processes, const Filtration& f,
                                    const FiniteFilteredSpace& space);

/// A strictly positive point of the polytope, or nullopt. Each coordinate is
/// maximised by an exact LP; the barycentre of the distinct maximising
/// vertices is returned when every maximum is positive.
std::optional<Measure> find_equivalent_mm(const MeasurePolytope& poly);

/// Exactly one solution, and it is strictly positive.
bool is_unique_emm(const MeasurePolytope& poly);

/// All vertices in lexicographic order of their supports. Throws InfeasibleSystem.
std::vector<Measure> extremal_points(const MeasurePolytope& poly);

/// Throws NotInPolytope.
bool is_extremal(const Measure& q, const MeasurePolytope& poly);

/// Supports pairwise disjoint.
bool pairwise_singular(std::span<const Measure> measures);

/// No measure is absolutely continuous with respect to another (no support
/// contained in another one's). Distinct extremal points always pass this;
/// they need not have disjoint supports.
bool mutually_non_dominated(std::span<const Measure> measures);

/// q equals P on F_0 and every P-martingale null at 0 and strongly orthogonal
/// to M is a q-martingale, for the space's filtration. Throws NotEquivalent.
bool minimal_mm_check(const Measure& q, const Process& m, const FiniteFilteredSpace& space);

/// weight = base * L. Throws NotADensity unless L > 0 and E_base[L] = 1.
Measure measure_from_density(const Measure& base, const RandomVariable& density);

/// dQ/dP = LX LY with LX measurable for the terminal partition of fx and LY
/// for fy. Throws NotADensity, FiltrationsNotIndependent.
Measure product_density_measure(const Measure& p, const RandomVariable& lx, const RandomVariable& ly,
                                const Filtration& fx, const Filtration& fy);

/// The product of the marginal laws on the terminal atoms of fa and fb,
/// spread by P inside each joint atom. nullopt when the product charges an
/// empty joint atom (the product law is not equivalent to P).
std::optional<Measure> product_law(const FiniteFilteredSpace& space, const Filtration& fa, const Filtration& fb);

/// No nonnegative nonzero terminal value of a predictable integral.
bool no_arbitrage_check(std::span<const Process> processes, const Filtration& f, const Measure& measure);

/// Extremality of one sampled martingale measure against the initial
/// triviality plus representation property on its support.
struct ExtremalityCheck {
    Measure q;
    bool equivalent = false;
    bool extremal = false;
    bool initial_trivial = false;  ///< F_0 trivial under q
    bool representation = false;   ///< constants + X-integrals span L^2 on supp q

    bool agrees() const { return extremal == (initial_trivial && representation); }
};

struct FtapReport {
    bool unique_emm = false;
    bool complete = false;
    Measure emm;  ///< the equivalent martingale measure found
    std::vector<Measure> vertices;
    std::vector<ExtremalityCheck> samples;  ///< emm first, then every vertex

    bool uniqueness_iff_completeness() const { return unique_emm == complete; }
    bool all_hold() const;
};

/// Throws NoEMM when no equivalent martingale measure exists.
FtapReport second_ftap_report(const Process& x, const Filtration& f, const FiniteFilteredSpace& space);

/// Extremality vs (F_0 trivial under q and completeness on supp q).
ExtremalityCheck extremality_check(const Measure& q, const MeasurePolytope& poly, const Process& x,
                                   const Filtration& f, const FiniteFilteredSpace& space);

}  // namespace prp
