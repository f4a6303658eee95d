#pragma once

#include "prp/measures.hpp"
#include "prp/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prp {

/// Integer time in 0..T per outcome.
class RandomTime {
public:
    RandomTime() = default;
    /// Throws ValidationError if a value exceeds the horizon.
    RandomTime(std::vector<std::size_t> values, std::size_t horizon);

    const std::vector<std::size_t>& values() const noexcept { return values_; }
    std::size_t outcome_count() const noexcept { return values_.size(); }
    std::size_t operator[](std::size_t omega) const { return values_[omega]; }

private:
    std::vector<std::size_t> values_;
};

/// G_t refines F_t for every t, strictly for some t. Throws DimensionMismatch.
bool is_enlargement(const Filtration& f, const Filtration& g);

/// Time-wise join. Throws DimensionMismatch.
Filtration enlarge_join(const Filtration& f, const Filtration& f2);

/// G_t = F_t joined with the partition by tau on {tau <= t} (one extra block for {tau > t}).
Filtration progressive_enlargement(const Filtration& f, const RandomTime& tau);

struct EnlargementReport {
    std::optional<std::size_t> u;  ///< least t with G_t strictly finer than F_t
    bool u_is_min = false;
    std::vector<std::size_t> strict_times;
    bool g0_trivial = false;
    bool strict_after_u = false;               ///< strict at every t in (u, T]
    std::vector<std::size_t> strict_violations;  ///< t in (u, T] where G_t = F_t
};

/// Throws DimensionMismatch.
EnlargementReport first_strict_time(const Filtration& f, const Filtration& g);

/// (i) every (Q,F)-martingale is a (Q,G)-martingale; (ii) F_t = F_T meet G_t
/// and E_Q[Y | G_t] is F_T-measurable for every F_T-measurable Y.
struct ImmersionReport {
    bool martingales_preserved = false;
    bool intersection_condition = false;
    bool measurability_condition = false;

    bool condition_ii() const { return intersection_condition && measurability_condition; }
    bool equivalent() const { return martingales_preserved == condition_ii(); }
};

/// Throws NotAFiltration unless F and G are filtrations with G_t refining F_t,
/// NotEquivalent unless Q has full support.
ImmersionReport immersion_check(const Filtration& f, const Filtration& g, const Measure& q,
                                const FiniteFilteredSpace& space);

/// A nonzero G_T-measurable variable orthogonal to constants and to every
/// G-predictable integral of X, built from a G_u block outside F_u.
struct WitnessReport {
    bool h1 = false;  ///< unique equivalent martingale measure for X on F
    bool h2 = false;  ///< some equivalent martingale measure for X on G
    bool g_enlarges_f = false;
    bool g0_trivial = false;
    bool u_positive = false;
    std::string failed_hypothesis;  ///< empty when every hypothesis holds

    std::optional<std::size_t> u;
    Measure q;                              ///< equivalent martingale measure on G
    Block block;                            ///< the chosen G_u block
    std::optional<RandomVariable> witness;  ///< L = 1_A - E_Q[1_A | F_u]
    bool witness_nonzero = false;
    bool conditional_mean_zero = false;  ///< E_Q[L | F_u] = 0
    bool orthogonal_to_span = false;     ///< E_Q[L S] = 0 for every elementary G-integral S
    bool not_representable = false;      ///< nonzero residual against constants + G-integrals
    std::size_t codimension = 0;         ///< dim L^2(G_T) - dim(constants + G-integrals)

    bool hypotheses_hold() const { return failed_hypothesis.empty(); }
    bool prp_lost() const {
        return witness && witness_nonzero && conditional_mean_zero && orthogonal_to_span && not_representable &&
               codimension >= 1;
    }
};

/// Throws NotAdapted if X is not F-adapted.
WitnessReport prp_loss_witness(const Process& x, const Filtration& f, const Filtration& g,
                               const FiniteFilteredSpace& space);

}  // namespace prp
