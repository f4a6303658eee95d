#pragma once

#include "prp/rational.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace prp {

using Block = std::vector<std::size_t>;

/// A finite sigma-algebra on outcomes {0..n-1}, held as its atoms.
///
/// Blocks are stored canonically (each block sorted, blocks ordered by their
/// smallest outcome), so two partitions are equal iff they generate the same
/// sigma-algebra.
class Partition {
public:
    Partition() = default;

    /// Throws PartitionInvalid unless the blocks are nonempty, pairwise
    /// disjoint and cover every outcome in [0, outcome_count).
    Partition(std::vector<Block> blocks, std::size_t outcome_count);

    static Partition trivial(std::size_t outcome_count);
    static Partition discrete(std::size_t outcome_count);

    /// Groups outcomes by equal key(omega).
    template <class KeyFn>
    static Partition group_by(std::size_t outcome_count, KeyFn key) {
        std::map<decltype(key(std::size_t{0})), Block> groups;
        for (std::size_t w = 0; w < outcome_count; ++w) groups[key(w)].push_back(w);
        std::vector<Block> blocks;
        blocks.reserve(groups.size());
        for (auto& [k, b] : groups) blocks.push_back(std::move(b));
        return Partition(std::move(blocks), outcome_count);
    }

    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    std::size_t outcome_count() const noexcept { return block_of_.size(); }
    std::size_t block_of(std::size_t outcome) const { return block_of_.at(outcome); }

    /// True iff every block of *this lies inside a block of `coarser`.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition& other) const { return blocks_ == other.blocks_; }

private:
    std::vector<Block> blocks_;
    std::vector<std::size_t> block_of_;
};

/// Coarsest common refinement (sigma(a) v sigma(b)).
Partition join(const Partition& a, const Partition& b);

/// Finest common coarsening (sigma(a) intersected with sigma(b)).
Partition meet(const Partition& a, const Partition& b);

/// Partitions indexed by time 0..T.
using Filtration = std::vector<Partition>;

bool is_filtration(const Filtration& f);

/// Throws FiltrationNotRefining unless each partition refines its predecessor,
/// DimensionMismatch if the partitions disagree on the outcome count.
void validate_filtration(const Filtration& f);

/// Real-valued function on outcomes.
class RandomVariable {
public:
    RandomVariable() = default;
    explicit RandomVariable(Vector values) : values_(std::move(values)) {}
    static RandomVariable constant(std::size_t n, const Rational& c) { return RandomVariable(Vector(n, c)); }
    static RandomVariable indicator(std::size_t n, const Block& block);

    std::size_t size() const noexcept { return values_.size(); }
    const Vector& values() const noexcept { return values_; }
    Rational& operator[](std::size_t i) { return values_[i]; }
    const Rational& operator[](std::size_t i) const { return values_[i]; }

    bool is_zero() const { return prp::is_zero(values_); }
    bool operator==(const RandomVariable&) const = default;

    RandomVariable& operator+=(const RandomVariable& o);
    RandomVariable& operator-=(const RandomVariable& o);
    RandomVariable& operator*=(const RandomVariable& o);
    RandomVariable& operator*=(const Rational& c);

private:
    Vector values_;
};

RandomVariable operator+(RandomVariable a, const RandomVariable& b);
RandomVariable operator-(RandomVariable a, const RandomVariable& b);
RandomVariable operator*(RandomVariable a, const RandomVariable& b);
RandomVariable operator*(RandomVariable a, const Rational& c);

/// Probability weights on outcomes. Zero weights are allowed here (vertex
/// measures of a polytope); the base measure of a space has full support.
class Measure {
public:
    Measure() = default;
    /// Throws NonPositiveProbability on negative weights, ProbabilitySumNotOne otherwise.
    explicit Measure(Vector weights);

    std::size_t size() const noexcept { return weights_.size(); }
    const Vector& weights() const noexcept { return weights_; }
    const Rational& operator[](std::size_t i) const { return weights_[i]; }

    Rational mass(const Block& block) const;
    Rational expectation(const RandomVariable& rv) const;
    /// Outcomes of positive weight, ascending.
    Block support() const;
    bool has_full_support() const;

    bool operator==(const Measure&) const = default;

private:
    Vector weights_;
};

/// Outcome x time matrix of rationals, times 0..T.
class Process {
public:
    Process() = default;
    Process(std::size_t outcomes, std::size_t horizon);
    /// rows[omega][t]; every row must have the same length T+1 >= 1.
    static Process from_rows(const std::vector<Vector>& rows);
    static Process constant(std::size_t outcomes, std::size_t horizon, const Rational& c);

    std::size_t outcome_count() const noexcept { return outcomes_; }
    std::size_t horizon() const noexcept { return horizon_; }

    Rational& at(std::size_t omega, std::size_t t) { return data_[omega * (horizon_ + 1) + t]; }
    const Rational& at(std::size_t omega, std::size_t t) const { return data_[omega * (horizon_ + 1) + t]; }

    RandomVariable value(std::size_t t) const;
    void set_value(std::size_t t, const RandomVariable& rv);
    /// X_t - X_{t-1}, for t >= 1.
    RandomVariable increment(std::size_t t) const;
    RandomVariable terminal() const { return value(horizon_); }
    std::vector<Vector> rows() const;

    bool is_zero() const { return prp::is_zero(data_); }
    bool operator==(const Process&) const = default;

    Process& operator+=(const Process& o);
    Process& operator-=(const Process& o);

private:
    std::size_t outcomes_ = 0;
    std::size_t horizon_ = 0;
    Vector data_;
};

Process operator+(Process a, const Process& b);
Process operator-(Process a, const Process& b);
/// Pointwise product.
Process operator*(const Process& a, const Process& b);
Process operator*(Process a, const Rational& c);

/// Predictable process: value used over (t-1, t], stored for t = 1..T.
class Integrand {
public:
    Integrand() = default;
    Integrand(std::size_t outcomes, std::size_t horizon);
    static Integrand constant(std::size_t outcomes, std::size_t horizon, const Rational& c);
    /// xi_t = p_{t-1}.
    static Integrand left_limit(const Process& p);

    std::size_t outcome_count() const noexcept { return outcomes_; }
    std::size_t horizon() const noexcept { return horizon_; }

    /// t in 1..T.
    Rational& at(std::size_t omega, std::size_t t) { return data_[omega * horizon_ + (t - 1)]; }
    const Rational& at(std::size_t omega, std::size_t t) const { return data_[omega * horizon_ + (t - 1)]; }
    RandomVariable value(std::size_t t) const;

    bool operator==(const Integrand&) const = default;

private:
    std::size_t outcomes_ = 0;
    std::size_t horizon_ = 0;
    Vector data_;
};

/// (Omega, F, filtration, P) on a time grid 0..T.
class FiniteFilteredSpace {
public:
    FiniteFilteredSpace() = default;

    const std::vector<std::string>& outcomes() const noexcept { return outcomes_; }
    std::size_t outcome_count() const noexcept { return outcomes_.size(); }
    const Measure& measure() const noexcept { return measure_; }
    std::size_t horizon() const noexcept { return horizon_; }
    const Filtration& filtration() const noexcept { return filtration_; }

    /// Same outcomes and horizon, different information flow.
    FiniteFilteredSpace with_filtration(Filtration f) const;
    /// Same outcomes and filtration under a different full-support measure.
    FiniteFilteredSpace with_measure(const Measure& m) const;

    friend FiniteFilteredSpace build_space(std::vector<std::string> outcomes, const Vector& measure,
                                           Filtration filtration, std::size_t horizon);

private:
    std::vector<std::string> outcomes_;
    Measure measure_;
    std::size_t horizon_ = 0;
    Filtration filtration_;
};

/// Validates and assembles a space. Errors: NonPositiveProbability,
/// ProbabilitySumNotOne, FiltrationNotRefining, PartitionInvalid, DimensionMismatch.
FiniteFilteredSpace build_space(std::vector<std::string> outcomes, const Vector& measure, Filtration filtration,
                                std::size_t horizon);

/// Partition at t groups outcomes whose trajectories of every given process
/// agree on [0, t].
Filtration natural_filtration(std::span<const Process> processes);
Filtration natural_filtration(std::span<const Process> processes, const FiniteFilteredSpace& space);

/// Block-wise weighted average. Throws NotEquivalent on a block of zero mass.
RandomVariable conditional_expectation(const RandomVariable& rv, const Partition& partition, const Measure& measure);

bool is_measurable(const RandomVariable& rv, const Partition& partition);
bool is_adapted(const Process& p, const Filtration& f);
/// Column t of a process measurable at t-1 for t >= 1, column 0 at time 0.
bool is_predictable(const Process& p, const Filtration& f);
bool is_predictable(const Integrand& xi, const Filtration& f);
bool is_martingale(const Process& p, const Filtration& f, const Measure& measure);

/// A single block carrying positive mass (null blocks are ignored).
bool is_trivial(const Partition& partition, const Measure& measure);

/// Time-wise join of two filtrations.
Filtration join(const Filtration& a, const Filtration& b);

/// The space whose outcomes are the atoms of a filtration's terminal
/// partition. Used to work on (Omega, F_T) when F_T is coarser than the
/// outcome set.
struct Coarsening {
    FiniteFilteredSpace space;
    Partition atoms;  ///< terminal partition on the parent outcomes

    Process project(const Process& p) const;           ///< requires F_T-measurable columns
    RandomVariable project(const RandomVariable& rv) const;
    RandomVariable lift(const RandomVariable& rv) const;
    /// q on atoms, spread inside each atom in proportion to the parent measure.
    Measure lift(const Measure& q, const Measure& parent) const;
};

Coarsening coarsen(const FiniteFilteredSpace& space, const Filtration& f);

/// The sub-space carried by the support of q, with q as its (full-support) measure.
struct Restriction {
    FiniteFilteredSpace space;
    Block kept;  ///< parent outcome indices, ascending

    Process restrict(const Process& p) const;
    RandomVariable restrict(const RandomVariable& rv) const;
};

Restriction restrict_to_support(const FiniteFilteredSpace& space, const Filtration& f, const Measure& q);

}  // namespace prp
