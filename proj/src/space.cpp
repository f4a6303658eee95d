#include "prp/space.hpp"

#include "prp/error.hpp"

#include <algorithm>
#include <numeric>

namespace prp {

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<Block> blocks, std::size_t outcome_count) {
    constexpr auto unset = static_cast<std::size_t>(-1);
    block_of_.assign(outcome_count, unset);
    for (auto& b : blocks) {
        if (b.empty()) throw Error(ErrorCode::PartitionInvalid, "empty block");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.front() < y.front(); });
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        for (auto w : blocks[k]) {
            if (w >= outcome_count) throw Error(ErrorCode::PartitionInvalid, "outcome index out of range");
            if (block_of_[w] != unset) throw Error(ErrorCode::PartitionInvalid, "blocks overlap");
            block_of_[w] = k;
        }
    }
    if (std::find(block_of_.begin(), block_of_.end(), unset) != block_of_.end())
        throw Error(ErrorCode::PartitionInvalid, "blocks do not cover the outcome set");
    blocks_ = std::move(blocks);
}

Partition Partition::trivial(std::size_t outcome_count) {
    Block all(outcome_count);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return outcome_count == 0 ? Partition({}, 0) : Partition({all}, outcome_count);
}

Partition Partition::discrete(std::size_t outcome_count) {
    std::vector<Block> blocks;
    for (std::size_t w = 0; w < outcome_count; ++w) blocks.push_back({w});
    return Partition(std::move(blocks), outcome_count);
}

bool Partition::refines(const Partition& coarser) const {
    if (coarser.outcome_count() != outcome_count()) throw Error(ErrorCode::DimensionMismatch, "partition sizes differ");
    return std::all_of(blocks_.begin(), blocks_.end(), [&](const Block& b) {
        const auto k = coarser.block_of(b.front());
        return std::all_of(b.begin(), b.end(), [&](std::size_t w) { return coarser.block_of(w) == k; });
    });
}

Partition join(const Partition& a, const Partition& b) {
    if (a.outcome_count() != b.outcome_count()) throw Error(ErrorCode::PartitionInvalid, "join of partitions on different outcome sets");
    return Partition::group_by(a.outcome_count(),
                               [&](std::size_t w) { return std::pair{a.block_of(w), b.block_of(w)}; });
}

Partition meet(const Partition& a, const Partition& b) {
    if (a.outcome_count() != b.outcome_count()) throw Error(ErrorCode::PartitionInvalid, "meet of partitions on different outcome sets");
    const std::size_t n = a.outcome_count();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto* p : {&a, &b}) {
        for (const auto& block : p->blocks()) {
            for (auto w : block) parent[find(w)] = find(block.front());
        }
    }
    return Partition::group_by(n, [&](std::size_t w) { return find(w); });
}

bool is_filtration(const Filtration& f) {
    for (std::size_t t = 1; t < f.size(); ++t) {
        if (f[t].outcome_count() != f[t - 1].outcome_count() || !f[t].refines(f[t - 1])) return false;
    }
    return true;
}

void validate_filtration(const Filtration& f) {
    for (std::size_t t = 1; t < f.size(); ++t) {
        if (f[t].outcome_count() != f[0].outcome_count())
            throw Error(ErrorCode::DimensionMismatch, "filtration partitions on different outcome sets");
        if (!f[t].refines(f[t - 1]))
            throw Error(ErrorCode::FiltrationNotRefining, "partition at time " + std::to_string(t) +
                                                              " does not refine time " + std::to_string(t - 1));
    }
}

Filtration join(const Filtration& a, const Filtration& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "filtrations have different horizons");
    Filtration out;
    out.reserve(a.size());
    for (std::size_t t = 0; t < a.size(); ++t) out.push_back(join(a[t], b[t]));
    return out;
}

// ---------------------------------------------------------------------------
// RandomVariable

RandomVariable RandomVariable::indicator(std::size_t n, const Block& block) {
    Vector v(n);
    for (auto w : block) v.at(w) = 1;
    return RandomVariable(std::move(v));
}

namespace {
void check_same(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw Error(ErrorCode::DimensionMismatch, what);
}
}  // namespace

RandomVariable& RandomVariable::operator+=(const RandomVariable& o) {
    check_same(size(), o.size(), "random variable sizes");
    for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
    return *this;
}

RandomVariable& RandomVariable::operator-=(const RandomVariable& o) {
    check_same(size(), o.size(), "random variable sizes");
    for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

RandomVariable& RandomVariable::operator*=(const RandomVariable& o) {
    check_same(size(), o.size(), "random variable sizes");
    for (std::size_t i = 0; i < size(); ++i) values_[i] *= o.values_[i];
    return *this;
}

RandomVariable& RandomVariable::operator*=(const Rational& c) {
    for (auto& v : values_) v *= c;
    return *this;
}

RandomVariable operator+(RandomVariable a, const RandomVariable& b) { return a += b; }
RandomVariable operator-(RandomVariable a, const RandomVariable& b) { return a -= b; }
RandomVariable operator*(RandomVariable a, const RandomVariable& b) { return a *= b; }
RandomVariable operator*(RandomVariable a, const Rational& c) { return a *= c; }

// ---------------------------------------------------------------------------
// Measure

Measure::Measure(Vector weights) : weights_(std::move(weights)) {
    Rational total = 0;
    for (const auto& w : weights_) {
        if (w < 0) throw Error(ErrorCode::NonPositiveProbability, "negative weight " + to_string(w));
        total += w;
    }
    if (total != 1) throw Error(ErrorCode::ProbabilitySumNotOne, "weights sum to " + to_string(total));
}

Rational Measure::mass(const Block& block) const {
    Rational m = 0;
    for (auto w : block) m += weights_.at(w);
    return m;
}

Rational Measure::expectation(const RandomVariable& rv) const {
    check_same(rv.size(), size(), "expectation: random variable size");
    return dot(weights_, rv.values());
}

Block Measure::support() const {
    Block s;
    for (std::size_t w = 0; w < weights_.size(); ++w) {
        if (weights_[w] > 0) s.push_back(w);
    }
    return s;
}

bool Measure::has_full_support() const {
    return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w > 0; });
}

// ---------------------------------------------------------------------------
// Process / Integrand

Process::Process(std::size_t outcomes, std::size_t horizon)
    : outcomes_(outcomes), horizon_(horizon), data_(outcomes * (horizon + 1)) {}

Process Process::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty() || rows.front().empty()) throw Error(ErrorCode::DimensionMismatch, "process needs at least one outcome and time");
    Process p(rows.size(), rows.front().size() - 1);
    for (std::size_t w = 0; w < rows.size(); ++w) {
        if (rows[w].size() != p.horizon_ + 1) throw Error(ErrorCode::DimensionMismatch, "ragged process rows");
        for (std::size_t t = 0; t <= p.horizon_; ++t) p.at(w, t) = rows[w][t];
    }
    return p;
}

Process Process::constant(std::size_t outcomes, std::size_t horizon, const Rational& c) {
    Process p(outcomes, horizon);
    std::fill(p.data_.begin(), p.data_.end(), c);
    return p;
}

RandomVariable Process::value(std::size_t t) const {
    if (t > horizon_) throw Error(ErrorCode::DimensionMismatch, "time beyond horizon");
    Vector v(outcomes_);
    for (std::size_t w = 0; w < outcomes_; ++w) v[w] = at(w, t);
    return RandomVariable(std::move(v));
}

void Process::set_value(std::size_t t, const RandomVariable& rv) {
    check_same(rv.size(), outcomes_, "process column size");
    for (std::size_t w = 0; w < outcomes_; ++w) at(w, t) = rv[w];
}

RandomVariable Process::increment(std::size_t t) const {
    if (t == 0 || t > horizon_) throw Error(ErrorCode::DimensionMismatch, "increment index");
    Vector v(outcomes_);
    for (std::size_t w = 0; w < outcomes_; ++w) v[w] = at(w, t) - at(w, t - 1);
    return RandomVariable(std::move(v));
}

std::vector<Vector> Process::rows() const {
    std::vector<Vector> out(outcomes_, Vector(horizon_ + 1));
    for (std::size_t w = 0; w < outcomes_; ++w)
        for (std::size_t t = 0; t <= horizon_; ++t) out[w][t] = at(w, t);
    return out;
}

Process& Process::operator+=(const Process& o) {
    check_same(outcomes_, o.outcomes_, "process outcome counts");
    check_same(horizon_, o.horizon_, "process horizons");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Process& Process::operator-=(const Process& o) {
    check_same(outcomes_, o.outcomes_, "process outcome counts");
    check_same(horizon_, o.horizon_, "process horizons");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Process operator+(Process a, const Process& b) { return a += b; }
Process operator-(Process a, const Process& b) { return a -= b; }

Process operator*(const Process& a, const Process& b) {
    check_same(a.outcome_count(), b.outcome_count(), "process outcome counts");
    check_same(a.horizon(), b.horizon(), "process horizons");
    Process out(a.outcome_count(), a.horizon());
    for (std::size_t w = 0; w < a.outcome_count(); ++w)
        for (std::size_t t = 0; t <= a.horizon(); ++t) out.at(w, t) = a.at(w, t) * b.at(w, t);
    return out;
}

Process operator*(Process a, const Rational& c) {
    for (std::size_t w = 0; w < a.outcome_count(); ++w)
        for (std::size_t t = 0; t <= a.horizon(); ++t) a.at(w, t) *= c;
    return a;
}

Integrand::Integrand(std::size_t outcomes, std::size_t horizon)
    : outcomes_(outcomes), horizon_(horizon), data_(outcomes * horizon) {}

Integrand Integrand::constant(std::size_t outcomes, std::size_t horizon, const Rational& c) {
    Integrand xi(outcomes, horizon);
    std::fill(xi.data_.begin(), xi.data_.end(), c);
    return xi;
}

Integrand Integrand::left_limit(const Process& p) {
    Integrand xi(p.outcome_count(), p.horizon());
    for (std::size_t w = 0; w < p.outcome_count(); ++w)
        for (std::size_t t = 1; t <= p.horizon(); ++t) xi.at(w, t) = p.at(w, t - 1);
    return xi;
}

RandomVariable Integrand::value(std::size_t t) const {
    if (t == 0 || t > horizon_) throw Error(ErrorCode::DimensionMismatch, "integrand time index");
    Vector v(outcomes_);
    for (std::size_t w = 0; w < outcomes_; ++w) v[w] = at(w, t);
    return RandomVariable(std::move(v));
}

// ---------------------------------------------------------------------------
// Space

FiniteFilteredSpace build_space(std::vector<std::string> outcomes, const Vector& measure, Filtration filtration,
                                std::size_t horizon) {
    const std::size_t n = outcomes.size();
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "space needs at least one outcome");
    if (measure.size() != n) throw Error(ErrorCode::DimensionMismatch, "measure length differs from outcome count");
    if (horizon < 1) throw Error(ErrorCode::DimensionMismatch, "horizon must be at least 1");
    if (filtration.size() != horizon + 1)
        throw Error(ErrorCode::DimensionMismatch, "filtration needs one partition per time 0..T");
    for (const auto& p : measure) {
        if (p <= 0) throw Error(ErrorCode::NonPositiveProbability, "probability " + to_string(p));
    }
    Rational total = 0;
    for (const auto& p : measure) total += p;
    if (total != 1) throw Error(ErrorCode::ProbabilitySumNotOne, "probabilities sum to " + to_string(total));
    for (const auto& part : filtration) {
        if (part.outcome_count() != n) throw Error(ErrorCode::PartitionInvalid, "partition does not cover the outcome set");
    }
    validate_filtration(filtration);

    FiniteFilteredSpace space;
    space.outcomes_ = std::move(outcomes);
    space.measure_ = Measure(measure);
    space.horizon_ = horizon;
    space.filtration_ = std::move(filtration);
    return space;
}

FiniteFilteredSpace FiniteFilteredSpace::with_filtration(Filtration f) const {
    return build_space(outcomes_, measure_.weights(), std::move(f), horizon_);
}

FiniteFilteredSpace FiniteFilteredSpace::with_measure(const Measure& m) const {
    return build_space(outcomes_, m.weights(), filtration_, horizon_);
}

Filtration natural_filtration(std::span<const Process> processes) {
    if (processes.empty()) throw Error(ErrorCode::DimensionMismatch, "natural filtration of no processes");
    const std::size_t n = processes.front().outcome_count();
    const std::size_t horizon = processes.front().horizon();
    for (const auto& p : processes) {
        if (p.outcome_count() != n || p.horizon() != horizon)
            throw Error(ErrorCode::DimensionMismatch, "processes have different shapes");
    }
    Filtration f;
    for (std::size_t t = 0; t <= horizon; ++t) {
        f.push_back(Partition::group_by(n, [&](std::size_t w) {
            Vector path;
            for (const auto& p : processes)
                for (std::size_t s = 0; s <= t; ++s) path.push_back(p.at(w, s));
            return path;
        }));
    }
    return f;
}

Filtration natural_filtration(std::span<const Process> processes, const FiniteFilteredSpace& space) {
    for (const auto& p : processes) {
        if (p.outcome_count() != space.outcome_count() || p.horizon() != space.horizon())
            throw Error(ErrorCode::DimensionMismatch, "process shape differs from the space");
    }
    return natural_filtration(processes);
}

RandomVariable conditional_expectation(const RandomVariable& rv, const Partition& partition, const Measure& measure) {
    if (rv.size() != partition.outcome_count() || measure.size() != partition.outcome_count())
        throw Error(ErrorCode::PartitionInvalid, "partition, measure and variable disagree on the outcome count");
    RandomVariable out(Vector(rv.size()));
    for (const auto& block : partition.blocks()) {
        Rational mass = 0;
        Rational weighted = 0;
        for (auto w : block) {
            mass += measure[w];
            weighted += measure[w] * rv[w];
        }
        if (mass == 0) throw Error(ErrorCode::NotEquivalent, "conditioning on a block of zero mass");
        const Rational avg = weighted / mass;
        for (auto w : block) out[w] = avg;
    }
    return out;
}

bool is_measurable(const RandomVariable& rv, const Partition& partition) {
    if (rv.size() != partition.outcome_count()) throw Error(ErrorCode::DimensionMismatch, "variable size vs partition");
    return std::all_of(partition.blocks().begin(), partition.blocks().end(), [&](const Block& b) {
        return std::all_of(b.begin(), b.end(), [&](std::size_t w) { return rv[w] == rv[b.front()]; });
    });
}

namespace {
void check_shape(const Process& p, const Filtration& f) {
    if (f.size() != p.horizon() + 1 || (!f.empty() && f.front().outcome_count() != p.outcome_count()))
        throw Error(ErrorCode::DimensionMismatch, "process shape differs from the filtration");
}
}  // namespace

bool is_adapted(const Process& p, const Filtration& f) {
    check_shape(p, f);
    for (std::size_t t = 0; t <= p.horizon(); ++t) {
        if (!is_measurable(p.value(t), f[t])) return false;
    }
    return true;
}

bool is_predictable(const Process& p, const Filtration& f) {
    check_shape(p, f);
    if (!is_measurable(p.value(0), f[0])) return false;
    for (std::size_t t = 1; t <= p.horizon(); ++t) {
        if (!is_measurable(p.value(t), f[t - 1])) return false;
    }
    return true;
}

bool is_predictable(const Integrand& xi, const Filtration& f) {
    if (f.size() != xi.horizon() + 1 || (!f.empty() && f.front().outcome_count() != xi.outcome_count()))
        throw Error(ErrorCode::DimensionMismatch, "integrand shape differs from the filtration");
    for (std::size_t t = 1; t <= xi.horizon(); ++t) {
        if (!is_measurable(xi.value(t), f[t - 1])) return false;
    }
    return true;
}

bool is_martingale(const Process& p, const Filtration& f, const Measure& measure) {
    if (!is_adapted(p, f)) return false;
    for (std::size_t t = 1; t <= p.horizon(); ++t) {
        if (!conditional_expectation(p.increment(t), f[t - 1], measure).is_zero()) return false;
    }
    return true;
}

bool is_trivial(const Partition& partition, const Measure& measure) {
    std::size_t charged = 0;
    for (const auto& b : partition.blocks()) {
        if (measure.mass(b) > 0) ++charged;
    }
    return charged <= 1;
}

// ---------------------------------------------------------------------------
// Coarsening / restriction

Coarsening coarsen(const FiniteFilteredSpace& space, const Filtration& f) {
    if (f.size() != space.horizon() + 1) throw Error(ErrorCode::DimensionMismatch, "filtration horizon");
    validate_filtration(f);
    const Partition& atoms = f.back();
    const auto& parent = space.measure();

    std::vector<std::string> labels;
    Vector weights;
    for (const auto& block : atoms.blocks()) {
        std::string label;
        for (auto w : block) label += (label.empty() ? "" : "+") + space.outcomes()[w];
        labels.push_back(block.size() == 1 ? label : "{" + label + "}");
        weights.push_back(parent.mass(block));
    }
    Filtration coarse;
    for (const auto& part : f) {
        coarse.push_back(Partition::group_by(atoms.block_count(), [&](std::size_t a) {
            return part.block_of(atoms.blocks()[a].front());
        }));
    }
    return {build_space(std::move(labels), weights, std::move(coarse), space.horizon()), atoms};
}

Process Coarsening::project(const Process& p) const {
    if (p.outcome_count() != atoms.outcome_count()) throw Error(ErrorCode::DimensionMismatch, "projecting process");
    Process out(atoms.block_count(), p.horizon());
    for (std::size_t t = 0; t <= p.horizon(); ++t) out.set_value(t, project(p.value(t)));
    return out;
}

RandomVariable Coarsening::project(const RandomVariable& rv) const {
    if (!is_measurable(rv, atoms)) throw Error(ErrorCode::NotAdapted, "variable not measurable for the terminal partition");
    Vector v;
    for (const auto& b : atoms.blocks()) v.push_back(rv[b.front()]);
    return RandomVariable(std::move(v));
}

RandomVariable Coarsening::lift(const RandomVariable& rv) const {
    if (rv.size() != atoms.block_count()) throw Error(ErrorCode::DimensionMismatch, "lifting variable");
    Vector v(atoms.outcome_count());
    for (std::size_t w = 0; w < v.size(); ++w) v[w] = rv[atoms.block_of(w)];
    return RandomVariable(std::move(v));
}

Measure Coarsening::lift(const Measure& q, const Measure& parent) const {
    if (q.size() != atoms.block_count()) throw Error(ErrorCode::DimensionMismatch, "lifting measure");
    Vector v(atoms.outcome_count());
    for (std::size_t a = 0; a < atoms.block_count(); ++a) {
        const Rational mass = parent.mass(atoms.blocks()[a]);
        for (auto w : atoms.blocks()[a]) v[w] = q[a] * parent[w] / mass;
    }
    return Measure(std::move(v));
}

Restriction restrict_to_support(const FiniteFilteredSpace& space, const Filtration& f, const Measure& q) {
    if (q.size() != space.outcome_count()) throw Error(ErrorCode::DimensionMismatch, "restricting to a measure");
    Block kept = q.support();
    std::vector<std::string> labels;
    Vector weights;
    for (auto w : kept) {
        labels.push_back(space.outcomes()[w]);
        weights.push_back(q[w]);
    }
    Filtration sub;
    for (const auto& part : f) {
        sub.push_back(Partition::group_by(kept.size(), [&](std::size_t k) { return part.block_of(kept[k]); }));
    }
    return {build_space(std::move(labels), weights, std::move(sub), space.horizon()), std::move(kept)};
}

Process Restriction::restrict(const Process& p) const {
    Process out(kept.size(), p.horizon());
    for (std::size_t k = 0; k < kept.size(); ++k)
        for (std::size_t t = 0; t <= p.horizon(); ++t) out.at(k, t) = p.at(kept[k], t);
    return out;
}

RandomVariable Restriction::restrict(const RandomVariable& rv) const {
    Vector v;
    for (auto w : kept) v.push_back(rv[w]);
    return RandomVariable(std::move(v));
}

}  // namespace prp
