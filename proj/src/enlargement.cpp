#include "prp/enlargement.hpp"

#include "prp/error.hpp"
#include "prp/representation.hpp"

#include <limits>

namespace prp {

RandomTime::RandomTime(std::vector<std::size_t> values, std::size_t horizon) : values_(std::move(values)) {
    for (auto v : values_) {
        if (v > horizon)
            throw Error(ErrorCode::ValidationError, "random time value " + std::to_string(v) + " exceeds the horizon");
    }
}

namespace {

void check_shapes(const Filtration& f, const Filtration& g) {
    if (f.size() != g.size()) throw Error(ErrorCode::DimensionMismatch, "filtrations have different horizons");
    for (std::size_t t = 0; t < f.size(); ++t) {
        if (f[t].outcome_count() != g[t].outcome_count())
            throw Error(ErrorCode::DimensionMismatch, "filtrations live on different outcome sets");
    }
}

bool strictly_finer(const Partition& fine, const Partition& coarse) {
    return fine.refines(coarse) && !(fine == coarse);
}

}  // namespace

bool is_enlargement(const Filtration& f, const Filtration& g) {
    check_shapes(f, g);
    bool strict = false;
    for (std::size_t t = 0; t < f.size(); ++t) {
        if (!g[t].refines(f[t])) return false;
        strict = strict || !(g[t] == f[t]);
    }
    return strict;
}

Filtration enlarge_join(const Filtration& f, const Filtration& f2) {
    check_shapes(f, f2);
    return join(f, f2);
}

Filtration progressive_enlargement(const Filtration& f, const RandomTime& tau) {
    constexpr auto after = std::numeric_limits<std::size_t>::max();
    Filtration g;
    g.reserve(f.size());
    for (std::size_t t = 0; t < f.size(); ++t) {
        const auto observed =
            Partition::group_by(tau.outcome_count(), [&](std::size_t w) { return tau[w] <= t ? tau[w] : after; });
        g.push_back(join(f[t], observed));
    }
    return g;
}

EnlargementReport first_strict_time(const Filtration& f, const Filtration& g) {
    check_shapes(f, g);
    EnlargementReport report;
    for (std::size_t t = 0; t < f.size(); ++t) {
        if (strictly_finer(g[t], f[t])) report.strict_times.push_back(t);
    }
    if (!report.strict_times.empty()) {
        report.u = report.strict_times.front();
        report.u_is_min = true;
        for (std::size_t t = *report.u + 1; t < f.size(); ++t) {
            if (!strictly_finer(g[t], f[t])) report.strict_violations.push_back(t);
        }
    }
    report.strict_after_u = report.strict_violations.empty();
    report.g0_trivial = !g.empty() && g.front().block_count() == 1;
    return report;
}

ImmersionReport immersion_check(const Filtration& f, const Filtration& g, const Measure& q,
                                const FiniteFilteredSpace& space) {
    if (!is_filtration(f) || !is_filtration(g) || f.size() != g.size())
        throw Error(ErrorCode::NotAFiltration, "F and G must be filtrations on the same grid");
    for (std::size_t t = 0; t < f.size(); ++t) {
        if (f[t].outcome_count() != space.outcome_count() || g[t].outcome_count() != space.outcome_count())
            throw Error(ErrorCode::NotAFiltration, "partition on a different outcome set");
        if (!g[t].refines(f[t])) throw Error(ErrorCode::NotAFiltration, "G does not contain F at time " + std::to_string(t));
    }
    if (!q.has_full_support()) throw Error(ErrorCode::NotEquivalent, "Q must charge every outcome");

    const std::size_t n = space.outcome_count();
    const Partition& terminal = f.back();
    ImmersionReport report{true, true, true};
    for (std::size_t t = 0; t < f.size(); ++t) {
        if (!(meet(terminal, g[t]) == f[t])) report.intersection_condition = false;
    }
    for (const auto& c : terminal.blocks()) {
        const RandomVariable y = RandomVariable::indicator(n, c);
        Process mart(n, f.size() - 1);
        for (std::size_t t = 0; t < f.size(); ++t) {
            mart.set_value(t, conditional_expectation(y, f[t], q));
            if (!is_measurable(conditional_expectation(y, g[t], q), terminal)) report.measurability_condition = false;
        }
        if (!is_martingale(mart, g, q)) report.martingales_preserved = false;
    }
    return report;
}

WitnessReport prp_loss_witness(const Process& x, const Filtration& f, const Filtration& g,
                               const FiniteFilteredSpace& space) {
    if (!is_adapted(x, f)) throw Error(ErrorCode::NotAdapted, "X is not adapted to F");
    WitnessReport report;
    auto fail = [&](const std::string& why) {
        if (report.failed_hypothesis.empty()) report.failed_hypothesis = why;
    };

    report.g_enlarges_f = f.size() == g.size() && is_filtration(g);
    for (std::size_t t = 0; report.g_enlarges_f && t < f.size(); ++t) report.g_enlarges_f = g[t].refines(f[t]);
    if (!report.g_enlarges_f) {
        fail("G is not a filtration containing F");
        return report;
    }

    report.h1 = unique_emm_on_terminal_atoms(x, f, space).has_value();
    if (!report.h1) fail("H1: X has no unique equivalent martingale measure on F");

    const Coarsening cg = coarsen(space, g);
    const Process gx = cg.project(x);
    const auto gq = find_equivalent_mm(martingale_polytope(std::span<const Process>(&gx, 1), cg.space.filtration(), cg.space));
    report.h2 = gq.has_value();
    if (!report.h2) fail("H2: X has no equivalent martingale measure on G");

    const EnlargementReport enl = first_strict_time(f, g);
    report.u = enl.u;
    report.g0_trivial = enl.g0_trivial;
    if (!report.g0_trivial) fail("G_0 is not trivial");
    report.u_positive = enl.u.has_value() && *enl.u > 0;
    if (!enl.u) fail("G never strictly enlarges F");
    else if (!report.u_positive) fail("u must be positive");
    if (!report.hypotheses_hold()) return report;

    const std::size_t u = *enl.u;
    const std::size_t n = space.outcome_count();
    report.q = cg.lift(*gq, space.measure());
    const Measure& q = report.q;

    for (const auto& block : g[u].blocks()) {
        const RandomVariable ind = RandomVariable::indicator(n, block);
        if (!is_measurable(ind, f[u])) {
            report.block = block;
            report.witness = ind - conditional_expectation(ind, f[u], q);
            break;
        }
    }
    const RandomVariable& l = *report.witness;
    report.witness_nonzero = !l.is_zero();
    report.conditional_mean_zero = conditional_expectation(l, f[u], q).is_zero();

    const Filtration& gf = cg.space.filtration();
    const Measure& cq = *gq;
    const RandomVariable cl = cg.project(l);
    const ElementarySystem sys = elementary_integrals(std::span<const Process>(&gx, 1), gf);
    report.orthogonal_to_span = true;
    for (const auto& s : sys.terminal_values) {
        if (cq.expectation(cl * s) != 0) report.orthogonal_to_span = false;
    }

    const FiniteFilteredSpace qspace = cg.space.with_measure(cq);
    report.not_representable = !represent(cl, std::span<const Process>(&gx, 1), gf, qspace, cq).exact();

    std::vector<Vector> cols{Vector(cg.space.outcome_count(), Rational(1))};
    for (const auto& s : sys.terminal_values) cols.push_back(s.values());
    report.codimension = cg.space.outcome_count() - rank(Matrix::from_columns(cols, cg.space.outcome_count()));
    return report;
}

}  // namespace prp
