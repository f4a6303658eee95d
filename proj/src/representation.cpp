#include "prp/representation.hpp"

#include "prp/error.hpp"

#include <string>

namespace prp {

Matrix ElementarySystem::as_columns(std::size_t outcome_count) const {
    std::vector<Vector> cols;
    cols.reserve(terminal_values.size());
    for (const auto& v : terminal_values) cols.push_back(v.values());
    return Matrix::from_columns(cols, outcome_count);
}

ElementarySystem elementary_integrals(std::span<const Process> integrators, const Filtration& f) {
    ElementarySystem sys;
    for (std::size_t j = 0; j < integrators.size(); ++j) {
        const Process& x = integrators[j];
        if (!is_adapted(x, f)) throw Error(ErrorCode::NotAdapted, "integrator " + std::to_string(j) + " is not adapted");
        for (std::size_t t = 1; t <= x.horizon(); ++t) {
            const RandomVariable dx = x.increment(t);
            const auto& blocks = f[t - 1].blocks();
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                sys.labels.push_back({j, t, b});
                sys.terminal_values.push_back(RandomVariable::indicator(x.outcome_count(), blocks[b]) * dx);
            }
        }
    }
    return sys;
}

namespace {

void check_space(std::span<const Process> integrators, const FiniteFilteredSpace& space) {
    for (const auto& x : integrators) {
        if (x.outcome_count() != space.outcome_count() || x.horizon() != space.horizon())
            throw Error(ErrorCode::DimensionMismatch, "integrator shape differs from the space");
    }
}

// Columns [1 | elementary integrals].
Matrix design_matrix(const ElementarySystem& sys, std::size_t n) {
    std::vector<Vector> cols{Vector(n, Rational(1))};
    for (const auto& v : sys.terminal_values) cols.push_back(v.values());
    return Matrix::from_columns(cols, n);
}

}  // namespace

SpanBasis integral_span(std::span<const Process> integrators, const Filtration& f, const FiniteFilteredSpace& space) {
    check_space(integrators, space);
    const ElementarySystem sys = elementary_integrals(integrators, f);
    SpanBasis basis;
    for (auto c : independent_columns(sys.as_columns(space.outcome_count()))) {
        basis.basis_vectors.push_back(sys.terminal_values[c]);
    }
    basis.dimension = basis.basis_vectors.size();
    return basis;
}

bool is_complete(std::span<const Process> integrators, const Filtration& f, const FiniteFilteredSpace& space,
                 const Measure& measure) {
    check_space(integrators, space);
    const ElementarySystem sys = elementary_integrals(integrators, f);
    if (!is_trivial(f.front(), measure)) return false;
    return rank(design_matrix(sys, space.outcome_count())) == space.outcome_count();
}

RepresentationResult represent(const RandomVariable& h, std::span<const Process> integrators, const Filtration& f,
                               const FiniteFilteredSpace& space, const Measure& measure) {
    check_space(integrators, space);
    const std::size_t n = space.outcome_count();
    if (h.size() != n) throw Error(ErrorCode::DimensionMismatch, "target variable size");
    const ElementarySystem sys = elementary_integrals(integrators, f);
    const Matrix design = design_matrix(sys, n);

    // Weighted normal equations B^T W B x = B^T W h; their solution set is the
    // set of coefficient vectors reproducing the W-orthogonal projection of h.
    Matrix weighted = design;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < design.cols(); ++c) weighted(r, c) *= measure[r];
    const Matrix gram = multiply(design.transpose(), weighted);
    const Vector moments = multiply(weighted.transpose(), h.values());
    const Vector coef = *min_norm_solve(gram, moments);

    RepresentationResult result;
    result.constant = coef[0];
    result.unique = rank(design) == design.cols();
    for (const auto& x : integrators) result.integrands.emplace_back(x.outcome_count(), x.horizon());
    for (std::size_t k = 0; k < sys.labels.size(); ++k) {
        const auto& lab = sys.labels[k];
        for (auto w : f[lab.time - 1].blocks()[lab.block]) result.integrands[lab.integrator].at(w, lab.time) = coef[k + 1];
    }
    result.reconstruction = RandomVariable(multiply(design, coef));
    result.residual = h - result.reconstruction;
    return result;
}

Process reconstruct_path(const RepresentationResult& r, std::span<const Process> integrators, const Filtration& f) {
    if (integrators.empty()) throw Error(ErrorCode::DimensionMismatch, "no integrators");
    Process path = Process::constant(integrators.front().outcome_count(), integrators.front().horizon(), r.constant);
    for (std::size_t j = 0; j < integrators.size(); ++j) path += stochastic_integral(r.integrands[j], integrators[j], f);
    return path;
}

// ---------------------------------------------------------------------------
// Reports

std::optional<Measure> unique_emm_on_terminal_atoms(const Process& x, const Filtration& f,
                                                    const FiniteFilteredSpace& space) {
    const Coarsening c = coarsen(space, f);
    const Process cx = c.project(x);
    const MeasurePolytope poly = martingale_polytope(std::span<const Process>(&cx, 1), c.space.filtration(), c.space);
    if (!is_unique_emm(poly)) return std::nullopt;
    return c.lift(*find_equivalent_mm(poly), space.measure());
}

namespace {

[[noreturn]] void violated(const std::string& hypothesis) { throw Error(ErrorCode::HypothesisViolated, hypothesis); }

Filtration natural_of(const Process& p) { return natural_filtration(std::span<const Process>(&p, 1)); }

bool strongly_orthogonal_martingales(const Process& u, const Process& v, const Filtration& g, const Measure& m) {
    if (!is_martingale(u, g, m) || !is_martingale(v, g, m)) return false;
    return is_strongly_orthogonal(u, v, g, m);
}

bool mutually_orthogonal(const std::vector<RandomVariable>& a, const std::vector<RandomVariable>& b, const Measure& m) {
    for (const auto& u : a)
        for (const auto& v : b) {
            if (m.expectation(u * v) != 0) return false;
        }
    return true;
}

// Hypotheses shared by the semimartingale pair results: unique equivalent
// martingale measures on the natural filtrations, structure and jump
// conditions, strongly orthogonal martingale parts under F^X v F^Y.
struct PairSetting {
    Filtration fx, fy, g;
    Decomposition dx, dy;
    Measure px, py;
};

PairSetting check_pair(const Process& x, const Process& y, const FiniteFilteredSpace& space) {
    PairSetting s;
    s.fx = natural_of(x);
    s.fy = natural_of(y);
    s.g = join(s.fx, s.fy);
    const Measure& p = space.measure();

    auto px = unique_emm_on_terminal_atoms(x, s.fx, space);
    if (!px) violated("no unique equivalent martingale measure for X on its natural filtration");
    auto py = unique_emm_on_terminal_atoms(y, s.fy, space);
    if (!py) violated("no unique equivalent martingale measure for Y on its natural filtration");
    s.px = *px;
    s.py = *py;

    s.dx = doob_decomposition(x, s.fx, p);
    s.dy = doob_decomposition(y, s.fy, p);
    for (const auto& [dec, f, name] : {std::tuple{&s.dx, &s.fx, "X"}, std::tuple{&s.dy, &s.fy, "Y"}}) {
        StructureData st;
        try {
            st = structure_alpha(*dec, *f, p);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::StructureConditionFails) throw;
            violated(std::string("structure condition fails for ") + name);
        }
        if (!jump_condition(st.alpha, dec->martingale_part)) violated(std::string("jump condition fails for ") + name);
    }
    if (!strongly_orthogonal_martingales(s.dx.martingale_part, s.dy.martingale_part, s.g, p))
        violated("martingale parts are not strongly orthogonal martingales for the joined filtration");
    return s;
}

}  // namespace

OrthogonalDecompositionReport orthogonal_decomposition_report(const Process& m, const Process& n,
                                                              const FiniteFilteredSpace& space,
                                                              const Measure& measure) {
    const FiniteFilteredSpace sp = space.with_measure(measure);
    const Filtration fm = natural_of(m);
    const Filtration fn = natural_of(n);
    const Filtration g = join(fm, fn);

    if (!is_martingale(m, fm, measure)) violated("M is not a martingale for its natural filtration");
    if (!is_martingale(n, fn, measure)) violated("N is not a martingale for its natural filtration");
    const auto pm = unique_emm_on_terminal_atoms(m, fm, sp);
    if (!pm || *pm != measure) violated("P is not the unique equivalent martingale measure for M on F^M");
    const auto pn = unique_emm_on_terminal_atoms(n, fn, sp);
    if (!pn || *pn != measure) violated("P is not the unique equivalent martingale measure for N on F^N");
    if (!strongly_orthogonal_martingales(m, n, g, measure))
        violated("M and N are not strongly orthogonal martingales for F^M v F^N");

    const Process mn = quadratic_covariation(m, n);
    const Coarsening c = coarsen(sp, g);
    const Process cm = c.project(m), cn = c.project(n), cmn = c.project(mn);
    const Filtration& cg = c.space.filtration();
    const Measure& cp = c.space.measure();

    const SpanBasis km = integral_span(std::span<const Process>(&cm, 1), cg, c.space);
    const SpanBasis kn = integral_span(std::span<const Process>(&cn, 1), cg, c.space);
    const SpanBasis kmn = integral_span(std::span<const Process>(&cmn, 1), cg, c.space);

    OrthogonalDecompositionReport report;
    report.outcome_dimension = c.space.outcome_count();
    report.dim_m = km.dimension;
    report.dim_n = kn.dimension;
    report.dim_covariation = kmn.dimension;
    report.spans_orthogonal = mutually_orthogonal(km.basis_vectors, kn.basis_vectors, cp) &&
                              mutually_orthogonal(km.basis_vectors, kmn.basis_vectors, cp) &&
                              mutually_orthogonal(kn.basis_vectors, kmn.basis_vectors, cp);

    std::vector<Vector> all{Vector(report.outcome_dimension, Rational(1))};
    for (const auto* k : {&km, &kn, &kmn})
        for (const auto& v : k->basis_vectors) all.push_back(v.values());
    report.direct_sum_complete =
        report.dim_m + report.dim_n + report.dim_covariation + 1 == report.outcome_dimension &&
        rank(Matrix::from_columns(all, report.outcome_dimension)) == report.outcome_dimension;

    report.covariation_orthogonal_to_m = strongly_orthogonal_martingales(mn, m, g, measure);
    report.covariation_orthogonal_to_n = strongly_orthogonal_martingales(mn, n, g, measure);
    return report;
}

CovariationVanishingReport covariation_vanishing_report(const Process& x, const Process& y,
                                                        const FiniteFilteredSpace& space, const Measure& measure) {
    const FiniteFilteredSpace sp = space.with_measure(measure);
    const PairSetting s = check_pair(x, y, sp);

    CovariationVanishingReport report;
    report.covariation_vanishes = quadratic_covariation(x, y).is_zero();
    const Coarsening c = coarsen(sp, s.g);
    const std::vector<Process> pair{c.project(x), c.project(y)};
    report.pair_complete = is_complete(pair, c.space.filtration(), c.space, c.space.measure());
    return report;
}

PrpInheritanceReport prp_inheritance_report(const Process& x, const FiniteFilteredSpace& space) {
    const Filtration fx = natural_of(x);
    const Measure& p = space.measure();
    const auto unique = unique_emm_on_terminal_atoms(x, fx, space);
    if (!unique) violated("no unique equivalent martingale measure for X on its natural filtration");

    PrpInheritanceReport report;
    report.decomposition = doob_decomposition(x, fx, p);
    try {
        report.structure = structure_alpha(report.decomposition, fx, p);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::StructureConditionFails) throw;
        violated("structure condition fails for X");
    }
    const Process& m = report.decomposition.martingale_part;
    if (!jump_condition(report.structure.alpha, m)) violated("jump condition alpha dM < 1 fails");

    report.density = doleans_exponential(report.structure.alpha, m);
    report.doleans_measure = measure_from_density(p, report.density.terminal());
    report.doleans_is_unique_emm = report.doleans_measure == *unique;

    const FiniteFilteredSpace natural = space.with_filtration(fx);
    report.doleans_is_minimal = minimal_mm_check(report.doleans_measure, m, natural);

    const Coarsening c = coarsen(space, fx);
    const Process cm = c.project(m);
    report.martingale_part_complete =
        is_complete(std::span<const Process>(&cm, 1), c.space.filtration(), c.space, c.space.measure());
    return report;
}

TripletRepresentationReport triplet_representation_report(const Process& x, const Process& y,
                                                          const FiniteFilteredSpace& space, const Measure& measure) {
    const FiniteFilteredSpace sp = space.with_measure(measure);
    const PairSetting s = check_pair(x, y, sp);
    const std::size_t n = sp.outcome_count();

    TripletRepresentationReport report;
    Vector lx(n), ly(n);
    for (std::size_t w = 0; w < n; ++w) {
        lx[w] = s.px[w] / measure[w];
        ly[w] = s.py[w] / measure[w];
    }
    if (!are_independent(s.fx, s.fy, measure)) {
        // Strongly orthogonal martingale parts force independent natural filtrations;
        // reaching here means that implication failed on this instance.
        report.product_measure = measure;
        return report;
    }
    report.product_measure = product_density_measure(measure, RandomVariable(lx), RandomVariable(ly), s.fx, s.fy);
    const Measure& q = report.product_measure;
    report.q_equivalent = q.has_full_support();
    report.factors_independent_under_q = are_independent(s.fx, s.fy, q);
    report.x_q_martingale = is_martingale(x, s.g, q);
    report.y_q_martingale = is_martingale(y, s.g, q);

    const Coarsening c = coarsen(sp, s.g);
    const Filtration& cg = c.space.filtration();
    const std::size_t atoms = c.space.outcome_count();
    Vector qa;
    for (const auto& atom : c.atoms.blocks()) qa.push_back(q.mass(atom));
    const Measure cq(std::move(qa));
    const Measure& cp = c.space.measure();

    const std::vector<Process> triplet{c.project(x), c.project(y), c.project(quadratic_covariation(x, y))};
    const Process& cmx = s.dx.martingale_part;
    const Process& cny = s.dy.martingale_part;
    const std::vector<Process> martingales{c.project(cmx), c.project(cny), c.project(quadratic_covariation(cmx, cny))};

    report.basis_size = atoms;
    report.span_dimension_xy = integral_span(triplet, cg, c.space).dimension;
    report.span_dimension_mn = integral_span(martingales, cg, c.space).dimension;

    for (std::size_t a = 0; a < atoms; ++a) {
        const RandomVariable e = RandomVariable::indicator(atoms, {a});

        const RepresentationResult rk = represent(e, triplet, cg, c.space, cq);
        if (!rk.exact()) ++report.triplet_failures;
        report.integrands_unique_xy = rk.unique;

        // W_t = E_P[e | G_t] must equal W_0 + integrals of (M, N, [M,N]) up to t.
        const RepresentationResult rw = represent(e, martingales, cg, c.space, cp);
        report.integrands_unique_mn = rw.unique;
        bool ok = rw.exact();
        if (ok) {
            const Process path = reconstruct_path(rw, martingales, cg);
            for (std::size_t t = 0; t <= c.space.horizon() && ok; ++t)
                ok = path.value(t) == conditional_expectation(e, cg[t], cp);
        }
        if (!ok) ++report.martingale_failures;
    }
    return report;
}

}  // namespace prp
