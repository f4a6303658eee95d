#include "prp/measures.hpp"

#include "prp/error.hpp"
#include "prp/representation.hpp"
#include "prp/simplex.hpp"

#include <algorithm>

namespace prp {

MeasurePolytope::MeasurePolytope(Matrix constraint_matrix, Vector rhs, std::size_t outcome_count)
    : constraints_(std::move(constraint_matrix)), rhs_(std::move(rhs)), outcome_count_(outcome_count) {
    if (constraints_.rows() != rhs_.size() || (constraints_.rows() > 0 && constraints_.cols() != outcome_count_))
        throw Error(ErrorCode::DimensionMismatch, "polytope constraint shape");
}

Matrix MeasurePolytope::full_matrix() const {
    Matrix m(constraints_.rows() + 1, outcome_count_);
    for (std::size_t r = 0; r < constraints_.rows(); ++r)
        for (std::size_t c = 0; c < outcome_count_; ++c) m(r, c) = constraints_(r, c);
    for (std::size_t c = 0; c < outcome_count_; ++c) m(constraints_.rows(), c) = 1;
    return m;
}

Vector MeasurePolytope::full_rhs() const {
    Vector b = rhs_;
    b.push_back(1);
    return b;
}

bool MeasurePolytope::contains(const Measure& q) const {
    if (q.size() != outcome_count_) return false;
    return multiply(full_matrix(), q.weights()) == full_rhs();
}

MeasurePolytope martingale_polytope(std::span<const Process> processes, const Filtration& f,
                                    const FiniteFilteredSpace& space) {
    const std::size_t n = space.outcome_count();
    if (f.size() != space.horizon() + 1) throw Error(ErrorCode::DimensionMismatch, "filtration horizon");
    Matrix a(0, n);
    for (const auto& x : processes) {
        if (x.outcome_count() != n || x.horizon() != space.horizon())
            throw Error(ErrorCode::DimensionMismatch, "process shape differs from the space");
        if (!is_adapted(x, f)) throw Error(ErrorCode::NotAdapted, "process is not adapted to the filtration");
    }
    for (std::size_t t = 1; t <= space.horizon(); ++t) {
        for (const auto& block : f[t - 1].blocks()) {
            for (const auto& x : processes) {
                Vector row(n);
                for (auto w : block) row[w] = x.at(w, t) - x.at(w, t - 1);
                if (!is_zero(row)) a.append_row(row);
            }
        }
    }
    Vector rhs(a.rows());
    return MeasurePolytope(std::move(a), std::move(rhs), n);
}

std::optional<Measure> find_equivalent_mm(const MeasurePolytope& poly) {
    const std::size_t n = poly.outcome_count();
    const Matrix a = poly.full_matrix();
    const Vector b = poly.full_rhs();

    std::vector<Vector> maximisers;
    std::vector<bool> covered(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (covered[i]) continue;
        Vector cost(n);
        cost[i] = -1;
        const LpResult lp = minimize(a, b, cost);
        if (lp.status != LpStatus::Optimal || lp.x[i] == 0) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) {
            if (lp.x[j] > 0) covered[j] = true;
        }
        if (std::find(maximisers.begin(), maximisers.end(), lp.x) == maximisers.end()) maximisers.push_back(lp.x);
    }
    if (maximisers.empty()) return std::nullopt;

    Vector centre(n);
    for (const auto& v : maximisers)
        for (std::size_t j = 0; j < n; ++j) centre[j] += v[j];
    for (auto& c : centre) c /= static_cast<long>(maximisers.size());
    return Measure(std::move(centre));
}

bool is_unique_emm(const MeasurePolytope& poly) {
    const Matrix a = poly.full_matrix();
    const auto x = solve(a, poly.full_rhs());
    if (!x || rank(a) != poly.outcome_count()) return false;
    return std::all_of(x->begin(), x->end(), [](const Rational& v) { return v > 0; });
}

namespace {

struct VertexSearch {
    const Matrix& a;
    const Vector& b;
    std::size_t row_rank;
    std::vector<std::pair<Block, Vector>> found;

    void visit(Block& support, std::size_t next) {
        if (!support.empty()) {
            const Matrix cols = a.select_columns(support);
            if (rank(cols) < support.size()) return;  // supersets stay dependent
            if (auto x = solve(cols, b)) {
                if (std::all_of(x->begin(), x->end(), [](const Rational& v) { return v > 0; })) {
                    Vector q(a.cols());
                    for (std::size_t k = 0; k < support.size(); ++k) q[support[k]] = (*x)[k];
                    found.emplace_back(support, std::move(q));
                }
            }
            if (support.size() == row_rank) return;
        }
        for (std::size_t j = next; j < a.cols(); ++j) {
            support.push_back(j);
            visit(support, j + 1);
            support.pop_back();
        }
    }
};

}  // namespace

std::vector<Measure> extremal_points(const MeasurePolytope& poly) {
    const Matrix a = poly.full_matrix();
    const Vector b = poly.full_rhs();
    VertexSearch search{a, b, rank(a), {}};
    Block support;
    search.visit(support, 0);
    if (search.found.empty()) throw Error(ErrorCode::InfeasibleSystem, "no martingale measure exists");
    // Depth-first search in increasing index order already yields lexicographic support order.
    std::vector<Measure> out;
    for (auto& [s, q] : search.found) out.emplace_back(std::move(q));
    return out;
}

bool is_extremal(const Measure& q, const MeasurePolytope& poly) {
    if (!poly.contains(q)) throw Error(ErrorCode::NotInPolytope, "measure does not satisfy the martingale constraints");
    const Block support = q.support();
    return rank(poly.full_matrix().select_columns(support)) == support.size();
}

bool pairwise_singular(std::span<const Measure> measures) {
    for (std::size_t i = 0; i < measures.size(); ++i)
        for (std::size_t j = i + 1; j < measures.size(); ++j)
            for (std::size_t w = 0; w < measures[i].size() && w < measures[j].size(); ++w) {
                if (measures[i][w] > 0 && measures[j][w] > 0) return false;
            }
    return true;
}

bool mutually_non_dominated(std::span<const Measure> measures) {
    for (std::size_t i = 0; i < measures.size(); ++i)
        for (std::size_t j = 0; j < measures.size(); ++j) {
            if (i == j) continue;
            const Block si = measures[i].support(), sj = measures[j].support();
            if (std::includes(sj.begin(), sj.end(), si.begin(), si.end())) return false;
        }
    return true;
}

bool minimal_mm_check(const Measure& q, const Process& m, const FiniteFilteredSpace& space) {
    if (q.size() != space.outcome_count() || !q.has_full_support())
        throw Error(ErrorCode::NotEquivalent, "candidate measure is not equivalent to P");
    const Filtration& f = space.filtration();
    const Measure& p = space.measure();
    for (const auto& block : f.front().blocks()) {
        if (q.mass(block) != p.mass(block)) return false;
    }

    // Martingales of the filtration are determined by F_T-measurable terminal
    // values, so work on the atoms of F_T.
    const Coarsening c = coarsen(space, f);
    const Process cm = c.project(m);
    const Measure& cp = c.space.measure();
    const Filtration& cf = c.space.filtration();
    Vector qa;
    for (const auto& atom : c.atoms.blocks()) qa.push_back(q.mass(atom));
    const Measure cq(std::move(qa));
    const std::size_t atoms = c.space.outcome_count();

    // V_T with E_P[V_T | F_0] = 0 and E_P[V_T (1_B dM_t)] = 0 for every elementary integrand.
    Matrix pairing(0, atoms);
    for (const auto& block : cf.front().blocks()) {
        Vector row(atoms);
        for (auto a : block) row[a] = cp[a];
        pairing.append_row(row);
    }
    const ElementarySystem elem = elementary_integrals(std::span<const Process>(&cm, 1), cf);
    for (const auto& v : elem.terminal_values) {
        Vector row(atoms);
        for (std::size_t a = 0; a < atoms; ++a) row[a] = cp[a] * v[a];
        pairing.append_row(row);
    }

    for (const auto& terminal : nullspace(pairing)) {
        const RandomVariable vt(terminal);
        Process v(atoms, c.space.horizon());
        for (std::size_t t = 0; t <= c.space.horizon(); ++t) v.set_value(t, conditional_expectation(vt, cf[t], cp));
        if (!is_martingale(v, cf, cq)) return false;
    }
    return true;
}

Measure measure_from_density(const Measure& base, const RandomVariable& density) {
    if (density.size() != base.size()) throw Error(ErrorCode::NotADensity, "density length differs from the measure");
    for (std::size_t w = 0; w < density.size(); ++w) {
        if (density[w] <= 0) throw Error(ErrorCode::NotADensity, "density must be strictly positive");
    }
    if (base.expectation(density) != 1) throw Error(ErrorCode::NotADensity, "density must have expectation 1");
    Vector weights(base.size());
    for (std::size_t w = 0; w < base.size(); ++w) weights[w] = base[w] * density[w];
    return Measure(std::move(weights));
}

Measure product_density_measure(const Measure& p, const RandomVariable& lx, const RandomVariable& ly,
                                const Filtration& fx, const Filtration& fy) {
    if (fx.empty() || fy.empty()) throw Error(ErrorCode::DimensionMismatch, "empty filtration");
    if (!is_measurable(lx, fx.back())) throw Error(ErrorCode::NotADensity, "LX is not measurable for F^X_T");
    if (!is_measurable(ly, fy.back())) throw Error(ErrorCode::NotADensity, "LY is not measurable for F^Y_T");
    measure_from_density(p, lx);
    measure_from_density(p, ly);
    if (!are_independent(fx, fy, p))
        throw Error(ErrorCode::FiltrationsNotIndependent, "F^X and F^Y are dependent under P");
    return measure_from_density(p, lx * ly);
}

std::optional<Measure> product_law(const FiniteFilteredSpace& space, const Filtration& fa, const Filtration& fb) {
    const Partition& a = fa.back();
    const Partition& b = fb.back();
    const Measure& p = space.measure();
    const Partition joint = join(a, b);
    // Every pair of marginal atoms carries positive product mass.
    if (joint.block_count() != a.block_count() * b.block_count()) return std::nullopt;

    Vector weights(space.outcome_count());
    for (const auto& atom : joint.blocks()) {
        const auto w0 = atom.front();
        const Rational product = p.mass(a.blocks()[a.block_of(w0)]) * p.mass(b.blocks()[b.block_of(w0)]);
        const Rational mass = p.mass(atom);
        for (auto w : atom) weights[w] = product * p[w] / mass;
    }
    return Measure(std::move(weights));
}

bool no_arbitrage_check(std::span<const Process> processes, const Filtration& f, const Measure& measure) {
    const ElementarySystem elem = elementary_integrals(processes, f);
    const std::size_t k = elem.terminal_values.size();
    if (k == 0) return true;
    const Block support = measure.support();
    const std::size_t s = support.size();

    // Variables [c+ (k) | c- (k) | slack (s)]: slack = sum (c+ - c-) v on the
    // support, slack >= 0. Maximising the total slack is unbounded iff a
    // nonnegative nonzero integral exists.
    Matrix a(s, 2 * k + s);
    for (std::size_t r = 0; r < s; ++r) {
        for (std::size_t j = 0; j < k; ++j) {
            a(r, j) = -elem.terminal_values[j][support[r]];
            a(r, k + j) = elem.terminal_values[j][support[r]];
        }
        a(r, 2 * k + r) = 1;
    }
    Vector cost(2 * k + s);
    for (std::size_t r = 0; r < s; ++r) cost[2 * k + r] = -1;
    const LpResult lp = minimize(a, Vector(s), cost);
    return lp.status == LpStatus::Optimal && lp.objective == 0;
}

ExtremalityCheck extremality_check(const Measure& q, const MeasurePolytope& poly, const Process& x,
                                   const Filtration& f, const FiniteFilteredSpace& space) {
    ExtremalityCheck check{q};
    check.equivalent = q.has_full_support();
    check.extremal = is_extremal(q, poly);
    check.initial_trivial = is_trivial(f.front(), q);

    const Restriction r = restrict_to_support(space, f, q);
    const Process rx = r.restrict(x);
    const Filtration& rf = r.space.filtration();
    const ElementarySystem elem = elementary_integrals(std::span<const Process>(&rx, 1), rf);
    Matrix span = elem.as_columns(r.space.outcome_count());
    std::vector<Vector> cols{Vector(r.space.outcome_count(), Rational(1))};
    for (std::size_t j = 0; j < span.cols(); ++j) cols.push_back(span.column(j));
    check.representation = rank(Matrix::from_columns(cols, r.space.outcome_count())) == r.space.outcome_count();
    return check;
}

bool FtapReport::all_hold() const {
    if (!uniqueness_iff_completeness()) return false;
    if (!std::all_of(samples.begin(), samples.end(), [](const ExtremalityCheck& c) { return c.agrees(); })) return false;
    if (!mutually_non_dominated(vertices)) return false;
    const auto positive = std::count_if(vertices.begin(), vertices.end(), [](const Measure& v) { return v.has_full_support(); });
    return positive <= 1 && (positive == 1) == unique_emm;
}

FtapReport second_ftap_report(const Process& x, const Filtration& f, const FiniteFilteredSpace& space) {
    const MeasurePolytope poly = martingale_polytope(std::span<const Process>(&x, 1), f, space);
    auto emm = find_equivalent_mm(poly);
    if (!emm) throw Error(ErrorCode::NoEMM, "no equivalent martingale measure");

    FtapReport report;
    report.emm = *emm;
    report.unique_emm = is_unique_emm(poly);
    report.complete = is_complete(std::span<const Process>(&x, 1), f, space, space.measure());
    report.vertices = extremal_points(poly);
    report.samples.push_back(extremality_check(*emm, poly, x, f, space));
    for (const auto& v : report.vertices) report.samples.push_back(extremality_check(v, poly, x, f, space));
    return report;
}

}  // namespace prp
