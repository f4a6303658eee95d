#include "prp/cli.hpp"

#include "prp/calculus.hpp"
#include "prp/enlargement.hpp"
#include "prp/error.hpp"
#include "prp/measures.hpp"
#include "prp/representation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <ostream>

namespace prp::cli {

namespace {

// ---------------------------------------------------------------------------
// JSON values

Json jr(const Rational& x) { return prp::to_string(x); }

Json jv(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(jr(x));
    return out;
}

Json jv(const RandomVariable& v) { return jv(v.values()); }
Json jv(const Measure& m) { return jv(m.weights()); }

Json jblock(const Block& b, const ModelDocument& model) {
    Json out = Json::array();
    for (auto w : b) out.push_back(model.outcomes[w]);
    return out;
}

Json jpartition(const Partition& p, const ModelDocument& model) {
    Json out = Json::array();
    for (const auto& b : p.blocks()) out.push_back(jblock(b, model));
    return out;
}

Json jfiltration(const Filtration& f, const ModelDocument& model) {
    Json out = Json::array();
    for (const auto& p : f) out.push_back(jpartition(p, model));
    return out;
}

Json jprocess(const Process& p, const ModelDocument& model) {
    Json out = Json::object();
    for (std::size_t w = 0; w < p.outcome_count(); ++w) {
        Json row = Json::array();
        for (std::size_t t = 0; t <= p.horizon(); ++t) row.push_back(jr(p.at(w, t)));
        out[model.outcomes[w]] = row;
    }
    return out;
}

Json jintegrand(const Integrand& xi, const ModelDocument& model) {
    Json out = Json::object();
    for (std::size_t w = 0; w < xi.outcome_count(); ++w) {
        Json row = Json::array();
        for (std::size_t t = 1; t <= xi.horizon(); ++t) row.push_back(jr(xi.at(w, t)));
        out[model.outcomes[w]] = row;
    }
    return out;
}

std::span<const Process> one(const Process& p) { return {&p, 1}; }

Filtration natural_of(const Process& p) { return natural_filtration(one(p)); }

// ---------------------------------------------------------------------------
// Entity resolution

[[noreturn]] void unknown(const std::string& what) { throw Error(ErrorCode::UnknownEntity, what); }

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

/// Splits on commas outside parentheses.
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct Bound {
    std::string name;
    Process process;
};

Bound resolve_process(const ModelDocument& model, const std::string& raw) {
    const std::string name = trim(raw);
    if (name.size() > 4 && name.rfind("QC(", 0) == 0 && name.back() == ')') {
        const auto parts = split_top(name.substr(3, name.size() - 4));
        if (parts.size() != 2) throw Error(ErrorCode::ParseError, "QC takes two processes: " + name);
        const Bound a = resolve_process(model, parts[0]);
        const Bound b = resolve_process(model, parts[1]);
        return {"QC(" + a.name + "," + b.name + ")", quadratic_covariation(a.process, b.process)};
    }
    const Process* p = model.process(name);
    if (!p) unknown("no process named \"" + name + "\"");
    return {name, *p};
}

std::vector<Bound> resolve_list(const ModelDocument& model, const std::string& list) {
    std::vector<Bound> out;
    for (const auto& item : split_top(list)) out.push_back(resolve_process(model, item));
    return out;
}

struct Context {
    const ModelDocument& model;
    const Options& options;
    Filtration f;
    FiniteFilteredSpace space;  ///< model space carrying f
    Measure measure;
    std::string measure_name = "P";

    std::vector<Bound> integrators() const {
        if (options.integrators) return resolve_list(model, *options.integrators);
        std::vector<Bound> all;
        for (const auto& [name, p] : model.processes) all.push_back({name, p});
        return all;
    }

    std::vector<Process> processes(const std::vector<Bound>& bound) const {
        std::vector<Process> out;
        for (const auto& b : bound) out.push_back(b.process);
        return out;
    }

    /// Space under the chosen measure; it must charge every outcome.
    FiniteFilteredSpace weighted() const {
        if (!measure.has_full_support()) throw Error(ErrorCode::NotEquivalent, "measure " + measure_name + " is not equivalent to P");
        return space.with_measure(measure);
    }

    std::pair<std::string, RandomTime> random_time() const {
        std::string name;
        if (options.random_time) {
            name = *options.random_time;
        } else if (!model.random_times.empty()) {
            name = model.random_times.front().first;
        } else {
            unknown("the model defines no random time");
        }
        const auto* tau = model.random_time(name);
        if (!tau) unknown("no random time named \"" + name + "\"");
        return {name, RandomTime(*tau, model.horizon)};
    }
};

Filtration resolve_filtration(const ModelDocument& model, const Options& options) {
    if (!options.filtration) return model.space.filtration();
    const std::string& spec = *options.filtration;
    if (spec == "explicit") return model.explicit_filtration();
    if (spec.rfind("natural:", 0) == 0) {
        std::vector<Process> chosen;
        for (const auto& b : resolve_list(model, spec.substr(8))) chosen.push_back(b.process);
        return natural_filtration(chosen);
    }
    throw Error(ErrorCode::ParseError, "--filtration expects natural:X,Y or explicit, got \"" + spec + "\"");
}

Measure resolve_measure(const ModelDocument& model, const std::string& spec) {
    if (spec == "P") return model.space.measure();
    if (spec.rfind("density:", 0) == 0) {
        const std::string name = spec.substr(8);
        const Vector* v = model.variable(name);
        if (!v) unknown("no variable named \"" + name + "\"");
        return measure_from_density(model.space.measure(), RandomVariable(*v));
    }
    const Vector* q = model.measure(spec);
    if (!q) unknown("no measure named \"" + spec + "\"");
    return Measure(*q);
}

Context make_context(const ModelDocument& model, const Options& options) {
    Context ctx{model, options, resolve_filtration(model, options), {}, model.space.measure()};
    ctx.space = model.space.with_filtration(ctx.f);
    if (options.measure) {
        ctx.measure = resolve_measure(model, *options.measure);
        ctx.measure_name = *options.measure;
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// Checklists

class Checklist {
public:
    explicit Checklist(ScenarioReport& report) : report_(report) {}

    Checklist(ScenarioReport& report, const ScenarioDescriptor& d) : report_(report) {
        for (const auto& h : d.hypotheses) report_.hypotheses.push_back({h, std::nullopt});
        for (const auto& c : d.conclusions) report_.conclusions.push_back({c, std::nullopt});
        fixed_ = true;
    }

    /// Records a hypothesis; returns its value so evaluation can stop early.
    bool hypothesis(const std::string& name, bool holds) { return set(report_.hypotheses, name, holds); }
    bool conclusion(const std::string& name, bool holds) { return set(report_.conclusions, name, holds); }

    bool hypotheses_hold() const {
        return std::all_of(report_.hypotheses.begin(), report_.hypotheses.end(),
                           [](const Check& c) { return c.holds.value_or(false); });
    }

private:
    bool set(std::vector<Check>& list, const std::string& name, bool holds) {
        const auto it = std::find_if(list.begin(), list.end(), [&](const Check& c) { return c.name == name; });
        if (it != list.end()) {
            it->holds = holds;
        } else if (fixed_) {
            throw std::logic_error("check not declared by the scenario: " + name);
        } else {
            list.push_back({name, holds});
        }
        return holds;
    }

    ScenarioReport& report_;
    bool fixed_ = false;
};

// ---------------------------------------------------------------------------
// Shared hypothesis blocks

std::vector<std::string> pair_hypotheses(const std::string& x, const std::string& y, const std::string& suffix = "") {
    return {
        "unique martingale measure for " + x + " on its natural filtration" + suffix,
        "unique martingale measure for " + y + " on its natural filtration" + suffix,
        "structure condition for " + x + suffix,
        "jump condition for " + x + suffix,
        "structure condition for " + y + suffix,
        "jump condition for " + y + suffix,
        "martingale parts strongly orthogonal on the joined filtration" + suffix,
    };
}

std::optional<StructureData> structure_of(const Decomposition& dec, const Filtration& f, const Measure& m) {
    try {
        auto st = structure_alpha(dec, f, m);
        if (!st.satisfied) return std::nullopt;
        return st;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::StructureConditionFails) throw;
        return std::nullopt;
    }
}

/// Evaluates the pair hypotheses in order, stopping at the first failure.
bool check_pair_hypotheses(Checklist& cl, const std::vector<std::string>& names, const Process& x, const Process& y,
                           const FiniteFilteredSpace& space) {
    const Filtration fx = natural_of(x), fy = natural_of(y), g = join(fx, fy);
    const Measure& p = space.measure();
    if (!cl.hypothesis(names[0], unique_emm_on_terminal_atoms(x, fx, space).has_value())) return false;
    if (!cl.hypothesis(names[1], unique_emm_on_terminal_atoms(y, fy, space).has_value())) return false;
    const Decomposition dx = doob_decomposition(x, fx, p), dy = doob_decomposition(y, fy, p);
    const auto drift_ok = [&](const Decomposition& dec, const Filtration& f, std::size_t k) {
        const auto st = structure_of(dec, f, p);
        if (!cl.hypothesis(names[k], st.has_value())) return false;
        return cl.hypothesis(names[k + 1], jump_condition(st->alpha, dec.martingale_part));
    };
    if (!drift_ok(dx, fx, 2) || !drift_ok(dy, fy, 4)) return false;
    const Process& mx = dx.martingale_part;
    const Process& my = dy.martingale_part;
    return cl.hypothesis(names[6], is_martingale(mx, g, p) && is_martingale(my, g, p) && is_strongly_orthogonal(mx, my, g, p));
}

// ---------------------------------------------------------------------------
// Scenarios

struct Binding {
    std::vector<Bound> processes;
    std::vector<std::pair<std::string, RandomTime>> times;
};

Binding bind(const Context& ctx, const ScenarioDescriptor& d) {
    Binding b;
    std::vector<Bound> given;
    if (ctx.options.integrators) given = resolve_list(ctx.model, *ctx.options.integrators);
    std::size_t k = 0;
    for (const auto& role : d.roles) {
        if (role.kind == EntityKind::Process) {
            b.processes.push_back(k < given.size() ? given[k] : resolve_process(ctx.model, role.default_name));
            ++k;
        } else {
            const std::string name = ctx.options.random_time.value_or(role.default_name);
            const auto* tau = ctx.model.random_time(name);
            if (!tau) unknown("no random time named \"" + name + "\"");
            b.times.emplace_back(name, RandomTime(*tau, ctx.model.horizon));
        }
    }
    if (given.size() > k) throw Error(ErrorCode::ValidationError, "scenario " + d.name + " takes " + std::to_string(k) + " processes");
    return b;
}

using ScenarioFn = std::function<void(const Context&, const Binding&, Checklist&, ScenarioReport&)>;

struct Entry {
    ScenarioDescriptor descriptor;
    ScenarioFn run;
};

void run_prop1(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    const Process& x = b.processes[0].process;
    const Filtration g = progressive_enlargement(ctx.f, b.times[0].second);
    const Coarsening cg = coarsen(ctx.space, g);
    const Process gx = cg.project(x);
    r.values["G"] = jfiltration(g, ctx.model);
    cl.hypothesis("H1: unique martingale measure for X on F", unique_emm_on_terminal_atoms(x, ctx.f, ctx.space).has_value());
    cl.hypothesis("H2: some equivalent martingale measure for X on G",
                  find_equivalent_mm(martingale_polytope(one(gx), cg.space.filtration(), cg.space)).has_value());
    const EnlargementReport e = first_strict_time(ctx.f, g);
    cl.hypothesis("G strictly enlarges F at some time", e.u.has_value());
    r.values["u"] = e.u ? Json(*e.u) : Json(nullptr);
    Json strict = Json::array();
    for (auto t : e.strict_times) strict.push_back(t);
    r.values["strict times"] = strict;
    if (!cl.hypotheses_hold()) return;
    cl.conclusion("u is attained", e.u_is_min);
    cl.conclusion("G_t strictly finer than F_t for every t in (u, T]", e.strict_after_u);
}

void witness_checks(const Context& ctx, const Process& x, const RandomTime& tau, Checklist& cl, ScenarioReport& r) {
    const Filtration g = progressive_enlargement(ctx.f, tau);
    const WitnessReport w = prp_loss_witness(x, ctx.f, g, ctx.space);
    cl.hypothesis("H1: unique martingale measure for X on F", w.h1);
    cl.hypothesis("H2: some equivalent martingale measure for X on G", w.h2);
    cl.hypothesis("G enlarges F", w.g_enlarges_f);
    cl.hypothesis("G_0 is trivial", w.g0_trivial);
    cl.hypothesis("u exists and is positive", w.u_positive);
    r.values["u"] = w.u ? Json(*w.u) : Json(nullptr);
    if (!w.hypotheses_hold()) {
        r.note = w.failed_hypothesis;
        return;
    }
    r.values["Q"] = jv(w.q);
    r.values["block A"] = jblock(w.block, ctx.model);
    r.values["L"] = w.witness ? jv(*w.witness) : Json(nullptr);
    r.values["codimension"] = w.codimension;
    cl.conclusion("L is nonzero", w.witness && w.witness_nonzero);
    cl.conclusion("E_Q[L | F_u] = 0", w.conditional_mean_zero);
    cl.conclusion("L is orthogonal to every G-predictable integral of X", w.orthogonal_to_span);
    cl.conclusion("L is not a constant plus an integral", w.not_representable);
    cl.conclusion("codimension is at least 1", w.codimension >= 1);
}

void run_thm2(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    witness_checks(ctx, b.processes[0].process, b.times[0].second, cl, r);
}

void immersion_checks(const Context& ctx, const RandomTime& tau, Checklist& cl, ScenarioReport& r) {
    const Filtration g = progressive_enlargement(ctx.f, tau);
    cl.hypothesis("G is a filtration refining F", is_filtration(g) && std::equal(g.begin(), g.end(), ctx.f.begin(), ctx.f.end(),
                                                                             [](const Partition& a, const Partition& b) { return a.refines(b); }));
    cl.hypothesis("Q has full support", ctx.measure.has_full_support());
    r.values["Q"] = ctx.measure_name;
    if (!cl.hypotheses_hold()) return;
    const ImmersionReport im = immersion_check(ctx.f, g, ctx.measure, ctx.space);
    r.values["(i) F-martingales remain G-martingales"] = im.martingales_preserved;
    r.values["(ii) F_t = F_T meet G_t"] = im.intersection_condition;
    r.values["(ii) E_Q[Y | G_t] is F_T-measurable"] = im.measurability_condition;
    cl.conclusion("(i) iff (ii)", im.equivalent());
}

void run_immersion(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    immersion_checks(ctx, b.times[0].second, cl, r);
}

void run_lemma1(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    const Process& m = b.processes[0].process;
    const Process& n = b.processes[1].process;
    const FiniteFilteredSpace sp = ctx.weighted();
    const Measure& p = sp.measure();
    const Filtration fm = natural_of(m), fn = natural_of(n), g = join(fm, fn);
    const auto pm = unique_emm_on_terminal_atoms(m, fm, sp);
    const auto pn = unique_emm_on_terminal_atoms(n, fn, sp);
    cl.hypothesis("P is the unique martingale measure for M on F^M", pm && *pm == p);
    cl.hypothesis("P is the unique martingale measure for N on F^N", pn && *pn == p);
    if (!cl.hypotheses_hold()) return;
    const bool orthogonal = is_martingale(m, g, p) && is_martingale(n, g, p) && is_strongly_orthogonal(m, n, g, p);
    const bool independent = are_independent(fm, fn, p) && (m.value(0) * n.value(0)).is_zero();
    r.values["strongly orthogonal G-martingales"] = orthogonal;
    r.values["independent with M_0 N_0 = 0"] = independent;
    cl.conclusion("strongly orthogonal iff independent with M_0 N_0 = 0", orthogonal == independent);
}

void run_thm3(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    const Process& m = b.processes[0].process;
    const Process& n = b.processes[1].process;
    const FiniteFilteredSpace sp = ctx.weighted();
    const Measure& p = sp.measure();
    const Filtration fm = natural_of(m), fn = natural_of(n), g = join(fm, fn);
    if (!cl.hypothesis("M is a martingale on F^M", is_martingale(m, fm, p))) return;
    if (!cl.hypothesis("N is a martingale on F^N", is_martingale(n, fn, p))) return;
    const auto pm = unique_emm_on_terminal_atoms(m, fm, sp);
    if (!cl.hypothesis("P is the unique martingale measure for M on F^M", pm && *pm == p)) return;
    const auto pn = unique_emm_on_terminal_atoms(n, fn, sp);
    if (!cl.hypothesis("P is the unique martingale measure for N on F^N", pn && *pn == p)) return;
    if (!cl.hypothesis("M and N strongly orthogonal on F^M v F^N",
                       is_martingale(m, g, p) && is_martingale(n, g, p) && is_strongly_orthogonal(m, n, g, p)))
        return;
    const auto rep = orthogonal_decomposition_report(m, n, sp, p);
    r.values["dim L2(G_T)"] = rep.outcome_dimension;
    r.values["dim K(M)"] = rep.dim_m;
    r.values["dim K(N)"] = rep.dim_n;
    r.values["dim K([M,N])"] = rep.dim_covariation;
    cl.conclusion("K(M), K(N), K([M,N]) mutually orthogonal", rep.spans_orthogonal);
    cl.conclusion("constants + K(M) + K(N) + K([M,N]) = L2(G_T)", rep.direct_sum_complete);
    cl.conclusion("[M,N] strongly orthogonal to M", rep.covariation_orthogonal_to_m);
    cl.conclusion("[M,N] strongly orthogonal to N", rep.covariation_orthogonal_to_n);
}

void covariation_checks(const Context& ctx, const Binding& b, const ScenarioDescriptor& d, Checklist& cl,
                        ScenarioReport& r) {
    const Process& x = b.processes[0].process;
    const Process& y = b.processes[1].process;
    const FiniteFilteredSpace sp = ctx.weighted();
    if (!check_pair_hypotheses(cl, d.hypotheses, x, y, sp)) return;
    const auto rep = covariation_vanishing_report(x, y, sp, sp.measure());
    r.values["covariation vanishes"] = rep.covariation_vanishes;
    r.values["pair has the representation property"] = rep.pair_complete;
    cl.conclusion(d.conclusions[0], rep.biconditional_holds());
}

void run_prop2(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    const Process& x = b.processes[0].process;
    const FiniteFilteredSpace sp = ctx.weighted();
    const Measure& p = sp.measure();
    const Filtration fx = natural_of(x);
    if (!cl.hypothesis("unique martingale measure for X on F^X", unique_emm_on_terminal_atoms(x, fx, sp).has_value()))
        return;
    const Decomposition dec = doob_decomposition(x, fx, p);
    const auto st = structure_of(dec, fx, p);
    if (!cl.hypothesis("structure condition A = int alpha d<M>", st.has_value())) return;
    if (!cl.hypothesis("jump condition alpha dM < 1", jump_condition(st->alpha, dec.martingale_part))) return;
    const auto rep = prp_inheritance_report(x, sp);
    r.values["A"] = jprocess(rep.decomposition.drift_part, ctx.model);
    r.values["alpha"] = jintegrand(rep.structure.alpha, ctx.model);
    r.values["<M>"] = jprocess(rep.structure.predictable_qv, ctx.model);
    r.values["density"] = jprocess(rep.density, ctx.model);
    r.values["Doleans measure"] = jv(rep.doleans_measure);
    cl.conclusion("Doleans measure is the unique martingale measure", rep.doleans_is_unique_emm);
    cl.conclusion("Doleans measure is minimal", rep.doleans_is_minimal);
    cl.conclusion("M has the representation property on F^X", rep.martingale_part_complete);
}

void run_thm4(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    const Process& x = b.processes[0].process;
    const Process& y = b.processes[1].process;
    const FiniteFilteredSpace sp = ctx.weighted();
    if (!check_pair_hypotheses(cl, pair_hypotheses("X", "Y"), x, y, sp)) return;
    const auto rep = triplet_representation_report(x, y, sp, sp.measure());
    r.values["Q"] = jv(rep.product_measure);
    r.values["basis size"] = rep.basis_size;
    r.values["dim span (X, Y, [X,Y])"] = rep.span_dimension_xy;
    r.values["dim span (M, N, [M,N])"] = rep.span_dimension_mn;
    r.values["integrands unique for (X, Y, [X,Y])"] = rep.integrands_unique_xy;
    r.values["integrands unique for (M, N, [M,N])"] = rep.integrands_unique_mn;
    cl.conclusion("Q is equivalent to P", rep.q_equivalent);
    cl.conclusion("F^X and F^Y independent under Q", rep.factors_independent_under_q);
    cl.conclusion("X is a (Q, G)-martingale", rep.x_q_martingale);
    cl.conclusion("Y is a (Q, G)-martingale", rep.y_q_martingale);
    cl.conclusion("every G_T basis variable is represented by (X, Y, [X,Y])", rep.triplet_failures == 0);
    cl.conclusion("every P-martingale basis element is represented by (M, N, [M,N])", rep.martingale_failures == 0);
}

void run_product_law(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    const Process& x = b.processes[0].process;
    const Process& y = b.processes[1].process;
    const FiniteFilteredSpace sp = ctx.weighted();
    const Measure& p = sp.measure();
    const Filtration fx = natural_of(x), fy = natural_of(y), g = join(fx, fy);
    {
        const Decomposition dx = doob_decomposition(x, fx, p), dy = doob_decomposition(y, fy, p);
        const Process& mx = dx.martingale_part;
        const Process& my = dy.martingale_part;
        r.values["martingale parts strongly orthogonal under P"] =
            is_martingale(mx, g, p) && is_martingale(my, g, p) && is_strongly_orthogonal(mx, my, g, p);
    }
    const auto law = product_law(sp, fx, fy);
    if (!cl.hypothesis("joint law equivalent to the product law", law.has_value())) return;
    r.values["product law"] = jv(*law);
    const FiniteFilteredSpace under_law = sp.with_measure(*law);
    if (!check_pair_hypotheses(cl, pair_hypotheses("X", "Y", " under the product law"), x, y, under_law)) return;
    const auto rep = triplet_representation_report(x, y, under_law, *law);
    cl.conclusion("triplet representation holds under the product law", rep.all_hold());

    const Coarsening c = coarsen(sp, g);
    const std::vector<Process> triplet{c.project(x), c.project(y), c.project(quadratic_covariation(x, y))};
    bool exact = true;
    for (std::size_t a = 0; a < c.space.outcome_count() && exact; ++a) {
        const RandomVariable e = RandomVariable::indicator(c.space.outcome_count(), {a});
        exact = represent(e, triplet, c.space.filtration(), c.space, c.space.measure()).exact();
    }
    cl.conclusion("every G_T basis variable is represented by (X, Y, [X,Y]) under P", exact);
}

void run_thm5(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    const Process& x = b.processes[0].process;
    const MeasurePolytope poly = martingale_polytope(one(x), ctx.f, ctx.space);
    const auto emm = find_equivalent_mm(poly);
    if (!cl.hypothesis("an equivalent martingale measure exists", emm.has_value())) return;
    Json samples = Json::array();
    const auto record = [&](const ExtremalityCheck& e) {
        Json s;
        s["q"] = jv(e.q);
        s["extremal"] = e.extremal;
        s["F_0 trivial"] = e.initial_trivial;
        s["representation"] = e.representation;
        samples.push_back(s);
        return e.agrees();
    };
    bool vertices_ok = true;
    for (const auto& v : extremal_points(poly)) vertices_ok = record(extremality_check(v, poly, x, ctx.f, ctx.space)) && vertices_ok;
    const bool emm_ok = record(extremality_check(*emm, poly, x, ctx.f, ctx.space));
    r.values["samples"] = samples;
    cl.conclusion("every vertex: extremal iff F_0 trivial and representation", vertices_ok);
    cl.conclusion("equivalent measure: extremal iff F_0 trivial and representation", emm_ok);
}

void run_cor4(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    const Process& x = b.processes[0].process;
    const MeasurePolytope poly = martingale_polytope(one(x), ctx.f, ctx.space);
    const auto vertices = extremal_points(poly);
    if (!cl.hypothesis("the martingale measure set is nonempty", !vertices.empty())) return;
    Json vs = Json::array();
    for (const auto& v : vertices) {
        Json item;
        item["q"] = jv(v);
        item["support"] = jblock(v.support(), ctx.model);
        vs.push_back(item);
    }
    r.values["extremal points"] = vs;
    cl.conclusion("extremal points have pairwise disjoint supports", pairwise_singular(vertices));
    cl.conclusion("no extremal point is absolutely continuous with respect to another", mutually_non_dominated(vertices));
}

void run_ftap(const Context& ctx, const Binding& b, Checklist& cl, ScenarioReport& r) {
    const Process& x = b.processes[0].process;
    const auto emm = find_equivalent_mm(martingale_polytope(one(x), ctx.f, ctx.space));
    if (!cl.hypothesis("an equivalent martingale measure exists", emm.has_value())) return;
    const FtapReport rep = second_ftap_report(x, ctx.f, ctx.space);
    r.values["unique"] = rep.unique_emm;
    r.values["complete"] = rep.complete;
    r.values["equivalent measure"] = jv(rep.emm);
    Json vs = Json::array();
    for (const auto& v : rep.vertices) vs.push_back(jv(v));
    r.values["extremal points"] = vs;
    cl.conclusion("unique equivalent martingale measure iff complete", rep.uniqueness_iff_completeness());
    cl.conclusion("every sampled measure: extremal iff F_0 trivial and representation",
                  std::all_of(rep.samples.begin(), rep.samples.end(), [](const ExtremalityCheck& e) { return e.agrees(); }));
    cl.conclusion("extremal points mutually non-dominated", mutually_non_dominated(rep.vertices));
}

Role process(const char* name) { return {EntityKind::Process, name}; }
Role random_time(const char* name) { return {EntityKind::RandomTime, name}; }

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = [] {
        const std::vector<std::string> witness_hyp{
            "H1: unique martingale measure for X on F", "H2: some equivalent martingale measure for X on G",
            "G enlarges F", "G_0 is trivial", "u exists and is positive"};
        std::vector<Entry> e;
        e.push_back({{"prop1", {}, "TAU", "strict enlargement after the first strict time u",
                      {process("X"), random_time("tau")},
                      {"H1: unique martingale measure for X on F", "H2: some equivalent martingale measure for X on G",
                       "G strictly enlarges F at some time"},
                      {"u is attained", "G_t strictly finer than F_t for every t in (u, T]"}},
                     run_prop1});
        e.push_back({{"thm2", {}, "TAU", "X loses the representation property on the progressive enlargement",
                      {process("X"), random_time("tau")},
                      witness_hyp,
                      {"L is nonzero", "E_Q[L | F_u] = 0", "L is orthogonal to every G-predictable integral of X",
                       "L is not a constant plus an integral", "codimension is at least 1"}},
                     run_thm2});
        e.push_back({{"lemma1", {}, "COIN2", "strong orthogonality versus independence",
                      {process("M"), process("N")},
                      {"P is the unique martingale measure for M on F^M", "P is the unique martingale measure for N on F^N"},
                      {"strongly orthogonal iff independent with M_0 N_0 = 0"}},
                     run_lemma1});
        e.push_back({{"thm3", {}, "COIN2", "orthogonal decomposition by M, N and [M,N]",
                      {process("M"), process("N")},
                      {"M is a martingale on F^M", "N is a martingale on F^N",
                       "P is the unique martingale measure for M on F^M", "P is the unique martingale measure for N on F^N",
                       "M and N strongly orthogonal on F^M v F^N"},
                      {"K(M), K(N), K([M,N]) mutually orthogonal", "constants + K(M) + K(N) + K([M,N]) = L2(G_T)",
                       "[M,N] strongly orthogonal to M", "[M,N] strongly orthogonal to N"}},
                     run_thm3});
        e.push_back({{"cor1", {}, "COIN2", "[M,N] vanishes iff (M,N) has the representation property",
                      {process("M"), process("N")},
                      pair_hypotheses("M", "N"),
                      {"[M,N] = 0 iff (M,N) has the representation property"}},
                     [](const Context& c, const Binding& b, Checklist& cl, ScenarioReport& r) {
                         covariation_checks(c, b, *find_scenario("cor1"), cl, r);
                     }});
        e.push_back({{"prop2", {}, "BIN-DRIFT", "the martingale part inherits the representation property",
                      {process("X")},
                      {"unique martingale measure for X on F^X", "structure condition A = int alpha d<M>",
                       "jump condition alpha dM < 1"},
                      {"Doleans measure is the unique martingale measure", "Doleans measure is minimal",
                       "M has the representation property on F^X"}},
                     run_prop2});
        e.push_back({{"thm4", {}, "PROD2", "representation by X, Y and [X,Y]",
                      {process("X"), process("Y")},
                      pair_hypotheses("X", "Y"),
                      {"Q is equivalent to P", "F^X and F^Y independent under Q", "X is a (Q, G)-martingale",
                       "Y is a (Q, G)-martingale", "every G_T basis variable is represented by (X, Y, [X,Y])",
                       "every P-martingale basis element is represented by (M, N, [M,N])"}},
                     run_thm4});
        e.push_back({{"cor3", {}, "PROD2", "[X,Y] vanishes iff (X,Y) has the representation property",
                      {process("X"), process("Y")},
                      pair_hypotheses("X", "Y"),
                      {"[X,Y] = 0 iff (X,Y) has the representation property"}},
                     [](const Context& c, const Binding& b, Checklist& cl, ScenarioReport& r) {
                         covariation_checks(c, b, *find_scenario("cor3"), cl, r);
                     }});
        std::vector<std::string> law_hyp{"joint law equivalent to the product law"};
        for (auto& h : pair_hypotheses("X", "Y", " under the product law")) law_hyp.push_back(h);
        e.push_back({{"remark-product-law", {}, "SKEW2", "representation after switching to the product law",
                      {process("X"), process("Y")},
                      law_hyp,
                      {"triplet representation holds under the product law",
                       "every G_T basis variable is represented by (X, Y, [X,Y]) under P"}},
                     run_product_law});
        e.push_back({{"thm5", {}, "TRI", "extremal measures versus trivial F_0 plus representation",
                      {process("X")},
                      {"an equivalent martingale measure exists"},
                      {"every vertex: extremal iff F_0 trivial and representation",
                       "equivalent measure: extremal iff F_0 trivial and representation"}},
                     run_thm5});
        e.push_back({{"cor4", {}, "TRI", "extremal martingale measures are pairwise singular",
                      {process("X")},
                      {"the martingale measure set is nonempty"},
                      {"extremal points have pairwise disjoint supports",
                       "no extremal point is absolutely continuous with respect to another"}},
                     run_cor4});
        e.push_back({{"ftap", {"thm6"}, "BIN", "complete iff the equivalent martingale measure is unique",
                      {process("X")},
                      {"an equivalent martingale measure exists"},
                      {"unique equivalent martingale measure iff complete",
                       "every sampled measure: extremal iff F_0 trivial and representation",
                       "extremal points mutually non-dominated"}},
                     run_ftap});
        e.push_back({{"immersion", {"thm1"}, "TAU", "immersion versus the intersection and measurability conditions",
                      {random_time("tau")},
                      {"G is a filtration refining F", "Q has full support"},
                      {"(i) iff (ii)"}},
                     run_immersion});
        return e;
    }();
    return entries;
}

const Entry* find_entry(std::string_view name) {
    for (const auto& e : registry()) {
        if (e.descriptor.name == name) return &e;
        for (const auto& a : e.descriptor.aliases)
            if (a == name) return &e;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Commands

void require_args(const std::vector<std::string>& args, std::size_t n, const std::string& command) {
    if (args.size() > n) throw Error(ErrorCode::ValidationError, command + " takes " + std::to_string(n) + " entity argument(s)");
}

void cmd_decompose(const Context& ctx, Checklist& cl, ScenarioReport& r) {
    for (const auto& b : ctx.integrators()) {
        const Decomposition dec = doob_decomposition(b.process, ctx.f, ctx.measure);
        Json v;
        v["X_0"] = jv(dec.initial);
        v["M"] = jprocess(dec.martingale_part, ctx.model);
        v["A"] = jprocess(dec.drift_part, ctx.model);
        r.values[b.name] = v;
        Process sum = dec.martingale_part + dec.drift_part;
        for (std::size_t t = 0; t <= sum.horizon(); ++t) sum.set_value(t, sum.value(t) + dec.initial);
        cl.conclusion(b.name + " = X_0 + M + A", sum == b.process);
        cl.conclusion(b.name + ": M is a martingale", is_martingale(dec.martingale_part, ctx.f, ctx.measure));
        cl.conclusion(b.name + ": A is predictable", is_predictable(dec.drift_part, ctx.f));
    }
}

void cmd_structure(const Context& ctx, Checklist& cl, ScenarioReport& r) {
    for (const auto& b : ctx.integrators()) {
        const Decomposition dec = doob_decomposition(b.process, ctx.f, ctx.measure);
        const auto st = structure_of(dec, ctx.f, ctx.measure);
        const Process& m = dec.martingale_part;
        const Process qv = predictable_qv(m, ctx.f, ctx.measure);
        Json v;
        v["<M>"] = jprocess(qv, ctx.model);
        v["structure condition"] = st.has_value();
        if (st) v["alpha"] = jintegrand(st->alpha, ctx.model);
        r.values[b.name] = v;
        cl.conclusion(b.name + ": [M] - <M> is a martingale", is_martingale(quadratic_covariation(m, m) - qv, ctx.f, ctx.measure));
        if (st) cl.conclusion(b.name + ": A = int alpha d<M>", stochastic_integral(st->alpha, qv, ctx.f) == dec.drift_part);
    }
}

void cmd_doleans(const Context& ctx, const std::vector<std::string>& args, Checklist& cl, ScenarioReport& r) {
    require_args(args, 1, "doleans");
    const Bound b = args.empty() ? ctx.integrators().front() : resolve_process(ctx.model, args[0]);
    r.values["X"] = b.name;
    const Decomposition dec = doob_decomposition(b.process, ctx.f, ctx.measure);
    const Process& m = dec.martingale_part;
    r.values["A"] = jprocess(dec.drift_part, ctx.model);
    const auto st = structure_of(dec, ctx.f, ctx.measure);
    if (!cl.hypothesis("structure condition", st.has_value())) return;
    r.values["alpha"] = jintegrand(st->alpha, ctx.model);
    if (!cl.hypothesis("jump condition alpha dM < 1", jump_condition(st->alpha, m))) return;
    const Process l = doleans_exponential(st->alpha, m);
    const Measure q = measure_from_density(ctx.measure, l.terminal());
    r.values["density"] = jprocess(l, ctx.model);
    r.values["measure"] = jv(q);
    cl.conclusion("density is a martingale", is_martingale(l, ctx.f, ctx.measure));
    cl.conclusion("X is a martingale under the Doleans measure", is_martingale(b.process, ctx.f, q));
    cl.conclusion("Doleans measure is minimal", minimal_mm_check(q, m, ctx.space.with_measure(ctx.measure)));
}

void cmd_emm(const Context& ctx, Checklist& cl, ScenarioReport& r) {
    const auto bound = ctx.integrators();
    const auto procs = ctx.processes(bound);
    const MeasurePolytope poly = martingale_polytope(procs, ctx.f, ctx.space);
    const auto emm = find_equivalent_mm(poly);
    const bool na = no_arbitrage_check(procs, ctx.f, ctx.space.measure());
    r.values["equivalent martingale measure"] = emm ? jv(*emm) : Json(nullptr);
    r.values["unique"] = is_unique_emm(poly);
    r.values["no arbitrage"] = na;
    cl.conclusion("no arbitrage iff an equivalent martingale measure exists", na == emm.has_value());
    if (emm) {
        bool ok = poly.contains(*emm) && emm->has_full_support();
        for (const auto& p : procs) ok = ok && is_martingale(p, ctx.f, *emm);
        cl.conclusion("the measure makes every integrator a martingale", ok);
    }
}

void cmd_extremals(const Context& ctx, Checklist& cl, ScenarioReport& r) {
    const auto procs = ctx.processes(ctx.integrators());
    const MeasurePolytope poly = martingale_polytope(procs, ctx.f, ctx.space);
    const auto vertices = extremal_points(poly);
    Json vs = Json::array();
    bool ok = true;
    std::size_t positive = 0;
    for (const auto& v : vertices) {
        vs.push_back(jv(v));
        ok = ok && poly.contains(v) && is_extremal(v, poly);
        positive += v.has_full_support();
    }
    r.values["extremal points"] = vs;
    r.values["pairwise disjoint supports"] = pairwise_singular(vertices);
    cl.conclusion("every listed point is an extremal martingale measure", ok);
    cl.conclusion("no extremal point is absolutely continuous with respect to another", mutually_non_dominated(vertices));
    cl.conclusion("a strictly positive extremal point exists iff the equivalent measure is unique",
                  positive <= 1 && (positive == 1) == is_unique_emm(poly));
}

void cmd_complete(const Context& ctx, Checklist& cl, ScenarioReport& r) {
    const auto procs = ctx.processes(ctx.integrators());
    const bool complete = is_complete(procs, ctx.f, ctx.space, ctx.measure);
    r.values["complete"] = complete;
    r.values["integral span dimension"] = integral_span(procs, ctx.f, ctx.space).dimension;
    r.values["F_T atoms"] = ctx.f.back().block_count();
    const MeasurePolytope poly = martingale_polytope(procs, ctx.f, ctx.space);
    if (ctx.measure.has_full_support() && find_equivalent_mm(poly))
        cl.conclusion("complete iff the equivalent martingale measure is unique", complete == is_unique_emm(poly));
}

void cmd_represent(const Context& ctx, const std::vector<std::string>& args, Checklist& cl, ScenarioReport& r) {
    if (args.size() != 1) throw Error(ErrorCode::ValidationError, "represent takes one variable name");
    const std::string& name = args[0];
    RandomVariable h;
    if (const Vector* v = ctx.model.variable(name)) {
        h = RandomVariable(*v);
    } else if (const Process* p = ctx.model.process(name)) {
        h = p->terminal();
    } else {
        unknown("no variable or process named \"" + name + "\"");
    }
    const auto bound = ctx.integrators();
    const auto procs = ctx.processes(bound);
    const RepresentationResult res = represent(h, procs, ctx.f, ctx.space, ctx.measure);
    r.values["H"] = jv(h);
    r.values["constant"] = jr(res.constant);
    Json integrands;
    for (std::size_t i = 0; i < bound.size(); ++i) integrands[bound[i].name] = jintegrand(res.integrands[i], ctx.model);
    r.values["integrands"] = integrands;
    r.values["residual"] = jv(res.residual);
    r.values["representable"] = res.exact();
    r.values["integrands unique"] = res.unique;
    cl.conclusion("reconstruction + residual = H", res.reconstruction + res.residual == h);
    bool orthogonal = ctx.measure.expectation(res.residual) == 0;
    for (const auto& s : integral_span(procs, ctx.f, ctx.space).basis_vectors)
        orthogonal = orthogonal && ctx.measure.expectation(res.residual * s) == 0;
    cl.conclusion("residual orthogonal to constants and integrals", orthogonal);
    if (res.exact()) cl.conclusion("integral path ends at H", reconstruct_path(res, procs, ctx.f).terminal() == h);
}

void cmd_enlarge(const Context& ctx, Checklist& cl, ScenarioReport& r) {
    const auto [name, tau] = ctx.random_time();
    const Filtration g = progressive_enlargement(ctx.f, tau);
    const EnlargementReport e = first_strict_time(ctx.f, g);
    r.values["random time"] = name;
    r.values["G"] = jfiltration(g, ctx.model);
    r.values["enlargement"] = is_enlargement(ctx.f, g);
    r.values["u"] = e.u ? Json(*e.u) : Json(nullptr);
    Json strict = Json::array();
    for (auto t : e.strict_times) strict.push_back(t);
    r.values["strict times"] = strict;
    r.values["G_0 trivial"] = e.g0_trivial;
    bool refines = is_filtration(g);
    for (std::size_t t = 0; t < g.size(); ++t) refines = refines && g[t].refines(ctx.f[t]);
    cl.conclusion("G is a filtration refining F", refines);
    if (e.u) cl.conclusion("u is attained", e.u_is_min);
}

std::string describe_roles(const ScenarioDescriptor& d) {
    std::string out;
    for (const auto& role : d.roles) {
        if (!out.empty()) out += ", ";
        out += (role.kind == EntityKind::Process ? "process " : "random time ") + role.default_name;
    }
    return out;
}

Json descriptor_json(const ScenarioDescriptor& d) {
    Json j;
    j["name"] = d.name;
    j["aliases"] = d.aliases;
    j["model"] = d.model;
    j["summary"] = d.summary;
    Json roles = Json::array();
    for (const auto& role : d.roles) {
        Json r;
        r["kind"] = role.kind == EntityKind::Process ? "process" : "random time";
        r["default"] = role.default_name;
        roles.push_back(r);
    }
    j["roles"] = roles;
    j["hypotheses"] = d.hypotheses;
    j["conclusions"] = d.conclusions;
    return j;
}

std::string text_value(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out = "(";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + text_value(v[i]);
        return out + ")";
    }
    if (v.is_object()) {
        std::string out = "{";
        std::size_t i = 0;
        for (const auto& [k, x] : v.items()) out += (i++ ? ", " : "") + k + ": " + text_value(x);
        return out + "}";
    }
    return v.dump();
}

const char* mark(const std::optional<bool>& b) { return !b ? "[ -- ]" : *b ? "[pass]" : "[FAIL]"; }

Json checks_json(const std::vector<Check>& checks) {
    Json out = Json::object();
    for (const auto& c : checks) out[c.name] = c.holds ? Json(*c.holds) : Json(nullptr);
    return out;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inapplicable: return "inapplicable";
    }
    return "fail";
}

int exit_code(Verdict v) noexcept { return v == Verdict::Fail ? 1 : 0; }

Verdict ScenarioReport::verdict() const {
    const auto failed = [](const Check& c) { return c.holds == false; };
    if (std::any_of(hypotheses.begin(), hypotheses.end(), failed)) return Verdict::Inapplicable;
    if (std::any_of(conclusions.begin(), conclusions.end(), failed)) return Verdict::Fail;
    return Verdict::Pass;
}

const std::vector<ScenarioDescriptor>& builtin_scenarios() {
    static const std::vector<ScenarioDescriptor> all = [] {
        std::vector<ScenarioDescriptor> out;
        for (const auto& e : registry()) out.push_back(e.descriptor);
        return out;
    }();
    return all;
}

const ScenarioDescriptor* find_scenario(std::string_view name) {
    const Entry* e = find_entry(name);
    return e ? &e->descriptor : nullptr;
}

ScenarioReport run_command(const std::string& command, const ModelDocument& model,
                           const std::vector<std::string>& args, const Options& options) {
    ScenarioReport r;
    r.command = command;
    r.model = model.name;
    const Context ctx = make_context(model, options);

    if (command == "scenario") {
        require_args(args, 1, "scenario");
        std::string name;
        if (options.scenario) name = *options.scenario;
        if (!args.empty()) {
            if (!name.empty() && name != args[0]) throw Error(ErrorCode::ValidationError, "two scenario names given");
            name = args[0];
        }
        if (name.empty()) throw Error(ErrorCode::ValidationError, "scenario needs a name (--scenario NAME)");
        const Entry* e = find_entry(name);
        if (!e) unknown("no scenario named \"" + name + "\"");
        r.scenario = e->descriptor.name;
        const Binding b = bind(ctx, e->descriptor);
        Checklist cl(r, e->descriptor);
        e->run(ctx, b, cl, r);
        return r;
    }

    Checklist cl(r);
    if (command == "decompose") {
        require_args(args, 0, command);
        cmd_decompose(ctx, cl, r);
    } else if (command == "structure") {
        require_args(args, 0, command);
        cmd_structure(ctx, cl, r);
    } else if (command == "doleans") {
        cmd_doleans(ctx, args, cl, r);
    } else if (command == "emm") {
        require_args(args, 0, command);
        cmd_emm(ctx, cl, r);
    } else if (command == "extremals") {
        require_args(args, 0, command);
        cmd_extremals(ctx, cl, r);
    } else if (command == "complete") {
        require_args(args, 0, command);
        cmd_complete(ctx, cl, r);
    } else if (command == "represent") {
        cmd_represent(ctx, args, cl, r);
    } else if (command == "enlarge") {
        require_args(args, 0, command);
        cmd_enlarge(ctx, cl, r);
    } else if (command == "witness" || command == "immersion") {
        require_args(args, 0, command);
        const auto [name, tau] = ctx.random_time();
        r.values["random time"] = name;
        if (command == "witness") {
            const Bound x = ctx.integrators().front();
            r.values["X"] = x.name;
            witness_checks(ctx, x.process, tau, cl, r);
        } else {
            immersion_checks(ctx, tau, cl, r);
        }
    } else {
        throw Error(ErrorCode::UnknownCommand, "unknown command \"" + command + "\"");
    }
    return r;
}

std::string render(const ScenarioReport& r, Format format) {
    if (format == Format::Structured) {
        Json j;
        j["command"] = r.command;
        if (!r.scenario.empty()) j["scenario"] = r.scenario;
        j["model"] = r.model;
        j["hypotheses"] = checks_json(r.hypotheses);
        j["conclusions"] = checks_json(r.conclusions);
        j["values"] = r.values;
        if (!r.note.empty()) j["note"] = r.note;
        j["verdict"] = to_string(r.verdict());
        return format_json(j);
    }
    std::string out = r.command + (r.scenario.empty() ? "" : " " + r.scenario) + " on " + r.model + "\n";
    for (const auto& [title, list] : {std::pair{"hypotheses", &r.hypotheses}, std::pair{"conclusions", &r.conclusions}}) {
        if (list->empty()) continue;
        out += std::string(title) + ":\n";
        for (const auto& c : *list) out += "  " + std::string(mark(c.holds)) + " " + c.name + "\n";
    }
    if (!r.values.empty()) {
        out += "values:\n";
        for (const auto& [k, v] : r.values.items()) out += "  " + k + " = " + text_value(v) + "\n";
    }
    if (!r.note.empty()) out += "note: " + r.note + "\n";
    out += "verdict: " + std::string(to_string(r.verdict())) + "\n";
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact checks of predictable representation results on finite filtered spaces", "prp_lab"};
    std::string command;
    std::vector<std::string> positionals;
    Options options;
    std::string format = "text";
    app.add_option("command", command,
                   "decompose, structure, doleans, emm, extremals, complete, represent, enlarge, witness, immersion, "
                   "scenario, emit, list-scenarios")
        ->required();
    app.add_option("args", positionals, "model file, then entity names");
    app.add_option("--filtration", options.filtration, "natural:X,Y or explicit");
    app.add_option("--integrators", options.integrators, "comma separated processes; QC(A,B) is [A,B]");
    app.add_option("--measure", options.measure, "P, a measure name, or density:H");
    app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--scenario", options.scenario, "scenario name");
    app.add_option("--random-time", options.random_time, "random time name");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    options.format = format == "structured" ? Format::Structured : Format::Text;

    try {
        if (command == "list-scenarios") {
            if (options.format == Format::Structured) {
                Json list = Json::array();
                for (const auto& d : builtin_scenarios()) list.push_back(descriptor_json(d));
                out << format_json(list);
            } else {
                for (const auto& d : builtin_scenarios()) {
                    out << d.name;
                    for (const auto& a : d.aliases) out << " (" << a << ")";
                    out << "  [" << d.model << "]  " << d.summary << "\n    entities: " << describe_roles(d) << "\n";
                }
            }
            return 0;
        }
        static const std::vector<std::string> known{"decompose", "structure", "doleans",  "emm",       "extremals",
                                                    "complete",  "represent", "enlarge",  "witness",   "immersion",
                                                    "scenario",  "emit"};
        if (std::find(known.begin(), known.end(), command) == known.end())
            throw Error(ErrorCode::UnknownCommand, "unknown command \"" + command + "\"");
        // The model is the first positional naming a file; the rest are entity names.
        const auto it = std::find_if(positionals.begin(), positionals.end(),
                                     [](const std::string& p) { return std::filesystem::is_regular_file(p); });
        if (it == positionals.end()) throw Error(ErrorCode::ParseError, "no readable model file given");
        const ModelDocument model = load_model(*it);
        std::vector<std::string> rest(positionals.begin(), it);
        rest.insert(rest.end(), it + 1, positionals.end());
        if (command == "emit") {
            require_args(rest, 0, command);
            out << emit_model(model);
            return 0;
        }
        const ScenarioReport report = run_command(command, model, rest, options);
        out << render(report, options.format);
        return exit_code(report.verdict());
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace prp::cli
