#include "prp/calculus.hpp"

#include "prp/error.hpp"

namespace prp {

Process Decomposition::drift_variation() const {
    Process v(drift_part.outcome_count(), drift_part.horizon());
    for (std::size_t w = 0; w < v.outcome_count(); ++w)
        for (std::size_t t = 1; t <= v.horizon(); ++t)
            v.at(w, t) = v.at(w, t - 1) + abs(drift_part.at(w, t) - drift_part.at(w, t - 1));
    return v;
}

Decomposition doob_decomposition(const Process& x, const Filtration& f, const Measure& measure) {
    if (!is_adapted(x, f)) throw Error(ErrorCode::NotAdapted, "process is not adapted to the filtration");
    const std::size_t n = x.outcome_count();
    Decomposition dec{x.value(0), Process(n, x.horizon()), Process(n, x.horizon())};
    for (std::size_t t = 1; t <= x.horizon(); ++t) {
        const RandomVariable dx = x.increment(t);
        const RandomVariable da = conditional_expectation(dx, f[t - 1], measure);
        const RandomVariable dm = dx - da;
        dec.drift_part.set_value(t, dec.drift_part.value(t - 1) + da);
        dec.martingale_part.set_value(t, dec.martingale_part.value(t - 1) + dm);
    }
    return dec;
}

Process stochastic_integral(const Integrand& xi, const Process& x, const Filtration& f) {
    if (xi.outcome_count() != x.outcome_count() || xi.horizon() != x.horizon())
        throw Error(ErrorCode::DimensionMismatch, "integrand and integrator shapes differ");
    if (!is_predictable(xi, f)) throw Error(ErrorCode::NotPredictable, "integrand is not predictable");
    Process out(x.outcome_count(), x.horizon());
    for (std::size_t t = 1; t <= x.horizon(); ++t) {
        out.set_value(t, out.value(t - 1) + xi.value(t) * x.increment(t));
    }
    return out;
}

Process quadratic_covariation(const Process& x, const Process& y) {
    if (x.outcome_count() != y.outcome_count() || x.horizon() != y.horizon())
        throw Error(ErrorCode::DimensionMismatch, "covariation of processes with different shapes");
    Process out(x.outcome_count(), x.horizon());
    for (std::size_t t = 1; t <= x.horizon(); ++t) {
        out.set_value(t, out.value(t - 1) + x.increment(t) * y.increment(t));
    }
    return out;
}

Process predictable_qv(const Process& m, const Filtration& f, const Measure& measure) {
    if (!is_martingale(m, f, measure)) throw Error(ErrorCode::NotMartingale, "<M> needs a martingale");
    Process out(m.outcome_count(), m.horizon());
    for (std::size_t t = 1; t <= m.horizon(); ++t) {
        const RandomVariable dm = m.increment(t);
        out.set_value(t, out.value(t - 1) + conditional_expectation(dm * dm, f[t - 1], measure));
    }
    return out;
}

StructureData structure_alpha(const Decomposition& dec, const Filtration& f, const Measure& measure) {
    const Process& m = dec.martingale_part;
    const Process& a = dec.drift_part;
    StructureData data{Integrand(m.outcome_count(), m.horizon()), predictable_qv(m, f, measure), false};

    for (std::size_t t = 1; t <= m.horizon(); ++t) {
        for (const auto& block : f[t - 1].blocks()) {
            const auto w0 = block.front();
            const Rational dqv = data.predictable_qv.at(w0, t) - data.predictable_qv.at(w0, t - 1);
            const Rational da = a.at(w0, t) - a.at(w0, t - 1);
            if (dqv == 0 && da != 0) {
                throw Error(ErrorCode::StructureConditionFails,
                            "drift without martingale variance at time " + std::to_string(t));
            }
            const Rational alpha = dqv == 0 ? Rational(0) : da / dqv;
            for (auto w : block) data.alpha.at(w, t) = alpha;
        }
    }

    const Process rebuilt = stochastic_integral(data.alpha, data.predictable_qv, f);
    data.satisfied = rebuilt == a;
    return data;
}

bool jump_condition(const Integrand& alpha, const Process& m) {
    if (alpha.outcome_count() != m.outcome_count() || alpha.horizon() != m.horizon())
        throw Error(ErrorCode::DimensionMismatch, "alpha and M shapes differ");
    for (std::size_t w = 0; w < m.outcome_count(); ++w)
        for (std::size_t t = 1; t <= m.horizon(); ++t) {
            if (alpha.at(w, t) * (m.at(w, t) - m.at(w, t - 1)) >= 1) return false;
        }
    return true;
}

Process doleans_exponential(const Integrand& alpha, const Process& m) {
    if (!jump_condition(alpha, m)) throw Error(ErrorCode::JumpConditionViolated, "alpha dM >= 1 somewhere");
    Process l = Process::constant(m.outcome_count(), m.horizon(), 1);
    for (std::size_t w = 0; w < m.outcome_count(); ++w)
        for (std::size_t t = 1; t <= m.horizon(); ++t)
            l.at(w, t) = l.at(w, t - 1) * (1 - alpha.at(w, t) * (m.at(w, t) - m.at(w, t - 1)));
    return l;
}

bool is_strongly_orthogonal(const Process& u, const Process& v, const Filtration& f, const Measure& measure) {
    if (!is_martingale(u, f, measure) || !is_martingale(v, f, measure))
        throw Error(ErrorCode::NotMartingale, "strong orthogonality is defined for martingales");
    if (!(u.value(0) * v.value(0)).is_zero()) return false;
    return is_martingale(u * v, f, measure);
}

bool are_independent(const Filtration& fa, const Filtration& fb, const Measure& measure) {
    if (fa.empty() || fb.empty()) return true;
    for (const auto& a : fa.back().blocks()) {
        for (const auto& b : fb.back().blocks()) {
            Block both;
            for (auto w : a) {
                if (fb.back().block_of(w) == fb.back().block_of(b.front())) both.push_back(w);
            }
            if (measure.mass(both) != measure.mass(a) * measure.mass(b)) return false;
        }
    }
    return true;
}

bool check_yoeurp(const Process& m, const Process& a, const Filtration& f, const Measure& measure) {
    if (!is_martingale(m, f, measure)) throw Error(ErrorCode::NotMartingale, "M is not a martingale");
    if (!is_predictable(a, f) || !a.value(0).is_zero())
        throw Error(ErrorCode::NotPredictable, "A must be predictable and null at 0");
    return is_martingale(quadratic_covariation(m, a), f, measure);
}

}  // namespace prp
