#pragma once

#include "prp/space.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace prp::gen {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Small rational n/d with |n| <= 6, 1 <= d <= 4.
inline Rational small_rational(Rng& rng) {
    const auto n = static_cast<long>(uniform(rng, 0, 12)) - 6;
    return Rational(n) / static_cast<long>(uniform(rng, 1, 4));
}

/// Strictly positive weights with integer ratios in 1..8, normalised.
inline Vector positive_weights(Rng& rng, std::size_t n) {
    Vector w(n);
    Rational total = 0;
    for (auto& x : w) {
        x = Rational(static_cast<long>(uniform(rng, 1, 8)));
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

/// Event tree: outcomes are leaves, F_t groups leaves by their ancestor at depth t.
struct Tree {
    std::size_t horizon = 0;
    std::vector<std::vector<std::size_t>> ancestor;  ///< ancestor[t][leaf]

    std::size_t leaves() const { return ancestor.empty() ? 0 : ancestor.front().size(); }

    Filtration filtration() const {
        Filtration f;
        for (const auto& level : ancestor) f.push_back(Partition::group_by(leaves(), [&](std::size_t w) { return level[w]; }));
        return f;
    }
};

/// Random tree with at most `max_leaves` leaves. Each node has 1..max_branch
/// children; with `initial_split` the time-0 information has up to two blocks.
inline Tree random_tree(Rng& rng, std::size_t horizon, std::size_t max_leaves, std::size_t max_branch,
                        bool initial_split = false) {
    // paths[i] = sequence of node ids from depth 0 to the current depth.
    std::vector<std::vector<std::size_t>> paths;
    const std::size_t roots = initial_split && max_leaves >= 2 ? uniform(rng, 1, 2) : 1;
    for (std::size_t r = 0; r < roots; ++r) paths.push_back({r});
    std::size_t next_id = roots;
    for (std::size_t t = 1; t <= horizon; ++t) {
        std::vector<std::vector<std::size_t>> grown;
        std::size_t remaining = paths.size();
        for (const auto& p : paths) {
            --remaining;
            const std::size_t room = max_leaves - grown.size() - remaining;
            const std::size_t k = uniform(rng, 1, std::max<std::size_t>(1, std::min(max_branch, room)));
            for (std::size_t c = 0; c < k; ++c) {
                auto q = p;
                q.push_back(next_id++);
                grown.push_back(std::move(q));
            }
        }
        paths = std::move(grown);
    }
    Tree tree;
    tree.horizon = horizon;
    tree.ancestor.assign(horizon + 1, std::vector<std::size_t>(paths.size()));
    for (std::size_t w = 0; w < paths.size(); ++w)
        for (std::size_t t = 0; t <= horizon; ++t) tree.ancestor[t][w] = paths[w][t];
    return tree;
}

inline std::vector<std::string> outcome_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
    return names;
}

inline FiniteFilteredSpace space_on(const Tree& tree, const Vector& p) {
    return build_space(outcome_names(tree.leaves()), p, tree.filtration(), tree.horizon);
}

/// Value chosen per block of f[t].
inline Process random_adapted(Rng& rng, const Filtration& f) {
    const std::size_t n = f.front().outcome_count();
    Process x(n, f.size() - 1);
    for (std::size_t t = 0; t < f.size(); ++t)
        for (const auto& block : f[t].blocks()) {
            const Rational v = small_rational(rng);
            for (auto w : block) x.at(w, t) = v;
        }
    return x;
}

/// Increment at t chosen per block of f[t-1]; null at 0.
inline Process random_predictable_process(Rng& rng, const Filtration& f) {
    const std::size_t n = f.front().outcome_count();
    Process a(n, f.size() - 1);
    for (std::size_t t = 1; t < f.size(); ++t)
        for (const auto& block : f[t - 1].blocks()) {
            const Rational d = small_rational(rng);
            for (auto w : block) a.at(w, t) = a.at(w, t - 1) + d;
        }
    return a;
}

inline Integrand random_integrand(Rng& rng, const Filtration& f) {
    const std::size_t n = f.front().outcome_count();
    Integrand xi(n, f.size() - 1);
    for (std::size_t t = 1; t < f.size(); ++t)
        for (const auto& block : f[t - 1].blocks()) {
            const Rational v = small_rational(rng);
            for (auto w : block) xi.at(w, t) = v;
        }
    return xi;
}

/// Martingale under `measure`: raw adapted increments centred blockwise.
/// The starting value is F_0-measurable (zero when `null_at_zero`).
inline Process random_martingale(Rng& rng, const Filtration& f, const Measure& measure, bool null_at_zero = true) {
    const std::size_t n = f.front().outcome_count();
    Process m(n, f.size() - 1);
    if (!null_at_zero) {
        for (const auto& block : f[0].blocks()) {
            const Rational v = small_rational(rng);
            for (auto w : block) m.at(w, 0) = v;
        }
    }
    for (std::size_t t = 1; t < f.size(); ++t) {
        RandomVariable raw{Vector(n)};
        for (const auto& block : f[t].blocks()) {
            const Rational v = small_rational(rng);
            for (auto w : block) raw[w] = v;
        }
        const RandomVariable centred = raw - conditional_expectation(raw, f[t - 1], measure);
        m.set_value(t, m.value(t - 1) + centred);
    }
    return m;
}

/// Product of two trees with a common horizon: outcome (a, b) -> a * nb + b.
struct ProductTree {
    Tree a, b, joint;
    std::vector<std::size_t> left, right;  ///< coordinates of each joint outcome
};

inline ProductTree product_tree(const Tree& a, const Tree& b) {
    ProductTree pt{a, b, {}, {}, {}};
    const std::size_t na = a.leaves(), nb = b.leaves();
    pt.joint.horizon = a.horizon;
    pt.joint.ancestor.assign(a.horizon + 1, std::vector<std::size_t>(na * nb));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const std::size_t w = i * nb + j;
            pt.left.push_back(i);
            pt.right.push_back(j);
            for (std::size_t t = 0; t <= a.horizon; ++t)
                pt.joint.ancestor[t][w] = a.ancestor[t][i] * 1000003 + b.ancestor[t][j];
        }
    return pt;
}

/// Filtration of one coordinate of a product, lifted to the joint outcomes.
inline Filtration coordinate_filtration(const Tree& coordinate, const std::vector<std::size_t>& index) {
    Filtration f;
    for (const auto& level : coordinate.ancestor)
        f.push_back(Partition::group_by(index.size(), [&](std::size_t w) { return level[index[w]]; }));
    return f;
}

inline Vector product_weights(const Vector& pa, const Vector& pb) {
    Vector out;
    for (const auto& x : pa)
        for (const auto& y : pb) out.push_back(x * y);
    return out;
}

/// Marginal of a joint measure on one coordinate.
inline Measure marginal(const Measure& joint, const std::vector<std::size_t>& index, std::size_t size) {
    Vector w(size);
    for (std::size_t k = 0; k < joint.size(); ++k) w[index[k]] += joint[k];
    return Measure(std::move(w));
}

/// Lifts a process on one coordinate to the joint outcomes.
inline Process lift(const Process& p, const std::vector<std::size_t>& index) {
    Process out(index.size(), p.horizon());
    for (std::size_t w = 0; w < index.size(); ++w)
        for (std::size_t t = 0; t <= p.horizon(); ++t) out.at(w, t) = p.at(index[w], t);
    return out;
}

}  // namespace prp::gen
