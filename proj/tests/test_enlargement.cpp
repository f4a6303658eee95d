#include "fixtures.hpp"

#include "prp/enlargement.hpp"
#include "prp/error.hpp"
#include "prp/representation.hpp"

#include <gtest/gtest.h>

using namespace prp;
using namespace prp::fixtures;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::ValidationError;
}

Filtration constant_filtration(const Partition& p, std::size_t horizon) { return Filtration(horizon + 1, p); }

}  // namespace

TEST(IsEnlargement, Examples) {
    const Coin2 coin;
    const Filtration fm = natural_filtration(std::span<const Process>(&coin.m, 1));
    const Filtration fn = natural_filtration(std::span<const Process>(&coin.n, 1));
    EXPECT_FALSE(is_enlargement(fm, fm));
    EXPECT_TRUE(is_enlargement(fm, enlarge_join(fm, fn)));
    EXPECT_FALSE(is_enlargement(fm, constant_filtration(Partition::trivial(4), 1)));
    EXPECT_EQ(code_of([&] { is_enlargement(fm, constant_filtration(Partition::trivial(4), 2)); }),
              ErrorCode::DimensionMismatch);
    EXPECT_EQ(enlarge_join(fm, fn), join(fm, fn));
}

TEST(Progressive, DeterministicTimeAddsNothing) {
    const Tau t;
    const RandomTime last(std::vector<std::size_t>(8, 2), 2);
    EXPECT_EQ(progressive_enlargement(t.f, last), t.f);
}

TEST(Progressive, StoppingTimeAddsNothing) {
    const Tau t;
    // First time X falls below 1, else 2.
    std::vector<std::size_t> v;
    for (std::size_t w = 0; w < 8; ++w) v.push_back(t.x.at(w, 1) < 1 ? 1 : 2);
    EXPECT_EQ(progressive_enlargement(t.f, RandomTime(v, 2)), t.f);
}

TEST(Progressive, TauSplitsTimeOne) {
    const Tau t;
    for (const auto& block : t.f[1].blocks()) {
        Block early, late;
        for (auto w : block) (t.tau[w] == 1 ? early : late).push_back(w);
        EXPECT_EQ(t.g[1].block_of(early.front()), t.g[1].block_of(early.back()));
        EXPECT_NE(t.g[1].block_of(early.front()), t.g[1].block_of(late.front()));
    }
    EXPECT_EQ(t.g[1].block_count(), 2 * t.f[1].block_count());
    EXPECT_EQ(t.g[0], t.f[0]);
    EXPECT_TRUE(is_filtration(t.g));
    EXPECT_EQ(code_of([] { RandomTime({0, 3}, 2); }), ErrorCode::ValidationError);
}

TEST(FirstStrictTime, Examples) {
    const Tau t;
    EXPECT_FALSE(first_strict_time(t.f, t.f).u);

    const Filtration early = constant_filtration(Partition::discrete(8), 2);
    const auto r0 = first_strict_time(t.f, early);
    EXPECT_EQ(r0.u, 0u);
    EXPECT_FALSE(r0.g0_trivial);

    const auto r = first_strict_time(t.f, t.g);
    EXPECT_EQ(r.u, 1u);
    EXPECT_TRUE(r.u_is_min);
    EXPECT_EQ(r.strict_times, (std::vector<std::size_t>{1, 2}));
    EXPECT_TRUE(r.g0_trivial);
    EXPECT_TRUE(r.strict_after_u);
}

TEST(Immersion, Examples) {
    const Tau t;
    const Measure& p = t.space.measure();
    const auto same = immersion_check(t.f, t.f, p, t.space);
    EXPECT_TRUE(same.martingales_preserved);
    EXPECT_TRUE(same.condition_ii());

    const auto tau = immersion_check(t.f, t.g, p, t.space);
    EXPECT_TRUE(tau.martingales_preserved);
    EXPECT_TRUE(tau.condition_ii());
    EXPECT_TRUE(tau.equivalent());

    const Filtration look_ahead = constant_filtration(t.f.back(), 2);
    const auto ahead = immersion_check(t.f, look_ahead, p, t.space);
    EXPECT_FALSE(ahead.martingales_preserved);
    EXPECT_FALSE(ahead.condition_ii());
    EXPECT_TRUE(ahead.equivalent());

    const Filtration coarse = constant_filtration(Partition::trivial(8), 2);
    EXPECT_EQ(code_of([&] { immersion_check(t.f, coarse, p, t.space); }), ErrorCode::NotAFiltration);
}

TEST(Witness, Tau) {
    const Tau t;
    const auto rep = prp_loss_witness(t.x, t.f, t.g, t.space);
    ASSERT_TRUE(rep.hypotheses_hold()) << rep.failed_hypothesis;
    EXPECT_EQ(rep.u, 1u);
    ASSERT_TRUE(rep.witness);
    EXPECT_TRUE(rep.prp_lost());

    // Oracle: A = {first coin up, tau = 1} and L = 1_A - Q(A | first coin up) on the up block.
    EXPECT_EQ(rep.block, (Block{0, 2}));
    const Rational cond = rep.q.mass(Block{0, 2}) / rep.q.mass(Block{0, 1, 2, 3});
    for (std::size_t w = 0; w < 8; ++w) {
        const bool up = t.x.at(w, 1) > 1;
        const bool in_a = up && t.tau[w] == 1;
        const Rational expected = (in_a ? Rational(1) : Rational(0)) - (up ? cond : Rational(0));
        EXPECT_EQ((*rep.witness)[w], expected) << w;
    }
    EXPECT_TRUE(rep.q.has_full_support());
    EXPECT_TRUE(is_martingale(t.x, t.g, rep.q));
    EXPECT_EQ(rep.q.expectation(*rep.witness), Rational(0));
    // 8 atoms against constants, one increment at t = 1 and four G_1-blocked increments at t = 2.
    EXPECT_EQ(rep.codimension, 2u);
}

TEST(Witness, AbsentWhenNoEnlargement) {
    const Tau t;
    const auto rep = prp_loss_witness(t.x, t.f, t.f, t.space);
    EXPECT_FALSE(rep.witness);
    EXPECT_FALSE(rep.hypotheses_hold());
}

TEST(Witness, AbsentWhenInitialInformation) {
    const Tau t;
    Filtration g = t.g;
    g[0] = join(g[0], Partition::group_by(8, [&](std::size_t w) { return t.tau[w]; }));
    const auto rep = prp_loss_witness(t.x, t.f, g, t.space);
    EXPECT_FALSE(rep.witness);
    EXPECT_FALSE(rep.g0_trivial);
    EXPECT_EQ(rep.failed_hypothesis, "G_0 is not trivial");
}
