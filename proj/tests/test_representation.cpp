#include "fixtures.hpp"

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

std::span<const Process> one(const Process& p) { return {&p, 1}; }

// Hand count of the rank of sign vectors (rows are outcomes).
std::size_t sign_rank(const std::vector<Vector>& cols, std::size_t n) { return rank(Matrix::from_columns(cols, n)); }

// Two coins tossed at t = 1 and t = 2 per coordinate; 16 outcomes.
struct Coin2x2 {
    Process m, n;
    FiniteFilteredSpace space;
    Coin2x2() {
        std::vector<Vector> mr, nr;
        std::vector<std::string> names;
        for (int a1 = 0; a1 < 2; ++a1)
            for (int b1 = 0; b1 < 2; ++b1)
                for (int a2 = 0; a2 < 2; ++a2)
                    for (int b2 = 0; b2 < 2; ++b2) {
                        const int s1 = a1 ? -1 : 1, s2 = a2 ? -1 : 1, t1 = b1 ? -1 : 1, t2 = b2 ? -1 : 1;
                        mr.push_back({Rational(0), Rational(s1), Rational(s1 + s2)});
                        nr.push_back({Rational(0), Rational(t1), Rational(t1 + t2)});
                        names.push_back(std::to_string(names.size()));
                    }
        m = Process::from_rows(mr);
        n = Process::from_rows(nr);
        const std::vector<Process> both{m, n};
        space = natural_space(names, Vector(16, r("1/16")), both);
    }
};

}  // namespace

TEST(Span, Examples) {
    const Bin bin;
    const Process c = Process::constant(2, 1, Rational(4));
    EXPECT_EQ(integral_span(one(c), bin.space.filtration(), bin.space).dimension, 0u);
    const auto s = integral_span(one(bin.x), bin.space.filtration(), bin.space);
    EXPECT_EQ(s.dimension, 1u);
    EXPECT_EQ(s.basis_vectors.front(), RandomVariable(vec({"1", "-1/2"})));

    const Coin2 coin;
    const std::vector<Process> trip{coin.m, coin.n, quadratic_covariation(coin.m, coin.n)};
    const auto st = integral_span(trip, coin.space.filtration(), coin.space);
    EXPECT_EQ(st.dimension, 3u);
    EXPECT_EQ(st.basis_vectors[2], RandomVariable(vec({"1", "-1", "-1", "1"})));

    const Filtration trivial{Partition::trivial(2), Partition::trivial(2)};
    EXPECT_EQ(code_of([&] { integral_span(one(bin.x), trivial, bin.space); }), ErrorCode::NotAdapted);
}

TEST(Completeness, Examples) {
    const Bin bin;
    EXPECT_TRUE(is_complete(one(bin.x), bin.space.filtration(), bin.space, bin.space.measure()));
    const Tri tri;
    EXPECT_FALSE(is_complete(one(tri.x), tri.space.filtration(), tri.space, tri.space.measure()));
    const Coin2 coin;
    const std::vector<Process> trip{coin.m, coin.n, quadratic_covariation(coin.m, coin.n)};
    EXPECT_TRUE(is_complete(trip, coin.space.filtration(), coin.space, coin.space.measure()));

    // Sign vectors: 1, dM, dN, dM dN.
    const Vector ones = vec({"1", "1", "1", "1"}), dm = vec({"1", "1", "-1", "-1"}), dn = vec({"1", "-1", "1", "-1"}),
                 dmn = vec({"1", "-1", "-1", "1"});
    EXPECT_EQ(sign_rank({ones, dm, dn, dmn}, 4), 4u);
    EXPECT_EQ(sign_rank({ones, dm, dn}, 4), 3u);
}

TEST(Represent, Examples) {
    const Bin bin;
    const auto res = represent(bin.x.terminal(), one(bin.x), bin.space.filtration(), bin.space, bin.space.measure());
    EXPECT_TRUE(res.exact());
    EXPECT_TRUE(res.unique);
    EXPECT_EQ(res.constant, Rational(1));
    EXPECT_EQ(res.integrands.front(), Integrand::constant(2, 1, Rational(1)));
    EXPECT_EQ(reconstruct_path(res, one(bin.x), bin.space.filtration()), bin.x);

    const Coin2 coin;
    const RandomVariable h = coin.m.increment(1) * coin.n.increment(1);
    const std::vector<Process> pair{coin.m, coin.n};
    const auto r2 = represent(h, pair, coin.space.filtration(), coin.space, coin.space.measure());
    EXPECT_FALSE(r2.exact());
    EXPECT_EQ(r2.residual, h);

    const std::vector<Process> trip{coin.m, coin.n, quadratic_covariation(coin.m, coin.n)};
    const auto r3 = represent(h, trip, coin.space.filtration(), coin.space, coin.space.measure());
    EXPECT_TRUE(r3.exact());
    EXPECT_EQ(r3.constant, Rational(0));
    EXPECT_EQ(r3.integrands[2], Integrand::constant(4, 1, Rational(1)));
    EXPECT_EQ(r3.integrands[0], Integrand(4, 1));
}

TEST(Represent, MinimumNormWhenNotUnique) {
    const Bin bin;
    const std::vector<Process> twice{bin.x, bin.x};
    const auto res = represent(bin.x.terminal(), twice, bin.space.filtration(), bin.space, bin.space.measure());
    EXPECT_TRUE(res.exact());
    EXPECT_FALSE(res.unique);
    EXPECT_EQ(res.integrands[0], Integrand::constant(2, 1, r("1/2")));
    EXPECT_EQ(res.integrands[1], Integrand::constant(2, 1, r("1/2")));
}

TEST(OrthogonalDecomposition, Coin2) {
    const Coin2 coin;
    const auto rep = orthogonal_decomposition_report(coin.m, coin.n, coin.space, coin.space.measure());
    EXPECT_TRUE(rep.all_hold());
    EXPECT_EQ(rep.dim_m + rep.dim_n + rep.dim_covariation + 1, 4u);
    EXPECT_EQ(rep.dim_m, 1u);
}

TEST(OrthogonalDecomposition, TwoStepCoin2) {
    const Coin2x2 coin;
    const auto rep = orthogonal_decomposition_report(coin.m, coin.n, coin.space, coin.space.measure());
    EXPECT_TRUE(rep.all_hold());
    EXPECT_EQ(rep.outcome_dimension, 16u);
    EXPECT_EQ(rep.dim_m + rep.dim_n + rep.dim_covariation + 1, 16u);
}

TEST(OrthogonalDecomposition, RejectsEqualMartingales) {
    const Coin2 coin;
    EXPECT_EQ(code_of([&] { orthogonal_decomposition_report(coin.m, coin.m, coin.space, coin.space.measure()); }),
              ErrorCode::HypothesisViolated);
}

TEST(CovariationVanishing, Coin2) {
    const Coin2 coin;
    const auto rep = covariation_vanishing_report(coin.m, coin.n, coin.space, coin.space.measure());
    EXPECT_FALSE(rep.covariation_vanishes);
    EXPECT_FALSE(rep.pair_complete);
    EXPECT_TRUE(rep.biconditional_holds());
}

TEST(CovariationVanishing, StaggeredJumps) {
    // M moves at t = 1, N at t = 2.
    const Process m = rows({{"0", "1", "1"}, {"0", "1", "1"}, {"0", "-1", "-1"}, {"0", "-1", "-1"}});
    const Process n = rows({{"0", "0", "1"}, {"0", "0", "-1"}, {"0", "0", "1"}, {"0", "0", "-1"}});
    const std::vector<Process> both{m, n};
    const auto space = natural_space({"uu", "ud", "du", "dd"}, vec({"1/4", "1/4", "1/4", "1/4"}), both);
    const auto rep = covariation_vanishing_report(m, n, space, space.measure());
    EXPECT_TRUE(rep.covariation_vanishes);
    EXPECT_TRUE(rep.pair_complete);
    EXPECT_TRUE(rep.biconditional_holds());
}

TEST(CovariationVanishing, ConstantX) {
    const Bin bin("1/3");
    const Process c = Process::constant(2, 1, Rational(1));
    const auto rep = covariation_vanishing_report(c, bin.x, bin.space, bin.space.measure());
    EXPECT_TRUE(rep.covariation_vanishes);
    EXPECT_EQ(rep.pair_complete,
              is_complete(one(bin.x), bin.space.filtration(), bin.space, bin.space.measure()));
    EXPECT_TRUE(rep.biconditional_holds());
}

TEST(PrpInheritance, BinDrift) {
    const Bin drift("2/3");
    const auto rep = prp_inheritance_report(drift.x, drift.space);
    EXPECT_TRUE(rep.all_hold());
    EXPECT_EQ(rep.decomposition.martingale_part.terminal(), RandomVariable(vec({"1/2", "-1"})));
    EXPECT_EQ(rep.density.terminal(), RandomVariable(vec({"1/2", "2"})));
    EXPECT_EQ(rep.doleans_measure, Measure(vec({"1/3", "2/3"})));
}

TEST(PrpInheritance, MartingaleX) {
    const Bin fair("1/3");
    const auto rep = prp_inheritance_report(fair.x, fair.space);
    EXPECT_TRUE(rep.all_hold());
    EXPECT_EQ(rep.decomposition.martingale_part, fair.x - Process::constant(2, 1, Rational(1)));
    EXPECT_EQ(rep.doleans_measure, fair.space.measure());
}

TEST(PrpInheritance, TriWithDriftIsRejected) {
    const Process x = rows({{"1", "13/6"}, {"1", "7/6"}, {"1", "2/3"}});
    const auto space = natural_space({"u", "m", "d"}, vec({"1/3", "1/3", "1/3"}), one(x));
    EXPECT_EQ(code_of([&] { prp_inheritance_report(x, space); }), ErrorCode::HypothesisViolated);
}

TEST(Triplet, Prod2) {
    const Prod2 prod;
    const auto rep = triplet_representation_report(prod.x, prod.y, prod.space, prod.space.measure());
    EXPECT_TRUE(rep.all_hold());
    EXPECT_EQ(rep.product_measure, Measure(vec({"1/9", "2/9", "2/9", "4/9"})));
    EXPECT_EQ(rep.span_dimension_xy, 3u);
    EXPECT_EQ(rep.span_dimension_mn, 3u);
    EXPECT_EQ(rep.basis_size, 4u);
}

TEST(Triplet, RejectsEqualFactors) {
    const Prod2 prod;
    EXPECT_EQ(code_of([&] { triplet_representation_report(prod.x, prod.x, prod.space, prod.space.measure()); }),
              ErrorCode::HypothesisViolated);
}
