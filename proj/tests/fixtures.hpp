#pragma once

#include "prp/enlargement.hpp"
#include "prp/rational.hpp"
#include "prp/space.hpp"

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace prp {

inline void PrintTo(const Measure& m, std::ostream* os) {
    *os << "(";
    for (std::size_t i = 0; i < m.size(); ++i) *os << (i ? ", " : "") << to_string(m[i]);
    *os << ")";
}

inline void PrintTo(const RandomVariable& v, std::ostream* os) {
    *os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) *os << (i ? ", " : "") << to_string(v[i]);
    *os << ")";
}

}  // namespace prp

namespace prp::fixtures {

inline Rational r(const char* s) { return *parse_rational(s); }

inline Vector vec(std::initializer_list<const char*> xs) {
    Vector v;
    for (auto x : xs) v.push_back(r(x));
    return v;
}

inline Process rows(std::initializer_list<std::initializer_list<const char*>> rs) {
    std::vector<Vector> out;
    for (auto row : rs) out.push_back(vec(row));
    return Process::from_rows(out);
}

inline FiniteFilteredSpace natural_space(std::vector<std::string> outcomes, const Vector& p,
                                         std::span<const Process> processes) {
    const std::size_t horizon = processes.front().horizon();
    return build_space(std::move(outcomes), p, natural_filtration(processes), horizon);
}

/// One-step binomial 1 -> 2 or 1/2.
struct Bin {
    Process x = rows({{"1", "2"}, {"1", "1/2"}});
    FiniteFilteredSpace space;
    explicit Bin(const char* p_up = "1/2")
        : space(natural_space({"u", "d"}, {r(p_up), 1 - r(p_up)}, std::span<const Process>(&x, 1))) {}
};

/// One-step trinomial 1 -> 2, 1 or 1/2.
struct Tri {
    Process x = rows({{"1", "2"}, {"1", "1"}, {"1", "1/2"}});
    FiniteFilteredSpace space = natural_space({"u", "m", "d"}, vec({"1/3", "1/3", "1/3"}), std::span<const Process>(&x, 1));
};

/// Two fair coins; M and N are the signs of the first and second coin.
struct Coin2 {
    Process m = rows({{"0", "1"}, {"0", "1"}, {"0", "-1"}, {"0", "-1"}});
    Process n = rows({{"0", "1"}, {"0", "-1"}, {"0", "1"}, {"0", "-1"}});
    FiniteFilteredSpace space;
    Coin2() {
        const std::vector<Process> both{m, n};
        space = natural_space({"uu", "ud", "du", "dd"}, vec({"1/4", "1/4", "1/4", "1/4"}), both);
    }
};

/// Two independent drifted binomials (up probability 2/3 on each coin).
struct Prod2 {
    Process x = rows({{"1", "2"}, {"1", "2"}, {"1", "1/2"}, {"1", "1/2"}});
    Process y = rows({{"1", "2"}, {"1", "1/2"}, {"1", "2"}, {"1", "1/2"}});
    FiniteFilteredSpace space;
    Prod2() {
        const std::vector<Process> both{x, y};
        space = natural_space({"uu", "ud", "du", "dd"}, vec({"4/9", "2/9", "2/9", "1/9"}), both);
    }
};

/// Two-step multiplicative coin (u = 2, d = 1/2) and an independent time uniform on {1, 2}.
struct Tau {
    Process x;
    RandomTime tau;
    FiniteFilteredSpace space;
    Filtration f, g;
    Tau() {
        std::vector<std::string> names;
        std::vector<Vector> xr;
        std::vector<std::size_t> tv;
        for (int c1 = 0; c1 < 2; ++c1)
            for (int c2 = 0; c2 < 2; ++c2)
                for (int t = 1; t <= 2; ++t) {
                    names.push_back(std::string(c1 ? "d" : "u") + (c2 ? "d" : "u") + std::to_string(t));
                    const Rational x1 = c1 ? r("1/2") : r("2");
                    const Rational x2 = x1 * (c2 ? r("1/2") : r("2"));
                    xr.push_back({Rational(1), x1, x2});
                    tv.push_back(static_cast<std::size_t>(t));
                }
        x = Process::from_rows(xr);
        tau = RandomTime(tv, 2);
        f = natural_filtration(std::span<const Process>(&x, 1));
        g = progressive_enlargement(f, tau);
        space = build_space(names, Vector(8, r("1/8")), f, 2);
    }
};

}  // namespace prp::fixtures
