#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nodal/bps.hpp"

using namespace nodal;

namespace {

MultiPoly random_chern_poly(std::mt19937_64& rng, int max_total_degree) {
    MultiPoly p;
    int nterms = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < nterms; ++i) {
        Exponents e{};
        int budget = max_total_degree;
        for (unsigned v = 0; v < 4; ++v) {  // x,y,z,t only
            int d = budget > 0 ? static_cast<int>(rng() % (budget + 1)) : 0;
            e[v] = static_cast<uint32_t>(d);
            budget -= d;
        }
        long long num = static_cast<long long>(rng() % 19) - 9;
        long long den = 1 + static_cast<long long>(rng() % 4);
        p += MultiPoly::monomial(e, Rational(num, den));
    }
    return p;
}

} // namespace

TEST_CASE("sym_euler closed form") {
    CHECK(sym_euler(0, var_g()) == MultiPoly(1));
    CHECK(sym_euler(0, MultiPoly(5)) == MultiPoly(1));
    // e(Sym^1 of genus g) = 2 - 2g
    CHECK(sym_euler(1, var_g()) == MultiPoly(2) - MultiPoly(2) * var_g());
    // Sym^2 of a rational curve is the projective plane
    CHECK(sym_euler(2, MultiPoly(0)) == MultiPoly(3));
    CHECK(sym_euler(-1, var_g()).is_zero());
}

TEST_CASE("sym_euler matches the series expansion route") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int gval = static_cast<int>(rng() % 13) - 6;
        MultiPoly genus(gval);
        auto series = one_minus_q_pow(MultiPoly(2 * gval - 2), 6);
        for (int k = 0; k <= 6; ++k)
            CHECK(sym_euler(k, genus) == series.coefficient(static_cast<std::size_t>(k)));
    }
}

TEST_CASE("bps_transform of a smooth curve has only the top entry") {
    std::vector<MultiPoly> e;
    for (int k = 0; k <= 3; ++k) e.push_back(sym_euler(k, var_g()));
    BPSSpectrum sp = bps_transform(EulerSeries(3, var_g(), e));
    CHECK(sp.entry(0) == MultiPoly(1));
    CHECK(sp.entry(1).is_zero());
    CHECK(sp.entry(2).is_zero());
    CHECK(sp.entry(3).is_zero());
}

TEST_CASE("bps_transform of the 2-nodal model gives (1,2,1)") {
    auto e = nodal_model_series(var_g(), 2, 2);
    BPSSpectrum sp = bps_transform(EulerSeries(2, var_g(), e));
    CHECK(sp.entry(0) == MultiPoly(1));
    CHECK(sp.entry(1) == MultiPoly(2));
    CHECK(sp.entry(2) == MultiPoly(1));
}

TEST_CASE("bps_transform detects one node on a genus 2 curve") {
    // e(C) = 2 - 2g + 1 = -1 for a 1-nodal arithmetic genus 2 curve
    std::vector<MultiPoly> e = {MultiPoly(1), MultiPoly(-1)};
    BPSSpectrum sp = bps_transform(EulerSeries(1, MultiPoly(2), e));
    CHECK(sp.entry(0) == MultiPoly(1));
    CHECK(sp.entry(1) == MultiPoly(1));
}

TEST_CASE("nodal model series low coefficients") {
    auto e = nodal_model_series(var_g(), 4, 1);
    CHECK(e[0] == MultiPoly(1));
    // e(C^[1]) = e(C) = (2-2g) + delta
    CHECK(e[1] == MultiPoly(2) - MultiPoly(2) * var_g() + MultiPoly(4));
}

TEST_CASE("binomial law: nodal model inverts to binomial spectrum for delta <= 6") {
    for (int delta = 0; delta <= 6; ++delta) {
        auto e = nodal_model_series(var_g(), delta, delta);
        BPSSpectrum sp = bps_transform(EulerSeries(delta, var_g(), e));
        for (int s = 0; s <= delta; ++s) {
            MultiPoly expected{Rational(binomial(BigInt(delta), static_cast<unsigned>(s)))};
            CHECK(sp.entry(s) == expected);
        }
        CHECK(sp.entry(delta) == MultiPoly(1));
    }
}

TEST_CASE("triangularity: n_{g-s} only depends on e_0..e_s") {
    std::mt19937_64 rng(37);
    const int delta = 4;
    std::vector<MultiPoly> e;
    for (int k = 0; k <= delta; ++k) e.push_back(random_chern_poly(rng, k));
    BPSSpectrum base = bps_transform(EulerSeries(delta, var_g(), e));
    for (int s = 0; s < delta; ++s) {
        auto perturbed = e;
        for (int k = s + 1; k <= delta; ++k)
            perturbed[static_cast<std::size_t>(k)] += random_chern_poly(rng, 2);
        BPSSpectrum sp = bps_transform(EulerSeries(delta, var_g(), perturbed));
        for (int s2 = 0; s2 <= s; ++s2) CHECK(sp.entry(s2) == base.entry(s2));
    }
}

TEST_CASE("uniqueness: re-expansion of the spectrum reproduces the input") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        int delta = static_cast<int>(rng() % 5);
        std::vector<MultiPoly> e;
        for (int k = 0; k <= delta; ++k) e.push_back(random_chern_poly(rng, k));
        BPSSpectrum sp = bps_transform(EulerSeries(delta, var_g(), e));
        auto back = spectrum_to_euler(sp, var_g(), static_cast<std::size_t>(delta));
        for (int k = 0; k <= delta; ++k)
            CHECK(back[static_cast<std::size_t>(k)] == e[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("extract_node_count: trivial and pencil cases") {
    // delta = 0: a single general curve, counted once
    EulerSeries trivial(0, var_g(), {MultiPoly(1)});
    CHECK(extract_node_count(trivial, 0) == MultiPoly(1));

    // delta = 1 with e_0 = 2, e_1 = x + t gives the classical 3x + 2y + t
    EulerSeries pencil(1, var_g(), {MultiPoly(2), var_x() + var_t()});
    MultiPoly n1 = extract_node_count(pencil, 1);
    CHECK(n1 == MultiPoly(3) * var_x() + MultiPoly(2) * var_y() + var_t());

    // genus must be symbolic
    EulerSeries concrete(1, MultiPoly(2), {MultiPoly(2), var_x() + var_t()});
    CHECK_THROWS_AS(extract_node_count(concrete, 1), usage_error);
}

TEST_CASE("extract_node_count matches a stratified family oracle") {
    // Synthetic 2-dimensional system stratified by curve type: strata of
    // Euler characteristics -5 (smooth members), 5 (1-nodal), 3 (2-nodal);
    // they must sum to e(P^2) = 3. Fibrewise,
    //   e_k = -5 sym_euler(k, g) + 5 model1_k + 3 model2_k.
    auto model1 = nodal_model_series(var_g(), 1, 2);
    auto model2 = nodal_model_series(var_g(), 2, 2);
    std::vector<MultiPoly> e;
    for (int k = 0; k <= 2; ++k) {
        e.push_back(sym_euler(k, var_g()) * Rational(-5) +
                    model1[static_cast<std::size_t>(k)] * Rational(5) +
                    model2[static_cast<std::size_t>(k)] * Rational(3));
    }
    BPSSpectrum sp = bps_transform(EulerSeries(2, var_g(), e));
    // n_g counts the parameter space, n_{g-1} the nodes in strata, and the
    // bottom entry counts the 2-nodal members only.
    CHECK(sp.entry(0) == MultiPoly(3));
    CHECK(sp.entry(1) == MultiPoly(11));
    CHECK(sp.entry(2) == MultiPoly(3));
    CHECK(extract_node_count(EulerSeries(2, var_g(), e), 2) == MultiPoly(3));
}

TEST_CASE("degree bound after genus substitution") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 25; ++trial) {
        int delta = 1 + static_cast<int>(rng() % 4);
        std::vector<MultiPoly> e;
        for (int k = 0; k <= delta; ++k) e.push_back(random_chern_poly(rng, k));
        MultiPoly n = extract_node_count(EulerSeries(delta, var_g(), e), delta);
        CHECK(n.total_degree() <= delta);
        CHECK(n.degree_in(Var::g) <= 0);
    }
}

TEST_CASE("negative and non-integral genus are accepted") {
    std::vector<MultiPoly> e = {MultiPoly(1), MultiPoly(7)};
    BPSSpectrum sp = bps_transform(EulerSeries(1, MultiPoly(-3), e));
    // n_{g-1} = e_1 - (2-2g) e_0 = 7 - 8 = -1
    CHECK(sp.entry(1) == MultiPoly(-1));

    BPSSpectrum sp2 = bps_transform(EulerSeries(1, MultiPoly(Rational(1, 2)), e));
    CHECK(sp2.entry(1) == MultiPoly(6));
}
