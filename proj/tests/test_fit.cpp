#include <catch2/catch_amalgamated.hpp>

#include "nodal/universal_fit.hpp"

using namespace nodal;

TEST_CASE("monomial basis sizes and order") {
    CHECK(MonomialBasis(0).size() == 1);
    CHECK(MonomialBasis(1).size() == 5);
    CHECK(MonomialBasis(2).size() == 15);
    CHECK(MonomialBasis(4).size() == 70);
    CHECK(MonomialBasis(1).exponents[0] == std::array<int, 4>{0, 0, 0, 0});
    CHECK(MonomialBasis(1).exponents[1] == std::array<int, 4>{1, 0, 0, 0});
    CHECK(MonomialBasis(1).exponents[4] == std::array<int, 4>{0, 0, 0, 1});
}

TEST_CASE("echelon rank of an explicit degree-1 system") {
    // Five affinely independent Chern tuples span the degree-1 basis;
    // varying the genus and the component count avoids the accidental
    // relations low-genus singles all satisfy.
    std::vector<ChernTuple> tuples = {
        make_p2(1).chern(), make_p2(3).chern(), make_p1xp1(1, 1).chern(),
        make_p1xp1(2, 2).chern(),
        (SurfaceInstance({make_p2(1), make_p2(1)}, "u").chern())};
    MonomialBasis basis(1);
    ExactEchelon ech(basis.size());
    for (const auto& c : tuples) {
        std::vector<Rational> row;
        for (const auto& e : basis.exponents) row.push_back(MonomialBasis::value(e, c));
        ech.add_row(std::move(row), Rational(0));
    }
    CHECK(ech.rank() == 5);
}

TEST_CASE("echelon detects inconsistency and redundancy") {
    ExactEchelon ech(2);
    CHECK(ech.add_row({Rational(1), Rational(1)}, Rational(3)) ==
          ExactEchelon::RowFate::independent);
    CHECK(ech.add_row({Rational(2), Rational(2)}, Rational(6)) ==
          ExactEchelon::RowFate::redundant);
    CHECK(ech.add_row({Rational(2), Rational(2)}, Rational(5)) ==
          ExactEchelon::RowFate::inconsistent);
    CHECK(ech.add_row({Rational(1), Rational(0)}, Rational(1)) ==
          ExactEchelon::RowFate::independent);
    auto x = ech.solve();
    CHECK(x[0] == Rational(1));
    CHECK(x[1] == Rational(2));
}

TEST_CASE("degree-0 fit returns the constant delta+1") {
    Localizer loc;
    auto lib = generator_library(0);
    for (int delta = 0; delta <= 2; ++delta) {
        FitResult fit = fit_universal(0, delta, lib, loc);
        CHECK(fit.polynomial == MultiPoly(delta + 1));
    }
}

TEST_CASE("degree-1 fit recovers e(universal curve) = x + t for a pencil") {
    Localizer loc;
    FitResult fit = fit_universal(1, 1, generator_library(1), loc);
    CHECK(fit.polynomial == var_x() + var_t());
    CHECK(fit.rank == 5);
    CHECK(fit.residual_check.size() >= 5);
    for (const auto& [name, ok] : fit.residual_check) CHECK(ok);
}

TEST_CASE("t^i coefficient of the fitted polynomials is (delta-i+1)/i!") {
    Localizer loc;
    auto lib = generator_library(2);
    for (int delta = 0; delta <= 2; ++delta) {
        for (int i = 0; i <= delta; ++i) {
            FitResult fit = fit_universal(i, delta, lib, loc);
            Rational expected(BigInt(delta - i + 1), factorial(static_cast<unsigned>(i)));
            CHECK(fit.polynomial.coefficient_of_power(Var::t, static_cast<uint32_t>(i)) ==
                  expected);
            CHECK(fit.polynomial.total_degree() <= i);
        }
    }
}

TEST_CASE("full degree-4 rank is reachable with the built-in library") {
    MonomialBasis basis(4);
    auto rank_of = [&](const std::vector<SurfaceInstance>& lib) {
        ExactEchelon ech(basis.size());
        for (const auto& inst : lib) {
            if (ech.full_rank()) break;
            std::vector<Rational> row;
            ChernTuple c = inst.chern();
            for (const auto& e : basis.exponents) row.push_back(MonomialBasis::value(e, c));
            ech.add_row(std::move(row), Rational(0));
        }
        return ech.rank();
    };
    CHECK(rank_of(generator_library(4)) == 70);
    auto [a, b] = generator_library_split(4);
    CHECK(rank_of(a) == 70);
    CHECK(rank_of(b) == 70);
}

TEST_CASE("singles-only libraries are rank deficient from degree 2 on") {
    // All connected rational toric surfaces satisfy z + t = 12, so the
    // degree-2 monomials are confounded.
    std::vector<SurfaceInstance> singles;
    for (const auto& s : generator_components()) singles.emplace_back(s);
    MonomialBasis basis(2);
    ExactEchelon ech(basis.size());
    for (const auto& inst : singles) {
        std::vector<Rational> row;
        ChernTuple c = inst.chern();
        for (const auto& e : basis.exponents) row.push_back(MonomialBasis::value(e, c));
        ech.add_row(std::move(row), Rational(0));
    }
    CHECK(ech.rank() < basis.size());

    Localizer loc;
    FitReport rep = fit_report(2, 2, singles, loc);
    CHECK_FALSE(rep.full_rank);
    CHECK(rep.status != "ok");
}

TEST_CASE("duplicate instances are deduplicated") {
    Localizer loc;
    auto lib = generator_library(1);
    auto doubled = lib;
    doubled.insert(doubled.end(), lib.begin(), lib.end());
    FitResult a = fit_universal(1, 1, lib, loc);
    FitResult b = fit_universal(1, 1, doubled, loc);
    CHECK(a.polynomial == b.polynomial);
    CHECK(a.rank == b.rank);
    CHECK(a.residual_check.size() == b.residual_check.size());
}

TEST_CASE("tiny library raises insufficient generators") {
    Localizer loc;
    std::vector<SurfaceInstance> tiny = {SurfaceInstance(make_p2(1)),
                                         SurfaceInstance(make_p2(2))};
    CHECK_THROWS_AS(fit_universal(1, 1, tiny, loc), insufficient_generators_error);
}

TEST_CASE("fit stability: disjoint component libraries agree") {
    Localizer loc;
    auto [a, b] = generator_library_split(2);
    for (int delta = 1; delta <= 2; ++delta) {
        for (int i = 0; i <= delta; ++i) {
            FitResult fa = fit_universal(i, delta, a, loc);
            FitResult fb = fit_universal(i, delta, b, loc);
            CHECK(fa.polynomial == fb.polynomial);
        }
    }
}

TEST_CASE("fit report carries diagnostics") {
    Localizer loc;
    FitReport rep = fit_report(1, 1, generator_library(1), loc);
    CHECK(rep.status == "ok");
    CHECK(rep.full_rank);
    CHECK(rep.rank == 5);
    CHECK(rep.basis_size == 5);
    CHECK(rep.instances_used.size() == 5);
    CHECK(rep.pivot_bits.size() == 5);
    CHECK(rep.residual_check.size() >= 5);
}
