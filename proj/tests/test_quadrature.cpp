#include <doctest.h>

#include "sqzprm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace sqzprm;

// Reference values below were evaluated independently of this library
// (10^x and 10 log10 x with a separate calculator) and frozen.

TEST_CASE("db_to_linear reference values")
{
    CHECK(db_to_linear({0.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(db_to_linear({-3.5}) == doctest::Approx(0.44668359215096315).epsilon(1e-12));
    CHECK(db_to_linear({3.0}) == doctest::Approx(1.9952623149688795).epsilon(1e-12));
}

TEST_CASE("linear_to_db reference values and domain")
{
    CHECK(linear_to_db(1.0).value == doctest::Approx(0.0));
    CHECK(linear_to_db(0.5).value == doctest::Approx(-3.010299956639812).epsilon(1e-12));
    CHECK(linear_to_db(4.0).value == doctest::Approx(6.020599913279624).epsilon(1e-12));
    CHECK_THROWS_AS(linear_to_db(0.0), std::domain_error);
    CHECK_THROWS_AS(linear_to_db(-1.0), std::domain_error);
}

TEST_CASE("dB round trip over [-20, 20]")
{
    for (double x = -20.0; x <= 20.0; x += 0.125)
        CHECK(linear_to_db(db_to_linear({x})).value == doctest::Approx(x).epsilon(1e-12).scale(1.0));
}

TEST_CASE("covariance construction enforces Heisenberg bound")
{
    CHECK_NOTHROW(QuadratureCovariance(0.5, 2.0, 0.0));
    CHECK_NOTHROW(QuadratureCovariance(2.0, 2.0, 1.5));
    CHECK_THROWS_AS(QuadratureCovariance(0.5, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(QuadratureCovariance(1.0, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(QuadratureCovariance(-1.0, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("apply_loss examples")
{
    SUBCASE("vacuum is loss invariant")
    {
        for (double eta : {0.0, 0.3, 0.85, 1.0}) {
            const auto out = apply_loss(QuadratureCovariance::vacuum(), eta);
            CHECK(out.v_plus() == doctest::Approx(1.0));
            CHECK(out.v_minus() == doctest::Approx(1.0));
            CHECK(out.correlation() == doctest::Approx(0.0));
        }
    }
    SUBCASE("3.5 dB through a 15% double-pass loss")
    {
        const auto state = make_squeezed({3.5, 0.0});
        const auto out = apply_loss(state, 0.85);
        CHECK(out.v_plus() == doctest::Approx(0.5296810533283186).epsilon(1e-12));
        CHECK(linear_to_db(out.v_plus()).value == doctest::Approx(-2.76).epsilon(0.01));
    }
    SUBCASE("unit efficiency is the identity")
    {
        const QuadratureCovariance state(0.7, 3.0, 0.4);
        const auto out = apply_loss(state, 1.0);
        CHECK(out == state);
    }
    SUBCASE("efficiency outside [0, 1] is rejected")
    {
        CHECK_THROWS_AS(apply_loss(QuadratureCovariance::vacuum(), -0.01), std::invalid_argument);
        CHECK_THROWS_AS(apply_loss(QuadratureCovariance::vacuum(), 1.01), std::invalid_argument);
        CHECK_THROWS_AS(apply_loss(0.5, std::nan("")), std::invalid_argument);
    }
}

TEST_CASE("remove_loss inverts the scalar loss channel")
{
    for (double v : {0.2, 0.45, 1.0, 3.0})
        for (double eta : {0.3, 0.9115, 1.0})
            CHECK(remove_loss(apply_loss(v, eta), eta) == doctest::Approx(v).epsilon(1e-12));
    CHECK_THROWS_AS(remove_loss(0.05, 0.9), std::domain_error);
    CHECK_THROWS_AS(remove_loss(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("make_squeezed examples")
{
    const auto vac = make_squeezed({0.0, 0.0});
    CHECK(vac.v_plus() == doctest::Approx(1.0));
    CHECK(vac.v_minus() == doctest::Approx(1.0));

    const auto sq = make_squeezed({3.0, 0.0});
    CHECK(sq.v_plus() == doctest::Approx(0.5011872336272722).epsilon(1e-12));
    CHECK(sq.v_minus() == doctest::Approx(1.9952623149688795).epsilon(1e-12));
    CHECK(sq.correlation() == doctest::Approx(0.0));
    CHECK(sq.determinant() == doctest::Approx(1.0).epsilon(1e-12));

    const auto swapped = make_squeezed({3.0, std::numbers::pi / 2.0});
    CHECK(swapped.v_plus() == doctest::Approx(1.9952623149688795).epsilon(1e-12));
    CHECK(swapped.v_minus() == doctest::Approx(0.5011872336272722).epsilon(1e-12));
    CHECK(std::abs(swapped.correlation()) < 1e-12);

    CHECK_THROWS_AS(make_squeezed({-0.1, 0.0}), std::invalid_argument);
}

TEST_CASE("rotated squeezed states stay pure")
{
    for (double angle = 0.0; angle < std::numbers::pi; angle += 0.1) {
        const auto s = make_squeezed({6.0, angle});
        CHECK(s.determinant() == doctest::Approx(1.0).epsilon(1e-12));
        // The squeezed quadrature sits at the requested angle.
        CHECK(measured_variance(s, angle) == doctest::Approx(db_to_linear({-6.0})).epsilon(1e-12));
    }
}

TEST_CASE("measured_variance examples")
{
    for (double theta : {0.0, 0.4, 1.3, 2.9})
        CHECK(measured_variance(QuadratureCovariance::vacuum(), theta) == doctest::Approx(1.0));
    const auto sq = make_squeezed({3.0, 0.0});
    CHECK(measured_variance(sq, 0.0) == doctest::Approx(0.5011872336272722).epsilon(1e-12));
    CHECK(measured_variance(sq, std::numbers::pi / 4.0) == doctest::Approx(1.2482247742980759).epsilon(1e-12));
}

TEST_CASE("loss moves variance monotonically toward vacuum")
{
    for (double v = 0.05; v <= 4.0; v += 0.05) {
        double previous = v;
        for (double eta = 1.0; eta >= 0.0; eta -= 0.05) {
            const double out = apply_loss(v, std::max(eta, 0.0));
            if (std::abs(v - 1.0) < 1e-9) {
                CHECK(out == doctest::Approx(1.0));
                continue;
            }
            // Distance to 1 shrinks as efficiency falls.
            CHECK(std::abs(out - 1.0) <= std::abs(previous - 1.0) + 1e-15);
            if (eta < 1.0)
                CHECK(std::abs(out - 1.0) < std::abs(v - 1.0));
            previous = out;
        }
    }
}

TEST_CASE("loss preserves the Heisenberg bound and composes")
{
    std::mt19937_64 rng(20021);
    std::uniform_real_distribution<double> db(0.0, 15.0);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> excess(1.0, 3.0);

    for (int i = 0; i < 500; ++i) {
        // Squeezed state with extra thermal spread: det >= 1.
        const auto pure = make_squeezed({db(rng), angle(rng)});
        const double k = excess(rng);
        const QuadratureCovariance state(k * pure.v_plus(), k * pure.v_minus(), k * pure.correlation());
        REQUIRE(state.determinant() >= 1.0);

        const double eta1 = unit(rng);
        const double eta2 = unit(rng);
        const auto once = apply_loss(state, eta1);
        CHECK(once.determinant() >= 1.0 - 1e-12);

        const auto twice = apply_loss(once, eta2);
        const auto combined = apply_loss(state, eta1 * eta2);
        CHECK(twice.v_plus() == doctest::Approx(combined.v_plus()).epsilon(1e-12));
        CHECK(twice.v_minus() == doctest::Approx(combined.v_minus()).epsilon(1e-12));
        CHECK(twice.correlation() == doctest::Approx(combined.correlation()).epsilon(1e-12).scale(1.0));
    }
}
