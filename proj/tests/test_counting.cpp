#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "beurling/counting.hpp"
#include "beurling/series.hpp"
#include "oracles.hpp"

using namespace beurling;

TEST_CASE("counting function of the rational d-series") {
    GPrimeSystem sys = gen_rational_primes(100.0);
    CoefficientSeries d = expand_integers(sys, 100.0);
    CountingFunction A(d);
    CHECK(A(10.5) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(A(0.5) == 0.0);
    CHECK(A(100.0) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)A(101.0), std::out_of_range);
}

TEST_CASE("counting function of the rational e-series is the Mertens function") {
    GPrimeSystem sys = gen_rational_primes(1000.0);
    CoefficientSeries e = expand_reciprocal(sys, 1000.0);
    CountingFunction E(e);
    for (long long n : {10LL, 50LL, 100LL, 999LL})
        CHECK(E(static_cast<double>(n) + 0.5) ==
              doctest::Approx(static_cast<double>(oracles::mobius_prefix(n))).epsilon(1e-12));
    CHECK(E(10.0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("density fit on the rational d-series") {
    GPrimeSystem sys = gen_rational_primes(1e6);
    CoefficientSeries d = expand_integers(sys, 1e6);
    CountingFunction A(d);
    double rho = fit_density(A, 1e3, 1e6);
    CHECK(rho == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("density of an e-series vanishes") {
    GPrimeSystem sys = gen_rational_primes(200.0);
    CoefficientSeries e = expand_reciprocal(sys, 1e6);
    CountingFunction E(e);
    double rho = fit_density(E, 1e3, 1e6);
    CHECK(std::abs(rho) < 5e-3);
}

TEST_CASE("endpoint fit of the unit series") {
    CoefficientSeries s;
    s.entries = {{0.0, 1.0, 1.0}};
    s.xmax = 50.0;
    CountingFunction A(s);
    CHECK(fit_density(A, 3.0, 50.0, FitMethod::endpoint) ==
          doctest::Approx(1.0 / 50.0).epsilon(1e-14));
}

TEST_CASE("residual report on the rational d-series") {
    GPrimeSystem sys = gen_rational_primes(1e5);
    CoefficientSeries d = expand_integers(sys, 1e5);
    CountingFunction A(d);
    auto rep = residual_report(A, 1.0, 0.25, 1.0, 20.0, 1e5);
    REQUIRE(rep.grid.size() == 200);
    REQUIRE(rep.residuals.size() == rep.grid.size());
    REQUIRE(rep.normalized_log.size() == rep.grid.size());
    REQUIRE(rep.normalized_expsqrt.size() == rep.grid.size());
    // A(x) = floor(x), so R = floor(x) - x is always in [-1, 0]
    for (double r : rep.residuals) {
        CHECK(r >= -1.0);
        CHECK(r <= 0.0);
    }
    CHECK(rep.sup_normalized < 0.5);  // |R| <= 1 and (log x)^{1.75}/x < 0.4 at x >= 20
    CHECK(std::isfinite(rep.best_fit_c));

    auto csv = residual_report_to_csv(rep);
    CHECK(csv.find("x,R,normalized_log_power,normalized_exp_sqrt") != std::string::npos);
}

TEST_CASE("residual normalization shrinks as the window grows") {
    GPrimeSystem sys = gen_li_inverse_system(4000);
    CoefficientSeries d = expand_integers(sys, sys.xmax);
    CountingFunction A(d);
    double rho = fit_density(A, 30.0, sys.xmax);
    auto narrow = residual_report(A, rho, 0.25, 1.0, 20.0, sys.xmax / 16.0);
    auto wide = residual_report(A, rho, 0.25, 1.0, 20.0, sys.xmax);
    CHECK(std::isfinite(narrow.sup_normalized));
    CHECK(std::isfinite(wide.sup_normalized));
    CHECK(wide.sup_normalized <= narrow.sup_normalized * 1.5 + 0.5);
}
