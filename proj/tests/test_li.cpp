#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "beurling/li.hpp"
#include "oracles.hpp"

using beurling::LiEvaluator;

TEST_CASE("li at the lower limit") {
    LiEvaluator li;
    CHECK(std::abs(li.li(2.0)) <= 1e-15);
}

TEST_CASE("li(10) against the adaptive quadrature oracle") {
    LiEvaluator li;
    // oracle: 5.1204357247 by adaptive Simpson on int_2^10 dt/log t
    CHECK(li.li(10.0) == doctest::Approx(oracles::li_quadrature(10.0)).epsilon(1e-10));
    CHECK(li.li(10.0) == doctest::Approx(5.1204357247).epsilon(1e-9));
}

TEST_CASE("li matches quadrature on a log-spaced grid") {
    LiEvaluator li;
    for (double x : {2.5, 3.0, 7.0, 50.0, 1e3, 1e5, 1e7})
        CHECK(li.li(x) == doctest::Approx(oracles::li_quadrature(x)).epsilon(1e-9));
}

TEST_CASE("li monotone") {
    LiEvaluator li;
    CHECK(li.li(100.0) > li.li(10.0));
}

TEST_CASE("li domain") {
    LiEvaluator li;
    CHECK_THROWS_AS((void)li.li(1.5), std::domain_error);
}

TEST_CASE("li_inverse round trips") {
    LiEvaluator li;
    CHECK(li.li_inverse(0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(li.li(li.li_inverse(7.0)) == doctest::Approx(7.0).epsilon(1e-10));
    CHECK(li.li_inverse(5.1204357247) == doctest::Approx(10.0).epsilon(1e-6));
    for (double y : {0.5, 1.0, 13.0, 400.0, 1e5})
        CHECK(li.li(li.li_inverse(y)) == doctest::Approx(y).epsilon(1e-10));
}
