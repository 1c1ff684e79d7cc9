#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "beurling/gprime_system.hpp"
#include "beurling/li.hpp"
#include "oracles.hpp"

using namespace beurling;

TEST_CASE("rational sieve small cutoffs") {
    GPrimeSystem s = gen_rational_primes(10.0);
    REQUIRE(s.primes.size() == 4);
    CHECK(s.primes[0].value == 2.0);
    CHECK(s.primes[1].value == 3.0);
    CHECK(s.primes[2].value == 5.0);
    CHECK(s.primes[3].value == 7.0);

    GPrimeSystem t = gen_rational_primes(2.0);
    REQUIRE(t.primes.size() == 1);
    CHECK(t.primes[0].value == 2.0);
}

TEST_CASE("rational sieve against trial division") {
    GPrimeSystem s = gen_rational_primes(100.0);
    CHECK(static_cast<long long>(s.primes.size()) == oracles::prime_count(100.0));
    CHECK(s.primes.size() == 25);
    for (double x : {10.0, 31.0, 97.5, 100.0})
        CHECK(s.pi_count(x) == oracles::prime_count(x));
}

TEST_CASE("pi_count basics") {
    GPrimeSystem s = gen_rational_primes(100.0);
    CHECK(s.pi_count(10.0) == 4);
    CHECK(s.pi_count(1.5) == 0);
    CHECK_THROWS_AS((void)s.pi_count(101.0), std::out_of_range);
}

TEST_CASE("li_inverse system saturates pi = Li + O(1)") {
    const int count = 200;
    GPrimeSystem s = gen_li_inverse_system(count);
    LiEvaluator li;
    REQUIRE(s.primes.size() == count);
    CHECK(li.li(s.primes[0].value) == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t j = 1; j < s.primes.size(); ++j)
        CHECK(s.primes[j].value > s.primes[j - 1].value);
    // unit steps at Li-preimages of the integers: |pi(x) - Li(x)| <= 1
    for (double x = s.primes[0].value; x <= s.primes.back().value; x *= 1.37)
        CHECK(std::abs(static_cast<double>(s.pi_count(x)) - li.li(x)) <= 1.0 + 1e-9);
}

TEST_CASE("jittered system determinism and limits") {
    GPrimeSystem a = gen_jittered_system(150, 0.5, 7);
    GPrimeSystem b = gen_jittered_system(150, 0.5, 7);
    REQUIRE(a.primes.size() == b.primes.size());
    for (std::size_t i = 0; i < a.primes.size(); ++i)
        CHECK(a.primes[i].value == b.primes[i].value);

    GPrimeSystem zero = gen_jittered_system(150, 0.5, 7, 0.0);
    GPrimeSystem plain = gen_li_inverse_system(150);
    for (std::size_t i = 0; i < zero.primes.size(); ++i)
        CHECK(zero.primes[i].value == doctest::Approx(plain.primes[i].value).epsilon(1e-14));
}

TEST_CASE("jittered residual exponent stays near alpha") {
    const double alpha = 0.5;
    GPrimeSystem s = gen_jittered_system(4000, alpha, 11);
    LiEvaluator li;
    // log-log regression of |pi - Li| against x; jitter keeps the residual
    // O(1), so the fitted exponent must not exceed alpha meaningfully
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double x = 20.0; x <= s.xmax; x *= 1.5) {
        double r = std::abs(static_cast<double>(s.pi_count(x)) - li.li(x));
        if (r < 1e-6) continue;
        double lx = std::log(x), lr = std::log(r);
        sx += lx; sy += lr; sxx += lx * lx; sxy += lx * lr;
        ++n;
    }
    REQUIRE(n > 5);
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope <= alpha + 0.1);
}

TEST_CASE("json round trip is exact") {
    GPrimeSystem s = gen_jittered_system(60, 0.4, 3);
    GPrimeSystem r = system_from_json(to_json(s));
    REQUIRE(r.primes.size() == s.primes.size());
    for (std::size_t i = 0; i < s.primes.size(); ++i) {
        CHECK(r.primes[i].value == s.primes[i].value);  // 17 sig digits round trip
        CHECK(r.primes[i].multiplicity == s.primes[i].multiplicity);
    }
    CHECK(r.kind == s.kind);
    CHECK(r.xmax == s.xmax);
    CHECK(r.seed == s.seed);
    CHECK(r.fingerprint() == s.fingerprint());
}
