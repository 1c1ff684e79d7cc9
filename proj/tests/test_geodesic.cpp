#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "beurling/geodesic.hpp"
#include "beurling/li.hpp"
#include "oracles.hpp"

using namespace beurling;
using boost::multiprecision::cpp_int;

TEST_CASE("reduced forms of D=5") {
    ReducedFormSet set = reduced_forms(5);
    REQUIRE(set.forms.size() == 2);  // (1,1,-1) and (-1,1,1)
    CHECK(set.cycles.size() == 1);
    for (const auto& f : set.forms) {
        CHECK(f.b * f.b - 4 * f.a * f.c == 5);
        CHECK(f.b == 1);
        CHECK(std::abs(f.a) == 1);
    }
}

TEST_CASE("class numbers from cycle counts") {
    CHECK(class_number(5) == 1);
    CHECK(class_number(12) == 2);  // four reduced forms in two cycles
    CHECK(class_number(21) == 2);
    ReducedFormSet set12 = reduced_forms(12);
    CHECK(set12.forms.size() == 4);
}

TEST_CASE("reduced_forms rejects bad discriminants") {
    CHECK_THROWS_AS((void)reduced_forms(7), std::domain_error);   // 3 mod 4
    CHECK_THROWS_AS((void)reduced_forms(16), std::domain_error);  // square
    CHECK_THROWS_AS((void)reduced_forms(-4), std::domain_error);
}

TEST_CASE("fundamental units against exhaustive Pell search") {
    for (long long D : {5LL, 12LL, 21LL, 13LL, 8LL, 28LL, 32LL, 44LL, 60LL, 61LL}) {
        auto [t, u] = fundamental_unit(D);
        auto [to, uo] = oracles::pell_search(D);
        REQUIRE(uo != 0);
        CHECK(t == cpp_int(to));
        CHECK(u == cpp_int(uo));
        CHECK(t * t - cpp_int(D) * u * u == 4);  // norm equation, exact
    }
}

TEST_CASE("fundamental units satisfy the norm equation up to 10^4") {
    for (long long D = 5; D <= 10'000; ++D) {
        if (D % 4 != 0 && D % 4 != 1) continue;
        long long r = static_cast<long long>(std::sqrt(static_cast<double>(D)));
        if (r * r == D || (r + 1) * (r + 1) == D) continue;
        auto [t, u] = fundamental_unit(D);
        CHECK(t * t - cpp_int(D) * u * u == 4);
        CHECK(t > 0);
        CHECK(u > 0);
    }
}

TEST_CASE("norms by trace: small table") {
    auto norms = norms_by_trace(8);
    REQUIRE(norms.size() == 6);

    // trace 3: eps = (3+sqrt(5))/2, norm = eps^2
    const auto& g3 = norms[0];
    CHECK(g3.trace == 3);
    CHECK(g3.discriminant == 5);
    double eps3 = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(g3.norm == doctest::Approx(eps3 * eps3).epsilon(1e-12));
    CHECK(g3.norm == doctest::Approx(6.8541).epsilon(1e-4));
    CHECK(g3.class_count == 1);
    CHECK(g3.primitive_count == 1);

    // trace 7: eps_45 = eps_5^2, so one class at trace 7 is a squared geodesic
    const auto& g7 = norms[4];
    CHECK(g7.trace == 7);
    double eps7 = (7.0 + std::sqrt(45.0)) / 2.0;
    CHECK(eps7 == doctest::Approx(eps3 * eps3).epsilon(1e-12));
    CHECK(g7.class_count == class_number(45));
    CHECK(g7.primitive_count == g7.class_count - g3.primitive_count);

    for (std::size_t i = 1; i < norms.size(); ++i)
        CHECK(norms[i].norm > norms[i - 1].norm);
}

TEST_CASE("geodesic system construction") {
    GPrimeSystem one = geodesic_system(7.0);
    REQUIRE(one.primes.size() == 1);
    CHECK(one.primes[0].value == doctest::Approx(6.8541).epsilon(1e-4));
    CHECK(one.primes[0].multiplicity == 1);

    GPrimeSystem two = geodesic_system(14.0);
    REQUIRE(two.primes.size() == 2);
    double eps4 = 2.0 + std::sqrt(3.0);
    CHECK(two.primes[1].value == doctest::Approx(eps4 * eps4).epsilon(1e-10));
    CHECK(two.primes[1].value == doctest::Approx(13.9282).epsilon(1e-4));
    CHECK(two.primes[1].multiplicity == 2);  // h(12) = 2, both primitive

    for (const auto& p : two.primes) {
        CHECK(p.value > 1.0);
        CHECK(p.multiplicity >= 1);
    }
    CHECK_THROWS_AS((void)geodesic_system(6.0), std::domain_error);
}

TEST_CASE("conjugacy BFS oracle cross-checks class numbers") {
    CHECK(conjugacy_bfs_oracle(3, 12, 10) == 1);
    CHECK(conjugacy_bfs_oracle(4, 12, 10) == 2);
    CHECK(conjugacy_bfs_oracle(5, 12, 10) == 2);
    CHECK(conjugacy_bfs_oracle(3, 12, 10) == class_number(5));
    CHECK(conjugacy_bfs_oracle(4, 12, 10) == class_number(12));
    CHECK(conjugacy_bfs_oracle(5, 12, 10) == class_number(21));
}

TEST_CASE("geodesic pi_count at 7 equals the BFS oracle") {
    GPrimeSystem s = geodesic_system(50.0);
    CHECK(s.pi_count(7.0) == conjugacy_bfs_oracle(3, 12, 10));
    CHECK(s.pi_count(7.0) == 1);
}

TEST_CASE("prime geodesic residual profile") {
    GPrimeSystem s = geodesic_system(20000.0);
    LiEvaluator li;

    std::vector<double> grid;
    for (double x = 10.0; x <= 20000.0; x *= 1.3) grid.push_back(x);
    auto prof = pgt_residual_profile(s, grid);
    REQUIRE(prof.x.size() == grid.size());

    // below the smallest norm (~6.854) the residual is exactly -Li(x)
    auto below = pgt_residual_profile(s, {5.0});
    CHECK(below.residual[0] == doctest::Approx(-li.li(5.0)).epsilon(1e-12));
    // at x = 7: pi_P(7) = 1 per the BFS oracle
    auto one = pgt_residual_profile(s, {7.0});
    CHECK(one.residual[0] == doctest::Approx(1.0 - li.li(7.0)).epsilon(1e-12));

    CHECK(prof.theta_hat < 1.0);
    // |pi_P(x) - Li(x)| / x decays along the grid
    double first = std::abs(prof.residual[2]) / prof.x[2];
    double last = std::abs(prof.residual.back()) / prof.x.back();
    CHECK(last < first);
}

TEST_CASE("norm table CSV shape") {
    auto csv = norms_to_csv(norms_by_trace(5));
    CHECK(csv.find("trace,D,t,u,norm,class_count,primitive_count") != std::string::npos);
    CHECK(csv.find("6.8541019662496847") != std::string::npos);
}
