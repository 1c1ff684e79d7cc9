#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracles {

namespace {

double simpson(double (*f)(double), double a, double b) {
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

double inv_log(double t) { return 1.0 / std::log(t); }

double adaptive(double (*f)(double), double a, double b, double whole, double tol,
                int depth) {
    double m = 0.5 * (a + b);
    double left = simpson(f, a, m), right = simpson(f, m, b);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, right, 0.5 * tol, depth - 1);
}

} // namespace

double li_quadrature(double x, double tol) {
    if (x < 2.0) throw std::domain_error("li_quadrature: x < 2");
    if (x == 2.0) return 0.0;
    return adaptive(inv_log, 2.0, x, simpson(inv_log, 2.0, x), tol, 48);
}

std::complex<double> zeta(std::complex<double> s) {
    // Euler-Maclaurin with N = 64 and Bernoulli terms through B_12.
    static const double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30,
                                  5.0 / 66, -691.0 / 2730};
    const int N = 64;
    std::complex<double> sum = 0.0;
    for (int n = 1; n < N; ++n) sum += std::pow(static_cast<double>(n), -s);
    std::complex<double> Ns = std::pow(static_cast<double>(N), -s);
    sum += static_cast<double>(N) * Ns / (s - 1.0);
    sum += 0.5 * Ns;
    std::complex<double> poch = s;          // s (s+1) ... running product
    std::complex<double> npow = Ns / static_cast<double>(N);  // N^{-s-1}
    double fact = 2.0;                       // (2k)!
    for (int k = 1; k <= 6; ++k) {
        sum += bern[k - 1] / fact * poch * npow;
        poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow /= static_cast<double>(N) * static_cast<double>(N);
    }
    return sum;
}

long long prime_count(double x) {
    long long count = 0;
    for (long long n = 2; static_cast<double>(n) <= x; ++n) {
        bool prime = true;
        for (long long d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        if (prime) ++count;
    }
    return count;
}

int mobius(long long n) {
    if (n < 1) throw std::domain_error("mobius: n < 1");
    int sign = 1;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

long long mobius_prefix(long long n) {
    long long sum = 0;
    for (long long k = 1; k <= n; ++k) sum += mobius(k);
    return sum;
}

double sum_inverse_squares(long long cutoff) {
    double sum = 0.0, comp = 0.0;
    for (long long n = cutoff; n >= 1; --n) {
        double y = 1.0 / (static_cast<double>(n) * static_cast<double>(n)) - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    double N = static_cast<double>(cutoff);
    // Euler-Maclaurin tail of sum_{n > N} 1/n^2
    return sum + 1.0 / N - 1.0 / (2.0 * N * N) + 1.0 / (6.0 * N * N * N);
}

double squarefree_sum_inverse_squares(long long cutoff) {
    std::vector<bool> squarefree(static_cast<std::size_t>(cutoff) + 1, true);
    for (long long d = 2; d * d <= cutoff; ++d)
        for (long long m = d * d; m <= cutoff; m += d * d)
            squarefree[static_cast<std::size_t>(m)] = false;
    double sum = 0.0, comp = 0.0;
    for (long long n = cutoff; n >= 1; --n) {
        if (!squarefree[static_cast<std::size_t>(n)]) continue;
        double y = 1.0 / (static_cast<double>(n) * static_cast<double>(n)) - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

std::pair<long long, long long> pell_search(long long D, long long u_max) {
    for (long long u = 1; u <= u_max; ++u) {
        long long rhs = 4 + D * u * u;
        auto t = static_cast<long long>(std::sqrt(static_cast<double>(rhs)));
        for (long long c = t - 2; c <= t + 2; ++c)
            if (c > 0 && c * c == rhs) return {c, u};
    }
    return {0, 0};
}

std::vector<double> selberg_toy_coefficients(double p, int K, int mmax) {
    // poly in x = p^{-s}; multiply the K+1 linear factors (1 - q^k x) directly
    std::vector<double> poly(static_cast<std::size_t>(mmax) + 1, 0.0);
    poly[0] = 1.0;
    double qk = 1.0;
    for (int k = 0; k <= K; ++k) {
        for (int m = mmax; m >= 1; --m) poly[m] -= qk * poly[m - 1];
        qk /= p;
    }
    return poly;
}

std::vector<double> selberg_toy_inverse_coefficients(double p, int K, int mmax) {
    // 1/(1 - q^k x) = sum_j q^{kj} x^j, truncated convolution over k
    std::vector<double> poly(static_cast<std::size_t>(mmax) + 1, 0.0);
    poly[0] = 1.0;
    double qk = 1.0;
    for (int k = 0; k <= K; ++k) {
        std::vector<double> next(poly.size(), 0.0);
        for (std::size_t m = 0; m < poly.size(); ++m) {
            double g = 1.0;
            for (std::size_t j = 0; m + j < poly.size(); ++j) {
                next[m + j] += poly[m] * g;
                g *= qk;
            }
        }
        poly.swap(next);
        qk /= p;
    }
    return poly;
}

} // namespace oracles
