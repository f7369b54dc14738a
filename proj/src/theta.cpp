#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <string>

#include "delpezzo/arith.hpp"
#include "delpezzo/error.hpp"
#include "delpezzo/parallel.hpp"
#include "delpezzo/quadrature.hpp"

namespace delpezzo::arith {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

struct NeumaierSum {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) c += (sum - t) + x;
        else c += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

void merge_primes(std::vector<u64>& out, const std::vector<u64>& add) {
    out.insert(out.end(), add.begin(), add.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

// theta' from the distinct primes of v1 v2 (pv) and of v1 v2 y1 (pn).
template <class Integral>
quad::QuadResult theta_prime_core(u64 eta_q, const std::vector<u64>& pv,
                                  const std::vector<u64>& pn, u64 n, Integral&& integral) {
    if (eta_q == 0) return {0.0, 0.0};
    double pre = -3.0 / (kPi * kPi) * static_cast<double>(eta_q);
    for (u64 p : pv) {
        double pd = static_cast<double>(p);
        pre *= 1.0 - chi(static_cast<i64>(p)) / pd;
    }
    for (u64 p : pn) pre /= 1.0 + 1.0 / static_cast<double>(p);
    // sum over squarefree k0 | n of mu(k0) I(n / k0)
    NeumaierSum s;
    double err = 0.0;
    std::size_t r = pn.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        u64 k = 1;
        int sign = 1;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1) {
                k *= pn[i];
                sign = -sign;
            }
        quad::QuadResult q = integral(n / k);
        s.add(sign * q.value);
        err += q.error;
    }
    return {pre * s.value(), std::fabs(pre) * err};
}

std::vector<u64> distinct(u64 n) {
    std::vector<u64> out;
    if (n > 1)
        for (auto [p, e] : primes::factorize(n)) out.push_back(p);
    return out;
}

// Bound on sum over n > V of k^{omega(n)} / n^2, from
// sum_{n<=x} tau_k(n) <= x (1 + log x)^{k-1} and partial summation.
double omega_power_tail(unsigned k, double V) {
    double L = 1.0 + std::log(V);
    unsigned m = k - 1;
    double sum = 0.0, fall = 1.0;
    for (unsigned j = 0; j <= m; ++j) {
        sum += fall * std::pow(L, static_cast<double>(m - j));
        fall *= static_cast<double>(m - j);
    }
    return 2.0 * sum / V;
}

// Upper bound for sum_n 4^{omega(n)} / n^2 = prod_p (1 + 4/(p^2 - 1)).
double four_omega_sum() {
    static const double value = [] {
        const u64 P = 10000;
        double log_prod = 0.0;
        for (u64 p : primes::primes_up_to(P)) {
            double pd = static_cast<double>(p);
            log_prod += std::log1p(4.0 / (pd * pd - 1.0));
        }
        // sum_{n > P} 4/(n^2 - 1) <= 4/(P - 1)
        log_prod += 4.0 / static_cast<double>(P - 1);
        return std::exp(log_prod) * (1.0 + 1e-12);
    }();
    return value;
}

}  // namespace

double delta_partial_sum(u64 B) {
    NeumaierSum s;
    for (u64 v1 = 1; v1 * v1 * v1 * v1 <= B; ++v1) {
        u64 a = v1 * v1 * v1 * v1;
        for (u64 v2 = 1; a * v2 * v2 * v2 <= B; ++v2) {
            u64 b = a * v2 * v2 * v2;
            if (profile(v2).mu == 0) continue;
            for (u64 y1 = 1; b * y1 * y1 <= B; ++y1) {
                u64 c = b * y1 * y1;
                if (eta(v2 * y1 * y1) == 0) continue;
                for (u64 y2 = 1; c * y2 * y2 <= B; ++y2) {
                    ThetaInputs in{v1, v2, y1, y2};
                    Rational w = phi_weight(in);
                    if (w.numerator() == 0) continue;
                    s.add(delta_term_value({in, w}));
                }
            }
        }
    }
    return s.value();
}

double theta_prime(u64 v1, u64 v2, u64 y1, double tol) {
    if (v1 == 0 || v2 == 0 || y1 == 0) throw DomainError("theta_prime: arguments must be positive");
    u64 e = eta(v2 * y1 * y1);
    std::vector<u64> pv = distinct(v1);
    merge_primes(pv, distinct(v2));
    std::vector<u64> pn = pv;
    merge_primes(pn, distinct(y1));
    auto r = theta_prime_core(e, pv, pn, v1 * v2 * y1,
                              [&](u64 m) { return quad::fractional_integral_auto(m, tol); });
    if (r.error > tol)
        throw ToleranceError("theta_prime: error " + std::to_string(r.error) + " above tolerance",
                             r.error);
    return r.value;
}

double beta_tail_bound(u64 V) {
    double v = static_cast<double>(std::max<u64>(V, 1));
    const double s2 = 2.5;  // sum 2^{omega(n)}/n^2 = zeta(2)^2/zeta(4)
    const double s4 = four_omega_sum();
    double t2 = omega_power_tail(2, v);
    double t4 = omega_power_tail(4, v);
    return 6.0 / (kPi * kPi) * (t2 * s4 * s4 + 2.0 * s2 * s4 * t4);
}

BetaEstimate beta_constant(u64 V, double tol, unsigned threads) {
    if (V == 0) throw DomainError("beta_constant: cutoff must be positive");
    quad::FractionalTable table(tol, threads);
    primes::SpfTable spf(V);
    std::vector<bool> sqfree(V + 1);
    for (u64 n = 1; n <= V; ++n) sqfree[n] = spf.squarefree(n);
    std::vector<double> partial(V + 1, 0.0), perr(V + 1, 0.0);
    parallel::for_each_dynamic(V, threads, [&](std::size_t idx, unsigned) {
        u64 v1 = idx + 1;
        std::vector<u64> p1, p2, p3;
        spf.distinct_primes(v1, p1);
        NeumaierSum s;
        double err = 0.0;
        for (u64 v2 = 1; v2 <= V; ++v2) {
            if (!sqfree[v2]) continue;
            spf.distinct_primes(v2, p2);
            std::vector<u64> pv = p1;
            merge_primes(pv, p2);
            for (u64 y1 = 1; y1 <= V; ++y1) {
                // eta(v2 y1^2) from the factorizations of v2 and y1
                spf.distinct_primes(y1, p3);
                std::vector<u64> q = p2;
                merge_primes(q, p3);
                u64 e = 1;
                bool y1_even = y1 % 2 == 0;
                for (u64 p : q) {
                    if (p == 2) {
                        if (y1_even) { e = 0; break; }
                    } else if (p % 4 == 3) {
                        e = 0;
                        break;
                    } else {
                        e *= 2;
                    }
                }
                if (e == 0) continue;
                std::vector<u64> pn = pv;
                merge_primes(pn, p3);
                auto r = theta_prime_core(e, pv, pn, v1 * v2 * y1, table);
                double d = static_cast<double>(v1) * static_cast<double>(v2) *
                           static_cast<double>(y1);
                s.add(r.value / (d * d));
                err += r.error / (d * d);
            }
        }
        partial[v1] = s.value();
        perr[v1] = err;
    });
    BetaEstimate out;
    NeumaierSum total;
    for (u64 v1 = 1; v1 <= V; ++v1) {
        total.add(partial[v1]);
        out.quad_error += perr[v1];
    }
    out.value = total.value();
    out.tail = beta_tail_bound(V);
    out.cutoff = V;
    return out;
}

}  // namespace delpezzo::arith
