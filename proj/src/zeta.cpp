#include "delpezzo/zeta.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <cmath>
#include <string>

#include "delpezzo/arith.hpp"
#include "delpezzo/constants.hpp"
#include "delpezzo/error.hpp"
#include "delpezzo/primes.hpp"

namespace delpezzo::zeta {

namespace {

constexpr double kEps = 1e-16;

struct Neumaier {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) c += (sum - t) + x;
        else c += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

double rel(const SeriesEval& e) { return e.error / std::fabs(e.value); }

}  // namespace

SeriesEval zeta_real(double s, double tol) {
    if (!(s > 1.0)) throw DomainError("zeta_real: requires s > 1");
    const u64 N = 20;
    Neumaier acc;
    for (u64 n = N - 1; n >= 1; --n) acc.add(std::pow(static_cast<double>(n), -s));
    const double Nd = static_cast<double>(N);
    acc.add(std::pow(Nd, 1.0 - s) / (s - 1.0));
    acc.add(0.5 * std::pow(Nd, -s));
    // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    double rising = s;  // s (s+1) ... (s + 2k - 2)
    double fact = 2.0;  // (2k)!
    double err = 0.0;
    for (int k = 1; k <= 40; ++k) {
        double term = boost::math::bernoulli_b2n<double>(k) / fact * rising *
                      std::pow(Nd, -s - 2.0 * k + 1.0);
        if (std::fabs(term) < 1e-2 * tol || k == 40) {
            err = 2.0 * std::fabs(term);
            break;
        }
        acc.add(term);
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    SeriesEval r;
    r.s = s;
    r.value = acc.value();
    r.error = err + 64 * kEps * std::fabs(r.value);
    r.cutoff = N;
    if (r.error > tol * std::max(1.0, std::fabs(r.value)))
        throw ToleranceError("zeta_real: tolerance not reached", r.error);
    return r;
}

SeriesEval l_chi_real(double s, double tol) {
    if (!(s > 0.0)) throw DomainError("l_chi_real: requires s > 0");
    // a_k = (2k+1)^{-s} is totally monotone, so the CVZ error is at most 2 a_0 / d_n
    const double base = 3.0 + std::sqrt(8.0);
    int n = 1;
    while (n < 80 && 2.0 / std::pow(base, n) > 0.1 * tol) ++n;
    double d = std::pow(base, n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d, sum = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        sum += c * std::pow(2.0 * k + 1.0, -s);
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    SeriesEval r;
    r.s = s;
    r.value = sum / d;
    r.error = 2.0 / d + 64 * kEps * std::fabs(r.value);
    r.cutoff = static_cast<u64>(n);
    return r;
}

SeriesEval l_chi_alternating(double s, double tol) {
    if (!(s > 0.0)) throw DomainError("l_chi_alternating: requires s > 0");
    // first omitted term (2K+1)^{-s} <= tol
    double Kd = std::ceil((std::pow(tol, -1.0 / s) - 1.0) / 2.0);
    if (Kd > 5e9) throw SizeError("l_chi_alternating: too many terms for the tolerance");
    u64 K = static_cast<u64>(Kd);
    if (K % 2) ++K;
    Neumaier acc;
    // pairs summed from the small end
    for (u64 k = K; k-- > 0;) {
        double t = std::pow(2.0 * static_cast<double>(k) + 1.0, -s);
        acc.add(k % 2 ? -t : t);
    }
    SeriesEval r;
    r.s = s;
    r.value = acc.value();
    r.error = std::pow(2.0 * static_cast<double>(K) + 1.0, -s) + 4 * kEps * static_cast<double>(K);
    r.cutoff = K;
    return r;
}

SeriesEval E1(double s, double tol) {
    if (!(s > 1.0)) throw DomainError("E1: pole at s = 1; requires s > 1");
    double x = s - 1.0;
    auto z2 = zeta_real(2 * x + 1, tol), z3 = zeta_real(3 * x + 1, tol), z4 = zeta_real(4 * x + 1, tol);
    auto l2 = l_chi_real(2 * x + 1, tol), l3 = l_chi_real(3 * x + 1, tol);
    SeriesEval r;
    r.s = s;
    r.value = z2.value * z2.value * z3.value * z4.value * l2.value * l3.value;
    r.error = std::fabs(r.value) * (2 * rel(z2) + rel(z3) + rel(z4) + rel(l2) + rel(l3) + 8 * kEps);
    r.cutoff = z2.cutoff;
    return r;
}

SeriesEval E2(double s, double tol) {
    if (!(s > 8.0 / 9.0)) throw DomainError("E2: requires s > 8/9");
    double x = s - 1.0;
    auto z9 = zeta_real(9 * x + 3, tol), l9 = l_chi_real(9 * x + 3, tol);
    auto z5 = zeta_real(5 * x + 2, tol), z6 = zeta_real(6 * x + 2, tol);
    auto l5 = l_chi_real(5 * x + 2, tol), l6 = l_chi_real(6 * x + 2, tol);
    SeriesEval r;
    r.s = s;
    r.value = z9.value * l9.value /
              (z5.value * z5.value * z6.value * z6.value * l5.value * l6.value * l6.value);
    r.error = std::fabs(r.value) *
              (rel(z9) + rel(l9) + 2 * rel(z5) + 2 * rel(z6) + rel(l5) + 2 * rel(l6) + 12 * kEps);
    r.cutoff = z9.cutoff;
    return r;
}

double Dp_factor(u64 p, double s) {
    if (!(s > 0.0)) throw DomainError("Dp_factor: requires s > 0");
    if (!primes::is_prime(p)) throw DomainError("Dp_factor: p must be prime");
    const double x = s - 0.25;
    const double pd = static_cast<double>(p);
    const double a2 = std::pow(pd, 1.0 + 2.0 * x) - 1.0;
    const double a4 = std::pow(pd, 1.0 + 4.0 * x) - 1.0;
    if (a2 == 0.0 || a4 == 0.0) throw DomainError("Dp_factor: division by zero");
    if (p == 2) {
        return 1.0 + 1.0 / a2 * (0.5 + 1.0 / (4.0 * a4)) + 1.0 / (4.0 * a4) * (1.0 + std::pow(2.0, -3.0 * x)) +
               std::pow(2.0, -2.0 - 3.0 * x);
    }
    const double c = arith::chi(static_cast<i64>(p));
    const double q = 1.0 - 1.0 / pd;
    return 1.0 + q * (2.0 + c) / a2 * (1.0 + q / a4) + q * (1.0 - (1.0 + c) / pd) / a4 +
           q * q * (1.0 + c) /
               (std::pow(pd, 1.0 + 3.0 * x) * (1.0 - std::pow(pd, -1.0 - 4.0 * x)) *
                (1.0 - std::pow(pd, -1.0 - 2.0 * x)));
}

double Dp_direct(u64 p, double s, unsigned max_exponent) {
    // keep p^{max_exponent} inside 64 bits for the weight computation
    unsigned E = max_exponent;
    {
        long double lim = 1e18L, v = 1.0L;
        unsigned e = 0;
        while (e < E && v * p <= lim) {
            v *= p;
            ++e;
        }
        E = e;
    }
    auto pw = [p](unsigned e) {
        u64 r = 1;
        for (unsigned i = 0; i < e; ++i) r *= p;
        return r;
    };
    const double pd = static_cast<double>(p);
    Neumaier acc;
    for (unsigned a = 0; 4 * a <= E; ++a)
        for (unsigned b = 0; b <= 1 && 4 * a + 3 * b <= E; ++b)
            for (unsigned c = 0; 4 * a + 3 * b + 2 * c <= E; ++c)
                for (unsigned d = 0; 4 * a + 3 * b + 2 * c + 2 * d <= E; ++d) {
                    arith::ThetaInputs in{pw(a), pw(b), pw(c), pw(d)};
                    arith::Rational w = arith::phi_weight(in);
                    if (w.numerator() == 0) continue;
                    double expo = a * 4.0 * s + b * (3.0 * s + 0.25) + c * (2.0 * s + 0.5) + d * (2.0 * s + 0.5);
                    acc.add(boost::rational_cast<double>(w) * std::pow(pd, -expo));
                }
    return acc.value();
}

double E1_local(u64 p, double x) {
    const double pd = static_cast<double>(p);
    const double c = arith::chi(static_cast<i64>(p));
    const double t2 = std::pow(pd, -1.0 - 2.0 * x), t3 = std::pow(pd, -1.0 - 3.0 * x),
                 t4 = std::pow(pd, -1.0 - 4.0 * x);
    return 1.0 / ((1.0 - t2) * (1.0 - t2) * (1.0 - t3) * (1.0 - t4) * (1.0 - c * t2) * (1.0 - c * t3));
}

double H_factor(u64 p, double x) { return Dp_factor(p, x + 0.25) / E1_local(p, x); }

double H0_factor(u64 p) {
    if (p == 2) return 5.0 / 32.0;
    const double pd = static_cast<double>(p);
    const double c = arith::chi(static_cast<i64>(p));
    return std::pow(1.0 - 1.0 / pd, 4) * std::pow(1.0 - c / pd, 2) * (1.0 + (4.0 + 2.0 * c) / pd + 1.0 / (pd * pd));
}

SeriesEval H_at_zero(u64 P) {
    if (P < 100) throw DomainError("H_at_zero: prime cutoff must be at least 100");
    Neumaier acc;
    for (u64 p : primes::primes_up_to(P)) acc.add(std::log(H0_factor(p)));
    SeriesEval r;
    r.s = 0.0;
    r.value = std::exp(acc.value());
    r.error = r.value * std::expm1(constants::kTauLogConstant / static_cast<double>(P));
    r.cutoff = P;
    return r;
}

G1Eval G1_at_one(double c, double c_err, u64 prime_cutoff) {
    G1Eval g;
    const double s = 1.0;
    g.prefactor = 16.0 * c * s / (4.0 * s - 3.0);
    auto h = H_at_zero(prime_cutoff);
    auto e2 = E2(1.0);
    g.H0 = h.value;
    g.E2_at_1 = e2.value;
    g.value = g.prefactor * h.value / e2.value;
    g.error = std::fabs(g.value) * (c_err / c + h.error / h.value + e2.error / e2.value);
    if (!(g.value > 0.0)) throw InternalError("G1_at_one: value is not positive");
    return g;
}

}  // namespace delpezzo::zeta
