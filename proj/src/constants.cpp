#include "delpezzo/constants.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <string>

#include "delpezzo/error.hpp"
#include "delpezzo/parallel.hpp"
#include "delpezzo/primes.hpp"

namespace delpezzo::constants {

namespace {
constexpr double kPi = boost::math::constants::pi<double>();
}

QuadResult quad_c(double tol) {
    if (!(tol >= 1e-14)) throw DomainError("quad_c: tolerance below 1e-14");
    // (1 - w^2)^{1/4} with 1 - w passed separately to keep precision near 1
    auto f_shifted = [](double w, double one_minus_w) {
        return std::pow(one_minus_w * (1.0 + w), 0.25);
    };
    // Remainder on [1 - eps, 1] is below 2^{1/4} (4/5) eps^{5/4}.
    int K = 1;
    auto rem = [](double eps) { return std::pow(2.0, 0.25) * 0.8 * std::pow(eps, 1.25); };
    while (rem(std::ldexp(1.0, -K)) > tol * 1e-2) ++K;
    double value = 0.0, err = 0.0;
    for (int k = 0; k < K; ++k) {
        // [1 - 2^{-k}, 1 - 2^{-k-1}] in the variable s = 1 - w
        double s_hi = std::ldexp(1.0, -k), s_lo = std::ldexp(1.0, -k - 1);
        auto g = [&](double s) { return f_shifted(1.0 - s, s); };
        auto piece = quad::integrate_adaptive(g, s_lo, s_hi, tol * 1e-3 / K);
        value += piece.value;
        err += piece.error;
    }
    // floating summation over the pieces
    err += 2.0 * K * 1e-16;
    err += rem(std::ldexp(1.0, -K));
    if (err > tol) throw ToleranceError("quad_c: error " + std::to_string(err) + " above tolerance", err);
    return {value, err};
}

QuadResult quad_omega_inf(double tol) {
    if (!(tol >= 1e-14)) throw DomainError("quad_omega_inf: tolerance below 1e-14");
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0, l1 = 0.0;
    auto f = [](double t) { return std::pow(std::sin(t), 1.5); };
    double v = ts.integrate(f, 0.0, kPi / 2, tol / 32, &err, &l1);
    QuadResult r{16.0 * v, 16.0 * err + 16.0 * 1e-16 * l1};
    if (r.error > tol)
        throw ToleranceError("quad_omega_inf: error " + std::to_string(r.error) + " above tolerance", r.error);
    return r;
}

Rational simplex_volume(const std::vector<i64>& a) {
    Rational v(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] <= 0) throw DomainError("simplex_volume: coefficients must be positive");
        v /= Rational(static_cast<i64>(i + 1) * a[i]);
    }
    return v;
}

Rational simplex_alpha() {
    // alpha = (1/2) vol{t in R^3_{>=0} : 4 t1 + 2 t2 + 3 t3 <= 1}
    return Rational(1, 2) * simplex_volume({4, 2, 3});
}

double tau_factor(u64 p) {
    double pd = static_cast<double>(p);
    double x = 1.0 / pd;
    int c = arith::chi(static_cast<i64>(p));
    double cd = c;
    return std::pow(1.0 - x, 4) * std::pow(1.0 - cd * x, 2) *
           (1.0 + (3.0 + 2.0 * cd + cd * cd) * x + cd * cd * x * x);
}

TauResult tau_product(u64 P) {
    if (P < 100) throw DomainError("tau_product: prime cutoff must be at least 100");
    double s = 0.0, comp = 0.0;
    for (u64 p : primes::primes_up_to(P)) {
        double t = std::log(tau_factor(p));
        double y = s + t;
        if (std::fabs(s) >= std::fabs(t)) comp += (s - y) + t;
        else comp += (t - y) + s;
        s = y;
    }
    TauResult r;
    r.cutoff = P;
    r.tau = std::exp(s + comp);
    // sum_{p > P} C/p^2 <= C/P
    r.tail = r.tau * std::expm1(kTauLogConstant / static_cast<double>(P));
    return r;
}

Rational omega_p_closed(u64 p) {
    if (!primes::is_prime(p)) throw DomainError("omega_p_closed: p must be prime");
    if (p == 2) return Rational(5, 2);
    i64 pi = static_cast<i64>(p);
    return Rational(1) + Rational(4 + 2 * arith::chi(pi), pi) + Rational(1, pi * pi);
}

namespace {

// Q1, Q2 exactly for nonnegative representatives below 2^63.
inline void forms(const std::array<u64, 5>& x, i128& q1, i128& q2) {
    q1 = static_cast<i128>(x[0]) * x[1] - static_cast<i128>(x[2]) * x[2];
    q2 = static_cast<i128>(x[0]) * x[0] - static_cast<i128>(x[1]) * x[4] +
         static_cast<i128>(x[3]) * x[3];
}

inline u64 mod_p(i128 v, u64 p) {
    i128 r = v % static_cast<i128>(p);
    if (r < 0) r += p;
    return static_cast<u64>(r);
}

struct Lifter {
    u64 p;
    unsigned r;
    std::vector<u128> pow3;  // p^{3j}

    u128 count(const std::array<u64, 5>& x, unsigned k, u64 pk) const {
        if (k == r) return 1;
        u64 g1[5] = {x[1] % p, x[0] % p, (p - (2 * x[2]) % p) % p, 0, 0};
        u64 g2[5] = {(2 * x[0]) % p, (p - x[4] % p) % p, 0, (2 * x[3]) % p, (p - x[1] % p) % p};
        // rank 2 unless one gradient vanishes or they are proportional
        bool z1 = true, z2 = true;
        for (int i = 0; i < 5; ++i) {
            if (g1[i]) z1 = false;
            if (g2[i]) z2 = false;
        }
        bool rank2 = false;
        if (!z1 && !z2) {
            for (int i = 0; i < 5 && !rank2; ++i)
                for (int j = i + 1; j < 5 && !rank2; ++j)
                    if ((g1[i] * g2[j] + p * p - (g1[j] * g2[i]) % (p * p)) % p != 0) rank2 = true;
        }
        if (rank2) return pow3[r - k];
        i128 q1, q2;
        forms(x, q1, q2);
        const u64 c1 = mod_p(q1 / static_cast<i128>(pk), p);
        const u64 c2 = mod_p(q2 / static_cast<i128>(pk), p);
        // Solve c + J t = 0 over F_p with J of rank 0 or 1.
        const u64* g = nullptr;
        u64 c = 0;
        if (z1 && z2) {
            if (c1 || c2) return 0;
        } else {
            const u64* other;
            u64 c_other;
            if (!z1) {
                g = g1; c = c1; other = g2; c_other = c2;
            } else {
                g = g2; c = c2; other = g1; c_other = c1;
            }
            // other = lambda g; consistency c_other = lambda c
            int j = 0;
            while (g[j] == 0) ++j;
            u64 lambda = other[j] * arith::invmod(g[j], p) % p;
            if ((lambda * c) % p != c_other % p) return 0;
        }
        u128 total = 0;
        const u64 next = pk * p;
        std::array<u64, 5> t{};
        u64 combos = 1;
        for (int i = 0; i < 5; ++i) combos *= p;
        int j = -1;
        u64 inv_gj = 0;
        if (g) {
            j = 0;
            while (g[j] == 0) ++j;
            inv_gj = arith::invmod(g[j], p);
            combos /= p;
        }
        for (u64 idx = 0; idx < combos; ++idx) {
            u64 rem = idx;
            for (int i = 0; i < 5; ++i) {
                if (i == j) continue;
                t[i] = rem % p;
                rem /= p;
            }
            if (g) {
                u64 s = c % p;
                for (int i = 0; i < 5; ++i)
                    if (i != j) s = (s + g[i] * t[i]) % p;
                t[j] = (p - s) % p * inv_gj % p;
            }
            std::array<u64, 5> y;
            for (int i = 0; i < 5; ++i) y[i] = x[i] + pk * t[i];
            total += count(y, k + 1, next);
        }
        return total;
    }
};

u128 upow(u64 p, unsigned e) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
}

Rational reduce(u128 num, u128 den) {
    u128 a = num, b = den;
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    num /= a;
    den /= a;
    if (num > static_cast<u128>(INT64_MAX) || den > static_cast<u128>(INT64_MAX))
        throw OverflowError("local_density: ratio does not fit 64-bit rationals");
    return Rational(static_cast<i64>(num), static_cast<i64>(den));
}

}  // namespace

DensityResult local_density_brute(u64 p, unsigned r, DensityMode mode, unsigned threads) {
    if (!primes::is_prime(p)) throw DomainError("local_density_brute: p must be prime");
    if (r == 0) throw DomainError("local_density_brute: r must be positive");
    DensityResult out;
    out.p = p;
    out.r = r;
    const u128 pr = upow(p, r);
    if (mode == DensityMode::naive) {
        if (upow(p, 5 * r) > static_cast<u128>(10000000000ULL))
            throw SizeError("local_density_brute: naive mode needs p^{5r} <= 1e10");
        const u64 m = static_cast<u64>(pr);
        u128 n = 0;
        for (u64 x0 = 0; x0 < m; ++x0)
            for (u64 x1 = 0; x1 < m; ++x1)
                for (u64 x2 = 0; x2 < m; ++x2) {
                    if ((x0 * x1 + m * m - (x2 * x2) % (m * m)) % m != 0) continue;
                    const u64 a = x0 * x0 % m;
                    for (u64 x3 = 0; x3 < m; ++x3) {
                        const u64 b = (a + x3 * x3) % m;
                        for (u64 x4 = 0; x4 < m; ++x4)
                            if ((x1 * x4) % m == b) ++n;
                    }
                }
        out.count = n;
    } else {
        if (upow(p, 3 * r) > static_cast<u128>(1000000000000000ULL))
            throw SizeError("local_density_brute: lifting mode needs p^{3r} <= 1e15");
        Lifter L{p, r, {}};
        for (unsigned j = 0; j <= r; ++j) L.pow3.push_back(upow(p, 3 * j));
        std::vector<std::array<u64, 5>> roots;
        std::array<u64, 5> x{};
        for (x[0] = 0; x[0] < p; ++x[0])
            for (x[1] = 0; x[1] < p; ++x[1])
                for (x[2] = 0; x[2] < p; ++x[2])
                    for (x[3] = 0; x[3] < p; ++x[3])
                        for (x[4] = 0; x[4] < p; ++x[4]) {
                            i128 q1, q2;
                            forms(x, q1, q2);
                            if (mod_p(q1, p) || mod_p(q2, p)) continue;
                            roots.push_back(x);
                        }
        std::vector<u128> per(roots.size(), 0);
        parallel::for_each_dynamic(roots.size(), threads, [&](std::size_t i, unsigned) {
            per[i] = L.count(roots[i], 1, p);
        });
        u128 n = 0;
        for (u128 v : per) n += v;
        out.count = n;
    }
    const u128 den = upow(p, 3 * r);
    out.exact = reduce(out.count, den);
    out.estimate = static_cast<double>(out.count) / static_cast<double>(den);
    return out;
}

Valued tau_H(const Valued& omega_inf, const Valued& tau) {
    double v = kPi * kPi * omega_inf.value * tau.value / 16.0;
    double rel = omega_inf.error / omega_inf.value + tau.error / tau.value;
    return {v, std::fabs(v) * rel};
}

Valued leading_coefficient(const Valued& c, const Valued& tau) {
    double v = kPi * kPi / 576.0 * 2.0 * c.value * tau.value;
    double rel = c.error / c.value + tau.error / tau.value;
    return {v, std::fabs(v) * rel};
}

double conic_constant() { return 12.0 / (kPi * kPi); }

ConstantBundle compute_bundle(u64 prime_cutoff, double quad_tol, u64 beta_cutoff, unsigned threads) {
    ConstantBundle b;
    b.prime_cutoff = prime_cutoff;
    b.beta_cutoff = beta_cutoff;
    b.quad_tol = quad_tol;
    auto qc = quad_c(quad_tol);
    b.c = {qc.value, qc.error};
    auto qo = quad_omega_inf(quad_tol);
    b.omega_inf = {qo.value, qo.error};
    auto t = tau_product(prime_cutoff);
    b.tau = {t.tau, t.tail};
    b.alpha = simplex_alpha();
    b.tau_H = tau_H(b.omega_inf, b.tau);
    double alpha = boost::rational_cast<double>(b.alpha);
    // beta(X) = 1
    b.peyre = {alpha * b.tau_H.value, alpha * b.tau_H.error};
    b.leading_coeff = leading_coefficient(b.c, b.tau);
    double rd = b.c.value * kPi * kPi * b.tau.value / 384.0;
    b.residue_display = {rd, rd * (b.c.error / b.c.value + b.tau.error / b.tau.value)};
    auto be = arith::beta_constant(beta_cutoff, std::max(quad_tol, 1e-9), threads);
    b.beta = {be.value, be.tail + be.quad_error};
    return b;
}

IntersectionData intersection_data() {
    IntersectionData d;
    d.names = {"E1", "E2", "E3", "E4", "L1", "L2"};
    d.matrix = {{{-2, 1, 1, 1, 0, 0},
                 {1, -2, 0, 0, 0, 0},
                 {1, 0, -2, 0, 1, 0},
                 {1, 0, 0, -2, 0, 1},
                 {0, 0, 1, 0, -1, 0},
                 {0, 0, 0, 1, 0, -1}}};
    d.anticanonical = {4, 2, 3, 3, 2, 2};
    d.conjugation = {0, 1, 3, 2, 5, 4};
    d.picard_rank = 4;
    return d;
}

PicardReport picard_checks() { return picard_checks(intersection_data()); }

PicardReport picard_checks(const IntersectionData& d) {
    PicardReport rep;
    rep.symmetric = true;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (d.matrix[i][j] != d.matrix[j][i]) rep.symmetric = false;
    if (!rep.symmetric) throw DataIntegrityError("picard_checks: matrix not symmetric");
    const std::array<i64, 6> diag{-2, -2, -2, -2, -1, -1};
    for (int i = 0; i < 6; ++i)
        if (d.matrix[i][i] != diag[i]) throw DataIntegrityError("picard_checks: unexpected diagonal");
    for (int i = 0; i < 6; ++i) {
        i64 s = 0;
        for (int j = 0; j < 6; ++j) s += d.matrix[i][j] * d.anticanonical[j];
        rep.minus_k_dot[i] = s;
    }
    rep.degree = 0;
    for (int i = 0; i < 6; ++i) rep.degree += d.anticanonical[i] * rep.minus_k_dot[i];
    if (rep.degree != 4) throw DataIntegrityError("picard_checks: (-K)^2 != 4");
    for (int i = 0; i < 4; ++i)
        if (rep.minus_k_dot[i] != 0) throw DataIntegrityError("picard_checks: (-K).E_i != 0");
    for (int i = 4; i < 6; ++i)
        if (rep.minus_k_dot[i] != 1) throw DataIntegrityError("picard_checks: (-K).L_j != 1");
    // The pairing and -K must be invariant under conjugation.
    for (int i = 0; i < 6; ++i) {
        if (d.anticanonical[i] != d.anticanonical[d.conjugation[i]])
            throw DataIntegrityError("picard_checks: -K not Galois invariant");
        for (int j = 0; j < 6; ++j)
            if (d.matrix[i][j] != d.matrix[d.conjugation[i]][d.conjugation[j]])
                throw DataIntegrityError("picard_checks: pairing not Galois invariant");
    }
    std::array<bool, 6> seen{};
    for (int i = 0; i < 6; ++i) {
        if (seen[i]) continue;
        ++rep.orbit_count;
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = d.conjugation[j];
        }
    }
    if (rep.orbit_count != d.picard_rank)
        throw DataIntegrityError("picard_checks: orbit count differs from the Picard rank");
    return rep;
}

}  // namespace delpezzo::constants
