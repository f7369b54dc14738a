#include "delpezzo/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "delpezzo/error.hpp"

namespace delpezzo::arith {

MultiplicativeProfile profile(u64 n) {
    if (n == 0) throw DomainError("profile: n must be positive");
    MultiplicativeProfile pr;
    pr.n = n;
    pr.factorization = primes::factorize(n);
    pr.chi = chi(static_cast<i64>(n % 4));
    for (auto [p, e] : pr.factorization) {
        if (e >= 2) pr.mu = 0;
        else pr.mu = -pr.mu;
        u64 pe = 1;
        for (unsigned i = 1; i < e; ++i) pe *= p;
        pr.phi *= pe * (p - 1);
        ++pr.omega;
    }
    return pr;
}

int mobius(u64 n) { return profile(n).mu; }
u64 euler_phi(u64 n) { return profile(n).phi; }
unsigned omega(u64 n) { return profile(n).omega; }

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    i128 t = 0, nt = 1;
    i128 r = m, nr = a % m;
    while (nr) {
        i128 q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw DomainError("invmod: not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 isqrt128(u128 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 eta(const primes::Factorization& f) {
    u64 r = 1;
    for (auto [p, e] : f) {
        if (p == 2) {
            if (e >= 2) return 0;
        } else if (p % 4 == 3) {
            return 0;
        } else {
            r *= 2;
        }
    }
    return r;
}

u64 eta(u64 q) {
    if (q == 0) throw DomainError("eta: q must be positive");
    return eta(primes::factorize(q));
}

u64 tonelli_shanks(u64 a, u64 p) {
    a %= p;
    if (p == 2) return a;
    if (a == 0 || powmod(a, (p - 1) / 2, p) != 1)
        throw DomainError("tonelli_shanks: not a quadratic residue");
    u64 q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

std::vector<u64> sqrt_minus_one(u64 q, const primes::Factorization& f) {
    // Roots modulo each prime power, combined by CRT.
    std::vector<u64> roots{0};
    u64 mod = 1;
    for (auto [p, e] : f) {
        u64 pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        std::vector<u64> local;
        if (p == 2) {
            if (e >= 2) return {};
            local = {1};
        } else if (p % 4 == 3) {
            return {};
        } else {
            u64 r = tonelli_shanks(p - 1, p);
            u64 pk = p;
            for (unsigned k = 1; k < e; ++k) {
                // Hensel: r <- r - (r^2 + 1) / (2r) modulo p^{k+1}
                pk *= p;
                u64 fr = (mulmod(r, r, pk) + 1) % pk;
                u64 step = mulmod(fr, invmod((2 * r) % pk, pk), pk);
                r = (r + pk - step) % pk;
            }
            local = {r, pe - r};
        }
        std::vector<u64> next;
        next.reserve(roots.size() * local.size());
        u64 inv_mod = mod == 1 ? 0 : invmod(mod % pe, pe);
        for (u64 a : roots) {
            for (u64 b : local) {
                // x = a (mod mod), x = b (mod pe)
                u64 k = mod == 1 ? b % pe
                                 : mulmod((b + pe - a % pe) % pe, inv_mod, pe);
                next.push_back(a + mod * k);
            }
        }
        roots.swap(next);
        mod *= pe;
    }
    for (u64& r : roots)
        if (r == 0) r = q;
    std::sort(roots.begin(), roots.end());
    for (u64 r : roots)
        if ((mulmod(r, r, q) + 1) % q != 0)
            throw InternalError("sqrt_minus_one: root failed verification");
    return roots;
}

std::vector<u64> sqrt_minus_one(u64 q) {
    if (q == 0) throw DomainError("sqrt_minus_one: q must be positive");
    return sqrt_minus_one(q, primes::factorize(q));
}

double psi(double t) { return t - std::floor(t) - 0.5; }

namespace {
i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
}  // namespace

ProgressionCount progression_count_and_remainder(double t, i64 a, i64 q) {
    if (q <= 0) throw DomainError("progression_count: q must be positive");
    if (t < 0) throw DomainError("progression_count: t must be nonnegative");
    ProgressionCount out;
    i64 T = static_cast<i64>(std::floor(t));
    out.count = floor_div(T - a, q) - floor_div(-a, q);
    double qd = static_cast<double>(q);
    out.remainder = psi(-static_cast<double>(a) / qd) - psi((t - static_cast<double>(a)) / qd);
    double lhs = static_cast<double>(out.count);
    double rhs = t / qd + out.remainder;
    if (std::fabs(lhs - rhs) > 1e-12 * std::max(1.0, std::fabs(lhs)) + 1e-9)
        throw InternalError("progression_count: identity check failed");
    return out;
}

Approximation dirichlet_approx(i64 b, i64 q, i64 rho) {
    if (b == 0 || q <= 0) throw DomainError("dirichlet_approx: need b != 0 and q > 0");
    i128 rq = static_cast<i128>(rho) % q;
    if (rq < 0) rq += q;
    if ((rq * rq + 1) % q != 0) throw DomainError("dirichlet_approx: rho^2 != -1 mod q");
    // Convergents h/k of x = num/den, seeded with h_{-2}/k_{-2} = 0/1 and
    // h_{-1}/k_{-1} = 1/0.
    i128 num = static_cast<i128>(b) * rho, den = q;
    i128 h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    i128 best_u = 0, best_v = 0;
    i128 n = num, d = den;
    const i128 two_q = static_cast<i128>(2) * q;
    while (d != 0) {
        i128 a = n / d;
        if ((n % d != 0) && ((n < 0) != (d < 0))) --a;
        i128 h = a * h1 + h2;
        i128 k = a * k1 + k2;
        if (k * k > two_q) break;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        best_u = h;
        best_v = k;
        i128 r = n - a * d;
        n = d;
        d = r;
    }
    if (best_v <= 0) throw InternalError("dirichlet_approx: no convergent in range");
    i128 diff = num * best_v - best_u * den;  // = q v (x - u/v)
    bool ok_close = 2 * diff * diff <= static_cast<i128>(q);
    i128 bb = b < 0 ? -static_cast<i128>(b) : b;
    bool ok_low = static_cast<i128>(q) <= 2 * bb * bb * best_v * best_v;
    bool ok_high = best_v * best_v <= two_q;
    if (!(ok_close && ok_low && ok_high))
        throw InternalError("dirichlet_approx: convergent violates the approximation bounds");
    return {static_cast<i64>(best_u), static_cast<i64>(best_v)};
}

bool coprimality_ok(const ThetaInputs& in) {
    if (in.v1 == 0 || in.v2 == 0 || in.y1 == 0 || in.y2 == 0) return false;
    if (profile(in.v2).mu == 0) return false;
    return gcd(in.y2, in.v2 * in.y1) == 1;
}

namespace {

bool divides_any(u64 p, u64 n) { return n % p == 0; }

}  // namespace

Rational theta(const ThetaInputs& in) {
    if (!coprimality_ok(in)) return Rational(0);
    u64 q = in.v2 * in.y1 * in.y1;
    u64 e = eta(q);
    if (e == 0) return Rational(0);
    Rational r(static_cast<i64>(e));
    r *= Rational(static_cast<i64>(euler_phi(in.y2)), static_cast<i64>(in.y2));
    for (auto [p, ex] : primes::factorize(in.v1)) {
        (void)ex;
        if (divides_any(p, in.v2) || divides_any(p, in.y1) || divides_any(p, in.y2)) continue;
        i64 pi = static_cast<i64>(p);
        r *= Rational(pi - 1 - chi(pi), pi);
    }
    u64 g = gcd(in.v1, in.y1);
    std::vector<u64> ps;
    for (auto [p, ex] : primes::factorize(in.v2)) ps.push_back(p);
    if (g > 1)
        for (auto [p, ex] : primes::factorize(g)) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (u64 p : ps) {
        i64 pi = static_cast<i64>(p);
        r *= Rational(pi - chi(pi), pi);
    }
    return r;
}

Rational theta_mobius(const ThetaInputs& in) {
    if (!coprimality_ok(in)) return Rational(0);
    u64 n = in.v1 * in.v2;
    Rational sum(0);
    for (u64 k = 1; k <= n; ++k) {
        if (n % k || gcd(k, in.y2) != 1) continue;
        int mu = mobius(k);
        if (!mu) continue;
        u64 e = eta(k * in.v2 * in.y1 * in.y1);
        sum += Rational(mu * static_cast<i64>(e), static_cast<i64>(k));
    }
    return sum * Rational(static_cast<i64>(euler_phi(in.y2)), static_cast<i64>(in.y2));
}

Rational phi_weight(const ThetaInputs& in) {
    Rational t = theta(in);
    if (t.numerator() == 0) return t;
    u64 n = in.v1 * in.v2 * in.y1;
    return t * Rational(static_cast<i64>(euler_phi(n)), static_cast<i64>(n));
}

std::vector<DeltaTerm> delta_terms(u64 n) {
    if (n == 0) throw DomainError("delta: n must be positive");
    std::vector<DeltaTerm> out;
    for (u64 v1 = 1; v1 * v1 * v1 * v1 <= n; ++v1) {
        u64 a = v1 * v1 * v1 * v1;
        if (n % a) continue;
        u64 n1 = n / a;
        for (u64 v2 = 1; v2 * v2 * v2 <= n1; ++v2) {
            u64 b = v2 * v2 * v2;
            if (n1 % b) continue;
            u64 n2 = n1 / b;
            // n2 = (y1 y2)^2
            u64 s = isqrt(n2);
            if (s * s != n2) continue;
            for (u64 y1 = 1; y1 <= s; ++y1) {
                if (s % y1) continue;
                ThetaInputs in{v1, v2, y1, s / y1};
                Rational w = phi_weight(in);
                if (w.numerator() != 0) out.push_back({in, w});
            }
        }
    }
    return out;
}

double delta_term_value(const DeltaTerm& t) {
    double w = boost::rational_cast<double>(t.weight);
    return w / (std::pow(static_cast<double>(t.in.v2), 0.25) *
                std::sqrt(static_cast<double>(t.in.y1) * static_cast<double>(t.in.y2)));
}

double delta(u64 n) {
    double s = 0.0;
    for (const auto& t : delta_terms(n)) s += delta_term_value(t);
    return s;
}

}  // namespace delpezzo::arith
