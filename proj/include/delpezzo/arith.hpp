#pragma once

#include <boost/rational.hpp>
#include <vector>

#include "delpezzo/primes.hpp"
#include "delpezzo/types.hpp"

namespace delpezzo::arith {

using Rational = boost::rational<i64>;

struct MultiplicativeProfile {
    u64 n = 1;
    primes::Factorization factorization;
    int mu = 1;
    u64 phi = 1;
    unsigned omega = 0;
    int chi = 1;
};

MultiplicativeProfile profile(u64 n);

// Non-principal character modulo 4.
constexpr int chi(i64 n) {
    i64 r = ((n % 4) + 4) % 4;
    return r == 1 ? 1 : (r == 3 ? -1 : 0);
}

int mobius(u64 n);
u64 euler_phi(u64 n);
unsigned omega(u64 n);

u64 gcd(u64 a, u64 b);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);
// Floor of sqrt(n), exact.
u64 isqrt(u64 n);
u64 isqrt128(u128 n);

// Number of rho mod q with rho^2 = -1 (mod q).
u64 eta(u64 q);
u64 eta(const primes::Factorization& f);

// Square root of a modulo an odd prime p; a must be a nonzero residue.
u64 tonelli_shanks(u64 a, u64 p);

// All rho in [1, q] with rho^2 = -1 (mod q), ascending.
std::vector<u64> sqrt_minus_one(u64 q);
std::vector<u64> sqrt_minus_one(u64 q, const primes::Factorization& f);

// {t} - 1/2
double psi(double t);

struct ProgressionCount {
    i64 count = 0;
    double remainder = 0.0;
};

// #{0 < n <= t : n = a mod q} and r(t; a, q) = psi(-a/q) - psi((t-a)/q).
ProgressionCount progression_count_and_remainder(double t, i64 a, i64 q);

struct Approximation {
    i64 u = 0;
    i64 v = 1;
};

// Convergent u/v of b*rho/q with |b rho/q - u/v| <= 1/(v sqrt(2q)) and
// sqrt(q/2)/|b| <= v <= sqrt(2q).
Approximation dirichlet_approx(i64 b, i64 q, i64 rho);

struct ThetaInputs {
    u64 v1 = 1;
    u64 v2 = 1;
    u64 y1 = 1;
    u64 y2 = 1;
};

// v2 squarefree and gcd(y2, v2 y1) = 1.
bool coprimality_ok(const ThetaInputs& in);

// Closed product form. Zero when coprimality_ok fails.
Rational theta(const ThetaInputs& in);

// Reference form: phi(y2)/y2 * sum over k | v1 v2, gcd(k, y2) = 1 of
// mu(k) eta(k v2 y1^2)/k. Zero when coprimality_ok fails.
Rational theta_mobius(const ThetaInputs& in);

Rational phi_weight(const ThetaInputs& in);

struct DeltaTerm {
    ThetaInputs in;
    Rational weight;  // phi_weight(in), nonzero
};

// Factorizations n = v1^4 v2^3 y1^2 y2^2 with nonzero weight.
std::vector<DeltaTerm> delta_terms(u64 n);
// Sum of weight / (v2^{1/4} y1^{1/2} y2^{1/2}).
double delta(u64 n);
double delta_term_value(const DeltaTerm& t);

// Sum of delta(n) for n <= B, by direct enumeration of the quadruples.
double delta_partial_sum(u64 B);

// theta'(v1, v2, y1). Throws ToleranceError if the integrals miss tol.
double theta_prime(u64 v1, u64 v2, u64 y1, double tol = 1e-6);

struct BetaEstimate {
    double value = 0.0;
    double tail = 0.0;      // bound on the contribution outside the box
    double quad_error = 0.0;
    u64 cutoff = 0;
};

// Partial sum over v1, v2, y1 <= V.
BetaEstimate beta_constant(u64 V, double tol = 1e-6, unsigned threads = 1);

// Tail bound used by beta_constant, exposed for monotonicity checks.
double beta_tail_bound(u64 V);

}  // namespace delpezzo::arith
