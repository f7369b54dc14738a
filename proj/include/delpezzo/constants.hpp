#pragma once

#include <array>
#include <string>
#include <vector>

#include "delpezzo/arith.hpp"
#include "delpezzo/quadrature.hpp"
#include "delpezzo/types.hpp"

namespace delpezzo::constants {

using arith::Rational;
using quad::QuadResult;

// c = integral_0^1 u^{1/4} du / (2 sqrt(1-u)), computed as
// integral_0^1 (1 - w^2)^{1/4} dw on a grid graded towards w = 1.
QuadResult quad_c(double tol);

// omega_inf = 8 integral_0^1 u^{1/4} du / sqrt(1-u) = 16 integral_0^{pi/2} sin^{3/2}
// by tanh-sinh quadrature; independent of quad_c.
QuadResult quad_omega_inf(double tol);

// Volume of {t >= 0 : sum a_i t_i <= 1} = 1 / (n! prod a_i).
Rational simplex_volume(const std::vector<i64>& a);
Rational simplex_alpha();

// Factor of tau at p.
double tau_factor(u64 p);

struct TauResult {
    double tau = 0.0;
    double tail = 0.0;  // |tau - tau_P| bound
    u64 cutoff = 0;
};

// Bound on |log tau_factor(p)| is kTauLogConstant / p^2 for p > 100.
inline constexpr double kTauLogConstant = 20.0;

TauResult tau_product(u64 prime_cutoff);

Rational omega_p_closed(u64 p);

enum class DensityMode { naive, lifting };

struct DensityResult {
    u64 p = 0;
    unsigned r = 0;
    u128 count = 0;         // N(p^r)
    double estimate = 0.0;  // N(p^r) / p^{3r}
    Rational exact;         // same, reduced
};

// Caps: naive needs p^{5r} <= 1e10, lifting p^{3r} <= 1e15.
DensityResult local_density_brute(u64 p, unsigned r, DensityMode mode = DensityMode::lifting,
                                  unsigned threads = 1);

struct Valued {
    double value = 0.0;
    double error = 0.0;
};

// pi^2 omega_inf tau / 16
Valued tau_H(const Valued& omega_inf, const Valued& tau);
// (pi^2 / 576) (2c) tau
Valued leading_coefficient(const Valued& c, const Valued& tau);

// Conic contribution 12/pi^2.
double conic_constant();

struct ConstantBundle {
    Valued c, omega_inf, tau, tau_H, beta, peyre, leading_coeff;
    Rational alpha;
    // c pi^2 tau / 384, reported alongside the leading coefficient
    Valued residue_display;
    u64 prime_cutoff = 0;
    u64 beta_cutoff = 0;
    double quad_tol = 0.0;
};

ConstantBundle compute_bundle(u64 prime_cutoff, double quad_tol, u64 beta_cutoff,
                              unsigned threads = 1);

struct IntersectionData {
    std::array<std::array<i64, 6>, 6> matrix{};
    std::array<i64, 6> anticanonical{};
    std::array<std::string, 6> names{};
    // Galois action on the basis (complex conjugation)
    std::array<int, 6> conjugation{};
    int picard_rank = 0;
};

IntersectionData intersection_data();

struct PicardReport {
    i64 degree = 0;                       // (-K)^2
    std::array<i64, 6> minus_k_dot{};     // (-K).D for each basis element
    bool symmetric = false;
    int orbit_count = 0;
};

// Throws DataIntegrityError when an identity fails.
PicardReport picard_checks();
PicardReport picard_checks(const IntersectionData& d);

}  // namespace delpezzo::constants
