#pragma once

#include <vector>

#include "delpezzo/types.hpp"

namespace delpezzo::zeta {

struct SeriesEval {
    double s = 0.0;
    double value = 0.0;
    double error = 0.0;
    u64 cutoff = 0;  // terms or prime cutoff used
};

// Euler-Maclaurin with the first omitted correction as error bound; s > 1.
SeriesEval zeta_real(double s, double tol = 1e-13);

// L(s, chi) for the character mod 4, s > 0, by Cohen-Villegas-Zagier
// acceleration of the alternating series.
SeriesEval l_chi_real(double s, double tol = 1e-13);

// Plain alternating partial sums with the first omitted term as bound.
SeriesEval l_chi_alternating(double s, double tol);

// E1(s) = zeta(2x+1)^2 zeta(3x+1) zeta(4x+1) L(2x+1) L(3x+1), x = s - 1 > 0.
SeriesEval E1(double s, double tol = 1e-13);

// E2(s) = zeta(9x+3) L(9x+3) / (zeta(5x+2)^2 zeta(6x+2)^2 L(5x+2) L(6x+2)^2),
// x = s - 1; requires s > 8/9.
SeriesEval E2(double s, double tol = 1e-13);

// Euler factor D_p(s) of D(s) = sum Delta(n) n^{-s}, from the closed
// displays for D_p(x + 1/4) at x = s - 1/4. Requires s > 0.
double Dp_factor(u64 p, double s);

// Truncated direct sum over v1, v2, y1, y2 powers of p with
// v1^4 v2^3 y1^2 y2^2 <= p^max_exponent of the weight
// phi / (v1^{4s} v2^{3s+1/4} y1^{2s+1/2} y2^{2s+1/2}).
double Dp_direct(u64 p, double s, unsigned max_exponent);

// Euler factor of E1(x + 1) at p.
double E1_local(u64 p, double x);

// H_p(x) = D_p(x + 1/4) / E1_p(x + 1).
double H_factor(u64 p, double x);

// Factor of the H(0) product at p: 5/32 for p = 2.
double H0_factor(u64 p);

SeriesEval H_at_zero(u64 prime_cutoff);

struct G1Eval {
    double value = 0.0;
    double error = 0.0;
    double prefactor = 0.0;  // 16 c s / (4s - 3) at s = 1
    double H0 = 0.0;
    double E2_at_1 = 0.0;
};

// 16 c H(0) / E2(1)
G1Eval G1_at_one(double c, double c_err, u64 prime_cutoff);

struct DecompositionRow {
    u64 B = 0;
    u64 n_uh = 0;
    double main_delta = 0.0;   // 4 c B^{3/4} sum_{n <= B} Delta(n)
    double main_linear = 0.0;  // (12/pi^2 + 4 beta) B
    double residual = 0.0;
    double residual_scaled = 0.0;  // residual / B^{0.9}
};

std::vector<DecompositionRow> sum_all_decomposition(const std::vector<u64>& grid, double c,
                                                    double beta, unsigned threads = 1);

}  // namespace delpezzo::zeta
