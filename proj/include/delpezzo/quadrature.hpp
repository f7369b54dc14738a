#pragma once

#include <functional>
#include <vector>

#include "delpezzo/types.hpp"

namespace delpezzo::quad {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

// Integral over [0,1] of {A / sqrt(v)} dv, closed form via the trigamma function.
// Adaptive 15-point Kronrod on [a, b]. Each panel is compared with its two
// halves; the summed differences bound the error of the returned value.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double target);

double fractional_inner(double A);

// I(m) = double integral over [0,1]^2 of {m u^{1/4} / sqrt(v)} du dv / sqrt(1-u).
// Exact pieces between the integer crossings of m u^{1/4}, each by a
// 15-point Gauss-Kronrod rule. Throws ToleranceError if the summed error
// estimate exceeds tol.
QuadResult fractional_integral(u64 m, double tol = 1e-6);

// Large-m expansion 1 + (16/3) zeta(-3/2) m^{-3/2} with a remainder bound.
QuadResult fractional_integral_asymptotic(u64 m);

// Crossover between the piecewise rule and the expansion.
inline constexpr u64 kAsymptoticFrom = 2048;

// Chooses the piecewise rule or the expansion by size of m.
QuadResult fractional_integral_auto(u64 m, double tol = 1e-6);

// Precomputed I(1..kAsymptoticFrom) shared by theta' evaluations.
class FractionalTable {
public:
    explicit FractionalTable(double tol, unsigned threads = 1);
    QuadResult operator()(u64 m) const;
    double tol() const { return tol_; }

private:
    double tol_;
    std::vector<QuadResult> exact_;
};

}  // namespace delpezzo::quad
