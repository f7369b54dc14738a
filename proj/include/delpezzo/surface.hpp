#pragma once

#include <array>
#include <functional>
#include <string>

#include "delpezzo/types.hpp"

namespace delpezzo::surface {

using Vec5 = std::array<i64, 5>;

// Primitive representative with first nonzero coordinate positive.
struct SurfacePoint {
    Vec5 x{};
    bool operator==(const SurfacePoint&) const = default;
};

struct FormValues {
    i128 q1 = 0;  // x0 x1 - x2^2
    i128 q2 = 0;  // x0^2 - x1 x4 + x3^2
};

FormValues eval_forms(const Vec5& x);
bool on_surface(const Vec5& x);

SurfacePoint canonical_rep(const Vec5& x);

// max_i |x_i|; equal to max(|x1|, |x4|) on the surface.
u64 height(const SurfacePoint& p);

enum class PointClass { on_U, on_line, off_surface };
PointClass classify(const SurfacePoint& p);
std::string to_string(PointClass c);

struct CountBreakdown {
    u64 B = 0;
    u64 n_UH = 0;          // projective points of U with H <= B
    u64 n_pos = 0;         // N(Q1, Q2; B), all coordinates positive
    u64 s_total = 0;       // primitive vectors, all coordinates nonzero
    u64 s_pp = 0;          // ... with x2 > 0 and x3 > 0
    u64 z_degenerate = 0;  // primitive vectors on U with a zero coordinate
};

inline constexpr u64 kNaiveCap = 30;
inline constexpr u64 kOracleCap = 10000;
inline constexpr u64 kDegenerateCap = 100000000;

// Exhaustive scan of [-B, B]^5 (Q1 is checked before the inner two loops).
CountBreakdown count_naive(u64 B);

// N(Q1, Q2; B) from x0 = z0^2 z2, x1 = z1^2 z2, x2 = z0 z1 z2.
u64 count_positive_oracle(u64 B, unsigned threads = 1);
// Same enumeration, visiting each point in order of (z2, z0, z1, x3).
void enumerate_positive_oracle(u64 B, const std::function<void(const Vec5&)>& visit);

struct DegenerateCount {
    u64 B = 0;
    u64 vectors = 0;     // total primitive vectors
    u64 axis = 0;        // +-(0,1,0,0,0)
    u64 conic = 0;       // +-(0, a^2, 0, +-ab, b^2)
    u64 x3_zero = 0;     // +-(a^2 b^2, b^4, +-a b^3, 0, a^4)
    double ratio = 0.0;  // (vectors / 2) / B, tends to 12/pi^2
};

// #{(a, b) in [1, n]^2 : gcd(a, b) = 1}
u64 coprime_pairs(u64 n);

DegenerateCount count_degenerate(u64 B);

// Reference count by scanning x0, x2, x4 for the x3 = 0 family and
// (a, b) pairs for the conic; slow, for tests.
u64 count_degenerate_search(u64 B);

}  // namespace delpezzo::surface
