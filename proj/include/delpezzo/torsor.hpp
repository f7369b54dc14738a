#pragma once

#include <array>
#include <functional>
#include <string>

#include "delpezzo/error.hpp"
#include "delpezzo/surface.hpp"
#include "delpezzo/types.hpp"

namespace delpezzo::torsor {

// (v1, v2, y0, y1, y2, y3, y4)
struct TorsorPoint {
    u64 v1 = 1, v2 = 1, y0 = 1, y1 = 1, y2 = 1, y3 = 1, y4 = 1;
    bool operator==(const TorsorPoint&) const = default;
    std::array<u64, 7> tuple() const { return {v1, v2, y0, y1, y2, y3, y4}; }
};

enum class Violation { equation, coprimality, squarefree };
std::string to_string(Violation v);

class TorsorValidationError : public Error {
public:
    TorsorValidationError(Violation v, const std::string& what) : Error(what), violation_(v) {}
    Violation violation() const noexcept { return violation_; }

private:
    Violation violation_;
};

struct TorsorBounds {
    double Y0 = 0.0;
    double Y2 = 0.0;
    bool admissible = false;  // v1^4 v2^3 y1^2 y2^2 <= B
};

TorsorBounds bounds(u64 B, u64 v1, u64 v2, u64 y1, u64 y2);
// sqrt(B v2 y1^2 - y0^4 y2^2), or a negative value when y0 > Y0.
double Y3(u64 B, u64 v2, u64 y0, u64 y1, u64 y2);

// Checks squarefreeness of v2, then the equation, then the gcd system.
TorsorPoint validate(const std::array<u64, 7>& t);

surface::SurfacePoint to_surface(const TorsorPoint& t);
TorsorPoint from_surface(const surface::SurfacePoint& p);

inline constexpr u64 kTorsorCap = 1000000000;

struct CountStats {
    u64 count = 0;
    u64 candidates = 0;          // y3 values reaching the gcd checks
    u64 rejected_gcd_y3 = 0;     // gcd(y3, y1 y2) != 1
    u64 rejected_gcd_y4 = 0;     // gcd(y4, v1 v2 y2) != 1
};

u64 count_torsor(u64 B, unsigned threads = 1);
CountStats count_torsor_stats(u64 B, unsigned threads = 1);

// Visits each point once, lexicographically in (v1, v2, y1, y2, y0, y3).
// Returning false from the visitor stops the enumeration.
void enumerate_torsor(u64 B, const std::function<bool(const TorsorPoint&)>& visit);

}  // namespace delpezzo::torsor
