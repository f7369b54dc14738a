#include "delpezzo/torsor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "delpezzo/arith.hpp"
#include "delpezzo/parallel.hpp"
#include "delpezzo/primes.hpp"

namespace delpezzo::torsor {

using arith::isqrt;
using std::gcd;

namespace {

u128 mul_checked(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("torsor: 128-bit overflow");
    return r;
}

i64 to_i64(u128 v) {
    if (v > static_cast<u128>(INT64_MAX)) throw OverflowError("torsor: coordinate exceeds 64 bits");
    return static_cast<i64>(v);
}

bool squarefree(u64 n) {
    for (auto [p, e] : primes::factorize(n))
        if (e > 1) return false;
    return true;
}

// Quick rejection of q = v2 y1^2 with no square root of -1.
bool eta_nonzero(const primes::Factorization& f) { return arith::eta(f) != 0; }

}  // namespace

std::string to_string(Violation v) {
    switch (v) {
        case Violation::equation: return "equation";
        case Violation::coprimality: return "coprimality";
        case Violation::squarefree: return "squarefree";
    }
    return "?";
}

TorsorBounds bounds(u64 B, u64 v1, u64 v2, u64 y1, u64 y2) {
    TorsorBounds b;
    double Bd = static_cast<double>(B);
    b.Y0 = std::pow(Bd, 0.25) * std::pow(static_cast<double>(v2), 0.25) *
           std::sqrt(static_cast<double>(y1)) / std::sqrt(static_cast<double>(y2));
    b.Y2 = std::sqrt(Bd) / (static_cast<double>(v1) * static_cast<double>(v1) *
                            std::pow(static_cast<double>(v2), 1.5) * static_cast<double>(y1));
    u128 lhs = static_cast<u128>(v1) * v1 * v1 * v1;
    lhs *= static_cast<u128>(v2) * v2 * v2;
    lhs *= static_cast<u128>(y1) * y1;
    lhs *= static_cast<u128>(y2) * y2;
    b.admissible = lhs <= B;
    return b;
}

double Y3(u64 B, u64 v2, u64 y0, u64 y1, u64 y2) {
    long double a = static_cast<long double>(B) * v2 * y1 * y1;
    long double b = static_cast<long double>(y0) * y0 * y0 * y0 * y2 * y2;
    long double d = a - b;
    return d < 0 ? -1.0 : static_cast<double>(std::sqrt(d));
}

TorsorPoint validate(const std::array<u64, 7>& t) {
    for (u64 v : t)
        if (v == 0) throw TorsorValidationError(Violation::equation, "validate: entries must be positive");
    TorsorPoint p{t[0], t[1], t[2], t[3], t[4], t[5], t[6]};
    if (!squarefree(p.v2))
        throw TorsorValidationError(Violation::squarefree, "validate: v2 is not squarefree");
    u128 y0sq = mul_checked(p.y0, p.y0);
    u128 lhs = mul_checked(mul_checked(y0sq, y0sq), mul_checked(p.y2, p.y2));
    if (__builtin_add_overflow(lhs, mul_checked(p.y3, p.y3), &lhs))
        throw OverflowError("validate: 128-bit overflow");
    u128 rhs = mul_checked(mul_checked(p.v2, mul_checked(p.y1, p.y1)), p.y4);
    if (lhs != rhs)
        throw TorsorValidationError(Violation::equation, "validate: torsor equation fails");
    u128 v12y1 = mul_checked(mul_checked(p.v1, p.v2), p.y1);
    u128 v12y2 = mul_checked(mul_checked(p.v1, p.v2), p.y2);
    u128 v2y1 = mul_checked(p.v2, p.y1);
    // gcd(a, b) = gcd(a, b mod a) keeps everything in 64 bits
    auto g = [](u64 a, u128 b) { return gcd(a, static_cast<u64>(b % a)); };
    if (g(p.y0, v12y1) != 1)
        throw TorsorValidationError(Violation::coprimality, "validate: gcd(y0, v1 v2 y1) != 1");
    if (g(p.y3, mul_checked(p.y1, p.y2)) != 1)
        throw TorsorValidationError(Violation::coprimality, "validate: gcd(y3, y1 y2) != 1");
    if (g(p.y4, v12y2) != 1)
        throw TorsorValidationError(Violation::coprimality, "validate: gcd(y4, v1 v2 y2) != 1");
    if (g(p.y2, v2y1) != 1)
        throw TorsorValidationError(Violation::coprimality, "validate: gcd(y2, v2 y1) != 1");
    return p;
}

surface::SurfacePoint to_surface(const TorsorPoint& t) {
    u128 v1sq = mul_checked(t.v1, t.v1);
    u128 y2sq = mul_checked(t.y2, t.y2);
    u128 v2 = t.v2;
    surface::Vec5 x;
    x[0] = to_i64(mul_checked(mul_checked(v1sq, v2), mul_checked(mul_checked(t.y0, t.y0), y2sq)));
    x[1] = to_i64(mul_checked(mul_checked(mul_checked(v1sq, v1sq), mul_checked(mul_checked(v2, v2), v2)),
                              mul_checked(mul_checked(t.y1, t.y1), y2sq)));
    x[2] = to_i64(mul_checked(mul_checked(mul_checked(v1sq, t.v1), mul_checked(v2, v2)),
                              mul_checked(mul_checked(t.y0, t.y1), y2sq)));
    x[3] = to_i64(mul_checked(mul_checked(v1sq, v2), mul_checked(t.y2, t.y3)));
    x[4] = to_i64(t.y4);
    if (!surface::on_surface(x)) throw InternalError("to_surface: image is not on the surface");
    surface::SurfacePoint p = surface::canonical_rep(x);
    if (p.x != x) throw InternalError("to_surface: image is not primitive");
    return p;
}

TorsorPoint from_surface(const surface::SurfacePoint& p) {
    for (i64 v : p.x)
        if (v <= 0) throw NotInDomainError("from_surface: coordinates must be positive");
    if (!surface::on_surface(p.x)) throw NotInDomainError("from_surface: point not on the surface");
    if (surface::canonical_rep(p.x).x != p.x) throw NotInDomainError("from_surface: not primitive");
    const u64 x0 = p.x[0], x1 = p.x[1], x3 = p.x[3], x4 = p.x[4];
    const u64 z2 = gcd(x0, x1);
    const u64 z0 = isqrt(x0 / z2), z1 = isqrt(x1 / z2);
    if (z0 * z0 * z2 != x0 || z1 * z1 * z2 != x1)
        throw NotInDomainError("from_surface: x0/z2 or x1/z2 is not a square");
    // z2 = v2 y2'^2 with v2 squarefree
    u64 v2 = 1, y2p = 1;
    for (auto [q, e] : primes::factorize(z2)) {
        for (unsigned i = 0; i < e / 2; ++i) y2p *= q;
        if (e % 2) v2 *= q;
    }
    if (x3 % (v2 * y2p)) throw NotInDomainError("from_surface: v2 y2' does not divide x3");
    const u64 y3p = x3 / (v2 * y2p);
    if (z1 % v2) throw NotInDomainError("from_surface: v2 does not divide z1");
    const u64 y1p = z1 / v2;
    const u64 v1 = gcd(y1p, y3p);
    if (y2p % v1) throw NotInDomainError("from_surface: v1 does not divide y2'");
    TorsorPoint t{v1, v2, z0, y1p / v1, y2p / v1, y3p / v1, x4};
    try {
        t = validate(t.tuple());
    } catch (const TorsorValidationError& e) {
        throw NotInDomainError(std::string("from_surface: ") + e.what());
    }
    if (to_surface(t) != p) throw NotInDomainError("from_surface: round trip mismatch");
    return t;
}

namespace {

struct Triple {
    u64 v1, v2, y1, q;
    u64 y2_max;
    std::vector<u64> roots;
};

std::vector<Triple> outer_triples(u64 B) {
    std::vector<Triple> out;
    for (u64 v1 = 1; v1 * v1 * v1 * v1 <= B; ++v1) {
        const u64 a = v1 * v1 * v1 * v1;
        for (u64 v2 = 1; a * v2 * v2 * v2 <= B; ++v2) {
            if (!squarefree(v2)) continue;
            const u64 b = a * v2 * v2 * v2;
            for (u64 y1 = 1; b * y1 * y1 <= B; ++y1) {
                if (y1 % 2 == 0) continue;  // 4 | q forces eta(q) = 0
                const u64 q = v2 * y1 * y1;
                auto f = primes::factorize(q);
                if (!eta_nonzero(f)) continue;
                Triple t{v1, v2, y1, q, isqrt(B / (b * y1 * y1)), arith::sqrt_minus_one(q, f)};
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

// Inner loops over y0 and y3 for fixed (v1, v2, y1, y2). The visitor gets
// (y0, y3, y4) in increasing (y0, y3) order.
template <class Visit>
void inner(u64 B, const Triple& t, u64 y2, std::vector<u64>& residues, CountStats& st, Visit&& visit) {
    const u64 q = t.q;
    const u64 v12y1 = t.v1 * t.v2 * t.y1;
    const u64 v12y2 = t.v1 * t.v2 * y2;
    const u64 y1y2 = t.y1 * y2;
    const u128 Bq = static_cast<u128>(B) * q;
    const u128 y2sq = static_cast<u128>(y2) * y2;
    residues.resize(t.roots.size());
    for (u64 y0 = 1;; ++y0) {
        const u128 y0sq = static_cast<u128>(y0) * y0;
        const u128 a4 = y0sq * y0sq * y2sq;  // y0^4 y2^2
        if (a4 >= Bq) break;                  // y3 >= 1 needs a4 < B q
        if (gcd(y0, v12y1) != 1) continue;
        const u64 Y3max = arith::isqrt128(Bq - a4);
        // y3 = rho y0^2 y2 (mod q) for each root rho
        const u64 a = static_cast<u64>((y0sq % q) * (y2 % q) % q);
        for (std::size_t i = 0; i < t.roots.size(); ++i) residues[i] = arith::mulmod(t.roots[i] % q, a, q);
        std::sort(residues.begin(), residues.end());
        for (u64 base = 0; base <= Y3max; base += q) {
            for (u64 r : residues) {
                const u64 y3 = base + r;
                if (y3 == 0) continue;
                if (y3 > Y3max) break;
                ++st.candidates;
                if (gcd(y3, y1y2) != 1) {
                    ++st.rejected_gcd_y3;
                    continue;
                }
                const u128 s = a4 + static_cast<u128>(y3) * y3;
                const u64 y4 = static_cast<u64>(s / q);
                if (gcd(y4, v12y2) != 1) {
                    ++st.rejected_gcd_y4;
                    continue;
                }
                ++st.count;
                if (!visit(y0, y3, y4)) return;
            }
        }
    }
}

void check_cap(u64 B) {
    if (B == 0) throw SizeError("count_torsor: B must be positive");
    if (B > kTorsorCap) throw SizeError("count_torsor: B above cap");
}

}  // namespace

CountStats count_torsor_stats(u64 B, unsigned threads) {
    check_cap(B);
    std::vector<Triple> triples = outer_triples(B);
    std::vector<std::pair<std::uint32_t, u64>> units;
    for (std::uint32_t i = 0; i < triples.size(); ++i)
        for (u64 y2 = 1; y2 <= triples[i].y2_max; ++y2)
            if (gcd(y2, triples[i].v2 * triples[i].y1) == 1) units.emplace_back(i, y2);
    const unsigned nt = parallel::resolve_threads(threads);
    std::vector<CountStats> per(nt);
    std::vector<std::vector<u64>> scratch(nt);
    parallel::for_each_dynamic(units.size(), nt, [&](std::size_t i, unsigned w) {
        const Triple& t = triples[units[i].first];
        inner(B, t, units[i].second, scratch[w], per[w], [](u64, u64, u64) { return true; });
    });
    CountStats total;
    for (const auto& s : per) {
        total.count += s.count;
        total.candidates += s.candidates;
        total.rejected_gcd_y3 += s.rejected_gcd_y3;
        total.rejected_gcd_y4 += s.rejected_gcd_y4;
    }
    return total;
}

u64 count_torsor(u64 B, unsigned threads) { return count_torsor_stats(B, threads).count; }

void enumerate_torsor(u64 B, const std::function<bool(const TorsorPoint&)>& visit) {
    check_cap(B);
    std::vector<u64> scratch;
    CountStats st;
    // Triples come out ordered by (v1, v2, y1) already.
    for (const Triple& t : outer_triples(B)) {
        for (u64 y2 = 1; y2 <= t.y2_max; ++y2) {
            if (gcd(y2, t.v2 * t.y1) != 1) continue;
            bool stop = false;
            inner(B, t, y2, scratch, st, [&](u64 y0, u64 y3, u64 y4) {
                TorsorPoint p{t.v1, t.v2, y0, t.y1, y2, y3, y4};
                if (!visit(p)) {
                    stop = true;
                    return false;
                }
                return true;
            });
            if (stop) return;
        }
    }
}

}  // namespace delpezzo::torsor
