#include "delpezzo/surface.hpp"

#include <cstdlib>
#include <numeric>
#include <vector>

#include "delpezzo/arith.hpp"
#include "delpezzo/error.hpp"
#include "delpezzo/parallel.hpp"

namespace delpezzo::surface {

namespace {

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("eval_forms: 128-bit overflow");
    return r;
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("eval_forms: 128-bit overflow");
    return r;
}

u64 uabs(i64 v) { return v < 0 ? static_cast<u64>(-(v + 1)) + 1 : static_cast<u64>(v); }

u64 gcd5(const Vec5& x) {
    u64 g = 0;
    for (i64 v : x) g = std::gcd(g, uabs(v));
    return g;
}

bool is_singular_vector(const Vec5& x) {
    return x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0 && (x[4] == 1 || x[4] == -1);
}

}  // namespace

FormValues eval_forms(const Vec5& x) {
    FormValues f;
    f.q1 = checked_add(checked_mul(x[0], x[1]), -checked_mul(x[2], x[2]));
    f.q2 = checked_add(checked_add(checked_mul(x[0], x[0]), -checked_mul(x[1], x[4])),
                       checked_mul(x[3], x[3]));
    return f;
}

bool on_surface(const Vec5& x) {
    auto f = eval_forms(x);
    return f.q1 == 0 && f.q2 == 0;
}

SurfacePoint canonical_rep(const Vec5& x) {
    u64 g = gcd5(x);
    if (g == 0) throw InvalidPointError("canonical_rep: zero vector");
    SurfacePoint p;
    int sign = 0;
    for (i64 v : x)
        if (v != 0) {
            sign = v > 0 ? 1 : -1;
            break;
        }
    for (int i = 0; i < 5; ++i) {
        i64 q = x[i] / static_cast<i64>(g);
        p.x[i] = sign > 0 ? q : -q;
    }
    return p;
}

u64 height(const SurfacePoint& p) {
    u64 h = 0;
    for (i64 v : p.x) h = std::max(h, uabs(v));
    if (on_surface(p.x) && h != std::max(uabs(p.x[1]), uabs(p.x[4])))
        throw InternalError("height: max coordinate is not attained at x1 or x4");
    return h;
}

PointClass classify(const SurfacePoint& p) {
    if (!on_surface(p.x)) return PointClass::off_surface;
    if (is_singular_vector(p.x)) return PointClass::on_line;
    return PointClass::on_U;
}

std::string to_string(PointClass c) {
    switch (c) {
        case PointClass::on_U: return "on_U";
        case PointClass::on_line: return "on_line";
        case PointClass::off_surface: return "off_surface";
    }
    return "?";
}

CountBreakdown count_naive(u64 B) {
    if (B == 0) throw SizeError("count_naive: B must be positive");
    if (B > kNaiveCap) throw SizeError("count_naive: B above cap " + std::to_string(kNaiveCap));
    const i64 b = static_cast<i64>(B);
    CountBreakdown out;
    out.B = B;
    u64 vectors_on_U = 0;
    for (i64 x0 = -b; x0 <= b; ++x0)
        for (i64 x1 = -b; x1 <= b; ++x1)
            for (i64 x2 = -b; x2 <= b; ++x2) {
                if (x0 * x1 != x2 * x2) continue;
                for (i64 x3 = -b; x3 <= b; ++x3)
                    for (i64 x4 = -b; x4 <= b; ++x4) {
                        Vec5 x{x0, x1, x2, x3, x4};
                        if (!on_surface(x) || gcd5(x) != 1) continue;
                        if (is_singular_vector(x)) continue;
                        ++vectors_on_U;
                        bool all_nonzero = x0 && x1 && x2 && x3 && x4;
                        if (all_nonzero) {
                            ++out.s_total;
                            if (x2 > 0 && x3 > 0) ++out.s_pp;
                            if (x0 > 0 && x1 > 0 && x2 > 0 && x3 > 0 && x4 > 0) ++out.n_pos;
                        } else {
                            ++out.z_degenerate;
                        }
                        if (canonical_rep(x).x == x) ++out.n_UH;
                    }
            }
    if (vectors_on_U != 2 * out.n_UH) throw InternalError("count_naive: vectors not paired by sign");
    return out;
}

namespace {

// Points with fixed (z2, z1), all z0.
template <class Visit>
void oracle_block(u64 B, u64 z2, u64 z1, Visit&& visit) {
    const u64 x1 = z1 * z1 * z2;
    for (u64 z0 = 1; z0 * z0 * z2 < B; ++z0) {
        if (std::gcd(z0, z1) != 1) continue;
        const u64 x0 = z0 * z0 * z2;
        const u64 x2 = z0 * z1 * z2;
        const u128 x0sq = static_cast<u128>(x0) * x0;
        const u128 cap = static_cast<u128>(B) * x1;  // x0^2 + x3^2 = x1 x4 <= B x1
        const u64 g012 = std::gcd(std::gcd(x0, x1), x2);
        for (u64 x3 = 1;; ++x3) {
            u128 s = x0sq + static_cast<u128>(x3) * x3;
            if (s > cap) break;
            if (s % x1) continue;
            u64 x4 = static_cast<u64>(s / x1);
            if (std::gcd(std::gcd(g012, x3), x4) != 1) continue;
            visit(x0, x1, x2, x3, x4);
        }
    }
}

}  // namespace

u64 count_positive_oracle(u64 B, unsigned threads) {
    if (B == 0) throw SizeError("count_positive_oracle: B must be positive");
    if (B > kOracleCap) throw SizeError("count_positive_oracle: B above cap");
    std::vector<std::pair<u64, u64>> units;
    for (u64 z2 = 1; z2 <= B; ++z2)
        for (u64 z1 = 1; z1 * z1 * z2 <= B; ++z1) units.emplace_back(z2, z1);
    std::vector<u64> counts(units.size(), 0);
    parallel::for_each_dynamic(units.size(), threads, [&](std::size_t i, unsigned) {
        u64 c = 0;
        oracle_block(B, units[i].first, units[i].second, [&](u64, u64, u64, u64, u64) { ++c; });
        counts[i] = c;
    });
    return std::accumulate(counts.begin(), counts.end(), u64{0});
}

void enumerate_positive_oracle(u64 B, const std::function<void(const Vec5&)>& visit) {
    if (B == 0) throw SizeError("enumerate_positive_oracle: B must be positive");
    if (B > kOracleCap) throw SizeError("enumerate_positive_oracle: B above cap");
    for (u64 z2 = 1; z2 <= B; ++z2)
        for (u64 z1 = 1; z1 * z1 * z2 <= B; ++z1)
            oracle_block(B, z2, z1, [&](u64 a, u64 b, u64 c, u64 d, u64 e) {
                visit(Vec5{static_cast<i64>(a), static_cast<i64>(b), static_cast<i64>(c),
                           static_cast<i64>(d), static_cast<i64>(e)});
            });
}

u64 coprime_pairs(u64 n) {
    if (n == 0) return 0;
    // sum_d mu(d) floor(n/d)^2 with a linear Mobius sieve
    std::vector<int> mu(n + 1, 1);
    std::vector<bool> composite(n + 1, false);
    std::vector<u64> ps;
    mu[1] = 1;
    for (u64 i = 2; i <= n; ++i) {
        if (!composite[i]) {
            ps.push_back(i);
            mu[i] = -1;
        }
        for (u64 p : ps) {
            if (i * p > n) break;
            composite[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    i64 s = 0;
    for (u64 d = 1; d <= n; ++d) {
        if (!mu[d]) continue;
        i64 q = static_cast<i64>(n / d);
        s += mu[d] * q * q;
    }
    return static_cast<u64>(s);
}

DegenerateCount count_degenerate(u64 B) {
    if (B == 0) throw SizeError("count_degenerate: B must be positive");
    if (B > kDegenerateCap) throw SizeError("count_degenerate: B above cap");
    DegenerateCount d;
    d.B = B;
    d.axis = 2;
    // conic: a^2 <= B and b^2 <= B
    d.conic = 4 * coprime_pairs(arith::isqrt(B));
    // x3 = 0: a^4 <= B and b^4 <= B
    d.x3_zero = 4 * coprime_pairs(arith::isqrt(arith::isqrt(B)));
    d.vectors = d.axis + d.conic + d.x3_zero;
    d.ratio = static_cast<double>(d.vectors) / 2.0 / static_cast<double>(B);
    return d;
}

u64 count_degenerate_search(u64 B) {
    if (B == 0) throw SizeError("count_degenerate_search: B must be positive");
    u64 total = 2;  // +-(0,1,0,0,0)
    // x0 = x2 = 0, x3 != 0: x3^2 = x1 x4 with x1, x4 of equal sign
    for (u64 x1 = 1; x1 <= B; ++x1)
        for (u64 x4 = 1; x4 <= B; ++x4) {
            u64 s = arith::isqrt(x1 * x4);
            if (s * s != x1 * x4) continue;
            if (std::gcd(std::gcd(x1, x4), s) != 1) continue;
            total += 4;
        }
    // x3 = 0, x0 != 0: x2^2 = x0 x1 and x0^2 = x1 x4
    for (u64 x0 = 1; x0 <= B; ++x0)
        for (u64 x2 = 1; x2 <= B; ++x2) {
            u64 sq = x2 * x2;
            if (sq % x0) continue;
            u64 x1 = sq / x0;
            if (x1 > B || (x0 * x0) % x1) continue;
            u64 x4 = x0 * x0 / x1;
            if (x4 > B) continue;
            if (std::gcd(std::gcd(x0, x1), std::gcd(x2, x4)) != 1) continue;
            total += 4;
        }
    return total;
}

}  // namespace delpezzo::surface
