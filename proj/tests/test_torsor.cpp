#include <doctest.h>

#include <cmath>
#include <vector>

#include "delpezzo/error.hpp"
#include "delpezzo/surface.hpp"
#include "delpezzo/torsor.hpp"

using namespace delpezzo;
using namespace delpezzo::torsor;
using surface::SurfacePoint;
using surface::Vec5;

namespace {

Violation violation_of(const std::array<u64, 7>& t) {
    try {
        validate(t);
    } catch (const TorsorValidationError& e) {
        return e.violation();
    }
    FAIL("expected a validation error");
    return Violation::equation;
}

}  // namespace

TEST_SUITE("torsor") {

TEST_CASE("validate") {
    CHECK(validate({1, 1, 1, 1, 1, 1, 2}) == TorsorPoint{1, 1, 1, 1, 1, 1, 2});
    CHECK(validate({1, 1, 1, 1, 1, 2, 5}) == TorsorPoint{1, 1, 1, 1, 1, 2, 5});
    CHECK(validate({1, 2, 1, 1, 1, 1, 1}) == TorsorPoint{1, 2, 1, 1, 1, 1, 1});
    CHECK(violation_of({1, 4, 1, 1, 1, 1, 2}) == Violation::squarefree);
    CHECK(violation_of({1, 1, 1, 1, 1, 1, 3}) == Violation::equation);
    // y0^4 y2^2 + y3^2 = 4 + 4 = 8 = v2 y1^2 y4 with y4 = 8, gcd(y3, y1 y2) = 2
    CHECK(violation_of({1, 1, 1, 1, 2, 2, 8}) == Violation::coprimality);
}

TEST_CASE("to_surface") {
    CHECK(to_surface({1, 1, 1, 1, 1, 1, 2}).x == Vec5{1, 1, 1, 1, 2});
    CHECK(to_surface({1, 1, 1, 1, 1, 2, 5}).x == Vec5{1, 1, 1, 2, 5});
    CHECK(to_surface({1, 2, 1, 1, 1, 1, 1}).x == Vec5{2, 8, 4, 2, 1});
}

TEST_CASE("from_surface") {
    CHECK(from_surface(SurfacePoint{{1, 1, 1, 1, 2}}) == TorsorPoint{1, 1, 1, 1, 1, 1, 2});
    CHECK(from_surface(SurfacePoint{{1, 1, 1, 2, 5}}) == TorsorPoint{1, 1, 1, 1, 1, 2, 5});
    CHECK(from_surface(SurfacePoint{{2, 8, 4, 2, 1}}) == TorsorPoint{1, 2, 1, 1, 1, 1, 1});
    CHECK_THROWS_AS(from_surface(SurfacePoint{{1, 1, 1, 1, 1}}), NotInDomainError);
    CHECK_THROWS_AS(from_surface(SurfacePoint{{0, 1, 0, 1, 1}}), NotInDomainError);
    CHECK_THROWS_AS(from_surface(SurfacePoint{{2, 2, 2, 2, 4}}), NotInDomainError);
}

TEST_CASE("count_torsor small bounds") {
    CHECK(count_torsor(1) == 0);
    CHECK(count_torsor(2) == 1);
    CHECK(count_torsor(10) == 7);
    CHECK(count_torsor(100) == 135);
    CHECK(count_torsor(300) == 565);
    CHECK_THROWS_AS(count_torsor(0), SizeError);
    CHECK_THROWS_AS(count_torsor(kTorsorCap + 1), SizeError);
}

TEST_CASE("count_torsor matches the oracle") {
    for (u64 B : {3u, 7u, 50u, 250u, 1000u, 3000u}) {
        CAPTURE(B);
        CHECK(count_torsor(B) == surface::count_positive_oracle(B));
    }
}

TEST_CASE("count_torsor independent of thread count") {
    u64 one = count_torsor(200000, 1);
    CHECK(count_torsor(200000, 3) == one);
    CHECK(count_torsor(200000, 8) == one);
    auto s1 = count_torsor_stats(50000, 1);
    auto s4 = count_torsor_stats(50000, 4);
    CHECK(s1.count == s4.count);
    CHECK(s1.candidates == s4.candidates);
    CHECK(s1.rejected_gcd_y3 == s4.rejected_gcd_y3);
    CHECK(s1.rejected_gcd_y4 == s4.rejected_gcd_y4);
    CHECK(s1.candidates == s1.count + s1.rejected_gcd_y3 + s1.rejected_gcd_y4);
}

TEST_CASE("enumerate_torsor") {
    std::vector<TorsorPoint> pts;
    enumerate_torsor(2, [&](const TorsorPoint& t) {
        pts.push_back(t);
        return true;
    });
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == TorsorPoint{1, 1, 1, 1, 1, 1, 2});

    u64 n = 0;
    enumerate_torsor(1, [&](const TorsorPoint&) { return ++n, true; });
    CHECK(n == 0);

    pts.clear();
    enumerate_torsor(1000, [&](const TorsorPoint& t) {
        pts.push_back(t);
        return true;
    });
    CHECK(pts.size() == count_torsor(1000));
    auto key = [](const TorsorPoint& t) { return std::array<u64, 6>{t.v1, t.v2, t.y1, t.y2, t.y0, t.y3}; };
    bool ordered = true;
    for (std::size_t i = 1; i < pts.size(); ++i) ordered = ordered && key(pts[i - 1]) < key(pts[i]);
    CHECK(ordered);

    n = 0;
    enumerate_torsor(1000, [&](const TorsorPoint&) { return ++n < 5; });
    CHECK(n == 5);
}

TEST_CASE("round trips and height equivalence") {
    const u64 B = 1000;
    u64 n = 0;
    enumerate_torsor(B, [&](const TorsorPoint& t) {
        ++n;
        CHECK(validate(t.tuple()) == t);
        auto p = to_surface(t);
        REQUIRE(from_surface(p) == t);
        double lhs = std::pow(double(t.y0), 4) * double(t.y2) * double(t.y2) + double(t.y3) * double(t.y3);
        CHECK(lhs <= double(B) * double(t.v2) * double(t.y1) * double(t.y1));
        CHECK(surface::height(p) <= B);
        return true;
    });
    CHECK(n == 2214);
    surface::enumerate_positive_oracle(B, [&](const Vec5& x) {
        SurfacePoint p{x};
        REQUIRE(to_surface(from_surface(p)) == p);
    });
}

TEST_CASE("bounds") {
    auto b = bounds(100, 1, 1, 1, 1);
    CHECK(b.admissible);
    CHECK(b.Y0 == doctest::Approx(std::pow(100.0, 0.25)));
    CHECK(b.Y2 == doctest::Approx(10.0));
    CHECK_FALSE(bounds(100, 2, 2, 1, 1).admissible);
    CHECK(Y3(100, 1, 1, 1, 1) == doctest::Approx(std::sqrt(99.0)));
}

}
