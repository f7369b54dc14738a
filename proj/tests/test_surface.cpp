#include <doctest.h>

#include <numbers>

#include "delpezzo/error.hpp"
#include "delpezzo/surface.hpp"

using namespace delpezzo;
using namespace delpezzo::surface;

TEST_SUITE("surface") {

TEST_CASE("eval_forms") {
    auto a = eval_forms({0, 0, 0, 0, 1});
    CHECK(a.q1 == 0);
    CHECK(a.q2 == 0);
    auto b = eval_forms({1, 0, 0, 0, 0});
    CHECK(b.q1 == 0);
    CHECK(b.q2 == 1);
    auto c = eval_forms({1, 1, 1, 1, 2});
    CHECK(c.q1 == 0);
    CHECK(c.q2 == 0);
    // x0^2 - x1 x4 + x3^2 = 3 * 2^126 - 2^63 leaves the 128-bit range
    CHECK_THROWS_AS(eval_forms({INT64_MIN, INT64_MIN, 0, INT64_MIN, INT64_MAX}), OverflowError);
}

TEST_CASE("canonical_rep") {
    CHECK(canonical_rep({2, 2, 2, 2, 4}).x == Vec5{1, 1, 1, 1, 2});
    CHECK(canonical_rep({-1, -1, 1, 0, -1}).x == Vec5{1, 1, -1, 0, 1});
    CHECK(canonical_rep({0, 0, -3, 6, 0}).x == Vec5{0, 0, 1, -2, 0});
    CHECK_THROWS_AS(canonical_rep({0, 0, 0, 0, 0}), InvalidPointError);
}

TEST_CASE("height") {
    CHECK(height(SurfacePoint{{1, 1, 1, 1, 2}}) == 2);
    CHECK(height(SurfacePoint{{0, 0, 0, 0, 1}}) == 1);
    CHECK(on_surface({1, 1, 1, 2, 5}));
    CHECK(height(SurfacePoint{{1, 1, 1, 2, 5}}) == 5);
}

TEST_CASE("classify") {
    CHECK(classify(SurfacePoint{{0, 0, 0, 0, 1}}) == PointClass::on_line);
    CHECK(classify(SurfacePoint{{1, 1, 1, 0, 1}}) == PointClass::on_U);
    CHECK(classify(SurfacePoint{{1, 1, 1, 1, 1}}) == PointClass::off_surface);
    CHECK(to_string(PointClass::on_U) == "on_U");
}

TEST_CASE("count_naive small bounds") {
    auto c1 = count_naive(1);
    CHECK(c1.n_UH == 5);
    CHECK(c1.n_pos == 0);
    CHECK(c1.z_degenerate == 10);
    auto c2 = count_naive(2);
    CHECK(c2.n_pos == 1);
    CHECK(c2.n_UH == 9);
    CHECK_THROWS_AS(count_naive(31), SizeError);
    CHECK_THROWS_AS(count_naive(0), SizeError);
}

TEST_CASE("count_naive identities and monotonicity") {
    u64 prev = 0;
    for (u64 B = 1; B <= 20; ++B) {
        CAPTURE(B);
        auto c = count_naive(B);
        CHECK(c.s_total == 4 * c.s_pp);
        CHECK(c.s_pp == 2 * c.n_pos);
        CHECK(2 * c.n_UH == c.s_total + c.z_degenerate);
        CHECK(c.n_UH >= prev);
        prev = c.n_UH;
        CHECK(count_positive_oracle(B) == c.n_pos);
        CHECK(count_degenerate(B).vectors == c.z_degenerate);
    }
}

TEST_CASE("count_positive_oracle frozen values") {
    // independent brute force over x0, x1, x4 with square tests
    CHECK(count_positive_oracle(1) == 0);
    CHECK(count_positive_oracle(2) == 1);
    CHECK(count_positive_oracle(10) == 7);
    CHECK(count_positive_oracle(100) == 135);
    CHECK(count_positive_oracle(300) == 565);
    CHECK(count_positive_oracle(100, 4) == 135);
    CHECK_THROWS_AS(count_positive_oracle(10001), SizeError);
}

TEST_CASE("height is attained at x1 or x4") {
    u64 seen = 0;
    enumerate_positive_oracle(2000, [&](const Vec5& x) {
        ++seen;
        i64 m = std::max({x[0], x[1], x[2], x[3], x[4]});
        REQUIRE(m == std::max(x[1], x[4]));
    });
    CHECK(seen == count_positive_oracle(2000));
}

TEST_CASE("count_degenerate") {
    CHECK(count_degenerate(1).vectors == 10);
    auto d4 = count_degenerate(4);
    CHECK(d4.vectors == count_degenerate_search(4));
    // (a, b) = (2, 1) gives (0, 4, 0, 2, 1), height 4
    CHECK(d4.conic > count_degenerate(3).conic);
    for (u64 B : {5u, 17u, 100u, 1000u, 5000u}) {
        CAPTURE(B);
        CHECK(count_degenerate(B).vectors == count_degenerate_search(B));
    }
    const double target = 12.0 / (std::numbers::pi * std::numbers::pi);
    double r = count_degenerate(1000000).ratio;
    CHECK(r > target * 0.95);
    CHECK(r < target * 1.05);
}

TEST_CASE("coprime_pairs") {
    CHECK(coprime_pairs(1) == 1);
    CHECK(coprime_pairs(2) == 3);
    CHECK(coprime_pairs(10) == 63);
}

}
