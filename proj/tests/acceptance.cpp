// Acceptance runner: one PASS/FAIL line per criterion.
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "delpezzo/arith.hpp"
#include "delpezzo/constants.hpp"
#include "delpezzo/report.hpp"
#include "delpezzo/surface.hpp"
#include "delpezzo/torsor.hpp"
#include "delpezzo/zeta.hpp"

using namespace delpezzo;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back((ok ? "ok: " : "FAILED: ") + what);
    }
};

std::string fmt(double v) { return report::format_double(v); }

Outcome bijection(unsigned threads) {
    Outcome o;
    auto t0 = Clock::now();
    for (u64 B : {1u, 2u, 10u, 100u, 1000u, 10000u}) {
        u64 a = torsor::count_torsor(B, threads), b = surface::count_positive_oracle(B, threads);
        o.require(a == b, "B=" + std::to_string(B) + " torsor " + std::to_string(a) + " oracle " + std::to_string(b));
    }
    u64 bad = 0, n = 0;
    torsor::enumerate_torsor(1000, [&](const torsor::TorsorPoint& t) {
        ++n;
        if (torsor::from_surface(torsor::to_surface(t)) != t) ++bad;
        return true;
    });
    o.require(bad == 0, "torsor round trip at B=1000 over " + std::to_string(n) + " points");
    bad = n = 0;
    surface::enumerate_positive_oracle(1000, [&](const surface::Vec5& x) {
        ++n;
        surface::SurfacePoint p{x};
        if (torsor::to_surface(torsor::from_surface(p)) != p) ++bad;
    });
    o.require(bad == 0, "surface round trip at B=1000 over " + std::to_string(n) + " points");
    double dt = seconds_since(t0);
    o.require(dt < 300, "runtime " + fmt(dt) + " s < 300 s");
    return o;
}

Outcome reduction(unsigned) {
    Outcome o;
    bool ok = true;
    for (u64 B = 1; B <= 20; ++B) {
        auto c = surface::count_naive(B);
        ok = ok && c.s_total == 4 * c.s_pp && c.s_pp == 2 * c.n_pos && 2 * c.n_UH == c.s_total + c.z_degenerate;
    }
    o.require(ok, "s_total = 4 s_pp, s_pp = 2 n_pos, n_UH = (s_total + z)/2 for B = 1..20");
    o.require(surface::count_naive(1).n_UH == 5, "N_UH(1) = 5");
    return o;
}

Outcome densities(unsigned threads) {
    Outcome o;
    using constants::DensityMode;
    o.require(constants::omega_p_closed(2) == arith::Rational(5, 2), "omega_2 = 5/2");
    o.require(constants::omega_p_closed(3) == arith::Rational(16, 9), "omega_3 = 16/9");
    o.require(constants::omega_p_closed(5) == arith::Rational(56, 25), "omega_5 = 56/25");
    struct Case {
        u64 p;
        unsigned r;
    };
    for (DensityMode mode : {DensityMode::lifting, DensityMode::naive}) {
        const char* name = mode == DensityMode::naive ? "naive" : "lifting";
        auto t0 = Clock::now();
        for (Case k : {Case{2, 5}, Case{3, 3}, Case{5, 2}, Case{7, 2}}) {
            double closed = boost::rational_cast<double>(constants::omega_p_closed(k.p));
            std::vector<double> errs;
            std::string seq;
            for (unsigned r = 1; r <= k.r; ++r) {
                auto d = constants::local_density_brute(k.p, r, mode, threads);
                errs.push_back(std::fabs(d.estimate - closed));
                seq += (r > 1 ? " " : "") + fmt(d.estimate);
            }
            bool mono = true;
            for (std::size_t i = 1; i < errs.size(); ++i) mono = mono && errs[i] <= errs[i - 1];
            std::string tag = std::string(name) + " p=" + std::to_string(k.p) + " r<=" + std::to_string(k.r) +
                              " estimates [" + seq + "] vs " + fmt(closed);
            o.require(errs.back() <= 0.08, tag + ": |error| " + fmt(errs.back()) + " <= 0.08");
            o.require(mono, tag + ": error non-increasing in r");
        }
        double dt = seconds_since(t0);
        double limit = mode == DensityMode::naive ? 600 : 60;
        o.require(dt < limit, std::string(name) + " runtime " + fmt(dt) + " s < " + fmt(limit) + " s");
    }
    return o;
}

Outcome constants_check(unsigned) {
    Outcome o;
    o.require(constants::simplex_alpha() == arith::Rational(1, 288), "alpha = 1/288");
    const double beta_identity = std::tgamma(1.25) * std::tgamma(0.5) / (2.0 * std::tgamma(1.75));
    auto c = constants::quad_c(1e-10);
    o.require(std::fabs(c.value - beta_identity) <= 1e-10,
              "|c - Gamma(5/4)Gamma(1/2)/(2Gamma(7/4))| = " + fmt(std::fabs(c.value - beta_identity)));
    auto w = constants::quad_omega_inf(1e-10);
    auto tau = constants::tau_product(1000000);
    constants::Valued cv{c.value, c.error}, wv{w.value, w.error}, tv{tau.tau, tau.tail};
    auto lead = constants::leading_coefficient(cv, tv);
    auto peyre = boost::rational_cast<double>(constants::simplex_alpha()) * constants::tau_H(wv, tv).value;
    double rel = std::fabs(lead.value - peyre) / peyre;
    o.require(rel <= 1e-6, "leading coefficient vs alpha tau_H relative difference " + fmt(rel));
    auto t4 = constants::tau_product(10000);
    double d = std::fabs(t4.tau - tau.tau);
    o.require(d <= t4.tail, "|tau(1e4) - tau(1e6)| = " + fmt(d) + " <= tail " + fmt(t4.tail));
    return o;
}

Outcome series(unsigned) {
    Outcome o;
    auto h = zeta::H_at_zero(1000000);
    auto t = constants::tau_product(1000000);
    o.require(std::fabs(h.value - t.tau) <= 1e-6, "|H(0) - tau| = " + fmt(std::fabs(h.value - t.tau)));
    for (u64 p : {2u, 3u, 5u}) {
        double g = std::fabs(zeta::Dp_factor(p, 2.0) - zeta::Dp_direct(p, 2.0, 60));
        o.require(g <= 1e-8, "D_" + std::to_string(p) + "(2) vs direct sum " + fmt(g));
    }
    const double pi = std::numbers::pi;
    double e1 = std::fabs(zeta::zeta_real(2).value - pi * pi / 6);
    double e2 = std::fabs(zeta::l_chi_real(1).value - pi / 4);
    double e3 = std::fabs(zeta::l_chi_real(3).value - pi * pi * pi / 32);
    o.require(e1 <= 1e-10, "zeta(2) error " + fmt(e1));
    o.require(e2 <= 1e-10, "L(1,chi) error " + fmt(e2));
    o.require(e3 <= 1e-10, "L(3,chi) error " + fmt(e3));
    auto c = constants::quad_c(1e-10);
    auto g = zeta::G1_at_one(c.value, c.error, 1000000);
    o.require(g.value > 0, "G1(1) = " + fmt(g.value) + " > 0");
    return o;
}

Outcome arithmetic(unsigned) {
    Outcome o;
    std::mt19937_64 rng(20261016);
    bool ok = true;
    for (u64 q = 1; q <= 10000 && ok; ++q) {
        u64 n = 0;
        for (u64 r = 0; r < q; ++r)
            if ((r * r + 1) % q == 0) ++n;
        ok = n == arith::eta(q) && arith::sqrt_minus_one(q).size() == n;
    }
    o.require(ok, "eta equals brute force for q <= 10^4");

    std::uniform_int_distribution<u64> ab(1, 1000000);
    ok = true;
    for (int i = 0; i < 10000;) {
        u64 a = ab(rng), b = ab(rng);
        if (std::gcd(a, b) != 1) continue;
        ++i;
        ok = ok && arith::eta(a * b) == arith::eta(a) * arith::eta(b);
    }
    o.require(ok, "eta multiplicative on 10^4 random coprime pairs");

    ok = true;
    std::vector<i64> sum(10001, 0);
    for (u64 d = 1; d <= 10000; ++d) {
        i64 w = std::abs(arith::mobius(d)) * arith::chi(static_cast<i64>(d));
        for (u64 m = d; m <= 10000; m += d) sum[m] += w;
    }
    for (u64 q = 1; q <= 10000; ++q)
        ok = ok && static_cast<i64>(arith::eta(q)) <= sum[q] && sum[q] <= (i64{1} << arith::omega(q));
    o.require(ok, "eta(q) <= sum |mu(d)| chi(d) <= 2^omega(q) for q <= 10^4");

    ok = true;
    for (u64 a = 1; a <= 30 && ok; ++a)
        for (u64 b = 1; b <= 30 && ok; ++b)
            for (u64 c = 1; c <= 30 && ok; ++c)
                for (u64 d = 1; d <= 30 && ok; ++d) {
                    arith::ThetaInputs in{a, b, c, d};
                    ok = arith::theta(in) == arith::theta_mobius(in);
                }
    o.require(ok, "theta closed form equals the Mobius sum for inputs <= 30");

    std::uniform_real_distribution<double> tdist(0.0, 1e6);
    std::uniform_int_distribution<i64> qdist(1, 10000), adist(-1000000, 1000000);
    ok = true;
    for (int i = 0; i < 100000; ++i) {
        double t = tdist(rng);
        i64 q = qdist(rng), a = adist(rng);
        auto r = arith::progression_count_and_remainder(t, a, q);
        i64 direct = static_cast<i64>(std::floor((t - a) / q)) - static_cast<i64>(std::floor(-static_cast<double>(a) / q));
        ok = ok && r.count == direct && std::fabs(t / q + r.remainder - r.count) <= 1e-12 * std::max(1.0, t / q);
    }
    o.require(ok, "progression count identity on 10^5 random triples");

    std::uniform_int_distribution<u64> qd(2, 1000000);
    ok = true;
    for (int i = 0; i < 1000;) {
        u64 q = qd(rng);
        auto roots = arith::sqrt_minus_one(q);
        if (roots.empty()) continue;
        ++i;
        std::uniform_int_distribution<i64> bd(1, static_cast<i64>(q));
        for (u64 rho : roots) {
            i64 b = bd(rng) * (rng() & 1 ? 1 : -1);
            auto r = arith::dirichlet_approx(b, static_cast<i64>(q), static_cast<i64>(rho));
            // exact: |b rho v - u q| <= q / sqrt(2q) and the range of v
            i128 num = static_cast<i128>(b) * static_cast<i128>(rho) * r.v - static_cast<i128>(r.u) * q;
            double diff = std::fabs(static_cast<double>(num));
            double qd2 = static_cast<double>(q);
            bool row = diff <= qd2 / std::sqrt(2 * qd2) * (1 + 1e-12) &&
                       r.v >= std::sqrt(qd2 / 2) / std::fabs(static_cast<double>(b)) * (1 - 1e-12) &&
                       r.v <= std::sqrt(2 * qd2) * (1 + 1e-12) && std::gcd(r.u, r.v) == 1;
            ok = ok && row;
        }
    }
    o.require(ok, "Diophantine approximation bounds on 10^3 random moduli, every root");
    return o;
}

Outcome decomposition(unsigned threads) {
    Outcome o;
    auto t0 = Clock::now();
    auto c = constants::quad_c(1e-12);
    auto beta = arith::beta_constant(100, 1e-9, threads);
    auto rows = zeta::sum_all_decomposition({1000, 10000, 100000}, c.value, beta.value, threads);
    report::Table t;
    t.header = {"B", "n_uh", "main_delta", "main_linear", "residual", "residual_scaled"};
    for (const auto& r : rows) t.add({r.B, r.n_uh, r.main_delta, r.main_linear, r.residual, r.residual_scaled});
    std::ostringstream csv;
    report::write_csv(t, csv, false);
    std::cout << csv.str();
    std::size_t arg = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (std::fabs(rows[i].residual_scaled) > std::fabs(rows[arg].residual_scaled)) arg = i;
    o.require(arg + 1 != rows.size(), "max |residual|/B^0.9 at B=" + std::to_string(rows[arg].B) + ", not the largest B");
    double dt = seconds_since(t0);
    o.require(dt < 1200, "runtime " + fmt(dt) + " s < 1200 s");
    return o;
}

Outcome performance(unsigned) {
    Outcome o;
    auto t0 = Clock::now();
    u64 one = torsor::count_torsor(1000000, 1);
    double t1 = seconds_since(t0);
    o.require(t1 < 60, "count_torsor(10^6) = " + std::to_string(one) + " single-threaded in " + fmt(t1) + " s");
    t0 = Clock::now();
    u64 four = torsor::count_torsor(1000000, 4);
    double t4 = seconds_since(t0);
    o.require(four == one, "4-thread count " + std::to_string(four) + " identical");
    double speedup = t1 / t4;
    o.require(speedup >= 3.0, "4-thread speedup " + fmt(speedup) + " >= 3 (hardware threads: " +
                                  std::to_string(std::thread::hardware_concurrency()) + ")");
    return o;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome(unsigned)> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::vector<int> only;
    unsigned threads = 0;
    bool verbose = false;
    app.add_option("--criterion", only, "Criterion number(s) to run (default: all)")->check(CLI::Range(1, 8));
    app.add_option("--threads", threads, "Worker threads for parallel parts (0: all)");
    app.add_flag("-v,--verbose", verbose, "Print every sub-check");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "bijection equivalence", bijection},
        {2, "exact reduction identities", reduction},
        {3, "local densities", densities},
        {4, "constants", constants_check},
        {5, "series layer", series},
        {6, "arithmetic suite", arithmetic},
        {7, "decomposition diagnostic", decomposition},
        {8, "performance", performance},
    };
    int failures = 0;
    for (const auto& c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        auto t0 = Clock::now();
        Outcome out;
        try {
            out = c.run(threads);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        double dt = seconds_since(t0);
        if (!out.pass) ++failures;
        std::printf("criterion %d %s: %s (%.1f s)\n", c.id, out.pass ? "PASS" : "FAIL", c.name, dt);
        for (const auto& n : out.notes)
            if (verbose || !out.pass || n.rfind("FAILED", 0) == 0) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
