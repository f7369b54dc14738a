#include "delpezzo/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numeric>

#include "delpezzo/arith.hpp"
#include "delpezzo/surface.hpp"
#include "delpezzo/torsor.hpp"
#include "delpezzo/zeta.hpp"

namespace delpezzo::cli {

using report::Cell;
using report::Table;

u64 method_cap(Method m) {
    switch (m) {
        case Method::naive: return surface::kNaiveCap;
        case Method::oracle: return surface::kOracleCap;
        case Method::torsor: return torsor::kTorsorCap;
    }
    return 0;
}

namespace {

struct CommonOpts {
    std::string format = "csv";
    std::string out;
    bool no_timestamp = false;
    unsigned threads = 0;
    bool threads_set = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Output path (stdout if omitted)");
    sub->add_flag("--no-timestamp", o.no_timestamp, "Omit the CSV timestamp comment line");
    sub->add_option("--threads", o.threads, "Worker threads (0: available parallelism)")
        ->check(CLI::NonNegativeNumber)
        ->each([&o](const std::string&) { o.threads_set = true; });
}

template <class T>
bool ascending(const std::vector<T>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i - 1] < v[i])) return false;
    return true;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args, const char* threads_env) {
    CLI::App app{"Rational points of bounded height on x0 x1 = x2^2, x0^2 - x1 x4 + x3^2 = 0"};
    app.name("delpezzo");
    app.require_subcommand(1);
    RunConfig cfg;
    CommonOpts common;
    std::map<std::string, Method> methods{{"naive", Method::naive}, {"oracle", Method::oracle}, {"torsor", Method::torsor}};
    std::map<std::string, constants::DensityMode> modes{{"naive", constants::DensityMode::naive},
                                                        {"lifting", constants::DensityMode::lifting}};

    auto* count = app.add_subcommand("count", "Count points N(Q1,Q2;B) and N_{U,H}(B)");
    count->add_option("--bmax", cfg.bmax, "Height bound B")->check(CLI::PositiveNumber);
    count->add_option("--grid", cfg.grid, "Comma separated ascending list of B")->delimiter(',');
    count->add_option("--method", cfg.method, "naive, oracle or torsor")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    add_common(count, common);

    auto* verify = app.add_subcommand("verify", "Run exact verification suites");
    verify->add_option("--suite", cfg.suite, "bijection, reduction, arithmetic or all")
        ->check(CLI::IsMember({"bijection", "reduction", "arithmetic", "all"}));
    verify->add_option("--bmax", cfg.bmax, "Height bound B")->check(CLI::PositiveNumber)->required();
    add_common(verify, common);

    auto* cons = app.add_subcommand("constants", "Compute the constant bundle");
    cons->add_option("--prime-cutoff", cfg.prime_cutoff, "Euler product cutoff")->check(CLI::Range(u64{100}, u64{100000000}));
    cons->add_option("--quad-tol", cfg.quad_tol, "Quadrature tolerance")->check(CLI::Range(1e-14, 1e-2));
    cons->add_option("--V", cfg.beta_cutoff, "Box size for the beta partial sum")->check(CLI::Range(u64{1}, u64{2000}));
    add_common(cons, common);

    auto* dens = app.add_subcommand("densities", "p-adic densities p^{-3r} N(p^r)");
    dens->add_option("--p", cfg.primes, "Comma separated primes")->delimiter(',')->required();
    dens->add_option("--rmax", cfg.rmax, "Largest r")->check(CLI::Range(1u, 40u));
    dens->add_option("--mode", cfg.mode, "naive or lifting")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    add_common(dens, common);

    auto* zeta = app.add_subcommand("zeta", "Series values at a real argument");
    zeta->add_option("--s", cfg.s, "Real argument")->required();
    zeta->add_option("--p", cfg.primes, "Primes for the Euler factors D_p")->delimiter(',');
    zeta->add_option("--prime-cutoff", cfg.prime_cutoff, "Euler product cutoff")->check(CLI::Range(u64{100}, u64{100000000}));
    add_common(zeta, common);

    auto* dec = app.add_subcommand("decompose", "Exact count against the two main terms");
    dec->add_option("--grid", cfg.grid, "Comma separated ascending list of B")->delimiter(',')->required();
    dec->add_option("--V", cfg.beta_cutoff, "Box size for the beta partial sum")->check(CLI::Range(u64{1}, u64{2000}));
    dec->add_option("--quad-tol", cfg.quad_tol, "Quadrature tolerance")->check(CLI::Range(1e-14, 1e-2));
    add_common(dec, common);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (count->parsed()) cfg.command = Command::count;
    else if (verify->parsed()) cfg.command = Command::verify;
    else if (cons->parsed()) cfg.command = Command::constants;
    else if (dens->parsed()) cfg.command = Command::densities;
    else if (zeta->parsed()) cfg.command = Command::zeta;
    else cfg.command = Command::decompose;

    cfg.format = report::parse_format(common.format);
    cfg.out = common.out;
    cfg.timestamp = !common.no_timestamp;
    if (common.threads_set) {
        cfg.threads = common.threads;
    } else if (threads_env && *threads_env) {
        char* end = nullptr;
        unsigned long v = std::strtoul(threads_env, &end, 10);
        if (*end != '\0' || threads_env[0] == '-') throw UsageError("DELPEZZO_THREADS must be a nonnegative integer");
        cfg.threads = static_cast<unsigned>(v);
    }

    if (cfg.command == Command::count) {
        if (cfg.bmax && !cfg.grid.empty()) throw UsageError("count: give either --bmax or --grid");
        if (!cfg.bmax && cfg.grid.empty()) throw UsageError("count: --bmax or --grid is required");
        if (cfg.grid.empty()) cfg.grid = {cfg.bmax};
    }
    if (!cfg.grid.empty()) {
        if (std::find(cfg.grid.begin(), cfg.grid.end(), 0) != cfg.grid.end())
            throw UsageError("grid entries must be positive");
        if (!ascending(cfg.grid)) throw UsageError("grid must be strictly ascending");
        cfg.bmax = cfg.grid.back();
    }
    for (u64 p : cfg.primes)
        if (!primes::is_prime(p)) throw UsageError("not a prime: " + std::to_string(p));
    return cfg;
}

namespace {

void add_row(Table& t, std::vector<Cell> row) { t.add(std::move(row)); }

std::string method_name(Method m) {
    switch (m) {
        case Method::naive: return "naive";
        case Method::oracle: return "oracle";
        case Method::torsor: return "torsor";
    }
    return "?";
}

Table run_count(const RunConfig& cfg) {
    Table t;
    if (cfg.method == Method::naive) {
        t.header = {"B", "method", "N_pos", "N_UH", "s_total", "s_pp", "z_degenerate"};
        for (u64 B : cfg.grid) {
            auto c = surface::count_naive(B);
            add_row(t, {B, method_name(cfg.method), c.n_pos, c.n_UH, c.s_total, c.s_pp, c.z_degenerate});
        }
        return t;
    }
    t.header = {"B", "method", "N_pos", "N_UH", "z_degenerate"};
    for (u64 B : cfg.grid) {
        u64 n = cfg.method == Method::oracle ? surface::count_positive_oracle(B, cfg.threads)
                                             : torsor::count_torsor(B, cfg.threads);
        u64 z = surface::count_degenerate(B).vectors;
        add_row(t, {B, method_name(cfg.method), n, 4 * n + z / 2, z});
    }
    return t;
}

struct Check {
    std::string name;
    u64 B;
    bool ok;
    std::string detail;
};

void verify_bijection(u64 B, unsigned threads, std::vector<Check>& out) {
    u64 o = surface::count_positive_oracle(B, threads);
    u64 c = torsor::count_torsor(B, threads);
    out.push_back({"count_equality", B, o == c, "oracle=" + std::to_string(o) + " torsor=" + std::to_string(c)});
    u64 bad = 0, seen = 0;
    torsor::enumerate_torsor(B, [&](const torsor::TorsorPoint& t) {
        ++seen;
        if (torsor::from_surface(torsor::to_surface(t)) != t) ++bad;
        return true;
    });
    out.push_back({"torsor_round_trip", B, bad == 0 && seen == c,
                   std::to_string(seen) + " points, " + std::to_string(bad) + " mismatches"});
    bad = 0;
    seen = 0;
    surface::enumerate_positive_oracle(B, [&](const surface::Vec5& x) {
        ++seen;
        surface::SurfacePoint p{x};
        if (torsor::to_surface(torsor::from_surface(p)) != p) ++bad;
    });
    out.push_back({"surface_round_trip", B, bad == 0 && seen == o,
                   std::to_string(seen) + " points, " + std::to_string(bad) + " mismatches"});
}

void verify_reduction(u64 bmax, std::vector<Check>& out) {
    u64 top = std::min<u64>(bmax, 20);
    bool ok = true;
    std::string first_bad;
    for (u64 B = 1; B <= top; ++B) {
        auto c = surface::count_naive(B);
        bool row = c.s_total == 4 * c.s_pp && c.s_pp == 2 * c.n_pos &&
                   2 * c.n_UH == c.s_total + c.z_degenerate;
        if (!row && ok) first_bad = "fails at B=" + std::to_string(B);
        ok = ok && row;
    }
    out.push_back({"reduction_identities", top, ok, ok ? "B=1.." + std::to_string(top) : first_bad});
    auto c1 = surface::count_naive(1);
    out.push_back({"n_UH_at_1", 1, c1.n_UH == 5, "n_UH(1)=" + std::to_string(c1.n_UH)});
}

void verify_arithmetic(u64 bmax, std::vector<Check>& out) {
    u64 top = std::min<u64>(bmax, 10000);
    bool ok = true;
    for (u64 q = 1; q <= top && ok; ++q) {
        u64 brute = 0;
        for (u64 r = 1; r <= q; ++r)
            if ((r * r + 1) % q == 0) ++brute;
        ok = brute == arith::eta(q) && arith::sqrt_minus_one(q).size() == brute;
    }
    out.push_back({"eta_brute_force", top, ok, "q=1.." + std::to_string(top)});
    bool th = true;
    for (u64 a = 1; a <= 12 && th; ++a)
        for (u64 b = 1; b <= 12 && th; ++b)
            for (u64 c = 1; c <= 12 && th; ++c)
                for (u64 d = 1; d <= 12 && th; ++d) {
                    arith::ThetaInputs in{a, b, c, d};
                    th = arith::theta(in) == arith::theta_mobius(in);
                }
    out.push_back({"theta_identity", 12, th, "inputs up to 12"});
}

Table run_verify(const RunConfig& cfg, bool& all_ok) {
    std::vector<Check> checks;
    const std::string& s = cfg.suite;
    if (s == "bijection" || s == "all") {
        if (cfg.bmax > surface::kOracleCap) throw SizeError("verify: bijection suite needs bmax <= 10000");
        verify_bijection(cfg.bmax, cfg.threads, checks);
    }
    if (s == "reduction" || s == "all") verify_reduction(cfg.bmax, checks);
    if (s == "arithmetic" || s == "all") verify_arithmetic(cfg.bmax, checks);
    Table t;
    t.header = {"check", "B", "status", "detail"};
    all_ok = true;
    for (const auto& c : checks) {
        all_ok = all_ok && c.ok;
        add_row(t, {c.name, c.B, std::string(c.ok ? "pass" : "fail"), c.detail});
    }
    return t;
}

Table run_constants(const RunConfig& cfg) {
    auto b = constants::compute_bundle(cfg.prime_cutoff, cfg.quad_tol, cfg.beta_cutoff, cfg.threads);
    Table t;
    t.header = {"name", "value", "error"};
    add_row(t, {std::string("c"), b.c.value, b.c.error});
    add_row(t, {std::string("omega_inf"), b.omega_inf.value, b.omega_inf.error});
    add_row(t, {std::string("alpha"), boost::rational_cast<double>(b.alpha), 0.0});
    add_row(t, {std::string("tau"), b.tau.value, b.tau.error});
    add_row(t, {std::string("tau_H"), b.tau_H.value, b.tau_H.error});
    add_row(t, {std::string("beta"), b.beta.value, b.beta.error});
    add_row(t, {std::string("peyre"), b.peyre.value, b.peyre.error});
    add_row(t, {std::string("leading_coeff"), b.leading_coeff.value, b.leading_coeff.error});
    add_row(t, {std::string("residue_display"), b.residue_display.value, b.residue_display.error});
    add_row(t, {std::string("conic_constant"), constants::conic_constant(), 0.0});
    return t;
}

Table run_densities(const RunConfig& cfg) {
    Table t;
    t.header = {"p", "r", "estimate", "closed_form", "abs_error"};
    for (u64 p : cfg.primes) {
        double closed = boost::rational_cast<double>(constants::omega_p_closed(p));
        for (unsigned r = 1; r <= cfg.rmax; ++r) {
            auto d = constants::local_density_brute(p, r, cfg.mode, cfg.threads);
            add_row(t, {p, static_cast<u64>(r), d.estimate, closed, std::fabs(d.estimate - closed)});
        }
    }
    return t;
}

Table run_zeta(const RunConfig& cfg) {
    Table t;
    t.header = {"function", "argument", "value", "error"};
    const double s = cfg.s;
    if (s > 1.0) {
        auto z = zeta::zeta_real(s);
        add_row(t, {std::string("zeta"), s, z.value, z.error});
    }
    if (s > 0.0) {
        auto l = zeta::l_chi_real(s);
        add_row(t, {std::string("L_chi"), s, l.value, l.error});
    }
    if (s > 1.0) {
        auto e = zeta::E1(s);
        add_row(t, {std::string("E1"), s, e.value, e.error});
    }
    if (s > 8.0 / 9.0) {
        auto e = zeta::E2(s);
        add_row(t, {std::string("E2"), s, e.value, e.error});
    }
    if (s > 0.0)
        for (u64 p : cfg.primes)
            add_row(t, {"D_" + std::to_string(p), s, zeta::Dp_factor(p, s), 0.0});
    auto h = zeta::H_at_zero(cfg.prime_cutoff);
    add_row(t, {std::string("H"), 0.0, h.value, h.error});
    auto c = constants::quad_c(1e-10);
    auto g = zeta::G1_at_one(c.value, c.error, cfg.prime_cutoff);
    add_row(t, {std::string("G1"), 1.0, g.value, g.error});
    return t;
}

Table run_decompose(const RunConfig& cfg) {
    auto c = constants::quad_c(std::max(cfg.quad_tol, 1e-14));
    auto beta = arith::beta_constant(cfg.beta_cutoff, std::max(cfg.quad_tol, 1e-9), cfg.threads);
    auto rows = zeta::sum_all_decomposition(cfg.grid, c.value, beta.value, cfg.threads);
    Table t;
    t.header = {"B", "n_uh", "main_delta", "main_linear", "residual", "residual_scaled"};
    for (const auto& r : rows)
        add_row(t, {r.B, r.n_uh, r.main_delta, r.main_linear, r.residual, r.residual_scaled});
    return t;
}

}  // namespace

int run(const RunConfig& cfg) {
    if ((cfg.command == Command::count) && cfg.bmax > method_cap(cfg.method))
        throw SizeError("bmax " + std::to_string(cfg.bmax) + " above the " + method_name(cfg.method) +
                        " cap " + std::to_string(method_cap(cfg.method)));
    if (cfg.command == Command::decompose && cfg.bmax > torsor::kTorsorCap)
        throw SizeError("decompose: grid above the torsor cap");
    Table t;
    int code = kOk;
    switch (cfg.command) {
        case Command::count: t = run_count(cfg); break;
        case Command::verify: {
            bool ok = true;
            t = run_verify(cfg, ok);
            if (!ok) code = kVerificationFailed;
            break;
        }
        case Command::constants: t = run_constants(cfg); break;
        case Command::densities: t = run_densities(cfg); break;
        case Command::zeta: t = run_zeta(cfg); break;
        case Command::decompose: t = run_decompose(cfg); break;
    }
    report::emit_report(t, cfg.format, cfg.out, cfg.timestamp);
    return code;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunConfig cfg;
    try {
        cfg = parse_args(args, std::getenv("DELPEZZO_THREADS"));
    } catch (const HelpRequested& h) {
        std::cout << h.what();
        return kOk;
    } catch (const Error& e) {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
        return kUsage;
    }
    try {
        return run(cfg);
    } catch (const SizeError& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace delpezzo::cli
