#include "delpezzo/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <string>

#include "delpezzo/error.hpp"
#include "delpezzo/parallel.hpp"

namespace delpezzo::quad {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

// Pieces of t = u^{1/4} up to this point are integrated in t; the rest in
// w = sqrt(1 - t^4), which removes the endpoint singularity.
constexpr double kSwitch = 0.9;

// g on a piece where floor(A) = N is fixed, so the trigamma value is shared.
double inner_on_piece(double A, double N, double tri) {
    return 2.0 * A - N - A * A * tri;
}

// sqrt(1 - (k/m)^4) without cancellation near k = m.
double w_of(u64 k, u64 m) {
    double x = static_cast<double>(k) / static_cast<double>(m);
    double one_minus = static_cast<double>(m - k) / static_cast<double>(m);
    return std::sqrt(one_minus * (1.0 + x) * (1.0 + x * x));
}

// K15 on [a, b] against the two-panel K15; the difference bounds the error
// of the finer value. Bisects until the difference meets the target.
template <class F>
void panel(const F& f, double a, double b, double coarse, int depth, double target,
           double& value, double& err) {
    double mid = 0.5 * (a + b);
    double l = GK::integrate(f, a, mid, 0, 0.0);
    double r = GK::integrate(f, mid, b, 0, 0.0);
    double fine = l + r;
    double diff = std::fabs(fine - coarse);
    if (diff <= target || depth == 0) {
        value += fine;
        err += diff;
        return;
    }
    panel(f, a, mid, l, depth - 1, 0.5 * target, value, err);
    panel(f, mid, b, r, depth - 1, 0.5 * target, value, err);
}

template <class F>
void integrate_piece(const F& f, double a, double b, double target, double& value, double& err) {
    if (!(b > a)) return;
    double coarse = GK::integrate(f, a, b, 0, 0.0);
    panel(f, a, b, coarse, 20, target, value, err);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double target) {
    QuadResult r;
    integrate_piece(f, a, b, target, r.value, r.error);
    return r;
}

double fractional_inner(double A) {
    if (A < 0) throw DomainError("fractional_inner: negative argument");
    if (A == 0) return 0.0;
    double N = std::floor(A);
    return inner_on_piece(A, N, boost::math::trigamma(N + 1.0));
}

QuadResult fractional_integral(u64 m, double tol) {
    if (m == 0) return {0.0, 0.0};
    const double md = static_cast<double>(m);
    double total = 0.0, c = 0.0, err = 0.0;
    auto add = [&](double x) {
        // Neumaier summation
        double t = total + x;
        if (std::fabs(total) >= std::fabs(x)) c += (total - t) + x;
        else c += (x - t) + total;
        total = t;
    };
    const double piece_tol = 1e-13;
    const double w_switch = std::sqrt(1.0 - kSwitch * kSwitch * kSwitch * kSwitch);
    for (u64 N = 0; N < m; ++N) {
        double Nd = static_cast<double>(N);
        double tri = boost::math::trigamma(Nd + 1.0);
        double a = Nd / md, b = (Nd + 1.0) / md;
        if (a < kSwitch) {
            auto f = [&](double t) {
                double t3 = t * t * t;
                return 4.0 * t3 * inner_on_piece(md * t, Nd, tri) / std::sqrt(1.0 - t3 * t);
            };
            double v = 0.0;
            integrate_piece(f, a, std::min(b, kSwitch), piece_tol, v, err);
            add(v);
        }
        if (b > kSwitch) {
            auto f = [&](double w) {
                double A = md * std::pow(1.0 - w * w, 0.25);
                // Rounding at the piece ends can push A just outside [N, N+1].
                A = std::min(std::max(A, Nd), Nd + 1.0);
                return 2.0 * inner_on_piece(A, Nd, tri);
            };
            double lo = w_of(N + 1, m);
            double hi = a >= kSwitch ? w_of(N, m) : w_switch;
            double v = 0.0;
            integrate_piece(f, lo, hi, piece_tol, v, err);
            add(v);
        }
    }
    double value = total + c;
    // Floating summation error over the pieces.
    err += 4.0 * static_cast<double>(m) * 1e-16;
    if (!(err <= tol))
        throw ToleranceError("fractional_integral: error " + std::to_string(err) +
                                 " above tolerance for m=" + std::to_string(m),
                             err);
    return {value, err};
}

QuadResult fractional_integral_asymptotic(u64 m) {
    static const double zeta_m32 = boost::math::zeta(-1.5);
    double md = static_cast<double>(m);
    double value = 1.0 + (16.0 / 3.0) * zeta_m32 * std::pow(md, -1.5);
    double err = 0.1 * std::pow(md, -2.5);
    return {value, err};
}

QuadResult fractional_integral_auto(u64 m, double tol) {
    if (m > kAsymptoticFrom) {
        auto r = fractional_integral_asymptotic(m);
        if (r.error > tol)
            throw ToleranceError("fractional_integral_auto: expansion error above tolerance",
                                 r.error);
        return r;
    }
    return fractional_integral(m, tol);
}

FractionalTable::FractionalTable(double tol, unsigned threads)
    : tol_(tol), exact_(kAsymptoticFrom + 1) {
    parallel::for_each_dynamic(kAsymptoticFrom, threads, [&](std::size_t i, unsigned) {
        // largest m first so the long pieces start early
        u64 m = kAsymptoticFrom - i;
        exact_[m] = fractional_integral(m, tol_);
    });
}

QuadResult FractionalTable::operator()(u64 m) const {
    if (m == 0) return {0.0, 0.0};
    if (m <= kAsymptoticFrom) return exact_[m];
    auto r = fractional_integral_asymptotic(m);
    if (r.error > tol_)
        throw ToleranceError("FractionalTable: expansion error above tolerance", r.error);
    return r;
}

}  // namespace delpezzo::quad
