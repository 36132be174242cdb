#pragma once

// The half-line operator applied to sampled functions: hypersingular quadrature at
// probe points, a Fourier-multiplier route on the whole grid, the energy form, and
// Riemann-Liouville / Caputo operators.

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "levy_kernel.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace whml {

namespace detail {

// Fornberg finite-difference weights: derivative `order` at z from nodes xs
inline std::vector<double> fd_weights(double z, const std::vector<double>& xs, int order)
{
    const int n = int(xs.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0, c4 = xs[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, order);
        double c2 = 1.0, c5 = c4;
        c4 = xs[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = c[i][order];
    return w;
}

inline constexpr int interp_width = 8;

// local Lagrange interpolation of equispaced samples v at position s (in grid units)
inline double lagrange_local(const double* v, std::size_t n, double s)
{
    const int W = interp_width;
    long i = long(std::floor(s));
    long i0 = std::clamp<long>(i - (W / 2 - 1), 0, long(n) - W);
    double r = s - double(i0);
    // barycentric weights (-1)^j C(7, j)
    static constexpr std::array<double, 8> bw = {1, -7, 21, -35, 35, -21, 7, -1};
    double num = 0.0, den = 0.0;
    for (int j = 0; j < W; ++j) {
        double d = r - j;
        if (d == 0.0)
            return v[i0 + j];
        double q = bw[j] / d;
        num += q * v[i0 + j];
        den += q;
    }
    return num / den;
}

} // namespace detail

class GridFunction {
public:
    GridFunction(std::vector<double> samples, double h) : v_(std::move(samples)), h_(h)
    {
        if (v_.size() < 16)
            fail(errc::domain, "GridFunction needs at least 16 samples");
        if (!(h > 0.0 && std::isfinite(h)))
            fail(errc::domain, "GridFunction spacing must be positive");
        for (double x : v_)
            if (!std::isfinite(x))
                fail(errc::domain, "GridFunction samples must be finite");
    }

    // n samples of f on [0, L]
    template <class F>
    static GridFunction sample(F f, double L, std::size_t n)
    {
        if (n < 16)
            fail(errc::domain, "GridFunction needs at least 16 samples");
        double h = L / double(n - 1);
        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j)
            v[j] = f(h * double(j));
        return GridFunction(std::move(v), h);
    }

    std::size_t size() const { return v_.size(); }
    double h() const { return h_; }
    double length() const { return h_ * double(v_.size() - 1); }
    double x(std::size_t j) const { return h_ * double(j); }
    const std::vector<double>& samples() const { return v_; }
    double operator[](std::size_t j) const { return v_[j]; }

    // local degree-7 interpolant on [0, L], zero outside
    double operator()(double x) const
    {
        if (x < 0.0 || x > length())
            return 0.0;
        return detail::lagrange_local(v_.data(), v_.size(), x / h_);
    }

    // d^order u / dx^order at the nodes, 9-point stencils (one-sided near the ends)
    std::vector<double> derivative_samples(int order) const
    {
        const long n = long(v_.size()), W = 9;
        std::vector<double> out(n);
        // weights depend only on the position of i inside its stencil
        std::vector<double> xs(W);
        for (long j = 0; j < W; ++j)
            xs[j] = double(j);
        std::vector<std::vector<double>> table(W);
        for (long r = 0; r < W; ++r)
            table[r] = detail::fd_weights(double(r), xs, order);
        for (long i = 0; i < n; ++i) {
            long i0 = std::clamp<long>(i - W / 2, 0, n - W);
            const auto& w = table[i - i0];
            double s = 0.0;
            for (long j = 0; j < W; ++j)
                s += w[j] * v_[i0 + j];
            out[i] = s / std::pow(h_, order);
        }
        return out;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (double x : v_)
            m = std::max(m, std::abs(x));
        return m;
    }

    // largest |u| on (L/2, L]
    double max_abs_upper_half() const
    {
        double m = 0.0;
        for (std::size_t j = 0; j < v_.size(); ++j)
            if (2.0 * x(j) > length())
                m = std::max(m, std::abs(v_[j]));
        return m;
    }

    void write(std::ostream& os, const std::string& title = "") const
    {
        char buf[80];
        os << "# x value\n";
        if (!title.empty())
            os << "# " << title << "\n";
        for (std::size_t j = 0; j < v_.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", x(j), v_[j]);
            os << buf;
        }
        if (!os)
            fail(errc::io, "GridFunction write failed");
    }

    static GridFunction read(std::istream& is)
    {
        std::vector<double> xs, vs;
        std::string line;
        while (std::getline(is, line)) {
            auto p = line.find_first_not_of(" \t\r");
            if (p == std::string::npos || line[p] == '#')
                continue;
            std::istringstream ls(line);
            double a, b;
            if (!(ls >> a >> b))
                fail(errc::io, "GridFunction read: malformed line '" + line + "'");
            xs.push_back(a);
            vs.push_back(b);
        }
        if (is.bad())
            fail(errc::io, "GridFunction read failed");
        if (xs.size() < 16)
            fail(errc::domain, "GridFunction read: fewer than 16 samples");
        double h = (xs.back() - xs.front()) / double(xs.size() - 1);
        if (std::abs(xs.front()) > 1e-12 * std::max(1.0, h))
            fail(errc::domain, "GridFunction read: grid must start at 0");
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (std::abs(xs[j] - h * double(j)) > 1e-9 * h * std::max<double>(1.0, double(j)))
                fail(errc::domain, "GridFunction read: grid is not uniform");
        return GridFunction(std::move(vs), h);
    }

private:
    std::vector<double> v_;
    double h_;
};

namespace detail {

inline void require_support(const GridFunction& u, const char* what)
{
    double top = u.max_abs();
    if (u.max_abs_upper_half() > 1e-10 * std::max(top, 1e-300) && top > 0.0)
        fail(errc::domain, std::string(what) + ": u must be supported in [0, L/2]");
}

// int_a^b f(w) dw in Gauss-Legendre panels cut at the given sorted breakpoints;
// panels touching small w are split geometrically
template <class F>
double panel_integral(F f, double a, double b, const std::vector<double>& breaks, double h)
{
    double total = 0.0;
    double lo = a;
    auto it = std::upper_bound(breaks.begin(), breaks.end(), a);
    auto do_panel = [&](double p, double q) {
        if (q <= p)
            return;
        // geometric grading while the panel is long relative to its distance from 0
        while (q > 4.0 * p && q - p > 1e-3 * h) {
            double mid = 2.0 * p;
            total += quad::gl<10>(f, p, mid);
            p = mid;
        }
        total += quad::gl<10>(f, p, q);
    };
    for (; it != breaks.end() && *it < b; ++it) {
        do_panel(lo, *it);
        lo = *it;
    }
    do_panel(lo, b);
    return total;
}

// kernel tail T(x_j) = int_{x_j}^inf m at nodes j >= 1; T(0) is left infinite
inline std::vector<double> kernel_tail_grid(double h, std::size_t n, const KernelParams& k)
{
    std::vector<double> T(n);
    double L = h * double(n - 1);
    T[n - 1] = kernel_tail(L, k);
    auto m = [&](double y) { return kernel_m(y, k); };
    for (std::size_t j = n - 1; j-- > 1;)
        T[j] = T[j + 1] + quad::gl<20>(m, h * double(j), h * double(j + 1));
    T[0] = std::numeric_limits<double>::infinity();
    return T;
}

inline std::mutex& fftw_planner_mutex()
{
    static std::mutex mu;
    return mu;
}

} // namespace detail

// Au(x) via second differences; eps = 0 extrapolates eps -> 0 from eps0, eps0/2, eps0/4
inline double apply_singular(const GridFunction& u, double x, const KernelParams& k, double eps)
{
    const double L = u.length(), h = u.h();
    if (!(x > 0.0 && x < 0.5 * L))
        fail(errc::domain, "apply_singular requires 0 < x < L/2");
    if (!(eps >= 0.0) || eps >= x)
        fail(errc::domain, "apply_singular requires 0 <= eps < x");
    detail::require_support(u, "apply_singular");
    const double a = k.alpha;
    const double ux = u(x);
    // cells of u(x + w) and u(x - w) end where x +- w hits a node
    std::vector<double> breaks;
    double frac = x / h - std::floor(x / h);
    for (double w = (1.0 - frac) * h; w < L - x; w += h)
        breaks.push_back(w);
    for (double w = frac * h; w < x; w += h)
        breaks.push_back(w);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [](double w) { return w <= 0.0; }),
                 breaks.end());
    auto second = [&](double w) {
        if (w <= 0.0)
            return 0.0;
        return (2.0 * ux - u(x + w) - u(x - w)) * kernel_m(w, k);
    };
    auto shifted = [&](double w) { return u(x + w) * kernel_m(w, k); };
    // eps-independent part
    double far = ux - detail::panel_integral(shifted, x, L - x, breaks, h) + ux * kernel_tail(x, k);
    auto near = [&](double e) { return detail::panel_integral(second, e, x, breaks, h); };
    if (eps > 0.0)
        return far + near(eps);
    const double e0 = 0.01 * std::min(1.0, x);
    double I0 = near(e0);
    double I1 = I0 + detail::panel_integral(second, 0.5 * e0, e0, breaks, h);
    double I2 = I1 + detail::panel_integral(second, 0.25 * e0, 0.5 * e0, breaks, h);
    // I(e) = I* + A e^{p1} + B e^{p2}
    const double p1 = 2.0 - 2.0 * a, p2 = std::min(3.0, 4.0 - 2.0 * a);
    const double r1 = std::pow(2.0, p1), r2 = std::pow(2.0, p2);
    // eliminate p1 between consecutive pairs, then p2
    double J1 = (r1 * I1 - I0) / (r1 - 1.0);
    double J2 = (r1 * I2 - I1) / (r1 - 1.0);
    double K = (r2 * J2 - J1) / (r2 - 1.0);
    double scale = std::max({1.0, std::abs(far), std::abs(I2)});
    if (std::abs(K - J2) > 1e-4 * scale)
        fail(errc::accuracy, "apply_singular: eps extrapolation did not settle");
    return far + K;
}

// A e_+ u + u * potential on the whole grid
inline GridFunction apply_fourier(const GridFunction& u, const KernelParams& k)
{
    detail::require_support(u, "apply_fourier");
    const std::size_t n = u.size();
    const double h = u.h();
    const std::size_t M = 2 * (n - 1); // period 2L
    const std::size_t nc = M / 2 + 1;
    double* in = fftw_alloc_real(M);
    fftw_complex* spec = fftw_alloc_complex(nc);
    fftw_plan fwd, bwd;
    {
        std::lock_guard lk(detail::fftw_planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(int(M), in, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(int(M), spec, in, FFTW_ESTIMATE);
    }
    std::fill(in, in + M, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        in[j] = u[j];
    fftw_execute_dft_r2c(fwd, in, spec);
    double e_all = 0.0, e_high = 0.0;
    const double kcut = 0.75 * double(M / 2);
    for (std::size_t q = 0; q < nc; ++q) {
        double w = (q == 0 || 2 * q == M) ? 1.0 : 2.0;
        double e = w * (spec[q][0] * spec[q][0] + spec[q][1] * spec[q][1]);
        e_all += e;
        if (double(q) > kcut)
            e_high += e;
    }
    bool aliased = e_all > 0.0 && e_high > 1e-8 * e_all;
    if (!aliased) {
        for (std::size_t q = 0; q < nc; ++q) {
            double xi = 2.0 * pi * double(q) / (double(M) * h);
            double s = std::pow(1.0 + xi * xi, k.alpha) / double(M);
            spec[q][0] *= s;
            spec[q][1] *= s;
        }
        fftw_execute_dft_c2r(bwd, spec, in);
    }
    std::vector<double> out(n);
    if (!aliased)
        for (std::size_t j = 0; j < n; ++j)
            out[j] = in[j];
    {
        std::lock_guard lk(detail::fftw_planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    fftw_free(in);
    fftw_free(spec);
    if (aliased)
        fail(errc::resolution, "apply_fourier: spectrum above 3/4 Nyquist exceeds 1e-8 of the energy");
    auto T = detail::kernel_tail_grid(h, n, k);
    for (std::size_t j = 1; j < n; ++j)
        out[j] -= u[j] * T[j];
    out[0] = 4.0 * out[1] - 6.0 * out[2] + 4.0 * out[3] - out[4];
    return GridFunction(std::move(out), h);
}

namespace detail {

// end-corrected trapezoid weights (3/8, 7/6, 23/24) for samples 0..N
inline double gregory_weight(std::size_t i, std::size_t N)
{
    if (N < 6)
        return (i == 0 || i == N) ? 0.5 : 1.0;
    std::size_t e = std::min(i, N - i);
    if (e == 0)
        return 3.0 / 8.0;
    if (e == 1)
        return 7.0 / 6.0;
    if (e == 2)
        return 23.0 / 24.0;
    return 1.0;
}

inline double grid_integral(const std::vector<double>& g, double h)
{
    const std::size_t N = g.size() - 1;
    double s = 0.0;
    for (std::size_t i = 0; i <= N; ++i)
        s += gregory_weight(i, N) * g[i];
    return s * h;
}

} // namespace detail

// int u^2 + (1/2) int int |u(x) - u(y)|^2 m(|x - y|) over the quarter plane
inline double quadratic_form(const GridFunction& u, const KernelParams& k)
{
    detail::require_support(u, "quadratic_form");
    const std::size_t n = u.size();
    const double h = u.h();
    const auto& v = u.samples();
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i)
        sq[i] = v[i] * v[i];
    double norm2 = detail::grid_integral(sq, h);
    if (norm2 == 0.0)
        return 0.0;
    // P(w) = D(w)/w^2 at lags w = jh, D(w) = int_0^{L-w} |u(x+w) - u(x)|^2 dx
    std::vector<double> P(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        const std::size_t N = n - 1 - j;
        double s = 0.0;
        for (std::size_t i = 0; i <= N; ++i) {
            double d = v[i + j] - v[i];
            s += detail::gregory_weight(i, N) * d * d;
        }
        double w = h * double(j);
        P[j] = s * h / (w * w);
    }
    // interpolate P on lags 1..n-1
    const double* Pv = P.data() + 1;
    const std::size_t nP = n - 1;
    auto Pw = [&](double w) { return detail::lagrange_local(Pv, nP, w / h - 1.0); };
    auto integrand = [&](double w) {
        if (w < 1e-100)
            return 0.0;
        return kernel_m(w, k) * w * w * Pw(w);
    };
    double jump = quad::ts(integrand, 0.0, h, 1e-12, "quadratic_form first cell").value;
    for (std::size_t j = 1; j + 1 < n; ++j)
        jump += quad::gl<10>(integrand, h * double(j), h * double(j + 1));
    // pairs whose partner lies beyond L, where u vanishes
    auto T = detail::kernel_tail_grid(h, n, k);
    std::vector<double> tail(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = n - 1 - i; // L - x_i = x_r
        tail[i] = r == 0 ? 0.0 : sq[i] * T[r];
    }
    return norm2 + jump + detail::grid_integral(tail, h);
}

namespace detail {

// (1/Gamma(g)) int_0^x (x-y)^{g-1} f(y) dy for f linear between nodes; fx = f(x)
inline double rl_linear(const std::vector<double>& f, double h, double x, double g, double fx)
{
    const std::size_t last = std::min<std::size_t>(std::size_t(std::floor(x / h)), f.size() - 1);
    double total = 0.0;
    auto piece = [&](double ya, double yb, double fa, double fb) {
        double ta = x - ya, tb = x - yb;
        if (ta <= 0.0)
            return;
        tb = std::max(tb, 0.0);
        double d = yb - ya;
        double M0 = (std::pow(ta, g) - std::pow(tb, g)) / g;
        double M1 = (std::pow(ta, g + 1.0) - std::pow(tb, g + 1.0)) / (g + 1.0);
        double slope = (fb - fa) / d;
        total += (fa + slope * ta) * M0 - slope * M1;
    };
    for (std::size_t i = 0; i < last; ++i)
        piece(h * double(i), h * double(i + 1), f[i], f[i + 1]);
    double y0 = h * double(last);
    if (x > y0)
        piece(y0, x, f[last], fx);
    return total / std::tgamma(g);
}

inline double linear_at(const std::vector<double>& f, double h, double x)
{
    double s = x / h;
    std::size_t i = std::min<std::size_t>(std::size_t(std::floor(s)), f.size() - 2);
    double r = s - double(i);
    return f[i] + r * (f[i + 1] - f[i]);
}

} // namespace detail

inline double rl_integral(const GridFunction& u, double x, double gamma)
{
    if (!(x > 0.0 && x < u.length()))
        fail(errc::domain, "rl_integral requires 0 < x < L");
    if (!(gamma > 0.0 && gamma < 2.0))
        fail(errc::domain, "rl_integral requires 0 < gamma < 2");
    return detail::rl_linear(u.samples(), u.h(), x, gamma, u(x));
}

// rl_integral applied to every node, as a new grid (node 0 maps to 0)
inline GridFunction rl_integral_grid(const GridFunction& u, double gamma)
{
    std::vector<double> out(u.size(), 0.0);
    for (std::size_t j = 1; j + 1 < u.size(); ++j)
        out[j] = rl_integral(u, u.x(j), gamma);
    // the last node sits at L; extend by the same product rule
    out.back() = detail::rl_linear(u.samples(), u.h(), u.length(), gamma, u.samples().back());
    return GridFunction(std::move(out), u.h());
}

class CaputoEvaluator {
public:
    CaputoEvaluator(const GridFunction& u, double gamma) : u_(u), g_(gamma)
    {
        if (!(gamma > 0.0 && gamma < 2.0))
            fail(errc::domain, "caputo_derivative requires 0 < gamma < 2");
        order_ = gamma <= 1.0 ? 1 : 2;
        d_ = u.derivative_samples(order_);
        if (gamma == 1.0)
            d2_ = u.derivative_samples(2);
    }

    double operator()(double x) const
    {
        if (!(x > 0.0 && x < u_.length()))
            fail(errc::domain, "caputo_derivative requires 0 < x < L");
        const double h = u_.h();
        if (g_ == 1.0) // u'(x) - u'(0) as the integral of u''
            return detail::rl_linear(d2_, h, x, 1.0, detail::linear_at(d2_, h, x));
        double nu = double(order_) - g_;
        return detail::rl_linear(d_, h, x, nu, detail::linear_at(d_, h, x));
    }

    const std::vector<double>& derivative() const { return d_; }

private:
    const GridFunction& u_;
    double g_;
    int order_;
    std::vector<double> d_, d2_;
};

inline double caputo_derivative(const GridFunction& u, double x, double gamma)
{
    return CaputoEvaluator(u, gamma)(x);
}

// |x^{-2a}(u(x) - u(0)) - int_0^inf K_{2a}(x/y) h(y) dy/y|, h = C^{2a} u
inline double mellin_difference_residual(const GridFunction& u, double x, const KernelParams& k)
{
    const double a = k.alpha, L = u.length();
    if (!(x > 0.0 && x < 0.5 * L))
        fail(errc::domain, "mellin_difference_residual requires 0 < x < L/2");
    if (a >= 0.5) {
        double d0 = u.derivative_samples(1)[0];
        if (std::abs(d0) > 1e-6 * std::max(1.0, u.max_abs()))
            fail(errc::domain, "mellin_difference_residual with alpha >= 1/2 requires u'(0) = 0");
    }
    const double g = 2.0 * a;
    CaputoEvaluator cap(u, g);
    const double lhs = std::pow(x, -g) * (u(x) - u[0]);
    // K(t) = chi_[1,inf)(t) / (Gamma(g) t^g (t-1)^{1-g}), t = x/y >= 1 for y <= x
    const double gg = std::tgamma(g);
    auto f = [&](double y) {
        if (y <= 0.0 || y >= x)
            return 0.0;
        double t = x / y;
        double K = 1.0 / (gg * std::pow(t, g) * std::pow(t - 1.0, 1.0 - g));
        return K * cap(y) / y;
    };
    double rhs = quad::ts(f, 0.0, x, 1e-10, "mellin_difference_residual", 1e-9).value;
    return std::abs(lhs - rhs);
}

} // namespace whml
