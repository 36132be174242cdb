#pragma once

// Generalized symbol on the six-segment contour, winding number and exports.

#include <boost/math/tools/minima.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"
#include "specfun.hpp"
#include "symbols.hpp"

namespace whml {

enum class Segment { G1, G2P, G3P, G4, G3M, G2M };

inline constexpr std::array<Segment, 6> all_segments = {Segment::G1,  Segment::G2P, Segment::G3P,
                                                        Segment::G4,  Segment::G3M, Segment::G2M};

inline const char* segment_name(Segment s)
{
    switch (s) {
    case Segment::G1: return "G1";
    case Segment::G2P: return "G2P";
    case Segment::G3P: return "G3P";
    case Segment::G4: return "G4";
    case Segment::G3M: return "G3M";
    case Segment::G2M: return "G2M";
    }
    return "?";
}

// One summand a M0(b) W(c). a enters only through a(0) and a(inf).
struct SymbolTerm {
    cplx a0 = 1.0, a_inf = 1.0;
    std::function<cplx(double)> b;
    cplx b_plus = 1.0, b_minus = 1.0;
    std::function<cplx(double)> c;
    cplx c_plus = 1.0, c_minus = 1.0, c_zero = 1.0;
    // c_p(inf, xi); when empty the loop function of (c_minus, c_plus) is used
    std::function<cplx(double)> cp;
};

struct SymbolSystem {
    std::vector<SymbolTerm> terms;
    double p = 2.0;
};

inline SymbolSystem operator_symbol(const SpectralParams& sp)
{
    SymbolSystem sys;
    sys.p = sp.p();
    SymbolTerm t1;
    t1.b = [](double) { return cplx(1.0); };
    t1.c = [sp](double xi) { return wh_c1(xi, sp); };
    t1.c_plus = wh_c1_limit_plus(sp);
    t1.c_minus = wh_c1_limit_minus(sp);
    t1.c_zero = wh_c1(0.0, sp);
    t1.cp = [sp](double xi) { return c1p_inf(xi, sp); };
    SymbolTerm t2;
    t2.a0 = 1.0; // a2(0) is folded into b
    t2.a_inf = 0.0;
    t2.b = [sp](double xi) { return a2b2(xi, sp); };
    t2.b_plus = 0.0;
    t2.b_minus = 0.0;
    t2.c = [sp](double xi) { return wh_c2(xi, sp); };
    t2.c_plus = wh_c2_limit_plus(sp);
    t2.c_minus = wh_c2_limit_minus(sp);
    t2.c_zero = 0.0;
    t2.cp = [sp](double xi) { return c2p_inf(xi, sp); };
    sys.terms = {t1, t2};
    return sys;
}

// c_(n)(xi) = (xi + i)^n (xi - i)^{-n}
inline SymbolSystem validation_symbol(int n, double p = 2.0)
{
    SymbolSystem sys;
    sys.p = p;
    SymbolTerm t;
    t.b = [](double) { return cplx(1.0); };
    t.c = [n](double xi) { return std::pow((xi + I) / (xi - I), n); };
    t.c_plus = 1.0;
    t.c_minus = 1.0;
    t.c_zero = std::pow(-1.0, n);
    sys.terms = {t};
    return sys;
}

namespace detail {

inline cplx term_cp(const SymbolTerm& tm, double xi, double p)
{
    if (tm.cp)
        return tm.cp(xi);
    return loop_function(tm.c_minus, tm.c_plus, xi, p);
}

inline bool term_vanishes(cplx a, cplx b) { return a == cplx(0.0) || b == cplx(0.0); }

} // namespace detail

inline cplx eval_segment(const SymbolSystem& sys, Segment seg, double t)
{
    if (!(t >= 0.0 && t <= 1.0))
        fail(errc::domain, "eval_segment requires t in [0,1]");
    const double inf = std::numeric_limits<double>::infinity();
    cplx sum = 0.0;
    for (const auto& tm : sys.terms) {
        switch (seg) {
        case Segment::G1: {
            double xi = t == 0.0 ? -inf : t == 1.0 ? inf : std::tan(pi * (t - 0.5));
            if (t == 0.0)
                sum += tm.a0 * tm.b_minus * tm.c_plus;
            else if (t == 1.0)
                sum += tm.a0 * tm.b_plus * tm.c_minus;
            else
                sum += tm.a0 * tm.b(xi) * detail::term_cp(tm, xi, sys.p);
            break;
        }
        case Segment::G2P:
        case Segment::G2M: {
            cplx bi = seg == Segment::G2P ? tm.b_plus : tm.b_minus;
            cplx ci = seg == Segment::G2P ? tm.c_minus : tm.c_plus;
            if (bi == cplx(0.0))
                break;
            if (tm.a0 != tm.a_inf)
                fail(errc::internal, "x-dependent multiplier with nonzero b at infinity");
            sum += tm.a0 * bi * ci;
            break;
        }
        case Segment::G3P: {
            if (detail::term_vanishes(tm.a_inf, tm.b_plus))
                break;
            cplx cv = t == 0.0 ? tm.c_minus : t == 1.0 ? tm.c_zero : tm.c(-std::tan(0.5 * pi * (1.0 - t)));
            sum += tm.a_inf * tm.b_plus * cv;
            break;
        }
        case Segment::G4: {
            if (detail::term_vanishes(tm.a_inf, tm.c_zero))
                break;
            cplx bv = t == 0.0 ? tm.b_plus : t == 1.0 ? tm.b_minus : tm.b(std::tan(pi * (0.5 - t)));
            sum += tm.a_inf * bv * tm.c_zero;
            break;
        }
        case Segment::G3M: {
            if (detail::term_vanishes(tm.a_inf, tm.b_minus))
                break;
            cplx cv = t == 0.0 ? tm.c_zero : t == 1.0 ? tm.c_plus : tm.c(std::tan(0.5 * pi * t));
            sum += tm.a_inf * tm.b_minus * cv;
            break;
        }
        }
    }
    return sum;
}

inline cplx eval_segment(Segment seg, double t, const SpectralParams& sp)
{
    return eval_segment(operator_symbol(sp), seg, t);
}

struct ContourPoint {
    Segment segment;
    double t;
    cplx value;
};

struct SymbolLoop {
    std::vector<ContourPoint> points;
    double closure_gap = 0.0;
    // gap k joins the end of segment k to the start of segment k+1 (cyclically)
    std::array<double, 6> junction_gaps{};
    std::shared_ptr<const SymbolSystem> system;
};

inline constexpr std::size_t max_loop_points = 1000000;

namespace detail {

inline bool needs_split(cplx z0, cplx z1)
{
    double m = std::min(std::abs(z0), std::abs(z1));
    if (m < 1e-12)
        return false; // no phase information at the origin
    double dphi = std::abs(principal_arg(z1 / z0));
    return dphi >= pi / 4.0 || std::abs(z1 - z0) > 0.25 * m;
}

} // namespace detail

inline SymbolLoop build_loop(std::shared_ptr<const SymbolSystem> sys, int n_base)
{
    if (n_base < 64)
        fail(errc::domain, "build_loop requires n_base >= 64");
    SymbolLoop loop;
    loop.system = sys;
    std::array<cplx, 6> first{}, last{};
    for (std::size_t si = 0; si < all_segments.size(); ++si) {
        Segment seg = all_segments[si];
        int n0 = (seg == Segment::G2P || seg == Segment::G2M) ? 1 : n_base;
        std::vector<std::pair<double, cplx>> pts;
        for (int k = 0; k <= n0; ++k) {
            double t = double(k) / n0;
            pts.emplace_back(t, eval_segment(*sys, seg, t));
        }
        for (;;) {
            std::vector<std::pair<double, cplx>> next;
            next.reserve(pts.size() * 2);
            bool split = false;
            for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
                next.push_back(pts[k]);
                double dt = pts[k + 1].first - pts[k].first;
                if (dt > 1e-14 && detail::needs_split(pts[k].second, pts[k + 1].second)) {
                    double tm = 0.5 * (pts[k].first + pts[k + 1].first);
                    next.emplace_back(tm, eval_segment(*sys, seg, tm));
                    split = true;
                }
            }
            next.push_back(pts.back());
            pts.swap(next);
            if (loop.points.size() + pts.size() > max_loop_points)
                fail(errc::resolution, "contour refinement exceeded the point budget");
            if (!split)
                break;
        }
        first[si] = pts.front().second;
        last[si] = pts.back().second;
        for (auto& [t, z] : pts)
            loop.points.push_back({seg, t, z});
    }
    for (std::size_t si = 0; si < 6; ++si)
        loop.junction_gaps[si] = std::abs(last[si] - first[(si + 1) % 6]);
    loop.closure_gap = std::abs(loop.points.back().value - loop.points.front().value);
    for (double g : loop.junction_gaps)
        if (!(g < 1e-6))
            fail(errc::resolution, "contour junction gap exceeds 1e-6");
    // phase increments must be below pi/2 wherever the phase is defined
    const auto& P = loop.points;
    for (std::size_t k = 0; k < P.size(); ++k) {
        cplx z0 = P[k].value, z1 = P[(k + 1) % P.size()].value;
        if (std::min(std::abs(z0), std::abs(z1)) < 1e-12)
            continue;
        if (std::abs(principal_arg(z1 / z0)) >= pi / 2.0)
            fail(errc::resolution, "contour phase increment not resolved");
    }
    return loop;
}

inline SymbolLoop build_loop(const SpectralParams& sp, int n_base)
{
    return build_loop(std::make_shared<const SymbolSystem>(operator_symbol(sp)), n_base);
}

struct ModulusMin {
    double value;
    Segment segment;
    double t;
};

inline ModulusMin min_modulus_at(const SymbolLoop& loop)
{
    const auto& P = loop.points;
    if (P.empty())
        fail(errc::domain, "min_modulus of an empty loop");
    std::size_t k = 0;
    for (std::size_t j = 1; j < P.size(); ++j)
        if (std::abs(P[j].value) < std::abs(P[k].value))
            k = j;
    ModulusMin best{std::abs(P[k].value), P[k].segment, P[k].t};
    if (!loop.system)
        return best;
    double lo = P[k].t, hi = P[k].t;
    if (k > 0 && P[k - 1].segment == P[k].segment)
        lo = P[k - 1].t;
    if (k + 1 < P.size() && P[k + 1].segment == P[k].segment)
        hi = P[k + 1].t;
    if (hi > lo) {
        Segment seg = P[k].segment;
        auto f = [&](double t) { return std::abs(eval_segment(*loop.system, seg, t)); };
        auto r = boost::math::tools::brent_find_minima(f, lo, hi, 50);
        if (r.second < best.value)
            best = {r.second, seg, r.first};
    }
    return best;
}

inline double min_modulus(const SymbolLoop& loop) { return min_modulus_at(loop).value; }

inline constexpr double default_fredholm_tol = 1e-4;

inline int winding_number(const SymbolLoop& loop, double fredholm_tol = default_fredholm_tol)
{
    double mm = min_modulus(loop);
    if (!(mm > fredholm_tol))
        fail(errc::not_fredholm, "symbol modulus " + std::to_string(mm) + " within fredholm tolerance");
    const auto& P = loop.points;
    double total = 0.0;
    for (std::size_t k = 0; k < P.size(); ++k)
        total += principal_arg(P[(k + 1) % P.size()].value / P[k].value);
    double w = total / (2.0 * pi);
    double r = std::round(w);
    if (std::abs(w - r) >= 0.01)
        fail(errc::accuracy, "winding sum is not close to an integer");
    return int(r);
}

// index of the symbol operator W(c1) + a2 M0(b2) W(c2)
inline int fredholm_index(const SymbolLoop& loop, double fredholm_tol = default_fredholm_tol)
{
    return -winding_number(loop, fredholm_tol);
}

enum class LoopFormat { CSV, SVG };

inline void export_loop(const SymbolLoop& loop, LoopFormat fmt, std::ostream& os)
{
    if (loop.points.empty())
        fail(errc::domain, "cannot export an empty loop");
    char buf[128];
    if (fmt == LoopFormat::CSV) {
        os << "segment,t,re,im\n";
        for (const auto& pt : loop.points) {
            std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g\n", segment_name(pt.segment), pt.t,
                          pt.value.real(), pt.value.imag());
            os << buf;
        }
    } else {
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.6 -1.6 3.2 3.2\" "
              "width=\"640\" height=\"640\">\n";
        os << "<line x1=\"-1.6\" y1=\"0\" x2=\"1.6\" y2=\"0\" stroke=\"#bbb\" stroke-width=\"0.004\"/>\n";
        os << "<line x1=\"0\" y1=\"-1.6\" x2=\"0\" y2=\"1.6\" stroke=\"#bbb\" stroke-width=\"0.004\"/>\n";
        os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.005\" "
              "stroke-dasharray=\"0.03 0.02\"/>\n";
        os << "<polyline fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"0.006\" points=\"";
        auto put = [&](cplx z) {
            std::snprintf(buf, sizeof buf, "%.9g,%.9g ", z.real(), -z.imag());
            os << buf;
        };
        for (const auto& pt : loop.points)
            put(pt.value);
        put(loop.points.front().value);
        os << "\"/>\n</svg>\n";
    }
    if (!os)
        fail(errc::io, "loop export: write failed");
}

} // namespace whml
