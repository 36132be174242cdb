#pragma once

// Thin layer over Boost.Math quadrature with explicit failure on non-convergence.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace whml::quad {

struct result {
    double value = 0.0;
    double error = 0.0;
};

inline void check(const result& r, double l1, double tol, double abs_floor, const char* what)
{
    if (!std::isfinite(r.value))
        fail(errc::accuracy, std::string(what) + ": non-finite quadrature value");
    double bound = std::max(1e3 * tol * l1, abs_floor);
    if (r.error > bound)
        fail(errc::accuracy, std::string(what) + ": quadrature did not converge (err " +
                                 std::to_string(r.error) + ")");
}

// adaptive Gauss-Kronrod (61 points), relative tolerance on the L1 norm
template <class F>
result gk(F f, double a, double b, double tol, const char* what, double abs_floor = 0.0,
          unsigned max_depth = 20)
{
    result r;
    double l1 = 0.0;
    r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol,
                                                                            &r.error, &l1);
    check(r, l1, tol, abs_floor, what);
    return r;
}

// tanh-sinh, for integrable endpoint singularities on a finite interval
template <class F>
result ts(F f, double a, double b, double tol, const char* what, double abs_floor = 0.0)
{
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    result r;
    double l1 = 0.0;
    try {
        r.value = integrator.integrate(f, a, b, tol, &r.error, &l1);
    } catch (const std::domain_error& e) {
        fail(errc::accuracy, std::string(what) + ": " + e.what());
    } catch (const boost::math::evaluation_error& e) {
        fail(errc::accuracy, std::string(what) + ": " + e.what());
    }
    check(r, l1, tol, abs_floor, what);
    return r;
}

// fixed Gauss-Legendre panel
template <unsigned N, class F>
double gl(F f, double a, double b)
{
    return boost::math::quadrature::gauss<double, N>::integrate(f, a, b);
}

} // namespace whml::quad
