#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

// Adaptive Gauss-Kronrod (G7/K15) quadrature for smooth, possibly sharply
// peaked integrands. Subdivides the worst interval until the global error
// estimate meets the requested tolerance.

namespace gkp::quad {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

struct ComplexResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Integrate f over [a, b] to relative tolerance rel_tol (with an absolute
// floor abs_tol for integrals near zero). Throws NumericalError with
// diagnostics if the subdivision budget is exhausted before convergence.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-300,
                 int max_intervals = 4000);

ComplexResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                double a, double b, double rel_tol = 1e-10,
                                double abs_tol = 1e-300, int max_intervals = 4000);

// Fixed midpoint rule; the independent low-tech oracle used by tests.
double midpoint(const std::function<double(double)>& f, double a, double b, long n);

}  // namespace gkp::quad
