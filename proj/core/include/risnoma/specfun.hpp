#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace risnoma {

// Tolerances and subdivision budget for the adaptive quadrature.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

// Thrown when the subdivision budget is exhausted; carries the best estimate
// accumulated so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, double best)
        : std::runtime_error(msg), best_estimate(best) {}
    double best_estimate;
};

// ln Gamma(x) for x > 0, Lanczos approximation (about 14 significant digits).
double ln_gamma(double x);

// Regularized lower incomplete gamma P(k,x) = gamma(k,x)/Gamma(k), k > 0, x >= 0.
// Series for x < k+1, continued fraction otherwise.
double reg_lower_gamma(double k, double x);

// Complement Q(k,x) = 1 - P(k,x).
double reg_upper_gamma(double k, double x);

// Exponential integral Ei(x) for strictly negative arguments.
double exp_integral_ei(double x);

// Scaled combination e^x * E1(x) for x > 0, evaluated without forming e^x so
// it stays finite for large x. Equals -e^x * Ei(-x).
double expx_e1(double x);

// Adaptive Gauss-Kronrod 15(7) on the finite interval [a,b].
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec = {});

// Integral of f over [0, inf), mapped onto (0,1] by x = t/(1-t). The integrand
// must decay at infinity.
double quad_to_infinity(const std::function<double(double)>& f, const QuadratureSpec& spec = {});

}  // namespace risnoma
