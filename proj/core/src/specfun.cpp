#include "risnoma/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace risnoma {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double ln_gamma_lanczos(double x) {
    // valid for x >= 0.5
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    const double t = x + 6.5;
    return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(acc);
}

// Series for P(k,x), valid and fast for x < k+1.
double gamma_p_series(double k, double x) {
    double ap = k;
    double del = 1.0 / k;
    double sum = del;
    for (int n = 0; n < 1000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + k * std::log(x) - ln_gamma(k));
}

// Modified Lentz continued fraction for Q(k,x), valid for x >= k+1.
double gamma_q_contfrac(double k, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - k;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -i * (i - k);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + k * std::log(x) - ln_gamma(k)) * h;
}

// E1(z) series, z in (0, 1]: E1 = -gamma - ln z + sum (-1)^{n+1} z^n / (n n!).
double e1_series(double z) {
    double term = 1.0;
    double sum = 0.0;
    for (int n = 1; n <= 60; ++n) {
        term *= -z / n;
        const double contrib = -term / n;
        sum += contrib;
        if (std::fabs(contrib) < std::fabs(sum) * 1e-17) break;
    }
    return -kEulerGamma - std::log(z) + sum;
}

// Modified Lentz continued fraction for e^z E1(z), z > 1:
//   e^z E1(z) = 1 / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...))))
double expz_e1_contfrac(double z) {
    constexpr double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 400; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h;
}

// Gauss-Kronrod 15(7) nodes and weights on [-1,1] (symmetric half listed).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
};

// One GK15 panel: returns Kronrod value and |Kronrod - Gauss| error estimate.
Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) result_gauss += kWg[j / 2] * fsum;
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.value = result_kronrod * half;
    s.error = std::fabs((result_kronrod - result_gauss) * half);
    return s;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be positive");
    if (x < 0.5) {
        // reflection keeps the Lanczos argument away from zero
        return std::log(kPi / std::sin(kPi * x)) - ln_gamma_lanczos(1.0 - x);
    }
    return ln_gamma_lanczos(x);
}

double reg_lower_gamma(double k, double x) {
    if (!(k > 0.0)) throw std::domain_error("reg_lower_gamma: shape k must be positive");
    if (x < 0.0) throw std::domain_error("reg_lower_gamma: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < k + 1.0) return std::min(1.0, gamma_p_series(k, x));
    return std::max(0.0, 1.0 - gamma_q_contfrac(k, x));
}

double reg_upper_gamma(double k, double x) {
    if (!(k > 0.0)) throw std::domain_error("reg_upper_gamma: shape k must be positive");
    if (x < 0.0) throw std::domain_error("reg_upper_gamma: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < k + 1.0) return std::max(0.0, 1.0 - gamma_p_series(k, x));
    return std::min(1.0, gamma_q_contfrac(k, x));
}

double exp_integral_ei(double x) {
    if (!(x < 0.0)) throw std::domain_error("exp_integral_ei: argument must be negative");
    const double z = -x;
    // Ei(-z) = -E1(z). The alternating power series loses one digit per unit
    // of z from e^z cancellation, so it is restricted to z <= 1 and the
    // continued fraction covers the rest.
    if (z <= 1.0) return -e1_series(z);
    return -std::exp(-z) * expz_e1_contfrac(z);
}

double expx_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("expx_e1: argument must be positive");
    if (x <= 1.0) return std::exp(x) * e1_series(x);
    return expz_e1_contfrac(x);
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec) {
    if (!(a < b)) throw std::domain_error("adaptive_quad: requires a < b");
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1)
        throw std::domain_error("adaptive_quad: invalid QuadratureSpec");

    auto worse = [](const Segment& l, const Segment& r) { return l.error < r.error; };
    std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> queue(worse);
    Segment whole = gk15(f, a, b);
    double total = whole.value;
    double total_err = whole.error;
    queue.push(whole);

    for (int n = 1; n < spec.max_subdivisions; ++n) {
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) return total;
        Segment s = queue.top();
        queue.pop();
        const double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b) {
            // interval no longer splittable in double precision
            queue.push(Segment{s.a, s.b, s.value, 0.0});
            total_err -= s.error;
            continue;
        }
        Segment left = gk15(f, s.a, mid);
        Segment right = gk15(f, mid, s.b);
        total += left.value + right.value - s.value;
        total_err += left.error + right.error - s.error;
        queue.push(left);
        queue.push(right);
    }
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) return total;
    throw QuadratureError("adaptive_quad: subdivision budget exhausted", total);
}

double quad_to_infinity(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    auto mapped = [&f](double t) -> double {
        if (t >= 1.0) return 0.0;
        const double om = 1.0 - t;
        const double x = t / om;
        return f(x) / (om * om);
    };
    return adaptive_quad(mapped, 0.0, 1.0, spec);
}

}  // namespace risnoma
