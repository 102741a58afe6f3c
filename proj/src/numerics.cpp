#include "entrobound/numerics.hpp"

#include "entrobound/error.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace entrobound {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void require_finite(double v, const char* where, double at) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(where) + ": integrand is not finite at " + std::to_string(at));
    }
}

struct GaussLegendreRule {
    std::array<double, 16> nodes{};
    std::array<double, 16> weights{};
};

// Newton iteration on P_16 from the Chebyshev initial guesses.
GaussLegendreRule make_gauss_legendre16() {
    GaussLegendreRule rule;
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussLegendreRule& gauss_legendre16() {
    static const GaussLegendreRule rule = make_gauss_legendre16();
    return rule;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (max_points < 8) {
        throw DomainError("QuadratureSpec: max_points must be at least 8");
    }
    if (!(abs_tol > 0.0)) {
        throw DomainError("QuadratureSpec: abs_tol must be positive");
    }
}

void SeriesSpec::validate() const {
    if (!(rel_tail_tol > 0.0 && rel_tail_tol < 1.0)) {
        throw DomainError("SeriesSpec: rel_tail_tol must lie in (0, 1)");
    }
    if (max_terms < 1) {
        throw DomainError("SeriesSpec: max_terms must be positive");
    }
}

double std_normal_cdf(double t) {
    return 0.5 * std::erfc(-t * kInvSqrt2);
}

double std_normal_sf(double t) {
    return 0.5 * std::erfc(t * kInvSqrt2);
}

double std_normal_interval(double lo, double hi) {
    if (lo >= 0.0) {
        return std_normal_sf(lo) - std_normal_sf(hi);
    }
    return std_normal_cdf(hi) - std_normal_cdf(lo);
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: argument must be positive");
    }
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

Integral integrate_periodic(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    spec.validate();
    int n = 16;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double lambda = kTwoPi * j / n;
        const double v = f(lambda);
        require_finite(v, "integrate_periodic", lambda);
        sum += v;
    }
    double estimate = kTwoPi * sum / n;
    int quiet = 0;
    while (2 * n <= spec.max_points) {
        // New nodes sit halfway between the old ones.
        for (int j = 0; j < n; ++j) {
            const double lambda = kTwoPi * (j + 0.5) / n;
            const double v = f(lambda);
            require_finite(v, "integrate_periodic", lambda);
            sum += v;
        }
        n *= 2;
        const double refined = kTwoPi * sum / n;
        const double diff = std::abs(refined - estimate);
        // Two quiet doublings in a row, so a single aliased harmonic cannot
        // fake convergence.
        quiet = diff < spec.abs_tol ? quiet + 1 : 0;
        if (quiet == 2) {
            return {refined, diff, n};
        }
        estimate = refined;
    }
    const double last = kTwoPi * sum / n;
    throw ConvergenceError("integrate_periodic: no convergence within " + std::to_string(spec.max_points) +
                               " points",
                           last, estimate);
}

Integral integrate_interval(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    const auto& rule = gauss_legendre16();
    auto composite = [&](int panels) {
        const double width = (b - a) / panels;
        double total = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * width;
            double panel = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = mid + 0.5 * width * rule.nodes[i];
                const double v = f(x);
                require_finite(v, "integrate_interval", x);
                panel += rule.weights[i] * v;
            }
            total += 0.5 * width * panel;
        }
        return total;
    };
    int panels = 1;
    double estimate = composite(panels);
    while (32 * panels <= spec.max_points) {
        panels *= 2;
        const double refined = composite(panels);
        const double diff = std::abs(refined - estimate);
        if (diff < spec.abs_tol) {
            return {refined, diff, 16 * panels};
        }
        estimate = refined;
    }
    throw ConvergenceError("integrate_interval: no convergence", estimate, estimate);
}

Integral integrate_gaussian_weighted(const std::function<double(double)>& g, double sigma, const QuadratureSpec& spec) {
    spec.validate();
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("integrate_gaussian_weighted: sigma must be positive and finite");
    }
    const double half_width = kGaussianCutoff * sigma;
    auto weighted = [&](double s) {
        const double z = s / sigma;
        const double v = g(s);
        require_finite(v, "integrate_gaussian_weighted", s);
        return v * kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
    };
    if (spec.method == QuadratureSpec::Method::gauss_legendre) {
        return integrate_interval(weighted, -half_width, half_width, spec);
    }

    // The weight decays to ~1e-14 at both ends, so the plain trapezoid rule
    // converges spectrally just like in the periodic case.
    int n = 64;
    double h = 2.0 * half_width / n;
    double sum = 0.5 * (weighted(-half_width) + weighted(half_width));
    for (int j = 1; j < n; ++j) {
        sum += weighted(-half_width + j * h);
    }
    double estimate = h * sum;
    while (2 * n <= spec.max_points) {
        for (int j = 0; j < n; ++j) {
            sum += weighted(-half_width + (j + 0.5) * h);
        }
        n *= 2;
        h *= 0.5;
        const double refined = h * sum;
        const double diff = std::abs(refined - estimate);
        if (diff < spec.abs_tol) {
            return {refined, diff, n + 1};
        }
        estimate = refined;
    }
    throw ConvergenceError("integrate_gaussian_weighted: no convergence within " +
                               std::to_string(spec.max_points) + " points",
                           h * sum, estimate);
}

double bilateral_sum(const std::function<double(long)>& term, const SeriesSpec& spec) {
    spec.validate();
    double total = term(0);
    double previous_shell = 0.0;
    int quiet_shells = 0;
    for (long k = 1;; ++k) {
        if (2 * k + 1 > spec.max_terms) {
            throw ConvergenceError("bilateral_sum: max_terms exceeded", total, total);
        }
        const double shell = term(k) + term(-k);
        if (!std::isfinite(shell)) {
            throw DomainError("bilateral_sum: non-finite term at |k| = " + std::to_string(k));
        }
        total += shell;
        // Under geometric decay at ratio rho the remaining tail is about
        // shell * rho / (1 - rho), which dominates the shell once rho > 1/2.
        double tail = std::abs(shell);
        if (previous_shell != 0.0) {
            const double rho = std::abs(shell / previous_shell);
            if (rho < 1.0) {
                tail = std::max(tail, tail * rho / (1.0 - rho));
            }
        }
        previous_shell = shell;
        if (tail <= spec.rel_tail_tol * std::abs(total)) {
            if (++quiet_shells == 3) {
                return total;
            }
        } else {
            quiet_shells = 0;
        }
    }
}

Minimum golden_section_minimize(const std::function<double(double)>& f, double a, double b, double x_tol,
                                int max_iterations) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int iter = 0;
    while (std::abs(b - a) > x_tol && iter < max_iterations) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++iter;
    }
    if (fc < fd) {
        return {{c}, fc, iter};
    }
    return {{d}, fd, iter};
}

namespace {

using Objective = std::function<double(const std::vector<double>&)>;

double gsl_trampoline(const gsl_vector* v, void* params) {
    const auto& f = *static_cast<const Objective*>(params);
    std::vector<double> x(v->size);
    for (std::size_t i = 0; i < v->size; ++i) {
        x[i] = gsl_vector_get(v, i);
    }
    const double value = f(x);
    // GSL's simplex copes with large finite values better than with inf.
    return std::isfinite(value) ? value : std::numeric_limits<double>::max() / 4;
}

Minimum run_simplex(const Objective& f, const std::vector<double>& start, double step, double size_tol,
                    int max_iterations) {
    const std::size_t dim = start.size();
    gsl_vector* x = gsl_vector_alloc(dim);
    gsl_vector* steps = gsl_vector_alloc(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        gsl_vector_set(x, i, start[i]);
        gsl_vector_set(steps, i, step);
    }
    gsl_multimin_function fn{&gsl_trampoline, dim, const_cast<Objective*>(&f)};
    gsl_multimin_fminimizer* solver = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
    gsl_multimin_fminimizer_set(solver, &fn, x, steps);

    int iter = 0;
    int status = GSL_CONTINUE;
    while (status == GSL_CONTINUE && iter < max_iterations) {
        ++iter;
        if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS) {
            break;
        }
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver), size_tol);
    }
    Minimum result;
    result.x.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        result.x[i] = gsl_vector_get(solver->x, i);
    }
    result.value = solver->fval;
    result.iterations = iter;
    gsl_multimin_fminimizer_free(solver);
    gsl_vector_free(steps);
    gsl_vector_free(x);
    return result;
}

}  // namespace

Minimum nelder_mead_minimize(const Objective& f, std::vector<double> start, double initial_step, double size_tol,
                             int max_iterations) {
    if (start.empty()) {
        return {{}, f(start), 0};
    }
    gsl_set_error_handler_off();
    Minimum best = run_simplex(f, start, initial_step, size_tol, max_iterations);
    const double start_value = f(start);
    if (start_value < best.value) {
        best = {start, start_value, best.iterations};
    }
    Minimum polished = run_simplex(f, best.x, std::max(initial_step * 1e-2, 10 * size_tol), size_tol, max_iterations);
    polished.iterations += best.iterations;
    if (polished.value <= best.value) {
        return polished;
    }
    best.iterations = polished.iterations;
    return best;
}

}  // namespace entrobound
