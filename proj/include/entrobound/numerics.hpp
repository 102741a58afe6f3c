#pragma once

/** @file
 * Special functions, one-dimensional quadrature, bilateral series summation
 * and the two small minimizers used throughout the library.
 *
 * Every routine here is a pure function of its arguments.
 */

#include <functional>
#include <vector>

namespace entrobound {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
/// Variance of a uniform variable on a unit interval.
inline constexpr double kDitherVariance = 1.0 / 12.0;

struct QuadratureSpec {
    enum class Method { periodic_trapezoid, gauss_legendre, gaussian_weighted };

    Method method = Method::periodic_trapezoid;
    int max_points = 1 << 17;
    double abs_tol = 1e-9;

    /// Throws DomainError unless max_points >= 8 and abs_tol > 0.
    void validate() const;
};

struct SeriesSpec {
    double rel_tail_tol = 1e-12;
    long max_terms = 1'000'000;

    void validate() const;
};

/// Value of a definite integral with the difference of the last two
/// refinements as a (pessimistic) error estimate.
struct Integral {
    double value = 0.0;
    double error_estimate = 0.0;
    int points = 0;
};

double std_normal_cdf(double t);

/// Upper tail 1 - Phi(t), accurate for large positive t.
double std_normal_sf(double t);

/// P(lo <= Z < hi) for a standard normal Z, computed on whichever tail keeps
/// the subtraction well conditioned.
double std_normal_interval(double lo, double hi);

/// log Gamma(x) for x > 0; DomainError otherwise.
double log_gamma(double x);

/// Composite trapezoid over one period [0, 2pi), starting from 16 nodes and
/// doubling until two successive refinements each move by less than abs_tol.
Integral integrate_periodic(const std::function<double(double)>& f, const QuadratureSpec& spec = {});

/// Composite 16-point Gauss-Legendre over [a, b] with panel doubling.
Integral integrate_interval(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec = {});

/// Integral of g(s) against the N(0, sigma^2) density, truncated to
/// [-8 sigma, 8 sigma] (neglected mass < 1e-12). Uses the trapezoid rule
/// unless spec.method is gauss_legendre.
Integral integrate_gaussian_weighted(const std::function<double(double)>& g, double sigma,
                                     const QuadratureSpec& spec = {.method = QuadratureSpec::Method::gaussian_weighted});

/// Half-width of the Gaussian truncation window in units of sigma.
inline constexpr double kGaussianCutoff = 8.0;

/// Sum over all integers, accumulated in shells |k| = 0, 1, 2, ... and stopped
/// once three consecutive shells contribute at most rel_tail_tol of the
/// running total. Throws ConvergenceError past max_terms.
double bilateral_sum(const std::function<double(long)>& term, const SeriesSpec& spec = {});

struct Minimum {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

/// Golden-section search for a unimodal f on [a, b].
Minimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                double x_tol = 1e-12, int max_iterations = 500);

/// Derivative-free Nelder-Mead simplex search. f may return +inf to reject a
/// point. Restarts once from the incumbent to guard against simplex collapse.
Minimum nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double initial_step, double size_tol = 1e-10,
                             int max_iterations = 20000);

}  // namespace entrobound
