#pragma once

/** @file
 * Single-letter upper bounds (in nats) on the entropy rate of integer-valued
 * stationary processes, computed from second-order statistics only.
 *
 * The common device is dithering: adding independent Uniform[0,1) noise to
 * each sample turns the discrete entropy into a differential entropy and adds
 * 1/12 to the variance. From there:
 *
 *  - gaussian_psd_bound() applies the Gaussian maximum-entropy argument to the
 *    whole spectrum;
 *  - tdist_bound_k() compares against a multivariate t density whose inverse
 *    scale matrix is banded Toeplitz, which only needs R(0..k);
 *  - tdist_bound_1() is the tridiagonal special case, reduced to a scalar
 *    search with no quadrature.
 */

#include "entrobound/numerics.hpp"
#include "entrobound/spectrum.hpp"

#include <vector>

namespace entrobound {

struct BoundResult {
    double value = 0.0;
    /// Minimizing beta vector (banded-t bound) or scalar s (tridiagonal bound).
    std::vector<double> argmin;
    double quadrature_error_estimate = 0.0;
    int optimizer_iterations = 0;
};

/// Coefficients beta_1..beta_k of the symbol 1 + sum beta_m cos(m lambda).
/// Feasible when sum |beta_m| < 1.
struct BetaVector {
    std::vector<double> components;

    double l1_norm() const;
    bool feasible() const { return l1_norm() < 1.0; }
};

/// Feasible region used by the optimizer: sum |beta| <= 1 - kBetaShrink.
inline constexpr double kBetaShrink = 1e-6;

/// (1/2) log(2 pi e (variance + 1/12)).
double univariate_me_bound(double variance);

/// Kolmogorov's differential entropy rate of a Gaussian process with this
/// spectrum. Returns -inf when the spectrum touches zero.
double gaussian_entropy_rate(const SpectralDensity& psd);

/// (1/2) log(2 pi e) + (1/4pi) int log(psd + 1/12).
BoundResult gaussian_psd_bound(const SpectralDensity& psd);

/// Objective minimized by tdist_bound_k at a given beta; +inf outside the
/// shrunken feasible region or where Sigma(beta) <= 0.
double tdist_objective(const CovarianceSequence& cov, const BetaVector& beta, double* quad_error = nullptr);

/// Infimum over feasible beta in R^k of the banded-t objective, k = cov.lags().
/// Coarse 11-point-per-axis grid over the l1 ball (k <= 4) and the order k-1
/// minimizer padded with a zero compete for the Nelder-Mead starting point.
BoundResult tdist_bound_k(const CovarianceSequence& cov);

/// inf over s in (-1,1) of (1/2) log(4 pi e ((r0 + 1/12) + s r1) / (1 + sqrt(1 - s^2))).
BoundResult tdist_bound_1(double r0, double r1);

}  // namespace entrobound
