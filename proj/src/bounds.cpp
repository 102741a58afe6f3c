#include "entrobound/bounds.hpp"

#include "entrobound/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entrobound {

namespace {

const double kHalfLogTwoPiE = 0.5 * std::log(kTwoPi * std::exp(1.0));
constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureSpec objective_quadrature() {
    QuadratureSpec spec;
    spec.abs_tol = 1e-11;
    spec.max_points = 1 << 18;
    return spec;
}

// Odometer over {-1, -0.8, ..., 1}^k restricted to the shrunken l1 ball.
std::vector<std::vector<double>> coarse_grid(int k) {
    constexpr int per_axis = 11;
    std::vector<std::vector<double>> points;
    std::vector<int> index(k, 0);
    while (true) {
        std::vector<double> beta(k);
        double l1 = 0.0;
        for (int m = 0; m < k; ++m) {
            beta[m] = -1.0 + 0.2 * index[m];
            l1 += std::abs(beta[m]);
        }
        if (l1 <= 1.0 - kBetaShrink) {
            points.push_back(std::move(beta));
        }
        int m = 0;
        while (m < k && ++index[m] == per_axis) {
            index[m++] = 0;
        }
        if (m == k) {
            break;
        }
    }
    return points;
}

}  // namespace

double BetaVector::l1_norm() const {
    double total = 0.0;
    for (double b : components) {
        total += std::abs(b);
    }
    return total;
}

double univariate_me_bound(double variance) {
    if (!(variance >= 0.0)) {
        throw DomainError("univariate_me_bound: variance must be non-negative");
    }
    return 0.5 * std::log(kTwoPi * std::exp(1.0) * (variance + kDitherVariance));
}

double gaussian_entropy_rate(const SpectralDensity& psd) {
    if (psd.grid_minimum() <= 0.0) {
        return -kInf;
    }
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    Integral integral;
    try {
        integral = integrate_periodic([&](double lambda) { return std::log(psd(lambda)); }, spec);
    } catch (const DomainError&) {
        // A quadrature node landed on a zero of the spectrum.
        return -kInf;
    }
    return kHalfLogTwoPiE + integral.value / (2.0 * kTwoPi);
}

BoundResult gaussian_psd_bound(const SpectralDensity& psd) {
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    const Integral integral =
        integrate_periodic([&](double lambda) { return std::log(psd(lambda) + kDitherVariance); }, spec);
    BoundResult result;
    result.value = kHalfLogTwoPiE + integral.value / (2.0 * kTwoPi);
    result.quadrature_error_estimate = integral.error_estimate / (2.0 * kTwoPi);
    return result;
}

double tdist_objective(const CovarianceSequence& cov, const BetaVector& beta, double* quad_error) {
    const auto& r = cov.values();
    const auto& b = beta.components;
    if (static_cast<int>(b.size()) > cov.lags()) {
        throw DomainError("tdist_objective: more beta components than covariance lags");
    }
    if (beta.l1_norm() > 1.0 - kBetaShrink) {
        return kInf;
    }
    double sigma = r[0] + kDitherVariance;
    for (std::size_t m = 0; m < b.size(); ++m) {
        sigma += b[m] * r[m + 1];
    }
    if (!(sigma > 0.0)) {
        return kInf;
    }
    auto log_psi = [&](double lambda) {
        double psi = 1.0;
        for (std::size_t m = 0; m < b.size(); ++m) {
            psi += b[m] * std::cos(static_cast<double>(m + 1) * lambda);
        }
        // psi >= 1 - |beta|_1 > 0 strictly inside the region.
        return std::log(psi);
    };
    const Integral integral = integrate_periodic(log_psi, objective_quadrature());
    if (quad_error != nullptr) {
        *quad_error = integral.error_estimate / (2.0 * kTwoPi);
    }
    return 0.5 * std::log(kTwoPi * std::exp(1.0) * sigma) - integral.value / (2.0 * kTwoPi);
}

BoundResult tdist_bound_k(const CovarianceSequence& cov) {
    const int k = cov.lags();
    BoundResult result;
    if (k == 0) {
        result.value = univariate_me_bound(cov.variance());
        return result;
    }
    auto objective = [&](const std::vector<double>& beta) { return tdist_objective(cov, BetaVector{beta}); };

    std::vector<double> start(k, 0.0);
    double start_value = objective(start);
    if (k <= 4) {
        for (auto& point : coarse_grid(k)) {
            const double v = objective(point);
            if (v < start_value) {
                start_value = v;
                start = std::move(point);
            }
        }
    }
    // The order k-1 minimizer with a trailing zero is feasible here, so
    // starting from it keeps the bound non-increasing in k.
    if (k >= 2) {
        std::vector<double> lower = tdist_bound_k(cov.truncated(k - 1)).argmin;
        lower.push_back(0.0);
        const double v = objective(lower);
        if (v < start_value) {
            start_value = v;
            start = std::move(lower);
        }
    }
    const Minimum best = nelder_mead_minimize(objective, start, 0.05, 1e-10);
    if (!std::isfinite(best.value)) {
        throw ConvergenceError("tdist_bound_k: optimizer did not find a feasible point", best.value, start_value);
    }
    result.value = best.value;
    result.argmin = best.x;
    result.optimizer_iterations = best.iterations;
    tdist_objective(cov, BetaVector{best.x}, &result.quadrature_error_estimate);
    return result;
}

BoundResult tdist_bound_1(double r0, double r1) {
    const CovarianceSequence cov({r0, r1});
    const double dithered = r0 + kDitherVariance;
    const double scale = 2.0 * kTwoPi * std::exp(1.0);
    auto objective = [&](double s) {
        return 0.5 * std::log(scale * (dithered + s * r1) / (1.0 + std::sqrt(1.0 - s * s)));
    };

    constexpr int scan_points = 1001;
    constexpr double edge = 1.0 - 1e-9;
    const double step = 2.0 * edge / (scan_points - 1);
    int best_index = 0;
    double best_value = kInf;
    for (int i = 0; i < scan_points; ++i) {
        const double v = objective(-edge + i * step);
        if (v < best_value) {
            best_value = v;
            best_index = i;
        }
    }
    const double lo = -edge + std::max(0, best_index - 1) * step;
    const double hi = -edge + std::min(scan_points - 1, best_index + 1) * step;
    const Minimum refined = golden_section_minimize(objective, lo, hi, 1e-13);

    BoundResult result;
    if (refined.value <= best_value) {
        result.value = refined.value;
        result.argmin = refined.x;
    } else {
        result.value = best_value;
        result.argmin = {-edge + best_index * step};
    }
    result.optimizer_iterations = refined.iterations;
    return result;
}

}  // namespace entrobound
