#include "entrobound/spectrum.hpp"

#include "entrobound/error.hpp"
#include "entrobound/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entrobound {

CovarianceSequence::CovarianceSequence(std::vector<double> values, bool finitely_supported, std::string provenance)
    : values_(std::move(values)), finitely_supported_(finitely_supported), provenance_(std::move(provenance)) {
    if (values_.empty()) {
        throw DomainError("CovarianceSequence: at least R(0) is required");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw DomainError("CovarianceSequence: entries must be finite");
        }
    }
    if (!(values_[0] > 0.0)) {
        throw DomainError("CovarianceSequence: R(0) must be positive");
    }
    const double limit = values_[0] * (1.0 + 1e-12);
    for (std::size_t m = 1; m < values_.size(); ++m) {
        if (std::abs(values_[m]) > limit) {
            std::ostringstream msg;
            msg << "CovarianceSequence: |R(" << m << ")| = " << std::abs(values_[m]) << " exceeds R(0) = " << values_[0]
                << " (Cauchy-Schwarz)";
            throw DomainError(msg.str());
        }
    }
}

CovarianceSequence CovarianceSequence::truncated(int k) const {
    if (k < 0 || k > lags()) {
        throw DomainError("CovarianceSequence::truncated: lag out of range");
    }
    return CovarianceSequence({values_.begin(), values_.begin() + k + 1}, false, provenance_);
}

namespace {

struct Evaluate {
    double lambda;

    double operator()(const CosineSeries& s) const {
        double v = s.coefficients.empty() ? 0.0 : s.coefficients[0];
        for (std::size_t m = 1; m < s.coefficients.size(); ++m) {
            v += 2.0 * s.coefficients[m] * std::cos(static_cast<double>(m) * lambda);
        }
        return v;
    }
    double operator()(const MarkovMixture& s) const {
        const double w = s.omega;
        return s.a * (1.0 - w * w) / (1.0 + w * w - 2.0 * w * std::cos(lambda)) + s.b;
    }
    double operator()(const CallableSpectrum& s) const { return s.f(lambda); }
};

}  // namespace

SpectralDensity::SpectralDensity(Form form, bool truncated) : form_(std::move(form)), truncated_(truncated) {
    if (const auto* mm = std::get_if<MarkovMixture>(&form_); mm && !(std::abs(mm->omega) < 1.0)) {
        throw DomainError("SpectralDensity: MarkovMixture requires |omega| < 1");
    }
    if (const auto* cs = std::get_if<CosineSeries>(&form_); cs && cs->coefficients.empty()) {
        throw DomainError("SpectralDensity: CosineSeries needs at least c0");
    }
    if (const auto* cb = std::get_if<CallableSpectrum>(&form_); cb && !cb->f) {
        throw DomainError("SpectralDensity: empty callable");
    }

    double lowest = 0.0;
    double lowest_at = 0.0;
    double largest = 0.0;
    for (int j = 0; j < kValidationGrid; ++j) {
        const double lambda = kTwoPi * j / kValidationGrid;
        const double v = (*this)(lambda);
        if (!std::isfinite(v)) {
            throw DomainError("SpectralDensity: not finite at lambda = " + std::to_string(lambda));
        }
        if (j == 0 || v < lowest) {
            lowest = v;
            lowest_at = lambda;
        }
        largest = std::max(largest, std::abs(v));
    }
    // Rounding can push an exact zero slightly negative.
    if (lowest < -1e-12 * std::max(1.0, largest)) {
        std::ostringstream msg;
        msg << "SpectralDensity: negative value " << lowest << " at lambda = " << lowest_at;
        throw DomainError(msg.str());
    }
    grid_minimum_ = std::max(lowest, 0.0);
}

double SpectralDensity::operator()(double lambda) const {
    return std::visit(Evaluate{lambda}, form_);
}

SpectralDensity psd_from_finite_covariance(const CovarianceSequence& cov) {
    return SpectralDensity(CosineSeries{cov.values()}, !cov.finitely_supported());
}

double closed_form_log_cos_integral(double s) {
    if (!(std::abs(s) <= 1.0)) {
        throw DomainError("closed_form_log_cos_integral: |s| must not exceed 1");
    }
    // -log((2 - 2 sqrt(1 - s^2)) / s^2) rationalized; exact at s = 0 and free
    // of cancellation for small |s|.
    return std::log(0.5 * (1.0 + std::sqrt(1.0 - s * s)));
}

bool ToeplitzSpec::diagonally_dominant() const {
    double off = 0.0;
    for (double a : off_diagonals) {
        off += 2.0 * std::abs(a);
    }
    return off < diagonal;
}

double ToeplitzSpec::log_determinant() const {
    if (n < 1) {
        throw DomainError("ToeplitzSpec: dimension must be positive");
    }
    const int band = std::min<int>(static_cast<int>(off_diagonals.size()), n - 1);
    const int width = band + 1;
    auto entry = [&](int lag) { return lag == 0 ? diagonal : off_diagonals[lag - 1]; };
    // factor(i, i - d) stored at i * width + d.
    std::vector<double> factor(static_cast<std::size_t>(n) * width, 0.0);
    auto at = [&](int i, int k) -> double& { return factor[static_cast<std::size_t>(i) * width + (i - k)]; };

    double log_det = 0.0;
    for (int j = 0; j < n; ++j) {
        const int last = std::min(n - 1, j + band);
        for (int i = j; i <= last; ++i) {
            double s = entry(i - j);
            for (int k = std::max(0, i - band); k < j; ++k) {
                s -= at(i, k) * at(j, k);
            }
            if (i == j) {
                if (!(s > 0.0)) {
                    throw DomainError("ToeplitzSpec: matrix is not positive definite (pivot " + std::to_string(j) +
                                      ")");
                }
                at(j, j) = std::sqrt(s);
                log_det += std::log(s);
            } else {
                at(i, j) = s / at(j, j);
            }
        }
    }
    return log_det;
}

double toeplitz_gaussian_bound_finite(const CovarianceSequence& cov, int n) {
    if (n < 1) {
        throw DomainError("toeplitz_gaussian_bound_finite: n must be positive");
    }
    const auto& r = cov.values();
    ToeplitzSpec spec;
    spec.diagonal = r[0] + kDitherVariance;
    spec.off_diagonals.assign(r.begin() + 1, r.begin() + std::min<std::size_t>(r.size(), static_cast<std::size_t>(n)));
    spec.n = n;
    double log_det = 0.0;
    try {
        log_det = spec.log_determinant();
    } catch (const DomainError&) {
        throw DomainError("toeplitz_gaussian_bound_finite: K + I/12 is not positive definite; invalid covariance");
    }
    return 0.5 * std::log(kTwoPi * std::exp(1.0)) + 0.5 * log_det / n;
}

bool fiedler_determinant_check(std::span<const double> eigs_a, std::span<const double> eigs_b, double det_sum) {
    if (eigs_a.size() != eigs_b.size()) {
        throw DomainError("fiedler_determinant_check: eigenvalue lists differ in length");
    }
    if (eigs_a.empty()) {
        throw DomainError("fiedler_determinant_check: empty eigenvalue lists");
    }
    std::vector<double> a(eigs_a.begin(), eigs_a.end());
    std::vector<double> b(eigs_b.begin(), eigs_b.end());
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    const std::size_t n = a.size();
    double lower = 1.0;
    double upper = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        lower *= a[i] + b[i];
        upper *= a[i] + b[n - 1 - i];
    }
    constexpr double slack = 1e-9;
    return lower * (1.0 - slack) <= det_sum && det_sum <= upper * (1.0 + slack);
}

double tridiagonal_determinant(double alpha, double beta, int n) {
    if (!(alpha > 0.0)) {
        throw DomainError("tridiagonal_determinant: alpha must be positive");
    }
    if (!(std::abs(beta) < alpha / 2.0)) {
        throw DomainError("tridiagonal_determinant: requires |beta| < alpha/2");
    }
    if (n < 0) {
        throw DomainError("tridiagonal_determinant: n must be non-negative");
    }
    double prev = 1.0;
    double cur = alpha;
    if (n == 0) {
        return prev;
    }
    for (int m = 2; m <= n; ++m) {
        const double next = alpha * cur - beta * beta * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace entrobound
