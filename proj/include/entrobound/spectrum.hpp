#pragma once

/** @file
 * Covariance sequences, power spectral densities, and the Toeplitz
 * determinant machinery behind the spectral entropy bounds.
 */

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace entrobound {

/// Autocovariances R(0), R(1), ..., R(k) of a wide-sense stationary process.
///
/// Invariants (checked on construction): R(0) > 0 and |R(m)| <= R(0).
class CovarianceSequence {
public:
    /// @param finitely_supported  true when R(m) = 0 for every m beyond the
    ///                            last supplied lag (MA-type processes).
    explicit CovarianceSequence(std::vector<double> values, bool finitely_supported = false,
                                std::string provenance = {});

    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](std::size_t lag) const { return values_.at(lag); }
    /// Number of positive lags k.
    int lags() const noexcept { return static_cast<int>(values_.size()) - 1; }
    double variance() const noexcept { return values_.front(); }
    bool finitely_supported() const noexcept { return finitely_supported_; }
    const std::string& provenance() const noexcept { return provenance_; }

    /// First k+1 entries.
    CovarianceSequence truncated(int k) const;

private:
    std::vector<double> values_;
    bool finitely_supported_;
    std::string provenance_;
};

/// c0 + 2 sum_m c_m cos(m lambda).
struct CosineSeries {
    std::vector<double> coefficients;
};

/// a (1 - w^2) / (1 + w^2 - 2 w cos lambda) + b, the spectrum of a two-state
/// Markov-modulated process.
struct MarkovMixture {
    double a = 0.0;
    double b = 0.0;
    double omega = 0.0;
};

struct CallableSpectrum {
    std::function<double(double)> f;
};

/// A power spectral density on [0, 2pi].
///
/// Construction validates non-negativity on a 4096-point grid and throws
/// DomainError naming the offending frequency.
class SpectralDensity {
public:
    using Form = std::variant<CosineSeries, MarkovMixture, CallableSpectrum>;

    static constexpr int kValidationGrid = 4096;

    explicit SpectralDensity(Form form, bool truncated = false);

    double operator()(double lambda) const;
    const Form& form() const noexcept { return form_; }

    /// Set when the density was built from a covariance sequence that is
    /// not known to vanish beyond its last lag.
    bool truncated() const noexcept { return truncated_; }

    /// Smallest value seen on the validation grid.
    double grid_minimum() const noexcept { return grid_minimum_; }

private:
    Form form_;
    bool truncated_;
    double grid_minimum_ = 0.0;
};

SpectralDensity psd_from_finite_covariance(const CovarianceSequence& cov);

/// (1/2pi) * integral over one period of log(1 + s cos lambda), |s| <= 1.
double closed_form_log_cos_integral(double s);

/// Symmetric banded Toeplitz matrix with entries a_{|i-j|}.
struct ToeplitzSpec {
    double diagonal = 0.0;
    std::vector<double> off_diagonals;
    int n = 0;

    /// sum_{j != 0} |h(j)| < h(0) for the infinite symbol, which makes every
    /// finite section strictly positive definite.
    bool diagonally_dominant() const;

    /// log det via banded Cholesky, O(n k^2). Throws DomainError if the
    /// matrix is not positive definite.
    double log_determinant() const;
};

/// (1/n) [ (n/2) log(2 pi e) + (1/2) log det(K_n + I/12) ] for the n x n
/// covariance matrix built from cov (zero past the last lag).
double toeplitz_gaussian_bound_finite(const CovarianceSequence& cov, int n);

/// Checks prod(a_i + b_i) <= det_sum <= prod(a_i + b_{n+1-i}) with both
/// eigenvalue lists sorted descending, allowing 1e-9 relative slack.
bool fiedler_determinant_check(std::span<const double> eigs_a, std::span<const double> eigs_b, double det_sum);

/// Determinant of the n x n tridiagonal Toeplitz matrix with diagonal alpha
/// and off-diagonal beta, via phi_{n+2} = alpha phi_{n+1} - beta^2 phi_n.
double tridiagonal_determinant(double alpha, double beta, int n);

}  // namespace entrobound
