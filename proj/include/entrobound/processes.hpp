#pragma once

/** @file
 * Example processes with exact second-order statistics: i.i.d. Poisson,
 * discrete moving averages, two-state hidden Markov processes, and quantized
 * Gaussian MA(1) / noisy AR(1) paths.
 *
 * Quantized processes use Q(s) = nearest integer, ties toward the smaller
 * integer. All quantities are in nats.
 */

#include "entrobound/bounds.hpp"
#include "entrobound/numerics.hpp"
#include "entrobound/spectrum.hpp"

#include <variant>
#include <vector>

namespace entrobound {

struct PoissonModel {
    double lambda = 1.0;

    void validate() const;
};

/// Finite-support law of the i.i.d. variables mixed by a DMA process.
struct DiscreteLaw {
    std::vector<long> support;
    std::vector<double> probabilities;

    void validate() const;
    double mean() const;
    double variance() const;

    static DiscreteLaw uniform(long lo, long hi);
};

/// S_n = Y_{n - Theta_n} with Theta_n i.i.d. on {0..L} with weights delta.
struct DmaModel {
    std::vector<double> mixture_weights;
    DiscreteLaw innovation;

    void validate() const;
    int order() const { return static_cast<int>(mixture_weights.size()) - 1; }
    double innovation_variance() const { return innovation.variance(); }
};

struct BinomialEmission {
    int trials = 1;
    double p1 = 0.5;
    double p2 = 0.5;
};

struct PoissonEmission {
    double lambda1 = 1.0;
    double lambda2 = 1.0;
};

/// Two-state Markov chain with P(1 -> 2) = gamma1 and P(2 -> 1) = gamma2.
struct TwoStateHmm {
    double gamma1 = 0.5;
    double gamma2 = 0.5;
    std::variant<BinomialEmission, PoissonEmission> emission;

    void validate() const;
    double omega() const { return 1.0 - gamma1 - gamma2; }
    /// Stationary distribution (delta_1, delta_2).
    std::pair<double, double> stationary() const;
};

/// X_n = W_n + theta W_{n-1}, W ~ N(0, sigma^2), observed as Q(X_n).
struct QuantizedMaModel {
    double sigma = 1.0;
    double theta = 0.0;

    void validate() const;
};

/// X_n = phi X_{n-1} + W_n, U_n = X_n + V_n with V ~ N(0, nu^2), observed as Q(U_n).
struct QuantizedArModel {
    double sigma = 1.0;
    double phi = 0.0;
    double nu = 0.0;

    void validate() const;
    /// Stationary variance sigma^2 / (1 - phi^2) of the hidden AR(1).
    double stationary_variance() const { return sigma * sigma / (1.0 - phi * phi); }
};

/// Tolerances for the Gaussian-integral covariances and conditional entropies.
struct QuantizedSpec {
    QuadratureSpec quadrature{.method = QuadratureSpec::Method::gaussian_weighted, .max_points = 1 << 18,
                              .abs_tol = 1e-10};
    SeriesSpec series{};
    /// Upper bound on truncated joint mass before renormalization.
    double max_mass_deficit = 1e-10;

    /// One order of magnitude looser everywhere.
    static QuantizedSpec fast();
};

long quantize(double s);

/// E[Q(Z)] for Z ~ N(mean, sd^2); sd == 0 gives Q(mean).
double expected_quantized_normal(double mean, double sd, const SeriesSpec& spec = {});

/// E[Q(Z)^2] for Z ~ N(0, sd^2).
double quantized_normal_second_moment(double sd, const SeriesSpec& spec = {});

/// P(Q(Z) = m) for Z ~ N(mean, sd^2).
double quantized_normal_pmf(long m, double mean, double sd);

double poisson_entropy(const PoissonModel& model, double tol = 1e-15);
double poisson_me_bound(const PoissonModel& model);

double dma_covariance(const DmaModel& model, int k);
SpectralDensity dma_psd(const DmaModel& model);

struct HmmMoments {
    double alpha = 0.0;
    double beta = 0.0;
    double omega = 0.0;
};

/// Binomial emission only: alpha = d1 d2 (p2 - p1)^2, beta = d1 p1(1-p1) + d2 p2(1-p2).
HmmMoments hmm_alpha_beta_omega(const TwoStateHmm& model);

/// Spectrum parameters a (variance of the conditional mean), b (mean of the
/// conditional variance) and omega for either emission law.
MarkovMixture hmm_mixture(const TwoStateHmm& model);

double hmm_covariance(const TwoStateHmm& model, int k);
SpectralDensity hmm_psd(const TwoStateHmm& model);
BoundResult hmm_entropy_bound(const TwoStateHmm& model);

/// F(sigma, theta) = R_Y(0).
double qma_r0(const QuantizedMaModel& model, const QuantizedSpec& spec = {});
/// G(sigma, theta) = R_Y(1).
double qma_r1(const QuantizedMaModel& model, const QuantizedSpec& spec = {});
/// K = 2 G / (F + 1/12).
double qma_k_ratio(const QuantizedMaModel& model, const QuantizedSpec& spec = {});
/// Spectral bound via the closed-form log-cosine integral; throws DomainError when |K| > 1.
double qma_th1_bound(const QuantizedMaModel& model, const QuantizedSpec& spec = {});
/// H(Y_{n+1} | Y_n).
double qma_conditional_entropy(const QuantizedMaModel& model, const QuantizedSpec& spec = {});
/// Tridiagonal-t bound on (F, G).
double qma_th3_bound(const QuantizedMaModel& model, const QuantizedSpec& spec = {});

double qar_r0(const QuantizedArModel& model, const QuantizedSpec& spec = {});
double qar_rk(const QuantizedArModel& model, int k, const QuantizedSpec& spec = {});
/// Covariances R(0..k).
CovarianceSequence qar_covariances(const QuantizedArModel& model, int k, const QuantizedSpec& spec = {});
/// Banded-t bound on R(0..k), 1 <= k <= 4.
BoundResult qar_th2_bound(const QuantizedArModel& model, int k, const QuantizedSpec& spec = {});
/// H(Y_1 | Y_0).
double qar_conditional_entropy(const QuantizedArModel& model, const QuantizedSpec& spec = {});

/// Entropy of Q(Z), Z ~ N(0, sd^2).
double quantized_normal_entropy(double sd);

}  // namespace entrobound
