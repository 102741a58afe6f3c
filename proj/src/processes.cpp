#include "entrobound/processes.hpp"

#include "entrobound/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace entrobound {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(kTwoPi);

double normal_density(double s, double sd) {
    const double z = s / sd;
    return kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
}

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw DomainError(message);
    }
}

// Joint law of (A, B) = (Q(a_coef s + N(0, a_sd^2)), Q(b_coef s + N(0, b_sd^2)))
// with s ~ N(0, outer_sd^2) and the two noises independent given s. A is the
// conditioning variable, with marginal N(0, marginal_sd^2) before quantizing.
struct PairLaw {
    double outer_sd;
    double a_coef;
    double a_sd;
    double b_coef;
    double b_sd;
    double marginal_sd;
};

class JointTable {
public:
    explicit JointTable(long box) : box_(box), width_(2 * box + 1), mass_(width_ * width_, 0.0) {}

    long box() const { return box_; }
    double& at(long i, long j) { return mass_[(i + box_) * width_ + (j + box_)]; }
    double at(long i, long j) const { return mass_[(i + box_) * width_ + (j + box_)]; }
    std::vector<double>& raw() { return mass_; }
    const std::vector<double>& raw() const { return mass_; }

private:
    long box_;
    long width_;
    std::vector<double> mass_;
};

struct Window {
    long lo;
    long hi;
};

Window pmf_window(double mean, double sd, long box) {
    const double reach = 9.0 * sd + 1.0;
    return {std::max(-box, static_cast<long>(std::floor(mean - reach))),
            std::min(box, static_cast<long>(std::ceil(mean + reach)))};
}

// Adds weight * pmf_A(. | s) (x) pmf_B(. | s) into the table.
void accumulate_node(JointTable& table, const PairLaw& law, double s, double weight, std::vector<double>& a_buf,
                     std::vector<double>& b_buf) {
    const long box = table.box();
    const double a_mean = law.a_coef * s;
    const double b_mean = law.b_coef * s;
    const Window wa = pmf_window(a_mean, law.a_sd, box);
    const Window wb = pmf_window(b_mean, law.b_sd, box);
    if (wa.lo > wa.hi || wb.lo > wb.hi) {
        return;
    }
    a_buf.resize(wa.hi - wa.lo + 1);
    b_buf.resize(wb.hi - wb.lo + 1);
    for (long i = wa.lo; i <= wa.hi; ++i) {
        a_buf[i - wa.lo] = quantized_normal_pmf(i, a_mean, law.a_sd);
    }
    for (long j = wb.lo; j <= wb.hi; ++j) {
        b_buf[j - wb.lo] = weight * quantized_normal_pmf(j, b_mean, law.b_sd);
    }
    for (long i = wa.lo; i <= wa.hi; ++i) {
        const double pa = a_buf[i - wa.lo];
        if (pa == 0.0) {
            continue;
        }
        double* row = &table.at(i, wb.lo);
        for (long j = wb.lo; j <= wb.hi; ++j) {
            row[j - wb.lo] += pa * b_buf[j - wb.lo];
        }
    }
}

double conditional_entropy_of(const JointTable& table, double scale, double marginal_sd) {
    const long box = table.box();
    double h = 0.0;
    for (long i = -box; i <= box; ++i) {
        const double pi = quantized_normal_pmf(i, 0.0, marginal_sd);
        if (pi <= 0.0) {
            continue;
        }
        for (long j = -box; j <= box; ++j) {
            const double p = table.at(i, j) * scale;
            if (p > 0.0) {
                h -= p * std::log(p / pi);
            }
        }
    }
    return h;
}

double table_mass(const JointTable& table) {
    const auto& raw = table.raw();
    return std::accumulate(raw.begin(), raw.end(), 0.0);
}

double finish_conditional_entropy(JointTable& table, double scale, const PairLaw& law, const QuantizedSpec& spec) {
    const double mass = table_mass(table) * scale;
    if (std::abs(1.0 - mass) > spec.max_mass_deficit) {
        throw ConvergenceError("conditional entropy: truncated joint mass deficit " + std::to_string(1.0 - mass) +
                                   " exceeds tolerance; enlarge the index box",
                               mass, 1.0);
    }
    return conditional_entropy_of(table, scale / mass, law.marginal_sd);
}

long index_box(double marginal_sd) {
    return static_cast<long>(std::ceil(10.0 * marginal_sd)) + 2;
}

// H(A_next | A) for a PairLaw with a_sd > 0: trapezoid over s with node
// doubling, converged on the entropy value itself.
double pair_conditional_entropy(const PairLaw& law, const QuantizedSpec& spec) {
    const long box = index_box(law.marginal_sd);
    JointTable table(box);
    std::vector<double> a_buf;
    std::vector<double> b_buf;
    const double half_width = kGaussianCutoff * law.outer_sd;
    int n = 64;
    double h = 2.0 * half_width / n;
    for (int j = 0; j <= n; ++j) {
        const double s = -half_width + j * h;
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        accumulate_node(table, law, s, w * normal_density(s, law.outer_sd), a_buf, b_buf);
    }
    double previous = conditional_entropy_of(table, h / std::max(table_mass(table) * h, 1e-300), law.marginal_sd);
    while (2 * n <= spec.quadrature.max_points) {
        for (int j = 0; j < n; ++j) {
            const double s = -half_width + (j + 0.5) * h;
            accumulate_node(table, law, s, normal_density(s, law.outer_sd), a_buf, b_buf);
        }
        n *= 2;
        h *= 0.5;
        const double current = conditional_entropy_of(table, 1.0 / table_mass(table), law.marginal_sd);
        if (std::abs(current - previous) < spec.quadrature.abs_tol) {
            return finish_conditional_entropy(table, h, law, spec);
        }
        previous = current;
    }
    throw ConvergenceError("conditional entropy: quadrature did not converge", previous, previous);
}

// Same, for a_sd == 0: A = Q(a_coef s) is piecewise constant in s, so each
// A-bin is integrated separately with Gauss-Legendre.
double binned_conditional_entropy(const PairLaw& law, const QuantizedSpec& spec) {
    const long box = index_box(law.marginal_sd);
    JointTable table(box);
    const double half_width = kGaussianCutoff * law.outer_sd;
    QuadratureSpec gl = spec.quadrature;
    gl.method = QuadratureSpec::Method::gauss_legendre;
    for (long i = -box; i <= box; ++i) {
        // Bin i in s-space: a_coef s in [i - 1/2, i + 1/2).
        double lo = (i - 0.5) / law.a_coef;
        double hi = (i + 0.5) / law.a_coef;
        if (lo > hi) {
            std::swap(lo, hi);
        }
        lo = std::max(lo, -half_width);
        hi = std::min(hi, half_width);
        if (lo >= hi) {
            continue;
        }
        for (long j = -box; j <= box; ++j) {
            auto integrand = [&](double s) {
                return quantized_normal_pmf(j, law.b_coef * s, law.b_sd) * normal_density(s, law.outer_sd);
            };
            table.at(i, j) = integrate_interval(integrand, lo, hi, gl).value;
        }
    }
    return finish_conditional_entropy(table, 1.0, law, spec);
}

double conditional_entropy(const PairLaw& law, const QuantizedSpec& spec) {
    if (law.a_sd > 0.0) {
        return pair_conditional_entropy(law, spec);
    }
    return binned_conditional_entropy(law, spec);
}

}  // namespace

// --- validation -------------------------------------------------------------

void PoissonModel::validate() const {
    require(std::isfinite(lambda) && lambda >= 0.0, "PoissonModel: lambda must be finite and non-negative");
}

void DiscreteLaw::validate() const {
    require(!support.empty() && support.size() == probabilities.size(),
            "DiscreteLaw: support and probabilities must be non-empty and of equal length");
    double total = 0.0;
    for (double p : probabilities) {
        require(p >= 0.0, "DiscreteLaw: probabilities must be non-negative");
        total += p;
    }
    require(std::abs(total - 1.0) <= 1e-12, "DiscreteLaw: probabilities must sum to 1");
}

double DiscreteLaw::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        m += probabilities[i] * static_cast<double>(support[i]);
    }
    return m;
}

double DiscreteLaw::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const double d = static_cast<double>(support[i]) - m;
        v += probabilities[i] * d * d;
    }
    return v;
}

DiscreteLaw DiscreteLaw::uniform(long lo, long hi) {
    require(hi >= lo, "DiscreteLaw::uniform: empty range");
    DiscreteLaw law;
    const long count = hi - lo + 1;
    for (long v = lo; v <= hi; ++v) {
        law.support.push_back(v);
        law.probabilities.push_back(1.0 / static_cast<double>(count));
    }
    return law;
}

void DmaModel::validate() const {
    require(!mixture_weights.empty(), "DmaModel: mixture weights must be non-empty");
    double total = 0.0;
    for (double d : mixture_weights) {
        require(d >= 0.0, "DmaModel: mixture weights must be non-negative");
        total += d;
    }
    require(std::abs(total - 1.0) <= 1e-12, "DmaModel: mixture weights must sum to 1");
    innovation.validate();
    require(innovation.variance() > 0.0, "DmaModel: innovation variance must be positive");
}

void TwoStateHmm::validate() const {
    require(gamma1 > 0.0 && gamma1 < 1.0 && gamma2 > 0.0 && gamma2 < 1.0,
            "TwoStateHmm: transition probabilities must lie in (0, 1)");
    require(std::abs(omega()) < 1.0, "TwoStateHmm: |1 - gamma1 - gamma2| must be below 1");
    if (const auto* b = std::get_if<BinomialEmission>(&emission)) {
        require(b->trials >= 1, "TwoStateHmm: binomial trials must be positive");
        require(b->p1 >= 0.0 && b->p1 <= 1.0 && b->p2 >= 0.0 && b->p2 <= 1.0,
                "TwoStateHmm: binomial success probabilities must lie in [0, 1]");
    } else {
        const auto& p = std::get<PoissonEmission>(emission);
        require(p.lambda1 >= 0.0 && p.lambda2 >= 0.0 && std::isfinite(p.lambda1) && std::isfinite(p.lambda2),
                "TwoStateHmm: Poisson rates must be finite and non-negative");
    }
}

std::pair<double, double> TwoStateHmm::stationary() const {
    const double total = gamma1 + gamma2;
    return {gamma2 / total, gamma1 / total};
}

void QuantizedMaModel::validate() const {
    require(std::isfinite(sigma) && sigma > 0.0, "QuantizedMaModel: sigma must be positive");
    require(std::isfinite(theta) && theta >= 0.0, "QuantizedMaModel: theta must be non-negative");
}

void QuantizedArModel::validate() const {
    require(std::isfinite(sigma) && sigma > 0.0, "QuantizedArModel: sigma must be positive");
    require(std::abs(phi) < 1.0, "QuantizedArModel: |phi| must be below 1 for stationarity");
    require(std::isfinite(nu) && nu >= 0.0, "QuantizedArModel: nu must be non-negative");
}

QuantizedSpec QuantizedSpec::fast() {
    QuantizedSpec spec;
    spec.quadrature.abs_tol *= 10.0;
    spec.series.rel_tail_tol *= 10.0;
    spec.max_mass_deficit *= 10.0;
    return spec;
}

// --- quantized normal building blocks ---------------------------------------

long quantize(double s) {
    return static_cast<long>(std::ceil(s - 0.5));
}

double quantized_normal_pmf(long m, double mean, double sd) {
    if (sd == 0.0) {
        return quantize(mean) == m ? 1.0 : 0.0;
    }
    const double centre = static_cast<double>(m) - mean;
    return std_normal_interval((centre - 0.5) / sd, (centre + 0.5) / sd);
}

double expected_quantized_normal(double mean, double sd, const SeriesSpec& spec) {
    if (sd == 0.0) {
        return static_cast<double>(quantize(mean));
    }
    const long centre = quantize(mean);
    return bilateral_sum(
        [&](long j) {
            const long m = centre + j;
            return static_cast<double>(m) * quantized_normal_pmf(m, mean, sd);
        },
        spec);
}

double quantized_normal_second_moment(double sd, const SeriesSpec& spec) {
    if (sd == 0.0) {
        return 0.0;
    }
    return bilateral_sum(
        [&](long k) {
            const double kk = static_cast<double>(k);
            return kk * kk * quantized_normal_pmf(k, 0.0, sd);
        },
        spec);
}

double quantized_normal_entropy(double sd) {
    if (sd == 0.0) {
        return 0.0;
    }
    return bilateral_sum([&](long k) {
        const double p = quantized_normal_pmf(k, 0.0, sd);
        return p > 0.0 ? -p * std::log(p) : 0.0;
    });
}

// --- Poisson ----------------------------------------------------------------

double poisson_entropy(const PoissonModel& model, double tol) {
    model.validate();
    require(tol > 0.0, "poisson_entropy: tol must be positive");
    const double lambda = model.lambda;
    if (lambda == 0.0) {
        return 0.0;
    }
    const double log_lambda = std::log(lambda);
    double series = 0.0;
    double log_factorial = 0.0;
    // For k >= max(3, 4 lambda) consecutive terms at least halve, so the
    // tail after term k is bounded by term k.
    const double settle = std::max(3.0, 4.0 * lambda);
    for (long k = 1;; ++k) {
        log_factorial += std::log(static_cast<double>(k));
        const double term = std::exp(k * log_lambda - lambda - log_factorial) * log_factorial;
        series += term;
        if (k >= settle && term < tol) {
            break;
        }
    }
    return lambda * (1.0 - log_lambda) + series;
}

double poisson_me_bound(const PoissonModel& model) {
    model.validate();
    return univariate_me_bound(model.lambda);
}

// --- DMA ----------------------------------------------------------------------

double dma_covariance(const DmaModel& model, int k) {
    model.validate();
    k = std::abs(k);
    const double var = model.innovation_variance();
    if (k == 0) {
        return var;
    }
    const auto& d = model.mixture_weights;
    if (k >= static_cast<int>(d.size())) {
        return 0.0;
    }
    double overlap = 0.0;
    for (std::size_t j = 0; j + k < d.size(); ++j) {
        overlap += d[j] * d[j + k];
    }
    return var * overlap;
}

SpectralDensity dma_psd(const DmaModel& model) {
    std::vector<double> c(model.mixture_weights.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = dma_covariance(model, static_cast<int>(k));
    }
    return SpectralDensity(CosineSeries{std::move(c)});
}

// --- two-state HMM --------------------------------------------------------------

HmmMoments hmm_alpha_beta_omega(const TwoStateHmm& model) {
    model.validate();
    const auto* b = std::get_if<BinomialEmission>(&model.emission);
    require(b != nullptr, "hmm_alpha_beta_omega: requires binomial emission");
    const auto [d1, d2] = model.stationary();
    const double dp = b->p2 - b->p1;
    return {d1 * d2 * dp * dp, d1 * b->p1 * (1.0 - b->p1) + d2 * b->p2 * (1.0 - b->p2), model.omega()};
}

MarkovMixture hmm_mixture(const TwoStateHmm& model) {
    model.validate();
    if (std::holds_alternative<BinomialEmission>(model.emission)) {
        const auto n = static_cast<double>(std::get<BinomialEmission>(model.emission).trials);
        const HmmMoments m = hmm_alpha_beta_omega(model);
        return {n * n * m.alpha, n * m.beta, m.omega};
    }
    // Poisson: conditional mean and variance are both the state's rate.
    const auto& p = std::get<PoissonEmission>(model.emission);
    const auto [d1, d2] = model.stationary();
    const double dl = p.lambda2 - p.lambda1;
    return {d1 * d2 * dl * dl, d1 * p.lambda1 + d2 * p.lambda2, model.omega()};
}

double hmm_covariance(const TwoStateHmm& model, int k) {
    const MarkovMixture m = hmm_mixture(model);
    k = std::abs(k);
    if (k == 0) {
        return m.a + m.b;
    }
    return m.a * std::pow(m.omega, k);
}

SpectralDensity hmm_psd(const TwoStateHmm& model) {
    return SpectralDensity(hmm_mixture(model));
}

BoundResult hmm_entropy_bound(const TwoStateHmm& model) {
    return gaussian_psd_bound(hmm_psd(model));
}

// --- quantized MA(1) ------------------------------------------------------------

double qma_r0(const QuantizedMaModel& model, const QuantizedSpec& spec) {
    model.validate();
    return quantized_normal_second_moment(model.sigma * std::sqrt(1.0 + model.theta * model.theta), spec.series);
}

double qma_r1(const QuantizedMaModel& model, const QuantizedSpec& spec) {
    model.validate();
    if (model.theta == 0.0) {
        return 0.0;
    }
    const double sigma = model.sigma;
    const double theta = model.theta;
    // Conditioned on the shared innovation W_n = s the two factors are independent.
    auto integrand = [&](double s) {
        return expected_quantized_normal(theta * s, sigma, spec.series) *
               expected_quantized_normal(s, theta * sigma, spec.series);
    };
    return integrate_gaussian_weighted(integrand, sigma, spec.quadrature).value;
}

double qma_k_ratio(const QuantizedMaModel& model, const QuantizedSpec& spec) {
    return 2.0 * qma_r1(model, spec) / (qma_r0(model, spec) + kDitherVariance);
}

double qma_th1_bound(const QuantizedMaModel& model, const QuantizedSpec& spec) {
    const double f = qma_r0(model, spec);
    const double k = 2.0 * qma_r1(model, spec) / (f + kDitherVariance);
    if (std::abs(k) > 1.0) {
        throw DomainError("qma_th1_bound: |K| = " + std::to_string(std::abs(k)) +
                          " exceeds 1; the closed-form log-cosine integral does not apply");
    }
    return univariate_me_bound(f) + 0.5 * closed_form_log_cos_integral(k);
}

double qma_conditional_entropy(const QuantizedMaModel& model, const QuantizedSpec& spec) {
    model.validate();
    const double marginal_sd = model.sigma * std::sqrt(1.0 + model.theta * model.theta);
    if (model.theta == 0.0) {
        return quantized_normal_entropy(marginal_sd);
    }
    const PairLaw law{model.sigma, 1.0, model.theta * model.sigma, model.theta, model.sigma, marginal_sd};
    return conditional_entropy(law, spec);
}

double qma_th3_bound(const QuantizedMaModel& model, const QuantizedSpec& spec) {
    return tdist_bound_1(qma_r0(model, spec), qma_r1(model, spec)).value;
}

// --- quantized-hidden AR(1) -------------------------------------------------------

double qar_r0(const QuantizedArModel& model, const QuantizedSpec& spec) {
    model.validate();
    return quantized_normal_second_moment(std::sqrt(model.stationary_variance() + model.nu * model.nu), spec.series);
}

double qar_rk(const QuantizedArModel& model, int k, const QuantizedSpec& spec) {
    model.validate();
    require(k >= 1, "qar_rk: lag must be at least 1");
    if (model.phi == 0.0) {
        return 0.0;
    }
    const double sigma0 = std::sqrt(model.stationary_variance());
    const double phi_k = std::pow(model.phi, k);
    const double sigma_k2 = model.sigma * model.sigma * (1.0 - std::pow(model.phi, 2 * k)) / (1.0 - model.phi * model.phi);
    const double tail_sd = std::sqrt(sigma_k2 + model.nu * model.nu);
    auto later = [&](double s) { return expected_quantized_normal(phi_k * s, tail_sd, spec.series); };

    if (model.nu > 0.0) {
        auto integrand = [&](double s) { return expected_quantized_normal(s, model.nu, spec.series) * later(s); };
        return integrate_gaussian_weighted(integrand, sigma0, spec.quadrature).value;
    }
    // Noise-free observation: Q(s) is a step function, integrate bin by bin.
    QuadratureSpec gl = spec.quadrature;
    gl.method = QuadratureSpec::Method::gauss_legendre;
    const double half_width = kGaussianCutoff * sigma0;
    const long reach = static_cast<long>(std::ceil(half_width)) + 1;
    double total = 0.0;
    for (long m = -reach; m <= reach; ++m) {
        if (m == 0) {
            continue;
        }
        const double lo = std::max(m - 0.5, -half_width);
        const double hi = std::min(m + 0.5, half_width);
        if (lo >= hi) {
            continue;
        }
        total += static_cast<double>(m) *
                 integrate_interval([&](double s) { return later(s) * normal_density(s, sigma0); }, lo, hi, gl).value;
    }
    return total;
}

CovarianceSequence qar_covariances(const QuantizedArModel& model, int k, const QuantizedSpec& spec) {
    std::vector<double> r{qar_r0(model, spec)};
    for (int m = 1; m <= k; ++m) {
        r.push_back(qar_rk(model, m, spec));
    }
    return CovarianceSequence(std::move(r), false, "quantized-hidden AR(1)");
}

BoundResult qar_th2_bound(const QuantizedArModel& model, int k, const QuantizedSpec& spec) {
    require(k >= 1 && k <= 4, "qar_th2_bound: k must lie in [1, 4]");
    return tdist_bound_k(qar_covariances(model, k, spec));
}

double qar_conditional_entropy(const QuantizedArModel& model, const QuantizedSpec& spec) {
    model.validate();
    const double sigma0 = std::sqrt(model.stationary_variance());
    const double marginal_sd = std::sqrt(model.stationary_variance() + model.nu * model.nu);
    const double next_sd = std::sqrt(model.sigma * model.sigma + model.nu * model.nu);
    const PairLaw law{sigma0, 1.0, model.nu, model.phi, next_sd, marginal_sd};
    return conditional_entropy(law, spec);
}

}  // namespace entrobound
