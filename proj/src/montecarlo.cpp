#include "entrobound/montecarlo.hpp"

#include "entrobound/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

namespace entrobound {

namespace {

using Engine = std::mt19937_64;

long draw(const DiscreteLaw& law, std::discrete_distribution<std::size_t>& pick, Engine& rng) {
    return law.support[pick(rng)];
}

std::vector<long> simulate_poisson(const PoissonModel& m, long n, Engine& rng) {
    m.validate();
    std::vector<long> out(n);
    if (m.lambda == 0.0) {
        return out;
    }
    std::poisson_distribution<long> dist(m.lambda);
    for (auto& v : out) {
        v = dist(rng);
    }
    return out;
}

std::vector<long> simulate_dma(const DmaModel& m, long n, Engine& rng) {
    m.validate();
    const int order = m.order();
    std::discrete_distribution<std::size_t> innovation(m.innovation.probabilities.begin(),
                                                       m.innovation.probabilities.end());
    std::discrete_distribution<int> lag(m.mixture_weights.begin(), m.mixture_weights.end());
    // ring[i] holds Y_{t - i}; the first L pre-samples act as burn-in.
    std::vector<long> ring(order + 1);
    for (int i = order; i >= 1; --i) {
        ring[i] = draw(m.innovation, innovation, rng);
    }
    std::vector<long> out(n);
    for (long t = 0; t < n; ++t) {
        std::rotate(ring.rbegin(), ring.rbegin() + 1, ring.rend());
        ring[0] = draw(m.innovation, innovation, rng);
        out[t] = ring[lag(rng)];
    }
    return out;
}

std::vector<long> simulate_hmm(const TwoStateHmm& m, long n, Engine& rng) {
    m.validate();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double delta1 = m.stationary().first;
    int state = unit(rng) < delta1 ? 0 : 1;
    std::vector<long> out(n);
    if (const auto* b = std::get_if<BinomialEmission>(&m.emission)) {
        std::binomial_distribution<long> emit[2] = {std::binomial_distribution<long>(b->trials, b->p1),
                                                    std::binomial_distribution<long>(b->trials, b->p2)};
        for (long t = 0; t < n; ++t) {
            out[t] = emit[state](rng);
            state = state == 0 ? (unit(rng) < m.gamma1 ? 1 : 0) : (unit(rng) < m.gamma2 ? 0 : 1);
        }
    } else {
        const auto& p = std::get<PoissonEmission>(m.emission);
        const double rates[2] = {p.lambda1, p.lambda2};
        std::poisson_distribution<long> emit[2] = {std::poisson_distribution<long>(std::max(p.lambda1, 1e-300)),
                                                   std::poisson_distribution<long>(std::max(p.lambda2, 1e-300))};
        for (long t = 0; t < n; ++t) {
            out[t] = rates[state] == 0.0 ? 0 : emit[state](rng);
            state = state == 0 ? (unit(rng) < m.gamma1 ? 1 : 0) : (unit(rng) < m.gamma2 ? 0 : 1);
        }
    }
    return out;
}

std::vector<long> simulate_qma(const QuantizedMaModel& m, long n, Engine& rng) {
    m.validate();
    std::normal_distribution<double> w(0.0, m.sigma);
    double previous = w(rng);  // burn-in
    std::vector<long> out(n);
    for (long t = 0; t < n; ++t) {
        const double current = w(rng);
        out[t] = quantize(current + m.theta * previous);
        previous = current;
    }
    return out;
}

std::vector<long> simulate_qar(const QuantizedArModel& m, long n, Engine& rng) {
    m.validate();
    std::normal_distribution<double> normal(0.0, 1.0);
    double x = std::sqrt(m.stationary_variance()) * normal(rng);
    std::vector<long> out(n);
    for (long t = 0; t < n; ++t) {
        if (t > 0) {
            x = m.phi * x + m.sigma * normal(rng);
        }
        out[t] = quantize(x + m.nu * normal(rng));
    }
    return out;
}

struct Simulator {
    long n;
    Engine& rng;

    std::vector<long> operator()(const PoissonModel& m) const { return simulate_poisson(m, n, rng); }
    std::vector<long> operator()(const DmaModel& m) const { return simulate_dma(m, n, rng); }
    std::vector<long> operator()(const TwoStateHmm& m) const { return simulate_hmm(m, n, rng); }
    std::vector<long> operator()(const QuantizedMaModel& m) const { return simulate_qma(m, n, rng); }
    std::vector<long> operator()(const QuantizedArModel& m) const { return simulate_qar(m, n, rng); }
};

// Batch-means standard error of the full-sample statistic.
EstimateWithError batch_estimate(double full, const std::vector<double>& batches, long samples) {
    double mean = 0.0;
    for (double b : batches) {
        mean += b;
    }
    mean /= static_cast<double>(batches.size());
    double ss = 0.0;
    for (double b : batches) {
        ss += (b - mean) * (b - mean);
    }
    const double nb = static_cast<double>(batches.size());
    return {full, std::sqrt(ss / (nb - 1.0) / nb), samples};
}

double plug_in_conditional_entropy(const std::vector<long>& y, long begin, long end) {
    std::unordered_map<long, long> singles;
    std::map<std::pair<long, long>, long> pairs;
    for (long t = begin; t + 1 < end; ++t) {
        ++singles[y[t]];
        ++pairs[{y[t], y[t + 1]}];
    }
    const double total = static_cast<double>(end - begin - 1);
    double h = 0.0;
    for (const auto& [key, count] : pairs) {
        const double c = static_cast<double>(count);
        h -= c / total * std::log(c / static_cast<double>(singles[key.first]));
    }
    return h;
}

}  // namespace

SamplePath simulate(const ProcessModel& model, long n, std::uint64_t seed) {
    if (n < 1) {
        throw DomainError("simulate: n must be at least 1");
    }
    Engine rng(seed);
    SamplePath path{model, seed, std::visit(Simulator{n, rng}, model)};
    return path;
}

EstimateWithError empirical_covariance(const SamplePath& path, int k) {
    const long len = path.length();
    if (k < 0 || static_cast<long>(k) * 10 >= len) {
        throw DomainError("empirical_covariance: requires 0 <= k < length/10");
    }
    if (len < 10L * kBatchCount) {
        throw DomainError("empirical_covariance: path too short for batch means");
    }
    const auto& y = path.values;
    double mean = 0.0;
    for (long v : y) {
        mean += static_cast<double>(v);
    }
    mean /= static_cast<double>(len);

    const long pairs = len - k;
    const long per_batch = pairs / kBatchCount;
    std::vector<double> batches(kBatchCount, 0.0);
    double full = 0.0;
    for (int b = 0; b < kBatchCount; ++b) {
        const long lo = b * per_batch;
        const long hi = b == kBatchCount - 1 ? pairs : lo + per_batch;
        double acc = 0.0;
        for (long t = lo; t < hi; ++t) {
            acc += (static_cast<double>(y[t]) - mean) * (static_cast<double>(y[t + k]) - mean);
        }
        full += acc;
        batches[b] = acc / static_cast<double>(hi - lo);
    }
    return batch_estimate(full / static_cast<double>(pairs), batches, len);
}

EstimateWithError empirical_conditional_entropy(const SamplePath& path) {
    const long len = path.length();
    if (len < 100000) {
        throw DomainError("empirical_conditional_entropy: requires length >= 1e5");
    }
    const long per_batch = len / kBatchCount;
    std::vector<double> batches(kBatchCount);
    for (int b = 0; b < kBatchCount; ++b) {
        const long lo = b * per_batch;
        const long hi = b == kBatchCount - 1 ? len : lo + per_batch;
        batches[b] = plug_in_conditional_entropy(path.values, lo, hi);
    }
    return batch_estimate(plug_in_conditional_entropy(path.values, 0, len), batches, len);
}

EstimateWithError dithered_histogram_entropy(const SamplePath& path, std::uint64_t dither_seed, int bins_per_unit) {
    if (bins_per_unit < 1) {
        throw DomainError("dithered_histogram_entropy: bins_per_unit must be positive");
    }
    const long len = path.length();
    if (len < 10L * kBatchCount) {
        throw DomainError("dithered_histogram_entropy: path too short for batch means");
    }
    Engine rng(dither_seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<long> bins(len);
    for (long t = 0; t < len; ++t) {
        const double x = static_cast<double>(path.values[t]) + u(rng);
        bins[t] = static_cast<long>(std::floor(x * bins_per_unit));
    }
    const double width = 1.0 / bins_per_unit;
    auto estimate = [&](long lo, long hi) {
        std::unordered_map<long, long> counts;
        for (long t = lo; t < hi; ++t) {
            ++counts[bins[t]];
        }
        const double total = static_cast<double>(hi - lo);
        double h = 0.0;
        for (const auto& [bin, count] : counts) {
            const double p = static_cast<double>(count) / total;
            h -= p * std::log(p / width);
        }
        return h;
    };
    const long per_batch = len / kBatchCount;
    std::vector<double> batches(kBatchCount);
    for (int b = 0; b < kBatchCount; ++b) {
        const long lo = b * per_batch;
        batches[b] = estimate(lo, b == kBatchCount - 1 ? len : lo + per_batch);
    }
    return batch_estimate(estimate(0, len), batches, len);
}

}  // namespace entrobound
