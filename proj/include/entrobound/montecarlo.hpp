#pragma once

// Seeded sample paths for every example process, plus the empirical
// estimators used to cross-check the analytic covariances and entropies.

#include "entrobound/processes.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace entrobound {

using ProcessModel = std::variant<PoissonModel, DmaModel, TwoStateHmm, QuantizedMaModel, QuantizedArModel>;

struct SamplePath {
    ProcessModel model;
    std::uint64_t seed = 0;
    std::vector<long> values;

    long length() const { return static_cast<long>(values.size()); }
};

struct EstimateWithError {
    double value = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
};

/// Stationary-start path of length n. Same (model, n, seed) gives the same path.
SamplePath simulate(const ProcessModel& model, long n, std::uint64_t seed);

inline constexpr int kBatchCount = 64;

/// Lag-k sample autocovariance; std_error from 64 batch means. Needs k < length/10.
EstimateWithError empirical_covariance(const SamplePath& path, int k);

/// Plug-in H(Y_1 | Y_0) from pair frequencies. Biased low. Needs length >= 1e5.
EstimateWithError empirical_conditional_entropy(const SamplePath& path);

/// Histogram estimate of h(Y + U), U ~ Uniform[0,1), bins of width 1/bins_per_unit.
/// For i.i.d. Y this should match the discrete entropy of Y.
EstimateWithError dithered_histogram_entropy(const SamplePath& path, std::uint64_t dither_seed,
                                             int bins_per_unit = 4);

}  // namespace entrobound
