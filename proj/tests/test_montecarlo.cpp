#include "entrobound/error.hpp"
#include "entrobound/montecarlo.hpp"

#include <doctest.h>

#include <cmath>

using namespace entrobound;

namespace {

bool within(const EstimateWithError& e, double truth, double sigmas) {
    return std::abs(e.value - truth) <= sigmas * e.std_error;
}

}  // namespace

TEST_CASE("simulate basics") {
    CHECK_THROWS_AS(simulate(PoissonModel{1.0}, 0, 1), DomainError);
    CHECK_THROWS_AS(simulate(QuantizedArModel{1.0, 1.0, 0.0}, 10, 1), DomainError);

    const SamplePath a = simulate(QuantizedMaModel{1.0, 0.7}, 1000, 42);
    const SamplePath b = simulate(QuantizedMaModel{1.0, 0.7}, 1000, 42);
    const SamplePath c = simulate(QuantizedMaModel{1.0, 0.7}, 1000, 43);
    CHECK(a.length() == 1000);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.seed == 42);

    // delta = [1]: the path is the innovation sequence itself.
    const DmaModel iid{{1.0}, DiscreteLaw{{3, 7}, {0.5, 0.5}}};
    const SamplePath p = simulate(iid, 5000, 1);
    for (long v : p.values) {
        CHECK((v == 3 || v == 7));
    }
    CHECK(std::abs(empirical_covariance(p, 1).value) < 5.0 * empirical_covariance(p, 1).std_error + 1e-12);
}

TEST_CASE("empirical_covariance") {
    SamplePath constant{PoissonModel{0.0}, 0, std::vector<long>(10000, 4)};
    CHECK(empirical_covariance(constant, 1).value == 0.0);
    CHECK(empirical_covariance(constant, 0).std_error == 0.0);
    CHECK_THROWS_AS(empirical_covariance(constant, 1000), DomainError);

    const DmaModel sign{{1.0}, DiscreteLaw{{-1, 1}, {0.5, 0.5}}};
    const SamplePath s = simulate(sign, 200000, 9);
    CHECK(within(empirical_covariance(s, 0), 1.0, 4.0));
    CHECK(within(empirical_covariance(s, 1), 0.0, 4.0));
    CHECK(empirical_covariance(s, 0).n_samples == 200000);
}

TEST_CASE("empirical_conditional_entropy") {
    const DmaModel uniform8{{1.0}, DiscreteLaw::uniform(0, 7)};
    const EstimateWithError h = empirical_conditional_entropy(simulate(uniform8, 1000000, 5));
    CHECK(h.std_error > 0.0);
    CHECK(std::abs(h.value - std::log(8.0)) < 4.0 * h.std_error + 1e-3);

    std::vector<long> alternating(200000);
    for (std::size_t i = 0; i < alternating.size(); ++i) {
        alternating[i] = static_cast<long>(i % 2);
    }
    CHECK(std::abs(empirical_conditional_entropy({PoissonModel{}, 0, alternating}).value) < 1e-12);
    CHECK_THROWS_AS(empirical_conditional_entropy(simulate(uniform8, 1000, 5)), DomainError);
}

TEST_CASE("simulation oracles at 1e7 steps") {
    const long n = 10'000'000;
    SUBCASE("quantized MA marginal variance") {
        const QuantizedMaModel m{1.0, 0.0};
        CHECK(within(empirical_covariance(simulate(m, n, 101), 0), qma_r0(m), 4.0));
    }
    SUBCASE("quantized AR lag covariances") {
        const QuantizedArModel m{1.0, 0.9, 4.0};
        const SamplePath p = simulate(m, n, 202);
        CHECK(within(empirical_covariance(p, 0), qar_r0(m), 4.0));
        for (int k = 1; k <= 3; ++k) {
            CHECK(within(empirical_covariance(p, k), qar_rk(m, k), 4.0));
        }
    }
    SUBCASE("quantized MA conditional entropy") {
        const QuantizedMaModel m{1.0, 1.0};
        CHECK(std::abs(empirical_conditional_entropy(simulate(m, n, 303)).value - qma_conditional_entropy(m)) < 1e-2);
    }
}

TEST_CASE("dithering: histogram entropy of Y + U equals H(Y)") {
    const DiscreteLaw law{{0, 1, 2}, {0.5, 0.3, 0.2}};
    const double exact = -(0.5 * std::log(0.5) + 0.3 * std::log(0.3) + 0.2 * std::log(0.2));
    const SamplePath p = simulate(DmaModel{{1.0}, law}, 10'000'000, 77);
    const EstimateWithError h = dithered_histogram_entropy(p, 78);
    CHECK(std::abs(h.value - exact) < 5e-3);
}
