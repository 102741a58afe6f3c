#include "entrobound/bounds.hpp"
#include "entrobound/error.hpp"
#include "entrobound/figures.hpp"
#include "entrobound/montecarlo.hpp"
#include "entrobound/processes.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace entrobound;

namespace {

QuantizedSpec spec_for(bool fast) {
    return fast ? QuantizedSpec::fast() : QuantizedSpec{};
}

py::array_t<std::int64_t> to_array(const SamplePath& path) {
    py::array_t<std::int64_t> out(static_cast<py::ssize_t>(path.values.size()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        view(static_cast<py::ssize_t>(i)) = path.values[i];
    }
    return out;
}

SamplePath from_array(py::array_t<std::int64_t, py::array::c_style | py::array::forcecast> values) {
    const auto view = values.unchecked<1>();
    SamplePath path{PoissonModel{}, 0, std::vector<long>(static_cast<std::size_t>(view.shape(0)))};
    for (py::ssize_t i = 0; i < view.shape(0); ++i) {
        path.values[static_cast<std::size_t>(i)] = view(i);
    }
    return path;
}

py::tuple estimate(const EstimateWithError& e) {
    return py::make_tuple(e.value, e.std_error);
}

py::tuple bound(const BoundResult& b) {
    return py::make_tuple(b.value, b.argmin);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Entropy-rate upper bounds for integer-valued stationary processes";

    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
    static py::exception<ConvergenceError> convergence_error(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const DomainError& e) {
            domain_error(e.what());
        } catch (const ConvergenceError& e) {
            convergence_error(e.what());
        }
    });

    // bounds
    m.def("univariate_me_bound", &univariate_me_bound, py::arg("variance"));
    m.def(
        "gaussian_psd_bound",
        [](std::vector<double> cov) {
            return gaussian_psd_bound(psd_from_finite_covariance(CovarianceSequence(std::move(cov), true))).value;
        },
        py::arg("cov"), "Spectral bound for a covariance that vanishes past its last lag.");
    m.def(
        "gaussian_entropy_rate",
        [](std::vector<double> cov) {
            return gaussian_entropy_rate(psd_from_finite_covariance(CovarianceSequence(std::move(cov), true)));
        },
        py::arg("cov"));
    m.def(
        "tdist_bound_1", [](double r0, double r1) { return bound(tdist_bound_1(r0, r1)); }, py::arg("r0"),
        py::arg("r1"), "Returns (value, [s]).");
    m.def(
        "tdist_bound_k", [](std::vector<double> cov) { return bound(tdist_bound_k(CovarianceSequence(std::move(cov)))); },
        py::arg("cov"), "Returns (value, beta).");
    m.def(
        "toeplitz_gaussian_bound_finite",
        [](std::vector<double> cov, int n) {
            return toeplitz_gaussian_bound_finite(CovarianceSequence(std::move(cov), true), n);
        },
        py::arg("cov"), py::arg("n"));
    m.def("closed_form_log_cos_integral", &closed_form_log_cos_integral, py::arg("s"));

    // processes
    m.def(
        "poisson_entropy", [](double lambda) { return poisson_entropy(PoissonModel{lambda}); }, py::arg("lam"));
    m.def(
        "poisson_me_bound", [](double lambda) { return poisson_me_bound(PoissonModel{lambda}); }, py::arg("lam"));
    m.def(
        "qma_r0", [](double s, double t, bool fast) { return qma_r0({s, t}, spec_for(fast)); }, py::arg("sigma"),
        py::arg("theta"), py::arg("fast") = false);
    m.def(
        "qma_r1", [](double s, double t, bool fast) { return qma_r1({s, t}, spec_for(fast)); }, py::arg("sigma"),
        py::arg("theta"), py::arg("fast") = false);
    m.def(
        "qma_k_ratio", [](double s, double t, bool fast) { return qma_k_ratio({s, t}, spec_for(fast)); },
        py::arg("sigma"), py::arg("theta"), py::arg("fast") = false);
    m.def(
        "qma_th1_bound", [](double s, double t, bool fast) { return qma_th1_bound({s, t}, spec_for(fast)); },
        py::arg("sigma"), py::arg("theta"), py::arg("fast") = false);
    m.def(
        "qma_th3_bound", [](double s, double t, bool fast) { return qma_th3_bound({s, t}, spec_for(fast)); },
        py::arg("sigma"), py::arg("theta"), py::arg("fast") = false);
    m.def(
        "qma_conditional_entropy",
        [](double s, double t, bool fast) { return qma_conditional_entropy({s, t}, spec_for(fast)); },
        py::arg("sigma"), py::arg("theta"), py::arg("fast") = false);
    m.def(
        "qar_covariances",
        [](double s, double phi, double nu, int k, bool fast) {
            return qar_covariances({s, phi, nu}, k, spec_for(fast)).values();
        },
        py::arg("sigma"), py::arg("phi"), py::arg("nu"), py::arg("k"), py::arg("fast") = false);
    m.def(
        "qar_th2_bound",
        [](double s, double phi, double nu, int k, bool fast) {
            return bound(qar_th2_bound({s, phi, nu}, k, spec_for(fast)));
        },
        py::arg("sigma"), py::arg("phi"), py::arg("nu"), py::arg("k"), py::arg("fast") = false);
    m.def(
        "qar_conditional_entropy",
        [](double s, double phi, double nu, bool fast) { return qar_conditional_entropy({s, phi, nu}, spec_for(fast)); },
        py::arg("sigma"), py::arg("phi"), py::arg("nu"), py::arg("fast") = false);
    m.def(
        "dma_covariance",
        [](std::vector<double> weights, std::vector<long> support, std::vector<double> probabilities, int k) {
            return dma_covariance(DmaModel{std::move(weights), {std::move(support), std::move(probabilities)}}, k);
        },
        py::arg("weights"), py::arg("support"), py::arg("probabilities"), py::arg("k"));
    m.def(
        "hmm_binomial_covariance",
        [](double g1, double g2, int trials, double p1, double p2, int k) {
            return hmm_covariance(TwoStateHmm{g1, g2, BinomialEmission{trials, p1, p2}}, k);
        },
        py::arg("gamma1"), py::arg("gamma2"), py::arg("trials"), py::arg("p1"), py::arg("p2"), py::arg("k"));
    m.def(
        "hmm_binomial_bound",
        [](double g1, double g2, int trials, double p1, double p2) {
            return hmm_entropy_bound(TwoStateHmm{g1, g2, BinomialEmission{trials, p1, p2}}).value;
        },
        py::arg("gamma1"), py::arg("gamma2"), py::arg("trials"), py::arg("p1"), py::arg("p2"));

    // simulation
    m.def(
        "simulate_poisson", [](double lambda, long n, std::uint64_t seed) {
            return to_array(simulate(PoissonModel{lambda}, n, seed));
        },
        py::arg("lam"), py::arg("n"), py::arg("seed"));
    m.def(
        "simulate_dma",
        [](std::vector<double> weights, std::vector<long> support, std::vector<double> probabilities, long n,
           std::uint64_t seed) {
            return to_array(
                simulate(DmaModel{std::move(weights), {std::move(support), std::move(probabilities)}}, n, seed));
        },
        py::arg("weights"), py::arg("support"), py::arg("probabilities"), py::arg("n"), py::arg("seed"));
    m.def(
        "simulate_hmm_binomial",
        [](double g1, double g2, int trials, double p1, double p2, long n, std::uint64_t seed) {
            return to_array(simulate(TwoStateHmm{g1, g2, BinomialEmission{trials, p1, p2}}, n, seed));
        },
        py::arg("gamma1"), py::arg("gamma2"), py::arg("trials"), py::arg("p1"), py::arg("p2"), py::arg("n"),
        py::arg("seed"));
    m.def(
        "simulate_qma", [](double s, double t, long n, std::uint64_t seed) {
            return to_array(simulate(QuantizedMaModel{s, t}, n, seed));
        },
        py::arg("sigma"), py::arg("theta"), py::arg("n"), py::arg("seed"));
    m.def(
        "simulate_qar", [](double s, double phi, double nu, long n, std::uint64_t seed) {
            return to_array(simulate(QuantizedArModel{s, phi, nu}, n, seed));
        },
        py::arg("sigma"), py::arg("phi"), py::arg("nu"), py::arg("n"), py::arg("seed"));
    m.def(
        "empirical_covariance", [](py::array_t<std::int64_t> path, int k) {
            return estimate(empirical_covariance(from_array(path), k));
        },
        py::arg("path"), py::arg("k"), "Returns (value, batch-means standard error).");
    m.def(
        "empirical_conditional_entropy",
        [](py::array_t<std::int64_t> path) { return estimate(empirical_conditional_entropy(from_array(path))); },
        py::arg("path"));

    // tables
    py::class_<Table>(m, "Table")
        .def_readonly("columns", &Table::columns)
        .def_readonly("rows", &Table::rows)
        .def_readonly("notes", &Table::notes)
        .def("to_csv", &Table::to_csv)
        .def("to_json", &Table::to_json)
        .def("__len__", [](const Table& t) { return t.rows.size(); });
    m.def("make_grid", &make_grid, py::arg("lo"), py::arg("hi"), py::arg("step"));
    m.def("fig1", &run_fig1, py::arg("lambdas"));
    m.def(
        "fig2",
        [](std::vector<double> sigmas, std::vector<double> thetas, bool fast) {
            return run_fig2(sigmas, thetas, FigureOptions{fast});
        },
        py::arg("sigmas"), py::arg("thetas"), py::arg("fast") = false);
    m.def(
        "fig3", [](double sigma, std::vector<double> thetas, bool fast) {
            return run_fig3(sigma, thetas, FigureOptions{fast});
        },
        py::arg("sigma"), py::arg("thetas"), py::arg("fast") = false);
    m.def(
        "fig4",
        [](double sigma, double nu, std::vector<double> phis, std::vector<int> ks, bool fast) {
            return run_fig4(sigma, nu, phis, ks, FigureOptions{fast});
        },
        py::arg("sigma"), py::arg("nu"), py::arg("phis"), py::arg("ks"), py::arg("fast") = false);
    m.def(
        "bound_cov", [](std::vector<double> cov) { return run_bound_cov(CovarianceSequence(std::move(cov))); },
        py::arg("cov"));
}
