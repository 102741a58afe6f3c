// entrobound: figure tables, bounds from covariance files, simulated paths.

#include "entrobound/error.hpp"
#include "entrobound/figures.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace eb = entrobound;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;

struct Grid {
    double lo;
    double hi;
    double step;
};

void add_grid(CLI::App* cmd, const std::string& name, Grid& g) {
    cmd->add_option("--" + name + "-min", g.lo, name + " grid start")->capture_default_str();
    cmd->add_option("--" + name + "-max", g.hi, name + " grid end")->capture_default_str();
    cmd->add_option("--" + name + "-step", g.step, name + " grid step")->capture_default_str();
}

struct HmmArgs {
    double gamma1 = 0.1;
    double gamma2 = 0.2;
    int trials = 1;
    double p1 = 0.2;
    double p2 = 0.8;
    double lambda1 = 1.0;
    double lambda2 = 5.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--gamma1", gamma1, "P(state 1 -> 2)")->capture_default_str();
        cmd->add_option("--gamma2", gamma2, "P(state 2 -> 1)")->capture_default_str();
        cmd->add_option("--trials", trials, "binomial N")->capture_default_str();
        cmd->add_option("--p1", p1)->capture_default_str();
        cmd->add_option("--p2", p2)->capture_default_str();
        cmd->add_option("--lambda1", lambda1)->capture_default_str();
        cmd->add_option("--lambda2", lambda2)->capture_default_str();
    }

    eb::TwoStateHmm build(const std::string& model) const {
        eb::TwoStateHmm hmm{gamma1, gamma2, eb::BinomialEmission{trials, p1, p2}};
        if (model == "hmm-poisson") {
            hmm.emission = eb::PoissonEmission{lambda1, lambda2};
        }
        return hmm;
    }
};

void write_output(const eb::Table& table, const std::string& path, const std::string& format) {
    const std::string body = format == "json" ? table.to_json() : table.to_csv();
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw eb::DomainError("cannot open output file '" + path + "'");
    }
    out << body;
    if (!out) {
        throw eb::DomainError("failed writing output file '" + path + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy-rate upper bounds for integer-valued stationary processes"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    bool fast = false;
    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output file")->required();
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->add_flag("--fast", fast, "loosen numerical tolerances tenfold");
    };

    Grid lambda{0.0, 10.0, 0.1};
    auto* fig1 = app.add_subcommand("fig1", "Poisson entropy and its dithered ME bound");
    add_grid(fig1, "lambda", lambda);
    common(fig1);

    Grid theta2{0.0, 2.0, 0.01};
    std::vector<double> sigmas{1.0, 5.0};
    auto* fig2 = app.add_subcommand("fig2", "K(sigma, theta) for the quantized MA(1)");
    add_grid(fig2, "theta", theta2);
    fig2->add_option("--sigma", sigmas, "one or more innovation std values")->delimiter(',')->capture_default_str();
    common(fig2);

    Grid theta3{0.0, 2.0, 0.1};
    double sigma3 = 1.0;
    auto* fig3 = app.add_subcommand("fig3", "quantized MA(1): conditional entropy vs the two bounds");
    add_grid(fig3, "theta", theta3);
    fig3->add_option("--sigma", sigma3)->capture_default_str();
    common(fig3);

    Grid phi{0.7, 0.98, 0.02};
    double sigma4 = 1.0;
    double nu4 = 4.0;
    std::vector<int> ks{2, 3};
    auto* fig4 = app.add_subcommand("fig4", "quantized noisy AR(1): conditional entropy vs banded-t bounds");
    add_grid(fig4, "phi", phi);
    fig4->add_option("--sigma", sigma4)->capture_default_str();
    fig4->add_option("--nu", nu4)->capture_default_str();
    fig4->add_option("--k", ks, "bandwidths in [1, 4]")->delimiter(',')->capture_default_str();
    common(fig4);

    std::string cov_path;
    auto* bound_cov = app.add_subcommand("bound-cov", "tridiagonal and banded-t bounds from R(0..k)");
    bound_cov->add_option("--cov", cov_path, "file with one line R0,R1,...,Rk")->required();
    common(bound_cov);

    std::string psd_model = "cov";
    HmmArgs psd_hmm;
    auto* bound_psd = app.add_subcommand("bound-psd", "spectral bound and Gaussian entropy rate");
    bound_psd->add_option("--model", psd_model, "cov, hmm-binomial or hmm-poisson")
        ->check(CLI::IsMember({"cov", "hmm-binomial", "hmm-poisson"}))
        ->capture_default_str();
    bound_psd->add_option("--cov", cov_path, "covariance file, taken as finitely supported");
    psd_hmm.attach(bound_psd);
    common(bound_psd);

    std::string sim_model;
    long n = 1000;
    std::uint64_t seed = 1;
    double sim_lambda = 1.0;
    std::vector<double> weights{1.0};
    long support_lo = 0;
    long support_hi = 1;
    double sim_sigma = 1.0;
    double sim_theta = 0.0;
    double sim_phi = 0.0;
    double sim_nu = 0.0;
    HmmArgs sim_hmm;
    auto* sim = app.add_subcommand("simulate", "seeded sample path");
    sim->add_option("--model", sim_model, "poisson, dma, hmm-binomial, hmm-poisson, qma or qar")
        ->required()
        ->check(CLI::IsMember({"poisson", "dma", "hmm-binomial", "hmm-poisson", "qma", "qar"}));
    sim->add_option("--n", n, "path length")->capture_default_str();
    sim->add_option("--seed", seed)->capture_default_str();
    sim->add_option("--lambda", sim_lambda)->capture_default_str();
    sim->add_option("--weights", weights, "DMA mixture weights")->delimiter(',');
    sim->add_option("--support-lo", support_lo, "DMA uniform innovation support start")->capture_default_str();
    sim->add_option("--support-hi", support_hi, "DMA uniform innovation support end")->capture_default_str();
    sim->add_option("--sigma", sim_sigma)->capture_default_str();
    sim->add_option("--theta", sim_theta)->capture_default_str();
    sim->add_option("--phi", sim_phi)->capture_default_str();
    sim->add_option("--nu", sim_nu)->capture_default_str();
    sim_hmm.attach(sim);
    common(sim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        const eb::FigureOptions opt{fast};
        eb::Table table;
        if (*fig1) {
            table = eb::run_fig1(eb::make_grid(lambda.lo, lambda.hi, lambda.step));
        } else if (*fig2) {
            table = eb::run_fig2(sigmas, eb::make_grid(theta2.lo, theta2.hi, theta2.step), opt);
        } else if (*fig3) {
            table = eb::run_fig3(sigma3, eb::make_grid(theta3.lo, theta3.hi, theta3.step), opt);
        } else if (*fig4) {
            table = eb::run_fig4(sigma4, nu4, eb::make_grid(phi.lo, phi.hi, phi.step), ks, opt);
        } else if (*bound_cov) {
            table = eb::run_bound_cov(eb::read_covariance_file(cov_path));
        } else if (*bound_psd) {
            if (psd_model == "cov") {
                if (cov_path.empty()) {
                    throw eb::DomainError("bound-psd: --cov is required with --model cov");
                }
                table = eb::run_bound_psd(eb::read_covariance_file(cov_path));
            } else {
                table = eb::run_bound_psd(psd_hmm.build(psd_model));
            }
        } else if (*sim) {
            eb::ProcessModel model;
            if (sim_model == "poisson") {
                model = eb::PoissonModel{sim_lambda};
            } else if (sim_model == "dma") {
                model = eb::DmaModel{weights, eb::DiscreteLaw::uniform(support_lo, support_hi)};
            } else if (sim_model == "qma") {
                model = eb::QuantizedMaModel{sim_sigma, sim_theta};
            } else if (sim_model == "qar") {
                model = eb::QuantizedArModel{sim_sigma, sim_phi, sim_nu};
            } else {
                model = sim_hmm.build(sim_model);
            }
            table = eb::run_simulate(model, n, seed);
        }
        write_output(table, out_path, format);
    } catch (const eb::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const eb::ConvergenceError& e) {
        std::fprintf(stderr, "error: %s (last iterate %.9g, previous %.9g)\n", e.what(), e.last(), e.previous());
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
