#pragma once

// Table builders behind the command-line tool: figure reproductions, bounds
// for user-supplied covariances or spectra, and simulated paths.

#include "entrobound/bounds.hpp"
#include "entrobound/montecarlo.hpp"
#include "entrobound/processes.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace entrobound {

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;

    /// Header row, then one line per row; reals with 9 significant digits.
    /// Notes become leading "# " lines.
    std::string to_csv() const;
    /// {"columns": [...], "rows": [{column: value}, ...], "notes": [...]}; non-finite reals become null.
    std::string to_json() const;
};

/// lo, lo + step, ..., hi (inclusive, hi snapped when within step/1000).
std::vector<double> make_grid(double lo, double hi, double step);

/// Worker count: ENTROBOUND_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Runs task(0..n-1) on up to worker_count() threads. Results keep index order;
/// if any task throws, the exception from the lowest index is rethrown.
void parallel_for(int n, const std::function<void(int)>& task);

struct FigureOptions {
    bool fast = false;

    QuantizedSpec quantized() const { return fast ? QuantizedSpec::fast() : QuantizedSpec{}; }
};

Table run_fig1(const std::vector<double>& lambdas);
Table run_fig2(const std::vector<double>& sigmas, const std::vector<double>& thetas, const FigureOptions& opt = {});
Table run_fig3(double sigma, const std::vector<double>& thetas, const FigureOptions& opt = {});
Table run_fig4(double sigma, double nu, const std::vector<double>& phis, const std::vector<int>& ks,
               const FigureOptions& opt = {});

/// Parses "R0,R1,...,Rk" with optional '#' comment lines and blank lines.
CovarianceSequence parse_covariance_text(const std::string& text);
CovarianceSequence read_covariance_file(const std::string& path);

Table run_bound_cov(const CovarianceSequence& cov);
/// Treats cov as finitely supported (zero beyond lag k).
Table run_bound_psd(const CovarianceSequence& cov);
Table run_bound_psd(const TwoStateHmm& model);
Table run_simulate(const ProcessModel& model, long n, std::uint64_t seed);

}  // namespace entrobound
