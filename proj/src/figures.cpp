#include "entrobound/figures.hpp"

#include "entrobound/error.hpp"

#include <json.hpp>

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace entrobound {

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

struct CsvCell {
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const {
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string quoted = "\"";
        for (char c : s) {
            quoted += c;
            if (c == '"') {
                quoted += '"';
            }
        }
        return quoted + "\"";
    }
};

struct JsonCell {
    nlohmann::ordered_json operator()(double v) const {
        return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
    }
    nlohmann::ordered_json operator()(long v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
};

std::string column_label(const char* prefix, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%g", prefix, v);
    return buf;
}

std::string join_reals(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? ";" : "") + format_real(xs[i]);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string Table::to_csv() const {
    std::string out;
    for (const auto& note : notes) {
        out += "# " + note + "\n";
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out += (c ? "," : "") + columns[c];
    }
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += (c ? "," : "") + std::visit(CsvCell{}, row[c]);
        }
        out += "\n";
    }
    return out;
}

std::string Table::to_json() const {
    nlohmann::ordered_json doc;
    doc["columns"] = columns;
    auto records = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json record = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size() && c < columns.size(); ++c) {
            record[columns[c]] = std::visit(JsonCell{}, row[c]);
        }
        records.push_back(std::move(record));
    }
    doc["rows"] = std::move(records);
    doc["notes"] = notes;
    return doc.dump(2) + "\n";
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
        throw DomainError("grid: need finite lo <= hi and step > 0");
    }
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-3)) + 1;
    if (count > 10000000) {
        throw DomainError("grid: too many points");
    }
    std::vector<double> grid(count);
    for (long i = 0; i < count; ++i) {
        grid[i] = lo + static_cast<double>(i) * step;
    }
    if (std::abs(grid.back() - hi) < step * 1e-3) {
        grid.back() = hi;
    }
    return grid;
}

int worker_count() {
    if (const char* env = std::getenv("ENTROBOUND_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) {
            return static_cast<int>(n);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& task) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::min(worker_count(), n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

Table run_fig1(const std::vector<double>& lambdas) {
    Table t{{"lambda", "H_poisson", "ME_bound"}, {}, {}};
    for (double lambda : lambdas) {
        const PoissonModel m{lambda};
        t.rows.push_back({lambda, poisson_entropy(m), poisson_me_bound(m)});
    }
    return t;
}

Table run_fig2(const std::vector<double>& sigmas, const std::vector<double>& thetas, const FigureOptions& opt) {
    Table t;
    t.columns.push_back("theta");
    for (double s : sigmas) {
        t.columns.push_back(column_label("K_sigma", s));
    }
    const int n = static_cast<int>(thetas.size());
    const int m = static_cast<int>(sigmas.size());
    std::vector<double> k(static_cast<std::size_t>(n) * m);
    const QuantizedSpec spec = opt.quantized();
    parallel_for(n * m, [&](int idx) {
        k[idx] = qma_k_ratio({sigmas[idx % m], thetas[idx / m]}, spec);
    });
    for (int i = 0; i < n; ++i) {
        std::vector<Cell> row{thetas[i]};
        for (int j = 0; j < m; ++j) {
            row.emplace_back(k[static_cast<std::size_t>(i) * m + j]);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table run_fig3(double sigma, const std::vector<double>& thetas, const FigureOptions& opt) {
    Table t{{"theta", "H_CE", "H_TH1", "H_TH3"}, {}, {}};
    const int n = static_cast<int>(thetas.size());
    std::vector<std::array<double, 3>> out(n);
    const QuantizedSpec spec = opt.quantized();
    parallel_for(n, [&](int i) {
        const QuantizedMaModel model{sigma, thetas[i]};
        const double f = qma_r0(model, spec);
        const double g = qma_r1(model, spec);
        const double k = 2.0 * g / (f + kDitherVariance);
        if (std::abs(k) > 1.0) {
            throw DomainError("fig3: |K| exceeds 1 at theta = " + format_real(thetas[i]));
        }
        out[i] = {qma_conditional_entropy(model, spec),
                  univariate_me_bound(f) + 0.5 * closed_form_log_cos_integral(k), tdist_bound_1(f, g).value};
    });
    for (int i = 0; i < n; ++i) {
        t.rows.push_back({thetas[i], out[i][0], out[i][1], out[i][2]});
    }
    return t;
}

Table run_fig4(double sigma, double nu, const std::vector<double>& phis, const std::vector<int>& ks,
               const FigureOptions& opt) {
    int k_max = 1;
    for (int k : ks) {
        if (k < 1 || k > 4) {
            throw DomainError("fig4: k must lie in [1, 4]");
        }
        k_max = std::max(k_max, k);
    }
    Table t;
    t.columns = {"phi", "H_CE_AR"};
    for (int k : ks) {
        t.columns.push_back("H_TH2_k" + std::to_string(k));
    }
    const int n = static_cast<int>(phis.size());
    std::vector<std::vector<double>> out(n);
    const QuantizedSpec spec = opt.quantized();
    parallel_for(n, [&](int i) {
        const QuantizedArModel model{sigma, phis[i], nu};
        const CovarianceSequence cov = qar_covariances(model, k_max, spec);
        std::vector<double> row{qar_conditional_entropy(model, spec)};
        for (int k : ks) {
            row.push_back(tdist_bound_k(cov.truncated(k)).value);
        }
        out[i] = std::move(row);
    });
    for (int i = 0; i < n; ++i) {
        std::vector<Cell> row{phis[i]};
        for (double v : out[i]) {
            row.emplace_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CovarianceSequence parse_covariance_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string data;
    int line_no = 0;
    int data_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line);
        if (body.empty() || body[0] == '#') {
            continue;
        }
        if (!data.empty()) {
            throw DomainError("covariance file: expected a single data line, found another at line " +
                              std::to_string(line_no));
        }
        data = body;
        data_line = line_no;
    }
    if (data.empty()) {
        throw DomainError("covariance file: no data line");
    }
    std::vector<double> values;
    std::istringstream fields(data);
    std::string field;
    while (std::getline(fields, field, ',')) {
        const std::string f = trim(field);
        char* end = nullptr;
        const double v = std::strtod(f.c_str(), &end);
        if (f.empty() || end != f.c_str() + f.size()) {
            throw DomainError("covariance file: line " + std::to_string(data_line) + ", field " +
                              std::to_string(values.size() + 1) + " is not a real number: '" + f + "'");
        }
        values.push_back(v);
    }
    if (!data.empty() && data.back() == ',') {
        throw DomainError("covariance file: trailing comma on line " + std::to_string(data_line));
    }
    return CovarianceSequence(std::move(values), false, "covariance file");
}

CovarianceSequence read_covariance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open covariance file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_covariance_text(text.str());
}

Table run_bound_cov(const CovarianceSequence& cov) {
    Table t{{"bound", "k", "value", "argmin"}, {}, {}};
    t.rows.push_back({std::string("univariate"), 0L, univariate_me_bound(cov.variance()), std::string()});
    if (cov.lags() == 0) {
        t.notes.push_back("no lags supplied: only the univariate bound applies");
        return t;
    }
    const BoundResult tri = tdist_bound_1(cov[0], cov[1]);
    t.rows.push_back({std::string("tridiagonal"), 1L, tri.value, join_reals(tri.argmin)});
    const BoundResult banded = tdist_bound_k(cov);
    t.rows.push_back({std::string("banded"), static_cast<long>(cov.lags()), banded.value, join_reals(banded.argmin)});
    return t;
}

namespace {

Table psd_table(const SpectralDensity& psd) {
    Table t{{"quantity", "value"}, {}, {}};
    t.rows.push_back({std::string("spectral_bound"), gaussian_psd_bound(psd).value});
    t.rows.push_back({std::string("gaussian_entropy_rate"), gaussian_entropy_rate(psd)});
    if (psd.truncated()) {
        t.notes.push_back("spectrum built from a truncated covariance sequence");
    }
    return t;
}

}  // namespace

Table run_bound_psd(const CovarianceSequence& cov) {
    const CovarianceSequence finite(cov.values(), true, "covariance file");
    return psd_table(psd_from_finite_covariance(finite));
}

Table run_bound_psd(const TwoStateHmm& model) {
    return psd_table(hmm_psd(model));
}

Table run_simulate(const ProcessModel& model, long n, std::uint64_t seed) {
    const SamplePath path = simulate(model, n, seed);
    Table t{{"n", "y"}, {}, {}};
    t.rows.reserve(path.values.size());
    for (long i = 0; i < path.length(); ++i) {
        t.rows.push_back({i, path.values[i]});
    }
    return t;
}

}  // namespace entrobound
