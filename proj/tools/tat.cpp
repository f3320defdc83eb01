// Copyright 2026 the tatkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Batch experiment runner: parses a key-value config, dispatches the
// requested engine over the field/size grids, and writes CSV outputs
// plus a JSON manifest.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tat/bosonic.hpp"
#include "tat/collective.hpp"
#include "tat/dtwa.hpp"
#include "tat/kernels.hpp"
#include "tat/lattice.hpp"
#include "tat/observables.hpp"
#include "tat/spinwave.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tat;

namespace {

// ------------------------------------------------------------------ config

struct ConfigError {
    int line;
    std::string message;
};

struct ExperimentConfig {
    std::string engine;
    int dimension = 1;
    std::vector<int> sizes;
    double alpha = 0.0;
    double coupling = 1.0;
    std::vector<double> fields;
    double t_max = 10.0;
    double t_step = 0.1;
    int n_traj = 1000;
    std::uint64_t seed = 1;
    double dt = 0.0;  // 0: energy-drift audit
    double energy_tolerance = 1e-5;
    std::vector<int> distances;
    std::string out = "out";

    json to_json() const {
        json j;
        j["engine"] = engine;
        j["dimension"] = dimension;
        j["sizes"] = sizes;
        j["alpha"] = alpha;
        j["coupling"] = coupling;
        j["fields"] = fields;
        j["t_max"] = t_max;
        j["t_step"] = t_step;
        j["n_traj"] = n_traj;
        j["seed"] = seed;
        j["dt"] = dt;
        j["energy_tolerance"] = energy_tolerance;
        j["distances"] = distances;
        j["out"] = out;
        return j;
    }
};

const std::vector<std::string> kEngines{"collective", "bosonic", "rsw",
                                        "dtwa",       "stability", "scaling"};

template <typename T>
std::vector<T> parse_list(const std::string& text, int line, std::vector<ConfigError>& errors) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            if constexpr (std::is_same_v<T, int>)
                out.push_back(std::stoi(item, &pos));
            else
                out.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            errors.push_back({line, "cannot parse list element '" + item + "'"});
        }
    }
    return out;
}

ExperimentConfig parse_config(std::istream& in, std::vector<ConfigError>& errors) {
    ExperimentConfig cfg;
    std::string raw;
    int line = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = raw.substr(0, raw.find('#'));
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            errors.push_back({line, "expected 'key = value'"});
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (value.empty()) {
            errors.push_back({line, "empty value for '" + key + "'"});
            continue;
        }
        if (seen.count(key)) {
            errors.push_back({line, "duplicate key '" + key + "' (first on line " +
                                        std::to_string(seen[key]) + ")"});
            continue;
        }
        seen[key] = line;

        auto as_double = [&](double& target) {
            try {
                target = std::stod(value);
            } catch (const std::exception&) {
                errors.push_back({line, "cannot parse number '" + value + "'"});
            }
        };
        auto as_int = [&](auto& target) {
            try {
                target = static_cast<std::decay_t<decltype(target)>>(std::stoll(value));
            } catch (const std::exception&) {
                errors.push_back({line, "cannot parse integer '" + value + "'"});
            }
        };

        if (key == "engine")
            cfg.engine = value;
        else if (key == "dimension")
            as_int(cfg.dimension);
        else if (key == "sizes" || key == "size")
            cfg.sizes = parse_list<int>(value, line, errors);
        else if (key == "alpha")
            as_double(cfg.alpha);
        else if (key == "coupling")
            as_double(cfg.coupling);
        else if (key == "fields")
            cfg.fields = parse_list<double>(value, line, errors);
        else if (key == "t_max")
            as_double(cfg.t_max);
        else if (key == "t_step")
            as_double(cfg.t_step);
        else if (key == "n_traj")
            as_int(cfg.n_traj);
        else if (key == "seed")
            as_int(cfg.seed);
        else if (key == "dt")
            as_double(cfg.dt);
        else if (key == "energy_tolerance")
            as_double(cfg.energy_tolerance);
        else if (key == "distances")
            cfg.distances = parse_list<int>(value, line, errors);
        else if (key == "out")
            cfg.out = value;
        else
            errors.push_back({line, "unknown key '" + key + "'"});
    }

    if (std::find(kEngines.begin(), kEngines.end(), cfg.engine) == kEngines.end())
        errors.push_back({0, "engine must be one of collective, bosonic, rsw, dtwa, "
                             "stability, scaling (got '" +
                                 cfg.engine + "')"});
    if (cfg.fields.empty() && cfg.engine != "stability")
        errors.push_back({0, "field grid is empty ('fields = ...' is required)"});
    if (cfg.sizes.empty()) errors.push_back({0, "size grid is empty ('sizes = ...' is required)"});
    if (cfg.t_max <= 0 || cfg.t_step <= 0)
        errors.push_back({0, "time grid requires t_max > 0 and t_step > 0"});
    if (cfg.n_traj < 1) errors.push_back({0, "n_traj must be positive"});
    if (cfg.dimension != 1 && cfg.dimension != 2)
        errors.push_back({0, "dimension must be 1 or 2"});
    return cfg;
}

// ------------------------------------------------------------------ output

class Run {
  public:
    Run(const ExperimentConfig& cfg, int threads, bool large)
        : cfg_(cfg), threads_(threads), large_(large), start_(std::chrono::steady_clock::now()) {
        fs::create_directories(cfg_.out);
    }

    void warn(const std::string& w) { warnings_.push_back(w); }

    // atomic write: temp file in the output directory, then rename
    void write_file(const std::string& name, const std::string& body) {
        const fs::path final_path = fs::path(cfg_.out) / name;
        const fs::path tmp_path = final_path.string() + ".tmp";
        {
            std::ofstream out(tmp_path, std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write " + tmp_path.string());
            out << body;
        }
        fs::rename(tmp_path, final_path);
        outputs_.push_back(name);
    }

    void finish(double dt_used = 0.0) {
        json manifest;
        manifest["config"] = cfg_.to_json();
        manifest["threads"] = threads_;
        manifest["large"] = large_;
        manifest["kernel"] = kernels::active_kernel_name();
        manifest["warnings"] = warnings_;
        manifest["outputs"] = outputs_;
        if (dt_used > 0.0) manifest["dt_used"] = dt_used;
        manifest["runtime_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_file("manifest.json", manifest.dump(2) + "\n");
    }

    const ExperimentConfig& cfg() const { return cfg_; }
    int threads() const { return threads_; }
    bool large() const { return large_; }

  private:
    ExperimentConfig cfg_;
    int threads_;
    bool large_;
    std::vector<std::string> warnings_;
    std::vector<std::string> outputs_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<double> time_grid(const ExperimentConfig& cfg) {
    std::vector<double> t;
    for (double v = 0.0; v <= cfg.t_max + 1e-12; v += cfg.t_step) t.push_back(v);
    return t;
}

std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// ------------------------------------------------------------------ engines

void run_collective(Run& run) {
    const ExperimentConfig& cfg = run.cfg();
    const std::vector<double> grid = time_grid(cfg);
    std::ostringstream csv;
    csv << "omega_over_J,n_spins,t,jx,var_jy,min_variance,xi2,angle\n";
    for (double omega : cfg.fields)
        for (int n : cfg.sizes) {
            const CollectivePropagator prop(n, omega * cfg.coupling, cfg.coupling);
            const auto states = prop.evolve(DickeState::coherent_x(n), grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const CollectiveMoments m = moments(states[i], grid[i]);
                double angle = 0.0;
                const double xi2 = squeezing_parameter(m, n, &angle);
                const TransverseMinimum tm = transverse_minimum(m);
                csv << csv_num(omega) << ',' << n << ',' << csv_num(grid[i]) << ','
                    << csv_num(m.mean[0]) << ',' << csv_num(m.covariance(1, 1)) << ','
                    << csv_num(tm.variance) << ',' << csv_num(xi2) << ',' << csv_num(angle)
                    << '\n';
            }
        }
    run.write_file("observables.csv", csv.str());
}

void run_bosonic(Run& run) {
    const ExperimentConfig& cfg = run.cfg();
    const std::vector<double> grid = time_grid(cfg);
    std::ostringstream csv;
    csv << "omega_over_J,n_spins,t,xi2,boson_number,angle,valid\n";
    bool any_invalid = false;
    for (double omega : cfg.fields)
        for (int n : cfg.sizes) {
            const BosonicParams p = BosonicParams::from_field(cfg.coupling, omega * cfg.coupling);
            for (double t : grid) {
                const SqueezingEstimate e = squeezing_estimate(p, n, t);
                const MinVarianceAngle a = min_variance_angle(p, t);
                if (!e.valid) any_invalid = true;
                csv << csv_num(omega) << ',' << n << ',' << csv_num(t) << ',' << csv_num(e.value)
                    << ',' << csv_num(boson_number(p, t)) << ',' << csv_num(a.theta) << ','
                    << (e.valid ? 1 : 0) << '\n';
            }
        }
    if (any_invalid)
        run.warn("bosonic estimate left its validity window (boson number >= N/2)");
    run.write_file("observables.csv", csv.str());
}

void run_rsw(Run& run) {
    const ExperimentConfig& cfg = run.cfg();
    const std::vector<double> grid = time_grid(cfg);
    std::ostringstream csv, corr_csv;
    csv << "omega_over_J,L,t,jx,var_jy,min_variance,xi2,sw_population\n";
    corr_csv << "omega_over_J,L,t,distance,corr_yy\n";
    for (double omega : cfg.fields)
        for (int l : cfg.sizes) {
            const LatticeSpec spec{cfg.dimension, l, cfg.alpha, cfg.coupling};
            const RswSeries s =
                rsw_observables(spec, omega * cfg.coupling, grid, cfg.distances);
            if (s.breakdown_time >= 0.0)
                run.warn("rsw breakdown at t=" + csv_num(s.breakdown_time) + " for L=" +
                         std::to_string(l) + ", omega=" + csv_num(omega));
            for (std::size_t i = 0; i < s.n_valid; ++i) {
                csv << csv_num(omega) << ',' << l << ',' << csv_num(s.t[i]) << ','
                    << csv_num(s.mean_jx[i]) << ',' << csv_num(s.var_jy[i]) << ','
                    << csv_num(s.min_variance[i]) << ',' << csv_num(s.xi2[i]) << ','
                    << csv_num(s.sw_population[i]) << '\n';
                for (std::size_t d = 0; d < s.corr_distances.size(); ++d)
                    corr_csv << csv_num(omega) << ',' << l << ',' << csv_num(s.t[i]) << ','
                             << s.corr_distances[d] << ',' << csv_num(s.corr[i][d]) << '\n';
            }
        }
    run.write_file("observables.csv", csv.str());
    if (!cfg.distances.empty()) run.write_file("correlations.csv", corr_csv.str());
}

void run_dtwa_engine(Run& run) {
    const ExperimentConfig& cfg = run.cfg();
    const int cap = run.large() ? 90 * 90 : 24 * 24;
    const std::vector<double> grid = time_grid(cfg);
    std::ostringstream csv, corr_csv;
    csv << "omega_over_J,L,t,jx,jx_err,var_jy,var_jy_err,min_variance,min_variance_err,"
           "xi2,xi2_err,xi2_angle,xi2_reliable,energy,energy_err\n";
    corr_csv << "omega_over_J,L,t,distance,corr_yy,corr_yy_err\n";
    double last_dt = 0.0;
    for (double omega : cfg.fields)
        for (int l : cfg.sizes) {
            const LatticeSpec spec{cfg.dimension, l, cfg.alpha, cfg.coupling};
            if (spec.site_count() > cap)
                throw std::runtime_error(
                    "dtwa: " + std::to_string(spec.site_count()) +
                    " sites exceeds the desk-scale cap (pass --large to allow up to 8100)");
            const CouplingTable table = build_couplings(spec);
            IntegrationOptions opts;
            opts.dt = cfg.dt;
            opts.energy_tolerance = cfg.energy_tolerance;
            opts.n_threads = run.threads();
            const DtwaSeries s = run_dtwa(spec, table, omega * cfg.coupling, grid, cfg.n_traj,
                                          cfg.seed, opts, cfg.distances);
            last_dt = s.dt_used;
            int unreliable = 0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (!s.xi2_reliable[i]) ++unreliable;
                csv << csv_num(omega) << ',' << l << ',' << csv_num(s.t[i]) << ','
                    << csv_num(s.jx.mean[i]) << ',' << csv_num(s.jx.stderr_[i]) << ','
                    << csv_num(s.var_jy.mean[i]) << ',' << csv_num(s.var_jy.stderr_[i]) << ','
                    << csv_num(s.min_variance.mean[i]) << ','
                    << csv_num(s.min_variance.stderr_[i]) << ',' << csv_num(s.xi2.mean[i]) << ','
                    << csv_num(s.xi2.stderr_[i]) << ',' << csv_num(s.xi2_angle[i]) << ','
                    << (s.xi2_reliable[i] ? 1 : 0) << ',' << csv_num(s.energy.mean[i]) << ','
                    << csv_num(s.energy.stderr_[i]) << '\n';
                for (std::size_t d = 0; d < s.corr_distances.size(); ++d)
                    corr_csv << csv_num(omega) << ',' << l << ',' << csv_num(s.t[i]) << ','
                             << s.corr_distances[d] << ',' << csv_num(s.corr[i][d]) << ','
                             << csv_num(s.corr_stderr[i][d]) << '\n';
            }
            if (unreliable > 0)
                run.warn("xi2 unreliable (depolarized mean spin) at " +
                         std::to_string(unreliable) + " times for L=" + std::to_string(l) +
                         ", omega=" + csv_num(omega));
        }
    run.write_file("observables.csv", csv.str());
    if (!cfg.distances.empty()) run.write_file("correlations.csv", corr_csv.str());
    run.finish(last_dt);
}

void run_stability(Run& run) {
    const ExperimentConfig& cfg = run.cfg();
    std::vector<double> omegas = cfg.fields;
    if (omegas.empty())
        for (double o = 0.05; o <= 1.0 + 1e-9; o += 0.05) omegas.push_back(o);
    const StabilityMap map =
        stability_map(cfg.alpha, cfg.dimension, omegas, cfg.sizes, cfg.coupling);
    std::ostringstream csv;
    write_stability_csv(map, csv);
    run.write_file("stability.csv", csv.str());
}

void run_scaling(Run& run) {
    const ExperimentConfig& cfg = run.cfg();
    const std::vector<double> grid = time_grid(cfg);
    std::ostringstream csv;
    csv << "omega_over_J,n_spins,t_opt,xi2_opt,peak_var_jy,peak_t\n";
    json fits = json::array();
    for (double omega : cfg.fields) {
        std::vector<double> sizes_d, xi_opt, t_opt, peaks;
        for (int n : cfg.sizes) {
            const CollectivePropagator prop(n, omega * cfg.coupling, cfg.coupling);
            const auto states = prop.evolve(DickeState::coherent_x(n), grid);
            std::vector<double> xi2, var_jy;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const CollectiveMoments m = moments(states[i], grid[i]);
                xi2.push_back(squeezing_parameter(m, n));
                var_jy.push_back(m.covariance(1, 1));
            }
            const OptimalSqueezing o = optimal_squeezing(grid, xi2);
            if (o.boundary)
                run.warn("no interior squeezing minimum for N=" + std::to_string(n) +
                         ", omega=" + csv_num(omega) + "; extend t_max");
            const PeakResult p = variance_peak(grid, var_jy);
            if (p.used_first_peak)
                run.warn("single-peak variance series for N=" + std::to_string(n) +
                         ", omega=" + csv_num(omega));
            sizes_d.push_back(n);
            xi_opt.push_back(o.xi2_opt);
            t_opt.push_back(o.t_opt);
            peaks.push_back(p.value);
            csv << csv_num(omega) << ',' << n << ',' << csv_num(o.t_opt) << ','
                << csv_num(o.xi2_opt) << ',' << csv_num(p.value) << ',' << csv_num(p.t_peak)
                << '\n';
        }
        json f;
        f["omega_over_J"] = omega;
        if (sizes_d.size() >= 4) {
            const LineFit nu = fit_power_law(sizes_d, xi_opt);
            const LineFit ts = time_scaling(sizes_d, t_opt);
            const LineFit pk = peak_variance_scaling(sizes_d, peaks);
            f["nu"] = -nu.slope;
            f["nu_se"] = nu.slope_se;
            f["t_opt_slope_logN"] = ts.slope;
            f["peak_var_exponent"] = pk.slope;
            f["peak_var_exponent_se"] = pk.slope_se;
        } else {
            run.warn("fewer than 4 sizes: no fits for omega=" + csv_num(omega));
        }
        fits.push_back(f);
    }
    run.write_file("scaling.csv", csv.str());
    run.write_file("fits.json", fits.dump(2) + "\n");
}

int execute(const ExperimentConfig& cfg, int threads, bool large) {
    Run run(cfg, threads, large);
    if (cfg.engine == "collective")
        run_collective(run);
    else if (cfg.engine == "bosonic")
        run_bosonic(run);
    else if (cfg.engine == "rsw")
        run_rsw(run);
    else if (cfg.engine == "dtwa") {
        run_dtwa_engine(run);
        return 0;  // dtwa finishes its own manifest (records dt_used)
    } else if (cfg.engine == "stability")
        run_stability(run);
    else if (cfg.engine == "scaling")
        run_scaling(run);
    run.finish();
    return 0;
}

// ------------------------------------------------------------------ presets

struct Preset {
    std::string name;
    std::string runtime;
    std::string body;
};

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list = {
        {"fig1a", "seconds",
         "engine = collective\ndimension = 1\nalpha = 0\nsizes = 128, 512\n"
         "fields = 0.5\nt_max = 12\nt_step = 0.02\n"},
        {"fig1b", "minutes",
         "engine = scaling\ndimension = 1\nalpha = 0\nsizes = 512, 1024, 2048, 4096\n"
         "fields = 0.2, 0.5, 0.8\nt_max = 14\nt_step = 0.02\n"},
        {"fig1c", "minutes",
         "engine = scaling\ndimension = 1\nalpha = 0\nsizes = 64, 128, 256, 512, 1024\n"
         "fields = 0.5\nt_max = 14\nt_step = 0.02\n"},
        {"fig1d", "minutes",
         "engine = dtwa\ndimension = 1\nalpha = 0\nsizes = 400\nfields = 0.1\n"
         "t_max = 10\nt_step = 0.5\nn_traj = 600\ndt = 0.02\n"},
        {"fig2a", "minutes",
         "engine = dtwa\ndimension = 2\nalpha = 3\nsizes = 16\nfields = 0.2\n"
         "t_max = 3\nt_step = 0.1\nn_traj = 2000\ndt = 0.005\n"},
        {"fig2b", "seconds",
         "engine = rsw\ndimension = 2\nalpha = 3\nsizes = 16\nfields = 0.2\n"
         "t_max = 3\nt_step = 0.1\n"},
        {"fig2c", "tens of minutes",
         "engine = dtwa\ndimension = 2\nalpha = 3\nsizes = 20\nfields = 0.2\n"
         "t_max = 6\nt_step = 0.1\nn_traj = 4000\ndt = 0.005\n"
         "distances = 1, 2, 3, 4, 5, 6, 7, 8, 9\n"},
        {"fig3a", "seconds",
         "engine = stability\ndimension = 2\nalpha = 3\nsizes = 8, 16, 32, 64, 128\n"
         "fields = 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, "
         "0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0\n"},
        {"fig3b", "seconds",
         "engine = stability\ndimension = 1\nalpha = 0.5\nsizes = 64, 256, 1024, 4096\n"
         "fields = 0.2, 0.4, 0.6, 0.8, 1.0\n"},
        {"fig3c", "seconds",
         "engine = stability\ndimension = 1\nalpha = 1\nsizes = 64, 256, 1024, 4096\n"
         "fields = 0.1, 0.2, 0.3, 0.4, 0.5\n"},
        {"fig4a", "seconds",
         "engine = collective\ndimension = 1\nalpha = 0\nsizes = 128, 512, 2048\n"
         "fields = 0.5\nt_max = 30\nt_step = 0.05\n"},
        {"fig4b", "minutes",
         "engine = scaling\ndimension = 1\nalpha = 0\nsizes = 128, 256, 512, 1024, 2048\n"
         "fields = 0.2, 0.5, 0.8\nt_max = 30\nt_step = 0.05\n"},
        {"fig4c", "tens of minutes",
         "engine = dtwa\ndimension = 2\nalpha = 3\nsizes = 10, 12, 16, 20\nfields = 0.2\n"
         "t_max = 6\nt_step = 0.1\nn_traj = 4000\ndt = 0.005\n"},
        {"fig5a", "tens of minutes",
         "engine = dtwa\ndimension = 2\nalpha = 3\nsizes = 20\nfields = 0.2\n"
         "t_max = 6\nt_step = 0.05\nn_traj = 4000\ndt = 0.005\n"
         "distances = 1, 2, 3, 4, 5, 6, 7, 8, 9, 10\n"},
        {"fig6", "seconds",
         "engine = collective\ndimension = 1\nalpha = 0\nsizes = 512\n"
         "fields = 0.1, 0.3, 0.5, 0.7, 0.9\nt_max = 12\nt_step = 0.02\n"},
        {"fig7", "seconds",
         "engine = bosonic\ndimension = 1\nalpha = 0\nsizes = 512\n"
         "fields = 0.1, 0.3, 0.5, 0.7, 0.9\nt_max = 4\nt_step = 0.02\n"},
        {"fig8", "tens of minutes",
         "engine = dtwa\ndimension = 2\nalpha = 3\nsizes = 12, 16, 20\nfields = 0.6, 0.8\n"
         "t_max = 3\nt_step = 0.05\nn_traj = 2000\ndt = 0.005\n"},
    };
    return list;
}

int report_errors(const std::string& source, const std::vector<ConfigError>& errors) {
    for (const ConfigError& e : errors) {
        if (e.line > 0)
            std::fprintf(stderr, "%s:%d: %s\n", source.c_str(), e.line, e.message.c_str());
        else
            std::fprintf(stderr, "%s: %s\n", source.c_str(), e.message.c_str());
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tatkit batch experiment runner"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_override;
    std::optional<std::uint64_t> seed_override;
    int threads = 1;
    bool large = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed_override, "override the config seed");
        sub->add_option("--threads", threads, "worker threads for dTWA trajectories");
        sub->add_option("--out", out_override, "override the output directory");
        sub->add_flag("--large", large, "allow dTWA runs beyond the desk-scale cap");
    };

    CLI::App* cmd_run = app.add_subcommand("run", "run an experiment from a config file");
    cmd_run->add_option("config", config_path, "config file")->required();
    add_common(cmd_run);

    CLI::App* cmd_preset = app.add_subcommand("preset", "run a named preset");
    cmd_preset->add_option("name", preset_name, "preset name")->required();
    add_common(cmd_preset);

    CLI::App* cmd_list = app.add_subcommand("list-presets", "list available presets");

    CLI::App* cmd_validate = app.add_subcommand("validate", "check a config file");
    cmd_validate->add_option("config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_list->parsed()) {
            for (const Preset& p : presets())
                std::printf("%-8s (%s)\n", p.name.c_str(), p.runtime.c_str());
            return 0;
        }

        ExperimentConfig cfg;
        std::string source;
        std::vector<ConfigError> errors;
        if (cmd_preset->parsed()) {
            const auto& list = presets();
            const auto it = std::find_if(list.begin(), list.end(),
                                         [&](const Preset& p) { return p.name == preset_name; });
            if (it == list.end()) {
                std::fprintf(stderr, "unknown preset '%s'; available:\n", preset_name.c_str());
                for (const Preset& p : list) std::fprintf(stderr, "  %s\n", p.name.c_str());
                return 1;
            }
            std::istringstream in(it->body);
            source = "preset:" + preset_name;
            cfg = parse_config(in, errors);
            cfg.out = "out_" + preset_name;
        } else {
            std::ifstream in(config_path);
            if (!in) {
                std::fprintf(stderr, "cannot open '%s'\n", config_path.c_str());
                return 1;
            }
            source = config_path;
            cfg = parse_config(in, errors);
        }
        if (!errors.empty()) return report_errors(source, errors);
        if (cmd_validate->parsed()) {
            std::printf("%s: OK (engine=%s, %zu fields, %zu sizes)\n", source.c_str(),
                        cfg.engine.c_str(), cfg.fields.size(), cfg.sizes.size());
            return 0;
        }
        if (seed_override) cfg.seed = *seed_override;
        if (!out_override.empty()) cfg.out = out_override;
        return execute(cfg, threads, large);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
