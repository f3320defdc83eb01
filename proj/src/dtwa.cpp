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

#include "tat/dtwa.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "tat/kernels.hpp"

namespace tat {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Number of observables accumulated per trajectory and output time:
// jx, jy, jz, jx^2, jy^2, jz^2, jy*jz, energy.
constexpr int kBaseObs = 8;

struct Workspace {
    std::vector<double> s, k1, k2, k3, k4, tmp, hx, hy;
    explicit Workspace(int n)
        : s(3 * n), k1(3 * n), k2(3 * n), k3(3 * n), k4(3 * n), tmp(3 * n), hx(n), hy(n) {}
};

void rhs(const CouplingTable& table, double omega, const double* state, double* deriv, double* hx,
         double* hy) {
    const int n = table.n_sites;
    const double* sx = state;
    const double* sy = state + n;
    const double* sz = state + 2 * n;
    kernels::coupled_matvec()(table.pair_coupling.data(), sx, sy, hx, hy, n);
    double* dsx = deriv;
    double* dsy = deriv + n;
    double* dsz = deriv + 2 * n;
    for (int i = 0; i < n; ++i) {
        const double bx = omega - 2.0 * hx[i];
        const double by = -2.0 * hy[i];
        dsx[i] = by * sz[i];
        dsy[i] = -bx * sz[i];
        dsz[i] = bx * sy[i] - by * sx[i];
    }
}

void rk4_step(const CouplingTable& table, double omega, double h, Workspace& w) {
    const int n3 = 3 * table.n_sites;
    rhs(table, omega, w.s.data(), w.k1.data(), w.hx.data(), w.hy.data());
    for (int i = 0; i < n3; ++i) w.tmp[i] = w.s[i] + 0.5 * h * w.k1[i];
    rhs(table, omega, w.tmp.data(), w.k2.data(), w.hx.data(), w.hy.data());
    for (int i = 0; i < n3; ++i) w.tmp[i] = w.s[i] + 0.5 * h * w.k2[i];
    rhs(table, omega, w.tmp.data(), w.k3.data(), w.hx.data(), w.hy.data());
    for (int i = 0; i < n3; ++i) w.tmp[i] = w.s[i] + h * w.k3[i];
    rhs(table, omega, w.tmp.data(), w.k4.data(), w.hx.data(), w.hy.data());
    const double c = h / 6.0;
    for (int i = 0; i < n3; ++i)
        w.s[i] += c * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
}

// Advance from t_from to t_to with steps no larger than dt, hitting t_to exactly.
void advance(const CouplingTable& table, double omega, double t_from, double t_to, double dt,
             Workspace& w) {
    const double span = t_to - t_from;
    if (span <= 0.0) return;
    const int n_steps = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-12)));
    const double h = span / n_steps;
    for (int s = 0; s < n_steps; ++s) rk4_step(table, omega, h, w);
}

void load_trajectory(const SpinEnsemble& e, int traj, double* state) {
    const int n = e.n_sites;
    std::memcpy(state, e.sx.data() + static_cast<std::size_t>(traj) * n, n * sizeof(double));
    std::memcpy(state + n, e.sy.data() + static_cast<std::size_t>(traj) * n, n * sizeof(double));
    std::memcpy(state + 2 * n, e.sz.data() + static_cast<std::size_t>(traj) * n, n * sizeof(double));
}

// Site index shifted by d along the given axis, periodic.
std::vector<int> shift_table(const LatticeSpec& spec, int d, int axis) {
    const int L = spec.linear_size;
    const int n = spec.site_count();
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) {
        if (spec.dimension == 1) {
            out[i] = (i + d) % L;
        } else if (axis == 0) {
            out[i] = (i / L) * L + (i % L + d) % L;
        } else {
            out[i] = ((i / L + d) % L) * L + i % L;
        }
    }
    return out;
}

struct CorrTables {
    std::vector<std::vector<int>> x_shift, y_shift;
};

CorrTables make_corr_tables(const LatticeSpec& spec, std::span<const int> distances) {
    CorrTables t;
    for (int d : distances) {
        t.x_shift.push_back(shift_table(spec, d, 0));
        if (spec.dimension == 2) t.y_shift.push_back(shift_table(spec, d, 1));
    }
    return t;
}

void record(const CouplingTable& table, double omega, const double* state, const CorrTables& corr,
            int n_corr, double* out) {
    const int n = table.n_sites;
    const double* sx = state;
    const double* sy = state + n;
    const double* sz = state + 2 * n;
    double jx = 0.0, jy = 0.0, jz = 0.0;
    for (int i = 0; i < n; ++i) {
        jx += sx[i];
        jy += sy[i];
        jz += sz[i];
    }
    out[0] = jx;
    out[1] = jy;
    out[2] = jz;
    out[3] = jx * jx;
    out[4] = jy * jy;
    out[5] = jz * jz;
    out[6] = jy * jz;
    out[7] = classical_energy(table, omega, sx, sy);
    for (int id = 0; id < n_corr; ++id) {
        const auto& xs = corr.x_shift[id];
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += sy[i] * sy[xs[i]];
        if (!corr.y_shift.empty()) {
            const auto& ys = corr.y_shift[id];
            double c2 = 0.0;
            for (int i = 0; i < n; ++i) c2 += sy[i] * sy[ys[i]];
            c = 0.5 * (c + c2);
        }
        out[kBaseObs + id] = c / n;
    }
}

double max_length_error(const double* state, int n) {
    // discrete Wigner samples have all three components at +-1/2, so the
    // conserved spin length is sqrt(3)/2
    const double len0 = 0.5 * std::sqrt(3.0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double len = std::sqrt(state[i] * state[i] + state[n + i] * state[n + i] +
                                     state[2 * n + i] * state[2 * n + i]);
        worst = std::max(worst, std::abs(len - len0) / len0);
    }
    return worst;
}

struct Estimate {
    double mean;
    double se;
};

// Batch-means error bars with batches fixed by trajectory index, so the
// result does not depend on the thread partitioning.
class BatchReducer {
  public:
    BatchReducer(int n_traj) : n_traj_(n_traj), n_batches_(std::clamp(n_traj / 2, 1, 50)) {}

    // Generic reduction: `moments` is a list of per-trajectory series,
    // `f` maps the vector of their means to the estimate.
    template <typename F>
    Estimate reduce_moments(const std::vector<const double*>& series, std::size_t stride,
                            std::size_t offset, F&& f) const {
        const std::size_t n_series = series.size();
        std::vector<double> full(n_series, 0.0);
        for (std::size_t s = 0; s < n_series; ++s) {
            double acc = 0.0;
            for (int tr = 0; tr < n_traj_; ++tr) acc += series[s][offset + stride * tr];
            full[s] = acc / n_traj_;
        }
        const double estimate = f(full);
        if (n_batches_ < 2) return {estimate, 0.0};

        double ss = 0.0;
        std::vector<double> batch(n_series);
        for (int b = 0; b < n_batches_; ++b) {
            const int lo = static_cast<int>(static_cast<std::int64_t>(b) * n_traj_ / n_batches_);
            const int hi = static_cast<int>(static_cast<std::int64_t>(b + 1) * n_traj_ / n_batches_);
            for (std::size_t s = 0; s < n_series; ++s) {
                double acc = 0.0;
                for (int tr = lo; tr < hi; ++tr) acc += series[s][offset + stride * tr];
                batch[s] = acc / (hi - lo);
            }
            const double be = f(batch);
            ss += (be - estimate) * (be - estimate);
        }
        return {estimate, std::sqrt(ss / (static_cast<double>(n_batches_) * (n_batches_ - 1)))};
    }

  private:
    int n_traj_;
    int n_batches_;
};

DtwaSeries reduce_all(const LatticeSpec& spec, std::span<const double> t_grid,
                      std::span<const int> corr_distances, const std::vector<double>& stats,
                      int n_traj, int n_obs) {
    const std::size_t n_times = t_grid.size();
    const int n = spec.site_count();
    DtwaSeries out;
    out.t.assign(t_grid.begin(), t_grid.end());
    out.corr_distances.assign(corr_distances.begin(), corr_distances.end());

    BatchReducer reducer(n_traj);
    const std::size_t stride = n_times * n_obs;  // per-trajectory block
    auto series_at = [&](int obs) { return stats.data() + obs; };

    auto push = [](SeriesEntry& entry, const Estimate& e) {
        entry.mean.push_back(e.mean);
        entry.stderr_.push_back(e.se);
    };

    for (std::size_t it = 0; it < n_times; ++it) {
        const std::size_t offset = it * n_obs;
        auto reduce1 = [&](int obs, auto&& f) {
            return reducer.reduce_moments({series_at(obs)}, stride, offset,
                                          [&](const std::vector<double>& m) { return f(m[0]); });
        };
        auto identity = [](double x) { return x; };

        const Estimate jx = reduce1(0, identity);
        const Estimate jy = reduce1(1, identity);
        const Estimate jz = reduce1(2, identity);
        push(out.jx, jx);
        push(out.jy, jy);
        push(out.jz, jz);

        auto var_f = [](const std::vector<double>& m) { return m[1] - m[0] * m[0]; };
        const Estimate vx = reducer.reduce_moments({series_at(0), series_at(3)}, stride, offset, var_f);
        const Estimate vy = reducer.reduce_moments({series_at(1), series_at(4)}, stride, offset, var_f);
        const Estimate vz = reducer.reduce_moments({series_at(2), series_at(5)}, stride, offset, var_f);
        push(out.var_jx, vx);
        push(out.var_jy, vy);
        push(out.var_jz, vz);

        auto cov_f = [](const std::vector<double>& m) { return m[2] - m[0] * m[1]; };
        const Estimate cyz =
            reducer.reduce_moments({series_at(1), series_at(2), series_at(6)}, stride, offset, cov_f);
        push(out.cov_yz, cyz);

        auto minvar_f = [](const std::vector<double>& m) {
            const double vy_ = m[3] - m[1] * m[1];
            const double vz_ = m[4] - m[2] * m[2];
            const double cyz_ = m[5] - m[1] * m[2];
            return 0.5 * (vy_ + vz_) - std::hypot(0.5 * (vy_ - vz_), cyz_);
        };
        const std::vector<const double*> mom6 = {series_at(0), series_at(1), series_at(2),
                                                 series_at(4), series_at(5), series_at(6)};
        const Estimate minvar = reducer.reduce_moments(mom6, stride, offset, minvar_f);
        push(out.min_variance, minvar);

        auto xi_f = [&](const std::vector<double>& m) {
            return n * minvar_f(m) / (m[0] * m[0]);
        };
        const Estimate xi = reducer.reduce_moments(mom6, stride, offset, xi_f);
        push(out.xi2, xi);
        {
            // angle from the full-sample covariance
            std::vector<double> m(6);
            for (int s = 0; s < 6; ++s) {
                double acc = 0.0;
                for (int tr = 0; tr < n_traj; ++tr) acc += mom6[s][offset + stride * tr];
                m[s] = acc / n_traj;
            }
            const double vy_ = m[3] - m[1] * m[1];
            const double vz_ = m[4] - m[2] * m[2];
            const double cyz_ = m[5] - m[1] * m[2];
            double theta = 0.5 * std::atan2(2.0 * cyz_, vy_ - vz_) + M_PI / 2.0;
            theta = std::fmod(theta, M_PI);
            if (theta < 0.0) theta += M_PI;
            out.xi2_angle.push_back(theta);
            out.xi2_reliable.push_back(jx.mean * jx.mean >= 10.0 * jx.se * jx.se);
        }

        push(out.energy, reduce1(7, identity));

        if (!corr_distances.empty()) {
            std::vector<double> row, row_se;
            for (std::size_t id = 0; id < corr_distances.size(); ++id) {
                const Estimate c = reduce1(kBaseObs + static_cast<int>(id), identity);
                row.push_back(c.mean);
                row_se.push_back(c.se);
            }
            out.corr.push_back(std::move(row));
            out.corr_stderr.push_back(std::move(row_se));
        }
    }
    return out;
}

}  // namespace

SpinEnsemble sample_initial(const LatticeSpec& spec, int n_traj, std::uint64_t seed) {
    spec.validate();
    if (n_traj < 1) throw std::invalid_argument("sample_initial: need at least one trajectory");
    const int n = spec.site_count();
    SpinEnsemble e;
    e.n_sites = n;
    e.n_traj = n_traj;
    e.seed = seed;
    const std::size_t total = static_cast<std::size_t>(n) * n_traj;
    e.sx.assign(total, 0.5);
    e.sy.resize(total);
    e.sz.resize(total);
    for (int tr = 0; tr < n_traj; ++tr) {
        // stream keyed on (seed, trajectory): identical for any thread layout
        std::uint64_t stream = seed ^ (0x517cc1b727220a95ULL * (static_cast<std::uint64_t>(tr) + 1));
        std::uint64_t bits = 0;
        int avail = 0;
        for (int i = 0; i < n; ++i) {
            if (avail < 2) {
                bits = splitmix64(stream);
                avail = 64;
            }
            e.sy[static_cast<std::size_t>(tr) * n + i] = (bits & 1) ? 0.5 : -0.5;
            bits >>= 1;
            e.sz[static_cast<std::size_t>(tr) * n + i] = (bits & 1) ? 0.5 : -0.5;
            bits >>= 1;
            avail -= 2;
        }
    }
    return e;
}

void derivative(const CouplingTable& table, double omega, const double* sx, const double* sy,
                const double* sz, double* dsx, double* dsy, double* dsz, double* hx_scratch,
                double* hy_scratch) {
    const int n = table.n_sites;
    kernels::coupled_matvec()(table.pair_coupling.data(), sx, sy, hx_scratch, hy_scratch, n);
    for (int i = 0; i < n; ++i) {
        const double bx = omega - 2.0 * hx_scratch[i];
        const double by = -2.0 * hy_scratch[i];
        dsx[i] = by * sz[i];
        dsy[i] = -bx * sz[i];
        dsz[i] = bx * sy[i] - by * sx[i];
    }
}

double classical_energy(const CouplingTable& table, double omega, const double* sx,
                        const double* sy) {
    const int n = table.n_sites;
    std::vector<double> hx(n), hy(n);
    kernels::coupled_matvec()(table.pair_coupling.data(), sx, sy, hx.data(), hy.data(), n);
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += omega * sx[i] - hx[i] * sx[i] - hy[i] * sy[i];
    return e;
}

double calibrate_step(const LatticeSpec& spec, const CouplingTable& table, double omega,
                      double t_end, std::uint64_t seed, const IntegrationOptions& opts) {
    const int n = table.n_sites;
    // local field scale bounds the precession frequency
    const double field_scale = omega + 2.0 * table.row_sum(0);
    double dt = std::min(0.1, 0.5 / field_scale);
    const SpinEnsemble audit = sample_initial(spec, std::max(1, opts.audit_trajectories), seed + 0x5eedULL);
    const double e_floor = 1e-2 * n * (spec.coupling + omega);
    for (int attempt = 0; attempt < 24; ++attempt) {
        double worst = 0.0;
        for (int tr = 0; tr < audit.n_traj; ++tr) {
            Workspace w(n);
            load_trajectory(audit, tr, w.s.data());
            const double e0 = classical_energy(table, omega, w.s.data(), w.s.data() + n);
            advance(table, omega, 0.0, t_end, dt, w);
            const double e1 = classical_energy(table, omega, w.s.data(), w.s.data() + n);
            const double denom = std::max(std::abs(e0), e_floor);
            worst = std::max(worst, std::abs(e1 - e0) / denom);
        }
        if (worst < 0.5 * opts.energy_tolerance) return dt;  // margin for ensemble spread
        dt *= 0.5;
    }
    throw std::runtime_error("calibrate_step: energy tolerance unreachable");
}

std::vector<SpinEnsemble> integrate(const SpinEnsemble& initial, const CouplingTable& table,
                                    double omega, std::span<const double> t_grid,
                                    const IntegrationOptions& opts) {
    if (!std::is_sorted(t_grid.begin(), t_grid.end()))
        throw std::invalid_argument("integrate: t_grid must be ascending");
    const int n = initial.n_sites;
    double dt = opts.dt;
    if (dt <= 0.0) throw std::invalid_argument("integrate: snapshot path requires an explicit dt");

    std::vector<SpinEnsemble> out(t_grid.size());
    for (std::size_t it = 0; it < t_grid.size(); ++it) {
        out[it] = initial;
        out[it].time = t_grid[it];
    }
    Workspace w(n);
    for (int tr = 0; tr < initial.n_traj; ++tr) {
        load_trajectory(initial, tr, w.s.data());
        double t_cur = initial.time;
        const double e0 = classical_energy(table, omega, w.s.data(), w.s.data() + n);
        const double e_floor = 1e-2 * n;
        for (std::size_t it = 0; it < t_grid.size(); ++it) {
            advance(table, omega, t_cur, t_grid[it], dt, w);
            t_cur = t_grid[it];
            const double e1 = classical_energy(table, omega, w.s.data(), w.s.data() + n);
            if (std::abs(e1 - e0) / std::max(std::abs(e0), e_floor) > opts.energy_tolerance)
                throw std::runtime_error("integrate: energy drift exceeded tolerance");
            std::memcpy(out[it].sx.data() + static_cast<std::size_t>(tr) * n, w.s.data(),
                        n * sizeof(double));
            std::memcpy(out[it].sy.data() + static_cast<std::size_t>(tr) * n, w.s.data() + n,
                        n * sizeof(double));
            std::memcpy(out[it].sz.data() + static_cast<std::size_t>(tr) * n, w.s.data() + 2 * n,
                        n * sizeof(double));
        }
    }
    return out;
}

DtwaSeries run_dtwa(const LatticeSpec& spec, const CouplingTable& table, double omega,
                    std::span<const double> t_grid, int n_traj, std::uint64_t seed,
                    const IntegrationOptions& opts, std::span<const int> corr_distances) {
    if (n_traj < 2) throw std::invalid_argument("run_dtwa: need at least two trajectories");
    if (!std::is_sorted(t_grid.begin(), t_grid.end()))
        throw std::invalid_argument("run_dtwa: t_grid must be ascending");
    const int n = spec.site_count();
    const int n_obs = kBaseObs + static_cast<int>(corr_distances.size());
    const std::size_t n_times = t_grid.size();

    double dt = opts.dt;
    if (dt <= 0.0) dt = calibrate_step(spec, table, omega, t_grid.back(), seed, opts);

    const SpinEnsemble initial = sample_initial(spec, n_traj, seed);
    const CorrTables corr = make_corr_tables(spec, corr_distances);

    std::vector<double> stats(static_cast<std::size_t>(n_traj) * n_times * n_obs, 0.0);
    std::vector<double> drift_e(n_traj, 0.0), drift_len(n_traj, 0.0);

    const double e_floor = 1e-2 * n * (spec.coupling + omega);
    auto worker = [&](int tr_begin, int tr_end) {
        Workspace w(n);
        for (int tr = tr_begin; tr < tr_end; ++tr) {
            load_trajectory(initial, tr, w.s.data());
            const double e0 = classical_energy(table, omega, w.s.data(), w.s.data() + n);
            double t_cur = 0.0;
            double* block = stats.data() + static_cast<std::size_t>(tr) * n_times * n_obs;
            for (std::size_t it = 0; it < n_times; ++it) {
                advance(table, omega, t_cur, t_grid[it], dt, w);
                t_cur = t_grid[it];
                record(table, omega, w.s.data(), corr, static_cast<int>(corr_distances.size()),
                       block + it * n_obs);
            }
            const double e1 = block[(n_times - 1) * n_obs + 7];
            drift_e[tr] = std::abs(e1 - e0) / std::max(std::abs(e0), e_floor);
            drift_len[tr] = max_length_error(w.s.data(), n);
        }
    };

    const int n_threads = std::max(1, opts.n_threads);
    if (n_threads == 1) {
        worker(0, n_traj);
    } else {
        std::vector<std::thread> pool;
        for (int th = 0; th < n_threads; ++th) {
            const int lo = static_cast<int>(static_cast<std::int64_t>(th) * n_traj / n_threads);
            const int hi = static_cast<int>(static_cast<std::int64_t>(th + 1) * n_traj / n_threads);
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    DtwaSeries out = reduce_all(spec, t_grid, corr_distances, stats, n_traj, n_obs);
    out.dt_used = dt;
    out.max_energy_drift = *std::max_element(drift_e.begin(), drift_e.end());
    out.max_length_drift = *std::max_element(drift_len.begin(), drift_len.end());
    if (out.max_energy_drift > opts.energy_tolerance)
        throw std::runtime_error("run_dtwa: energy drift " + std::to_string(out.max_energy_drift) +
                                 " exceeded tolerance");
    return out;
}

DtwaSeries measure(const std::vector<SpinEnsemble>& snapshots, const CouplingTable& table,
                   double omega, std::span<const int> corr_distances, const LatticeSpec& spec) {
    if (snapshots.empty()) throw std::invalid_argument("measure: no snapshots");
    const int n_traj = snapshots.front().n_traj;
    if (n_traj < 2) throw std::invalid_argument("measure: need at least two trajectories");
    const int n = snapshots.front().n_sites;
    const int n_obs = kBaseObs + static_cast<int>(corr_distances.size());
    const std::size_t n_times = snapshots.size();
    const CorrTables corr = make_corr_tables(spec, corr_distances);

    std::vector<double> t_grid(n_times);
    std::vector<double> stats(static_cast<std::size_t>(n_traj) * n_times * n_obs, 0.0);
    std::vector<double> state(3 * n);
    for (std::size_t it = 0; it < n_times; ++it) {
        t_grid[it] = snapshots[it].time;
        for (int tr = 0; tr < n_traj; ++tr) {
            load_trajectory(snapshots[it], tr, state.data());
            record(table, omega, state.data(), corr, static_cast<int>(corr_distances.size()),
                   stats.data() + (static_cast<std::size_t>(tr) * n_times + it) * n_obs);
        }
    }
    return reduce_all(spec, t_grid, corr_distances, stats, n_traj, n_obs);
}

}  // namespace tat
