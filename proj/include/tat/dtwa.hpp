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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tat/lattice.hpp"

namespace tat {

/// Batch of classical spin trajectories, trajectory-major layout:
/// sx[traj * n_sites + site]. Spin length is 1/2 per site.
struct SpinEnsemble {
    int n_sites = 0;
    int n_traj = 0;
    std::uint64_t seed = 0;
    double time = 0.0;
    std::vector<double> sx, sy, sz;
};

/// Discrete Wigner sampling of the x-polarized coherent state:
/// s^x = +1/2, s^y and s^z drawn from {+1/2, -1/2} with equal
/// probability, independently per spin. Deterministic in (seed, traj).
SpinEnsemble sample_initial(const LatticeSpec& spec, int n_traj, std::uint64_t seed);

/// ds_i/dt = b_i x s_i with b_i = (Omega - 2 h^x_i, -2 h^y_i, 0),
/// h^mu_i = sum_j J_ij s^mu_j. Arrays are one trajectory (n_sites long).
void derivative(const CouplingTable& table, double omega, const double* sx, const double* sy,
                const double* sz, double* dsx, double* dsy, double* dsz,
                double* hx_scratch, double* hy_scratch);

double classical_energy(const CouplingTable& table, double omega, const double* sx,
                        const double* sy);

struct IntegrationOptions {
    double dt = 0.0;             // 0: choose by the energy-drift audit
    double energy_tolerance = 1e-6;  // relative drift bound per trajectory
    int n_threads = 1;
    int audit_trajectories = 3;  // trajectories used to calibrate dt
};

/// Fixed-step RK4 step size passing the energy-drift audit over [0, t_end].
double calibrate_step(const LatticeSpec& spec, const CouplingTable& table, double omega,
                      double t_end, std::uint64_t seed, const IntegrationOptions& opts);

/// Snapshot path used by the oracle tests; production analysis goes
/// through run_dtwa which never materializes full snapshots.
std::vector<SpinEnsemble> integrate(const SpinEnsemble& initial, const CouplingTable& table,
                                    double omega, std::span<const double> t_grid,
                                    const IntegrationOptions& opts);

struct SeriesEntry {
    std::vector<double> mean;
    std::vector<double> stderr_;
};

struct DtwaSeries {
    std::vector<double> t;
    SeriesEntry jx, jy, jz;
    SeriesEntry var_jx, var_jy, var_jz, cov_yz;
    SeriesEntry min_variance;  // min transverse variance in the (y,z) plane
    SeriesEntry xi2;
    std::vector<double> xi2_angle;
    std::vector<bool> xi2_reliable;  // false when <J^x>^2 < 10 * SE^2
    SeriesEntry energy;
    std::vector<int> corr_distances;
    // corr[it][id]: C^yy(d, t) site- and axis-averaged; same layout for the error.
    std::vector<std::vector<double>> corr, corr_stderr;
    double dt_used = 0.0;
    double max_energy_drift = 0.0;
    double max_length_drift = 0.0;
};

/// Integrates n_traj trajectories and accumulates trajectory-level
/// statistics at the requested times. Results are independent of the
/// thread count (per-trajectory RNG streams, reduction by index).
DtwaSeries run_dtwa(const LatticeSpec& spec, const CouplingTable& table, double omega,
                    std::span<const double> t_grid, int n_traj, std::uint64_t seed,
                    const IntegrationOptions& opts, std::span<const int> corr_distances = {});

/// Same statistics from materialized snapshots (test path).
DtwaSeries measure(const std::vector<SpinEnsemble>& snapshots, const CouplingTable& table,
                   double omega, std::span<const int> corr_distances, const LatticeSpec& spec);

}  // namespace tat
