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

#include <span>
#include <vector>

#include "tat/lattice.hpp"

namespace tat {

/// One spin-wave mode built around the x-polarized coherent state.
/// omega^2 = a_coef^2 - b_coef^2; an unstable mode has omega = i * rate.
struct SpinWaveMode {
    int n1 = 0, n2 = 0;   // k = 2*pi*(n1, n2)/L
    double a_coef = 0.0;  // Jn (gamma_0 - gamma_k / 2) - Omega
    double b_coef = 0.0;  // -Jn gamma_k / 2
    double omega2 = 0.0;
    double frequency = 0.0;  // sqrt(omega2) when stable, else 0
    double rate = 0.0;       // sqrt(-omega2) when unstable, else 0
    bool stable = true;
};

struct SpinWaveSpectrum {
    std::vector<SpinWaveMode> modes;  // all k != 0
    SpinWaveMode zero_mode;           // reported separately, excluded from lambda_max
    double omega_field = 0.0;
    double j_eff = 0.0;       // N Jn gamma_0 / (N - 1)
    double lambda_eff = 0.0;  // sqrt(Omega (J_eff - Omega)), 0 outside the window
    double dynamical_exponent = 0.0;
    int n_sites = 0;

    // max_{k != 0} Im(omega_k); zero when every finite-k mode is stable.
    double max_unstable_rate() const;
};

SpinWaveSpectrum spectrum(const LatticeSpec& spec, double omega);

double dynamical_exponent(double alpha, int dimension);

struct CriticalField {
    double omega_c = 0.0;            // in units of J
    double predicted_exponent = 0.;  // -2z of the large-L asymptote
};

/// Field at which the smallest finite wavevector turns unstable,
/// Omega_c = Jn (gamma_0 - gamma_{(2 pi / L, 0)}). O(N), no full table.
CriticalField critical_field(const LatticeSpec& spec);

/// Vacuum-quench occupations n_k(t) of the Holstein-Primakoff bosons,
/// (B/omega)^2 sin^2(omega t) per stable mode, sinh form when unstable.
/// Ordered like spectrum.modes.
struct ModeOccupations {
    std::vector<double> occupation;
    double total = 0.0;
    bool breakdown = false;  // total exceeded N/10
};
ModeOccupations mode_occupations(const SpinWaveSpectrum& s, double t);

// Transverse (y) quadrature variance <y_k y_-k>(t) of one mode,
// 1/4 [cos^2(w t) + ((A-B)/w)^2 sin^2(w t)] with the sinh continuation.
double mode_y_variance(const SpinWaveMode& mode, double t);

struct StabilityMap {
    std::vector<double> omega_grid;  // in units of J
    std::vector<int> size_grid;
    std::vector<double> lambda_max;       // omega-major: [io * n_sizes + il]
    std::vector<double> critical_fields;  // per size
};

StabilityMap stability_map(double alpha, int dimension, std::span<const double> omega_grid,
                           std::span<const int> size_grid, double coupling = 1.0);

void write_stability_csv(const StabilityMap& map, std::ostream& out);

/// Composite rotor + spin-wave observables: the rotor sector is the
/// exact Dicke-sector dynamics with coupling J_eff, finite-k modes add
/// magnetization depletion and the finite-k part of C^yy.
struct RswSeries {
    std::vector<double> t;
    std::vector<double> mean_jx;       // <K^x> - sum_k n_k
    std::vector<double> var_jy;        // rotor Var(K^y)
    std::vector<double> min_variance;  // rotor min transverse variance
    std::vector<double> xi2;           // N * min_var / <J^x>^2
    std::vector<double> sw_population; // sum_k n_k
    std::vector<int> corr_distances;
    std::vector<std::vector<double>> corr;  // corr[it][id] = C^yy(d, t)
    double breakdown_time = -1.0;           // first time total n_k > N/10, -1 if never
    std::size_t n_valid = 0;                // leading entries before breakdown
};

RswSeries rsw_observables(const LatticeSpec& spec, double omega, std::span<const double> t_grid,
                          std::span<const int> corr_distances = {});

}  // namespace tat
