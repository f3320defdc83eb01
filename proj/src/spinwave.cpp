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

#include "tat/spinwave.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tat/collective.hpp"

namespace tat {

namespace {

double sinc_like(double omega2, double t) {
    // sin(w t)/w continued through w^2 < 0 as sinh(l t)/l.
    const double x2 = omega2 * t * t;
    if (std::abs(x2) < 1e-12) return t;
    if (omega2 > 0.0) {
        const double w = std::sqrt(omega2);
        return std::sin(w * t) / w;
    }
    const double l = std::sqrt(-omega2);
    return std::sinh(l * t) / l;
}

double cos_like(double omega2, double t) {
    if (omega2 >= 0.0) return std::cos(std::sqrt(omega2) * t);
    return std::cosh(std::sqrt(-omega2) * t);
}

SpinWaveMode make_mode(double jn, double gamma0, double gamma_k, double omega, int n1, int n2) {
    SpinWaveMode m;
    m.n1 = n1;
    m.n2 = n2;
    m.a_coef = jn * (gamma0 - 0.5 * gamma_k) - omega;
    m.b_coef = -0.5 * jn * gamma_k;
    m.omega2 = m.a_coef * m.a_coef - m.b_coef * m.b_coef;
    m.stable = m.omega2 >= 0.0;
    if (m.stable)
        m.frequency = std::sqrt(m.omega2);
    else
        m.rate = std::sqrt(-m.omega2);
    return m;
}

}  // namespace

double dynamical_exponent(double alpha, int dimension) {
    if (alpha <= dimension) return 0.0;
    if (alpha < dimension + 2) return 0.5 * (alpha - dimension);
    return 1.0;
}

SpinWaveSpectrum spectrum(const LatticeSpec& spec, double omega) {
    spec.validate();
    if (omega < 0.0) throw std::invalid_argument("spectrum: field must be non-negative");
    const FourierFactors f = fourier_factors(spec);
    const double jn = spec.coupling / kac_factor(spec);
    const int n = spec.site_count();
    const int L = spec.linear_size;

    SpinWaveSpectrum s;
    s.n_sites = n;
    s.omega_field = omega;
    s.j_eff = n * jn * f.gamma_zero / (n - 1.0);
    const double disc = omega * (s.j_eff - omega);
    s.lambda_eff = disc > 0.0 ? std::sqrt(disc) : 0.0;
    s.dynamical_exponent = dynamical_exponent(spec.alpha, spec.dimension);
    s.zero_mode = make_mode(jn, f.gamma_zero, f.gamma_zero, omega, 0, 0);

    s.modes.reserve(n - 1);
    if (spec.dimension == 1) {
        for (int n1 = 1; n1 < L; ++n1)
            s.modes.push_back(make_mode(jn, f.gamma_zero, f.gamma[n1], omega, n1, 0));
    } else {
        for (int n2 = 0; n2 < L; ++n2)
            for (int n1 = 0; n1 < L; ++n1) {
                if (n1 == 0 && n2 == 0) continue;
                s.modes.push_back(make_mode(jn, f.gamma_zero, f.gamma[n1 + L * n2], omega, n1, n2));
            }
    }
    return s;
}

double SpinWaveSpectrum::max_unstable_rate() const {
    double m = 0.0;
    for (const auto& mode : modes) m = std::max(m, mode.rate);
    return m;
}

CriticalField critical_field(const LatticeSpec& spec) {
    spec.validate();
    if (spec.linear_size < 3) throw std::invalid_argument("critical_field: need L >= 3");
    const double jn = spec.coupling / kac_factor(spec);
    const double gamma0 = gamma_at(spec, 0, 0);
    const double gamma_min_k = gamma_at(spec, 1, 0);
    CriticalField out;
    out.omega_c = jn * (gamma0 - gamma_min_k);
    out.predicted_exponent = -2.0 * dynamical_exponent(spec.alpha, spec.dimension);
    return out;
}

ModeOccupations mode_occupations(const SpinWaveSpectrum& s, double t) {
    if (t < 0.0) throw std::invalid_argument("mode_occupations: t must be non-negative");
    ModeOccupations out;
    out.occupation.reserve(s.modes.size());
    for (const auto& m : s.modes) {
        const double sl = sinc_like(m.omega2, t);
        const double n = m.b_coef * m.b_coef * sl * sl;
        out.occupation.push_back(n);
        out.total += n;
    }
    out.breakdown = out.total > 0.1 * s.n_sites;
    return out;
}

double mode_y_variance(const SpinWaveMode& mode, double t) {
    const double c = cos_like(mode.omega2, t);
    const double sl = sinc_like(mode.omega2, t);
    const double amb = mode.a_coef - mode.b_coef;
    return 0.25 * (c * c + amb * amb * sl * sl);
}

StabilityMap stability_map(double alpha, int dimension, std::span<const double> omega_grid,
                           std::span<const int> size_grid, double coupling) {
    StabilityMap map;
    map.omega_grid.assign(omega_grid.begin(), omega_grid.end());
    map.size_grid.assign(size_grid.begin(), size_grid.end());
    map.lambda_max.assign(omega_grid.size() * size_grid.size(), 0.0);
    map.critical_fields.resize(size_grid.size());
    for (std::size_t il = 0; il < size_grid.size(); ++il) {
        LatticeSpec spec{dimension, size_grid[il], alpha, coupling};
        map.critical_fields[il] = critical_field(spec).omega_c;
        const SpinWaveSpectrum base = spectrum(spec, 0.0);
        for (std::size_t io = 0; io < omega_grid.size(); ++io) {
            // A_k, B_k are affine in Omega; shift the zero-field modes
            // instead of recomputing the structure factors per field.
            double lmax = 0.0;
            const double omega = omega_grid[io] * coupling;
            for (const auto& m : base.modes) {
                const double a = m.a_coef - omega;
                const double w2 = a * a - m.b_coef * m.b_coef;
                if (w2 < 0.0) lmax = std::max(lmax, std::sqrt(-w2));
            }
            map.lambda_max[io * size_grid.size() + il] = lmax;
        }
    }
    return map;
}

void write_stability_csv(const StabilityMap& map, std::ostream& out) {
    out << "omega_over_J,L,lambda_max,omega_c\n";
    for (std::size_t io = 0; io < map.omega_grid.size(); ++io)
        for (std::size_t il = 0; il < map.size_grid.size(); ++il)
            out << map.omega_grid[io] << ',' << map.size_grid[il] << ','
                << map.lambda_max[io * map.size_grid.size() + il] << ',' << map.critical_fields[il]
                << '\n';
}

RswSeries rsw_observables(const LatticeSpec& spec, double omega, std::span<const double> t_grid,
                          std::span<const int> corr_distances) {
    const SpinWaveSpectrum s = spectrum(spec, omega);
    const int n = s.n_sites;
    const int L = spec.linear_size;

    // Rotor sector: exact alpha = 0 dynamics with the effective coupling.
    CollectivePropagator rotor(n, omega, s.j_eff);
    const DickeState psi0 = DickeState::coherent_x(n);
    const std::vector<DickeState> states = rotor.evolve(psi0, t_grid);

    RswSeries out;
    out.t.assign(t_grid.begin(), t_grid.end());
    out.corr_distances.assign(corr_distances.begin(), corr_distances.end());
    for (std::size_t it = 0; it < t_grid.size(); ++it) {
        const CollectiveMoments m = moments(states[it], t_grid[it]);
        const ModeOccupations occ = mode_occupations(s, t_grid[it]);
        if (occ.breakdown && out.breakdown_time < 0.0) out.breakdown_time = t_grid[it];

        const double jx = m.mean[0] - occ.total;
        const TransverseMinimum tm = transverse_minimum(m);
        out.mean_jx.push_back(jx);
        out.var_jy.push_back(m.covariance(1, 1));
        out.min_variance.push_back(tm.variance);
        out.xi2.push_back(n * tm.variance / (jx * jx));
        out.sw_population.push_back(occ.total);

        if (!corr_distances.empty()) {
            std::vector<double> row;
            row.reserve(corr_distances.size());
            for (int d : corr_distances) {
                double sw = 0.0;
                for (const auto& mode : s.modes) {
                    // displacement along a lattice axis; average the two axes in 2D
                    double cosk;
                    if (spec.dimension == 1) {
                        cosk = std::cos(2.0 * M_PI * mode.n1 * d / L);
                    } else {
                        cosk = 0.5 * (std::cos(2.0 * M_PI * mode.n1 * d / L) +
                                      std::cos(2.0 * M_PI * mode.n2 * d / L));
                    }
                    sw += cosk * mode_y_variance(mode, t_grid[it]);
                }
                row.push_back(m.covariance(1, 1) / (static_cast<double>(n) * n) + sw / n);
            }
            out.corr.push_back(std::move(row));
        }
    }
    out.n_valid = out.t.size();
    if (out.breakdown_time >= 0.0) {
        out.n_valid = 0;
        while (out.n_valid < out.t.size() && out.t[out.n_valid] < out.breakdown_time) ++out.n_valid;
    }
    return out;
}

}  // namespace tat
