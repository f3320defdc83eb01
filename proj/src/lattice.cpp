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

#include "tat/lattice.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tat {

namespace {

constexpr int kMaxSites = 10000;

int wrap_half(int d, int L) {
    d %= L;
    if (d < 0) d += L;
    if (d > L / 2) d -= L;
    return d;
}

}  // namespace

int LatticeSpec::site_count() const {
    int n = linear_size;
    for (int d = 1; d < dimension; ++d) n *= linear_size;
    return n;
}

void LatticeSpec::validate() const {
    if (dimension != 1 && dimension != 2)
        throw std::invalid_argument("lattice dimension must be 1 or 2");
    if (linear_size < 2)
        throw std::invalid_argument("linear size must be at least 2");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be finite and non-negative");
    if (!(coupling > 0.0))
        throw std::invalid_argument("coupling J must be positive");
}

std::array<int, 2> min_image_displacement(const LatticeSpec& spec, int i, int j) {
    const int L = spec.linear_size;
    if (spec.dimension == 1) return {wrap_half(j - i, L), 0};
    const int xi = i % L, yi = i / L;
    const int xj = j % L, yj = j / L;
    return {wrap_half(xj - xi, L), wrap_half(yj - yi, L)};
}

double kac_factor(const LatticeSpec& spec) {
    spec.validate();
    if (spec.alpha > spec.dimension) return 1.0;
    // N_alpha = 1 + sum_{r != 0} r^{-alpha}, minimum-image sum over the lattice.
    double sum = 1.0;
    const int n = spec.site_count();
    for (int j = 1; j < n; ++j) {
        auto d = min_image_displacement(spec, 0, j);
        const double r2 = static_cast<double>(d[0]) * d[0] + static_cast<double>(d[1]) * d[1];
        sum += std::pow(r2, -0.5 * spec.alpha);
    }
    return sum;
}

double CouplingTable::row_sum(int i) const {
    double s = 0.0;
    for (int j = 0; j < n_sites; ++j) s += coupling(i, j);
    return s;
}

CouplingTable build_couplings(const LatticeSpec& spec) {
    spec.validate();
    const int n = spec.site_count();
    if (n > kMaxSites)
        throw std::invalid_argument("lattice has " + std::to_string(n) + " sites, maximum is " +
                                    std::to_string(kMaxSites));

    CouplingTable table;
    table.n_sites = n;
    table.kac_factor = kac_factor(spec);
    table.pair_coupling.assign(static_cast<std::size_t>(n) * n, 0.0);
    table.min_image_distance.assign(static_cast<std::size_t>(n) * n, 0.0);

    // Translation invariance: couplings depend only on the displacement,
    // so compute one row and shift it.
    const int L = spec.linear_size;
    std::vector<double> row_c(n, 0.0), row_r(n, 0.0);
    for (int j = 1; j < n; ++j) {
        auto d = min_image_displacement(spec, 0, j);
        const double r = std::sqrt(static_cast<double>(d[0]) * d[0] + static_cast<double>(d[1]) * d[1]);
        row_r[j] = r;
        row_c[j] = spec.coupling / (table.kac_factor * std::pow(r, spec.alpha));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int dj;
            if (spec.dimension == 1) {
                dj = (j - i + n) % n;
            } else {
                const int dx = (j % L - i % L + L) % L;
                const int dy = (j / L - i / L + L) % L;
                dj = dx + L * dy;
            }
            table.pair_coupling[static_cast<std::size_t>(i) * n + j] = row_c[dj];
            table.min_image_distance[static_cast<std::size_t>(i) * n + j] = row_r[dj];
        }
    }
    return table;
}

double gamma_at(const LatticeSpec& spec, int n1, int n2) {
    const int L = spec.linear_size;
    const double kx = 2.0 * M_PI * n1 / L;
    const double ky = 2.0 * M_PI * n2 / L;
    const int n = spec.site_count();
    double re = 0.0, im = 0.0;
    for (int j = 1; j < n; ++j) {
        auto d = min_image_displacement(spec, 0, j);
        const double r2 = static_cast<double>(d[0]) * d[0] + static_cast<double>(d[1]) * d[1];
        const double w = std::pow(r2, -0.5 * spec.alpha);
        const double phase = kx * d[0] + ky * d[1];
        re += w * std::cos(phase);
        im += w * std::sin(phase);
    }
    if (std::abs(im) > 1e-12 * (1.0 + std::abs(re)))
        throw std::runtime_error("gamma_k has a non-negligible imaginary part");
    return re;
}

FourierFactors fourier_factors(const LatticeSpec& spec) {
    spec.validate();
    FourierFactors f;
    f.dimension = spec.dimension;
    f.linear_size = spec.linear_size;
    const int L = spec.linear_size;
    const int n = spec.site_count();
    f.gamma.resize(n);
    if (spec.dimension == 1) {
        for (int n1 = 0; n1 < L; ++n1) f.gamma[n1] = gamma_at(spec, n1);
    } else {
        for (int n2 = 0; n2 < L; ++n2)
            for (int n1 = 0; n1 < L; ++n1) f.gamma[n1 + L * n2] = gamma_at(spec, n1, n2);
    }
    f.gamma_zero = f.gamma[0];
    return f;
}

double FourierFactors::at(int n1, int n2) const {
    const int L = linear_size;
    n1 = ((n1 % L) + L) % L;
    n2 = ((n2 % L) + L) % L;
    return gamma[n1 + (dimension == 2 ? L * n2 : 0)];
}

double FourierFactors::max_nonzero_k() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < gamma.size(); ++i) m = std::max(m, gamma[i]);
    return m;
}

void write_couplings_csv(const CouplingTable& table, std::ostream& out) {
    out << "i,j,coupling\n";
    for (int i = 0; i < table.n_sites; ++i)
        for (int j = 0; j < table.n_sites; ++j)
            out << i << ',' << j << ',' << table.coupling(i, j) << '\n';
}

}  // namespace tat
