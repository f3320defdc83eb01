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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace tat {

/// Periodic square (D=2) or chain (D=1) lattice with ferromagnetic
/// power-law XY couplings J/(N_alpha * r^alpha).
struct LatticeSpec {
    int dimension = 2;       // 1 or 2
    int linear_size = 2;     // L, sites N = L^D
    double alpha = 0.0;      // power-law exponent, alpha = 0 means all-to-all
    double coupling = 1.0;   // J > 0, sets the unit of energy

    int site_count() const;
    // Throws std::invalid_argument on out-of-range parameters.
    void validate() const;
};

struct CouplingTable {
    int n_sites = 0;
    double kac_factor = 1.0;                 // N_alpha
    std::vector<double> pair_coupling;       // n x n, row-major, zero diagonal
    std::vector<double> min_image_distance;  // n x n, row-major

    double coupling(int i, int j) const { return pair_coupling[static_cast<std::size_t>(i) * n_sites + j]; }
    double distance(int i, int j) const { return min_image_distance[static_cast<std::size_t>(i) * n_sites + j]; }
    double row_sum(int i) const;
};

/// Structure factors gamma_k = sum_{r != 0} e^{ik.r} / r^alpha over
/// minimum-image displacements. Real by inversion symmetry.
struct FourierFactors {
    int dimension = 2;
    int linear_size = 0;
    std::vector<double> gamma;  // L^D entries, index n1 + L*n2 with k = 2*pi*n/L
    double gamma_zero = 0.0;

    double at(int n1, int n2 = 0) const;
    // Largest gamma_k over k != 0 (attained at the smallest wavevector).
    double max_nonzero_k() const;
};

// Minimum-image displacement of site j relative to site i, components in (-L/2, L/2].
std::array<int, 2> min_image_displacement(const LatticeSpec& spec, int i, int j);

double kac_factor(const LatticeSpec& spec);

CouplingTable build_couplings(const LatticeSpec& spec);

FourierFactors fourier_factors(const LatticeSpec& spec);

// Single gamma_k without building the full table; O(N) per call.
// k = 2*pi*(n1, n2)/L.
double gamma_at(const LatticeSpec& spec, int n1, int n2 = 0);

void write_couplings_csv(const CouplingTable& table, std::ostream& out);

}  // namespace tat
