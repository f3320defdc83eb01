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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "tat/lattice.hpp"

using namespace tat;

namespace {

// independent O(N^2) oracle: direct minimum-image double sum
double kac_oracle(const LatticeSpec& spec) {
    if (spec.alpha > spec.dimension) return 1.0;
    const int L = spec.linear_size;
    const int n = spec.site_count();
    double sum = 1.0;
    for (int j = 1; j < n; ++j) {
        int dx = j % L, dy = spec.dimension == 2 ? j / L : 0;
        if (dx > L / 2) dx -= L;
        if (dy > L / 2) dy -= L;
        sum += std::pow(std::sqrt(double(dx * dx + dy * dy)), -spec.alpha);
    }
    return sum;
}

}  // namespace

TEST_CASE("all-to-all couplings equal J/N") {
    LatticeSpec spec{2, 2, 0.0, 1.0};
    const CouplingTable t = build_couplings(spec);
    CHECK(t.kac_factor == doctest::Approx(4.0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j)
                CHECK(t.coupling(i, j) == 0.0);
            else
                CHECK(t.coupling(i, j) == doctest::Approx(0.25));
        }
}

TEST_CASE("Kac factor matches the direct-sum oracle") {
    for (const auto& spec : {LatticeSpec{1, 4, 1.0, 1.0}, LatticeSpec{1, 9, 0.5, 1.0},
                             LatticeSpec{2, 6, 1.7, 1.0}, LatticeSpec{2, 5, 2.0, 1.0}}) {
        CHECK(kac_factor(spec) == doctest::Approx(kac_oracle(spec)).epsilon(1e-13));
    }
    // D=1, L=4, alpha=1: 1 + (1 + 1 + 1/2)
    CHECK(kac_factor({1, 4, 1.0, 1.0}) == doctest::Approx(3.5));
}

TEST_CASE("alpha above D leaves couplings un-normalized") {
    LatticeSpec spec{2, 4, 3.0, 1.0};
    const CouplingTable t = build_couplings(spec);
    CHECK(t.kac_factor == 1.0);
    // nearest neighbor: 1/r^3 = 1
    CHECK(t.coupling(0, 1) == doctest::Approx(1.0));
    // diagonal neighbor at distance sqrt(2)
    CHECK(t.coupling(0, 5) == doctest::Approx(std::pow(std::sqrt(2.0), -3.0)));
}

TEST_CASE("couplings are symmetric, positive, translation invariant") {
    LatticeSpec spec{2, 5, 2.2, 1.3};
    const CouplingTable t = build_couplings(spec);
    const int n = t.n_sites;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(t.coupling(i, j) == t.coupling(j, i));
            if (i != j) CHECK(t.coupling(i, j) > 0.0);
        }
    // row sums all equal by translation invariance
    const double r0 = t.row_sum(0);
    for (int i = 1; i < n; ++i) CHECK(t.row_sum(i) == doctest::Approx(r0).epsilon(1e-12));
}

TEST_CASE("Kac normalization makes the row sum J (1 - 1/N_alpha) exact") {
    LatticeSpec spec{1, 32, 0.7, 2.0};
    const CouplingTable t = build_couplings(spec);
    // sum_j J_ij = J * (N_alpha - 1) / N_alpha
    const double expected = spec.coupling * (t.kac_factor - 1.0) / t.kac_factor;
    CHECK(t.row_sum(5) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS(build_couplings({2, 1, 0.0, 1.0}));
    CHECK_THROWS(build_couplings({2, 4, 0.0, -1.0}));
    CHECK_THROWS(build_couplings({2, 4, 0.0, 0.0}));
    CHECK_THROWS(build_couplings({3, 4, 0.0, 1.0}));
    CHECK_THROWS(build_couplings({2, 200, 0.0, 1.0}));  // above the site cap
    LatticeSpec inf_alpha{2, 4, std::numeric_limits<double>::infinity(), 1.0};
    CHECK_THROWS(build_couplings(inf_alpha));
}

TEST_CASE("gamma_0 equals the rescaled coupling row sum") {
    for (const auto& spec : {LatticeSpec{2, 6, 3.0, 1.0}, LatticeSpec{1, 12, 1.0, 1.0}}) {
        const CouplingTable t = build_couplings(spec);
        const FourierFactors f = fourier_factors(spec);
        CHECK(f.gamma_zero ==
              doctest::Approx(t.row_sum(0) * t.kac_factor / spec.coupling).epsilon(1e-12));
    }
}

TEST_CASE("gamma_k below gamma_0 at finite wavevector") {
    LatticeSpec spec{2, 8, 3.0, 1.0};
    const FourierFactors f = fourier_factors(spec);
    CHECK(f.at(1, 0) < f.gamma_zero);
    for (const double g : f.gamma) CHECK(g <= f.gamma_zero + 1e-12);
    CHECK(f.max_nonzero_k() == doctest::Approx(f.at(1, 0)));
}

TEST_CASE("gamma table matches a DFT oracle of the coupling row") {
    LatticeSpec spec{1, 6, 1.0, 1.0};
    const CouplingTable t = build_couplings(spec);
    const FourierFactors f = fourier_factors(spec);
    for (int n1 = 0; n1 < 6; ++n1) {
        std::complex<double> acc = 0.0;
        for (int j = 1; j < 6; ++j)
            acc += std::polar(t.coupling(0, j) * t.kac_factor / spec.coupling,
                              2.0 * M_PI * n1 * j / 6.0);
        CHECK(std::abs(acc.imag()) < 1e-12);
        CHECK(f.at(n1) == doctest::Approx(acc.real()).epsilon(1e-10));
    }
}

TEST_CASE("gamma_k sums to zero over the Brillouin zone") {
    for (const auto& spec : {LatticeSpec{2, 6, 3.0, 1.0}, LatticeSpec{1, 16, 0.5, 1.0},
                             LatticeSpec{2, 5, 0.0, 1.0}}) {
        const FourierFactors f = fourier_factors(spec);
        double sum = 0.0;
        for (const double g : f.gamma) sum += g;
        CHECK(std::abs(sum) < 1e-10 * f.gamma.size());
    }
}

TEST_CASE("all-to-all structure factor is -1 at every finite k") {
    LatticeSpec spec{1, 8, 0.0, 1.0};
    const FourierFactors f = fourier_factors(spec);
    CHECK(f.gamma_zero == doctest::Approx(7.0));
    for (int n1 = 1; n1 < 8; ++n1) CHECK(f.at(n1) == doctest::Approx(-1.0));
}
