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

#include "tat/bosonic.hpp"

#include <cmath>
#include <stdexcept>

namespace tat {

namespace {

// sinh(x)/x, stable at x = 0.
double sinhc(double x) {
    if (std::abs(x) < 1e-6) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

// Variance decomposed as K + B cos(2 theta) + C sin(2 theta).
struct Harmonics {
    double constant;
    double cos_coef;
    double sin_coef;
};

// Uses the identities cosh(2x) = 1 + 2 sinh^2(x) and
// sinh(2 l t)/(2 l) = t sinhc(2 l t) to stay finite at lambda -> 0,
// where the variance degenerates to a polynomial in t.
Harmonics harmonics(const BosonicParams& p, double t) {
    const double sl = t * sinhc(p.lambda * t);           // sinh(lambda t)/lambda
    const double sl2 = sl * sl;
    Harmonics h;
    h.constant = 0.5 + p.chi * p.chi * sl2;
    h.cos_coef = -p.chi * p.delta * sl2;
    h.sin_coef = p.chi * t * sinhc(2.0 * p.lambda * t);  // sinh(2 lambda t)/(2 lambda)
    return h;
}

}  // namespace

BosonicParams BosonicParams::from_field(double coupling, double omega) {
    if (!(coupling > 0.0)) throw std::domain_error("bosonic: coupling must be positive");
    BosonicParams p;
    p.chi = 0.5 * coupling;
    p.omega0 = 0.5 * coupling;
    p.delta = omega - p.omega0;
    if (std::abs(p.delta) > p.chi * (1.0 + 1e-12))
        throw std::domain_error("bosonic: field outside the window [0, J]");
    const double disc = std::max(0.0, p.chi * p.chi - p.delta * p.delta);
    p.lambda = std::sqrt(disc);
    if (p.lambda > 0.0) {
        p.u = std::sqrt(0.5 * (p.chi / p.lambda + 1.0));
        const double sign = p.delta >= 0.0 ? 1.0 : -1.0;
        p.v = sign * std::sqrt(0.5 * (p.chi / p.lambda - 1.0));
    }
    return p;
}

double quadrature_variance(const BosonicParams& p, double theta, double t) {
    const Harmonics h = harmonics(p, t);
    return h.constant + h.cos_coef * std::cos(2.0 * theta) + h.sin_coef * std::sin(2.0 * theta);
}

double boson_number(const BosonicParams& p, double t) {
    const double sl = t * sinhc(p.lambda * t);
    return p.chi * p.chi * sl * sl;
}

MinVarianceAngle min_variance_angle(const BosonicParams& p, double t) {
    const Harmonics h = harmonics(p, t);
    const double r = std::hypot(h.cos_coef, h.sin_coef);
    MinVarianceAngle out;
    if (r < 1e-14) {
        out.degenerate = true;
        return out;
    }
    double theta = 0.5 * std::atan2(-h.sin_coef, -h.cos_coef);
    theta = std::fmod(theta, M_PI);
    if (theta < 0.0) theta += M_PI;
    out.theta = theta;
    return out;
}

SqueezingEstimate squeezing_estimate(const BosonicParams& p, int n_spins, double t) {
    const Harmonics h = harmonics(p, t);
    const double r = std::hypot(h.cos_coef, h.sin_coef);
    const double min_var = h.constant - r;
    const double n_bosons = boson_number(p, t);

    SqueezingEstimate out;
    out.angle = min_variance_angle(p, t).theta;
    out.valid = n_bosons < 0.5 * n_spins;
    const double depletion = 1.0 - 2.0 * n_bosons / n_spins;
    out.value = 2.0 * min_var / (depletion * depletion);
    return out;
}

}  // namespace tat
