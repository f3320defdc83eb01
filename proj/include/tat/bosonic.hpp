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

namespace tat {

/// Parameters of the linearized single-mode model for the collective
/// spin: chi = J/2, detuning delta = Omega - J/2, squeezing rate
/// lambda = sqrt(chi^2 - delta^2) = sqrt(Omega (J - Omega)), and the
/// Bogolyubov coefficients u, v with u^2 - v^2 = 1.
struct BosonicParams {
    double chi = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    double u = 1.0;
    double v = 0.0;
    double omega0 = 0.0;  // optimal field J/2

    // Throws std::domain_error when Omega lies outside [0, J].
    static BosonicParams from_field(double coupling, double omega);
};

/// Generalized quadrature variance <X_theta^2> of the squeezed vacuum
/// at time t; negative t is allowed (time reversal).
double quadrature_variance(const BosonicParams& p, double theta, double t);

/// <a^dag a>(t) = (chi/lambda)^2 sinh^2(lambda t), with the analytic
/// (chi t)^2 limit at lambda -> 0.
double boson_number(const BosonicParams& p, double t);

struct SqueezingEstimate {
    double value = 1.0;
    double angle = 0.0;  // argmin theta of the quadrature variance
    bool valid = true;   // false once the boson number reaches N/2
};

/// Analytic spin squeezing parameter xi_R^2 of the linearized model.
SqueezingEstimate squeezing_estimate(const BosonicParams& p, int n_spins, double t);

struct MinVarianceAngle {
    double theta = 0.0;  // in [0, pi)
    bool degenerate = false;
};

MinVarianceAngle min_variance_angle(const BosonicParams& p, double t);

}  // namespace tat
