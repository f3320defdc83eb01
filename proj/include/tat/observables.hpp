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

namespace tat {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double intercept_se = 0.0;
    double slope_se = 0.0;
    double residual_ss = 0.0;
    int n_points = 0;
};

// Ordinary least squares y = intercept + slope * x; refuses < 4 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Power law y = c * x^p via log-log least squares; returns the exponent fit
// (slope = p). All inputs must be positive.
LineFit fit_power_law(std::span<const double> x, std::span<const double> y);

struct OptimalSqueezing {
    double t_opt = 0.0;
    double xi2_opt = 0.0;
    double angle = 0.0;
    bool boundary = false;  // no interior minimum in the series
};

/// Discrete minimum of xi^2(t) refined by a parabola through the three
/// bracketing points. `angle` may be empty.
OptimalSqueezing optimal_squeezing(std::span<const double> t, std::span<const double> xi2,
                                   std::span<const double> angle = {});

/// Linear fit of t_opt against log N; the slope is compared with
/// 1/(2 lambda) by the callers.
LineFit time_scaling(std::span<const double> n_spins, std::span<const double> t_opt);

struct PeakResult {
    double t_peak = 0.0;
    double value = 0.0;
    bool used_first_peak = false;  // second-maximum rule could not apply
};

/// Peak extraction for variance series: second local maximum for a
/// driven series, with a minimum-prominence filter against noise peaks.
PeakResult variance_peak(std::span<const double> t, std::span<const double> y,
                         double prominence_fraction = 0.05);

/// Exponent of peak value vs N (log-log fit).
LineFit peak_variance_scaling(std::span<const double> n_spins, std::span<const double> peaks);

struct CrossoverResult {
    bool found = false;
    double crossover_n = 0.0;
    double crossover_se = 0.0;
    double slope_below = 0.0;
    double slope_above = 0.0;
};

/// Two-segment log-log fit of peak values vs N; the crossover is the
/// intersection of the segments. Requires >= 6 sizes.
CrossoverResult detect_crossover(std::span<const double> n_spins, std::span<const double> peaks);

double to_decibels(double xi2);

}  // namespace tat
