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

#include "tat/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tat {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
    const int n = static_cast<int>(x.size());
    if (n < 4) throw std::invalid_argument("fit_line: need at least 4 points");
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("fit_line: degenerate abscissa");
    LineFit f;
    f.n_points = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        f.residual_ss += r * r;
    }
    const double sigma2 = n > 2 ? f.residual_ss / (n - 2) : 0.0;
    f.slope_se = std::sqrt(sigma2 / sxx);
    f.intercept_se = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
    return f;
}

LineFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx, ly;
    lx.reserve(x.size());
    ly.reserve(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_power_law: inputs must be positive");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return fit_line(lx, ly);
}

OptimalSqueezing optimal_squeezing(std::span<const double> t, std::span<const double> xi2,
                                   std::span<const double> angle) {
    if (t.size() != xi2.size()) throw std::invalid_argument("optimal_squeezing: size mismatch");
    if (t.size() < 10) throw std::invalid_argument("optimal_squeezing: need at least 10 points");
    std::size_t imin = 0;
    for (std::size_t i = 1; i < t.size(); ++i)
        if (xi2[i] < xi2[imin]) imin = i;

    OptimalSqueezing out;
    out.t_opt = t[imin];
    out.xi2_opt = xi2[imin];
    if (!angle.empty()) out.angle = angle[imin];
    if (imin == 0 || imin + 1 == t.size()) {
        out.boundary = true;
        return out;
    }
    // parabolic refinement through the three bracketing points
    const double x0 = t[imin - 1], x1 = t[imin], x2 = t[imin + 1];
    const double y0 = xi2[imin - 1], y1 = xi2[imin], y2 = xi2[imin + 1];
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if (std::abs(den) > 0.0) {
        const double vertex = x1 - 0.5 * num / den;
        if (vertex > x0 && vertex < x2) {
            out.t_opt = vertex;
            // Lagrange evaluation of the interpolating parabola
            const auto l = [&](double xa, double xb, double ya_) {
                return ya_ * (vertex - xa) * (vertex - xb);
            };
            out.xi2_opt = l(x1, x2, y0) / ((x0 - x1) * (x0 - x2)) +
                          l(x0, x2, y1) / ((x1 - x0) * (x1 - x2)) +
                          l(x0, x1, y2) / ((x2 - x0) * (x2 - x1));
        }
    }
    return out;
}

LineFit time_scaling(std::span<const double> n_spins, std::span<const double> t_opt) {
    std::vector<double> ln;
    ln.reserve(n_spins.size());
    for (double n : n_spins) {
        if (!(n > 0.0)) throw std::invalid_argument("time_scaling: sizes must be positive");
        ln.push_back(std::log(n));
    }
    return fit_line(ln, t_opt);
}

namespace {

struct Peak {
    std::size_t index;
    double prominence;
};

std::vector<Peak> local_maxima(std::span<const double> y, double min_prominence) {
    std::vector<Peak> peaks;
    const std::size_t n = y.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] >= y[i - 1] && y[i] > y[i + 1])) continue;
        // prominence: drop to the highest of the two flanking minima
        double left_min = y[i];
        for (std::size_t j = i; j-- > 0;) {
            if (y[j] > y[i]) break;
            left_min = std::min(left_min, y[j]);
        }
        double right_min = y[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (y[j] > y[i]) break;
            right_min = std::min(right_min, y[j]);
        }
        const double prom = y[i] - std::max(left_min, right_min);
        if (prom >= min_prominence) peaks.push_back({i, prom});
    }
    return peaks;
}

}  // namespace

PeakResult variance_peak(std::span<const double> t, std::span<const double> y,
                         double prominence_fraction) {
    if (t.size() != y.size() || t.size() < 5)
        throw std::invalid_argument("variance_peak: need matching series of >= 5 points");
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double range = *hi - *lo;
    const auto peaks = local_maxima(y, prominence_fraction * range);

    PeakResult out;
    if (peaks.size() >= 2) {
        out.t_peak = t[peaks[1].index];
        out.value = y[peaks[1].index];
    } else if (peaks.size() == 1) {
        out.t_peak = t[peaks[0].index];
        out.value = y[peaks[0].index];
        out.used_first_peak = true;
    } else {
        // monotone or flat series: report the global maximum
        const std::size_t imax = static_cast<std::size_t>(hi - y.begin());
        out.t_peak = t[imax];
        out.value = y[imax];
        out.used_first_peak = true;
    }
    return out;
}

LineFit peak_variance_scaling(std::span<const double> n_spins, std::span<const double> peaks) {
    return fit_power_law(n_spins, peaks);
}

CrossoverResult detect_crossover(std::span<const double> n_spins, std::span<const double> peaks) {
    if (n_spins.size() != peaks.size() || n_spins.size() < 6)
        throw std::invalid_argument("detect_crossover: need >= 6 sizes");
    const std::size_t n = n_spins.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(n_spins[i]);
        ly[i] = std::log(peaks[i]);
    }

    double best_ss = std::numeric_limits<double>::infinity();
    CrossoverResult best;
    // break index: each segment needs >= 4 points (shared break point)
    for (std::size_t b = 3; b + 4 <= n; ++b) {
        std::span<const double> lx1(lx.data(), b + 1), ly1(ly.data(), b + 1);
        std::span<const double> lx2(lx.data() + b, n - b), ly2(ly.data() + b, n - b);
        const LineFit f1 = fit_line(lx1, ly1);
        const LineFit f2 = fit_line(lx2, ly2);
        const double ss = f1.residual_ss + f2.residual_ss;
        if (ss < best_ss) {
            best_ss = ss;
            const double dx = f1.slope - f2.slope;
            if (std::abs(dx) > 1e-12) {
                const double xc = (f2.intercept - f1.intercept) / dx;
                best.found = true;
                best.crossover_n = std::exp(xc);
                best.slope_below = f1.slope;
                best.slope_above = f2.slope;
                // first-order error propagation through the intersection
                const double se = std::sqrt(f1.intercept_se * f1.intercept_se +
                                            f2.intercept_se * f2.intercept_se +
                                            xc * xc * (f1.slope_se * f1.slope_se +
                                                       f2.slope_se * f2.slope_se)) /
                                  std::max(std::abs(dx), 1e-12);
                best.crossover_se = best.crossover_n * se;
            }
        }
    }
    // single-slope data: compare against one straight line
    const LineFit single = fit_line(lx, ly);
    if (single.residual_ss <= best_ss * 1.05 || !best.found) {
        CrossoverResult none;
        none.slope_below = none.slope_above = single.slope;
        return none;
    }
    return best;
}

double to_decibels(double xi2) {
    if (!(xi2 > 0.0)) throw std::domain_error("to_decibels: input must be positive");
    return 10.0 * std::log10(xi2);
}

}  // namespace tat
