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
//
// End-to-end acceptance suite. Each criterion prints exactly one
// PASS/FAIL line; the exit code is the number of failures. A list of
// criterion numbers may be passed as arguments to run a subset.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "tat/bosonic.hpp"
#include "tat/collective.hpp"
#include "tat/dtwa.hpp"
#include "tat/lattice.hpp"
#include "tat/observables.hpp"
#include "tat/spinwave.hpp"

using namespace tat;

namespace {

struct Criterion {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------- collective

struct CollectiveScan {
    std::vector<double> t, xi2, var_jy, max_var, jx;
};

CollectiveScan scan_collective(int n, double omega, double t_max, double dt) {
    CollectiveScan out;
    for (double t = 0.0; t <= t_max + 1e-12; t += dt) out.t.push_back(t);
    const CollectivePropagator prop(n, omega, 1.0);
    const DickeState init = DickeState::coherent_x(n);
    const auto states = prop.evolve(init, out.t);
    for (std::size_t i = 0; i < out.t.size(); ++i) {
        const CollectiveMoments m = moments(states[i], out.t[i]);
        const TransverseMinimum tm = transverse_minimum(m);
        out.xi2.push_back(squeezing_parameter(m, n));
        out.var_jy.push_back(m.covariance(1, 1));
        out.max_var.push_back(tm.max_variance);
        out.jx.push_back(m.mean[0]);
    }
    return out;
}

// Full 2^N product-basis evolution, no Dicke-sector restriction.
class BruteForce {
  public:
    BruteForce(int n, double omega, double coupling) : n_(n), dim_(1 << n) {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim_, dim_);
        for (int s = 0; s < dim_; ++s) {
            const double mz = 0.5 * (2 * __builtin_popcount(unsigned(s)) - n_);
            h(s, s) = coupling / n_ * mz * mz;
            for (int i = 0; i < n_; ++i) h(s ^ (1 << i), s) += 0.5 * omega;
        }
        es_.compute(h);
    }

    CollectiveMoments moments_at(double t) const {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(dim_, std::pow(2.0, -0.5 * n_));
        const Eigen::VectorXcd c = es_.eigenvectors().transpose() * psi;
        Eigen::VectorXcd phased(dim_);
        for (int k = 0; k < dim_; ++k)
            phased[k] = std::polar(1.0, -es_.eigenvalues()[k] * t) * c[k];
        psi = es_.eigenvectors() * phased;

        Eigen::VectorXcd phi[3];
        phi[0] = Eigen::VectorXcd::Zero(dim_);
        phi[1] = Eigen::VectorXcd::Zero(dim_);
        phi[2] = Eigen::VectorXcd::Zero(dim_);
        const std::complex<double> half_i(0.0, 0.5);
        for (int s = 0; s < dim_; ++s) {
            phi[2][s] = 0.5 * (2 * __builtin_popcount(unsigned(s)) - n_) * psi[s];
            for (int i = 0; i < n_; ++i) {
                phi[0][s ^ (1 << i)] += 0.5 * psi[s];
                if (s & (1 << i))
                    phi[1][s & ~(1 << i)] += half_i * psi[s];
                else
                    phi[1][s | (1 << i)] -= half_i * psi[s];
            }
        }
        CollectiveMoments m;
        m.time = t;
        for (int a = 0; a < 3; ++a) {
            m.mean[a] = psi.dot(phi[a]).real();
            for (int b = 0; b < 3; ++b)
                m.covariance(a, b) = phi[a].dot(phi[b]).real() - m.mean[a] * m.mean[b];
        }
        m.covariance = 0.5 * (m.covariance + m.covariance.transpose()).eval();
        return m;
    }

  private:
    int n_;
    int dim_;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_;
};

// ------------------------------------------------------------- criteria 1-4

Criterion criterion1() {
    Criterion c;
    // effective exponents drift towards 1/2 from both sides as N grows
    // (0.54 above at Omega=0.2, 0.48 below at 0.8 around N ~ 10^3); the
    // larger sizes keep every field inside the +-0.05 band
    const std::vector<double> sizes{512, 1024, 2048, 4096};
    for (double omega : {0.2, 0.5, 0.8}) {
        std::vector<double> opt;
        for (double n : sizes) {
            const CollectiveScan s = scan_collective(int(n), omega, 14.0, 0.02);
            const OptimalSqueezing o = optimal_squeezing(s.t, s.xi2);
            c.require(!o.boundary, "no interior minimum at N=" + fmt(n));
            opt.push_back(o.xi2_opt);
        }
        const double nu = -fit_power_law(sizes, opt).slope;
        c.require(std::abs(nu - 0.50) <= 0.05,
                  "Omega=" + fmt(omega) + ": nu=" + fmt(nu) + " outside 0.50+-0.05");
        c.note("Omega=" + fmt(omega) + " nu=" + fmt(nu));
    }
    return c;
}

Criterion criterion2() {
    Criterion c;
    // the OAT exponent drifts towards 2/3 from above as N grows; fit the
    // largest sizes the dense engine handles comfortably
    const std::vector<double> sizes{512, 1024, 2048, 4096};
    std::vector<double> opt;
    for (double n : sizes) {
        const CollectiveScan s = scan_collective(int(n), 0.0, 22.0, 0.02);
        const OptimalSqueezing o = optimal_squeezing(s.t, s.xi2);
        c.require(!o.boundary, "no interior minimum at N=" + fmt(n));
        opt.push_back(o.xi2_opt);
    }
    const double nu = -fit_power_law(sizes, opt).slope;
    c.require(std::abs(nu - 0.67) <= 0.05, "nu=" + fmt(nu) + " outside 0.67+-0.05");
    c.note("nu=" + fmt(nu));
    return c;
}

Criterion criterion3() {
    Criterion c;
    const std::vector<double> sizes{64, 128, 256, 512, 1024};
    const double lambda = std::sqrt(0.5 * (1.0 - 0.5));
    std::vector<double> topt;
    for (double n : sizes) {
        const CollectiveScan s = scan_collective(int(n), 0.5, 14.0, 0.02);
        topt.push_back(optimal_squeezing(s.t, s.xi2).t_opt);
    }
    // t_min ~ (1/lambda) log10 sqrt(N): convert the natural-log fit to
    // decades before comparing with 1/(2 lambda)
    const double slope = time_scaling(sizes, topt).slope * std::log(10.0);
    const double expected = 1.0 / (2.0 * lambda);
    c.require(std::abs(slope - expected) <= 0.15 * expected,
              "slope=" + fmt(slope) + " vs 1/(2 lambda)=" + fmt(expected));
    c.note("slope=" + fmt(slope) + " expected=" + fmt(expected));
    return c;
}

Criterion criterion4() {
    Criterion c;
    // the peak exponent converges to 2 from below (1.82 over 64..512 at
    // Omega=0.8, 1.93 over this window)
    const std::vector<double> sizes{128, 256, 512, 1024, 2048};
    for (double omega : {0.2, 0.5, 0.8}) {
        std::vector<double> peaks;
        for (double n : sizes) {
            const CollectiveScan s = scan_collective(int(n), omega, 30.0, 0.05);
            peaks.push_back(variance_peak(s.t, s.var_jy).value);
        }
        const double expo = peak_variance_scaling(sizes, peaks).slope;
        c.require(std::abs(expo - 2.0) <= 0.1,
                  "Omega=" + fmt(omega) + ": exponent " + fmt(expo) + " outside 2.0+-0.1");
        c.note("Omega=" + fmt(omega) + " exponent=" + fmt(expo));
    }
    // early-time envelope of the antisqueezed transverse variance
    const int n = 1024;
    const double lambda = 0.5;
    const CollectiveScan s = scan_collective(n, 0.5, 4.01, 0.1);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        const double lt = lambda * s.t[i];
        if (lt < 0.5 || lt > 2.0) continue;
        const double env = 0.25 * n * std::exp(2.0 * lambda * s.t[i]);
        worst = std::max(worst, std::abs(s.max_var[i] / env - 1.0));
    }
    c.require(worst <= 0.10, "envelope deviation " + fmt(worst) + " > 10%");
    c.note("envelope max dev=" + fmt(worst));
    return c;
}

// ------------------------------------------------------------- criteria 5-7

Criterion criterion5() {
    Criterion c;
    const int n = 512;
    std::vector<double> xi_at_short;
    for (double omega : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const CollectiveScan coarse = scan_collective(n, omega, 12.0, 0.05);
        const double t_opt = optimal_squeezing(coarse.t, coarse.xi2).t_opt;
        const BosonicParams p = BosonicParams::from_field(1.0, omega);
        const CollectivePropagator prop(n, omega, 1.0);
        const DickeState init = DickeState::coherent_x(n);
        double worst = 0.0;
        for (int k = 1; k <= 25; ++k) {
            const double t = 0.5 * t_opt * k / 25.0;
            const CollectiveMoments m = moments(prop.evolve(init, t), t);
            const double exact = squeezing_parameter(m, n);
            const double approx = squeezing_estimate(p, n, t).value;
            worst = std::max(worst, std::abs(approx / exact - 1.0));
        }
        c.require(worst <= 0.05,
                  "Omega=" + fmt(omega) + ": bosonic deviation " + fmt(worst) + " > 5%");
        const CollectiveMoments m05 = moments(prop.evolve(init, 0.05), 0.05);
        xi_at_short.push_back(squeezing_parameter(m05, n));
        c.note("Omega=" + fmt(omega) + " dev=" + fmt(worst));
    }
    const auto [lo, hi] = std::minmax_element(xi_at_short.begin(), xi_at_short.end());
    c.require(*hi - *lo < 1e-3, "short-time field spread " + fmt(*hi - *lo) + " >= 1e-3");
    c.note("spread(Jt=0.05)=" + fmt(*hi - *lo));
    return c;
}

Criterion criterion6() {
    Criterion c;
    // (a) dipolar 2D: Omega_c ~ L^{-2z} with z = 1/2
    {
        std::vector<double> ls, oc;
        for (int l : {8, 12, 16, 24, 32, 48, 64, 96, 128}) {
            ls.push_back(l);
            oc.push_back(critical_field({2, l, 3.0, 1.0}).omega_c);
        }
        const double slope = fit_power_law(ls, oc).slope;
        c.require(std::abs(slope + 1.0) <= 0.1, "alpha=3 slope " + fmt(slope));
        c.note("alpha=3/D=2 slope=" + fmt(slope));
    }
    // (b) alpha = 0.5 in 1D: Omega_c almost size-independent
    {
        std::vector<double> oc;
        for (int l : {64, 128, 256, 512, 1024, 2048, 4096})
            oc.push_back(critical_field({1, l, 0.5, 1.0}).omega_c);
        const auto [lo, hi] = std::minmax_element(oc.begin(), oc.end());
        const double variation = (*hi - *lo) / *lo;
        c.require(variation < 0.10, "alpha=0.5 variation " + fmt(variation));
        c.note("alpha=0.5 variation=" + fmt(variation));
    }
    // (c) alpha = 1 in 1D: at the marginal alpha = D point the critical
    // field closes logarithmically, Omega_c ~ 1/log L; that model must
    // beat any power law
    {
        std::vector<double> ls, invlog, oc;
        for (int l : {64, 128, 256, 512, 1024, 2048, 4096}) {
            ls.push_back(l);
            invlog.push_back(1.0 / std::log(double(l)));
            oc.push_back(critical_field({1, l, 1.0, 1.0}).omega_c);
        }
        const LineFit logfit = fit_line(invlog, oc);
        const LineFit powfit = fit_power_law(ls, oc);
        double ss_log = 0.0, ss_pow = 0.0;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const double mlog = logfit.intercept + logfit.slope * invlog[i];
            const double mpow = std::exp(powfit.intercept) * std::pow(ls[i], powfit.slope);
            ss_log += (oc[i] - mlog) * (oc[i] - mlog);
            ss_pow += (oc[i] - mpow) * (oc[i] - mpow);
        }
        c.require(ss_log < ss_pow,
                  "alpha=1 log residual " + fmt(ss_log) + " !< power " + fmt(ss_pow));
        c.note("alpha=1 ss_log=" + fmt(ss_log) + " ss_pow=" + fmt(ss_pow));
    }
    return c;
}

Criterion criterion7() {
    Criterion c;
    double worst = 0.0;
    auto compare = [&](int n, double omega, double t) {
        const BruteForce brute(n, omega, 1.0);
        const CollectiveMoments ref = brute.moments_at(t);
        const CollectivePropagator prop(n, omega, 1.0);
        const CollectiveMoments got =
            moments(prop.evolve(DickeState::coherent_x(n), t), t);
        for (int a = 0; a < 3; ++a) {
            worst = std::max(worst, std::abs(got.mean[a] - ref.mean[a]));
            for (int b = 0; b < 3; ++b)
                worst = std::max(worst, std::abs(got.covariance(a, b) - ref.covariance(a, b)));
        }
    };
    for (int n : {4, 6, 8, 10})
        for (double omega : {0.3, 0.7})
            for (double t : {0.5, 1.5}) compare(n, omega, t);
    compare(12, 0.5, 1.0);
    c.require(worst <= 1e-9, "worst moment deviation " + fmt(worst));
    c.note("worst deviation=" + fmt(worst));
    return c;
}

// ------------------------------------------------------------ criteria 8-11

Criterion criterion8() {
    Criterion c;
    // (a) drift bounds + all-to-all <J^x> against the exact engine
    {
        const LatticeSpec spec{1, 400, 0.0, 1.0};
        const CouplingTable table = build_couplings(spec);
        const double omega = 0.1, lambda = std::sqrt(omega * (1.0 - omega));
        std::vector<double> grid;
        for (double lt = 0.5; lt <= 3.001; lt += 0.5) grid.push_back(lt / lambda);
        IntegrationOptions opts;
        opts.dt = 0.02;
        const DtwaSeries s = run_dtwa(spec, table, omega, grid, 600, 2026, opts);
        c.require(s.max_energy_drift < 1e-6, "energy drift " + fmt(s.max_energy_drift));
        c.require(s.max_length_drift < 1e-8, "length drift " + fmt(s.max_length_drift));
        const CollectivePropagator prop(400, omega, 1.0);
        const DickeState init = DickeState::coherent_x(400);
        double worst_sigma = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double exact = moments(prop.evolve(init, grid[i]), grid[i]).mean[0];
            const double sigma = std::abs(s.jx.mean[i] - exact) / s.jx.stderr_[i];
            worst_sigma = std::max(worst_sigma, sigma);
        }
        c.require(worst_sigma <= 3.0, "<J^x> off by " + fmt(worst_sigma) + " sigma");
        c.note("drift(E)=" + fmt(s.max_energy_drift) + " drift(len)=" + fmt(s.max_length_drift) +
               " worst=" + fmt(worst_sigma) + " sigma");
    }
    // (b) exact discrete-average enumeration vs Monte Carlo, N = 8
    {
        const LatticeSpec spec{1, 8, 0.0, 1.0};
        const CouplingTable table = build_couplings(spec);
        const int n = 8, n_conf = 1 << (2 * n);
        SpinEnsemble full;
        full.n_sites = n;
        full.n_traj = n_conf;
        full.sx.assign(std::size_t(n) * n_conf, 0.5);
        full.sy.resize(std::size_t(n) * n_conf);
        full.sz.resize(std::size_t(n) * n_conf);
        for (int k = 0; k < n_conf; ++k)
            for (int i = 0; i < n; ++i) {
                full.sy[std::size_t(k) * n + i] = (k >> (2 * i)) & 1 ? 0.5 : -0.5;
                full.sz[std::size_t(k) * n + i] = (k >> (2 * i + 1)) & 1 ? 0.5 : -0.5;
            }
        const std::vector<double> grid{1.0};
        IntegrationOptions opts;
        opts.dt = 0.005;
        const double omega = 0.4;
        const auto snaps = integrate(full, table, omega, grid, opts);
        const DtwaSeries exact = measure(snaps, table, omega, {}, spec);
        const DtwaSeries mc = run_dtwa(spec, table, omega, grid, 20000, 99, opts);
        const double s1 = std::abs(mc.jx.mean[0] - exact.jx.mean[0]) / mc.jx.stderr_[0];
        const double s2 = std::abs(mc.var_jy.mean[0] - exact.var_jy.mean[0]) / mc.var_jy.stderr_[0];
        c.require(s1 <= 3.0, "enumeration <J^x> off by " + fmt(s1) + " sigma");
        c.require(s2 <= 3.0, "enumeration Var(J^y) off by " + fmt(s2) + " sigma");
        c.note("enum sigmas " + fmt(s1) + ", " + fmt(s2));
    }
    return c;
}

Criterion criterion9() {
    Criterion c;
    const std::vector<int> sizes{10, 12, 16, 20};
    std::vector<double> nvals, lnn, xopt, topt, peaks;
    std::vector<double> grid;
    for (double t = 0.0; t <= 6.001; t += 0.1) grid.push_back(t);
    IntegrationOptions opts;
    opts.dt = 0.005;
    opts.energy_tolerance = 1e-5;

    DtwaSeries largest;  // kept for the correlation-front test (L = 20)
    for (int l : sizes) {
        const LatticeSpec spec{2, l, 3.0, 1.0};
        const CouplingTable table = build_couplings(spec);
        std::vector<int> dists;
        if (l == 20)
            for (int d = 1; d <= 9; ++d) dists.push_back(d);
        const DtwaSeries s = run_dtwa(spec, table, 0.2, grid, 4000, 7, opts, dists);
        if (l == 20) largest = s;
        const OptimalSqueezing o = optimal_squeezing(s.t, s.xi2.mean);
        c.require(!o.boundary, "L=" + std::to_string(l) + ": no interior xi^2 minimum");
        nvals.push_back(double(l) * l);
        lnn.push_back(std::log(double(l) * l));
        xopt.push_back(o.xi2_opt);
        topt.push_back(o.t_opt);
        peaks.push_back(variance_peak(s.t, s.var_jy.mean).value);
    }
    for (std::size_t i = 1; i < sizes.size(); ++i)
        c.require(xopt[i] < xopt[i - 1], "xi^2_opt not decreasing at L=" +
                                             std::to_string(sizes[i]));
    // t_opt grows logarithmically: positive slope and better fit than linear-N
    const LineFit logfit = fit_line(lnn, topt);
    c.require(logfit.slope > 0.0, "t_opt slope in log N is " + fmt(logfit.slope));
    const LineFit linfit = fit_line(nvals, topt);
    double ss_lin = 0.0;
    for (std::size_t i = 0; i < nvals.size(); ++i) {
        const double m = linfit.intercept + linfit.slope * nvals[i];
        ss_lin += (topt[i] - m) * (topt[i] - m);
    }
    c.require(logfit.residual_ss < ss_lin,
              "t_opt: log fit " + fmt(logfit.residual_ss) + " !< linear " + fmt(ss_lin));
    // Heisenberg-like peak scaling
    const double expo = peak_variance_scaling(nvals, peaks).slope;
    c.require(std::abs(expo - 2.0) <= 0.2, "peak exponent " + fmt(expo) + " outside 2.0+-0.2");
    c.note("nu_t=" + fmt(logfit.slope) + " peak exponent=" + fmt(expo));

    // correlation front: arrival time vs distance, log-d beats linear-d
    const double threshold = 0.02;
    std::vector<double> dist, td;
    for (std::size_t id = 0; id < largest.corr_distances.size(); ++id) {
        for (std::size_t it = 0; it < largest.t.size(); ++it) {
            if (std::abs(largest.corr[it][id]) > threshold) {
                dist.push_back(largest.corr_distances[id]);
                td.push_back(largest.t[it]);
                break;
            }
        }
    }
    c.require(dist.size() >= 6, "front detected at only " + std::to_string(dist.size()) +
                                    " distances");
    if (dist.size() >= 6) {
        std::vector<double> logd;
        for (double d : dist) logd.push_back(std::log(d));
        const LineFit f_log = fit_line(logd, td);
        const LineFit f_lin = fit_line(dist, td);
        c.require(f_log.residual_ss < f_lin.residual_ss,
                  "front: log-d " + fmt(f_log.residual_ss) + " !< linear-d " +
                      fmt(f_lin.residual_ss));
        c.note("front ss(log)=" + fmt(f_log.residual_ss) + " ss(lin)=" +
               fmt(f_lin.residual_ss));
    }
    return c;
}

Criterion criterion10() {
    Criterion c;
    const LatticeSpec spec{2, 16, 3.0, 1.0};
    const CouplingTable table = build_couplings(spec);
    const double omega = 0.2;

    std::vector<double> grid;
    for (double t = 0.1; t <= 3.001; t += 0.1) grid.push_back(t);
    const RswSeries rsw = rsw_observables(spec, omega, grid);
    IntegrationOptions opts;
    opts.dt = 0.005;
    opts.energy_tolerance = 1e-5;
    const DtwaSeries dtwa = run_dtwa(spec, table, omega, grid, 2000, 13, opts);

    // both methods carry O(1%) truncation error at this size, which no
    // trajectory count removes; allow 3 sigma plus a 1% systematic floor
    const OptimalSqueezing o = optimal_squeezing(dtwa.t, dtwa.xi2.mean);
    const double jx_floor = 0.01 * 0.5 * spec.site_count();
    double worst_jx = 0.0, worst_xi = 0.0;
    for (std::size_t i = 0; i < grid.size() && i < rsw.n_valid; ++i) {
        if (grid[i] > o.t_opt) break;
        worst_jx = std::max(worst_jx, std::abs(rsw.mean_jx[i] - dtwa.jx.mean[i]) /
                                          (3.0 * dtwa.jx.stderr_[i] + jx_floor));
        worst_xi = std::max(worst_xi, std::abs(rsw.xi2[i] - dtwa.xi2.mean[i]) /
                                          (3.0 * dtwa.xi2.stderr_[i] + 0.01 * rsw.xi2[i]));
    }
    c.require(worst_jx <= 1.0, "<J^x> RSW vs dTWA exceeds bound by " + fmt(worst_jx));
    c.require(worst_xi <= 1.0, "xi^2 RSW vs dTWA exceeds bound by " + fmt(worst_xi));
    c.note("bound fractions: Jx=" + fmt(worst_jx) + " xi2=" + fmt(worst_xi));

    // finite-k rates below the collective rate over the scanned grid
    bool all_below = true;
    for (int l : {8, 12, 16, 20}) {
        const double j_eff = spectrum({2, l, 3.0, 1.0}, 0.0).j_eff;
        for (int k = 1; k <= 9; ++k) {
            const SpinWaveSpectrum s = spectrum({2, l, 3.0, 1.0}, 0.1 * k * j_eff);
            if (s.max_unstable_rate() >= s.lambda_eff) all_below = false;
        }
    }
    c.require(all_below, "some lambda_k >= lambda_eff on the grid");
    return c;
}

Criterion criterion11() {
    Criterion c;
    const std::vector<int> sizes{12, 16, 20};
    std::vector<double> grid;
    for (double t = 0.0; t <= 3.001; t += 0.05) grid.push_back(t);
    IntegrationOptions opts;
    opts.dt = 0.005;
    opts.energy_tolerance = 1e-5;
    for (double omega : {0.6, 0.8}) {
        std::vector<double> onset, ratio;
        for (int l : sizes) {
            const LatticeSpec spec{2, l, 3.0, 1.0};
            const CouplingTable table = build_couplings(spec);
            const DtwaSeries s = run_dtwa(spec, table, omega, grid, 2000, 17, opts);
            const double n = double(l) * l;
            // onset differences between adjacent sizes are ~0.1, so the
            // 0.25 crossing is located by linear interpolation
            double t_star = -1.0;
            for (std::size_t i = 1; i < grid.size(); ++i) {
                const double y0 = s.jx.mean[i - 1] / n, y1 = s.jx.mean[i] / n;
                if (y1 < 0.25) {
                    t_star = grid[i - 1] + (0.25 - y0) * (grid[i] - grid[i - 1]) / (y1 - y0);
                    break;
                }
            }
            c.require(t_star > 0.0, "Omega=" + fmt(omega) + " L=" + std::to_string(l) +
                                        ": no depolarization within the window");
            onset.push_back(t_star);
            ratio.push_back(t_star / std::log(n));
        }
        for (std::size_t i = 1; i < onset.size(); ++i)
            c.require(onset[i] > onset[i - 1],
                      "Omega=" + fmt(omega) + ": onset not growing with N");
        // t* / log N roughly constant: the plateau lasts for c log N
        const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
        c.require(*lo > 0.05, "Omega=" + fmt(omega) + ": plateau constant " + fmt(*lo));
        c.require(*hi / *lo < 1.6,
                  "Omega=" + fmt(omega) + ": t*/log N spread " + fmt(*hi / *lo));
        c.note("Omega=" + fmt(omega) + " t*=" + fmt(onset.front()) + ".." + fmt(onset.back()) +
               " c=" + fmt(0.5 * (*lo + *hi)));
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    using Fn = Criterion (*)();
    const Fn all[11] = {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6,
                        criterion7, criterion8, criterion9, criterion10, criterion11};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (int i = 1; i <= 11; ++i) selected.push_back(i);

    int failures = 0;
    for (int num : selected) {
        if (num < 1 || num > 11) {
            std::printf("criterion %d: unknown (valid: 1..11)\n", num);
            ++failures;
            continue;
        }
        const Criterion c = all[num - 1]();
        std::printf("criterion %2d: %s%s%s\n", num, c.ok ? "PASS" : "FAIL",
                    c.detail.empty() ? "" : " -- ", c.detail.c_str());
        std::fflush(stdout);
        if (!c.ok) ++failures;
    }
    return failures;
}
