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

#include "tat/collective.hpp"

#include <cmath>
#include <stdexcept>

namespace tat {

namespace {

using cd = std::complex<double>;

// sqrt(J(J+1) - m(m+1)) for the raising operator matrix element <m+1|J^+|m>.
double ladder(double j, double m) {
    const double x = j * (j + 1.0) - m * (m + 1.0);
    return x > 0.0 ? std::sqrt(x) : 0.0;
}

}  // namespace

DickeState DickeState::coherent_x(int n_spins) {
    if (n_spins < 1) throw std::invalid_argument("coherent_x: need at least one spin");
    DickeState s;
    s.n_spins = n_spins;
    s.amplitudes.resize(n_spins + 1);
    const double n = n_spins;
    for (int p = 0; p <= n_spins; ++p) {
        // sqrt(binom(N, p)) / 2^{N/2} via log-gamma for large N
        const double lg = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(p + 1.0) - std::lgamma(n - p + 1.0)) -
                          0.5 * n * std::log(2.0);
        s.amplitudes[p] = std::exp(lg);
    }
    return s;
}

CollectivePropagator::CollectivePropagator(int n_spins, double omega, double coupling)
    : n_(n_spins), omega_(omega), coupling_(coupling) {
    if (n_spins < 2) throw std::invalid_argument("propagator: need at least two spins");
    if (!(coupling > 0.0)) throw std::invalid_argument("propagator: coupling must be positive");
    const double j = 0.5 * n_;
    diag_.resize(n_ + 1);
    offdiag_.resize(n_);
    for (int p = 0; p <= n_; ++p) {
        const double m = p - j;
        diag_[p] = coupling_ / n_ * m * m;
    }
    for (int p = 0; p < n_; ++p) {
        const double m = p - j;
        offdiag_[p] = 0.5 * omega_ * ladder(j, m);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag_, offdiag_, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("propagator: tridiagonal eigensolver failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

DickeState CollectivePropagator::evolve(const DickeState& initial, double t) const {
    std::vector<DickeState> out = evolve(initial, std::span<const double>(&t, 1));
    return out.front();
}

std::vector<DickeState> CollectivePropagator::evolve(const DickeState& initial,
                                                     std::span<const double> t_grid) const {
    if (initial.n_spins != n_) throw std::invalid_argument("evolve: state size mismatch");
    const Eigen::VectorXcd projected = eigenvectors_.transpose() * initial.amplitudes;
    std::vector<DickeState> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        Eigen::VectorXcd phase(n_ + 1);
        for (int p = 0; p <= n_; ++p)
            phase[p] = std::polar(1.0, -eigenvalues_[p] * t) * projected[p];
        DickeState s;
        s.n_spins = n_;
        s.amplitudes = eigenvectors_ * phase;
        const double norm = s.amplitudes.norm();
        if (std::abs(norm - 1.0) > 1e-10)
            throw std::runtime_error("evolve: norm drifted beyond tolerance");
        out.push_back(std::move(s));
    }
    return out;
}

double CollectivePropagator::energy(const DickeState& state) const {
    const CollectiveMoments m = moments(state);
    const double jz2 = m.covariance(2, 2) + m.mean[2] * m.mean[2];
    return coupling_ / n_ * jz2 + omega_ * m.mean[0];
}

CollectiveMoments moments(const DickeState& state, double time) {
    const int n = state.n_spins;
    const double j = 0.5 * n;
    const Eigen::VectorXcd& c = state.amplitudes;

    double jz = 0.0, jz2 = 0.0, jpjm_sym = 0.0;
    cd jp = 0.0, jp2 = 0.0, jpz = 0.0;
    for (int p = 0; p <= n; ++p) {
        const double m = p - j;
        const double w = std::norm(c[p]);
        jz += m * w;
        jz2 += m * m * w;
        // <J^+J^- + J^-J^+> accumulated diagonally
        jpjm_sym += w * (2.0 * j * (j + 1.0) - 2.0 * m * m);
        if (p + 1 <= n) {
            const double a = ladder(j, m);
            jp += std::conj(c[p + 1]) * a * c[p];
            jpz += std::conj(c[p + 1]) * a * (2.0 * m + 1.0) * c[p];
        }
        if (p + 2 <= n) jp2 += std::conj(c[p + 2]) * ladder(j, m + 1.0) * ladder(j, m) * c[p];
    }

    CollectiveMoments out;
    out.time = time;
    const double jx = jp.real();
    const double jy = jp.imag();
    out.mean << jx, jy, jz;

    const double jx2 = 0.25 * (2.0 * jp2.real() + jpjm_sym);
    const double jy2 = 0.25 * (-2.0 * jp2.real() + jpjm_sym);
    const double sym_xy = 0.5 * jp2.imag();
    const double sym_xz = 0.5 * jpz.real();
    const double sym_yz = 0.5 * jpz.imag();

    out.covariance(0, 0) = jx2 - jx * jx;
    out.covariance(1, 1) = jy2 - jy * jy;
    out.covariance(2, 2) = jz2 - jz * jz;
    out.covariance(0, 1) = out.covariance(1, 0) = sym_xy - jx * jy;
    out.covariance(0, 2) = out.covariance(2, 0) = sym_xz - jx * jz;
    out.covariance(1, 2) = out.covariance(2, 1) = sym_yz - jy * jz;
    return out;
}

TransverseMinimum transverse_minimum(const CollectiveMoments& m) {
    const double vy = m.covariance(1, 1);
    const double vz = m.covariance(2, 2);
    const double cyz = m.covariance(1, 2);
    const double mean = 0.5 * (vy + vz);
    const double half_diff = 0.5 * (vy - vz);
    const double r = std::hypot(half_diff, cyz);
    TransverseMinimum out;
    out.variance = mean - r;
    out.max_variance = mean + r;
    // Eigenvector angle of the minimal direction, measured from y towards z.
    double theta = 0.5 * std::atan2(2.0 * cyz, vy - vz) + M_PI / 2.0;
    theta = std::fmod(theta, M_PI);
    if (theta < 0.0) theta += M_PI;
    out.angle = theta;
    return out;
}

double squeezing_parameter(const CollectiveMoments& m, int n_spins, double* angle) {
    const TransverseMinimum tm = transverse_minimum(m);
    if (angle) *angle = tm.angle;
    const double jx = m.mean[0];
    return n_spins * tm.variance / (jx * jx);
}

}  // namespace tat
