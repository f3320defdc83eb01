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

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace tat {

/// State in the maximal-spin Dicke sector J = N/2, stored in the J^z
/// eigenbasis. amplitudes[p] is the coefficient of m = p - N/2.
struct DickeState {
    int n_spins = 0;
    Eigen::VectorXcd amplitudes;

    // Coherent spin state along +x, expressed in the J^z basis
    // (binomial amplitudes, all positive).
    static DickeState coherent_x(int n_spins);

    double norm() const { return amplitudes.norm(); }
};

struct CollectiveMoments {
    double time = 0.0;
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();  // symmetrized
};

/// Collective XY + transverse-field Hamiltonian restricted to the Dicke
/// sector: H = (J_coupling/N) (J^z)^2 + Omega J^x, tridiagonal in the
/// J^z basis. Evolution by one-time spectral decomposition.
class CollectivePropagator {
  public:
    CollectivePropagator(int n_spins, double omega, double coupling);

    int n_spins() const { return n_; }
    double omega() const { return omega_; }
    double coupling() const { return coupling_; }

    DickeState evolve(const DickeState& initial, double t) const;
    std::vector<DickeState> evolve(const DickeState& initial, std::span<const double> t_grid) const;

    double energy(const DickeState& state) const;

    const Eigen::VectorXd& diagonal() const { return diag_; }
    const Eigen::VectorXd& off_diagonal() const { return offdiag_; }

  private:
    int n_;
    double omega_;
    double coupling_;
    Eigen::VectorXd diag_;     // (coupling/N) m^2
    Eigen::VectorXd offdiag_;  // (Omega/2) sqrt(J(J+1) - m(m+1))
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

CollectiveMoments moments(const DickeState& state, double time = 0.0);

/// Minimal variance in the plane transverse to x and its angle theta in
/// [0, pi), measured from the y axis towards z.
struct TransverseMinimum {
    double variance = 0.0;
    double max_variance = 0.0;
    double angle = 0.0;
};
TransverseMinimum transverse_minimum(const CollectiveMoments& m);

/// Ramsey squeezing parameter N * min_perp Var(J^perp) / <J^x>^2.
double squeezing_parameter(const CollectiveMoments& m, int n_spins, double* angle = nullptr);

}  // namespace tat
