// SPDX-License-Identifier: Apache-2.0
//
// ris-coupling: RIS channel models with mutual coupling and decoupling networks
// Copyright (C) 2026 The ris-coupling authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RIS_COUPLING_HPP
#define RIS_COUPLING_HPP

#include "ris/types.hpp"

#include <cstddef>

namespace ris
{
    // Complex N x N impedance matrix in Ohms together with its reference resistance R.
    // Used for the array matrix Z_R as well as for tunable and decoupling blocks.
    class ImpedanceMatrix
    {
    public:
        ImpedanceMatrix() = default;
        ImpedanceMatrix(ComplexMatrix entries, double ref_resistance);

        const ComplexMatrix &entries() const { return entries_; }
        double ref_resistance() const { return ref_resistance_; }
        Eigen::Index size() const { return entries_.rows(); }

        RealMatrix real() const { return entries_.real(); }
        RealMatrix imag() const { return entries_.imag(); }

        bool is_symmetric(double tol = 0.0) const;
        bool is_lossless(double tol = 1e-10) const; // Re(Z) == 0

        // R * I, the uncoupled array
        static ImpedanceMatrix uncoupled(Eigen::Index n, double ref_resistance);

    private:
        ComplexMatrix entries_;
        double ref_resistance_ = 1.0;
    };

    // Real symmetric coupling matrix C = Re(Z_R)/R + gamma * I (dimensionless).
    class CouplingMatrix
    {
    public:
        CouplingMatrix() = default;
        CouplingMatrix(RealMatrix entries, double loss_ratio);

        const RealMatrix &entries() const { return entries_; }
        double loss_ratio() const { return loss_ratio_; }
        Eigen::Index size() const { return entries_.rows(); }

    private:
        RealMatrix entries_;
        double loss_ratio_ = 0.0;
    };

    // Unit-modulus ULA response a(alpha), zero-based element index.
    class SteeringVector
    {
    public:
        SteeringVector(ComplexVector entries, double angle, double spacing)
            : entries_(std::move(entries)), angle_(angle), spacing_(spacing) {}

        const ComplexVector &entries() const { return entries_; }
        double angle() const { return angle_; }
        double spacing() const { return spacing_; }
        Eigen::Index size() const { return entries_.size(); }

    private:
        ComplexVector entries_;
        double angle_;
        double spacing_;
    };

    // Z_R of a ULA of isotropic radiators. The spacing d is in wavelengths, so the
    // phase argument between elements i and j is 2*pi*d*|i-j|.
    ImpedanceMatrix build_coupling_matrix(std::size_t n, double spacing, double ref_resistance = 1.0);

    // Z_R + R_d * I with R_d = gamma * R (ohmic dissipation per element)
    ImpedanceMatrix add_ohmic_loss(const ImpedanceMatrix &z_r, double loss_ratio);

    // Re(Z_R)/R + gamma * I
    CouplingMatrix coupling_real_part(const ImpedanceMatrix &z_r, double loss_ratio = 0.0);

    SteeringVector steering_vector(std::size_t n, double spacing, double angle);

    // Symmetric eigendecomposition of a coupling matrix with the conditioning gate applied.
    // Eigenvalues ascending; columns of `vectors` are orthonormal eigenvectors.
    struct SymmetricEigen
    {
        RealVector values;
        RealMatrix vectors;

        double condition_number() const;
        RealMatrix power(double exponent) const; // V diag(lambda^p) V^T
    };

    // Throws IllConditioned when min eigenvalue < eig_floor * max eigenvalue.
    SymmetricEigen checked_eigen(const RealMatrix &c, double eig_floor = default_eig_floor);

    // Principal square root S with S*S == C.
    RealMatrix sqrt_spd(const CouplingMatrix &c, double eig_floor = default_eig_floor);
    RealMatrix sqrt_spd(const RealMatrix &c, double eig_floor = default_eig_floor);

    // lambda_max / lambda_min; +infinity when lambda_min <= 0.
    double condition_number(const CouplingMatrix &c);
    double condition_number(const RealMatrix &c);
}

#endif
