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

#ifndef RIS_NETWORK_HPP
#define RIS_NETWORK_HPP

#include "ris/coupling.hpp"

#include <variant>

namespace ris
{
    // Lossless reciprocal 2N-port between the array and the tunable loads, stored
    // as the blocks of [[Z11, Z12], [Z12^T, Z22]].
    struct DecouplingNetwork
    {
        ComplexMatrix z11;
        ComplexMatrix z12;
        ComplexMatrix z22;

        Eigen::Index size() const { return z11.rows(); }
        ComplexMatrix full() const;

        bool is_lossless(double tol = 1e-10) const;
        bool is_reciprocal(double tol = 1e-10) const;
    };

    // Channel blocks of  Z = Z_DS - Z_DR (Z_R + Z_N)^{-1} Z_RS  with M transmit and
    // K receive antennas: Z_DS is K x M, Z_DR is K x N, Z_RS is N x M. The SISO case
    // is K = M = 1.
    struct ChannelTriple
    {
        ComplexMatrix z_ds;
        ComplexMatrix z_dr;
        ComplexMatrix z_rs;
        double pathloss_dr = 1.0; // gamma_DR
        double pathloss_rs = 1.0; // gamma_RS
        double ref_resistance = 1.0;

        static ChannelTriple siso(cplx z_ds, const ComplexVector &z_dr, const ComplexVector &z_rs,
                                  double ref_resistance = 1.0, double pathloss_dr = 1.0,
                                  double pathloss_rs = 1.0);

        Eigen::Index elements() const { return z_rs.rows(); }
        bool is_siso() const { return z_ds.rows() == 1 && z_ds.cols() == 1; }

        // SISO accessors; throw DomainError otherwise
        cplx direct() const;
        ComplexVector dr() const; // z_DR as a column vector (the row of Z_DR)
        ComplexVector rs() const;

        void validate() const;
    };

    // Tunable reflection state. Phases are given in the form that appears as
    // (Theta_bar - I) in the uncoupled-structure channel.
    struct DiagonalPhases
    {
        ComplexVector theta;
    };
    struct BDValue
    {
    };
    struct ImpedanceConfig
    {
        ImpedanceMatrix z_n;
    };
    using RISConfig = std::variant<DiagonalPhases, BDValue, ImpedanceConfig>;

    enum class ChannelMode
    {
        Conventional, // tunable network connected directly to the array
        Decoupled,    // power-matching decoupling network in between
    };

    // Z11 = 0, Z12 = -j sqrt(R) Re(Z_R)^{1/2}, Z22 = -j Im(Z_R)
    DecouplingNetwork power_matching_network(const ImpedanceMatrix &z_r, double eig_floor = default_eig_floor);

    // Z22 - Z12^T (Z11 + Z_N)^{-1} Z12
    ImpedanceMatrix apply_decoupling(const DecouplingNetwork &network, const ImpedanceMatrix &z_n);

    // Moves the coupling into the channels:
    //   Zbar_DR = Z_DR Re(Z_R)^{-1/2} sqrt(R),  Zbar_RS = sqrt(R) Re(Z_R)^{-1/2} Z_RS
    ChannelTriple effective_channels(const ChannelTriple &triple, const ImpedanceMatrix &z_r,
                                     double eig_floor = default_eig_floor);

    // Theta = (Z_N - R I)(Z_N + R I)^{-1}
    ComplexMatrix impedance_to_scattering(const ImpedanceMatrix &z_n);

    // Z_N = R (I + Theta)(I - Theta)^{-1}
    ImpedanceMatrix scattering_to_impedance(const ComplexMatrix &theta, double ref_resistance);

    // Full channel for the given tunable configuration.
    //
    // ImpedanceConfig: Z_N is used as is (Conventional) or transformed by the
    // power-matching network built from Z_R (Decoupled).
    // DiagonalPhases, Conventional: Z_N = R (I + Theta)(I - Theta)^{-1} with
    // Theta = diag(theta), evaluated in a form that stays finite at theta_n = 1.
    // DiagonalPhases, Decoupled: physical Theta = -diag(theta); evaluated through
    // the effective channels, where Z_R reduces to R I.
    // BDValue carries no matrix and is rejected.
    ComplexMatrix assemble_channel(const ChannelTriple &triple, const ImpedanceMatrix &z_r,
                                   const RISConfig &config, ChannelMode mode = ChannelMode::Conventional);

    cplx assemble_channel_siso(const ChannelTriple &triple, const ImpedanceMatrix &z_r,
                               const RISConfig &config, ChannelMode mode = ChannelMode::Conventional);

    // Direct tunable network for a fully-connected RIS reproducing the decoupled
    // channel Z_DS - Zbar_DR (I R + j X')^{-1} Zbar_RS without a decoupling network:
    //   Z_N = -j Im(Z_R) + (j/R) Re(Z_R)^{1/2} X' Re(Z_R)^{1/2}
    ImpedanceMatrix bd_equivalent_network(const RealMatrix &x_prime, const ImpedanceMatrix &z_r,
                                          double eig_floor = default_eig_floor);

    // LOS scenario of a ULA RIS: geometry, losses and pathlosses.
    struct Scenario
    {
        std::size_t elements = 1;
        double spacing = 0.5;  // wavelengths
        double alpha_tx = 0.0; // radians, BS -> RIS
        double alpha_rx = 0.0; // radians, RIS -> user
        double loss_ratio = 0.0;
        double ref_resistance = 1.0;
        double pathloss_dr = 1.0;
        double pathloss_rs = 1.0;
        cplx z_ds = 0.0;
    };

    // z_DR = sqrt(gamma_DR) R a(alpha_rx),  z_RS = sqrt(gamma_RS) R a(alpha_tx)
    ChannelTriple los_channels(const Scenario &scenario);

    // Z_R + gamma R I for the scenario's array
    ImpedanceMatrix array_impedance(const Scenario &scenario);
}

#endif
