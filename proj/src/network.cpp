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

#include "ris/network.hpp"

#include <cmath>
#include <sstream>

namespace ris
{
    namespace
    {
        // A^{-1} B with a reciprocal-condition gate
        ComplexMatrix solve_checked(const ComplexMatrix &a, const ComplexMatrix &b, const char *what)
        {
            Eigen::PartialPivLU<ComplexMatrix> lu(a);
            const double rcond = lu.rcond();
            if (!(rcond >= singular_rcond))
            {
                std::ostringstream msg;
                msg << what << ": system matrix is numerically singular (rcond " << rcond << ")";
                throw SingularNetwork(msg.str(), rcond);
            }
            return lu.solve(b);
        }

        void require_square_of(const ComplexMatrix &m, Eigen::Index n, const char *what)
        {
            if (m.rows() != n || m.cols() != n)
                throw DomainError(std::string(what) + ": dimension mismatch");
        }
    }

    // ---- DecouplingNetwork ----

    ComplexMatrix DecouplingNetwork::full() const
    {
        const Eigen::Index n = size();
        ComplexMatrix z(2 * n, 2 * n);
        z.topLeftCorner(n, n) = z11;
        z.topRightCorner(n, n) = z12;
        z.bottomLeftCorner(n, n) = z12.transpose();
        z.bottomRightCorner(n, n) = z22;
        return z;
    }

    bool DecouplingNetwork::is_lossless(double tol) const
    {
        const ComplexMatrix z = full();
        if (z.size() == 0)
            return true;
        const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
        return z.real().cwiseAbs().maxCoeff() <= tol * scale;
    }

    bool DecouplingNetwork::is_reciprocal(double tol) const
    {
        const ComplexMatrix z = full();
        if (z.size() == 0)
            return true;
        const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
        return (z - z.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
    }

    // ---- ChannelTriple ----

    ChannelTriple ChannelTriple::siso(cplx z_ds, const ComplexVector &z_dr, const ComplexVector &z_rs,
                                      double ref_resistance, double pathloss_dr, double pathloss_rs)
    {
        ChannelTriple t;
        t.z_ds = ComplexMatrix::Constant(1, 1, z_ds);
        t.z_dr = z_dr.transpose();
        t.z_rs = z_rs;
        t.ref_resistance = ref_resistance;
        t.pathloss_dr = pathloss_dr;
        t.pathloss_rs = pathloss_rs;
        t.validate();
        return t;
    }

    cplx ChannelTriple::direct() const
    {
        if (!is_siso())
            throw DomainError("ChannelTriple: SISO channel required");
        return z_ds(0, 0);
    }

    ComplexVector ChannelTriple::dr() const
    {
        if (!is_siso())
            throw DomainError("ChannelTriple: SISO channel required");
        return z_dr.row(0).transpose();
    }

    ComplexVector ChannelTriple::rs() const
    {
        if (!is_siso())
            throw DomainError("ChannelTriple: SISO channel required");
        return z_rs.col(0);
    }

    void ChannelTriple::validate() const
    {
        if (z_dr.rows() != z_ds.rows() || z_rs.cols() != z_ds.cols() || z_dr.cols() != z_rs.rows())
            throw DomainError("ChannelTriple: inconsistent block dimensions");
        if (!z_ds.allFinite() || !z_dr.allFinite() || !z_rs.allFinite())
            throw DomainError("ChannelTriple: non-finite entries");
        if (!(pathloss_dr >= 0.0) || !(pathloss_rs >= 0.0))
            throw DomainError("ChannelTriple: pathlosses must be nonnegative");
        if (!(ref_resistance > 0.0))
            throw DomainError("ChannelTriple: reference resistance must be positive");
    }

    // ---- transforms ----

    DecouplingNetwork power_matching_network(const ImpedanceMatrix &z_r, double eig_floor)
    {
        const double r = z_r.ref_resistance();
        // sqrt(R) Re(Z_R)^{1/2} = R C^{1/2}
        const RealMatrix c_half = sqrt_spd(coupling_real_part(z_r), eig_floor);
        const Eigen::Index n = z_r.size();

        DecouplingNetwork net;
        net.z11 = ComplexMatrix::Zero(n, n);
        net.z12 = -j_unit * (r * c_half).cast<cplx>();
        net.z22 = -j_unit * z_r.imag().cast<cplx>();
        return net;
    }

    ImpedanceMatrix apply_decoupling(const DecouplingNetwork &network, const ImpedanceMatrix &z_n)
    {
        const Eigen::Index n = network.size();
        require_square_of(z_n.entries(), n, "apply_decoupling");
        const ComplexMatrix x = solve_checked(network.z11 + z_n.entries(), network.z12, "apply_decoupling");
        ComplexMatrix out = network.z22 - network.z12.transpose() * x;
        return ImpedanceMatrix(std::move(out), z_n.ref_resistance());
    }

    ChannelTriple effective_channels(const ChannelTriple &triple, const ImpedanceMatrix &z_r, double eig_floor)
    {
        triple.validate();
        if (triple.elements() != z_r.size())
            throw DomainError("effective_channels: channel and array sizes differ");
        // Re(Z_R)^{-1/2} sqrt(R) = C^{-1/2}
        const RealMatrix c_inv_half = checked_eigen(coupling_real_part(z_r).entries(), eig_floor).power(-0.5);
        const ComplexMatrix t = c_inv_half.cast<cplx>();

        ChannelTriple out = triple;
        out.z_dr = triple.z_dr * t;
        out.z_rs = t * triple.z_rs;
        return out;
    }

    ComplexMatrix impedance_to_scattering(const ImpedanceMatrix &z_n)
    {
        const Eigen::Index n = z_n.size();
        const double r = z_n.ref_resistance();
        const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
        // (Z - R I)(Z + R I)^{-1}; the two factors commute, so solve from the left
        return solve_checked(z_n.entries() + r * eye, z_n.entries() - r * eye, "impedance_to_scattering");
    }

    ImpedanceMatrix scattering_to_impedance(const ComplexMatrix &theta, double ref_resistance)
    {
        if (theta.rows() != theta.cols())
            throw DomainError("scattering_to_impedance: matrix must be square");
        const Eigen::Index n = theta.rows();
        const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
        ComplexMatrix z = ref_resistance * solve_checked(eye - theta, eye + theta, "scattering_to_impedance");
        return ImpedanceMatrix(std::move(z), ref_resistance);
    }

    namespace
    {
        ComplexMatrix channel_with_impedance(const ChannelTriple &triple, const ComplexMatrix &z_r,
                                             const ComplexMatrix &z_n)
        {
            const ComplexMatrix x = solve_checked(z_r + z_n, triple.z_rs, "assemble_channel");
            return triple.z_ds - triple.z_dr * x;
        }

        // Z_N = R (I + Theta)(I - Theta)^{-1} gives
        //   (Z_R + Z_N)^{-1} = (I - Theta) [(Z_R + R I) - (Z_R - R I) Theta]^{-1}
        ComplexMatrix channel_with_diagonal(const ChannelTriple &triple, const ImpedanceMatrix &z_r,
                                            const ComplexVector &theta)
        {
            const Eigen::Index n = z_r.size();
            const double r = z_r.ref_resistance();
            const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
            const ComplexMatrix m = (z_r.entries() + r * eye) - (z_r.entries() - r * eye) * theta.asDiagonal();
            const ComplexMatrix x = solve_checked(m, triple.z_rs, "assemble_channel");
            const ComplexVector one_minus = ComplexVector::Ones(n) - theta;
            return triple.z_ds - triple.z_dr * (one_minus.asDiagonal() * x);
        }
    }

    ComplexMatrix assemble_channel(const ChannelTriple &triple, const ImpedanceMatrix &z_r,
                                   const RISConfig &config, ChannelMode mode)
    {
        triple.validate();
        const Eigen::Index n = z_r.size();
        if (triple.elements() != n)
            throw DomainError("assemble_channel: channel and array sizes differ");

        if (const auto *diag = std::get_if<DiagonalPhases>(&config))
        {
            if (diag->theta.size() != n)
                throw DomainError("assemble_channel: phase vector length differs from N");
            if (mode == ChannelMode::Conventional)
                return channel_with_diagonal(triple, z_r, diag->theta);
            // Behind the power-matching network the array looks like R I and the
            // coupling sits in the effective channels.
            const ChannelTriple eff = effective_channels(triple, z_r);
            return channel_with_diagonal(eff, ImpedanceMatrix::uncoupled(n, z_r.ref_resistance()), diag->theta);
        }
        if (const auto *imp = std::get_if<ImpedanceConfig>(&config))
        {
            require_square_of(imp->z_n.entries(), n, "assemble_channel");
            if (mode == ChannelMode::Conventional)
                return channel_with_impedance(triple, z_r.entries(), imp->z_n.entries());
            const ImpedanceMatrix z_dn = apply_decoupling(power_matching_network(z_r), imp->z_n);
            return channel_with_impedance(triple, z_r.entries(), z_dn.entries());
        }
        throw DomainError("assemble_channel: BD configuration carries no scattering matrix");
    }

    cplx assemble_channel_siso(const ChannelTriple &triple, const ImpedanceMatrix &z_r,
                               const RISConfig &config, ChannelMode mode)
    {
        if (!triple.is_siso())
            throw DomainError("assemble_channel_siso: SISO channel required");
        return assemble_channel(triple, z_r, config, mode)(0, 0);
    }

    ImpedanceMatrix bd_equivalent_network(const RealMatrix &x_prime, const ImpedanceMatrix &z_r, double eig_floor)
    {
        const Eigen::Index n = z_r.size();
        if (x_prime.rows() != n || x_prime.cols() != n)
            throw DomainError("bd_equivalent_network: dimension mismatch");
        // (j/R) Re(Z_R)^{1/2} X' Re(Z_R)^{1/2} = j C^{1/2} X' C^{1/2}
        const RealMatrix c_half = sqrt_spd(coupling_real_part(z_r), eig_floor);
        RealMatrix x = c_half * x_prime * c_half;
        x = 0.5 * (x + x.transpose());
        ComplexMatrix z = -j_unit * z_r.imag().cast<cplx>() + j_unit * x.cast<cplx>();
        return ImpedanceMatrix(std::move(z), z_r.ref_resistance());
    }

    ChannelTriple los_channels(const Scenario &s)
    {
        if (!(s.pathloss_dr >= 0.0) || !(s.pathloss_rs >= 0.0))
            throw DomainError("los_channels: pathlosses must be nonnegative");
        const SteeringVector a_dr = steering_vector(s.elements, s.spacing, s.alpha_rx);
        const SteeringVector a_rs = steering_vector(s.elements, s.spacing, s.alpha_tx);
        return ChannelTriple::siso(s.z_ds, std::sqrt(s.pathloss_dr) * s.ref_resistance * a_dr.entries(),
                                   std::sqrt(s.pathloss_rs) * s.ref_resistance * a_rs.entries(),
                                   s.ref_resistance, s.pathloss_dr, s.pathloss_rs);
    }

    ImpedanceMatrix array_impedance(const Scenario &s)
    {
        return add_ohmic_loss(build_coupling_matrix(s.elements, s.spacing, s.ref_resistance), s.loss_ratio);
    }
}
