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

#include "ris/coupling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ris
{
    namespace
    {
        // sin(pi t) and cos(pi t) with exact zeros at integer and half-integer t
        double sin_pi(double t)
        {
            const double r = t - 2.0 * std::round(0.5 * t); // r in [-1, 1]
            if (r == 0.0 || std::abs(r) == 1.0)
                return 0.0;
            if (std::abs(r) == 0.5)
                return r > 0.0 ? 1.0 : -1.0;
            return std::sin(std::numbers::pi * r);
        }

        double cos_pi(double t)
        {
            const double r = t - 2.0 * std::round(0.5 * t);
            if (std::abs(r) == 0.5)
                return 0.0;
            if (r == 0.0)
                return 1.0;
            if (std::abs(r) == 1.0)
                return -1.0;
            return std::cos(std::numbers::pi * r);
        }
    }

    ImpedanceMatrix::ImpedanceMatrix(ComplexMatrix entries, double ref_resistance)
        : entries_(std::move(entries)), ref_resistance_(ref_resistance)
    {
        if (entries_.rows() != entries_.cols())
            throw DomainError("ImpedanceMatrix: matrix must be square");
        if (!(ref_resistance_ > 0.0))
            throw DomainError("ImpedanceMatrix: reference resistance must be positive");
    }

    bool ImpedanceMatrix::is_symmetric(double tol) const
    {
        const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
        return (entries_ - entries_.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
    }

    bool ImpedanceMatrix::is_lossless(double tol) const
    {
        if (entries_.size() == 0)
            return true;
        const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
        return entries_.real().cwiseAbs().maxCoeff() <= tol * scale;
    }

    ImpedanceMatrix ImpedanceMatrix::uncoupled(Eigen::Index n, double ref_resistance)
    {
        return ImpedanceMatrix(ComplexMatrix::Identity(n, n) * ref_resistance, ref_resistance);
    }

    CouplingMatrix::CouplingMatrix(RealMatrix entries, double loss_ratio)
        : entries_(std::move(entries)), loss_ratio_(loss_ratio)
    {
        if (entries_.rows() != entries_.cols())
            throw DomainError("CouplingMatrix: matrix must be square");
    }

    ImpedanceMatrix build_coupling_matrix(std::size_t n, double spacing, double ref_resistance)
    {
        if (n == 0)
            throw DomainError("build_coupling_matrix: N must be at least 1");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw DomainError("build_coupling_matrix: spacing d must be positive");
        if (!(ref_resistance > 0.0))
            throw DomainError("build_coupling_matrix: R must be positive");

        const auto N = static_cast<Eigen::Index>(n);
        ComplexMatrix z(N, N);

        // Toeplitz: fill one value per lag and mirror it, so symmetry is exact.
        for (Eigen::Index lag = 0; lag < N; ++lag)
        {
            cplx value = ref_resistance;
            if (lag > 0)
            {
                const double half_turns = 2.0 * spacing * static_cast<double>(lag); // arg / pi
                const double arg = std::numbers::pi * half_turns;
                // -R e^{-j arg} / (j arg) = R (sin(arg) + j cos(arg)) / arg
                value = cplx(ref_resistance * sin_pi(half_turns) / arg, ref_resistance * cos_pi(half_turns) / arg);
            }
            for (Eigen::Index i = 0; i + lag < N; ++i)
            {
                z(i, i + lag) = value;
                z(i + lag, i) = value;
            }
        }
        return ImpedanceMatrix(std::move(z), ref_resistance);
    }

    ImpedanceMatrix add_ohmic_loss(const ImpedanceMatrix &z_r, double loss_ratio)
    {
        if (!(loss_ratio >= 0.0))
            throw DomainError("add_ohmic_loss: loss ratio must be nonnegative");
        ComplexMatrix z = z_r.entries();
        z.diagonal().array() += loss_ratio * z_r.ref_resistance();
        return ImpedanceMatrix(std::move(z), z_r.ref_resistance());
    }

    CouplingMatrix coupling_real_part(const ImpedanceMatrix &z_r, double loss_ratio)
    {
        if (!(loss_ratio >= 0.0))
            throw DomainError("coupling_real_part: loss ratio must be nonnegative");
        RealMatrix c = z_r.real() / z_r.ref_resistance();
        c.diagonal().array() += loss_ratio;
        return CouplingMatrix(std::move(c), loss_ratio);
    }

    SteeringVector steering_vector(std::size_t n, double spacing, double angle)
    {
        if (n == 0)
            throw DomainError("steering_vector: N must be at least 1");
        const auto N = static_cast<Eigen::Index>(n);
        const double phase_step = 2.0 * std::numbers::pi * spacing * std::cos(angle);
        ComplexVector a(N);
        a(0) = 1.0;
        for (Eigen::Index k = 1; k < N; ++k)
            a(k) = std::polar(1.0, -static_cast<double>(k) * phase_step);
        return SteeringVector(std::move(a), angle, spacing);
    }

    double SymmetricEigen::condition_number() const
    {
        const double lo = values.minCoeff();
        if (lo <= 0.0)
            return std::numeric_limits<double>::infinity();
        return values.maxCoeff() / lo;
    }

    RealMatrix SymmetricEigen::power(double exponent) const
    {
        RealVector p = values.array().pow(exponent);
        RealMatrix out = vectors * p.asDiagonal() * vectors.transpose();
        // symmetrize away rounding in the triple product
        return 0.5 * (out + out.transpose());
    }

    SymmetricEigen checked_eigen(const RealMatrix &c, double eig_floor)
    {
        if (c.rows() != c.cols() || c.rows() == 0)
            throw DomainError("checked_eigen: matrix must be square and non-empty");
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(c);
        if (es.info() != Eigen::Success)
            throw IllConditioned("eigendecomposition failed", 0.0, 0.0);

        const double lo = es.eigenvalues().minCoeff();
        const double hi = es.eigenvalues().maxCoeff();
        if (!(hi > 0.0) || lo < eig_floor * hi)
        {
            std::ostringstream msg;
            msg << "coupling matrix is ill-conditioned (min eigenvalue " << lo << ", max " << hi
                << ", floor " << eig_floor << " relative)";
            throw IllConditioned(msg.str(), lo, hi);
        }
        return SymmetricEigen{es.eigenvalues(), es.eigenvectors()};
    }

    RealMatrix sqrt_spd(const RealMatrix &c, double eig_floor)
    {
        return checked_eigen(c, eig_floor).power(0.5);
    }

    RealMatrix sqrt_spd(const CouplingMatrix &c, double eig_floor)
    {
        return sqrt_spd(c.entries(), eig_floor);
    }

    double condition_number(const RealMatrix &c)
    {
        if (c.rows() == 0)
            return 1.0;
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(c, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        if (lo <= 0.0)
            return std::numeric_limits<double>::infinity();
        return es.eigenvalues().maxCoeff() / lo;
    }

    double condition_number(const CouplingMatrix &c)
    {
        return condition_number(c.entries());
    }
}
