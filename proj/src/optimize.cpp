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

#include "ris/optimize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ris
{
    namespace
    {
        double safe_arg(cplx z)
        {
            return std::abs(z) == 0.0 ? 0.0 : std::arg(z);
        }

        void require_siso(const ChannelTriple &t, const char *what)
        {
            t.validate();
            if (!t.is_siso())
                throw DomainError(std::string(what) + ": only SISO channels are supported");
        }

        // z_DS - (1/2R) zbar_DR^T zbar_RS, the part of the channel the phases cannot steer
        cplx static_term(const ChannelTriple &t)
        {
            return t.direct() - t.dr().cwiseProduct(t.rs()).sum() / (2.0 * t.ref_resistance);
        }

        void normalize(GainResult &res, const ChannelTriple &t)
        {
            const double unit = single_element_gain(t);
            res.array_gain = unit > 0.0 ? res.channel_gain / unit : std::numeric_limits<double>::quiet_NaN();
        }

        double coupling_condition(const ImpedanceMatrix &z_r)
        {
            return condition_number(coupling_real_part(z_r));
        }
    }

    std::string_view method_name(Method m)
    {
        switch (m)
        {
        case Method::DecoupledDiagonal:
            return "decoupled_diag";
        case Method::BD:
            return "bd";
        case Method::Uncoupled:
            return "uncoupled";
        case Method::IgnoreMC:
            return "ignore_mc";
        case Method::GradientCoupled:
            return "gradient";
        }
        return "unknown";
    }

    double single_element_gain(const ChannelTriple &t)
    {
        return t.pathloss_dr * t.pathloss_rs * t.ref_resistance * t.ref_resistance;
    }

    DiagonalPhases optimal_diagonal_phases(const ChannelTriple &decoupled)
    {
        require_siso(decoupled, "optimal_diagonal_phases");
        const double target = safe_arg(static_term(decoupled));
        const ComplexVector products = decoupled.dr().cwiseProduct(decoupled.rs());

        DiagonalPhases out{ComplexVector(products.size())};
        for (Eigen::Index n = 0; n < products.size(); ++n)
            out.theta(n) = std::polar(1.0, target - safe_arg(products(n)));
        return out;
    }

    GainResult closed_form_diagonal_gain(const ChannelTriple &decoupled)
    {
        require_siso(decoupled, "closed_form_diagonal_gain");
        const double coherent = decoupled.dr().cwiseAbs().cwiseProduct(decoupled.rs().cwiseAbs()).sum();
        const double amplitude = std::abs(static_term(decoupled)) + coherent / (2.0 * decoupled.ref_resistance);

        GainResult res;
        res.method = Method::DecoupledDiagonal;
        res.channel_gain = amplitude * amplitude;
        res.config = optimal_diagonal_phases(decoupled);
        normalize(res, decoupled);
        return res;
    }

    GainResult bd_gain(const ChannelTriple &decoupled)
    {
        require_siso(decoupled, "bd_gain");
        const double norms = decoupled.dr().norm() * decoupled.rs().norm();
        const double amplitude = std::abs(static_term(decoupled)) + norms / (2.0 * decoupled.ref_resistance);

        GainResult res;
        res.method = Method::BD;
        res.channel_gain = amplitude * amplitude;
        res.config = BDValue{};
        normalize(res, decoupled);
        return res;
    }

    GainResult ignore_mc_baseline(const ChannelTriple &raw, const ImpedanceMatrix &z_r)
    {
        require_siso(raw, "ignore_mc_baseline");
        DiagonalPhases phases = optimal_diagonal_phases(raw);
        const cplx z = assemble_channel_siso(raw, z_r, phases, ChannelMode::Conventional);

        GainResult res;
        res.method = Method::IgnoreMC;
        res.channel_gain = std::norm(z);
        res.config = std::move(phases);
        res.diagnostics.condition_number = coupling_condition(z_r);
        normalize(res, raw);
        return res;
    }

    // ---- coupled conventional model ----
    //
    // With Theta = diag(e^{j phi}) and M = (Z_R + R I) - (Z_R - R I) Theta,
    //   z = z_DS - u^T (I - Theta) M^{-1} z_RS,   u = z_DR.
    // A perturbation dTheta gives dz = p^T dTheta w with w = M^{-1} z_RS and
    //   p^T = u^T - u^T (I - Theta) M^{-1} (Z_R - R I).

    namespace
    {
        struct CoupledState
        {
            cplx z;
            ComplexVector theta;
            Eigen::PartialPivLU<ComplexMatrix> lu;
            ComplexMatrix m;
        };

        CoupledState coupled_state(const ChannelTriple &raw, const ImpedanceMatrix &z_r, const RealVector &phi)
        {
            const Eigen::Index n = z_r.size();
            if (phi.size() != n || raw.elements() != n)
                throw DomainError("coupled model: dimension mismatch");
            const double r = z_r.ref_resistance();
            const ComplexMatrix eye = ComplexMatrix::Identity(n, n);

            CoupledState st;
            st.theta = ComplexVector(n);
            for (Eigen::Index k = 0; k < n; ++k)
                st.theta(k) = std::polar(1.0, phi(k));
            st.m = (z_r.entries() + r * eye) - (z_r.entries() - r * eye) * st.theta.asDiagonal();
            st.lu.compute(st.m);
            const double rcond = st.lu.rcond();
            if (!(rcond >= singular_rcond))
                throw SingularNetwork("coupled model: numerically singular system matrix", rcond);
            const ComplexVector w = st.lu.solve(raw.rs());
            const ComplexVector one_minus = ComplexVector::Ones(n) - st.theta;
            st.z = raw.direct() - raw.dr().cwiseProduct(one_minus).cwiseProduct(w).sum();
            return st;
        }
    }

    double coupled_objective(const ChannelTriple &raw, const ImpedanceMatrix &z_r, const RealVector &phi)
    {
        require_siso(raw, "coupled_objective");
        return std::norm(coupled_state(raw, z_r, phi).z);
    }

    RealVector coupled_gradient(const ChannelTriple &raw, const ImpedanceMatrix &z_r, const RealVector &phi)
    {
        require_siso(raw, "coupled_gradient");
        const CoupledState st = coupled_state(raw, z_r, phi);
        const Eigen::Index n = z_r.size();
        const double r = z_r.ref_resistance();
        const ComplexMatrix eye = ComplexMatrix::Identity(n, n);

        const ComplexVector u = raw.dr();
        const ComplexVector w = st.lu.solve(raw.rs());
        const ComplexVector one_minus = ComplexVector::Ones(n) - st.theta;

        // q^T = u^T (I - Theta) M^{-1}  <=>  M^T q = (I - Theta) u
        Eigen::PartialPivLU<ComplexMatrix> lu_t(st.m.transpose());
        const ComplexVector q = lu_t.solve(one_minus.cwiseProduct(u));
        const ComplexVector p = u - (z_r.entries() - r * eye).transpose() * q;

        RealVector grad(n);
        for (Eigen::Index k = 0; k < n; ++k)
        {
            const cplx dz = p(k) * j_unit * st.theta(k) * w(k);
            grad(k) = 2.0 * (std::conj(st.z) * dz).real();
        }
        return grad;
    }

    GainResult gradient_coupled_baseline(const ChannelTriple &raw, const ImpedanceMatrix &z_r,
                                         const GradientOptions &opts)
    {
        require_siso(raw, "gradient_coupled_baseline");
        const Eigen::Index n = z_r.size();

        const ComplexVector start = opts.initial_phases ? *opts.initial_phases
                                                        : std::get<DiagonalPhases>(ignore_mc_baseline(raw, z_r).config).theta;
        if (start.size() != n)
            throw DomainError("gradient_coupled_baseline: initial phase vector has wrong length");
        RealVector phi(n);
        for (Eigen::Index k = 0; k < n; ++k)
            phi(k) = safe_arg(start(k));

        GainResult res;
        res.method = Method::GradientCoupled;
        res.diagnostics.condition_number = coupling_condition(z_r);
        res.diagnostics.converged = false;

        int iter = 0;
        auto abort_with = [&](const SingularNetwork &e) {
            std::ostringstream msg;
            msg << "gradient_coupled_baseline aborted at iteration " << iter << ": " << e.what();
            throw SingularNetwork(msg.str(), e.reciprocal_condition);
        };

        double f = 0.0;
        try
        {
            f = coupled_objective(raw, z_r, phi);
        }
        catch (const SingularNetwork &e)
        {
            abort_with(e);
        }
        // Line search runs on f / f0 so that the unit initial step does not depend on R or pathlosses.
        const double scale = f > 0.0 ? f : 1.0;
        res.diagnostics.objective_trace.push_back(f);

        for (iter = 0; iter < opts.max_iters;)
        {
            RealVector g;
            try
            {
                g = coupled_gradient(raw, z_r, phi) / scale;
            }
            catch (const SingularNetwork &e)
            {
                abort_with(e);
            }
            const double g2 = g.squaredNorm();
            if (g2 == 0.0)
            {
                res.diagnostics.converged = true;
                break;
            }

            double step = opts.initial_step;
            bool accepted = false;
            RealVector trial;
            double f_trial = f;
            for (int b = 0; b < opts.max_backtracks; ++b, step *= opts.shrink)
            {
                trial = phi + step * g;
                try
                {
                    f_trial = coupled_objective(raw, z_r, trial);
                }
                catch (const SingularNetwork &e)
                {
                    abort_with(e);
                }
                if (f_trial / scale >= f / scale + opts.armijo_slope * step * g2)
                {
                    accepted = true;
                    break;
                }
            }
            if (!accepted)
            {
                // no ascent step left at working precision
                res.diagnostics.converged = true;
                break;
            }

            ++iter;
            const double improvement = (f_trial - f) / std::max(f, std::numeric_limits<double>::min());
            phi = trial;
            f = f_trial;
            res.diagnostics.objective_trace.push_back(f);
            if (improvement < opts.tol)
            {
                res.diagnostics.converged = true;
                break;
            }
        }

        res.diagnostics.iterations = iter;
        res.channel_gain = f;
        DiagonalPhases cfg{ComplexVector(n)};
        for (Eigen::Index k = 0; k < n; ++k)
            cfg.theta(k) = std::polar(1.0, phi(k));
        res.config = std::move(cfg);
        normalize(res, raw);
        return res;
    }

    GainResult evaluate_method(Method method, const ChannelTriple &raw, const ImpedanceMatrix &z_r,
                               const GradientOptions &opts)
    {
        switch (method)
        {
        case Method::DecoupledDiagonal:
        case Method::BD:
        {
            const ChannelTriple eff = effective_channels(raw, z_r);
            GainResult res = method == Method::BD ? bd_gain(eff) : closed_form_diagonal_gain(eff);
            res.diagnostics.condition_number = coupling_condition(z_r);
            return res;
        }
        case Method::Uncoupled:
        {
            const ComplexMatrix diag = z_r.entries().diagonal().real().cast<cplx>().asDiagonal();
            const ImpedanceMatrix z_u(diag, z_r.ref_resistance());
            GainResult res = closed_form_diagonal_gain(effective_channels(raw, z_u));
            res.method = Method::Uncoupled;
            res.diagnostics.condition_number = coupling_condition(z_u);
            return res;
        }
        case Method::IgnoreMC:
            return ignore_mc_baseline(raw, z_r);
        case Method::GradientCoupled:
            return gradient_coupled_baseline(raw, z_r, opts);
        }
        throw DomainError("evaluate_method: unknown method");
    }
}
