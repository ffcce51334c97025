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

#ifndef RIS_OPTIMIZE_HPP
#define RIS_OPTIMIZE_HPP

#include "ris/network.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace ris
{
    enum class Method
    {
        DecoupledDiagonal,
        BD,
        Uncoupled,
        IgnoreMC,
        GradientCoupled,
    };

    std::string_view method_name(Method m);

    struct Diagnostics
    {
        int iterations = 0;
        bool converged = true;
        double condition_number = 1.0;
        std::vector<double> objective_trace; // accepted objective values, iterative methods only
    };

    struct GainResult
    {
        Method method = Method::DecoupledDiagonal;
        double channel_gain = 0.0; // |z|^2 in Ohm^2
        double array_gain = 0.0;   // channel_gain / (gamma_DR gamma_RS R^2)
        RISConfig config = BDValue{};
        Diagnostics diagnostics;
    };

    // gamma_DR * gamma_RS * R^2, the single-element gain without direct path
    double single_element_gain(const ChannelTriple &triple);

    // Optimal unit-modulus phases of  z = z_DS + (1/2R) zbar_DR^T (diag(theta) - I) zbar_RS.
    // The triple is expected to be already decoupled (or uncoupled). arg(0) is taken as 0.
    DiagonalPhases optimal_diagonal_phases(const ChannelTriple &decoupled);

    GainResult closed_form_diagonal_gain(const ChannelTriple &decoupled);

    // Fully-connected BD value; the achieving scattering matrix is not constructed.
    GainResult bd_gain(const ChannelTriple &decoupled);

    // Phases optimized as if Z_R = R I, evaluated on the conventional coupled model.
    GainResult ignore_mc_baseline(const ChannelTriple &raw, const ImpedanceMatrix &z_r);

    struct GradientOptions
    {
        int max_iters = 10000;
        double tol = 1e-9;           // relative improvement threshold
        double initial_step = 1.0;
        double shrink = 0.5;
        double armijo_slope = 1e-4;
        int max_backtracks = 60;
        std::optional<ComplexVector> initial_phases; // default: ignore_mc_baseline phases
    };

    // Objective |z(phi)|^2 of the conventional model with Theta = diag(e^{j phi})
    double coupled_objective(const ChannelTriple &raw, const ImpedanceMatrix &z_r, const RealVector &phi);

    // d|z|^2 / d phi, analytic
    RealVector coupled_gradient(const ChannelTriple &raw, const ImpedanceMatrix &z_r, const RealVector &phi);

    // Gradient ascent with Armijo backtracking in the phase angles.
    GainResult gradient_coupled_baseline(const ChannelTriple &raw, const ImpedanceMatrix &z_r,
                                         const GradientOptions &opts = {});

    // Evaluate one method on a raw (coupled) SISO scenario.
    //   DecoupledDiagonal / BD: effective channels through Z_R, closed form
    //   Uncoupled: array replaced by (R + R_d) I, i.e. Z_R's diagonal without coupling
    GainResult evaluate_method(Method method, const ChannelTriple &raw, const ImpedanceMatrix &z_r,
                               const GradientOptions &opts = {});
}

#endif
