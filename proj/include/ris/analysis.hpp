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

#ifndef RIS_ANALYSIS_HPP
#define RIS_ANALYSIS_HPP

#include "ris/types.hpp"

#include <cstddef>
#include <vector>

namespace ris
{
    struct LegendreEval
    {
        int degree = 0;
        double x = 0.0;
        double value = 0.0;             // P_n(x)
        double derivative = 0.0;        // P'_n(x)
        double second_derivative = 0.0; // P''_n(x)
        double previous = 0.0;          // P_{n-1}(x), 0 for n = 0
        double previous_derivative = 0.0;
    };

    // Forward three-term recurrence for P_n and the exact derivative recurrences
    //   P'_{k+1} = (k+1) P_k + x P'_k,   P''_{k+1} = (k+2) P'_k + x P''_k.
    // Requires n >= 0 and x in [-1, 1].
    LegendreEval legendre(int n, double x);

    // Three closed forms of the reciprocal Christoffel function
    //   f_N(x) = sum_{n<N} (2n+1) P_n(x)^2.
    struct ChristoffelForms
    {
        double sum = 0.0;        // defining sum
        double darboux = 0.0;    // N (P'_N P_{N-1} - P'_{N-1} P_N)
        double derivative = 0.0; // (1 - x^2) P'_N^2 + N^2 P_N^2
    };

    ChristoffelForms christoffel_forms(int n, double x);

    double f_N(int n, double x);

    // d f_N / dx = 2 P'_N(x) ((1 - x^2) P''_N - x P'_N + N^2 P_N)
    double f_N_derivative(int n, double x);

    // Lower envelope (N/(N+1)) (1 - x^2) P'_N^2 + N^2 P_N^2 and its derivative
    double g_N(int n, double x);
    double g_N_derivative(int n, double x);

    enum class Parity
    {
        Even,
        Odd
    };

    struct MinimumReport
    {
        int n = 0;
        double x_min = 0.0; // nonnegative representative; odd N also attains the minimum at -x_min
        double f_min = 0.0;
        Parity parity = Parity::Even;
        double x0 = 0.0;            // odd N: positive zero of P'_N closest to 0 (NaN for N = 1)
        double certificate = 0.0;   // min over grid of f_N minus f_min
        std::size_t grid_points = 0;
    };

    // Global minimum of f_N on [-1, 1]. Even N: x = 0, N^2 P_N(0)^2. Odd N: +-x0 with
    // P'_N(x0) = 0, value N^2 P_N(x0)^2. N = 1 is the constant f_1 = 1.
    MinimumReport min_f_N(int n, std::size_t certificate_grid = 20001, std::size_t bracket_grid = 2001);

    // Stationary points of f_N on (-1, 1), split into
    //   x_plus:  b(x) = 0 with P'_N(x) != 0, b(x) = N (x P_{N-1} - P_N) / (1 - x^2)
    //   x_minus: P'_N(x) = 0
    struct StationaryPoint
    {
        double x = 0.0;
        double value = 0.0;
        double curvature = 0.0; // closed-form f'' at x_plus: -2 (N-1) P'_N^2 / (1 - x^2); 0 for x_minus
    };
    struct StationaryPoints
    {
        std::vector<StationaryPoint> x_plus;
        std::vector<StationaryPoint> x_minus;
    };

    StationaryPoints stationary_points(int n, std::size_t bracket_grid = 2001);

    // d -> 0 limit of the coupled transmit array gain a^H C_R^{-1} a, i.e. f_N(cos alpha)
    double coupled_gain_limit(int n, double alpha);

    // a(alpha)^H (C_R + gamma I)^{-1} a(alpha) at spacing d. Conditioning gate applies.
    double transmit_array_gain(std::size_t n, double spacing, double alpha, double loss_ratio = 0.0,
                               double eig_floor = default_eig_floor);

    // Decoupled diagonal RIS array gain
    //   1/4 (|a_DR^T C^{-1} a_RS| + sum_n |a_DR^T C^{-1/2} e_n| |e_n^T C^{-1/2} a_RS|)^2,
    // C = C_R + gamma I, a_DR = a(alpha_rx), a_RS = a(alpha_tx).
    double array_gain_diagonal(std::size_t n, double spacing, double alpha_tx, double alpha_rx,
                               double loss_ratio = 0.0, double eig_floor = default_eig_floor);

    // Fully-connected BD-RIS array gain
    //   1/4 (|a_DR^T C^{-1} a_RS| + sqrt(a_DR^H C^{-1} a_DR a_RS^H C^{-1} a_RS))^2
    double array_gain_bd(std::size_t n, double spacing, double alpha_tx, double alpha_rx,
                         double loss_ratio = 0.0, double eig_floor = default_eig_floor);

    // Limit (d -> 0) gain bounds with the BS and RIS placed end-fire.
    struct TheoremReport
    {
        int n = 0;
        double alpha_rx = 0.0;
        double endfire_limit_gain = 0.0; // f_N(1)^2, equals N^4
        double quartic_ceiling = 0.0;    // N^4
        double bd_lower_bound = 0.0;     // (N^2/4) f_N(cos alpha_rx)
        double cubic_floor = 0.0;        // N^3/8
        double max_limit_gain = 0.0;     // max over the angle grid of N^2 f_N(cos alpha)
        bool cubic_bound_holds = false;
        bool quartic_bound_holds = false;
    };

    TheoremReport theorem_bounds(int n, double alpha_rx, std::size_t angle_grid = 181);
}

#endif
