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

#include "ris/analysis.hpp"
#include "ris/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace ris
{
    LegendreEval legendre(int n, double x)
    {
        if (n < 0)
            throw DomainError("legendre: degree must be nonnegative");
        if (!(x >= -1.0 && x <= 1.0))
            throw DomainError("legendre: x must lie in [-1, 1]");

        double p_prev = 0.0, dp_prev = 0.0;
        double p = 1.0, dp = 0.0, ddp = 0.0;
        for (int k = 0; k < n; ++k)
        {
            const double kk = static_cast<double>(k);
            const double p_next = ((2.0 * kk + 1.0) * x * p - kk * p_prev) / (kk + 1.0);
            const double dp_next = (kk + 1.0) * p + x * dp;
            const double ddp_next = (kk + 2.0) * dp + x * ddp;
            p_prev = p;
            dp_prev = dp;
            p = p_next;
            dp = dp_next;
            ddp = ddp_next;
        }
        return LegendreEval{n, x, p, dp, ddp, p_prev, dp_prev};
    }

    namespace
    {
        void require_order(int n, const char *what)
        {
            if (n < 1)
                throw DomainError(std::string(what) + ": N must be at least 1");
        }

        using Fn = std::function<double(double)>;

        // Roots of f inside the open interval (a, b), bracketed on a uniform grid,
        // bisected and polished with Newton when a derivative is supplied.
        std::vector<double> bracketed_roots(const Fn &f, const Fn &df, double a, double b, std::size_t grid)
        {
            std::vector<double> roots;
            const std::size_t pts = std::max<std::size_t>(grid, 3);
            const double h = (b - a) / static_cast<double>(pts - 1);

            double x_prev = a + h;
            double f_prev = f(x_prev);
            if (f_prev == 0.0)
                roots.push_back(x_prev);
            for (std::size_t i = 2; i + 1 < pts; ++i)
            {
                const double x = a + h * static_cast<double>(i);
                const double fx = f(x);
                if (fx == 0.0)
                {
                    roots.push_back(x);
                }
                else if (f_prev != 0.0 && std::signbit(fx) != std::signbit(f_prev))
                {
                    double lo = x_prev, hi = x, f_lo = f_prev;
                    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it)
                    {
                        const double mid = 0.5 * (lo + hi);
                        const double fm = f(mid);
                        if (fm == 0.0)
                        {
                            lo = hi = mid;
                            break;
                        }
                        if (std::signbit(fm) == std::signbit(f_lo))
                        {
                            lo = mid;
                            f_lo = fm;
                        }
                        else
                        {
                            hi = mid;
                        }
                    }
                    double root = 0.5 * (lo + hi);
                    if (df)
                    {
                        for (int it = 0; it < 3; ++it)
                        {
                            const double d = df(root);
                            if (d == 0.0)
                                break;
                            const double next = root - f(root) / d;
                            if (!(next >= x_prev && next <= x))
                                break;
                            root = next;
                        }
                    }
                    roots.push_back(root);
                }
                x_prev = x;
                f_prev = fx;
            }
            return roots;
        }
    }

    ChristoffelForms christoffel_forms(int n, double x)
    {
        require_order(n, "christoffel_forms");
        ChristoffelForms out;
        // sum form, accumulated alongside the recurrence
        double p_prev = 0.0, p = 1.0;
        for (int k = 0; k < n; ++k)
        {
            out.sum += (2.0 * k + 1.0) * p * p;
            const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
            p_prev = p;
            p = p_next;
        }
        const LegendreEval le = legendre(n, x);
        const double nn = static_cast<double>(n);
        out.darboux = nn * (le.derivative * le.previous - le.previous_derivative * le.value);
        out.derivative = (1.0 - x * x) * le.derivative * le.derivative + nn * nn * le.value * le.value;
        return out;
    }

    double f_N(int n, double x)
    {
        require_order(n, "f_N");
        if (!(x >= -1.0 && x <= 1.0))
            throw DomainError("f_N: x must lie in [-1, 1]");
        double sum = 0.0, p_prev = 0.0, p = 1.0;
        for (int k = 0; k < n; ++k)
        {
            sum += (2.0 * k + 1.0) * p * p;
            const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
            p_prev = p;
            p = p_next;
        }
        return sum;
    }

    double f_N_derivative(int n, double x)
    {
        require_order(n, "f_N_derivative");
        const LegendreEval le = legendre(n, x);
        const double nn = static_cast<double>(n);
        const double b = (1.0 - x * x) * le.second_derivative - x * le.derivative + nn * nn * le.value;
        return 2.0 * le.derivative * b;
    }

    double g_N(int n, double x)
    {
        require_order(n, "g_N");
        const LegendreEval le = legendre(n, x);
        const double nn = static_cast<double>(n);
        return nn / (nn + 1.0) * (1.0 - x * x) * le.derivative * le.derivative + nn * nn * le.value * le.value;
    }

    double g_N_derivative(int n, double x)
    {
        require_order(n, "g_N_derivative");
        const LegendreEval le = legendre(n, x);
        const double nn = static_cast<double>(n);
        return 2.0 * nn / (nn + 1.0) * x * le.derivative * le.derivative;
    }

    MinimumReport min_f_N(int n, std::size_t certificate_grid, std::size_t bracket_grid)
    {
        require_order(n, "min_f_N");
        MinimumReport rep;
        rep.n = n;
        rep.parity = (n % 2 == 0) ? Parity::Even : Parity::Odd;
        const double nn = static_cast<double>(n);

        if (n == 1)
        {
            rep.x_min = 0.0;
            rep.f_min = 1.0;
            rep.x0 = std::numeric_limits<double>::quiet_NaN();
        }
        else if (rep.parity == Parity::Even)
        {
            const double p0 = legendre(n, 0.0).value;
            rep.x_min = 0.0;
            rep.x0 = 0.0;
            rep.f_min = nn * nn * p0 * p0;
        }
        else
        {
            const auto roots = bracketed_roots([n](double x) { return legendre(n, x).derivative; },
                                               [n](double x) { return legendre(n, x).second_derivative; },
                                               0.0, 1.0, bracket_grid);
            if (roots.empty())
                throw DomainError("min_f_N: no zero of P'_N bracketed in (0, 1)");
            rep.x0 = roots.front();
            rep.x_min = rep.x0;
            const double p = legendre(n, rep.x0).value;
            rep.f_min = nn * nn * p * p;
        }

        const std::size_t pts = std::max<std::size_t>(certificate_grid, 2);
        double lowest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts; ++i)
        {
            const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(pts - 1);
            lowest = std::min(lowest, f_N(n, x));
        }
        rep.certificate = lowest - rep.f_min;
        rep.grid_points = pts;
        return rep;
    }

    StationaryPoints stationary_points(int n, std::size_t bracket_grid)
    {
        require_order(n, "stationary_points");
        StationaryPoints out;
        if (n == 1)
            return out; // f_1 is constant

        const double nn = static_cast<double>(n);
        auto dp = [n](double x) { return legendre(n, x).derivative; };
        auto ddp = [n](double x) { return legendre(n, x).second_derivative; };
        for (double x : bracketed_roots(dp, ddp, -1.0, 1.0, bracket_grid))
            out.x_minus.push_back({x, f_N(n, x), 0.0});

        // zeros of b(x) <=> x P_{N-1}(x) - P_N(x) = 0
        auto h = [n](double x) {
            const LegendreEval le = legendre(n, x);
            return x * le.previous - le.value;
        };
        auto dh = [n](double x) {
            const LegendreEval le = legendre(n, x);
            return le.previous + x * le.previous_derivative - le.derivative;
        };
        for (double x : bracketed_roots(h, dh, -1.0, 1.0, bracket_grid))
        {
            const double d = legendre(n, x).derivative;
            if (std::abs(d) < 1e-12)
                continue;
            out.x_plus.push_back({x, f_N(n, x), -2.0 * (nn - 1.0) * d * d / (1.0 - x * x)});
        }
        return out;
    }

    double coupled_gain_limit(int n, double alpha)
    {
        return f_N(n, std::clamp(std::cos(alpha), -1.0, 1.0));
    }

    namespace
    {
        struct WhitenedSteering
        {
            ComplexVector dr; // C^{-1/2} a_DR
            ComplexVector rs; // C^{-1/2} a_RS
        };

        using ExtReal = long double;
        using ExtMatrix = Eigen::Matrix<ExtReal, Eigen::Dynamic, Eigen::Dynamic>;
        using ExtVector = Eigen::Matrix<ExtReal, Eigen::Dynamic, 1>;
        constexpr ExtReal ext_pi = 3.141592653589793238462643383279502884L;

        // sin(pi t), cos(pi t) after reducing t to [-1, 1]
        ExtReal ext_sin_pi(ExtReal t) { return std::sin(ext_pi * (t - 2 * std::round(t / 2))); }
        ExtReal ext_cos_pi(ExtReal t) { return std::cos(ext_pi * (t - 2 * std::round(t / 2))); }

        // Superdirective geometries push cond(C) toward the gate, where double whitening
        // loses about cond * 1e-17 relative accuracy. Carrying the entries, eigenvectors and
        // steering phases in extended precision recovers two to three digits.
        ComplexVector whiten_one(const ExtMatrix &c_inv_half, std::size_t n, double spacing, double alpha)
        {
            const auto N = static_cast<Eigen::Index>(n);
            const ExtReal step = 2 * static_cast<ExtReal>(spacing) * std::cos(static_cast<ExtReal>(alpha));
            ExtVector re(N), im(N);
            for (Eigen::Index k = 0; k < N; ++k)
            {
                re(k) = ext_cos_pi(step * static_cast<ExtReal>(k));
                im(k) = -ext_sin_pi(step * static_cast<ExtReal>(k));
            }
            const ExtVector wr = c_inv_half * re, wi = c_inv_half * im;
            ComplexVector out(N);
            for (Eigen::Index k = 0; k < N; ++k)
                out(k) = cplx(static_cast<double>(wr(k)), static_cast<double>(wi(k)));
            return out;
        }

        WhitenedSteering whiten(std::size_t n, double spacing, double alpha_tx, double alpha_rx,
                                double loss_ratio, double eig_floor)
        {
            // gate decision identical to the rest of the library
            checked_eigen(coupling_real_part(build_coupling_matrix(n, spacing, 1.0), loss_ratio).entries(), eig_floor);

            const auto N = static_cast<Eigen::Index>(n);
            ExtMatrix c(N, N);
            for (Eigen::Index lag = 0; lag < N; ++lag)
            {
                const ExtReal t = 2 * static_cast<ExtReal>(spacing) * static_cast<ExtReal>(lag);
                const ExtReal value = lag == 0 ? 1 + static_cast<ExtReal>(loss_ratio) : ext_sin_pi(t) / (ext_pi * t);
                for (Eigen::Index i = 0; i + lag < N; ++i)
                    c(i, i + lag) = c(i + lag, i) = value;
            }
            Eigen::SelfAdjointEigenSolver<ExtMatrix> es(c);
            const ExtMatrix c_inv_half = es.operatorInverseSqrt();
            return {whiten_one(c_inv_half, n, spacing, alpha_rx), whiten_one(c_inv_half, n, spacing, alpha_tx)};
        }
    }

    double transmit_array_gain(std::size_t n, double spacing, double alpha, double loss_ratio, double eig_floor)
    {
        return whiten(n, spacing, alpha, alpha, loss_ratio, eig_floor).rs.squaredNorm();
    }

    double array_gain_diagonal(std::size_t n, double spacing, double alpha_tx, double alpha_rx,
                               double loss_ratio, double eig_floor)
    {
        const WhitenedSteering w = whiten(n, spacing, alpha_tx, alpha_rx, loss_ratio, eig_floor);
        // a_DR^T C^{-1} a_RS = (C^{-1/2} a_DR)^T (C^{-1/2} a_RS) since C is real symmetric
        const double direct = std::abs((w.dr.transpose() * w.rs)(0));
        const double per_element = w.dr.cwiseAbs().cwiseProduct(w.rs.cwiseAbs()).sum();
        const double amp = direct + per_element;
        return 0.25 * amp * amp;
    }

    double array_gain_bd(std::size_t n, double spacing, double alpha_tx, double alpha_rx,
                         double loss_ratio, double eig_floor)
    {
        const WhitenedSteering w = whiten(n, spacing, alpha_tx, alpha_rx, loss_ratio, eig_floor);
        const double direct = std::abs((w.dr.transpose() * w.rs)(0));
        const double amp = direct + w.dr.norm() * w.rs.norm();
        return 0.25 * amp * amp;
    }

    TheoremReport theorem_bounds(int n, double alpha_rx, std::size_t angle_grid)
    {
        require_order(n, "theorem_bounds");
        const double nn = static_cast<double>(n);
        TheoremReport rep;
        rep.n = n;
        rep.alpha_rx = alpha_rx;

        const double endfire = coupled_gain_limit(n, 0.0);
        rep.endfire_limit_gain = endfire * endfire;
        rep.quartic_ceiling = nn * nn * nn * nn;
        rep.bd_lower_bound = nn * nn / 4.0 * coupled_gain_limit(n, alpha_rx);
        rep.cubic_floor = nn * nn * nn / 8.0;

        const std::size_t pts = std::max<std::size_t>(angle_grid, 2);
        for (std::size_t i = 0; i < pts; ++i)
        {
            const double alpha = std::numbers::pi * static_cast<double>(i) / static_cast<double>(pts - 1);
            rep.max_limit_gain = std::max(rep.max_limit_gain, nn * nn * coupled_gain_limit(n, alpha));
        }
        rep.cubic_bound_holds = rep.bd_lower_bound >= rep.cubic_floor - 1e-9 * rep.cubic_floor;
        rep.quartic_bound_holds = rep.max_limit_gain <= rep.quartic_ceiling * (1.0 + 1e-12);
        return rep;
    }
}
