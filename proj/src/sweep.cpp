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

#include "ris/sweep.hpp"

#include <atomic>
#include <charconv>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

namespace ris
{
    std::string_view axis_name(Axis a)
    {
        switch (a)
        {
        case Axis::SpacingD:
            return "spacing_d";
        case Axis::AngleRx:
            return "angle_rx";
        case Axis::LossGamma:
            return "loss_gamma";
        case Axis::ElementsN:
            return "elements_N";
        }
        return "unknown";
    }

    namespace
    {
        Scenario point_scenario(const SweepSpec &spec, double v)
        {
            Scenario sc = spec.fixed;
            switch (spec.axis)
            {
            case Axis::SpacingD:
                sc.spacing = v;
                break;
            case Axis::AngleRx:
                sc.alpha_rx = v;
                break;
            case Axis::LossGamma:
                sc.loss_ratio = v;
                break;
            case Axis::ElementsN:
                sc.elements = static_cast<std::size_t>(std::llround(v));
                break;
            }
            return sc;
        }

        SweepRow failed_row(double v, Method m, const char *status, double cond)
        {
            SweepRow row;
            row.axis_value = v;
            row.method = m;
            row.array_gain = std::numeric_limits<double>::quiet_NaN();
            row.channel_gain = std::numeric_limits<double>::quiet_NaN();
            row.converged = false;
            row.condition_number = cond;
            row.status = status;
            return row;
        }

        SweepRow evaluate_point(const SweepSpec &spec, double v, Method m)
        {
            try
            {
                const Scenario sc = point_scenario(spec, v);
                const ChannelTriple raw = los_channels(sc);
                const ImpedanceMatrix z_r = array_impedance(sc);
                GradientOptions opts;
                opts.max_iters = spec.max_iters;
                opts.tol = spec.tol;
                const GainResult res = evaluate_method(m, raw, z_r, opts);

                SweepRow row;
                row.axis_value = v;
                row.method = m;
                row.array_gain = res.array_gain;
                row.channel_gain = res.channel_gain;
                row.iterations = res.diagnostics.iterations;
                row.converged = res.diagnostics.converged;
                row.condition_number = res.diagnostics.condition_number;
                return row;
            }
            catch (const IllConditioned &e)
            {
                const double cond = e.min_eigenvalue > 0.0 ? e.max_eigenvalue / e.min_eigenvalue
                                                             : std::numeric_limits<double>::infinity();
                return failed_row(v, m, "ill_conditioned", cond);
            }
            catch (const SingularNetwork &)
            {
                return failed_row(v, m, "singular_network", std::numeric_limits<double>::quiet_NaN());
            }
            catch (const DomainError &)
            {
                return failed_row(v, m, "domain_error", std::numeric_limits<double>::quiet_NaN());
            }
        }
    }

    std::vector<SweepRow> run_sweep(const SweepSpec &spec, unsigned threads)
    {
        const std::size_t n_methods = spec.methods.size();
        const std::size_t total = spec.values.size() * n_methods;
        std::vector<SweepRow> rows(total);
        if (total == 0)
            return rows;

        // each slot is written by exactly one worker, so the order never depends on scheduling
        std::atomic<std::size_t> next{0};
        auto worker = [&]()
        {
            for (std::size_t i = next++; i < total; i = next++)
                rows[i] = evaluate_point(spec, spec.values[i / n_methods], spec.methods[i % n_methods]);
        };

        const std::size_t k = std::max<std::size_t>(1, std::min<std::size_t>(threads, total));
        std::vector<std::thread> pool;
        pool.reserve(k - 1);
        for (std::size_t t = 1; t < k; ++t)
            pool.emplace_back(worker);
        worker();
        for (auto &th : pool)
            th.join();
        return rows;
    }

    bool any_failed(const std::vector<SweepRow> &rows)
    {
        for (const auto &r : rows)
            if (r.status != "ok")
                return true;
        return false;
    }

    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
        return std::string(buf, res.ptr);
    }

    void write_csv(std::ostream &os, const SweepSpec &spec, const std::vector<SweepRow> &rows)
    {
        const Scenario &sc = spec.fixed;
        const Axis ax = spec.axis;
        std::string out;
        out += "# axis: ";
        out += axis_name(ax);
        switch (ax)
        {
        case Axis::SpacingD:
            out += " [wavelengths]\n";
            break;
        case Axis::AngleRx:
            out += " [rad]\n";
            break;
        case Axis::LossGamma:
            out += " [R_d/R]\n";
            break;
        case Axis::ElementsN:
            out += " [elements]\n";
            break;
        }
        out += "# units: array_gain [linear, relative to one lossless element], channel_gain [Ohm^2]\n";
        if (ax != Axis::ElementsN)
            out += "# N = " + std::to_string(sc.elements) + "\n";
        if (ax != Axis::SpacingD)
            out += "# d = " + format_number(sc.spacing) + "\n";
        out += "# alpha_tx = " + format_number(sc.alpha_tx) + "\n";
        if (ax != Axis::AngleRx)
            out += "# alpha_rx = " + format_number(sc.alpha_rx) + "\n";
        if (ax != Axis::LossGamma)
            out += "# gamma = " + format_number(sc.loss_ratio) + "\n";
        out += "# R = " + format_number(sc.ref_resistance) + "\n";
        out += "# gamma_dr = " + format_number(sc.pathloss_dr) + "\n";
        out += "# gamma_rs = " + format_number(sc.pathloss_rs) + "\n";
        out += "# z_ds_re = " + format_number(sc.z_ds.real()) + "\n";
        out += "# z_ds_im = " + format_number(sc.z_ds.imag()) + "\n";
        out += "# seed = " + std::to_string(spec.seed) + "\n";
        out += "axis_value,method,array_gain,channel_gain,iterations,converged,condition_number,status\n";
        for (const auto &r : rows)
        {
            out += format_number(r.axis_value);
            out += ',';
            out += method_name(r.method);
            out += ',';
            out += format_number(r.array_gain);
            out += ',';
            out += format_number(r.channel_gain);
            out += ',';
            out += std::to_string(r.iterations);
            out += ',';
            out += r.converged ? "true" : "false";
            out += ',';
            out += format_number(r.condition_number);
            out += ',';
            out += r.status;
            out += '\n';
        }
        os.write(out.data(), static_cast<std::streamsize>(out.size()));
    }
}
