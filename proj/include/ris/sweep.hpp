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

#ifndef RIS_SWEEP_HPP
#define RIS_SWEEP_HPP

#include "ris/network.hpp"
#include "ris/optimize.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ris
{
    enum class Axis
    {
        SpacingD,
        AngleRx,
        LossGamma,
        ElementsN,
    };

    std::string_view axis_name(Axis a);

    // Invalid sweep configuration. `key` names the offending entry.
    class SchemaError : public std::runtime_error
    {
    public:
        SchemaError(std::string key, const std::string &message)
            : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
        const std::string &key() const { return key_; }

    private:
        std::string key_;
    };

    struct SweepSpec
    {
        Axis axis = Axis::SpacingD;
        std::vector<double> values; // resolved axis points, ascending
        Scenario fixed;             // the axis field is overwritten per point
        std::vector<Method> methods;
        std::string output = "-";   // "-" = stdout
        std::uint64_t seed = 0;
        int max_iters = 10000;
        double tol = 1e-9;
    };

    // Raw key/value pairs, in file order; later duplicates overwrite earlier ones.
    using ConfigMap = std::map<std::string, std::string>;

    // Flat "key = value" text, '#' starts a comment. Throws SchemaError on malformed lines.
    ConfigMap parse_config_text(const std::string &text);
    ConfigMap read_config_file(const std::string &path);

    // Applies defaults and validates every key. Unknown keys are rejected.
    SweepSpec build_sweep_spec(const ConfigMap &config);

    SweepSpec validate_and_load(const std::string &path);

    // All recognised config keys, in documentation order.
    const std::vector<std::string> &config_keys();

    // Accepts plain numbers and the forms pi, k*pi, pi/k, k*pi/m, k/m.
    double parse_number(const std::string &text);

    struct SweepRow
    {
        double axis_value = 0.0;
        Method method = Method::DecoupledDiagonal;
        double array_gain = 0.0;
        double channel_gain = 0.0;
        int iterations = 0;
        bool converged = false;
        double condition_number = 0.0;
        std::string status = "ok"; // ok | ill_conditioned | singular_network | domain_error
    };

    // Evaluates every (axis value, method) pair. Rows come back ordered by axis
    // value, then by the fixed method order, independent of `threads`.
    std::vector<SweepRow> run_sweep(const SweepSpec &spec, unsigned threads = 1);

    bool any_failed(const std::vector<SweepRow> &rows);

    // 17 significant digits, '.' decimal separator, independent of the global locale
    std::string format_number(double v);

    void write_csv(std::ostream &os, const SweepSpec &spec, const std::vector<SweepRow> &rows);
}

#endif
