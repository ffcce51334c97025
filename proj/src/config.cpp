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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ris
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> parts;
            std::size_t start = 0;
            for (;;)
            {
                const auto pos = s.find(sep, start);
                parts.push_back(trim(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
                if (pos == std::string::npos)
                    return parts;
                start = pos + 1;
            }
        }

        bool parse_plain(const std::string &s, double &out)
        {
            if (s.empty())
                return false;
            const char *first = s.data();
            if (*first == '+')
                ++first;
            const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
            return ec == std::errc() && ptr == s.data() + s.size();
        }

        // product of factors, each a plain number or "pi"
        bool parse_product(const std::string &s, double &out)
        {
            out = 1.0;
            const auto factors = split(s, '*');
            if (factors.empty())
                return false;
            for (const auto &f : factors)
            {
                double v = 0.0;
                if (f == "pi")
                    v = std::numbers::pi;
                else if (f == "-pi")
                    v = -std::numbers::pi;
                else if (!parse_plain(f, v))
                    return false;
                out *= v;
            }
            return true;
        }
    }

    double parse_number(const std::string &text)
    {
        const std::string s = trim(text);
        const auto parts = split(s, '/');
        double num = 0.0;
        if (parts.empty() || parts.size() > 2 || !parse_product(parts[0], num))
            throw std::invalid_argument("not a number: '" + text + "'");
        if (parts.size() == 2)
        {
            double den = 0.0;
            if (!parse_product(parts[1], den) || den == 0.0)
                throw std::invalid_argument("not a number: '" + text + "'");
            num /= den;
        }
        if (!std::isfinite(num))
            throw std::invalid_argument("not a finite number: '" + text + "'");
        return num;
    }

    const std::vector<std::string> &config_keys()
    {
        static const std::vector<std::string> keys = {
            "axis", "from", "to", "steps", "values",
            "N", "d", "alpha_tx", "alpha_rx", "gamma",
            "R", "gamma_dr", "gamma_rs", "z_ds_re", "z_ds_im",
            "methods", "output", "seed", "max_iters", "tol",
        };
        return keys;
    }

    ConfigMap parse_config_text(const std::string &text)
    {
        ConfigMap out;
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw SchemaError("line " + std::to_string(line_no), "expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            if (key.empty())
                throw SchemaError("line " + std::to_string(line_no), "empty key");
            out[key] = trim(line.substr(eq + 1));
        }
        return out;
    }

    ConfigMap read_config_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw SchemaError("config", "cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_config_text(buf.str());
    }

    namespace
    {
        class Reader
        {
        public:
            explicit Reader(const ConfigMap &m) : map_(m) {}

            bool has(const std::string &key) const { return map_.count(key) != 0; }

            double number(const std::string &key, double fallback) const
            {
                const auto it = map_.find(key);
                if (it == map_.end())
                    return fallback;
                try
                {
                    return parse_number(it->second);
                }
                catch (const std::invalid_argument &)
                {
                    throw SchemaError(key, "expected a number, got '" + it->second + "'");
                }
            }

            long long integer(const std::string &key, long long fallback) const
            {
                const auto it = map_.find(key);
                if (it == map_.end())
                    return fallback;
                long long v = 0;
                const std::string &s = it->second;
                const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
                if (ec != std::errc() || ptr != s.data() + s.size())
                    throw SchemaError(key, "expected an integer, got '" + s + "'");
                return v;
            }

            std::string text(const std::string &key, const std::string &fallback) const
            {
                const auto it = map_.find(key);
                return it == map_.end() ? fallback : it->second;
            }

        private:
            const ConfigMap &map_;
        };

        Axis parse_axis(const std::string &s)
        {
            for (Axis a : {Axis::SpacingD, Axis::AngleRx, Axis::LossGamma, Axis::ElementsN})
                if (s == axis_name(a))
                    return a;
            throw SchemaError("axis", "unknown axis '" + s + "' (valid: spacing_d, angle_rx, loss_gamma, elements_N)");
        }

        Method parse_method(const std::string &s)
        {
            for (Method m : {Method::DecoupledDiagonal, Method::BD, Method::Uncoupled, Method::IgnoreMC,
                             Method::GradientCoupled})
                if (s == method_name(m))
                    return m;
            throw SchemaError("methods",
                              "unknown method '" + s + "' (valid: decoupled_diag, bd, uncoupled, ignore_mc, gradient)");
        }

        void check_axis_value(Axis axis, double v, const std::string &key)
        {
            switch (axis)
            {
            case Axis::SpacingD:
                if (!(v > 0.0))
                    throw SchemaError(key, "spacing d must be positive");
                break;
            case Axis::AngleRx:
                if (!(v >= 0.0 && v <= std::numbers::pi * (1.0 + 1e-15)))
                    throw SchemaError(key, "angle must lie in [0, pi]");
                break;
            case Axis::LossGamma:
                if (!(v >= 0.0))
                    throw SchemaError(key, "loss ratio gamma must be nonnegative");
                break;
            case Axis::ElementsN:
                if (!(v >= 1.0) || v != std::floor(v) || v > 4096.0)
                    throw SchemaError(key, "element count N must be an integer in [1, 4096]");
                break;
            }
        }
    }

    SweepSpec build_sweep_spec(const ConfigMap &config)
    {
        const auto &known = config_keys();
        for (const auto &[key, value] : config)
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw SchemaError(key, "unknown key");

        const Reader rd(config);
        SweepSpec spec;

        if (!rd.has("axis"))
            throw SchemaError("axis", "missing required key");
        spec.axis = parse_axis(rd.text("axis", ""));

        // axis points
        if (rd.has("values"))
        {
            if (rd.has("from") || rd.has("to") || rd.has("steps"))
                throw SchemaError("values", "give either 'values' or 'from'/'to'/'steps', not both");
            for (const auto &item : split(rd.text("values", ""), ','))
            {
                try
                {
                    spec.values.push_back(parse_number(item));
                }
                catch (const std::invalid_argument &)
                {
                    throw SchemaError("values", "expected a number, got '" + item + "'");
                }
            }
            if (spec.values.empty())
                throw SchemaError("values", "list is empty");
            std::sort(spec.values.begin(), spec.values.end());
        }
        else
        {
            for (const char *k : {"from", "to", "steps"})
                if (!rd.has(k))
                    throw SchemaError(k, "missing required key (or give 'values')");
            const double from = rd.number("from", 0.0);
            const double to = rd.number("to", 0.0);
            const long long steps = rd.integer("steps", 0);
            if (steps < 1)
                throw SchemaError("steps", "must be at least 1");
            if (!(from <= to))
                throw SchemaError("from", "must not exceed 'to'");
            if (steps == 1)
            {
                spec.values.push_back(from);
            }
            else
            {
                for (long long i = 0; i < steps; ++i)
                {
                    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
                    spec.values.push_back(i == steps - 1 ? to : from + t * (to - from));
                }
            }
        }
        for (double v : spec.values)
            check_axis_value(spec.axis, v, rd.has("values") ? "values" : "from");

        // fixed scenario
        Scenario &sc = spec.fixed;
        if (spec.axis != Axis::ElementsN)
        {
            if (!rd.has("N"))
                throw SchemaError("N", "missing required key");
            const long long n = rd.integer("N", 1);
            if (n < 1 || n > 4096)
                throw SchemaError("N", "must be an integer in [1, 4096]");
            sc.elements = static_cast<std::size_t>(n);
        }
        else if (rd.has("N"))
        {
            throw SchemaError("N", "is the sweep axis; remove the fixed value");
        }

        if (spec.axis != Axis::SpacingD)
        {
            if (!rd.has("d"))
                throw SchemaError("d", "missing required key");
            sc.spacing = rd.number("d", 0.5);
            if (!(sc.spacing > 0.0))
                throw SchemaError("d", "spacing must be positive");
        }
        else if (rd.has("d"))
        {
            throw SchemaError("d", "is the sweep axis; remove the fixed value");
        }

        sc.alpha_tx = rd.number("alpha_tx", 0.0);
        if (!(sc.alpha_tx >= 0.0 && sc.alpha_tx <= std::numbers::pi * (1.0 + 1e-15)))
            throw SchemaError("alpha_tx", "angle must lie in [0, pi]");
        if (spec.axis != Axis::AngleRx)
        {
            sc.alpha_rx = rd.number("alpha_rx", std::numbers::pi / 2.0);
            if (!(sc.alpha_rx >= 0.0 && sc.alpha_rx <= std::numbers::pi * (1.0 + 1e-15)))
                throw SchemaError("alpha_rx", "angle must lie in [0, pi]");
        }
        else if (rd.has("alpha_rx"))
        {
            throw SchemaError("alpha_rx", "is the sweep axis; remove the fixed value");
        }

        if (spec.axis != Axis::LossGamma)
        {
            sc.loss_ratio = rd.number("gamma", 0.0);
            if (!(sc.loss_ratio >= 0.0))
                throw SchemaError("gamma", "loss ratio must be nonnegative");
        }
        else if (rd.has("gamma"))
        {
            throw SchemaError("gamma", "is the sweep axis; remove the fixed value");
        }

        sc.ref_resistance = rd.number("R", 1.0);
        if (!(sc.ref_resistance > 0.0))
            throw SchemaError("R", "reference resistance must be positive");
        sc.pathloss_dr = rd.number("gamma_dr", 1.0);
        if (!(sc.pathloss_dr > 0.0))
            throw SchemaError("gamma_dr", "pathloss must be positive");
        sc.pathloss_rs = rd.number("gamma_rs", 1.0);
        if (!(sc.pathloss_rs > 0.0))
            throw SchemaError("gamma_rs", "pathloss must be positive");
        sc.z_ds = cplx(rd.number("z_ds_re", 0.0), rd.number("z_ds_im", 0.0));

        // methods, kept in the fixed enum order
        const std::string methods = rd.text("methods", "decoupled_diag,bd");
        std::vector<Method> chosen;
        for (const auto &name : split(methods, ','))
        {
            if (name.empty())
                continue;
            chosen.push_back(parse_method(name));
        }
        if (chosen.empty())
            throw SchemaError("methods", "at least one method is required");
        std::sort(chosen.begin(), chosen.end());
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
        spec.methods = std::move(chosen);

        spec.output = rd.text("output", "-");
        if (spec.output.empty())
            throw SchemaError("output", "path is empty");
        const long long seed = rd.integer("seed", 0);
        if (seed < 0)
            throw SchemaError("seed", "must be nonnegative");
        spec.seed = static_cast<std::uint64_t>(seed);

        const long long iters = rd.integer("max_iters", 10000);
        if (iters < 1 || iters > 100000000)
            throw SchemaError("max_iters", "must be a positive integer");
        spec.max_iters = static_cast<int>(iters);
        spec.tol = rd.number("tol", 1e-9);
        if (!(spec.tol > 0.0))
            throw SchemaError("tol", "must be positive");
        return spec;
    }

    SweepSpec validate_and_load(const std::string &path)
    {
        return build_sweep_spec(read_config_file(path));
    }
}
