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

// Command line front end: `ris sweep --config fig5.cfg --threads 8`

#include "ris/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_schema = 2;
    constexpr int exit_point_failed = 3;

    unsigned default_threads()
    {
        const char *env = std::getenv("SWEEP_THREADS");
        if (env == nullptr || *env == '\0')
            return 1;
        try
        {
            const long v = std::stol(env);
            return v >= 1 ? static_cast<unsigned>(v) : 1u;
        }
        catch (const std::exception &)
        {
            return 1;
        }
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"RIS channel models with mutual coupling: parameter sweeps"};
    app.require_subcommand(1);

    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
    std::string config_path;
    std::string output;
    int threads = 0;
    sweep->add_option("--config", config_path, "Flat key = value config file");
    sweep->add_option("-o,--output", output, "CSV output path, '-' for stdout");
    sweep->add_option("-j,--threads", threads, "Worker threads (default: $SWEEP_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    // every config key is also a flag; flags override the file
    std::map<std::string, std::string> overrides;
    for (const auto &key : ris::config_keys())
    {
        if (key == "output")
            continue;
        sweep->add_option_function<std::string>(
            "--" + key, [&overrides, key](const std::string &v) { overrides[key] = v; },
            "Config key '" + key + "'");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_schema;
    }

    ris::SweepSpec spec;
    try
    {
        ris::ConfigMap cfg;
        if (!config_path.empty())
            cfg = ris::read_config_file(config_path);
        for (const auto &[k, v] : overrides)
            cfg[k] = v;
        if (!output.empty())
            cfg["output"] = output;
        spec = ris::build_sweep_spec(cfg);
    }
    catch (const ris::SchemaError &e)
    {
        std::cerr << "schema error: " << e.what() << '\n';
        return exit_schema;
    }

    const unsigned k = threads > 0 ? static_cast<unsigned>(threads) : default_threads();
    const auto rows = ris::run_sweep(spec, k);

    if (spec.output == "-")
    {
        ris::write_csv(std::cout, spec, rows);
        std::cout.flush();
    }
    else
    {
        std::ofstream out(spec.output, std::ios::binary);
        if (!out)
        {
            std::cerr << "cannot write '" << spec.output << "'\n";
            return exit_schema;
        }
        ris::write_csv(out, spec, rows);
    }

    if (ris::any_failed(rows))
    {
        std::size_t failed = 0;
        for (const auto &r : rows)
            failed += r.status != "ok";
        std::cerr << failed << " of " << rows.size() << " grid points failed\n";
        return exit_point_failed;
    }
    return exit_ok;
}
