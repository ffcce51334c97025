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
#include "test_support.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace ris;
using ris_test::rel_err;

namespace
{
    std::string schema_key(const ConfigMap &cfg)
    {
        try
        {
            (void)build_sweep_spec(cfg);
        }
        catch (const SchemaError &e)
        {
            return e.key();
        }
        return "<accepted>";
    }

    std::string schema_message(const ConfigMap &cfg)
    {
        try
        {
            (void)build_sweep_spec(cfg);
        }
        catch (const SchemaError &e)
        {
            return e.what();
        }
        return "";
    }

    ConfigMap minimal()
    {
        return {{"N", "4"}, {"axis", "spacing_d"}, {"from", "0.05"}, {"to", "1.0"}, {"steps", "96"}};
    }

    std::string csv(const SweepSpec &spec, unsigned threads)
    {
        std::ostringstream os;
        write_csv(os, spec, run_sweep(spec, threads));
        return os.str();
    }

    const SweepRow &row(const std::vector<SweepRow> &rows, double v, Method m)
    {
        for (const auto &r : rows)
            if (r.axis_value == v && r.method == m)
                return r;
        throw std::runtime_error("row not found");
    }
}

TEST_CASE("parse_number")
{
    CHECK(parse_number("0.25") == 0.25);
    CHECK(parse_number(" -3e-2 ") == -0.03);
    CHECK(parse_number("+2") == 2.0);
    CHECK(parse_number("pi") == M_PI);
    CHECK(parse_number("pi/2") == M_PI / 2);
    CHECK(parse_number("3*pi/4") == 3 * M_PI / 4);
    CHECK(parse_number("1/32") == 0.03125);
    CHECK(parse_number("-pi") == -M_PI);
    for (const char *bad : {"", "abc", "1/0", "pi/", "1,5", "2**3", "1e999", "nan"})
        CHECK_THROWS_AS(parse_number(bad), std::invalid_argument);
}

TEST_CASE("parse_config_text")
{
    const auto cfg = parse_config_text("# comment\n\naxis = spacing_d  # trailing\nN=4\r\nN = 5\n");
    CHECK(cfg.at("axis") == "spacing_d");
    CHECK(cfg.at("N") == "5");
    CHECK(cfg.size() == 2);
    try
    {
        (void)parse_config_text("axis = spacing_d\nthis line has no separator\n");
        FAIL("expected SchemaError");
    }
    catch (const SchemaError &e)
    {
        CHECK(e.key() == "line 2");
    }
    CHECK_THROWS_AS(parse_config_text(" = 3\n"), SchemaError);
    CHECK_THROWS_AS(read_config_file("/nonexistent/sweep.cfg"), SchemaError);
}

TEST_CASE("build_sweep_spec: minimal config gets the defaults")
{
    const auto spec = build_sweep_spec(minimal());
    CHECK(spec.axis == Axis::SpacingD);
    REQUIRE(spec.values.size() == 96);
    CHECK(spec.values.front() == 0.05);
    CHECK(spec.values.back() == 1.0);
    CHECK(std::abs(spec.values[1] - 0.06) < 1e-15);
    CHECK(spec.fixed.elements == 4);
    CHECK(spec.fixed.ref_resistance == 1.0);
    CHECK(spec.fixed.pathloss_dr == 1.0);
    CHECK(spec.fixed.pathloss_rs == 1.0);
    CHECK(spec.fixed.z_ds == cplx(0.0, 0.0));
    CHECK(spec.fixed.loss_ratio == 0.0);
    CHECK(spec.fixed.alpha_tx == 0.0);
    CHECK(spec.fixed.alpha_rx == M_PI / 2);
    CHECK(spec.methods == std::vector<Method>{Method::DecoupledDiagonal, Method::BD});
    CHECK(spec.output == "-");
    CHECK(spec.seed == 0);
    CHECK(spec.max_iters == 10000);
    CHECK(spec.tol == 1e-9);
}

TEST_CASE("build_sweep_spec: explicit values and method ordering")
{
    auto cfg = minimal();
    cfg.erase("from");
    cfg.erase("to");
    cfg.erase("steps");
    cfg["values"] = "0.5, 1/8, 0.25";
    cfg["methods"] = "gradient,bd, decoupled_diag,bd";
    const auto spec = build_sweep_spec(cfg);
    CHECK(spec.values == std::vector<double>{0.125, 0.25, 0.5});
    CHECK(spec.methods == std::vector<Method>{Method::DecoupledDiagonal, Method::BD, Method::GradientCoupled});

    cfg["from"] = "0.1";
    CHECK(schema_key(cfg) == "values");
}

TEST_CASE("build_sweep_spec: single step")
{
    auto cfg = minimal();
    cfg["steps"] = "1";
    cfg["to"] = "0.05";
    CHECK(build_sweep_spec(cfg).values == std::vector<double>{0.05});
}

TEST_CASE("build_sweep_spec: rejected configurations name the key")
{
    auto neg_d = minimal();
    neg_d["from"] = "-0.1";
    CHECK(schema_key(neg_d) == "from");
    CHECK(schema_message(neg_d).find("positive") != std::string::npos);

    ConfigMap fixed_d = {{"axis", "angle_rx"}, {"from", "0"}, {"to", "pi"}, {"steps", "3"}, {"N", "4"}, {"d", "-0.5"}};
    CHECK(schema_key(fixed_d) == "d");

    auto bad_method = minimal();
    bad_method["methods"] = "decoupled_diag,magic";
    CHECK(schema_key(bad_method) == "methods");
    const std::string msg = schema_message(bad_method);
    for (const char *m : {"decoupled_diag", "bd", "uncoupled", "ignore_mc", "gradient"})
        CHECK(msg.find(m) != std::string::npos);

    auto empty_methods = minimal();
    empty_methods["methods"] = " , ";
    CHECK(schema_key(empty_methods) == "methods");

    auto unknown = minimal();
    unknown["spacing"] = "0.5";
    CHECK(schema_key(unknown) == "spacing");

    auto steps = minimal();
    steps["steps"] = "0";
    CHECK(schema_key(steps) == "steps");
    steps["steps"] = "2.5";
    CHECK(schema_key(steps) == "steps");

    auto order = minimal();
    order["from"] = "1.5";
    CHECK(schema_key(order) == "from");

    auto no_axis = minimal();
    no_axis.erase("axis");
    CHECK(schema_key(no_axis) == "axis");
    auto bad_axis = minimal();
    bad_axis["axis"] = "frequency";
    CHECK(schema_key(bad_axis) == "axis");

    auto no_n = minimal();
    no_n.erase("N");
    CHECK(schema_key(no_n) == "N");
    auto zero_n = minimal();
    zero_n["N"] = "0";
    CHECK(schema_key(zero_n) == "N");

    ConfigMap angle = {{"axis", "angle_rx"}, {"from", "0"}, {"to", "4"}, {"steps", "3"}, {"N", "4"}, {"d", "0.5"}};
    CHECK(schema_key(angle) == "from");
    angle["to"] = "pi";
    CHECK(schema_key(angle) == "<accepted>");
    angle["alpha_tx"] = "-0.1";
    CHECK(schema_key(angle) == "alpha_tx");

    ConfigMap loss = {{"axis", "loss_gamma"}, {"values", "0, -1e-3"}, {"N", "4"}, {"d", "0.2"}};
    CHECK(schema_key(loss) == "values");

    ConfigMap elems = {{"axis", "elements_N"}, {"from", "1"}, {"to", "8"}, {"steps", "15"}, {"d", "0.2"}};
    CHECK(schema_key(elems) == "from");
    elems["steps"] = "8";
    CHECK(schema_key(elems) == "<accepted>");
    elems["N"] = "3";
    CHECK(schema_key(elems) == "N");

    auto bad_number = minimal();
    bad_number["gamma"] = "lots";
    CHECK(schema_key(bad_number) == "gamma");
    auto bad_r = minimal();
    bad_r["R"] = "0";
    CHECK(schema_key(bad_r) == "R");
    auto bad_tol = minimal();
    bad_tol["tol"] = "0";
    CHECK(schema_key(bad_tol) == "tol");
    auto bad_iters = minimal();
    bad_iters["max_iters"] = "0";
    CHECK(schema_key(bad_iters) == "max_iters");
    auto bad_seed = minimal();
    bad_seed["seed"] = "-4";
    CHECK(schema_key(bad_seed) == "seed");
}

TEST_CASE("validate_and_load reads a file")
{
    const std::string path = "test_sweep_tmp.cfg";
    {
        std::ofstream out(path);
        out << "# fixture\naxis = spacing_d\nfrom = 0.05\nto = 1.0\nsteps = 96\nN = 4\n";
    }
    const auto spec = validate_and_load(path);
    std::remove(path.c_str());
    CHECK(spec.values.size() == 96);
    CHECK(spec.fixed.elements == 4);
}

TEST_CASE("config_keys are all accepted")
{
    CHECK(config_keys().size() == 20);
    ConfigMap cfg = {{"axis", "spacing_d"}, {"values", "0.3"}, {"N", "3"}, {"alpha_tx", "0.1"}, {"alpha_rx", "2"},
                     {"gamma", "0.01"}, {"R", "50"}, {"gamma_dr", "0.5"}, {"gamma_rs", "0.25"}, {"z_ds_re", "1"},
                     {"z_ds_im", "-2"}, {"methods", "bd"}, {"output", "x.csv"}, {"seed", "7"},
                     {"max_iters", "50"}, {"tol", "1e-6"}};
    const auto spec = build_sweep_spec(cfg);
    CHECK(spec.fixed.z_ds == cplx(1.0, -2.0));
    CHECK(spec.fixed.ref_resistance == 50.0);
    CHECK(spec.seed == 7);
    CHECK(spec.max_iters == 50);
}

TEST_CASE("run_sweep: front-fire diagonal and BD coincide at every spacing")
{
    ConfigMap cfg = {{"axis", "spacing_d"}, {"from", "0.05"}, {"to", "1.0"}, {"steps", "96"}, {"N", "4"},
                     {"alpha_tx", "pi/2"}, {"alpha_rx", "pi/2"}, {"methods", "decoupled_diag,bd"}};
    const auto spec = build_sweep_spec(cfg);
    const auto rows = run_sweep(spec, 4);
    REQUIRE(rows.size() == 192);
    for (std::size_t k = 0; k < rows.size(); k += 2)
    {
        CHECK(rows[k].method == Method::DecoupledDiagonal);
        CHECK(rows[k + 1].method == Method::BD);
        CHECK(rows[k].axis_value == rows[k + 1].axis_value);
        CHECK(rows[k].status == "ok");
        CHECK(rel_err(rows[k].array_gain, rows[k + 1].array_gain) < 1e-12);
    }
}

TEST_CASE("run_sweep: half wavelength decoupled equals uncoupled")
{
    ris_test::Rng rng(31);
    for (int t = 0; t < 5; ++t)
    {
        ConfigMap cfg = {{"axis", "spacing_d"}, {"values", "0.5"}, {"N", std::to_string(rng.integer(1, 8))},
                         {"alpha_tx", std::to_string(rng.uniform(0.0, 3.0))},
                         {"alpha_rx", std::to_string(rng.uniform(0.0, 3.0))},
                         {"methods", "decoupled_diag,uncoupled"}};
        const auto rows = run_sweep(build_sweep_spec(cfg));
        REQUIRE(rows.size() == 2);
        CHECK(rel_err(rows[0].array_gain, rows[1].array_gain) < 1e-12);
    }
}

TEST_CASE("run_sweep: angle sweep at d = 1/32")
{
    // N = 8 does not pass the conditioning gate at this spacing; every point must
    // still produce a row with a status token
    ConfigMap big = {{"axis", "angle_rx"}, {"from", "0"}, {"to", "pi"}, {"steps", "5"}, {"N", "8"}, {"d", "1/32"},
                     {"methods", "decoupled_diag,bd"}};
    const auto failed = run_sweep(build_sweep_spec(big), 2);
    REQUIRE(failed.size() == 10);
    CHECK(any_failed(failed));
    for (const auto &r : failed)
    {
        CHECK(r.status == "ill_conditioned");
        CHECK(std::isnan(r.array_gain));
        CHECK(r.condition_number > 1e12);
    }

    // N = 4 is inside the gate and approaches N^4 at alpha = pi
    big["N"] = "4";
    const auto rows = run_sweep(build_sweep_spec(big), 2);
    CHECK(!any_failed(rows));
    const auto &dg = row(rows, M_PI, Method::DecoupledDiagonal);
    const auto &bd = row(rows, M_PI, Method::BD);
    CHECK(rel_err(dg.array_gain, bd.array_gain) < 1e-9);
    CHECK(dg.array_gain > 0.99 * 256.0);
    CHECK(dg.array_gain <= 256.0);
    for (const auto &r : rows)
        if (r.method == Method::DecoupledDiagonal)
            CHECK(row(rows, r.axis_value, Method::BD).array_gain >= r.array_gain * (1 - 1e-12));
}

TEST_CASE("run_sweep: failures do not stop neighbouring points")
{
    ConfigMap cfg = {{"axis", "elements_N"}, {"values", "4, 8"}, {"d", "1/32"}, {"alpha_rx", "pi"},
                     {"methods", "bd,uncoupled"}};
    const auto rows = run_sweep(build_sweep_spec(cfg), 3);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].status == "ok");
    CHECK(rows[1].status == "ok");
    CHECK(rows[2].status == "ill_conditioned");
    CHECK(rows[3].status == "ok"); // uncoupled never touches C_R
}

TEST_CASE("run_sweep: loss axis")
{
    ConfigMap cfg = {{"axis", "loss_gamma"}, {"values", "0, 1e-3, 1e-2, 1e-1"}, {"N", "4"}, {"d", "0.1"},
                     {"alpha_rx", "pi"}, {"methods", "decoupled_diag"}};
    const auto rows = run_sweep(build_sweep_spec(cfg));
    REQUIRE(rows.size() == 4);
    for (std::size_t k = 1; k < rows.size(); ++k)
        CHECK(rows[k].array_gain < rows[k - 1].array_gain);
}

TEST_CASE("run_sweep: identical output for any thread count")
{
    ConfigMap cfg = {{"axis", "spacing_d"}, {"from", "0.1"}, {"to", "0.6"}, {"steps", "11"}, {"N", "4"},
                     {"alpha_rx", "2.0"}, {"gamma", "1e-3"},
                     {"methods", "decoupled_diag,bd,uncoupled,ignore_mc,gradient"}};
    const auto spec = build_sweep_spec(cfg);
    const std::string one = csv(spec, 1);
    for (unsigned t : {2u, 3u, 8u, 64u})
        CHECK(csv(spec, t) == one);
}

TEST_CASE("format_number")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(256.0) == "256");
    CHECK(format_number(-2.5e-20) == "-2.4999999999999999e-20");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    // 17 significant digits round-trip
    ris_test::Rng rng(5);
    for (int k = 0; k < 100; ++k)
    {
        const double v = rng.normal() * std::pow(10.0, rng.integer(-30, 30));
        CHECK(std::stod(format_number(v)) == v);
    }
}

TEST_CASE("write_csv: layout")
{
    ConfigMap cfg = {{"axis", "angle_rx"}, {"values", "0, pi"}, {"N", "2"}, {"d", "0.25"},
                     {"methods", "bd,decoupled_diag"}};
    const auto spec = build_sweep_spec(cfg);
    const std::string text = csv(spec, 1);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.back() == '\n');

    std::istringstream in(text);
    std::string line;
    std::vector<std::string> comments, body;
    while (std::getline(in, line))
        (line.rfind('#', 0) == 0 ? comments : body).push_back(line);
    CHECK(comments.front() == "# axis: angle_rx [rad]");
    CHECK(std::find(comments.begin(), comments.end(), "# d = 0.25") != comments.end());
    for (const auto &c : comments)
        CHECK(c.find("thread") == std::string::npos);
    REQUIRE(body.size() == 5);
    CHECK(body[0] == "axis_value,method,array_gain,channel_gain,iterations,converged,condition_number,status");
    CHECK(body[1].rfind("0,decoupled_diag,", 0) == 0);
    CHECK(body[2].rfind("0,bd,", 0) == 0);
    CHECK(body[3].rfind("3.1415926535897931,decoupled_diag,", 0) == 0);
    CHECK(body[4].substr(body[4].size() - 3) == ",ok");
}

TEST_CASE("axis names")
{
    CHECK(axis_name(Axis::SpacingD) == "spacing_d");
    CHECK(axis_name(Axis::AngleRx) == "angle_rx");
    CHECK(axis_name(Axis::LossGamma) == "loss_gamma");
    CHECK(axis_name(Axis::ElementsN) == "elements_N");
}
