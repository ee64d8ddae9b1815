// SPDX-License-Identifier: Apache-2.0
//
// hybridcr: joint sensing / receive-beamforming design for hybrid SIMO cognitive radio
// Copyright (C) 2026 The hybridcr authors
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

#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hybridcr/experiments.hpp"

using namespace hybridcr;

namespace {

ExperimentConfig parse(const std::string &text) {
    std::istringstream in(text);
    return parse_experiment_config(in);
}

ExperimentConfig tiny(ExperimentId id) {
    ExperimentConfig c = default_experiment(id);
    c.mc.n_realizations = 4;
    c.mc.n_inner = 20;
    c.mc.seed = 3;
    c.outage_samples = 2000;
    return c;
}

} // namespace

TEST_CASE("value and id parsing") {
    CHECK(parse_value("0.3") == doctest::Approx(0.3));
    CHECK(parse_value("3 dB") == doctest::Approx(1.9952623149688795));
    CHECK(parse_value("-3dB") == doctest::Approx(0.5011872336272722));
    CHECK(parse_value(" 10 dB ") == doctest::Approx(10.0));
    CHECK_THROWS_AS(parse_value("abc"), InvalidParameter);
    CHECK_THROWS_AS(parse_value("1.0x"), InvalidParameter);
    for (ExperimentId id : {ExperimentId::Fig2OutageApprox, ExperimentId::Fig3RateVsPoutLowAct,
                            ExperimentId::Fig4RateVsPoutHighAct, ExperimentId::Fig5RateVsActivity,
                            ExperimentId::Fig6PowerVsPout, ExperimentId::CustomSweep})
        CHECK(parse_experiment_id(experiment_name(id)) == id);
    CHECK_THROWS_AS(parse_experiment_id("fig7"), InvalidParameter);
}

TEST_CASE("system fields by name") {
    SystemConfig cfg;
    set_system_field(cfg, "Pout_target", 0.05);
    CHECK(cfg.Pout_target == 0.05);
    set_system_field(cfg, "M", 2.0);
    CHECK(cfg.M == 2);
    CHECK(get_system_field(cfg, "rho") == 0.5);
    CHECK_THROWS_AS(set_system_field(cfg, "nope", 1.0), InvalidParameter);
    CHECK_THROWS_AS(set_system_field(cfg, "M", 2.5), InvalidParameter);
}

TEST_CASE("presets") {
    const ExperimentConfig f3 = default_experiment(ExperimentId::Fig3RateVsPoutLowAct);
    CHECK(f3.sweep.axis == "Pout_target");
    CHECK(f3.system.P1_prior == 0.3);
    CHECK(f3.sweep.values.front() == doctest::Approx(0.01));
    CHECK(f3.sweep.values.back() == doctest::Approx(0.25));
    CHECK_NOTHROW(f3.validate());
    CHECK(default_experiment(ExperimentId::Fig4RateVsPoutHighAct).system.P1_prior == 0.7);
    const ExperimentConfig f5 = default_experiment(ExperimentId::Fig5RateVsActivity);
    CHECK(f5.sweep.axis == "P1_prior");
    CHECK(f5.system.Pout_target == 0.02);
    CHECK(default_experiment(ExperimentId::Fig2OutageApprox).sweep.axis == "gamma0");
}

TEST_CASE("config file parsing") {
    const ExperimentConfig c = parse("[experiment]\nid = fig4_rate_vs_pout_highact\noutput = out.csv\n"
                                     "[system]\nrho = 0.2\ngamma0 = 6 dB\n"
                                     "[sweep]\nvalues = 0.02, 0.05\n"
                                     "[mc]\nn_realizations = 10\nseed = 5\nworkers = 2\n"
                                     "[solver]\nmax_outer = 20\n");
    CHECK(c.id == ExperimentId::Fig4RateVsPoutHighAct);
    CHECK(c.output == "out.csv");
    CHECK(c.system.rho == 0.2);
    CHECK(c.system.gamma0 == doctest::Approx(db_to_linear(6.0)));
    CHECK(c.system.P1_prior == 0.7); // from the preset
    CHECK(c.sweep.axis == "Pout_target");
    CHECK(c.sweep.values.size() == 2);
    CHECK(c.mc.n_realizations == 10);
    CHECK(c.mc.seed == 5);
    CHECK(c.mc.workers == 2);
    CHECK(c.solver.max_outer == 20);

    CHECK_THROWS_AS(parse("[system]\nbogus = 1\n"), InvalidParameter);
    CHECK_THROWS_AS(parse("[extra]\nx = 1\n"), InvalidParameter);
    CHECK_THROWS_AS(parse("[sweep]\nvalues = 0.2, 0.1\n"), InvalidParameter);
    CHECK_THROWS_AS(parse("[system]\nrho = 2\n"), InvalidParameter);
    CHECK_THROWS_AS(parse("[mc]\nn_realizations = 0\n"), InvalidParameter);
    CHECK_THROWS(load_experiment_config("/nonexistent/config.ini"));
}

TEST_CASE("CSV output") {
    ResultTable t;
    ResultRow r;
    r.sweep_value = 0.1;
    r.hybrid_rate = 1.0 / 3.0;
    r.mc_outage = std::nan("");
    r.status = "hybrid:infeasible, min 0.01";
    t.rows.push_back(r);
    const std::string csv = t.to_csv();
    std::istringstream in(csv);
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    CHECK(header.rfind("sweep_value,hybrid_rate,interweave_rate,underlay_rate", 0) == 0);
    CHECK(ResultTable::columns().size() == 16);
    CHECK(line.find("0.33333333333333331") != std::string::npos); // round-trip precision
    CHECK(line.find(",,") != std::string::npos);                  // NaN as empty
    CHECK(line.find("\"hybrid:infeasible, min 0.01\"") != std::string::npos);
}

TEST_CASE("runs are deterministic and independent of the worker count") {
    ExperimentConfig c = tiny(ExperimentId::Fig3RateVsPoutLowAct);
    c.sweep.values = {0.02, 0.1};
    c.mc.workers = 1;
    const std::string a = run_experiment(c).to_csv();
    const std::string b = run_experiment(c).to_csv();
    c.mc.workers = 4;
    const std::string d = run_experiment(c).to_csv();
    CHECK(a == b);
    CHECK(a == d);
    c.mc.seed = 4;
    CHECK(a != run_experiment(c).to_csv());
}

TEST_CASE("run rows carry the design columns") {
    ExperimentConfig c = tiny(ExperimentId::Fig6PowerVsPout);
    c.sweep.values = {0.005, 0.02, 0.35};
    const ResultTable t = run_experiment(c);
    REQUIRE(t.rows.size() == 3);
    // Tightest target is infeasible for the hybrid design.
    CHECK(t.rows[0].status.find("hybrid") != std::string::npos);
    CHECK(t.rows[1].status == "ok");
    CHECK(t.rows[1].P1_star > 0.0);
    CHECK(t.rows[1].P1_star < 10.0);
    CHECK(std::abs(t.rows[1].closed_form_outage - 0.02) < 1e-8);
    CHECK(t.rows[2].P1_star == doctest::Approx(10.0));
    CHECK(t.rows[1].seed == 3);

    ExperimentConfig f2 = tiny(ExperimentId::Fig2OutageApprox);
    f2.sweep.values = {db_to_linear(3.0)};
    const ResultTable o = run_experiment(f2);
    CHECK_FALSE(o.rows[0].has_rates);
    CHECK(o.rows[0].closed_form_outage > 0.0);
}

TEST_CASE("outputs and manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "hybridcr_test_outputs";
    std::filesystem::create_directories(dir);
    ExperimentConfig c = tiny(ExperimentId::CustomSweep);
    c.output = (dir / "r.csv").string();
    c.plot = true;
    const ResultTable t = run_experiment(c);
    write_outputs(c, t);
    CHECK(std::filesystem::exists(dir / "r.csv"));
    CHECK(std::filesystem::exists(dir / "r.csv.plot"));
    std::ifstream m(dir / "r.csv.manifest");
    std::stringstream ss;
    ss << m.rdbuf();
    CHECK(ss.str().find(version_string()) != std::string::npos);
    CHECK(ss.str().find("seed") != std::string::npos);
    c.output = "/nonexistent/dir/r.csv";
    CHECK_THROWS(write_outputs(c, t));
    std::filesystem::remove_all(dir);
}
