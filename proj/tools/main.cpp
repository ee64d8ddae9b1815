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

// Command-line front end: `hybridcr run --config <path>` and `hybridcr validate`.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hybridcr/experiments.hpp"
#include "hybridcr/types.hpp"

int main(int argc, char **argv) {
    CLI::App app{"hybridcr: hybrid SIMO cognitive radio design and simulation"};
    app.set_version_flag("--version", hybridcr::version_string());
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run an experiment described by a config file");
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::string> out;
    bool plot = false;
    run->add_option("--config", config_path, "Experiment config file")->required();
    run->add_option("--seed", seed, "Master seed (overrides [mc] seed)");
    run->add_option("--samples", samples, "Outer realizations (overrides [mc] n_realizations)");
    run->add_option("--out", out, "Output CSV path (overrides [experiment] output)");
    run->add_flag("--plot", plot, "Also write a line-plot description file");

    auto *validate = app.add_subcommand("validate", "Check every closed form against its Monte Carlo oracle");
    bool quick = false;
    validate->add_flag("--quick", quick, "Smaller sample counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            hybridcr::ExperimentConfig cfg = hybridcr::load_experiment_config(config_path);
            if (seed) cfg.mc.seed = *seed;
            if (samples) cfg.mc.n_realizations = *samples;
            if (out) cfg.output = *out;
            if (plot) cfg.plot = true;
            cfg.validate();
            const hybridcr::ResultTable table = hybridcr::run_experiment(cfg);
            hybridcr::write_outputs(cfg, table);
            std::cout << "wrote " << table.rows.size() << " rows to " << cfg.output << "\n";
            return 0;
        }
        if (*validate) {
            const hybridcr::ValidationReport rep = hybridcr::validate_suite(quick);
            std::cout << rep.to_table();
            return rep.all_passed() ? 0 : 1;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
