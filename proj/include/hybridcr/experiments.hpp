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

#pragma once

// Config-driven sweeps over the system parameters and the self-check battery.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hybridcr/config.hpp"
#include "hybridcr/mc.hpp"
#include "hybridcr/optim.hpp"

namespace hybridcr {

enum class ExperimentId {
    Fig2OutageApprox,
    Fig3RateVsPoutLowAct,
    Fig4RateVsPoutHighAct,
    Fig5RateVsActivity,
    Fig6PowerVsPout,
    CustomSweep,
};

std::string_view experiment_name(ExperimentId id);
/// Throws InvalidParameter for unknown names.
ExperimentId parse_experiment_id(std::string_view name);

struct SweepSpec {
    std::string axis;           ///< a SystemConfig field name, e.g. Pout_target, P1_prior, gamma0
    std::vector<double> values; ///< linear units, strictly increasing
};

struct ExperimentConfig {
    ExperimentId id = ExperimentId::CustomSweep;
    SystemConfig system;
    SweepSpec sweep;
    McSpec mc;
    SolverOptions solver;
    std::string output = "results.csv";
    bool plot = false;       ///< also write <output>.plot (x/y/series triples)
    std::size_t outage_samples = 0; ///< MC samples for outage columns; 0 = n_realizations * n_inner

    void validate() const;
};

/// Preset for an experiment id: default system, the sweep axis and grid for that id.
ExperimentConfig default_experiment(ExperimentId id);

/// Parses the key-value config format:
///   [experiment] id, output, plot, outage_samples
///   [system]     any SystemConfig field (values may carry a "dB" suffix)
///   [sweep]      axis, values (comma separated; "dB" suffix allowed per value)
///   [mc]         n_realizations, n_inner, seed, workers, report_se
///   [solver]     xi_bits, max_outer, scf_max_iter, random_starts
/// Presets from default_experiment(id) fill everything the file leaves out.
ExperimentConfig parse_experiment_config(std::istream &in);
ExperimentConfig load_experiment_config(const std::string &path);

/// Sets a named SystemConfig field. Throws InvalidParameter for unknown names.
void set_system_field(SystemConfig &cfg, std::string_view name, double value);
double get_system_field(const SystemConfig &cfg, std::string_view name);

/// Parses "0.3", "3 dB", "-3dB" into a linear value.
double parse_value(std::string_view text);

struct ResultRow {
    double sweep_value = 0.0;
    double hybrid_rate = 0.0, interweave_rate = 0.0, underlay_rate = 0.0;
    double hybrid_rate_se = 0.0, interweave_rate_se = 0.0, underlay_rate_se = 0.0;
    double P1_star = 0.0;
    double P_und = 0.0;
    double tau_star = 0.0;
    double closed_form_outage = 0.0;
    double mc_outage = 0.0;
    double mc_outage_se = 0.0;
    std::uint64_t seed = 0;
    double hybrid_objective = 0.0; ///< mean optimized surrogate of the hybrid design
    std::string status;            ///< "ok" or mode:reason entries separated by ';'
    bool has_rates = true;         ///< false for the outage-only experiment
};

struct ResultTable {
    std::vector<ResultRow> rows;

    static const std::vector<std::string> &columns();
    std::string to_csv() const;
};

ResultTable run_experiment(const ExperimentConfig &config);

/// Key-value manifest: resolved config, code version, kernel ISA and a timestamp line.
std::string make_manifest(const ExperimentConfig &config);

/// Writes the CSV, <output>.manifest and, if requested, <output>.plot.
/// Throws std::runtime_error when a file cannot be written.
void write_outputs(const ExperimentConfig &config, const ResultTable &table);

std::string version_string();

// ---------------------------------------------------------------------------
// Self-check battery
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool exact = true; ///< exact identity (SE-based tolerance) vs approximation band
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string note;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    std::string to_table() const;
};

/// Runs the closed-form-vs-oracle battery at desk scale. quick shrinks sample counts.
ValidationReport validate_suite(bool quick = false, std::uint64_t seed = 20240601);

} // namespace hybridcr
