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

#include "hybridcr/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hybridcr/channel.hpp"
#include "hybridcr/kernels.hpp"
#include "hybridcr/numerics.hpp"
#include "hybridcr/outage.hpp"
#include "hybridcr/rng.hpp"

#ifndef HYBRIDCR_VERSION
#define HYBRIDCR_VERSION "unknown"
#endif

namespace hybridcr {

std::string version_string() { return HYBRIDCR_VERSION; }

namespace {

struct IdName {
    ExperimentId id;
    std::string_view name;
};

constexpr IdName kIds[] = {
    {ExperimentId::Fig2OutageApprox, "fig2_outage_approx"},
    {ExperimentId::Fig3RateVsPoutLowAct, "fig3_rate_vs_pout_lowact"},
    {ExperimentId::Fig4RateVsPoutHighAct, "fig4_rate_vs_pout_highact"},
    {ExperimentId::Fig5RateVsActivity, "fig5_rate_vs_activity"},
    {ExperimentId::Fig6PowerVsPout, "fig6_power_vs_pout"},
    {ExperimentId::CustomSweep, "custom_sweep"},
};

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string_view experiment_name(ExperimentId id) {
    for (const auto &e : kIds)
        if (e.id == id) return e.name;
    return "unknown";
}

ExperimentId parse_experiment_id(std::string_view name) {
    for (const auto &e : kIds)
        if (e.name == name) return e.id;
    throw InvalidParameter("unknown experiment id '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

double parse_value(std::string_view text) {
    std::string s = trim(text);
    bool db = false;
    if (s.size() >= 2) {
        std::string tail = s.substr(s.size() - 2);
        std::transform(tail.begin(), tail.end(), tail.begin(), [](unsigned char c) { return std::tolower(c); });
        if (tail == "db") {
            db = true;
            s = trim(s.substr(0, s.size() - 2));
        }
    }
    double v = 0.0;
    const char *first = s.data();
    const char *last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (s.empty() || res.ec != std::errc() || res.ptr != last)
        throw InvalidParameter("malformed number '" + std::string(text) + "'");
    return db ? db_to_linear(v) : v;
}

namespace {

struct Field {
    std::string_view name;
    double SystemConfig::*member;
};

constexpr Field kFields[] = {
    {"T", &SystemConfig::T},
    {"f_s", &SystemConfig::f_s},
    {"N00", &SystemConfig::N00},
    {"N0p", &SystemConfig::N0p},
    {"N0s", &SystemConfig::N0s},
    {"P_p", &SystemConfig::P_p},
    {"P_peak", &SystemConfig::P_peak},
    {"sigma0_sq", &SystemConfig::sigma0_sq},
    {"gamma0", &SystemConfig::gamma0},
    {"P1_prior", &SystemConfig::P1_prior},
    {"Pout_target", &SystemConfig::Pout_target},
    {"Pd_target", &SystemConfig::Pd_target},
    {"rho", &SystemConfig::rho},
};

} // namespace

void set_system_field(SystemConfig &cfg, std::string_view name, double value) {
    if (name == "M") {
        if (value != std::floor(value) || value < 1 || value > 1024)
            throw InvalidParameter("M must be a positive integer");
        cfg.M = static_cast<int>(value);
        return;
    }
    for (const auto &f : kFields)
        if (f.name == name) {
            cfg.*(f.member) = value;
            return;
        }
    throw InvalidParameter("unknown system parameter '" + std::string(name) + "'");
}

double get_system_field(const SystemConfig &cfg, std::string_view name) {
    if (name == "M") return cfg.M;
    for (const auto &f : kFields)
        if (f.name == name) return cfg.*(f.member);
    throw InvalidParameter("unknown system parameter '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
    system.validate();
    mc.validate();
    if (sweep.values.empty()) throw InvalidParameter("sweep grid is empty");
    for (std::size_t i = 1; i < sweep.values.size(); ++i)
        if (!(sweep.values[i] > sweep.values[i - 1])) throw InvalidParameter("sweep grid must be strictly increasing");
    SystemConfig probe = system;
    for (double v : sweep.values) {
        set_system_field(probe, sweep.axis, v);
        probe.validate();
    }
    if (output.empty()) throw InvalidParameter("output path is empty");
}

ExperimentConfig default_experiment(ExperimentId id) {
    ExperimentConfig c;
    c.id = id;
    c.output = std::string(experiment_name(id)) + ".csv";
    const std::vector<double> pout_grid = {0.01, 0.04, 0.07, 0.10, 0.13, 0.16, 0.19, 0.22, 0.25};
    switch (id) {
    case ExperimentId::Fig2OutageApprox:
        c.sweep.axis = "gamma0";
        for (int db = 0; db <= 10; ++db) c.sweep.values.push_back(db_to_linear(db));
        c.mc.n_realizations = 100000;
        break;
    case ExperimentId::Fig3RateVsPoutLowAct:
        c.system.P1_prior = 0.3;
        c.sweep = {"Pout_target", pout_grid};
        break;
    case ExperimentId::Fig4RateVsPoutHighAct:
        c.system.P1_prior = 0.7;
        c.sweep = {"Pout_target", pout_grid};
        break;
    case ExperimentId::Fig5RateVsActivity:
        c.system.Pout_target = 0.02;
        c.sweep = {"P1_prior", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}};
        break;
    case ExperimentId::Fig6PowerVsPout:
        c.system.P1_prior = 0.3;
        c.sweep = {"Pout_target", {0.01, 0.03, 0.05, 0.075, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35}};
        break;
    case ExperimentId::CustomSweep:
        c.sweep = {"Pout_target", {0.02}};
        break;
    }
    return c;
}

namespace {

std::vector<double> parse_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(parse_value(item));
    return out;
}

std::uint64_t parse_u64(const std::string &text, const char *what) {
    const std::string s = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw InvalidParameter(std::string("malformed integer for ") + what + ": '" + text + "'");
    return v;
}

bool parse_bool(const std::string &text) {
    std::string s = trim(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw InvalidParameter("malformed boolean '" + text + "'");
}

} // namespace

ExperimentConfig parse_experiment_config(std::istream &in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw InvalidParameter(std::string("malformed config: ") + e.what());
    }
    for (const auto &[section, _] : tree)
        if (section != "experiment" && section != "system" && section != "sweep" && section != "mc" &&
            section != "solver")
            throw InvalidParameter("unknown config section [" + section + "]");

    const auto id_text = tree.get_optional<std::string>("experiment.id");
    if (!id_text) throw InvalidParameter("config is missing [experiment] id");
    ExperimentConfig c = default_experiment(parse_experiment_id(trim(*id_text)));

    if (auto s = tree.get_child_optional("experiment"))
        for (const auto &[key, node] : *s) {
            const std::string v = node.get_value<std::string>();
            if (key == "id") continue;
            if (key == "output") c.output = trim(v);
            else if (key == "plot") c.plot = parse_bool(v);
            else if (key == "outage_samples") c.outage_samples = parse_u64(v, "outage_samples");
            else throw InvalidParameter("unknown key experiment." + key);
        }
    if (auto s = tree.get_child_optional("system"))
        for (const auto &[key, node] : *s) set_system_field(c.system, key, parse_value(node.get_value<std::string>()));
    if (auto s = tree.get_child_optional("sweep"))
        for (const auto &[key, node] : *s) {
            const std::string v = node.get_value<std::string>();
            if (key == "axis") {
                c.sweep.axis = trim(v);
                get_system_field(c.system, c.sweep.axis); // reject unknown axes early
            } else if (key == "values") {
                c.sweep.values = parse_list(v);
            } else {
                throw InvalidParameter("unknown key sweep." + key);
            }
        }
    if (auto s = tree.get_child_optional("mc"))
        for (const auto &[key, node] : *s) {
            const std::string v = node.get_value<std::string>();
            if (key == "n_realizations") c.mc.n_realizations = parse_u64(v, "n_realizations");
            else if (key == "n_inner") c.mc.n_inner = parse_u64(v, "n_inner");
            else if (key == "seed") c.mc.seed = parse_u64(v, "seed");
            else if (key == "workers") c.mc.workers = static_cast<unsigned>(parse_u64(v, "workers"));
            else if (key == "report_se") c.mc.report_se = parse_bool(v);
            else throw InvalidParameter("unknown key mc." + key);
        }
    if (auto s = tree.get_child_optional("solver"))
        for (const auto &[key, node] : *s) {
            const std::string v = node.get_value<std::string>();
            if (key == "xi_bits") c.solver.xi_bits = parse_value(v);
            else if (key == "max_outer") c.solver.max_outer = static_cast<int>(parse_u64(v, "max_outer"));
            else if (key == "scf_max_iter") c.solver.scf_max_iter = static_cast<int>(parse_u64(v, "scf_max_iter"));
            else if (key == "random_starts") c.solver.random_starts = static_cast<int>(parse_u64(v, "random_starts"));
            else throw InvalidParameter("unknown key solver." + key);
        }
    c.validate();
    return c;
}

ExperimentConfig load_experiment_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    return parse_experiment_config(in);
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

const std::vector<std::string> &ResultTable::columns() {
    static const std::vector<std::string> cols = {
        "sweep_value",   "hybrid_rate",  "interweave_rate",    "underlay_rate", "hybrid_rate_se",
        "interweave_rate_se", "underlay_rate_se", "P1_star", "P_und",        "tau_star",
        "closed_form_outage", "mc_outage",    "mc_outage_se",       "seed",          "hybrid_objective",
        "status"};
    return cols;
}

std::string ResultTable::to_csv() const {
    std::string out;
    const auto &cols = columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += "\n";
    for (const auto &r : rows) {
        auto rate = [&](double v) { return r.has_rates ? fmt(v) : std::string(); };
        const std::vector<std::string> f = {fmt(r.sweep_value),
                                            rate(r.hybrid_rate),
                                            rate(r.interweave_rate),
                                            rate(r.underlay_rate),
                                            rate(r.hybrid_rate_se),
                                            rate(r.interweave_rate_se),
                                            rate(r.underlay_rate_se),
                                            fmt(r.P1_star),
                                            fmt(r.P_und),
                                            fmt(r.tau_star),
                                            fmt(r.closed_form_outage),
                                            fmt(r.mc_outage),
                                            fmt(r.mc_outage_se),
                                            std::to_string(r.seed),
                                            rate(r.hybrid_objective),
                                            r.status};
        for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + csv_field(f[i]);
        out += "\n";
    }
    return out;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void add_status(std::string &status, std::string_view mode, std::string_view what) {
    if (!status.empty()) status += ";";
    status += std::string(mode) + ":" + std::string(what);
}

std::string infeasible_note(double min_outage) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "infeasible(min_outage=%.6g)", min_outage);
    return buf;
}

ResultRow outage_row(const ExperimentConfig &ec, const SystemConfig &cfg, const CorrelationSet &corr,
                     const OutageModel &model) {
    ResultRow row;
    row.has_rates = false;
    row.P1_star = kNaN;
    row.P_und = kNaN;
    row.tau_star = kNaN;
    row.closed_form_outage = outage_F(model, cfg.P_peak);
    McSpec spec = ec.mc;
    if (ec.outage_samples) spec.n_realizations = ec.outage_samples;
    const McEstimate e = mc_outage(OutageDesign{0.0, cfg.P_peak, cfg.P_peak}, cfg, corr, spec);
    row.mc_outage = e.value;
    row.mc_outage_se = e.se;
    row.status = "ok";
    return row;
}

ResultRow rate_row(const ExperimentConfig &ec, const SystemConfig &cfg, const CorrelationSet &corr,
                   const OutageModel &model) {
    ResultRow row;
    std::string status;
    try {
        row.P1_star = solve_power(model, cfg);
        row.closed_form_outage = outage_hybrid(model, cfg.Pd_target, cfg.P_peak, row.P1_star);
        McSpec spec = ec.mc;
        spec.n_realizations = ec.outage_samples ? ec.outage_samples : ec.mc.n_realizations * ec.mc.n_inner;
        const McEstimate e = mc_outage(OutageDesign{cfg.Pd_target, cfg.P_peak, row.P1_star}, cfg, corr, spec);
        row.mc_outage = e.value;
        row.mc_outage_se = e.se;
    } catch (const InfeasibleConstraint &e) {
        row.P1_star = kNaN;
        row.closed_form_outage = kNaN;
        row.mc_outage = kNaN;
        row.mc_outage_se = kNaN;
    }
    try {
        row.P_und = solve_power_pd(model, cfg, 1.0);
    } catch (const InfeasibleConstraint &) {
        row.P_und = kNaN;
    }

    for (SystemMode mode : {SystemMode::Hybrid, SystemMode::Interweave, SystemMode::Underlay}) {
        const Designer designer = [&](const CVec &h_ss) {
            const RateContext ctx = RateContext::make(cfg, corr.R_ps, h_ss);
            return optimize_mode(mode, model, ctx, cfg, ec.solver);
        };
        const SystemRateEstimate est = mc_secondary_rate(designer, cfg, corr, ec.mc);
        if (est.infeasible) add_status(status, mode_name(mode), infeasible_note(est.min_outage));
        switch (mode) {
        case SystemMode::Hybrid:
            row.hybrid_rate = est.rate.value;
            row.hybrid_rate_se = est.rate.se;
            row.tau_star = est.infeasible == est.rate.n ? kNaN : est.mean_tau;
            row.hybrid_objective = est.mean_objective;
            break;
        case SystemMode::Interweave:
            row.interweave_rate = est.rate.value;
            row.interweave_rate_se = est.rate.se;
            break;
        case SystemMode::Underlay:
            row.underlay_rate = est.rate.value;
            row.underlay_rate_se = est.rate.se;
            break;
        }
    }
    row.status = status.empty() ? "ok" : status;
    return row;
}

} // namespace

ResultTable run_experiment(const ExperimentConfig &ec) {
    ec.validate();
    ResultTable table;
    for (double v : ec.sweep.values) {
        SystemConfig cfg = ec.system;
        set_system_field(cfg, ec.sweep.axis, v);
        cfg.validate();
        const CorrelationSet corr = default_correlation(cfg);
        const OutageModel model = build_outage_model(corr, cfg);
        ResultRow row = ec.id == ExperimentId::Fig2OutageApprox ? outage_row(ec, cfg, corr, model)
                                                                : rate_row(ec, cfg, corr, model);
        row.sweep_value = v;
        row.seed = ec.mc.seed;
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string make_manifest(const ExperimentConfig &c) {
    std::ostringstream os;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "[run]\n"
       << "version = " << version_string() << "\n"
       << "kernel_isa = " << kernels::isa_name(kernels::active_isa()) << "\n"
       << "timestamp = " << stamp << "\n\n";
    os << "[experiment]\n"
       << "id = " << experiment_name(c.id) << "\n"
       << "output = " << c.output << "\n"
       << "plot = " << (c.plot ? "true" : "false") << "\n"
       << "outage_samples = " << c.outage_samples << "\n\n";
    os << "[system]\n"
       << "M = " << c.system.M << "\n";
    for (const auto &f : kFields) os << f.name << " = " << fmt(c.system.*(f.member)) << "\n";
    os << "\n[sweep]\n"
       << "axis = " << c.sweep.axis << "\n"
       << "values = ";
    for (std::size_t i = 0; i < c.sweep.values.size(); ++i) os << (i ? ", " : "") << fmt(c.sweep.values[i]);
    os << "\n\n[mc]\n"
       << "n_realizations = " << c.mc.n_realizations << "\n"
       << "n_inner = " << c.mc.n_inner << "\n"
       << "seed = " << c.mc.seed << "\n"
       << "workers = " << c.mc.workers << "\n"
       << "report_se = " << (c.mc.report_se ? "true" : "false") << "\n\n";
    os << "[solver]\n"
       << "xi_bits = " << fmt(c.solver.xi_bits) << "\n"
       << "max_outer = " << c.solver.max_outer << "\n"
       << "scf_max_iter = " << c.solver.scf_max_iter << "\n"
       << "random_starts = " << c.solver.random_starts << "\n";
    return os.str();
}

namespace {

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace

void write_outputs(const ExperimentConfig &c, const ResultTable &table) {
    write_file(c.output, table.to_csv());
    write_file(c.output + ".manifest", make_manifest(c));
    if (c.plot) {
        std::string p = "x,y,series\n";
        if (c.id == ExperimentId::Fig2OutageApprox) {
            p += "sweep_value,closed_form_outage,approximation\n";
            p += "sweep_value,mc_outage,monte_carlo\n";
        } else if (c.id == ExperimentId::Fig6PowerVsPout) {
            p += "sweep_value,P1_star,hybrid\n";
            p += "sweep_value,P_und,underlay\n";
        } else {
            p += "sweep_value,hybrid_rate,hybrid\n";
            p += "sweep_value,interweave_rate,interweave\n";
            p += "sweep_value,underlay_rate,underlay\n";
        }
        write_file(c.output + ".plot", p);
    }
}

// ---------------------------------------------------------------------------
// Validation battery
// ---------------------------------------------------------------------------

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

std::string ValidationReport::to_table() const {
    std::ostringstream os;
    char line[512];
    std::snprintf(line, sizeof line, "%-48s %-6s %14s %14s %11s  %s\n", "check", "kind", "value", "reference",
                  "tolerance", "result");
    os << line;
    for (const auto &c : checks) {
        std::snprintf(line, sizeof line, "%-48s %-6s %14.8g %14.8g %11.3g  %s%s%s\n", c.name.c_str(),
                      c.exact ? "exact" : "approx", c.value, c.reference, c.tolerance, c.passed ? "PASS" : "FAIL",
                      c.note.empty() ? "" : "  ", c.note.c_str());
        os << line;
    }
    os << (all_passed() ? "all checks passed\n" : "SOME CHECKS FAILED\n");
    return os.str();
}

namespace {

CheckResult within_se(std::string name, double closed, const McEstimate &mc, double k = 3.0) {
    CheckResult r;
    r.name = std::move(name);
    r.exact = true;
    r.value = closed;
    r.reference = mc.value;
    r.tolerance = k * mc.se;
    r.passed = std::abs(closed - mc.value) <= r.tolerance;
    return r;
}

// Probability check with the binomial standard error under the closed-form value, which
// stays meaningful for rare events where the sample SE can be zero.
CheckResult within_binomial(std::string name, double closed, const McEstimate &mc, double k = 3.0) {
    CheckResult r = within_se(std::move(name), closed, mc, k);
    r.tolerance = k * std::sqrt(closed * (1.0 - closed) / static_cast<double>(mc.n));
    r.passed = std::abs(closed - mc.value) <= r.tolerance;
    r.note = "binomial SE";
    return r;
}

CheckResult within_abs(std::string name, double value, double reference, double tol, bool exact) {
    CheckResult r;
    r.name = std::move(name);
    r.exact = exact;
    r.value = value;
    r.reference = reference;
    r.tolerance = tol;
    r.passed = std::abs(value - reference) <= tol;
    return r;
}

CheckResult within_rel(std::string name, double value, double reference, double rel) {
    CheckResult r = within_abs(std::move(name), value, reference, rel * std::abs(reference), false);
    r.note = "relative band";
    return r;
}

} // namespace

ValidationReport validate_suite(bool quick, std::uint64_t seed) {
    ValidationReport rep;
    const std::size_t n = quick ? 20000 : 100000;
    McSpec spec;
    spec.n_realizations = n;
    spec.seed = seed;

    const SystemConfig cfg;
    const CorrelationSet corr = default_correlation(cfg);
    const OutageModel model = build_outage_model(corr, cfg);
    Rng rng(seed, 0, 0x76616c);
    const ChannelSampler sampler(corr, cfg.sigma0_sq);

    // Energy detector, false alarm: exact chi-square tail vs its Gaussian form at u = 1.
    {
        const long N = 1000;
        const double eps = cfg.N00 * (1.0 + 1.0 / std::sqrt(static_cast<double>(N)));
        McSpec s = spec;
        s.n_realizations = quick ? 10000 : 40000;
        const EdEstimate ed = mc_ed_probabilities(N, eps, cfg, s);
        rep.checks.push_back(within_se("false alarm Q(sqrt(N)(eps/N00-1)), N=1000", false_alarm_prob(N, eps, cfg.N00),
                                       ed.Pf));
    }
    // Detection probability approximation at tau = 1 ms (unfaded-gain sample model).
    {
        const double tau = 1e-3;
        const long N = std::lround(tau * cfg.f_s);
        const Threshold th = threshold_for_target(tau, cfg);
        McSpec s = spec;
        s.n_realizations = quick ? 2000 : 8000;
        const EdEstimate ed = mc_ed_probabilities(N, th.epsilon, cfg, s, SensingFading::MeanGain);
        CheckResult c = within_abs("detection approx vs ED sim (mean gain), N=6000",
                                   detection_prob(static_cast<double>(N), th.epsilon, cfg.P_p, cfg.sigma0_sq, cfg.N00),
                                   ed.Pd.value, 0.05, false);
        rep.checks.push_back(c);
    }
    // No-interference outage G (exact).
    rep.checks.push_back(within_binomial("no-interference outage G", outage_G(model),
                                         mc_outage(OutageDesign{0.0, 0.0, 0.0}, cfg, corr, spec)));
    {
        SystemConfig hi = cfg;
        hi.gamma0 = db_to_linear(10.0);
        const OutageModel mh = build_outage_model(corr, hi);
        rep.checks.push_back(within_binomial("no-interference outage G, gamma0 = 10 dB", outage_G(mh),
                                             mc_outage(OutageDesign{0.0, 0.0, 0.0}, hi, corr, spec)));
    }
    // lambda_bar: quadrature vs sample mean.
    rep.checks.push_back(within_se("lambda_bar quadrature", model.lambda_bar, mc_lambda_bar(corr.R_pp, corr.R_sp, spec)));

    // Busy-branch exact rate and its mutation.
    {
        const CVec h = ChannelSampler::correlated(sampler.sqrt_ss(), rng);
        const RateContext ctx = RateContext::make(cfg, corr.R_ps, h, {}, 3.0);
        const Case1Rates r = rate_case1_exact(ctx);
        const McEstimate mc = mc_interfered_log(ctx, ctx.w1, ctx.P1, spec);
        rep.checks.push_back(within_se("busy-branch exact rate C11 (MRC)", r.C11, mc));

        const double a = ctx.P1 * std::norm(ctx.w1.dot(h)) / ctx.N0s;
        const double rr = ctx.rho_inr_s * std::real(ctx.w1.dot(ctx.R_ps * ctx.w1));
        const double mutated = std::log1p(a) + exp_e1((1.0 + a) / rr) + exp_e1(1.0 / rr);
        CheckResult m = within_se("mutation: C11 with flipped sign is rejected", mutated, mc);
        m.passed = !m.passed;
        m.note = "passes when the mutant fails";
        rep.checks.push_back(m);
    }
    // Underlay rate terms (exact) vs conditional MC at the solved power.
    {
        const CVec h = ChannelSampler::correlated(sampler.sqrt_ss(), rng);
        const RateContext ctx = RateContext::make(cfg, corr.R_ps, h);
        const DesignSolution und = optimize_underlay(model, ctx, cfg);
        rep.checks.push_back(within_se("underlay rate terms vs conditional MC", und.objective_exact,
                                       mc_conditional_rate(h, und, cfg, corr, spec)));
    }
    // Outage approximation at P_peak and the solved hybrid design.
    rep.checks.push_back(within_rel("outage approx F(P_peak), gamma0 = 3 dB", outage_F(model, cfg.P_peak),
                                    mc_outage(OutageDesign{0.0, cfg.P_peak, cfg.P_peak}, cfg, corr, spec).value,
                                    0.2));
    {
        const double P1 = solve_power(model, cfg);
        rep.checks.push_back(within_abs("hybrid outage equality at solved power",
                                        outage_hybrid(model, cfg.Pd_target, cfg.P_peak, P1), cfg.Pout_target, 1e-8,
                                        true));
        rep.checks.push_back(within_rel("hybrid outage approx vs MC", cfg.Pout_target,
                                        mc_outage(OutageDesign{cfg.Pd_target, cfg.P_peak, P1}, cfg, corr, spec).value,
                                        0.5));
    }
    // rho = 0: repeated eigenvalues take the guarded evaluation path.
    {
        SystemConfig c0 = cfg;
        c0.rho = 0.0;
        const CorrelationSet k0 = default_correlation(c0);
        const OutageModel m0 = build_outage_model(k0, c0);
        CheckResult g = within_binomial("rho=0 guarded G (phase-type)", outage_G(m0),
                                        mc_outage(OutageDesign{0.0, 0.0, 0.0}, c0, k0, spec));
        g.note = m0.degenerate ? "binomial SE, guard active" : "guard NOT active";
        g.passed = g.passed && m0.degenerate;
        rep.checks.push_back(g);
        rep.checks.push_back(within_rel("rho=0 guarded F(P_peak)", outage_F(m0, c0.P_peak),
                                        mc_outage(OutageDesign{0.0, c0.P_peak, c0.P_peak}, c0, k0, spec).value, 0.2));
    }
    // High-INR limit e^s E1(s) ~ -gamma - ln s.
    rep.checks.push_back(
        within_abs("high-INR limit at a = 1e4", exp_e1(1e-4), -kEulerGamma + std::log(1e4), 1e-3, true));
    // Sensing derivative vs central difference.
    {
        const CVec h = ChannelSampler::correlated(sampler.sqrt_ss(), rng);
        const RateContext ctx = RateContext::make(cfg, corr.R_ps, h, {}, solve_power(model, cfg));
        const SensingRateTerms t = sensing_rate_terms(ctx);
        const double tau = 2e-3, dt = 1e-7;
        const double fd = (sensing_objective(tau + dt, t, cfg) - sensing_objective(tau - dt, t, cfg)) / (2 * dt);
        const double an = sensing_derivative(tau, t, cfg);
        rep.checks.push_back(within_abs("sensing derivative vs finite difference", an, fd, 1e-6 * std::abs(fd), true));
    }
    // SIMD kernels agree with the scalar reference.
    {
        std::vector<std::complex<double>> x(1003);
        for (auto &v : x) v = rng.complex_normal();
        double avx = kernels::scalar::sum_abs2(x);
        std::string note = "avx2 unavailable, scalar only";
        if (kernels::isa_available(kernels::Isa::Avx2)) {
            avx = kernels::avx2::sum_abs2(x);
            note.clear();
        }
        CheckResult k = within_abs("kernel sum_abs2 avx2 vs scalar", avx, kernels::scalar::sum_abs2(x),
                                   1e-12 * kernels::scalar::sum_abs2(x), true);
        k.note = note;
        rep.checks.push_back(k);
    }
    return rep;
}

} // namespace hybridcr
