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

#include <boost/math/special_functions/gamma.hpp>

#include "hybridcr/channel.hpp"
#include "hybridcr/kernels.hpp"
#include "hybridcr/mc.hpp"
#include "hybridcr/outage.hpp"
#include "hybridcr/parallel.hpp"

using namespace hybridcr;

namespace {

McSpec small_spec(std::size_t n, unsigned workers = 1) {
    McSpec s;
    s.n_realizations = n;
    s.n_inner = 50;
    s.seed = 77;
    s.workers = workers;
    return s;
}

bool same(const McEstimate &a, const McEstimate &b) { return a.value == b.value && a.se == b.se && a.n == b.n; }

} // namespace

TEST_CASE("summarize") {
    const McEstimate e = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(e.value == doctest::Approx(2.5));
    CHECK(e.se == doctest::Approx(std::sqrt(1.25 / 3.0)).epsilon(1e-12));
    CHECK(e.n == 4);
    CHECK(summarize({1.0, 2.0}, false).se == 0.0);
    McSpec bad;
    bad.n_inner = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
}

TEST_CASE("parallel_for covers every index and rethrows") {
    std::vector<int> hit(1000, 0);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
    for (int h : hit) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](std::size_t i) {
                                     if (i == 37) throw DomainError("x");
                                 }),
                    DomainError);
}

TEST_CASE("energy detector simulation") {
    const SystemConfig cfg;
    const long N = 200;
    const double eps = 1.1;
    const EdEstimate e = mc_ed_probabilities(N, eps, cfg, small_spec(20000, 4));
    CHECK(e.N == N);
    // Exact: N * statistic ~ Gamma(N, N00) under H0.
    const double pf = boost::math::gamma_q(static_cast<double>(N), N * eps);
    CHECK(std::abs(e.Pf.value - pf) < 4.0 * std::sqrt(pf * (1 - pf) / 20000.0));
    // Mean-gain H1: Gamma(N, Pp sigma0^2 + N00).
    const double delta = cfg.N00 + cfg.P_p * cfg.sigma0_sq;
    const double thr = 5.5;
    const EdEstimate m = mc_ed_probabilities(N, thr, cfg, small_spec(20000, 4), SensingFading::MeanGain);
    const double pd = boost::math::gamma_q(static_cast<double>(N), N * thr / delta);
    CHECK(std::abs(m.Pd.value - pd) < 4.0 * std::sqrt(pd * (1 - pd) / 20000.0) + 1e-4);
    // Rayleigh block fading: Pr(N00 + Pp |h0|^2 well above thr) dominates for large N.
    const EdEstimate r = mc_ed_probabilities(6000, thr, cfg, small_spec(20000, 4));
    const double approx = std::exp(-(thr - cfg.N00) / (cfg.P_p * cfg.sigma0_sq));
    CHECK(r.Pd.value == doctest::Approx(approx).epsilon(0.05));
}

TEST_CASE("Monte Carlo estimates are independent of the worker count") {
    const SystemConfig cfg;
    const CorrelationSet corr = default_correlation(cfg);
    for (unsigned w : {2u, 3u, 8u}) {
        CHECK(same(mc_outage(OutageDesign{0.9, 10.0, 2.0}, cfg, corr, small_spec(3000, 1)),
                   mc_outage(OutageDesign{0.9, 10.0, 2.0}, cfg, corr, small_spec(3000, w))));
        const EdEstimate a = mc_ed_probabilities(100, 1.2, cfg, small_spec(500, 1));
        const EdEstimate b = mc_ed_probabilities(100, 1.2, cfg, small_spec(500, w));
        CHECK(same(a.Pf, b.Pf));
        CHECK(same(a.Pd, b.Pd));
        CHECK(same(mc_lambda_bar(corr.R_pp, corr.R_sp, small_spec(500, 1)),
                   mc_lambda_bar(corr.R_pp, corr.R_sp, small_spec(500, w))));
    }
    // And of the kernel ISA.
    const auto saved = kernels::active_isa();
    kernels::set_active_isa(kernels::Isa::Scalar);
    const McEstimate s = mc_outage(OutageDesign{0.9, 10.0, 2.0}, cfg, corr, small_spec(3000, 2));
    kernels::set_active_isa(kernels::best_available_isa());
    const McEstimate v = mc_outage(OutageDesign{0.9, 10.0, 2.0}, cfg, corr, small_spec(3000, 2));
    kernels::set_active_isa(saved);
    CHECK(same(s, v));
}

TEST_CASE("outage and interference oracles track the closed forms") {
    const SystemConfig cfg;
    const CorrelationSet corr = default_correlation(cfg);
    const OutageModel model = build_outage_model(corr, cfg);
    const McSpec spec = small_spec(40000, 4);
    const McEstimate g = mc_outage(OutageDesign{0.0, 0.0, 0.0}, cfg, corr, spec);
    CHECK(std::abs(g.value - model.G) < 4.0 * std::sqrt(model.G * (1 - model.G) / 40000.0));
    const McEstimate lb = mc_lambda_bar(corr.R_pp, corr.R_sp, spec);
    CHECK(std::abs(lb.value - model.lambda_bar) < 4.0 * lb.se);

    Rng rng(4);
    const CVec h = ChannelSampler::correlated(matrix_sqrt(corr.R_ss), rng);
    const RateContext ctx = RateContext::make(cfg, corr.R_ps, h, {}, 3.0);
    const McEstimate il = mc_interfered_log(ctx, ctx.w1, 3.0, spec);
    CHECK(std::abs(il.value - rate_case1_exact(ctx).C11) < 4.0 * il.se);
}

TEST_CASE("conditional design rate matches the exact weighting") {
    const SystemConfig cfg;
    const CorrelationSet corr = default_correlation(cfg);
    const OutageModel model = build_outage_model(corr, cfg);
    Rng rng(12);
    const CVec h = ChannelSampler::correlated(matrix_sqrt(corr.R_ss), rng);
    const RateContext ctx = RateContext::make(cfg, corr.R_ps, h);
    for (SystemMode mode : {SystemMode::Hybrid, SystemMode::Interweave, SystemMode::Underlay}) {
        const DesignSolution sol = optimize_mode(mode, model, ctx, cfg);
        const McEstimate r = mc_conditional_rate(h, sol, cfg, corr, small_spec(40000, 4));
        INFO(mode_name(mode));
        CHECK(std::abs(r.value - sol.objective_exact) < 4.0 * r.se);
    }
}

TEST_CASE("outage design mapping") {
    const SystemConfig cfg;
    DesignSolution hybrid;
    hybrid.mode = SystemMode::Hybrid;
    hybrid.P1_star = 2.0;
    hybrid.constraint_report.Pd = 0.975;
    const OutageDesign h = outage_design(hybrid, cfg);
    CHECK(h.Pd == 0.975);
    CHECK(h.power_idle == cfg.P_peak);
    CHECK(h.power_busy == 2.0);
    DesignSolution under = hybrid;
    under.mode = SystemMode::Underlay;
    under.constraint_report.Pd = 1.0;
    CHECK(outage_design(under, cfg).power_busy == 2.0);
    CHECK(outage_design(under, cfg).Pd == 1.0);
}

TEST_CASE("system rate counts infeasible realizations") {
    const SystemConfig cfg;
    const CorrelationSet corr = default_correlation(cfg);
    const Designer failing = [&](const CVec &) -> DesignSolution {
        throw InfeasibleConstraint("test", 0.5);
    };
    const SystemRateEstimate e = mc_secondary_rate(failing, cfg, corr, small_spec(10));
    CHECK(e.infeasible == 10);
    CHECK(e.rate.value == 0.0);
    CHECK(e.min_outage == 0.5);

    const OutageModel model = build_outage_model(corr, cfg);
    const Designer underlay = [&](const CVec &h) {
        return optimize_underlay(model, RateContext::make(cfg, corr.R_ps, h), cfg);
    };
    const SystemRateEstimate a = mc_secondary_rate(underlay, cfg, corr, small_spec(50, 1));
    const SystemRateEstimate b = mc_secondary_rate(underlay, cfg, corr, small_spec(50, 4));
    CHECK(a.infeasible == 0);
    CHECK(a.rate.value > 0.0);
    CHECK(same(a.rate, b.rate));
}
