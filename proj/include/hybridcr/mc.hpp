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

// Brute-force Monte Carlo references for the closed forms. Every estimator draws its
// randomness from per-index streams (master seed, realization or block index, salt),
// so estimates are bit-identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "hybridcr/config.hpp"
#include "hybridcr/optim.hpp"
#include "hybridcr/rates.hpp"
#include "hybridcr/types.hpp"

namespace hybridcr {

struct McSpec {
    std::size_t n_realizations = 2500; ///< outer channel realizations
    std::size_t n_inner = 400;         ///< inner h_ps draws per outer realization
    std::uint64_t seed = 1;
    bool report_se = true;
    unsigned workers = 0; ///< 0: one per hardware thread

    void validate() const;
};

struct McEstimate {
    double value = 0.0;
    double se = 0.0; ///< standard error of the mean (0 when report_se is off)
    std::size_t n = 0;
};

/// Mean and standard error of a sample vector, summed in index order.
McEstimate summarize(const std::vector<double> &samples, bool report_se = true);

/// How the primary-to-sensor gain h0 enters the sensing samples under H1.
enum class SensingFading {
    RayleighBlock, ///< h0 ~ CN(0, sigma0^2) drawn once per sensing interval
    MeanGain,      ///< |h0|^2 fixed at sigma0^2 (received samples CN(0, Pp sigma0^2 + N00))
};

struct EdEstimate {
    McEstimate Pf;
    McEstimate Pd;
    long N = 0;
};

/// Sample-level energy detector: y[n] = sqrt(Pp) h0 s[n] + v[n], s ~ CN(0,1), v ~ CN(0,N00),
/// statistic (1/N) sum |y[n]|^2 compared with epsilon. spec.n_realizations trials per hypothesis.
EdEstimate mc_ed_probabilities(long N, double epsilon, const SystemConfig &cfg, const McSpec &spec,
                               SensingFading fading = SensingFading::RayleighBlock);

/// Powers used by the secondary after each sensing decision, and the detection probability.
struct OutageDesign {
    double Pd = 0.0;
    double power_idle = 0.0; ///< after deciding "idle" (missed detection when the primary is on)
    double power_busy = 0.0; ///< after deciding "busy"
};

OutageDesign outage_design(const DesignSolution &sol, const SystemConfig &cfg);

/// Pr(Pp |h_pp|^2 / (N0p + P |v' h_sp|^2) < gamma0) with MRC v at the primary receiver and
/// P drawn per realization: power_busy with probability Pd, else power_idle.
/// spec.n_realizations samples.
McEstimate mc_outage(const OutageDesign &design, const SystemConfig &cfg, const CorrelationSet &corr,
                     const McSpec &spec);

McEstimate mc_outage(const DesignSolution &sol, const SystemConfig &cfg, const CorrelationSet &corr,
                     const McSpec &spec);

/// E[h' R_sp h / |h|^2] for h ~ CN(0, R_pp); spec.n_realizations samples.
McEstimate mc_lambda_bar(const CMat &R_pp, const CMat &R_sp, const McSpec &spec);

/// E[ln(1 + P |w' h_ss|^2 / (N0s + Pp |w' h_ps|^2))] over h_ps (nats); spec.n_realizations samples.
McEstimate mc_interfered_log(const RateContext &ctx, const CVec &w, double P, const McSpec &spec);

/// Rate of a design given h_ss, averaged over h_ps only (bits/s/Hz); spec.n_realizations samples.
McEstimate mc_conditional_rate(const CVec &h_ss, const DesignSolution &sol, const SystemConfig &cfg,
                               const CorrelationSet &corr, const McSpec &spec);

/// Designs the system for one realization of h_ss.
using Designer = std::function<DesignSolution(const CVec &h_ss)>;

struct SystemRateEstimate {
    McEstimate rate;             ///< bits/s/Hz, averaged over every channel
    double mean_tau = 0.0;       ///< over feasible realizations
    double mean_objective = 0.0; ///< optimized surrogate, over feasible realizations
    std::size_t infeasible = 0;  ///< realizations whose design threw InfeasibleConstraint (rate 0)
    double min_outage = 0.0;     ///< reported by the infeasible designs
};

/// End-to-end ergodic rate: spec.n_realizations draws of h_ss, each designed by `designer`
/// and evaluated over spec.n_inner draws of h_ps with the design's branch weights.
SystemRateEstimate mc_secondary_rate(const Designer &designer, const SystemConfig &cfg, const CorrelationSet &corr,
                                     const McSpec &spec);

/// Stream salts; realizations with the same (seed, index) see the same h_ss across modes.
namespace salt {
inline constexpr std::uint64_t kSecondary = 0x7373;   // h_ss
inline constexpr std::uint64_t kInterference = 0x7073; // h_ps
inline constexpr std::uint64_t kPrimary = 0x7070;      // h_pp, h_sp
inline constexpr std::uint64_t kSensing = 0x6564;      // energy detector
inline constexpr std::uint64_t kDecision = 0x6463;     // detection coin
} // namespace salt

} // namespace hybridcr
