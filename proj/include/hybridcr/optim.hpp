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

#include <cstdint>
#include <string_view>
#include <vector>

#include "hybridcr/config.hpp"
#include "hybridcr/outage.hpp"
#include "hybridcr/rates.hpp"
#include "hybridcr/sensing.hpp"
#include "hybridcr/types.hpp"

namespace hybridcr {

enum class SystemMode { Hybrid, Interweave, Underlay };
std::string_view mode_name(SystemMode mode);

enum class SolveStatus {
    Ok,    ///< outage constraint met (active or capped at P_peak)
    Slack, ///< constraint cannot bind; no sensing needed (interweave only)
};

struct ConstraintReport {
    double outage = 0.0; ///< closed-form primary outage at the returned design
    double Pd = 0.0;     ///< detection probability at the returned design
    double target = 0.0; ///< requested outage
};

struct DesignSolution {
    SystemMode mode = SystemMode::Hybrid;
    SolveStatus status = SolveStatus::Ok;
    double P1_star = 0.0; ///< power after a busy decision (underlay: P_und; interweave: 0, silent)
    double tau_star = 0.0;
    double eps_star = 0.0;
    CVec w1_star;
    FrameCoefficients weights; ///< branch weights of the design (underlay: tau = 0, always "busy")
    double objective = 0.0;    ///< optimized surrogate, bits/s/Hz
    double objective_bound = 0.0; ///< exact-mode lower bound (Jensen C01, exact C11), bits/s/Hz
    double objective_exact = 0.0; ///< conditional ergodic rate given h_ss, bits/s/Hz
    std::vector<double> trace;    ///< surrogate objective after each outer iteration
    ConstraintReport constraint_report;
    int iterations = 0;
    bool converged = true;
    bool bf_converged = true;
    bool tau_at_boundary = false;
    bool eps_clamped = false;
};

struct SolverOptions {
    double xi_bits = 1e-6;  ///< outer-loop stopping threshold
    int max_outer = 50;
    int scf_max_iter = 500;
    double scf_tol = 1e-12;
    int random_starts = 3;
    std::uint64_t seed = 0x6f7074696dULL; ///< random SCF starts
    double tau_rel_tol = 1e-10;          ///< golden section width in ln(tau)
};

// ---------------------------------------------------------------------------
// Power
// ---------------------------------------------------------------------------

/// Largest P1 <= P_peak meeting (1 - Pd) F(P_peak) + Pd F(P1) = Pout_target, searched on
/// the increasing branch of F. Throws InfeasibleConstraint with the minimum reachable outage.
double solve_power_pd(const OutageModel &model, const SystemConfig &cfg, double Pd);

/// solve_power_pd with cfg.Pd_target.
double solve_power(const OutageModel &model, const SystemConfig &cfg);

// ---------------------------------------------------------------------------
// Sensing
// ---------------------------------------------------------------------------

/// Rate terms (nats) entering the sensing objective for a fixed beamformer and power.
struct SensingRateTerms {
    double C00 = 0.0;
    double C01 = 0.0;
    double D10 = 0.0;
    double D11 = 0.0;
};

SensingRateTerms sensing_rate_terms(const RateContext &ctx);

/// C(tau, eps(tau)) in bits/s/Hz with eps chosen so that detection probability equals Pd.
double sensing_objective(double tau, const SensingRateTerms &terms, const SystemConfig &cfg, double Pd);
double sensing_objective(double tau, const SensingRateTerms &terms, const SystemConfig &cfg);

/// Closed-form d/dtau of sensing_objective (bits/s/Hz per second), valid where the
/// threshold is not clamped (tau >= min_sensing_time).
double sensing_derivative(double tau, const SensingRateTerms &terms, const SystemConfig &cfg, double Pd);
double sensing_derivative(double tau, const SensingRateTerms &terms, const SystemConfig &cfg);

struct SensingOptimum {
    double tau = 0.0;
    double epsilon = 0.0;
    double objective = 0.0;
    bool at_boundary = false;
};

/// Maximizes sensing_objective over [min_sensing_time(Pd), T] by golden section in ln(tau).
/// The objective is unimodal there: convex-increasing for the first few samples, then concave.
SensingOptimum optimize_sensing(const SensingRateTerms &terms, const SystemConfig &cfg, double Pd,
                                const SolverOptions &opts = {});

/// Sensing step for the hybrid design with ctx.w1 and ctx.P1 held fixed.
SensingOptimum optimize_sensing(const RateContext &ctx, const SystemConfig &cfg, const SolverOptions &opts = {});

// ---------------------------------------------------------------------------
// Beamforming
// ---------------------------------------------------------------------------

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Chords of f0(x) = a ln x and f1(x) = b (ln x + e^x E1(x)) over their eigenvalue ranges:
/// f0(x) >= kappa1 x + kappa2 on interval0, f1(x) >= mu1 x + mu2 on interval1.
struct SecantCoefficients {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    Interval interval0;
    Interval interval1;
};

SecantCoefficients secant_coefficients(const CMat &H_eff, const CMat &R_eff, double alpha1_hat, double beta1_hat);

/// H_eff = I + (P1/N0s) h_ss h_ss'.
CMat effective_H(const RateContext &ctx, double P1);

/// R_eff = rho_inr R_ps, ridge-regularized with 1e-9 tr/M when not positive definite.
CMat effective_R(const RateContext &ctx, bool *ridge_applied = nullptr);

/// High-INR busy-branch objective a ln(w'Hw) + b (ln x + e^x E1(x) + gamma), x = w'Hw / w'Rw.
double p5_objective(const CMat &H, const CMat &R, double alpha1_hat, double beta1_hat, const CVec &w);

/// Secant surrogate kappa1 w'Hw + mu1 w'Hw/w'Rw (+ intercepts + b gamma); never above p5_objective.
double p6_objective(const CMat &H, const CMat &R, const SecantCoefficients &sc, double beta1_hat, const CVec &w);

struct BeamformerResult {
    CVec w;
    double p6 = 0.0; ///< surrogate value at w
    double p5 = 0.0; ///< high-INR objective at w
    bool converged = false;
    int iterations = 0;
};

/// Maximizes p6_objective over unit vectors by damped self-consistent-field iteration
/// from MRC, DGE and opts.random_starts random vectors. ctx.P1 is the power.
BeamformerResult optimize_beamformer(const RateContext &ctx, double alpha1_hat, double beta1_hat,
                                     const SolverOptions &opts = {});

/// Beamformer for a fixed sensing pair (tau_hat, eps_hat) at power P1_star.
BeamformerResult optimize_beamformer(double tau_hat, double eps_hat, double P1_star, const RateContext &ctx,
                                     const SystemConfig &cfg, const SolverOptions &opts = {});

struct DgeResult {
    CVec w;
    double lambda = 0.0;
    bool ridge_applied = false;
};

/// Dominant generalized eigenvector of (I + (P1/N0s) h h', rho_inr R_ps).
DgeResult dge_beamformer(const RateContext &ctx, double P1);

// ---------------------------------------------------------------------------
// System designs
// ---------------------------------------------------------------------------

/// Joint power / sensing / beamformer design by alternating maximization.
DesignSolution alternating_optimize(const OutageModel &model, const RateContext &ctx, const SystemConfig &cfg,
                                    const SolverOptions &opts = {});

/// Sense-then-transmit design at P_peak with MRC; sensing time maximizes the frame rate.
DesignSolution optimize_interweave(const OutageModel &model, const RateContext &ctx, const SystemConfig &cfg,
                                   const SolverOptions &opts = {});

/// Always-transmit design at the largest power meeting the outage target.
DesignSolution optimize_underlay(const OutageModel &model, const RateContext &ctx, const SystemConfig &cfg,
                                 const SolverOptions &opts = {});

DesignSolution optimize_mode(SystemMode mode, const OutageModel &model, const RateContext &ctx,
                             const SystemConfig &cfg, const SolverOptions &opts = {});

} // namespace hybridcr
