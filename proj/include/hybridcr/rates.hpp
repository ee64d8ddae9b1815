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

// Rates conditioned on the secondary link h_ss, averaged over the primary-to-secondary
// interference channel h_ps ~ CN(0, R_ps). Everything below is in nats unless the
// name says bits.

#include "hybridcr/config.hpp"
#include "hybridcr/sensing.hpp"
#include "hybridcr/types.hpp"

namespace hybridcr {

struct RateContext {
    CVec h_ss;
    CMat R_ps;
    double rho_inr_s = 0.0; ///< Pp / N0s
    double N0s = 1.0;
    double P_peak = 0.0;
    CVec w1;         ///< receive beamformer used after a busy decision
    double P1 = 0.0; ///< secondary power after a busy decision

    double Pp() const { return rho_inr_s * N0s; }
    void validate() const;

    /// Context from a configuration; w1 defaults to MRC when empty.
    static RateContext make(const SystemConfig &cfg, const CMat &R_ps, const CVec &h_ss, const CVec &w1 = {},
                            double P1 = 0.0);
};

/// h / |h|, or e_1 for h = 0.
CVec mrc(const CVec &h);

struct Case0Rates {
    double C00 = 0.0;         ///< idle primary, MRC at P_peak
    double C01 = 0.0;         ///< active primary, Jensen lower bound
    double weighted_bits = 0.0; ///< (alpha0 C00 + beta0 C01) / ln 2
};

/// Transmission after an idle decision (MRC, P_peak). Zero h_ss gives all zeros.
Case0Rates rate_case0_bound(const RateContext &ctx, double alpha0 = 0.0, double beta0 = 0.0);

/// Exact mean of ln(1 + P_peak |h|^2 / (N0s + Pp |w0' h_ps|^2)) with w0 = MRC.
double rate_case0_exact_c01(const RateContext &ctx);

/// E[ln(1 + a / (1 + X))] for X exponential with mean r (interference-to-noise ratio):
///   ln(1 + a) + e^{(1+a)/r} E1((1+a)/r) - e^{1/r} E1(1/r);  r = 0 gives ln(1 + a).
double interfered_log_mean(double a, double r);

struct Case1Rates {
    double C10 = 0.0;
    double C11 = 0.0;
};

/// Transmission after a busy decision with (w1, P1). Exact in h_ps.
Case1Rates rate_case1_exact(const RateContext &ctx);

struct Case1HighInr {
    double D10 = 0.0; ///< equals C10
    double D11 = 0.0; ///< ln x + e^x E1(x) + gamma, x = (1 + a)/r
};

/// High-INR surrogate of rate_case1_exact. For r = w1' rho_inr R_ps w1 = 0, D11 = D10.
Case1HighInr rate_case1_highinr(const RateContext &ctx);

enum class RateMode { Exact, HighInr };

/// Lower bound on the conditional rate, bits/s/Hz:
/// [alpha0 C00 + beta0 C01 + alpha1 C10 + beta1 C11] / ln 2, with (D10, D11) in HighInr mode.
double objective_C(const RateContext &ctx, const FrameCoefficients &coeff, RateMode mode = RateMode::Exact);

/// Same weighting but with the exact C01 instead of the Jensen bound: the true
/// conditional ergodic rate given h_ss, bits/s/Hz.
double conditional_rate_exact(const RateContext &ctx, const FrameCoefficients &coeff);

} // namespace hybridcr
