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

#include <string>

#include "hybridcr/config.hpp"
#include "hybridcr/numerics.hpp"
#include "hybridcr/types.hpp"

namespace hybridcr {

/// Precomputed quantities for the primary-receiver outage approximations.
///
/// With Z = |h_pp|^2 (a sum of independent exponentials with means eigs_pp) and the
/// MRC-projected interference approximated as exponential with mean lambda_bar,
///   F(x) = exp(N0p/(x lambda_bar)) E[exp(-Pp Z/(gamma0 x lambda_bar))]
/// and G = Pr(Pp/N0p Z < gamma0).
struct OutageModel {
    CMat R_pp;
    CMat R_sp;
    double lambda_bar = 0.0;
    RVec eigs_pp; ///< ascending
    double gamma0 = 0.0;
    double Pp = 0.0;
    double N0p = 0.0;

    /// Smallest pairwise eigenvalue gap of R_pp relative to the largest eigenvalue.
    double min_rel_gap = 0.0;
    /// True when min_rel_gap < kDegenerateGap; F and G then switch from partial fractions
    /// to the product (Laplace transform) and matrix-exponential forms.
    bool degenerate = false;
    static constexpr double kDegenerateGap = 1e-2;

    double G = 0.0;          ///< no-interference outage
    double P_min_mono = 0.0; ///< minimizer of F; F is increasing beyond it (+inf if none)
    double F_min = 0.0;      ///< F(P_min_mono)

    double rho_snr_p() const { return Pp / N0p; }
    /// "partial-fraction" or "product/phase-type".
    std::string method() const { return degenerate ? "product/phase-type" : "partial-fraction"; }
};

/// Builds the model; lambda_bar via ratio_quadform_mean(R_pp, R_pp^{1/2} R_sp R_pp^{1/2}).
OutageModel build_outage_model(const CorrelationSet &corr, const SystemConfig &cfg, const QuadratureSpec &quad = {});

/// F(x) clamped to [0,1]. x = 0 returns G. Negative x throws InvalidParameter.
double outage_F(const OutageModel &model, double x);

/// Unclamped ln F(x) for x > 0 (the selected evaluation path).
double log_outage_F(const OutageModel &model, double x);

/// ln F(x) by the explicit partial-fraction sum; requires distinct eigenvalues.
double log_outage_F_partial_fraction(const OutageModel &model, double x);

/// ln F(x) by the product over eigenvalues; valid for repeated eigenvalues.
double log_outage_F_product(const OutageModel &model, double x);

/// No-interference outage G (cached in the model).
double outage_G(const OutageModel &model);

/// G by the partial-fraction hypoexponential CDF (distinct eigenvalues).
double outage_G_partial_fraction(const RVec &eigs, double threshold);

/// G as a phase-type CDF 1 - e1' exp(S t) 1 with a bidiagonal sub-generator; valid
/// for repeated eigenvalues. threshold = gamma0 / rho_snr_p.
double outage_G_phase_type(const RVec &eigs, double threshold);

/// (1 - Pd) F(P0) + Pd F(P1), clamped.
double outage_hybrid(const OutageModel &model, double Pd, double P0, double P1);

/// (1 - Pd) F(P_peak) + Pd G.
double outage_interweave(const OutageModel &model, double Pd, double P_peak);

/// F(P_und).
double outage_underlay(const OutageModel &model, double P_und);

} // namespace hybridcr
