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

#include "hybridcr/config.hpp"

namespace hybridcr {

/// Time-fraction x probability weights of the four (truth, decision) branches:
/// alpha = primary idle, beta = primary active; index 0 = declared idle, 1 = declared busy.
struct FrameCoefficients {
    double alpha0 = 0.0;
    double beta0 = 0.0;
    double alpha1 = 0.0;
    double beta1 = 0.0;

    double sum() const { return alpha0 + beta0 + alpha1 + beta1; }
};

/// One operating point of the energy detector.
struct SensingDesign {
    double tau = 0.0;     ///< sensing time [s]
    double epsilon = 0.0; ///< threshold on the per-sample average energy
    double N = 0.0;       ///< tau * f_s, kept real
    double Pf = 0.0;
    double Pd = 0.0;
    FrameCoefficients coeff;
    bool epsilon_clamped = false; ///< requested threshold was negative and was set to 0

    /// Throws InvalidParameter if any documented invariant is broken.
    void validate(const SystemConfig &cfg) const;
};

/// Q(sqrt(N) (eps/N00 - 1)). eps may be +inf (never declare busy).
double false_alarm_prob(double N, double epsilon, double N00);

/// Q(sqrt(N) (eps/(Pp sigma0^2 + N00) - 1)).
double detection_prob(double N, double epsilon, double Pp, double sigma0_sq, double N00);

struct Threshold {
    double epsilon;
    bool clamped;
};

/// Threshold meeting the detection target Pd at sensing time tau:
/// eps = (N00 + Pp sigma0^2) (Q^{-1}(Pd)/sqrt(tau f_s) + 1), clamped at 0.
Threshold threshold_for_pd(double tau, double Pd, const SystemConfig &cfg);

/// threshold_for_pd with cfg.Pd_target.
Threshold threshold_for_target(double tau, const SystemConfig &cfg);

/// Smallest tau for which threshold_for_pd needs no clamping, never below one sample.
double min_sensing_time(double Pd, const SystemConfig &cfg);

/// Frame weights for a frame of length T with sensing time tau and threshold epsilon.
FrameCoefficients frame_coefficients(double tau, double epsilon, const SystemConfig &cfg);

/// Fully populated design at (tau, epsilon).
SensingDesign make_sensing_design(double tau, double epsilon, const SystemConfig &cfg, bool clamped = false);

/// Design at tau with the threshold chosen for detection probability Pd.
SensingDesign design_for_pd(double tau, double Pd, const SystemConfig &cfg);

} // namespace hybridcr
