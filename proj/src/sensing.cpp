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

#include "hybridcr/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hybridcr/numerics.hpp"

namespace hybridcr {

namespace {

void check_common(double N, double epsilon, double N00) {
    if (!(N > 0.0) || !std::isfinite(N)) throw DomainError("sample count N must be finite and > 0");
    if (!(N00 > 0.0)) throw DomainError("N00 must be > 0");
    if (!(epsilon >= 0.0)) throw DomainError("threshold epsilon must be >= 0");
}

double tail(double N, double epsilon, double level) {
    if (std::isinf(epsilon)) return 0.0;
    return q_function(std::sqrt(N) * (epsilon / level - 1.0));
}

} // namespace

double false_alarm_prob(double N, double epsilon, double N00) {
    check_common(N, epsilon, N00);
    return tail(N, epsilon, N00);
}

double detection_prob(double N, double epsilon, double Pp, double sigma0_sq, double N00) {
    check_common(N, epsilon, N00);
    if (Pp < 0.0 || sigma0_sq < 0.0) throw DomainError("Pp and sigma0_sq must be >= 0");
    return tail(N, epsilon, Pp * sigma0_sq + N00);
}

Threshold threshold_for_pd(double tau, double Pd, const SystemConfig &cfg) {
    if (!(tau > 0.0 && tau <= cfg.T)) throw DomainError("sensing time must lie in (0, T]");
    const double delta = cfg.N00 + cfg.P_p * cfg.sigma0_sq;
    const double eps = delta * (q_inverse(Pd) / std::sqrt(tau * cfg.f_s) + 1.0);
    if (eps < 0.0) return {0.0, true};
    return {eps, false};
}

Threshold threshold_for_target(double tau, const SystemConfig &cfg) {
    return threshold_for_pd(tau, cfg.Pd_target, cfg);
}

double min_sensing_time(double Pd, const SystemConfig &cfg) {
    const double xi = q_inverse(Pd);
    return std::max(xi * xi, 1.0) / cfg.f_s;
}

FrameCoefficients frame_coefficients(double tau, double epsilon, const SystemConfig &cfg) {
    if (!(tau >= 0.0 && tau <= cfg.T)) throw DomainError("sensing time must lie in [0, T]");
    const double f = (cfg.T - tau) / cfg.T;
    const double P1 = cfg.P1_prior;
    const double P0 = cfg.P0_prior();
    double Pf = 1.0, Pd = 1.0; // tau = 0: no sensing, every frame treated as busy
    if (tau > 0.0) {
        const double N = tau * cfg.f_s;
        Pf = false_alarm_prob(N, epsilon, cfg.N00);
        Pd = detection_prob(N, epsilon, cfg.P_p, cfg.sigma0_sq, cfg.N00);
    }
    return {f * P0 * (1.0 - Pf), f * P1 * (1.0 - Pd), f * P0 * Pf, f * P1 * Pd};
}

SensingDesign make_sensing_design(double tau, double epsilon, const SystemConfig &cfg, bool clamped) {
    SensingDesign d;
    d.tau = tau;
    d.epsilon = epsilon;
    d.N = tau * cfg.f_s;
    d.Pf = false_alarm_prob(d.N, epsilon, cfg.N00);
    d.Pd = detection_prob(d.N, epsilon, cfg.P_p, cfg.sigma0_sq, cfg.N00);
    d.coeff = frame_coefficients(tau, epsilon, cfg);
    d.epsilon_clamped = clamped;
    return d;
}

SensingDesign design_for_pd(double tau, double Pd, const SystemConfig &cfg) {
    const Threshold th = threshold_for_pd(tau, Pd, cfg);
    return make_sensing_design(tau, th.epsilon, cfg, th.clamped);
}

void SensingDesign::validate(const SystemConfig &cfg) const {
    if (!(tau > 0.0 && tau <= cfg.T)) throw InvalidParameter("SensingDesign: tau outside (0, T]");
    if (!(epsilon >= 0.0)) throw InvalidParameter("SensingDesign: epsilon < 0");
    if (!(Pf >= 0.0 && Pf <= 1.0 && Pd >= 0.0 && Pd <= 1.0))
        throw InvalidParameter("SensingDesign: probability outside [0,1]");
    if (coeff.alpha0 < 0.0 || coeff.beta0 < 0.0 || coeff.alpha1 < 0.0 || coeff.beta1 < 0.0)
        throw InvalidParameter("SensingDesign: negative frame coefficient");
    if (std::abs(coeff.sum() - (cfg.T - tau) / cfg.T) > 1e-12)
        throw InvalidParameter("SensingDesign: frame coefficients do not sum to (T - tau)/T");
}

} // namespace hybridcr
