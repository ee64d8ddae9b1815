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
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "hybridcr/numerics.hpp"
#include "hybridcr/sensing.hpp"

using namespace hybridcr;

TEST_CASE("false alarm and detection probabilities") {
    const SystemConfig cfg;
    // u = 1 gives Q(1).
    const double N = 1000.0;
    const double eps = 1.0 + 1.0 / std::sqrt(N);
    CHECK(false_alarm_prob(N, eps, 1.0) == doctest::Approx(0.15865525393145707));
    // Exact energy-detector tail: N*stat ~ Gamma(N, N00) under H0.
    const double exact = boost::math::gamma_q(N, N * eps);
    CHECK(false_alarm_prob(N, eps, 1.0) == doctest::Approx(exact).epsilon(0.01));
    // Threshold at the noise floor gives 1/2; infinite threshold never fires.
    CHECK(false_alarm_prob(50.0, 1.0, 1.0) == doctest::Approx(0.5));
    CHECK(false_alarm_prob(50.0, std::numeric_limits<double>::infinity(), 1.0) == 0.0);
    CHECK(detection_prob(50.0, std::numeric_limits<double>::infinity(), 10.0, 0.5, 1.0) == 0.0);
    // Same threshold: detection dominates false alarm.
    for (double e : {1.0, 2.0, 4.0, 6.0, 8.0}) CHECK(detection_prob(600, e, 10, 0.5, 1) >= false_alarm_prob(600, e, 1));
    CHECK_THROWS_AS(false_alarm_prob(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(false_alarm_prob(10.0, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(detection_prob(10.0, 1.0, -1.0, 0.5, 1.0), DomainError);
}

TEST_CASE("threshold meets the detection target") {
    const SystemConfig cfg;
    for (double tau : {1e-6, 1e-5, 1e-3, 0.05, 0.1}) {
        const Threshold th = threshold_for_target(tau, cfg);
        CHECK_FALSE(th.clamped);
        const double Pd = detection_prob(tau * cfg.f_s, th.epsilon, cfg.P_p, cfg.sigma0_sq, cfg.N00);
        CHECK(Pd == doctest::Approx(cfg.Pd_target).epsilon(1e-12));
    }
    // Below the minimum sensing time the threshold would be negative.
    const double tlo = min_sensing_time(cfg.Pd_target, cfg);
    CHECK(tlo == doctest::Approx(std::pow(q_inverse(0.975), 2) / cfg.f_s));
    CHECK(threshold_for_target(0.5 * tlo, cfg).clamped);
    CHECK(threshold_for_target(0.5 * tlo, cfg).epsilon == 0.0);
    CHECK(threshold_for_target(tlo, cfg).epsilon == doctest::Approx(0.0).epsilon(1e-9));
    // Pd <= 1/2 has xi >= 0: never clamped, one sample minimum.
    CHECK(min_sensing_time(0.3, cfg) == doctest::Approx(1.0 / cfg.f_s));
    CHECK_THROWS_AS(threshold_for_target(0.0, cfg), DomainError);
    CHECK_THROWS_AS(threshold_for_target(0.2, cfg), DomainError);
}

TEST_CASE("frame coefficients") {
    const SystemConfig cfg;
    const FrameCoefficients z = frame_coefficients(0.0, 0.0, cfg);
    CHECK(z.alpha0 == 0.0);
    CHECK(z.beta0 == 0.0);
    CHECK(z.alpha1 == doctest::Approx(0.7));
    CHECK(z.beta1 == doctest::Approx(0.3));
    for (double tau : {1e-6, 1e-4, 1e-2, 0.09}) {
        const SensingDesign d = design_for_pd(tau, cfg.Pd_target, cfg);
        CHECK_NOTHROW(d.validate(cfg));
        CHECK(d.coeff.sum() == doctest::Approx((cfg.T - tau) / cfg.T).epsilon(1e-14));
        const double f = (cfg.T - tau) / cfg.T;
        CHECK(d.coeff.alpha1 == doctest::Approx(f * 0.7 * d.Pf));
        CHECK(d.coeff.beta1 == doctest::Approx(f * 0.3 * 0.975));
        CHECK(d.coeff.alpha0 == doctest::Approx(f * 0.7 * (1.0 - d.Pf)));
        CHECK(d.coeff.beta0 == doctest::Approx(f * 0.3 * 0.025));
    }
    // Longer sensing drives false alarms down at fixed Pd.
    CHECK(design_for_pd(1e-3, 0.975, cfg).Pf < design_for_pd(1e-5, 0.975, cfg).Pf);
    const FrameCoefficients full = frame_coefficients(cfg.T, 3.0, cfg);
    CHECK(full.sum() == 0.0);
    CHECK_THROWS_AS(frame_coefficients(-1e-3, 1.0, cfg), DomainError);
    CHECK_THROWS_AS(frame_coefficients(0.2, 1.0, cfg), DomainError);
}

TEST_CASE("design validation rejects broken invariants") {
    const SystemConfig cfg;
    SensingDesign d = design_for_pd(1e-4, 0.975, cfg);
    d.coeff.alpha0 += 0.01;
    CHECK_THROWS_AS(d.validate(cfg), InvalidParameter);
    d = design_for_pd(1e-4, 0.975, cfg);
    d.Pf = 1.5;
    CHECK_THROWS_AS(d.validate(cfg), InvalidParameter);
}
