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

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include "hybridcr/channel.hpp"
#include "hybridcr/outage.hpp"
#include "hybridcr/rng.hpp"

using namespace hybridcr;

namespace {

OutageModel table_model(double rho = 0.5, double gamma0_db = 3.0) {
    SystemConfig cfg;
    cfg.rho = rho;
    cfg.gamma0 = db_to_linear(gamma0_db);
    return build_outage_model(default_correlation(cfg), cfg);
}

// Direct product form of F with eigenvalues recomputed from R_pp.
double F_direct(const OutageModel &m, double x) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m.R_pp, Eigen::EigenvaluesOnly);
    double v = std::exp(m.N0p / (x * m.lambda_bar));
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
        v /= 1.0 + m.Pp * es.eigenvalues()(j) / (m.gamma0 * x * m.lambda_bar);
    return v;
}

} // namespace

TEST_CASE("model construction") {
    const OutageModel m = table_model();
    CHECK_FALSE(m.degenerate);
    CHECK(m.method() == "partial-fraction");
    CHECK(m.eigs_pp.size() == 4);
    CHECK(m.eigs_pp(0) <= m.eigs_pp(3));
    CHECK(m.eigs_pp.sum() == doctest::Approx(4.0));
    CHECK(m.lambda_bar > 0.0);
    CHECK(m.lambda_bar == doctest::Approx(1.3507).epsilon(1e-3));
    CHECK(m.rho_snr_p() == doctest::Approx(10.0));
    const OutageModel d = table_model(0.0);
    CHECK(d.degenerate);
    CHECK(d.method() == "product/phase-type");
    // Identity covariances: the projected interference has unit mean exactly.
    CHECK(d.lambda_bar == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("F: partial fractions, product form and direct evaluation agree") {
    for (double rho : {0.2, 0.5, 0.9}) {
        const OutageModel m = table_model(rho);
        for (double x : {0.05, 0.3, 1.0, 3.0, 10.0, 100.0}) {
            const double pf = log_outage_F_partial_fraction(m, x);
            const double pr = log_outage_F_product(m, x);
            // Partial fractions cancel as x -> 0 (terms O(1/x), sum O(1/x^M)).
            CHECK(pf == doctest::Approx(pr).epsilon(x < 0.1 ? 1e-7 : 1e-10));
            CHECK(std::exp(pr) == doctest::Approx(F_direct(m, x)).epsilon(1e-12));
            CHECK(outage_F(m, x) == doctest::Approx(std::min(1.0, F_direct(m, x))).epsilon(1e-9));
        }
    }
}

TEST_CASE("F limits and shape") {
    const OutageModel m = table_model();
    CHECK(outage_F(m, 0.0) == m.G);
    CHECK_THROWS_AS(outage_F(m, -1.0), InvalidParameter);
    for (double x = 1e-3; x < 1e3; x *= 1.5) {
        const double f = outage_F(m, x);
        CHECK((f >= 0.0 && f <= 1.0));
    }
    // P_min_mono minimizes F; F increases past it.
    CHECK(m.P_min_mono > 0.0);
    CHECK(m.F_min == doctest::Approx(outage_F(m, m.P_min_mono)));
    for (double s : {0.5, 0.9, 1.1, 2.0}) CHECK(outage_F(m, s * m.P_min_mono) >= m.F_min - 1e-15);
    double prev = m.F_min;
    for (double x = m.P_min_mono * 1.01; x < 100.0; x *= 1.2) {
        const double f = outage_F(m, x);
        CHECK(f >= prev);
        prev = f;
    }
    // Stationarity of the minimizer: sum b_j x/(x + b_j) = N0p/lambda_bar.
    double s = 0.0;
    for (Eigen::Index j = 0; j < m.eigs_pp.size(); ++j) {
        const double b = m.Pp * m.eigs_pp(j) / (m.gamma0 * m.lambda_bar);
        s += b * m.P_min_mono / (m.P_min_mono + b);
    }
    CHECK(s == doctest::Approx(m.N0p / m.lambda_bar).epsilon(1e-9));
    // Default-scenario value at the peak power.
    CHECK(outage_F(m, 10.0) == doctest::Approx(0.3239).epsilon(1e-3));
}

TEST_CASE("G: closed forms") {
    // M = 1 is a single exponential.
    RVec one(1);
    one << 2.0;
    CHECK(outage_G_partial_fraction(one, 0.7) == doctest::Approx(1.0 - std::exp(-0.35)));
    CHECK(outage_G_phase_type(one, 0.7) == doctest::Approx(1.0 - std::exp(-0.35)).epsilon(1e-13));
    // M = 2 hypoexponential.
    RVec two(2);
    two << 0.5, 1.5;
    const double t = 0.8;
    const double ref = 1.0 - (1.5 * std::exp(-t / 1.5) - 0.5 * std::exp(-t / 0.5)) / (1.5 - 0.5);
    CHECK(outage_G_partial_fraction(two, t) == doctest::Approx(ref).epsilon(1e-13));
    CHECK(outage_G_phase_type(two, t) == doctest::Approx(ref).epsilon(1e-12));
    // Repeated eigenvalues: Erlang CDF.
    RVec rep = RVec::Constant(4, 1.3);
    CHECK(outage_G_phase_type(rep, 0.9) == doctest::Approx(boost::math::gamma_p(4.0, 0.9 / 1.3)).epsilon(1e-12));
    // Distinct eigenvalues of the default matrix: both routes agree.
    const OutageModel m = table_model();
    const double thr = m.gamma0 / m.rho_snr_p();
    CHECK(outage_G_partial_fraction(m.eigs_pp, thr) == doctest::Approx(outage_G_phase_type(m.eigs_pp, thr)).epsilon(1e-10));
    CHECK(outage_G(m) == m.G);
    // Near-degenerate eigenvalues approach the Erlang limit continuously.
    RVec near(4);
    near << 1.0, 1.0 + 1e-4, 1.0 + 2e-4, 1.0 + 3e-4;
    CHECK(outage_G_phase_type(near, 0.5) == doctest::Approx(boost::math::gamma_p(4.0, 0.5 / 1.00015)).epsilon(1e-6));
}

TEST_CASE("G against Monte Carlo") {
    const OutageModel m = table_model(0.5, 10.0);
    const CMat S = matrix_sqrt(m.R_pp);
    Rng rng(21);
    const int n = 200000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        CVec w(4);
        for (int k = 0; k < 4; ++k) w(k) = rng.complex_normal();
        if (m.rho_snr_p() * (S * w).squaredNorm() < m.gamma0) ++hits;
    }
    const double p = static_cast<double>(hits) / n;
    const double se = std::sqrt(m.G * (1.0 - m.G) / n);
    CHECK(std::abs(p - m.G) < 4.0 * se);
}

TEST_CASE("degenerate covariance uses the guarded path") {
    const OutageModel m = table_model(0.0);
    const double thr = m.gamma0 / m.rho_snr_p();
    CHECK(m.G == doctest::Approx(boost::math::gamma_p(4.0, thr)).epsilon(1e-12));
    // F with identical eigenvalues: exp(c) (1 + Pp/(gamma0 x))^-4.
    for (double x : {0.5, 2.0, 10.0}) {
        const double ref = std::exp(1.0 / x) * std::pow(1.0 + 10.0 / (m.gamma0 * x), -4.0);
        CHECK(outage_F(m, x) == doctest::Approx(std::min(1.0, ref)).epsilon(1e-10));
    }
}

TEST_CASE("mode compositions") {
    const OutageModel m = table_model();
    const double Fpk = outage_F(m, 10.0);
    CHECK(outage_hybrid(m, 0.975, 10.0, 2.0) == doctest::Approx(0.025 * Fpk + 0.975 * outage_F(m, 2.0)));
    CHECK(outage_interweave(m, 0.975, 10.0) == doctest::Approx(0.025 * Fpk + 0.975 * m.G));
    CHECK(outage_underlay(m, 3.0) == outage_F(m, 3.0));
    CHECK(outage_hybrid(m, 1.0, 0.0, 3.0) == doctest::Approx(outage_underlay(m, 3.0)));
    CHECK(outage_hybrid(m, 0.975, 10.0, 0.0) == doctest::Approx(outage_interweave(m, 0.975, 10.0)));
}
