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

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hybridcr/channel.hpp"
#include "hybridcr/numerics.hpp"
#include "hybridcr/rates.hpp"

using namespace hybridcr;

namespace {

// E[ln(1 + a/(1 + X))], X ~ Exp(mean r), by direct quadrature.
double interfered_log_quadrature(double a, double r) {
    auto f = [&](double x) { return std::log1p(a / (1.0 + x)) * std::exp(-x / r) / r; };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                                                                          20, 1e-13);
}

CVec unit_random(Rng &rng, int M) {
    CVec w(M);
    for (int i = 0; i < M; ++i) w(i) = rng.complex_normal();
    return w.normalized();
}

RateContext random_context(std::uint64_t seed, double P1 = 2.0) {
    const SystemConfig cfg;
    const CorrelationSet corr = default_correlation(cfg);
    Rng rng(seed);
    const CVec h = ChannelSampler::correlated(matrix_sqrt(corr.R_ss), rng);
    return RateContext::make(cfg, corr.R_ps, h, unit_random(rng, cfg.M), P1);
}

} // namespace

TEST_CASE("interfered_log_mean against quadrature") {
    for (double a : {0.0, 0.1, 1.0, 10.0, 300.0})
        for (double r : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
            INFO("a = " << a << ", r = " << r);
            CHECK(interfered_log_mean(a, r) == doctest::Approx(interfered_log_quadrature(a, r)).epsilon(1e-10));
        }
    CHECK(interfered_log_mean(3.0, 0.0) == doctest::Approx(std::log(4.0)));
    CHECK(interfered_log_mean(0.0, 5.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(interfered_log_mean(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(interfered_log_mean(1.0, -1.0), DomainError);
}

TEST_CASE("busy-branch exact rate against Monte Carlo") {
    const RateContext ctx = random_context(5);
    const Case1Rates r = rate_case1_exact(ctx);
    const double a = ctx.P1 * std::norm(ctx.w1.dot(ctx.h_ss)) / ctx.N0s;
    CHECK(r.C10 == doctest::Approx(std::log1p(a)));
    const CMat S = matrix_sqrt(ctx.R_ps);
    Rng rng(99);
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const CVec g = ChannelSampler::correlated(S, rng);
        const double v =
            std::log1p(ctx.P1 * std::norm(ctx.w1.dot(ctx.h_ss)) / (ctx.N0s + ctx.Pp() * std::norm(ctx.w1.dot(g))));
        s += v;
        s2 += v * v;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(r.C11 - mean) < 4.0 * se);
}

TEST_CASE("idle-branch rates") {
    const RateContext ctx = random_context(6);
    const Case0Rates r = rate_case0_bound(ctx, 0.4, 0.1);
    CHECK(r.C00 == doctest::Approx(std::log1p(ctx.P_peak * ctx.h_ss.squaredNorm() / ctx.N0s)));
    CHECK(r.C01 < r.C00);
    // Jensen: the bound never exceeds the exact mean.
    CHECK(r.C01 <= rate_case0_exact_c01(ctx));
    CHECK(r.weighted_bits == doctest::Approx((0.4 * r.C00 + 0.1 * r.C01) / kLn2));
    RateContext zero = ctx;
    zero.h_ss.setZero();
    const Case0Rates z = rate_case0_bound(zero);
    CHECK(z.C00 == 0.0);
    CHECK(z.C01 == 0.0);
    CHECK(rate_case0_exact_c01(zero) == 0.0);
}

TEST_CASE("mrc") {
    CVec h(3);
    h << cdouble(1, 1), cdouble(0, 2), cdouble(-1, 0);
    const CVec w = mrc(h);
    CHECK(w.norm() == doctest::Approx(1.0));
    CHECK(std::norm(w.dot(h)) == doctest::Approx(h.squaredNorm()));
    const CVec e = mrc(CVec::Zero(3));
    CHECK(e(0) == cdouble(1.0, 0.0));
}

TEST_CASE("high-INR surrogate") {
    const RateContext base = random_context(8);
    // D11 - C11 = ln r - ... closes as the interference grows.
    double prev = std::numeric_limits<double>::infinity();
    for (double rho : {10.0, 1e2, 1e3, 1e4, 1e5}) {
        RateContext ctx = base;
        ctx.rho_inr_s = rho;
        const double gap = std::abs(rate_case1_highinr(ctx).D11 - rate_case1_exact(ctx).C11);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-3);
    CHECK(rate_case1_highinr(base).D10 == rate_case1_exact(base).C10);
    // Zero interference: D11 falls back to D10.
    RateContext q = base;
    q.R_ps.setZero();
    const Case1HighInr z = rate_case1_highinr(q);
    CHECK(z.D11 == z.D10);
}

TEST_CASE("objective weighting") {
    const RateContext ctx = random_context(9);
    const FrameCoefficients c{0.4, 0.05, 0.2, 0.3};
    const Case0Rates r0 = rate_case0_bound(ctx);
    const Case1Rates r1 = rate_case1_exact(ctx);
    const Case1HighInr d1 = rate_case1_highinr(ctx);
    CHECK(objective_C(ctx, c) == doctest::Approx((0.4 * r0.C00 + 0.05 * r0.C01 + 0.2 * r1.C10 + 0.3 * r1.C11) / kLn2));
    CHECK(objective_C(ctx, c, RateMode::HighInr) ==
          doctest::Approx((0.4 * r0.C00 + 0.05 * r0.C01 + 0.2 * d1.D10 + 0.3 * d1.D11) / kLn2));
    CHECK(conditional_rate_exact(ctx, c) >= objective_C(ctx, c));
    CHECK(objective_C(ctx, FrameCoefficients{}) == 0.0);
}

TEST_CASE("context validation") {
    RateContext ctx = random_context(10);
    CHECK_NOTHROW(ctx.validate());
    ctx.w1 *= 2.0;
    CHECK_THROWS_AS(ctx.validate(), InvalidParameter);
    ctx = random_context(10);
    ctx.w1 = CVec::Ones(2).normalized();
    CHECK_THROWS_AS(ctx.validate(), InvalidParameter);
}
