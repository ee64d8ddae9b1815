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

#include "hybridcr/rates.hpp"

#include <cmath>

#include "hybridcr/numerics.hpp"

namespace hybridcr {

void RateContext::validate() const {
    if (h_ss.size() == 0 || R_ps.rows() != h_ss.size() || R_ps.cols() != h_ss.size())
        throw InvalidParameter("RateContext: dimension mismatch");
    if (w1.size() != h_ss.size()) throw InvalidParameter("RateContext: w1 has the wrong dimension");
    if (std::abs(w1.norm() - 1.0) > 1e-12) throw InvalidParameter("RateContext: w1 must have unit norm");
    if (!(rho_inr_s > 0.0)) throw InvalidParameter("RateContext: rho_inr_s must be > 0");
    if (!(N0s > 0.0) || !(P_peak >= 0.0) || !(P1 >= 0.0)) throw InvalidParameter("RateContext: bad scalar");
}

RateContext RateContext::make(const SystemConfig &cfg, const CMat &R_ps, const CVec &h_ss, const CVec &w1,
                              double P1) {
    RateContext ctx;
    ctx.h_ss = h_ss;
    ctx.R_ps = R_ps;
    ctx.rho_inr_s = cfg.rho_inr_s();
    ctx.N0s = cfg.N0s;
    ctx.P_peak = cfg.P_peak;
    ctx.w1 = w1.size() ? w1 : mrc(h_ss);
    ctx.P1 = P1;
    return ctx;
}

CVec mrc(const CVec &h) {
    const double n = h.norm();
    if (n == 0.0) {
        CVec e = CVec::Zero(h.size());
        if (h.size()) e(0) = 1.0;
        return e;
    }
    return h / n;
}

namespace {
// Normalized interference w' rho_inr R_ps w for unit w.
double inr(const RateContext &ctx, const CVec &w) {
    return std::max(0.0, ctx.rho_inr_s * std::real(w.dot(ctx.R_ps * w)));
}
} // namespace

Case0Rates rate_case0_bound(const RateContext &ctx, double alpha0, double beta0) {
    const double n2 = ctx.h_ss.squaredNorm();
    if (n2 == 0.0) return {};
    Case0Rates r;
    r.C00 = std::log1p(ctx.P_peak * n2 / ctx.N0s);
    const double q = std::real(ctx.h_ss.dot(ctx.R_ps * ctx.h_ss)) / n2;
    r.C01 = std::log1p(ctx.P_peak * n2 / (ctx.N0s + ctx.Pp() * q));
    r.weighted_bits = (alpha0 * r.C00 + beta0 * r.C01) / kLn2;
    return r;
}

double rate_case0_exact_c01(const RateContext &ctx) {
    const double n2 = ctx.h_ss.squaredNorm();
    if (n2 == 0.0) return 0.0;
    return interfered_log_mean(ctx.P_peak * n2 / ctx.N0s, inr(ctx, mrc(ctx.h_ss)));
}

double interfered_log_mean(double a, double r) {
    if (!(a >= 0.0) || !(r >= 0.0)) throw DomainError("interfered_log_mean: a and r must be >= 0");
    if (r == 0.0) return std::log1p(a);
    return std::log1p(a) + exp_e1((1.0 + a) / r) - exp_e1(1.0 / r);
}

Case1Rates rate_case1_exact(const RateContext &ctx) {
    const double a = ctx.P1 * std::norm(ctx.w1.dot(ctx.h_ss)) / ctx.N0s;
    return {std::log1p(a), interfered_log_mean(a, inr(ctx, ctx.w1))};
}

Case1HighInr rate_case1_highinr(const RateContext &ctx) {
    const double a = ctx.P1 * std::norm(ctx.w1.dot(ctx.h_ss)) / ctx.N0s;
    const double r = inr(ctx, ctx.w1);
    const double D10 = std::log1p(a);
    if (r == 0.0) return {D10, D10};
    const double x = (1.0 + a) / r;
    return {D10, std::log(x) + exp_e1(x) + kEulerGamma};
}

double objective_C(const RateContext &ctx, const FrameCoefficients &c, RateMode mode) {
    const Case0Rates r0 = rate_case0_bound(ctx);
    double r10, r11;
    if (mode == RateMode::Exact) {
        const Case1Rates r1 = rate_case1_exact(ctx);
        r10 = r1.C10;
        r11 = r1.C11;
    } else {
        const Case1HighInr r1 = rate_case1_highinr(ctx);
        r10 = r1.D10;
        r11 = r1.D11;
    }
    return (c.alpha0 * r0.C00 + c.beta0 * r0.C01 + c.alpha1 * r10 + c.beta1 * r11) / kLn2;
}

double conditional_rate_exact(const RateContext &ctx, const FrameCoefficients &c) {
    const Case0Rates r0 = rate_case0_bound(ctx);
    const double c01 = rate_case0_exact_c01(ctx);
    const Case1Rates r1 = rate_case1_exact(ctx);
    return (c.alpha0 * r0.C00 + c.beta0 * c01 + c.alpha1 * r1.C10 + c.beta1 * r1.C11) / kLn2;
}

} // namespace hybridcr
