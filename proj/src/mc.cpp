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

#include "hybridcr/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hybridcr/channel.hpp"
#include "hybridcr/kernels.hpp"
#include "hybridcr/parallel.hpp"
#include "hybridcr/rng.hpp"

namespace hybridcr {

namespace {

constexpr std::size_t kBlock = 4096;

std::size_t block_count(std::size_t n) { return (n + kBlock - 1) / kBlock; }

// n correlated vectors h = S w stored as re/im planes (plane m at offset m*n).
void draw_planes(const CMat &S, std::size_t n, Rng &rng, std::vector<double> &re, std::vector<double> &im) {
    const Eigen::Index M = S.rows();
    re.assign(static_cast<std::size_t>(M) * n, 0.0);
    im.assign(static_cast<std::size_t>(M) * n, 0.0);
    CVec w(M);
    for (std::size_t i = 0; i < n; ++i) {
        for (Eigen::Index m = 0; m < M; ++m) w(m) = rng.complex_normal();
        const CVec h = S * w;
        for (Eigen::Index m = 0; m < M; ++m) {
            re[static_cast<std::size_t>(m) * n + i] = h(m).real();
            im[static_cast<std::size_t>(m) * n + i] = h(m).imag();
        }
    }
}

struct Moments {
    double sum = 0.0;
    double sumsq = 0.0;
    std::size_t n = 0;
};

McEstimate from_moments(const std::vector<Moments> &parts, bool report_se) {
    Moments t;
    for (const auto &p : parts) {
        t.sum += p.sum;
        t.sumsq += p.sumsq;
        t.n += p.n;
    }
    McEstimate e;
    e.n = t.n;
    if (t.n == 0) return e;
    e.value = t.sum / static_cast<double>(t.n);
    if (report_se && t.n > 1) {
        const double var = std::max(0.0, (t.sumsq - t.sum * e.value) / static_cast<double>(t.n - 1));
        e.se = std::sqrt(var / static_cast<double>(t.n));
    }
    return e;
}

} // namespace

void McSpec::validate() const {
    if (n_realizations < 1 || n_inner < 1) throw InvalidParameter("McSpec: counts must be >= 1");
}

McEstimate summarize(const std::vector<double> &samples, bool report_se) {
    Moments m;
    for (double x : samples) {
        m.sum += x;
        m.sumsq += x * x;
    }
    m.n = samples.size();
    return from_moments({m}, report_se);
}

EdEstimate mc_ed_probabilities(long N, double epsilon, const SystemConfig &cfg, const McSpec &spec,
                               SensingFading fading) {
    spec.validate();
    if (N < 1) throw InvalidParameter("mc_ed_probabilities: N must be >= 1");
    if (!(epsilon >= 0.0)) throw InvalidParameter("mc_ed_probabilities: epsilon must be >= 0");
    const std::size_t trials = spec.n_realizations;
    std::vector<double> h0_hits(trials), h1_hits(trials);
    const double level = epsilon * static_cast<double>(N);
    parallel_for(trials, spec.workers, [&](std::size_t i) {
        Rng rng(spec.seed, i, salt::kSensing);
        std::vector<std::complex<double>> y(static_cast<std::size_t>(N));
        // H0: noise only.
        for (auto &v : y) v = rng.complex_normal(cfg.N00);
        h0_hits[i] = kernels::sum_abs2(y) > level ? 1.0 : 0.0;
        // H1: faded primary signal plus noise.
        const std::complex<double> h0 = fading == SensingFading::RayleighBlock
                                            ? rng.complex_normal(cfg.sigma0_sq)
                                            : std::complex<double>(std::sqrt(cfg.sigma0_sq), 0.0);
        const std::complex<double> g = std::sqrt(cfg.P_p) * h0;
        for (auto &v : y) {
            const std::complex<double> s = rng.complex_normal();
            v = g * s + rng.complex_normal(cfg.N00);
        }
        h1_hits[i] = kernels::sum_abs2(y) > level ? 1.0 : 0.0;
    });
    return {summarize(h0_hits, spec.report_se), summarize(h1_hits, spec.report_se), N};
}

OutageDesign outage_design(const DesignSolution &sol, const SystemConfig &cfg) {
    switch (sol.mode) {
    case SystemMode::Hybrid: return {sol.constraint_report.Pd, cfg.P_peak, sol.P1_star};
    case SystemMode::Interweave: return {sol.constraint_report.Pd, cfg.P_peak, 0.0};
    case SystemMode::Underlay: return {1.0, sol.P1_star, sol.P1_star};
    }
    throw InvalidParameter("unknown system mode");
}

McEstimate mc_outage(const OutageDesign &d, const SystemConfig &cfg, const CorrelationSet &corr,
                     const McSpec &spec) {
    spec.validate();
    if (!(d.Pd >= 0.0 && d.Pd <= 1.0)) throw InvalidParameter("mc_outage: Pd outside [0,1]");
    const ChannelSampler sampler(corr, cfg.sigma0_sq);
    const std::size_t n = spec.n_realizations;
    const std::size_t nb = block_count(n);
    std::vector<Moments> parts(nb);
    parallel_for(nb, spec.workers, [&](std::size_t b) {
        Rng rng(spec.seed, b, salt::kPrimary);
        Rng coin(spec.seed, b, salt::kDecision);
        const std::size_t lo = b * kBlock, cnt = std::min(kBlock, n - lo);
        std::vector<double> sig_idle, int_idle, sig_busy, int_busy;
        for (std::size_t i = 0; i < cnt; ++i) {
            const CVec h_pp = ChannelSampler::correlated(sampler.sqrt_pp(), rng);
            const CVec h_sp = ChannelSampler::correlated(sampler.sqrt_sp(), rng);
            const double z = h_pp.squaredNorm();
            const double y = z > 0.0 ? std::norm(h_pp.dot(h_sp)) / z : 0.0;
            const bool busy = coin.bernoulli(d.Pd);
            (busy ? sig_busy : sig_idle).push_back(cfg.P_p * z);
            (busy ? int_busy : int_idle).push_back(y);
        }
        const double hits = static_cast<double>(
            kernels::count_sinr_below(sig_idle, int_idle, cfg.N0p, d.power_idle, cfg.gamma0) +
            kernels::count_sinr_below(sig_busy, int_busy, cfg.N0p, d.power_busy, cfg.gamma0));
        parts[b] = {hits, hits, cnt};
    });
    return from_moments(parts, spec.report_se);
}

McEstimate mc_outage(const DesignSolution &sol, const SystemConfig &cfg, const CorrelationSet &corr,
                     const McSpec &spec) {
    return mc_outage(outage_design(sol, cfg), cfg, corr, spec);
}

McEstimate mc_lambda_bar(const CMat &R_pp, const CMat &R_sp, const McSpec &spec) {
    spec.validate();
    const CMat S = matrix_sqrt(R_pp);
    const std::size_t n = spec.n_realizations;
    const std::size_t nb = block_count(n);
    std::vector<Moments> parts(nb);
    parallel_for(nb, spec.workers, [&](std::size_t b) {
        Rng rng(spec.seed, b, salt::kPrimary);
        const std::size_t lo = b * kBlock, cnt = std::min(kBlock, n - lo);
        Moments m;
        for (std::size_t i = 0; i < cnt; ++i) {
            const CVec h = ChannelSampler::correlated(S, rng);
            const double r = std::real(h.dot(R_sp * h)) / h.squaredNorm();
            m.sum += r;
            m.sumsq += r * r;
        }
        m.n = cnt;
        parts[b] = m;
    });
    return from_moments(parts, spec.report_se);
}

namespace {

// Sum over a block of ln(1 + s / (N0s + Pp y_i)) and of its square.
Moments interfered_moments(double s, const std::vector<double> &y, std::size_t cnt, double N0s, double Pp) {
    Moments m;
    for (std::size_t i = 0; i < cnt; ++i) {
        const double v = std::log1p(s / (N0s + Pp * y[i]));
        m.sum += v;
        m.sumsq += v * v;
    }
    m.n = cnt;
    return m;
}

} // namespace

McEstimate mc_interfered_log(const RateContext &ctx, const CVec &w, double P, const McSpec &spec) {
    spec.validate();
    const CMat S = matrix_sqrt(ctx.R_ps);
    const double s = P * std::norm(w.dot(ctx.h_ss));
    const std::size_t n = spec.n_realizations;
    const std::size_t nb = block_count(n);
    std::vector<Moments> parts(nb);
    parallel_for(nb, spec.workers, [&](std::size_t b) {
        Rng rng(spec.seed, b, salt::kInterference);
        const std::size_t lo = b * kBlock, cnt = std::min(kBlock, n - lo);
        std::vector<double> re, im, y(cnt);
        draw_planes(S, cnt, rng, re, im);
        std::vector<std::complex<double>> wv(w.data(), w.data() + w.size());
        kernels::project_abs2(wv, re, im, cnt, y);
        parts[b] = interfered_moments(s, y, cnt, ctx.N0s, ctx.Pp());
    });
    return from_moments(parts, spec.report_se);
}

namespace {

// Rate of one design at one h_ss, averaged over n draws of h_ps from rng (bits/s/Hz).
struct BranchRate {
    double value;
    Moments inner; // per-h_ps samples of the interfered part, for conditional SEs
};

BranchRate design_rate(const CVec &h_ss, const DesignSolution &sol, const SystemConfig &cfg, const CMat &S_ps,
                       std::size_t n, Rng &rng) {
    const FrameCoefficients &c = sol.weights;
    const double N0s = cfg.N0s, Pp = cfg.P_p;
    const double n2 = h_ss.squaredNorm();
    const CVec w0 = mrc(h_ss);
    const CVec &w1 = sol.w1_star.size() ? sol.w1_star : w0;
    const double s0 = cfg.P_peak * n2;
    const double s1 = sol.P1_star * std::norm(w1.dot(h_ss));

    std::vector<double> re, im, y0(n), y1(n);
    draw_planes(S_ps, n, rng, re, im);
    const std::vector<std::complex<double>> w0v(w0.data(), w0.data() + w0.size());
    const std::vector<std::complex<double>> w1v(w1.data(), w1.data() + w1.size());
    kernels::project_abs2(w0v, re, im, n, y0);
    kernels::project_abs2(w1v, re, im, n, y1);

    const double c00 = std::log1p(s0 / N0s);
    const double c10 = std::log1p(s1 / N0s);
    Moments m;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c01 = std::log1p(s0 / (N0s + Pp * y0[i]));
        const double c11 = std::log1p(s1 / (N0s + Pp * y1[i]));
        const double v = (c.alpha0 * c00 + c.beta0 * c01 + c.alpha1 * c10 + c.beta1 * c11) / kLn2;
        acc += v;
        m.sum += v;
        m.sumsq += v * v;
    }
    m.n = n;
    return {acc / static_cast<double>(n), m};
}

} // namespace

McEstimate mc_conditional_rate(const CVec &h_ss, const DesignSolution &sol, const SystemConfig &cfg,
                               const CorrelationSet &corr, const McSpec &spec) {
    spec.validate();
    const CMat S = matrix_sqrt(corr.R_ps);
    const std::size_t n = spec.n_realizations;
    const std::size_t nb = block_count(n);
    std::vector<Moments> parts(nb);
    parallel_for(nb, spec.workers, [&](std::size_t b) {
        Rng rng(spec.seed, b, salt::kInterference);
        const std::size_t lo = b * kBlock, cnt = std::min(kBlock, n - lo);
        parts[b] = design_rate(h_ss, sol, cfg, S, cnt, rng).inner;
    });
    return from_moments(parts, spec.report_se);
}

SystemRateEstimate mc_secondary_rate(const Designer &designer, const SystemConfig &cfg, const CorrelationSet &corr,
                                     const McSpec &spec) {
    spec.validate();
    const ChannelSampler sampler(corr, cfg.sigma0_sq);
    const std::size_t n = spec.n_realizations;
    std::vector<double> rate(n, 0.0), tau(n, 0.0), objective(n, 0.0), min_outage(n, 0.0);
    std::vector<char> infeasible(n, 0);
    parallel_for(n, spec.workers, [&](std::size_t i) {
        Rng rng_ss(spec.seed, i, salt::kSecondary);
        const CVec h_ss = ChannelSampler::correlated(sampler.sqrt_ss(), rng_ss);
        try {
            const DesignSolution sol = designer(h_ss);
            Rng rng_ps(spec.seed, i, salt::kInterference);
            rate[i] = design_rate(h_ss, sol, cfg, sampler.sqrt_ps(), spec.n_inner, rng_ps).value;
            tau[i] = sol.tau_star;
            objective[i] = sol.objective;
        } catch (const InfeasibleConstraint &e) {
            infeasible[i] = 1;
            min_outage[i] = e.min_outage();
        }
    });
    SystemRateEstimate out;
    out.rate = summarize(rate, spec.report_se);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (infeasible[i]) {
            ++out.infeasible;
            out.min_outage = min_outage[i];
            continue;
        }
        ++ok;
        out.mean_tau += tau[i];
        out.mean_objective += objective[i];
    }
    if (ok) {
        out.mean_tau /= static_cast<double>(ok);
        out.mean_objective /= static_cast<double>(ok);
    }
    return out;
}

} // namespace hybridcr
