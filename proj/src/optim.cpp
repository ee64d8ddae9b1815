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

#include "hybridcr/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hybridcr/channel.hpp"
#include "hybridcr/numerics.hpp"
#include "hybridcr/rng.hpp"

namespace hybridcr {

std::string_view mode_name(SystemMode mode) {
    switch (mode) {
    case SystemMode::Hybrid: return "hybrid";
    case SystemMode::Interweave: return "interweave";
    case SystemMode::Underlay: return "underlay";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Power
// ---------------------------------------------------------------------------

double solve_power_pd(const OutageModel &model, const SystemConfig &cfg, double Pd) {
    if (!(Pd > 0.0 && Pd <= 1.0)) throw InvalidParameter("solve_power: Pd must lie in (0,1]");
    const double target = cfg.Pout_target;
    const double F_peak = outage_F(model, cfg.P_peak);
    const double y0 = (target - (1.0 - Pd) * F_peak) / Pd;
    if (y0 >= F_peak) return cfg.P_peak;

    const double lo = model.P_min_mono;
    if (!std::isfinite(lo) || lo >= cfg.P_peak)
        throw InfeasibleConstraint("outage target below the reachable minimum", F_peak);
    if (y0 <= model.F_min)
        throw InfeasibleConstraint("outage target below the reachable minimum",
                                   (1.0 - Pd) * F_peak + Pd * model.F_min);
    return bisect_root([&](double x) { return outage_F(model, x) - y0; }, lo, cfg.P_peak, 1e-13);
}

double solve_power(const OutageModel &model, const SystemConfig &cfg) {
    return solve_power_pd(model, cfg, cfg.Pd_target);
}

// ---------------------------------------------------------------------------
// Sensing
// ---------------------------------------------------------------------------

SensingRateTerms sensing_rate_terms(const RateContext &ctx) {
    const Case0Rates r0 = rate_case0_bound(ctx);
    const Case1HighInr r1 = rate_case1_highinr(ctx);
    return {r0.C00, r0.C01, r1.D10, r1.D11};
}

double sensing_objective(double tau, const SensingRateTerms &t, const SystemConfig &cfg, double Pd) {
    const Threshold th = threshold_for_pd(tau, Pd, cfg);
    const FrameCoefficients c = frame_coefficients(tau, th.epsilon, cfg);
    return (c.alpha0 * t.C00 + c.beta0 * t.C01 + c.alpha1 * t.D10 + c.beta1 * t.D11) / kLn2;
}

double sensing_objective(double tau, const SensingRateTerms &t, const SystemConfig &cfg) {
    return sensing_objective(tau, t, cfg, cfg.Pd_target);
}

double sensing_derivative(double tau, const SensingRateTerms &t, const SystemConfig &cfg, double Pd) {
    if (!(tau > 0.0 && tau <= cfg.T)) throw DomainError("sensing_derivative: tau outside (0, T]");
    const double P0 = cfg.P0_prior();
    const double P1 = cfg.P1_prior;
    const double delta = cfg.N00 + cfg.P_p * cfg.sigma0_sq;
    const double xi = q_inverse(Pd);
    const double sqrtN = std::sqrt(tau * cfg.f_s);
    const double k = delta / cfg.N00 - 1.0;
    // Pf(tau) = Q(u), u = sqrt(tau f_s) (delta/N00 - 1) + delta xi / N00.
    const double u = sqrtN * k + delta * xi / cfg.N00;
    const double du = k * cfg.f_s / (2.0 * sqrtN);
    const double Pf = q_function(u);
    const double pdf = std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
    const double frac = (cfg.T - tau) / cfg.T;
    const double level = P0 * t.C00 + P0 * Pf * (t.D10 - t.C00) + P1 * (1.0 - Pd) * t.C01 + P1 * Pd * t.D11;
    const double d = -level / cfg.T + frac * P0 * (t.D10 - t.C00) * (-pdf * du);
    return d / kLn2;
}

double sensing_derivative(double tau, const SensingRateTerms &t, const SystemConfig &cfg) {
    return sensing_derivative(tau, t, cfg, cfg.Pd_target);
}

SensingOptimum optimize_sensing(const SensingRateTerms &t, const SystemConfig &cfg, double Pd,
                                const SolverOptions &opts) {
    const double lo = std::min(min_sensing_time(Pd, cfg), cfg.T);
    auto at = [&](double tau) {
        SensingOptimum s;
        s.tau = tau;
        s.epsilon = threshold_for_pd(tau, Pd, cfg).epsilon;
        s.objective = sensing_objective(tau, t, cfg, Pd);
        return s;
    };
    if ((t.C00 == 0.0 && t.C01 == 0.0 && t.D10 == 0.0 && t.D11 == 0.0) || lo >= cfg.T) {
        SensingOptimum s = at(lo);
        s.at_boundary = true;
        return s;
    }
    const double slo = std::log(lo), shi = std::log(cfg.T);
    auto tau_of = [&](double s) { return std::clamp(std::exp(s), lo, cfg.T); };
    const Maximum1d m = maximize_concave_1d([&](double s) { return sensing_objective(tau_of(s), t, cfg, Pd); },
                                            slo, shi, opts.tau_rel_tol);
    SensingOptimum s = at(m.at_boundary ? (m.argmax == slo ? lo : cfg.T) : tau_of(m.argmax));
    s.at_boundary = m.at_boundary;
    return s;
}

SensingOptimum optimize_sensing(const RateContext &ctx, const SystemConfig &cfg, const SolverOptions &opts) {
    return optimize_sensing(sensing_rate_terms(ctx), cfg, cfg.Pd_target, opts);
}

// ---------------------------------------------------------------------------
// Beamforming
// ---------------------------------------------------------------------------

namespace {

struct Chord {
    double slope;
    double intercept;
};

template <class F, class DF>
Chord chord(F &&f, DF &&df, double lo, double hi) {
    if (hi - lo <= 1e-9 * std::max(1.0, std::abs(hi))) {
        const double x = 0.5 * (lo + hi);
        const double s = df(x);
        return {s, f(x) - s * x};
    }
    const double s = (f(hi) - f(lo)) / (hi - lo);
    return {s, f(lo) - s * lo};
}

double quad(const CMat &A, const CVec &w) { return std::real(w.dot(A * w)); }

double f1_value(double beta, double x) { return beta == 0.0 ? 0.0 : beta * (std::log(x) + exp_e1(x)); }

} // namespace

SecantCoefficients secant_coefficients(const CMat &H, const CMat &R, double a, double b) {
    if (!is_hermitian(H, 1e-10) || !is_hermitian(R, 1e-10))
        throw InvalidParameter("secant_coefficients: matrices must be Hermitian");
    if (a < 0.0 || b < 0.0) throw InvalidParameter("secant_coefficients: weights must be >= 0");
    SecantCoefficients sc;
    Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
    sc.interval0 = {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
    if (!(sc.interval0.lo > 0.0)) throw NotPositiveDefinite("secant_coefficients: H_eff is not PD");
    const auto [gmax, gmin] = generalized_eigen_range(H, R);
    sc.interval1 = {gmin, gmax};

    const Chord c0 = chord([&](double x) { return a * std::log(x); }, [&](double x) { return a / x; },
                           sc.interval0.lo, sc.interval0.hi);
    const Chord c1 = chord([&](double x) { return f1_value(b, x); },
                           [&](double x) { return b == 0.0 ? 0.0 : b * exp_e1(x); }, sc.interval1.lo,
                           sc.interval1.hi);
    sc.kappa1 = c0.slope;
    sc.kappa2 = c0.intercept;
    sc.mu1 = c1.slope;
    sc.mu2 = c1.intercept;
    return sc;
}

CMat effective_H(const RateContext &ctx, double P1) {
    const Eigen::Index M = ctx.h_ss.size();
    CMat H = CMat::Identity(M, M) + (P1 / ctx.N0s) * ctx.h_ss * ctx.h_ss.adjoint();
    return 0.5 * (H + H.adjoint());
}

CMat effective_R(const RateContext &ctx, bool *ridge_applied) {
    const Eigen::Index M = ctx.R_ps.rows();
    CMat R = ctx.rho_inr_s * ctx.R_ps;
    R = 0.5 * (R + R.adjoint());
    const double tr = R.trace().real();
    Eigen::SelfAdjointEigenSolver<CMat> es(R, Eigen::EigenvaluesOnly);
    const bool singular = es.eigenvalues().minCoeff() <= 1e-12 * std::max(tr, 1e-300);
    if (singular) R += (1e-9 * std::max(tr / static_cast<double>(M), 1.0)) * CMat::Identity(M, M);
    if (ridge_applied) *ridge_applied = singular;
    return R;
}

double p5_objective(const CMat &H, const CMat &R, double a, double b, const CVec &w) {
    const double x1 = quad(H, w);
    double v = a == 0.0 ? 0.0 : a * std::log(x1);
    if (b != 0.0) v += f1_value(b, x1 / quad(R, w)) + b * kEulerGamma;
    return v;
}

double p6_objective(const CMat &H, const CMat &R, const SecantCoefficients &sc, double b, const CVec &w) {
    const double x1 = quad(H, w);
    return sc.kappa1 * x1 + sc.kappa2 + sc.mu1 * x1 / quad(R, w) + sc.mu2 + b * kEulerGamma;
}

namespace {

// Self-consistent field for max_w k w'Hw + m w'Hw / w'Rw on the unit sphere. The
// stationarity condition is A(w) w = lambda w with A(w) = k H + (m/r)(H - (h/r) R).
struct Scf {
    const CMat &H;
    const CMat &R;
    double k;
    double m;
    int max_iter;
    double tol;

    double value(const CVec &w) const {
        const double h = quad(H, w);
        return k * h + m * h / quad(R, w);
    }

    CMat stationarity_matrix(const CVec &w) const {
        const double h = quad(H, w);
        const double r = quad(R, w);
        CMat A = k * H + (m / r) * (H - (h / r) * R);
        return 0.5 * (A + A.adjoint());
    }

    double residual(const CVec &w) const {
        const CMat A = stationarity_matrix(w);
        const CVec Aw = A * w;
        const cdouble lam = w.dot(Aw);
        return (Aw - lam * w).norm() / std::max(A.norm(), 1e-300);
    }

    BeamformerResult run(CVec w) const {
        w.normalize();
        double val = value(w);
        BeamformerResult out;
        for (int it = 0; it < max_iter; ++it) {
            out.iterations = it + 1;
            CVec v = dominant_eigvec(stationarity_matrix(w));
            const cdouble ip = v.dot(w);
            if (std::abs(ip) > 0.0) v *= ip / std::abs(ip);
            double nv = value(v);
            if (!(nv > val)) {
                // Damped step along the chord towards the SCF update.
                bool accepted = false;
                for (double t = 0.5; t > 1e-6; t *= 0.5) {
                    CVec c = (w + t * (v - w)).normalized();
                    const double cv = value(c);
                    if (cv > val) {
                        v = c;
                        nv = cv;
                        accepted = true;
                        break;
                    }
                }
                if (!accepted) break;
            }
            const double step = (v - w).norm();
            const double gain = nv - val;
            w = v;
            val = nv;
            // Objective gains are quadratic in the residual, so stall on gain only once
            // the stationarity residual is small as well.
            if (step < 1e-11) break;
            if (gain <= tol * std::max(1.0, std::abs(val)) && residual(w) < 1e-9) break;
        }
        fix_phase(w);
        out.w = w;
        out.p6 = value(w);
        out.converged = residual(w) < 1e-7;
        return out;
    }
};

} // namespace

BeamformerResult optimize_beamformer(const RateContext &ctx, double a, double b, const SolverOptions &opts) {
    const Eigen::Index M = ctx.h_ss.size();
    const CMat H = effective_H(ctx, ctx.P1);
    const CMat R = effective_R(ctx);
    const SecantCoefficients sc = secant_coefficients(H, R, a, b);
    const Scf scf{H, R, sc.kappa1, sc.mu1, opts.scf_max_iter, opts.scf_tol};

    std::vector<CVec> starts;
    starts.push_back(mrc(ctx.h_ss));
    starts.push_back(dominant_generalized_eigvec(H, R).w);
    Rng rng(opts.seed, 0, 0x6266);
    for (int s = 0; s < opts.random_starts; ++s) {
        CVec w(M);
        for (Eigen::Index i = 0; i < M; ++i) w(i) = rng.complex_normal();
        starts.push_back(w);
    }

    BeamformerResult best;
    best.p6 = -std::numeric_limits<double>::infinity();
    int total_iter = 0;
    for (const CVec &w0 : starts) {
        BeamformerResult r = scf.run(w0);
        total_iter += r.iterations;
        if (r.p6 > best.p6) best = r;
    }
    best.iterations = total_iter;
    best.p6 = p6_objective(H, R, sc, b, best.w);
    best.p5 = p5_objective(H, R, a, b, best.w);
    return best;
}

BeamformerResult optimize_beamformer(double tau_hat, double eps_hat, double P1_star, const RateContext &ctx,
                                     const SystemConfig &cfg, const SolverOptions &opts) {
    const FrameCoefficients c = frame_coefficients(tau_hat, eps_hat, cfg);
    RateContext local = ctx;
    local.P1 = P1_star;
    return optimize_beamformer(local, c.alpha1, c.beta1, opts);
}

DgeResult dge_beamformer(const RateContext &ctx, double P1) {
    DgeResult out;
    const CMat H = effective_H(ctx, P1);
    const CMat R = effective_R(ctx, &out.ridge_applied);
    GeneralizedEigen g = dominant_generalized_eigvec(H, R);
    out.w = std::move(g.w);
    out.lambda = g.lambda;
    return out;
}

// ---------------------------------------------------------------------------
// System designs
// ---------------------------------------------------------------------------

namespace {

// Interweave transmits only after an idle decision.
FrameCoefficients silent_when_busy(FrameCoefficients c) {
    c.alpha1 = 0.0;
    c.beta1 = 0.0;
    return c;
}

void finish_rates(DesignSolution &sol, const RateContext &ctx) {
    sol.objective = objective_C(ctx, sol.weights, RateMode::HighInr);
    sol.objective_bound = objective_C(ctx, sol.weights, RateMode::Exact);
    sol.objective_exact = conditional_rate_exact(ctx, sol.weights);
}

} // namespace

DesignSolution alternating_optimize(const OutageModel &model, const RateContext &ctx_in, const SystemConfig &cfg,
                                    const SolverOptions &opts) {
    DesignSolution sol;
    sol.mode = SystemMode::Hybrid;
    sol.P1_star = solve_power(model, cfg);

    RateContext ctx = ctx_in;
    ctx.P1 = sol.P1_star;
    ctx.w1 = cfg.P1_prior <= 0.5 ? mrc(ctx.h_ss) : dge_beamformer(ctx, sol.P1_star).w;

    double tau = 0.0, eps = 0.0, current = -std::numeric_limits<double>::infinity();
    bool have_tau = false;
    sol.converged = false;
    for (int n = 1; n <= opts.max_outer; ++n) {
        sol.iterations = n;
        const SensingOptimum s = optimize_sensing(ctx, cfg, opts);
        const double prev = current;
        if (!have_tau || s.objective >= current) {
            tau = s.tau;
            eps = s.epsilon;
            current = s.objective;
            sol.tau_at_boundary = s.at_boundary;
            have_tau = true;
        }
        const FrameCoefficients c = frame_coefficients(tau, eps, cfg);
        const BeamformerResult bf = optimize_beamformer(ctx, c.alpha1, c.beta1, opts);
        sol.bf_converged = bf.converged;
        RateContext trial = ctx;
        trial.w1 = bf.w;
        const double cand = objective_C(trial, c, RateMode::HighInr);
        if (cand >= current) {
            ctx.w1 = bf.w;
            current = cand;
        }
        sol.trace.push_back(current);
        if (n > 1 && std::abs(current - prev) < opts.xi_bits) {
            sol.converged = true;
            break;
        }
    }

    const SensingDesign sd = design_for_pd(tau, cfg.Pd_target, cfg);
    sol.tau_star = tau;
    sol.eps_star = sd.epsilon;
    sol.eps_clamped = sd.epsilon_clamped;
    sol.w1_star = ctx.w1;
    sol.weights = sd.coeff;
    finish_rates(sol, ctx);
    sol.constraint_report = {outage_hybrid(model, sd.Pd, cfg.P_peak, sol.P1_star), sd.Pd, cfg.Pout_target};
    return sol;
}

DesignSolution optimize_interweave(const OutageModel &model, const RateContext &ctx_in, const SystemConfig &cfg,
                                   const SolverOptions &opts) {
    DesignSolution sol;
    sol.mode = SystemMode::Interweave;
    sol.P1_star = 0.0; // silent after a busy decision
    RateContext ctx = ctx_in;
    ctx.P1 = 0.0;
    ctx.w1 = mrc(ctx.h_ss);
    sol.w1_star = ctx.w1;

    const double F_peak = outage_F(model, cfg.P_peak);
    const double G = model.G;
    const double target = cfg.Pout_target;
    // Required detection probability: (1 - Pd) F(P_peak) + Pd G = target.
    const double arg = G == F_peak ? (target >= F_peak ? 0.0 : 2.0) : (target - F_peak) / (G - F_peak);

    const Case0Rates r0 = rate_case0_bound(ctx);
    const SensingRateTerms terms{r0.C00, r0.C01, 0.0, 0.0};

    if (arg <= 0.0) {
        // Outage target met even when always transmitting: no sensing needed.
        sol.status = SolveStatus::Slack;
        const double tau = 1.0 / cfg.f_s;
        const double eps = std::numeric_limits<double>::infinity();
        const SensingDesign sd = make_sensing_design(tau, eps, cfg);
        sol.tau_star = tau;
        sol.eps_star = eps;
        sol.weights = silent_when_busy(sd.coeff);
        sol.tau_at_boundary = true;
        finish_rates(sol, ctx);
        sol.trace = {sol.objective};
        sol.constraint_report = {outage_interweave(model, sd.Pd, cfg.P_peak), sd.Pd, target};
        return sol;
    }
    if (arg > 1.0) throw InfeasibleConstraint("interweave: outage target below the no-interference outage", G);
    if (arg >= 1.0 - 1e-12) {
        // Target equals G: only a never-transmitting secondary complies.
        sol.tau_star = cfg.T;
        sol.eps_star = 0.0;
        sol.weights = {};
        sol.tau_at_boundary = true;
        finish_rates(sol, ctx);
        sol.trace = {sol.objective};
        sol.constraint_report = {G, 1.0, target};
        return sol;
    }

    const SensingOptimum s = optimize_sensing(terms, cfg, arg, opts);
    const SensingDesign sd = design_for_pd(s.tau, arg, cfg);
    sol.tau_star = s.tau;
    sol.eps_star = sd.epsilon;
    sol.eps_clamped = sd.epsilon_clamped;
    sol.tau_at_boundary = s.at_boundary;
    sol.weights = silent_when_busy(sd.coeff);
    finish_rates(sol, ctx);
    sol.trace = {sol.objective};
    sol.constraint_report = {outage_interweave(model, sd.Pd, cfg.P_peak), sd.Pd, target};
    return sol;
}

DesignSolution optimize_underlay(const OutageModel &model, const RateContext &ctx_in, const SystemConfig &cfg,
                                 const SolverOptions &opts) {
    DesignSolution sol;
    sol.mode = SystemMode::Underlay;
    sol.P1_star = solve_power_pd(model, cfg, 1.0);
    RateContext ctx = ctx_in;
    ctx.P1 = sol.P1_star;
    const BeamformerResult bf = optimize_beamformer(ctx, cfg.P0_prior(), cfg.P1_prior, opts);
    ctx.w1 = bf.w;
    sol.w1_star = bf.w;
    sol.bf_converged = bf.converged;
    sol.tau_star = 0.0;
    sol.eps_star = 0.0;
    sol.weights = frame_coefficients(0.0, 0.0, cfg);
    finish_rates(sol, ctx);
    sol.trace = {sol.objective};
    sol.constraint_report = {outage_underlay(model, sol.P1_star), 1.0, cfg.Pout_target};
    return sol;
}

DesignSolution optimize_mode(SystemMode mode, const OutageModel &model, const RateContext &ctx,
                             const SystemConfig &cfg, const SolverOptions &opts) {
    switch (mode) {
    case SystemMode::Hybrid: return alternating_optimize(model, ctx, cfg, opts);
    case SystemMode::Interweave: return optimize_interweave(model, ctx, cfg, opts);
    case SystemMode::Underlay: return optimize_underlay(model, ctx, cfg, opts);
    }
    throw InvalidParameter("unknown system mode");
}

} // namespace hybridcr
