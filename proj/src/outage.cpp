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

#include "hybridcr/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "hybridcr/channel.hpp"

namespace hybridcr {

namespace {

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

// Partial-fraction weights of prod_j 1/(1 + s lambda_j):
//   prod_j 1/(1 + s l_j) = (1/prod l) sum_j [1/(1/l_j + s)] / prod_{k != j} (1/l_k - 1/l_j).
double partial_fraction_weight(const RVec &l, Eigen::Index j) {
    double den = 1.0;
    for (Eigen::Index k = 0; k < l.size(); ++k)
        if (k != j) den *= 1.0 / l(k) - 1.0 / l(j);
    return den;
}

double min_relative_gap(const RVec &eigs) {
    if (eigs.size() < 2) return std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 1; j < eigs.size(); ++j) gap = std::min(gap, eigs(j) - eigs(j - 1));
    return gap / eigs.maxCoeff();
}

// d/dx ln F = (sum_j b_j x/(x + b_j) - c) / x^2 with b_j = Pp l_j/(gamma0 lambda_bar), c = N0p/lambda_bar.
double locate_minimum(const OutageModel &m) {
    const double c = m.N0p / m.lambda_bar;
    const RVec b = m.eigs_pp * (m.Pp / (m.gamma0 * m.lambda_bar));
    if (b.sum() <= c) return std::numeric_limits<double>::infinity();
    auto phi = [&](double x) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < b.size(); ++j) s += b(j) * x / (x + b(j));
        return s - c;
    };
    double hi = 1.0;
    while (phi(hi) <= 0.0) hi *= 2.0;
    return bisect_root(phi, 0.0, hi, 0.0, 2000);
}

} // namespace

OutageModel build_outage_model(const CorrelationSet &corr, const SystemConfig &cfg, const QuadratureSpec &quad) {
    cfg.validate();
    corr.validate();
    OutageModel m;
    m.R_pp = corr.R_pp;
    m.R_sp = corr.R_sp;
    m.gamma0 = cfg.gamma0;
    m.Pp = cfg.P_p;
    m.N0p = cfg.N0p;

    Eigen::SelfAdjointEigenSolver<CMat> es(corr.R_pp, Eigen::EigenvaluesOnly);
    m.eigs_pp = es.eigenvalues();
    if (m.eigs_pp.minCoeff() <= 0.0) throw NotPositiveDefinite("R_pp must be positive definite");

    const CMat S = matrix_sqrt(corr.R_pp);
    m.lambda_bar = ratio_quadform_mean(corr.R_pp, S * corr.R_sp * S, quad);
    if (!(m.lambda_bar > 0.0)) throw InvalidParameter("lambda_bar must be > 0 (R_sp is zero?)");

    m.min_rel_gap = min_relative_gap(m.eigs_pp);
    m.degenerate = m.min_rel_gap < OutageModel::kDegenerateGap;

    const double threshold = m.gamma0 / m.rho_snr_p();
    m.G = m.degenerate ? outage_G_phase_type(m.eigs_pp, threshold)
                       : outage_G_partial_fraction(m.eigs_pp, threshold);

    m.P_min_mono = locate_minimum(m);
    m.F_min = std::isfinite(m.P_min_mono) ? outage_F(m, m.P_min_mono) : 0.0;
    return m;
}

double log_outage_F_product(const OutageModel &m, double x) {
    if (!(x > 0.0)) throw InvalidParameter("log_outage_F: x must be > 0");
    const double scale = m.Pp / (m.gamma0 * x * m.lambda_bar);
    double acc = m.N0p / (x * m.lambda_bar);
    for (Eigen::Index j = 0; j < m.eigs_pp.size(); ++j) acc -= std::log1p(scale * m.eigs_pp(j));
    return acc;
}

double log_outage_F_partial_fraction(const OutageModel &m, double x) {
    if (!(x > 0.0)) throw InvalidParameter("log_outage_F: x must be > 0");
    const RVec &l = m.eigs_pp;
    const double gxl = m.gamma0 * x * m.lambda_bar;
    double sum = 0.0;
    for (Eigen::Index j = 0; j < l.size(); ++j)
        sum += l(j) * gxl / (m.Pp * l(j) + gxl) / partial_fraction_weight(l, j);
    sum /= l.prod();
    // Cancellation can push a tiny true value to or below zero.
    if (!(sum > 0.0)) return -std::numeric_limits<double>::infinity();
    return m.N0p / (x * m.lambda_bar) + std::log(sum);
}

double log_outage_F(const OutageModel &m, double x) {
    return m.degenerate ? log_outage_F_product(m, x) : log_outage_F_partial_fraction(m, x);
}

double outage_F(const OutageModel &m, double x) {
    if (std::isnan(x) || x < 0.0) throw InvalidParameter("outage_F: x must be >= 0");
    if (x == 0.0) return m.G;
    const double lf = log_outage_F(m, x);
    if (lf >= 0.0) return 1.0;
    return clamp01(std::exp(lf));
}

double outage_G(const OutageModel &m) { return m.G; }

double outage_G_partial_fraction(const RVec &l, double t) {
    if (!(t >= 0.0)) throw InvalidParameter("outage_G: threshold must be >= 0");
    double sum = 0.0;
    for (Eigen::Index j = 0; j < l.size(); ++j)
        sum += l(j) * (-std::expm1(-t / l(j))) / partial_fraction_weight(l, j);
    return clamp01(sum / l.prod());
}

double outage_G_phase_type(const RVec &l, double t) {
    if (!(t >= 0.0)) throw InvalidParameter("outage_G: threshold must be >= 0");
    const Eigen::Index M = l.size();
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(M, M);
    for (Eigen::Index j = 0; j < M; ++j) {
        S(j, j) = -1.0 / l(j);
        if (j + 1 < M) S(j, j + 1) = 1.0 / l(j);
    }
    const Eigen::MatrixXd E = (S * t).exp();
    return clamp01(1.0 - E.row(0).sum());
}

double outage_hybrid(const OutageModel &m, double Pd, double P0, double P1) {
    if (!(Pd >= 0.0 && Pd <= 1.0)) throw InvalidParameter("outage_hybrid: Pd outside [0,1]");
    return clamp01((1.0 - Pd) * outage_F(m, P0) + Pd * outage_F(m, P1));
}

double outage_interweave(const OutageModel &m, double Pd, double P_peak) {
    if (!(Pd >= 0.0 && Pd <= 1.0)) throw InvalidParameter("outage_interweave: Pd outside [0,1]");
    return clamp01((1.0 - Pd) * outage_F(m, P_peak) + Pd * m.G);
}

double outage_underlay(const OutageModel &m, double P_und) { return outage_F(m, P_und); }

} // namespace hybridcr
