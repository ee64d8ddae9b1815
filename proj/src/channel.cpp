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

#include "hybridcr/channel.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/Eigenvalues>

namespace hybridcr {

namespace {

void require_positive(double v, const char *name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidParameter(std::string(name) + " must be finite and > 0");
}

void require_open_unit(double v, const char *name) {
    if (!(v > 0.0 && v < 1.0)) throw InvalidParameter(std::string(name) + " must lie in (0,1)");
}

void check_psd(const CMat &R, const char *name) {
    if (R.rows() != R.cols()) throw InvalidParameter(std::string(name) + " is not square");
    if (!is_hermitian(R)) throw InvalidParameter(std::string(name) + " is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(R, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().size() > 0 && es.eigenvalues().minCoeff() < -1e-12)
        throw NotPositiveDefinite(std::string(name) + " has a negative eigenvalue");
}

} // namespace

void SystemConfig::validate() const {
    if (M < 1) throw InvalidParameter("M must be >= 1");
    require_positive(T, "T");
    require_positive(f_s, "f_s");
    require_positive(N00, "N00");
    require_positive(N0p, "N0p");
    require_positive(N0s, "N0s");
    require_positive(P_p, "P_p");
    require_positive(P_peak, "P_peak");
    require_positive(sigma0_sq, "sigma0_sq");
    require_positive(gamma0, "gamma0");
    if (!(P1_prior >= 0.0 && P1_prior <= 1.0)) throw InvalidParameter("P1_prior must lie in [0,1]");
    require_open_unit(Pout_target, "Pout_target");
    require_open_unit(Pd_target, "Pd_target");
    if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidParameter("rho must lie in [0,1]");
}

CorrelationSet CorrelationSet::exponential(double rho, int M) {
    CMat R = exp_correlation(rho, M);
    return {R, R, R, R};
}

void CorrelationSet::validate() const {
    const auto M = R_pp.rows();
    if (R_ps.rows() != M || R_sp.rows() != M || R_ss.rows() != M)
        throw InvalidParameter("covariance matrices must share one dimension");
    check_psd(R_pp, "R_pp");
    check_psd(R_ps, "R_ps");
    check_psd(R_sp, "R_sp");
    check_psd(R_ss, "R_ss");
}

CorrelationSet default_correlation(const SystemConfig &cfg) {
    return CorrelationSet::exponential(cfg.rho, cfg.M);
}

CMat exp_correlation(double rho, int M) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidParameter("rho must lie in [0,1]");
    if (M < 1) throw InvalidParameter("M must be >= 1");
    CMat R(M, M);
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q) R(p, q) = std::pow(rho, std::abs(p - q));
    return R;
}

bool is_hermitian(const CMat &A, double tol) {
    if (A.rows() != A.cols()) return false;
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    return (A - A.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

CMat matrix_sqrt(const CMat &R) {
    if (!is_hermitian(R)) throw InvalidParameter("matrix_sqrt: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(R);
    RVec ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-9) throw NotPositiveDefinite("matrix_sqrt: eigenvalue below -1e-9");
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    const CMat &V = es.eigenvectors();
    CMat S = V * ev.asDiagonal() * V.adjoint();
    // Symmetrize away rounding so S is Hermitian to machine precision.
    return 0.5 * (S + S.adjoint());
}

ChannelSampler::ChannelSampler(const CorrelationSet &corr, double sigma0_sq)
    : S_pp_(matrix_sqrt(corr.R_pp)), S_ps_(matrix_sqrt(corr.R_ps)), S_sp_(matrix_sqrt(corr.R_sp)),
      S_ss_(matrix_sqrt(corr.R_ss)), sigma0_sq_(sigma0_sq) {
    if (sigma0_sq < 0.0) throw InvalidParameter("sigma0_sq must be >= 0");
}

CVec ChannelSampler::correlated(const CMat &root, Rng &rng) {
    CVec w(root.cols());
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.complex_normal();
    return root * w;
}

ChannelDraw ChannelSampler::draw(Rng &rng) const {
    ChannelDraw d;
    d.h_pp = correlated(S_pp_, rng);
    d.h_ps = correlated(S_ps_, rng);
    d.h_sp = correlated(S_sp_, rng);
    d.h_ss = correlated(S_ss_, rng);
    d.h0 = rng.complex_normal(sigma0_sq_);
    return d;
}

ChannelDraw sample_channels(const CorrelationSet &corr, double sigma0_sq, std::uint64_t rng_seed) {
    ChannelSampler sampler(corr, sigma0_sq);
    Rng rng(rng_seed);
    return sampler.draw(rng);
}

} // namespace hybridcr
