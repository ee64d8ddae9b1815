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

#include <cstdint>

#include "hybridcr/config.hpp"
#include "hybridcr/rng.hpp"
#include "hybridcr/types.hpp"

namespace hybridcr {

/// Matrix with entries rho^|p-q|. Throws InvalidParameter for rho outside [0,1] or M < 1.
CMat exp_correlation(double rho, int M);

/// Hermitian PSD square root through the eigendecomposition. Eigenvalues in [-1e-9, 0)
/// are clamped to zero; anything more negative raises NotPositiveDefinite.
CMat matrix_sqrt(const CMat &R);

bool is_hermitian(const CMat &A, double tol = 1e-12);

/// One joint realization of every channel in the system.
struct ChannelDraw {
    CVec h_pp;
    CVec h_ps;
    CVec h_sp;
    CVec h_ss;
    cdouble h0;
};

/// Draws h = R^{1/2} w with w ~ CN(0, I). Square roots are computed once at construction.
class ChannelSampler {
public:
    ChannelSampler(const CorrelationSet &corr, double sigma0_sq);

    ChannelDraw draw(Rng &rng) const;

    /// Single correlated vector for one link covariance root.
    static CVec correlated(const CMat &root, Rng &rng);

    const CMat &sqrt_pp() const { return S_pp_; }
    const CMat &sqrt_ps() const { return S_ps_; }
    const CMat &sqrt_sp() const { return S_sp_; }
    const CMat &sqrt_ss() const { return S_ss_; }

private:
    CMat S_pp_, S_ps_, S_sp_, S_ss_;
    double sigma0_sq_;
};

/// One-shot draw, deterministic in the seed.
ChannelDraw sample_channels(const CorrelationSet &corr, double sigma0_sq, std::uint64_t rng_seed);

} // namespace hybridcr
