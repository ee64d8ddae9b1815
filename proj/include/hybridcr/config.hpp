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

#include <cmath>

#include "hybridcr/types.hpp"

namespace hybridcr {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Scalar system parameters. All powers and noise levels are linear.
/// Defaults reproduce the reference scenario (M = 4, 3 dB SINR threshold,
/// 10 dB primary and peak secondary power, -3 dB sensing channel, 0 dB noise).
struct SystemConfig {
    int M = 4;                       ///< antennas at each receiver
    double T = 0.1;                  ///< MAC frame length [s]
    double f_s = 6.0e6;              ///< sensing sample rate [Hz]
    double N00 = 1.0;                ///< noise power at the sensing terminal
    double N0p = 1.0;                ///< noise power at the primary receiver
    double N0s = 1.0;                ///< noise power at the secondary receiver
    double P_p = db_to_linear(10.0); ///< primary transmit power
    double P_peak = db_to_linear(10.0);
    double sigma0_sq = db_to_linear(-3.0); ///< primary-to-secondary-TX channel variance
    double gamma0 = db_to_linear(3.0);     ///< primary SINR outage threshold
    double P1_prior = 0.3;                 ///< probability the primary is active
    double Pout_target = 2.0e-2;
    double Pd_target = 0.975;
    double rho = 0.5; ///< exponential antenna correlation used by default_correlation()

    double P0_prior() const { return 1.0 - P1_prior; }
    double rho_inr_s() const { return P_p / N0s; }
    double rho_snr_p() const { return P_p / N0p; }

    /// Throws InvalidParameter describing the first violated invariant.
    void validate() const;
};

/// Covariances of the four SIMO links: pp (primary->primary RX), ps (primary->secondary RX),
/// sp (secondary->primary RX), ss (secondary->secondary RX).
struct CorrelationSet {
    CMat R_pp;
    CMat R_ps;
    CMat R_sp;
    CMat R_ss;

    int size() const { return static_cast<int>(R_pp.rows()); }

    /// All four links share one exponential model with factor rho.
    static CorrelationSet exponential(double rho, int M);

    /// Hermitian within 1e-12, eigenvalues >= -1e-12, common square dimension.
    void validate() const;
};

/// Exponential correlation for the configured rho and M.
CorrelationSet default_correlation(const SystemConfig &cfg);

} // namespace hybridcr
