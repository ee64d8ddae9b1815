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

// Portable reference kernels. These define the semantics the SIMD variants must match.

#include <stdexcept>

#include "hybridcr/kernels.hpp"

namespace hybridcr::kernels::scalar {

double sum_abs2(std::span<const std::complex<double>> x) {
    double acc = 0.0;
    for (const auto &v : x) acc += v.real() * v.real() + v.imag() * v.imag();
    return acc;
}

std::size_t count_sinr_below(std::span<const double> signal, std::span<const double> interference, double noise,
                             double power, double gamma0) {
    if (signal.size() != interference.size()) throw std::invalid_argument("count_sinr_below: length mismatch");
    std::size_t n = 0;
    for (std::size_t i = 0; i < signal.size(); ++i)
        n += signal[i] < gamma0 * (noise + power * interference[i]) ? 1 : 0;
    return n;
}

void project_abs2(std::span<const std::complex<double>> w, std::span<const double> h_re,
                  std::span<const double> h_im, std::size_t n, std::span<double> out) {
    const std::size_t M = w.size();
    if (h_re.size() < M * n || h_im.size() < M * n || out.size() < n)
        throw std::invalid_argument("project_abs2: buffer too small");
    for (std::size_t i = 0; i < n; ++i) {
        double re = 0.0, im = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            // conj(w) * h
            const double wr = w[m].real(), wi = w[m].imag();
            const double hr = h_re[m * n + i], hi = h_im[m * n + i];
            re += wr * hr + wi * hi;
            im += wr * hi - wi * hr;
        }
        out[i] = re * re + im * im;
    }
}

} // namespace hybridcr::kernels::scalar
