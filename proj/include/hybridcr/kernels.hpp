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

// Data-parallel inner loops of the Monte Carlo oracles.
//
// Every kernel has a portable scalar reference in kernels::scalar and, on x86-64, an
// AVX2/FMA variant in kernels::avx2. The unqualified entry points dispatch through a
// table chosen once at startup from CPUID; tests pin each ISA and compare.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace hybridcr::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa best_available_isa();
Isa active_isa();
/// Forces an ISA (tests, benchmarks). Throws std::invalid_argument if the CPU lacks it.
void set_active_isa(Isa isa);

/// Sum of |x_n|^2 over interleaved complex samples (energy detector statistic).
double sum_abs2(std::span<const std::complex<double>> x);

/// Counts i with signal[i] < gamma0 * (noise + power * interference[i]),
/// i.e. receiver SINR below threshold. Spans must have equal length.
std::size_t count_sinr_below(std::span<const double> signal, std::span<const double> interference, double noise,
                             double power, double gamma0);

/// out[i] = |Σ_m conj(w_m) h_{m,i}|^2 for vectors stored as M planes of length n
/// (re/im split, plane m at offset m*n). Used for batched |wᴴh|^2 projections.
void project_abs2(std::span<const std::complex<double>> w, std::span<const double> h_re,
                  std::span<const double> h_im, std::size_t n, std::span<double> out);

namespace scalar {
double sum_abs2(std::span<const std::complex<double>> x);
std::size_t count_sinr_below(std::span<const double> signal, std::span<const double> interference, double noise,
                             double power, double gamma0);
void project_abs2(std::span<const std::complex<double>> w, std::span<const double> h_re,
                  std::span<const double> h_im, std::size_t n, std::span<double> out);
} // namespace scalar

namespace avx2 {
double sum_abs2(std::span<const std::complex<double>> x);
std::size_t count_sinr_below(std::span<const double> signal, std::span<const double> interference, double noise,
                             double power, double gamma0);
void project_abs2(std::span<const std::complex<double>> w, std::span<const double> h_re,
                  std::span<const double> h_im, std::size_t n, std::span<double> out);
} // namespace avx2

} // namespace hybridcr::kernels
