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

#include <atomic>
#include <stdexcept>

#include "hybridcr/kernels.hpp"

namespace hybridcr::kernels {

namespace {

struct Table {
    Isa isa;
    double (*sum_abs2)(std::span<const std::complex<double>>);
    std::size_t (*count_sinr_below)(std::span<const double>, std::span<const double>, double, double, double);
    void (*project_abs2)(std::span<const std::complex<double>>, std::span<const double>, std::span<const double>,
                         std::size_t, std::span<double>);
};

constexpr Table kScalar{Isa::Scalar, &scalar::sum_abs2, &scalar::count_sinr_below, &scalar::project_abs2};
constexpr Table kAvx2{Isa::Avx2, &avx2::sum_abs2, &avx2::count_sinr_below, &avx2::project_abs2};

bool cpu_has_avx2() {
#if defined(HYBRIDCR_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table *initial_table() { return cpu_has_avx2() ? &kAvx2 : &kScalar; }

std::atomic<const Table *> &active() {
    static std::atomic<const Table *> table{initial_table()};
    return table;
}

} // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

Isa best_available_isa() { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return active().load()->isa; }

void set_active_isa(Isa isa) {
    if (!isa_available(isa)) throw std::invalid_argument("requested ISA is not available on this CPU");
    active().store(isa == Isa::Avx2 ? &kAvx2 : &kScalar);
}

double sum_abs2(std::span<const std::complex<double>> x) { return active().load()->sum_abs2(x); }

std::size_t count_sinr_below(std::span<const double> signal, std::span<const double> interference, double noise,
                             double power, double gamma0) {
    return active().load()->count_sinr_below(signal, interference, noise, power, gamma0);
}

void project_abs2(std::span<const std::complex<double>> w, std::span<const double> h_re,
                  std::span<const double> h_im, std::size_t n, std::span<double> out) {
    active().load()->project_abs2(w, h_re, h_im, n, out);
}

} // namespace hybridcr::kernels
