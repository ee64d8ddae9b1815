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

// AVX2/FMA variants. This translation unit alone is compiled with -mavx2 -mfma; nothing
// here may run unless dispatch confirmed CPU support.

#include <stdexcept>

#include "hybridcr/kernels.hpp"

#if defined(HYBRIDCR_HAVE_AVX2_TU)
#include <immintrin.h>

namespace hybridcr::kernels::avx2 {

namespace {
inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}
} // namespace

double sum_abs2(std::span<const std::complex<double>> x) {
    // Interleaved re/im doubles; |z|^2 summed lane-wise.
    const double *p = reinterpret_cast<const double *>(x.data());
    const std::size_t nd = 2 * x.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= nd; i += 8) {
        const __m256d a = _mm256_loadu_pd(p + i);
        const __m256d b = _mm256_loadu_pd(p + i + 4);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
        acc1 = _mm256_fmadd_pd(b, b, acc1);
    }
    for (; i + 4 <= nd; i += 4) {
        const __m256d a = _mm256_loadu_pd(p + i);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < nd; ++i) acc += p[i] * p[i];
    return acc;
}

std::size_t count_sinr_below(std::span<const double> signal, std::span<const double> interference, double noise,
                             double power, double gamma0) {
    if (signal.size() != interference.size()) throw std::invalid_argument("count_sinr_below: length mismatch");
    const std::size_t n = signal.size();
    const __m256d g = _mm256_set1_pd(gamma0);
    const __m256d nz = _mm256_set1_pd(noise);
    const __m256d pw = _mm256_set1_pd(power);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d s = _mm256_loadu_pd(signal.data() + i);
        const __m256d y = _mm256_loadu_pd(interference.data() + i);
        // Same rounding as the scalar path: gamma0 * (noise + power * y), no fused contraction.
        const __m256d rhs = _mm256_mul_pd(g, _mm256_add_pd(nz, _mm256_mul_pd(pw, y)));
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(s, rhs, _CMP_LT_OQ));
        count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (; i < n; ++i) count += signal[i] < gamma0 * (noise + power * interference[i]) ? 1 : 0;
    return count;
}

void project_abs2(std::span<const std::complex<double>> w, std::span<const double> h_re,
                  std::span<const double> h_im, std::size_t n, std::span<double> out) {
    const std::size_t M = w.size();
    if (h_re.size() < M * n || h_im.size() < M * n || out.size() < n)
        throw std::invalid_argument("project_abs2: buffer too small");
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d re = _mm256_setzero_pd();
        __m256d im = _mm256_setzero_pd();
        for (std::size_t m = 0; m < M; ++m) {
            const __m256d wr = _mm256_set1_pd(w[m].real());
            const __m256d wi = _mm256_set1_pd(w[m].imag());
            const __m256d hr = _mm256_loadu_pd(h_re.data() + m * n + i);
            const __m256d hi = _mm256_loadu_pd(h_im.data() + m * n + i);
            re = _mm256_fmadd_pd(wr, hr, _mm256_fmadd_pd(wi, hi, re));
            im = _mm256_fmadd_pd(wr, hi, _mm256_fnmadd_pd(wi, hr, im));
        }
        _mm256_storeu_pd(out.data() + i, _mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im)));
    }
    for (; i < n; ++i) {
        double re = 0.0, im = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            const double wr = w[m].real(), wi = w[m].imag();
            const double hr = h_re[m * n + i], hi = h_im[m * n + i];
            re += wr * hr + wi * hi;
            im += wr * hi - wi * hr;
        }
        out[i] = re * re + im * im;
    }
}

} // namespace hybridcr::kernels::avx2

#else

namespace hybridcr::kernels::avx2 {

[[noreturn]] static void unavailable() { throw std::logic_error("AVX2 kernels not compiled for this target"); }

double sum_abs2(std::span<const std::complex<double>>) { unavailable(); }
std::size_t count_sinr_below(std::span<const double>, std::span<const double>, double, double, double) {
    unavailable();
}
void project_abs2(std::span<const std::complex<double>>, std::span<const double>, std::span<const double>,
                  std::size_t, std::span<double>) {
    unavailable();
}

} // namespace hybridcr::kernels::avx2

#endif
