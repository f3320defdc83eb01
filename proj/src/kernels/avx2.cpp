// Copyright 2026 the tatkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <immintrin.h>

#include "tat/kernels.hpp"

namespace tat::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

void coupled_matvec_avx2(const double* J, const double* sx, const double* sy,
                         double* hx, double* hy, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = J + i * n;
        __m256d ax0 = _mm256_setzero_pd();
        __m256d ay0 = _mm256_setzero_pd();
        __m256d ax1 = _mm256_setzero_pd();
        __m256d ay1 = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 8 <= n; j += 8) {
            const __m256d r0 = _mm256_loadu_pd(row + j);
            const __m256d r1 = _mm256_loadu_pd(row + j + 4);
            ax0 = _mm256_fmadd_pd(r0, _mm256_loadu_pd(sx + j), ax0);
            ay0 = _mm256_fmadd_pd(r0, _mm256_loadu_pd(sy + j), ay0);
            ax1 = _mm256_fmadd_pd(r1, _mm256_loadu_pd(sx + j + 4), ax1);
            ay1 = _mm256_fmadd_pd(r1, _mm256_loadu_pd(sy + j + 4), ay1);
        }
        for (; j < n4; j += 4) {
            const __m256d r0 = _mm256_loadu_pd(row + j);
            ax0 = _mm256_fmadd_pd(r0, _mm256_loadu_pd(sx + j), ax0);
            ay0 = _mm256_fmadd_pd(r0, _mm256_loadu_pd(sy + j), ay0);
        }
        double ax = hsum(_mm256_add_pd(ax0, ax1));
        double ay = hsum(_mm256_add_pd(ay0, ay1));
        for (; j < n; ++j) {
            ax += row[j] * sx[j];
            ay += row[j] * sy[j];
        }
        hx[i] = ax;
        hy[i] = ay;
    }
}

}  // namespace tat::kernels
