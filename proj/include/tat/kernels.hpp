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

#pragma once

#include <cstddef>

namespace tat::kernels {

// hx = J * sx, hy = J * sy for a dense row-major n x n matrix J.
// The two right-hand sides share one pass over J; this is the hot loop
// of the semiclassical trajectory integrator.
using CoupledMatvecFn = void (*)(const double* J, const double* sx, const double* sy,
                                 double* hx, double* hy, std::size_t n);

void coupled_matvec_scalar(const double* J, const double* sx, const double* sy,
                           double* hx, double* hy, std::size_t n);

#if defined(TATKIT_ENABLE_AVX2)
void coupled_matvec_avx2(const double* J, const double* sx, const double* sy,
                         double* hx, double* hy, std::size_t n);
#endif

// Variant selected once at startup from CPU features; the environment
// variable TAT_KERNEL=scalar|avx2 overrides the choice.
CoupledMatvecFn coupled_matvec();
const char* active_kernel_name();

}  // namespace tat::kernels
