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

#include <cstdlib>
#include <cstring>

#include "tat/kernels.hpp"

namespace tat::kernels {

namespace {

struct Selection {
    CoupledMatvecFn fn;
    const char* name;
};

Selection select() {
    const char* env = std::getenv("TAT_KERNEL");
#if defined(TATKIT_ENABLE_AVX2)
    const bool have_avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    if (env && std::strcmp(env, "avx2") == 0 && have_avx2) return {coupled_matvec_avx2, "avx2"};
    if (env && std::strcmp(env, "scalar") == 0) return {coupled_matvec_scalar, "scalar"};
    if (have_avx2) return {coupled_matvec_avx2, "avx2"};
#else
    if (env && std::strcmp(env, "scalar") == 0) return {coupled_matvec_scalar, "scalar"};
#endif
    return {coupled_matvec_scalar, "scalar"};
}

const Selection& selection() {
    static const Selection s = select();
    return s;
}

}  // namespace

CoupledMatvecFn coupled_matvec() { return selection().fn; }

const char* active_kernel_name() { return selection().name; }

}  // namespace tat::kernels
