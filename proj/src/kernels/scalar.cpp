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

#include "tat/kernels.hpp"

namespace tat::kernels {

void coupled_matvec_scalar(const double* J, const double* sx, const double* sy,
                           double* hx, double* hy, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = J + i * n;
        double ax = 0.0, ay = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            ax += row[j] * sx[j];
            ay += row[j] * sy[j];
        }
        hx[i] = ax;
        hy[i] = ay;
    }
}

}  // namespace tat::kernels
