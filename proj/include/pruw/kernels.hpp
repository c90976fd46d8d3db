// Copyright 2026 The PRUW Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>

#include "pruw/field.hpp"

// Database-side inner loops. Every scheme reduces its answer and
// incremental-update work to these two row operations over the dense cell
// array. The OpenMP versions are used by the protocols; the *_serial
// versions are plain reference loops kept for tests and benchmarks.
namespace pruw::kernels {

// out[r] = Σ_i cells[r*width + i] · vecs[(r % period)*width + i]
void dot_rows(const Field& field, std::span<const Fe> cells, std::size_t width,
              std::span<const Fe> vecs, std::size_t period, std::span<Fe> out);
void dot_rows_serial(const Field& field, std::span<const Fe> cells,
                     std::size_t width, std::span<const Fe> vecs,
                     std::size_t period, std::span<Fe> out);

// cells[r*width + i] += coeffs[r] · vecs[(r % period)*width + i]
void axpy_rows(const Field& field, std::span<Fe> cells, std::size_t width,
               std::span<const Fe> coeffs, std::span<const Fe> vecs,
               std::size_t period);
void axpy_rows_serial(const Field& field, std::span<Fe> cells, std::size_t width,
                      std::span<const Fe> coeffs, std::span<const Fe> vecs,
                      std::size_t period);

int max_threads();

}  // namespace pruw::kernels
