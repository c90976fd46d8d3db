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

#include "pruw/kernels.hpp"

#include <omp.h>

namespace pruw::kernels {

namespace {

void check_shape(std::size_t cells, std::size_t width, std::size_t vecs,
                 std::size_t period, std::size_t rows) {
  if (width == 0 || period == 0) throw DomainError("kernel width/period is zero");
  if (cells != rows * width) throw DomainError("kernel cell count mismatch");
  if (vecs != period * width) throw DomainError("kernel vector length mismatch");
}

}  // namespace

void dot_rows(const Field& field, std::span<const Fe> cells, std::size_t width,
              std::span<const Fe> vecs, std::size_t period, std::span<Fe> out) {
  check_shape(cells.size(), width, vecs.size(), period, out.size());
  const std::uint64_t q = field.q();
  const std::uint64_t budget = field.lazy_budget();
  const auto rows = static_cast<std::int64_t>(out.size());
  // Products are accumulated unreduced in 128 bits and folded only when
  // the accumulator could overflow.
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const Fe* row = cells.data() + r * width;
    const Fe* vec = vecs.data() + (r % period) * width;
    unsigned __int128 acc = 0;
    std::uint64_t pending = 0;
    for (std::size_t i = 0; i < width; ++i) {
      acc += static_cast<unsigned __int128>(row[i].v) * vec[i].v;
      if (++pending == budget) {
        acc %= q;
        pending = 1;
      }
    }
    out[r] = Fe{static_cast<std::uint64_t>(acc % q)};
  }
}

void dot_rows_serial(const Field& field, std::span<const Fe> cells,
                     std::size_t width, std::span<const Fe> vecs,
                     std::size_t period, std::span<Fe> out) {
  check_shape(cells.size(), width, vecs.size(), period, out.size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    Fe acc{0};
    for (std::size_t i = 0; i < width; ++i) {
      acc = field.add(acc, field.mul(cells[r * width + i],
                                     vecs[(r % period) * width + i]));
    }
    out[r] = acc;
  }
}

void axpy_rows(const Field& field, std::span<Fe> cells, std::size_t width,
               std::span<const Fe> coeffs, std::span<const Fe> vecs,
               std::size_t period) {
  check_shape(cells.size(), width, vecs.size(), period, coeffs.size());
  const std::uint64_t q = field.q();
  const auto rows = static_cast<std::int64_t>(coeffs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const std::uint64_t c = coeffs[r].v;
    if (c == 0) continue;
    Fe* row = cells.data() + r * width;
    const Fe* vec = vecs.data() + (r % period) * width;
    for (std::size_t i = 0; i < width; ++i) {
      auto t = (static_cast<unsigned __int128>(c) * vec[i].v + row[i].v) % q;
      row[i] = Fe{static_cast<std::uint64_t>(t)};
    }
  }
}

void axpy_rows_serial(const Field& field, std::span<Fe> cells, std::size_t width,
                      std::span<const Fe> coeffs, std::span<const Fe> vecs,
                      std::size_t period) {
  check_shape(cells.size(), width, vecs.size(), period, coeffs.size());
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    for (std::size_t i = 0; i < width; ++i) {
      Fe& cell = cells[r * width + i];
      cell = field.add(cell, field.mul(coeffs[r], vecs[(r % period) * width + i]));
    }
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace pruw::kernels
