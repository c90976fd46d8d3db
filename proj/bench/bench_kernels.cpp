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

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "pruw/field.hpp"
#include "pruw/kernels.hpp"

namespace {

constexpr std::uint64_t kPrime = 2147483647;

struct Fixture {
  pruw::Field field{kPrime};
  std::vector<pruw::Fe> cells, vecs, coeffs, out;
  std::size_t width;

  Fixture(std::size_t rows, std::size_t w, std::size_t period) : width(w) {
    pruw::Rng rng(7);
    cells = pruw::seeded_uniform(rng, field, rows * w);
    vecs = pruw::seeded_uniform(rng, field, period * w);
    coeffs = pruw::seeded_uniform(rng, field, rows);
    out.resize(rows);
  }
};

void BM_DotRows(benchmark::State& state) {
  Fixture fx(state.range(0), 8, 4);
  for (auto _ : state) {
    pruw::kernels::dot_rows(fx.field, fx.cells, fx.width, fx.vecs, 4, fx.out);
    benchmark::DoNotOptimize(fx.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}

void BM_DotRowsSerial(benchmark::State& state) {
  Fixture fx(state.range(0), 8, 4);
  for (auto _ : state) {
    pruw::kernels::dot_rows_serial(fx.field, fx.cells, fx.width, fx.vecs, 4, fx.out);
    benchmark::DoNotOptimize(fx.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}

void BM_AxpyRows(benchmark::State& state) {
  Fixture fx(state.range(0), 8, 4);
  for (auto _ : state) {
    pruw::kernels::axpy_rows(fx.field, fx.cells, fx.width, fx.coeffs, fx.vecs, 4);
    benchmark::DoNotOptimize(fx.cells.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}

void BM_AxpyRowsSerial(benchmark::State& state) {
  Fixture fx(state.range(0), 8, 4);
  for (auto _ : state) {
    pruw::kernels::axpy_rows_serial(fx.field, fx.cells, fx.width, fx.coeffs, fx.vecs, 4);
    benchmark::DoNotOptimize(fx.cells.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}

BENCHMARK(BM_DotRows)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_DotRowsSerial)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_AxpyRows)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_AxpyRowsSerial)->Range(1 << 10, 1 << 18);

}  // namespace

BENCHMARK_MAIN();
