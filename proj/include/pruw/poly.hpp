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

#include <span>
#include <vector>

#include "pruw/field.hpp"

namespace pruw {

// Δ̃_i = Δ_i / ∏_{j≠i}(f_j − f_i).
std::vector<Fe> delta_tilde(const Field& field, std::span<const Fe> deltas,
                            std::span<const Fe> fs);

// The single symbol a database receives for one subpacket:
//   Σ_i Δ̃_i ∏_{j≠i}(f_j − α) + ∏_j(f_j − α) · Σ_k α^k z_k
Fe combine_update(const Field& field, std::span<const Fe> deltas,
                  std::span<const Fe> fs, Fe alpha, std::span<const Fe> noise_z);

// Coefficients (lowest degree first) of the unique polynomial of degree
// < xs.size() through the points. Lagrange form, expanded.
std::vector<Fe> lagrange_coefficients(const Field& field, std::span<const Fe> xs,
                                      std::span<const Fe> ys);
Fe poly_eval(const Field& field, std::span<const Fe> coeffs, Fe x);

struct DegreeVerdict {
  bool pass = false;
  int degree_bound = 0;
  std::vector<Fe> coefficients;  // fitted residual, lowest degree first
};

// Checks that values[n] lie on one polynomial in xs[n] of degree <= bound.
// A bound of -1 means the values must all be zero.
DegreeVerdict fit_degree(const Field& field, std::span<const Fe> xs,
                        std::span<const Fe> values, int bound);

// Residual (U_n − Δ_k)/(f_k − α_n) must have degree <= ell + T3 − 2 in α_n.
// k is 0-based.
DegreeVerdict decomposition_residual(const Field& field, std::span<const Fe> u_values,
                             int k, std::span<const Fe> fs,
                             std::span<const Fe> alphas,
                             std::span<const Fe> expected_deltas, int T3);

// Null-shaper residual
//   [∏_F(α_r−α_n)/∏_F(α_r−f_k)]/(f_k−α_n) − 1/(f_k−α_n)
// must have degree <= |F| − 1 (or the given bound when >= 0 is passed).
DegreeVerdict shaper_residual(const Field& field, std::span<const Fe> f_set,
                             Fe f_k, std::span<const Fe> alphas,
                             int bound_override = -2);

// Rows [1/(f_1−α_n) … 1/(f_ℓ−α_n), 1, α_n, …, α_n^{noise_terms−1}].
struct DecodeSystem {
  std::vector<std::vector<Fe>> rows;
  std::vector<Fe> rhs;
};

DecodeSystem decode_system(const Field& field, std::span<const Fe> data_fs,
                           std::span<const Fe> alphas, std::span<const Fe> answers,
                           int noise_terms);

// Gaussian elimination over F_q. Throws DomainError when not square or
// singular.
std::vector<Fe> solve_decode(const Field& field, DecodeSystem system);

}  // namespace pruw
