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

#include "pruw/poly.hpp"

#include <set>
#include <utility>

namespace pruw {

std::vector<Fe> delta_tilde(const Field& field, std::span<const Fe> deltas,
                            std::span<const Fe> fs) {
  if (deltas.size() != fs.size()) throw DomainError("delta/f length mismatch");
  std::set<std::uint64_t> seen;
  for (Fe f : fs) {
    if (!seen.insert(f.v).second) throw DomainError("repeated f in delta_tilde");
  }
  std::vector<Fe> out(deltas.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Fe denom{1};
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (j != i) denom = field.mul(denom, field.sub(fs[j], fs[i]));
    }
    out[i] = field.div(deltas[i], denom);
  }
  return out;
}

Fe combine_update(const Field& field, std::span<const Fe> deltas,
                  std::span<const Fe> fs, Fe alpha, std::span<const Fe> noise_z) {
  if (fs.empty() || deltas.size() != fs.size()) {
    throw DomainError("combine_update needs matching non-empty deltas and fs");
  }
  if (noise_z.empty()) throw DomainError("combine_update needs T3 >= 1");
  for (Fe f : fs) {
    if (f == alpha) throw DomainError("alpha coincides with an f value");
  }
  std::vector<Fe> dt = delta_tilde(field, deltas, fs);
  Fe total{0};
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Fe term = dt[i];
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (j != i) term = field.mul(term, field.sub(fs[j], alpha));
    }
    total = field.add(total, term);
  }
  Fe prod{1};
  for (Fe f : fs) prod = field.mul(prod, field.sub(f, alpha));
  Fe noise{0};
  Fe power{1};
  for (Fe z : noise_z) {
    noise = field.add(noise, field.mul(power, z));
    power = field.mul(power, alpha);
  }
  return field.add(total, field.mul(prod, noise));
}

std::vector<Fe> lagrange_coefficients(const Field& field, std::span<const Fe> xs,
                                      std::span<const Fe> ys) {
  const std::size_t n = xs.size();
  if (ys.size() != n) throw DomainError("interpolation length mismatch");
  std::vector<Fe> coeffs(n, Fe{0});
  for (std::size_t i = 0; i < n; ++i) {
    // basis_i(x) = ∏_{j≠i} (x − x_j) / (x_i − x_j), built up as coefficients.
    std::vector<Fe> basis{Fe{1}};
    Fe denom{1};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Fe> next(basis.size() + 1, Fe{0});
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] = field.add(next[d + 1], basis[d]);
        next[d] = field.sub(next[d], field.mul(basis[d], xs[j]));
      }
      basis = std::move(next);
      denom = field.mul(denom, field.sub(xs[i], xs[j]));
    }
    Fe scale = field.div(ys[i], denom);
    for (std::size_t d = 0; d < n; ++d) {
      coeffs[d] = field.add(coeffs[d], field.mul(basis[d], scale));
    }
  }
  return coeffs;
}

Fe poly_eval(const Field& field, std::span<const Fe> coeffs, Fe x) {
  Fe acc{0};
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = field.add(field.mul(acc, x), coeffs[i]);
  }
  return acc;
}

DegreeVerdict fit_degree(const Field& field, std::span<const Fe> xs,
                        std::span<const Fe> values, int bound) {
  DegreeVerdict verdict;
  verdict.degree_bound = bound;
  if (bound < 0) {
    verdict.pass = true;
    for (Fe v : values) verdict.pass = verdict.pass && v.v == 0;
    return verdict;
  }
  const std::size_t fit = static_cast<std::size_t>(bound) + 1;
  if (xs.size() < fit + 1) {
    throw DomainError("need at least " + std::to_string(fit + 1) +
                      " evaluation points to test degree " +
                      std::to_string(bound));
  }
  verdict.coefficients =
      lagrange_coefficients(field, xs.subspan(0, fit), values.subspan(0, fit));
  verdict.pass = true;
  for (std::size_t i = fit; i < xs.size(); ++i) {
    if (!(poly_eval(field, verdict.coefficients, xs[i]) == values[i])) {
      verdict.pass = false;
    }
  }
  return verdict;
}

DegreeVerdict decomposition_residual(const Field& field, std::span<const Fe> u_values,
                             int k, std::span<const Fe> fs,
                             std::span<const Fe> alphas,
                             std::span<const Fe> expected_deltas, int T3) {
  const int ell = static_cast<int>(fs.size());
  if (k < 0 || k >= ell) throw DomainError("bit index out of range");
  if (u_values.size() != alphas.size()) throw DomainError("one U per alpha");
  if (static_cast<int>(alphas.size()) < ell + T3) {
    throw DomainError("insufficient evaluation points for the decomposition check");
  }
  std::vector<Fe> residual(alphas.size());
  for (std::size_t n = 0; n < alphas.size(); ++n) {
    residual[n] = field.div(field.sub(u_values[n], expected_deltas[k]),
                            field.sub(fs[k], alphas[n]));
  }
  return fit_degree(field, alphas, residual, ell + T3 - 2);
}

DegreeVerdict shaper_residual(const Field& field, std::span<const Fe> f_set,
                             Fe f_k, std::span<const Fe> alphas,
                             int bound_override) {
  Fe shaper_den{1};
  for (Fe r : f_set) shaper_den = field.mul(shaper_den, field.sub(r, f_k));
  if (shaper_den.v == 0) throw DomainError("f_k coincides with a null-set alpha");
  std::vector<Fe> residual(alphas.size());
  for (std::size_t n = 0; n < alphas.size(); ++n) {
    Fe shaper_num{1};
    for (Fe r : f_set) shaper_num = field.mul(shaper_num, field.sub(r, alphas[n]));
    Fe scale = field.inv(field.sub(f_k, alphas[n]));
    Fe shaped = field.mul(field.div(shaper_num, shaper_den), scale);
    residual[n] = field.sub(shaped, scale);
  }
  int bound = bound_override == -2 ? static_cast<int>(f_set.size()) - 1
                                   : bound_override;
  return fit_degree(field, alphas, residual, bound);
}

DecodeSystem decode_system(const Field& field, std::span<const Fe> data_fs,
                           std::span<const Fe> alphas, std::span<const Fe> answers,
                           int noise_terms) {
  if (answers.size() != alphas.size()) throw DomainError("one answer per alpha");
  DecodeSystem system;
  for (std::size_t n = 0; n < alphas.size(); ++n) {
    std::vector<Fe> row;
    row.reserve(data_fs.size() + noise_terms);
    for (Fe f : data_fs) row.push_back(field.inv(field.sub(f, alphas[n])));
    Fe power{1};
    for (int i = 0; i < noise_terms; ++i) {
      row.push_back(power);
      power = field.mul(power, alphas[n]);
    }
    system.rows.push_back(std::move(row));
  }
  system.rhs.assign(answers.begin(), answers.end());
  return system;
}

std::vector<Fe> solve_decode(const Field& field, DecodeSystem system) {
  auto& a = system.rows;
  auto& b = system.rhs;
  const std::size_t n = a.size();
  if (b.size() != n) throw DomainError("decode rhs length mismatch");
  for (const auto& row : a) {
    if (row.size() != n) throw DomainError("decode system is not square");
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].v == 0) ++pivot;
    if (pivot == n) throw DomainError("decode system is singular");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    Fe inv = field.inv(a[col][col]);
    for (std::size_t j = col; j < n; ++j) a[col][j] = field.mul(a[col][j], inv);
    b[col] = field.mul(b[col], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].v == 0) continue;
      Fe factor = a[r][col];
      for (std::size_t j = col; j < n; ++j) {
        a[r][j] = field.sub(a[r][j], field.mul(factor, a[col][j]));
      }
      b[r] = field.sub(b[r], field.mul(factor, b[col]));
    }
  }
  return b;
}

}  // namespace pruw
