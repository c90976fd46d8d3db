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

#include <array>
#include <cstring>
#include <istream>
#include <ostream>

#include "pruw/storage.hpp"

namespace pruw {

namespace {

constexpr std::array<char, 5> kMagic = {'P', 'R', 'U', 'W', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw IntegrityError("snapshot truncated");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

// Reads words from the in-memory header with bounds checks.
class HeaderReader {
 public:
  explicit HeaderReader(std::vector<std::uint64_t> words) : words_(std::move(words)) {}
  std::uint64_t next() {
    if (pos_ >= words_.size()) throw IntegrityError("snapshot header truncated");
    return words_[pos_++];
  }
  int next_int() { return static_cast<int>(next()); }
  bool done() const { return pos_ == words_.size(); }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t pos_ = 0;
};

void ell_and_subpackets(const DatabaseState& s, std::uint64_t& ell,
                        std::uint64_t& P) {
  ell = 0;
  P = 0;
  if (const auto* b = std::get_if<BasicVariant>(&s.variant)) ell = b->ell;
  if (const auto* t = std::get_if<TopRVariant>(&s.variant)) ell = t->ell;
  if (ell > 0) P = s.L_padded / ell;
}

}  // namespace

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  if (snap.states.empty()) throw DomainError("snapshot needs at least one state");
  const DatabaseState& first = snap.states[0];
  std::vector<std::uint64_t> header;
  std::uint64_t ell = 0, P = 0;
  ell_and_subpackets(first, ell, P);
  header.insert(header.end(),
                {variant_tag(first.variant), snap.params.q(),
                 std::uint64_t(snap.states.size()), std::uint64_t(first.M),
                 first.L, P, ell, first.L_padded, snap.coordinator.master_seed,
                 snap.coordinator.storage_seed, snap.coordinator.permutation_seed,
                 snap.coordinator.reversing_seed});
  if (const auto* b = std::get_if<BasicVariant>(&first.variant)) {
    header.insert(header.end(), {std::uint64_t(b->T1), std::uint64_t(b->T2),
                                 std::uint64_t(b->T3)});
  } else if (const auto* t = std::get_if<TopRVariant>(&first.variant)) {
    header.insert(header.end(), {std::uint64_t(t->case_id), std::uint64_t(t->x)});
  } else {
    const auto& regions = std::get<RandomVariant>(first.variant).regions;
    header.push_back(regions.size());
    for (const Region& r : regions) {
      header.insert(header.end(),
                    {r.offset, r.length, std::uint64_t(r.ell_r),
                     std::uint64_t(r.ell_w), std::uint64_t(r.y),
                     std::uint64_t(r.case_id), std::uint64_t(r.noise_terms)});
    }
  }
  for (Fe a : snap.params.alphas) header.push_back(a.v);
  header.push_back(snap.params.fs.size());
  for (Fe f : snap.params.fs) header.push_back(f.v);
  header.push_back(snap.permutation.size());
  for (auto v : snap.permutation) header.push_back(v);

  out.write(kMagic.data(), kMagic.size());
  put_u64(out, header.size());
  for (auto w : header) put_u64(out, w);
  for (const DatabaseState& s : snap.states) {
    put_u64(out, s.cells.size());
    for (Fe c : s.cells) put_u64(out, c.v);
    put_u64(out, s.reversing.size());
    for (Fe c : s.reversing) put_u64(out, c.v);
  }
  if (!out) throw IntegrityError("snapshot write failed");
}

Snapshot read_snapshot(std::istream& in) {
  std::array<char, 5> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IntegrityError("not a PRUW1 snapshot");
  const std::uint64_t header_words = get_u64(in);
  if (header_words > (1u << 26)) throw IntegrityError("snapshot header too large");
  std::vector<std::uint64_t> words(header_words);
  for (auto& w : words) w = get_u64(in);
  HeaderReader h(std::move(words));

  const std::uint64_t tag = h.next();
  const std::uint64_t q = h.next();
  const int N = h.next_int();
  const int M = h.next_int();
  const std::uint64_t L = h.next();
  h.next();  // P, derivable
  const int ell = h.next_int();
  const std::uint64_t L_padded = h.next();
  Snapshot snap;
  snap.coordinator.master_seed = h.next();
  snap.coordinator.storage_seed = h.next();
  snap.coordinator.permutation_seed = h.next();
  snap.coordinator.reversing_seed = h.next();

  Variant variant;
  if (tag == 1) {
    BasicVariant b;
    b.T1 = h.next_int();
    b.T2 = h.next_int();
    b.T3 = h.next_int();
    b.ell = ell;
    variant = b;
  } else if (tag == 2) {
    TopRVariant t;
    t.case_id = h.next_int();
    t.x = h.next_int();
    t.ell = ell;
    variant = t;
  } else if (tag == 3) {
    RandomVariant rv;
    const std::uint64_t count = h.next();
    for (std::uint64_t i = 0; i < count; ++i) {
      Region r;
      r.offset = h.next();
      r.length = h.next();
      r.ell_r = h.next_int();
      r.ell_w = h.next_int();
      r.y = h.next_int();
      r.case_id = h.next_int();
      r.noise_terms = h.next_int();
      rv.regions.push_back(r);
    }
    variant = rv;
  } else {
    throw IntegrityError("unknown snapshot variant tag " + std::to_string(tag));
  }
  std::vector<Fe> alphas(N);
  for (auto& a : alphas) a = Fe{h.next()};
  std::vector<Fe> fs(h.next());
  for (auto& f : fs) f = Fe{h.next()};
  snap.permutation.resize(h.next());
  for (auto& v : snap.permutation) v = static_cast<std::uint32_t>(h.next());
  if (!h.done()) throw IntegrityError("snapshot header has trailing words");
  try {
    snap.params = make_field_params(q, std::move(alphas), std::move(fs));
  } catch (const ConfigError& e) {
    throw IntegrityError(std::string("snapshot field params invalid: ") + e.what());
  }
  if (padded_length(variant, L) != L_padded) {
    throw IntegrityError("snapshot padded length mismatch");
  }
  auto layout = std::make_shared<StorageLayout>(make_layout(variant, L_padded));
  for (int n = 0; n < N; ++n) {
    DatabaseState s;
    s.n = n;
    s.variant = variant;
    s.M = M;
    s.L = L;
    s.L_padded = L_padded;
    s.layout = layout;
    const std::uint64_t cells = get_u64(in);
    if (cells != L_padded * static_cast<std::uint64_t>(M)) {
      throw IntegrityError("snapshot cell count mismatch");
    }
    s.cells.resize(cells);
    for (auto& c : s.cells) {
      c = Fe{get_u64(in)};
      if (c.v >= q) throw IntegrityError("snapshot cell not reduced mod q");
    }
    const std::uint64_t rev = get_u64(in);
    if (rev > (1u << 26)) throw IntegrityError("snapshot matrix too large");
    s.reversing.resize(rev);
    for (auto& c : s.reversing) c = Fe{get_u64(in)};
    snap.states.push_back(std::move(s));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw IntegrityError("snapshot has trailing bytes");
  }
  return snap;
}

}  // namespace pruw
