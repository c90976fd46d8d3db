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

#include "pruw/wire.hpp"

#include <sstream>

namespace pruw {

const char* frame_name(FrameType type) {
  switch (type) {
    case FrameType::kReadQ: return "READ_Q";
    case FrameType::kReadA: return "READ_A";
    case FrameType::kWriteU: return "WRITE_U";
    case FrameType::kSparsePos: return "SPARSE_POS";
    case FrameType::kDownlinkSet: return "DOWNLINK_SET";
    case FrameType::kWriteQGen: return "WRITE_QGEN";
    case FrameType::kPermutation: return "PERMUTATION";
  }
  return "?";
}

const char* direction_name(Direction dir) {
  switch (dir) {
    case Direction::kUserToDb: return "user->db";
    case Direction::kDbToUser: return "db->user";
    case Direction::kCoordToUser: return "coord->user";
  }
  return "?";
}

const char* phase_name(Phase phase) { return phase == Phase::kRead ? "read" : "write"; }

bool charged_download(FrameType type) {
  return type == FrameType::kReadA || type == FrameType::kDownlinkSet ||
         type == FrameType::kPermutation;
}

bool charged_upload(FrameType type) {
  return type == FrameType::kWriteU || type == FrameType::kSparsePos;
}

void FrameLog::append(Frame frame) {
  std::lock_guard<std::mutex> lock(mu_);
  frame.tick = tick_++;
  frames_.push_back(std::move(frame));
}

std::string format_frame(const Frame& f) {
  std::ostringstream out;
  out << "tick=" << f.tick << " phase=" << phase_name(f.phase)
      << " type=" << frame_name(f.type) << " dir=" << direction_name(f.dir)
      << " session=" << f.session << " db=" << f.db << " sub=" << f.sub
      << " symbols=" << f.symbols;
  if (!f.indices.empty()) {
    out << " indices=";
    for (std::size_t i = 0; i < f.indices.size(); ++i) {
      out << (i ? "," : "") << f.indices[i];
    }
  }
  return out.str();
}

std::string FrameLog::trace() const {
  std::string out;
  for (const Frame& f : frames_) {
    out += format_frame(f);
    out += '\n';
  }
  return out;
}

std::uint64_t FrameLog::total_symbols() const {
  std::uint64_t total = 0;
  for (const Frame& f : frames_) total += f.symbols;
  return total;
}

void CostLedger::charge(const Frame& frame) {
  if (charged_download(frame.type)) {
    downloaded += frame.symbols;
  } else if (charged_upload(frame.type)) {
    uploaded += frame.symbols;
  } else {
    query_symbols += frame.symbols;
  }
}

Rational CostLedger::read_cost() const {
  return Rational(static_cast<std::int64_t>(downloaded), static_cast<std::int64_t>(L));
}

Rational CostLedger::write_cost() const {
  return Rational(static_cast<std::int64_t>(uploaded), static_cast<std::int64_t>(L));
}

CostLedger ledger_from_frames(const std::vector<Frame>& frames, int session,
                              std::uint64_t L) {
  CostLedger ledger;
  ledger.L = L;
  for (const Frame& f : frames) {
    if (f.session == session) ledger.charge(f);
  }
  return ledger;
}

}  // namespace pruw
