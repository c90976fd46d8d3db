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

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "pruw/rational.hpp"

namespace pruw {

enum class FrameType : std::uint8_t {
  kReadQ,
  kReadA,
  kWriteU,
  kSparsePos,
  kDownlinkSet,
  kWriteQGen,
  kPermutation,
};

enum class Direction : std::uint8_t { kUserToDb, kDbToUser, kCoordToUser };
enum class Phase : std::uint8_t { kRead, kWrite };

const char* frame_name(FrameType type);
const char* direction_name(Direction dir);
const char* phase_name(Phase phase);

// Downloads and uploads feed the cost meter. Queries are sent but not
// charged; the cost model counts only answers and updates.
bool charged_download(FrameType type);
bool charged_upload(FrameType type);

struct Frame {
  std::uint64_t tick = 0;
  Phase phase = Phase::kRead;
  FrameType type = FrameType::kReadQ;
  Direction dir = Direction::kUserToDb;
  int session = 0;
  int db = -1;    // 0-based, -1 for coordinator frames
  long sub = -1;  // subpacket or region index, -1 when the frame covers all
  std::uint64_t symbols = 0;
  std::vector<int> indices;  // index frames only (SPARSE_POS, DOWNLINK_SET)
};

// Append-only log. Appends are serialized so databases may be driven from
// parallel loops; ticks are logical.
class FrameLog {
 public:
  void append(Frame frame);
  const std::vector<Frame>& frames() const { return frames_; }
  std::string trace() const;
  std::uint64_t total_symbols() const;

 private:
  std::mutex mu_;
  std::uint64_t tick_ = 0;
  std::vector<Frame> frames_;
};

std::string format_frame(const Frame& frame);

// Per-iteration meter. C_R = downloaded / L and C_W = uploaded / L.
struct CostLedger {
  std::uint64_t L = 0;
  std::uint64_t downloaded = 0;
  std::uint64_t uploaded = 0;
  std::uint64_t query_symbols = 0;

  void charge(const Frame& frame);
  Rational read_cost() const;
  Rational write_cost() const;
  std::uint64_t total() const { return downloaded + uploaded + query_symbols; }
};

// Rebuilds a ledger from the frames of one session.
CostLedger ledger_from_frames(const std::vector<Frame>& frames, int session,
                              std::uint64_t L);

}  // namespace pruw
