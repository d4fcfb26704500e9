// core/src/core/concat.cc

// Copyright 2026  CSTK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cstk/core/concat.h"

#include <algorithm>

namespace cstk {

ConcatenatedSpeech::ConcatenatedSpeech(std::string recording_id,
                                       std::vector<TimeSpan> spans)
    : recording_id_(std::move(recording_id)), spans_(std::move(spans)) {
  Frames cum = 0;
  Frames prev_end = -1;
  prefix_.reserve(spans_.size());
  for (const TimeSpan& s : spans_) {
    if (s.start < 0 || s.end <= s.start || s.start < prev_end)
      ThrowError("speech spans must be sorted and non-overlapping (recording ",
                 recording_id_, ")");
    prev_end = s.end;
    cum += s.Length();
    prefix_.push_back(cum);
  }
}

Frames ConcatenatedSpeech::ToOriginal(Frames virtual_frame) const {
  if (virtual_frame < 0 || virtual_frame >= TotalFrames())
    ThrowError("virtual frame ", virtual_frame, " out of range (recording ",
               recording_id_, ")");
  const auto it =
      std::upper_bound(prefix_.begin(), prefix_.end(), virtual_frame);
  const size_t i = static_cast<size_t>(it - prefix_.begin());
  const Frames before = i == 0 ? 0 : prefix_[i - 1];
  return spans_[i].start + (virtual_frame - before);
}

Frames ConcatenatedSpeech::ToVirtual(Frames original_frame) const {
  const auto it = std::upper_bound(
      spans_.begin(), spans_.end(), original_frame,
      [](Frames f, const TimeSpan& s) { return f < s.end; });
  const size_t i = static_cast<size_t>(it - spans_.begin());
  if (i >= spans_.size() || !spans_[i].Contains(original_frame))
    ThrowError("original frame ", original_frame,
               " not inside speech (recording ", recording_id_, ")");
  const Frames before = i == 0 ? 0 : prefix_[i - 1];
  return before + (original_frame - spans_[i].start);
}

TimeSpan ConcatenatedSpeech::CoveringOriginalSpan(
    const TimeSpan& virtual_span) const {
  CSTK_ASSERT(virtual_span.Length() > 0);
  return TimeSpan(ToOriginal(virtual_span.start),
                  ToOriginal(virtual_span.end - 1) + 1);
}

std::vector<TimeSpan> ConcatenatedSpeech::ToOriginalSpans(
    const TimeSpan& virtual_span) const {
  CSTK_ASSERT(virtual_span.Length() > 0);
  std::vector<TimeSpan> out;
  Frames v = virtual_span.start;
  while (v < virtual_span.end) {
    const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), v);
    const size_t i = static_cast<size_t>(it - prefix_.begin());
    const Frames before = i == 0 ? 0 : prefix_[i - 1];
    const Frames take =
        std::min(virtual_span.end - v, prefix_[i] - v);
    const Frames start = spans_[i].start + (v - before);
    out.emplace_back(start, start + take);
    v += take;
  }
  return out;
}

}  // namespace cstk
