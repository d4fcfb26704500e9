// core/include/cstk/core/track.h

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

#ifndef CSTK_CORE_TRACK_H_
#define CSTK_CORE_TRACK_H_

#include <span>
#include <string>
#include <vector>

#include "cstk/core/types.h"

namespace cstk {

// One annotation layer over an archive: segments sorted by
// (recording_id, span.start) and non-overlapping within a recording.
class SegmentTrack {
 public:
  SegmentTrack() = default;

  void Add(Segment segment) { segments_.push_back(std::move(segment)); }

  // Sorts segments into canonical order; call after a batch of Add()s.
  void Sort();

  const std::vector<Segment>& segments() const { return segments_; }
  std::vector<Segment>& mutable_segments() { return segments_; }
  bool Empty() const { return segments_.empty(); }
  size_t Size() const { return segments_.size(); }

  // Contiguous view of one recording's segments (track must be sorted).
  std::span<const Segment> ForRecording(const std::string& recording_id) const;

  Frames TotalFrames() const;

  // Merges adjacent segments of one recording that share every annotation
  // and touch exactly (a.end == b.start).  Total duration is unchanged.
  void MergeAdjacent();

  bool operator==(const SegmentTrack&) const = default;

 private:
  std::vector<Segment> segments_;
};

// Checks sortedness, span validity and per-recording non-overlap; throws
// Error naming the recording and layer on violation.
void ValidateTrack(const SegmentTrack& track, Layer layer);

}  // namespace cstk

#endif  // CSTK_CORE_TRACK_H_
