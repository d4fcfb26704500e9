// core/include/cstk/core/concat.h

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

#ifndef CSTK_CORE_CONCAT_H_
#define CSTK_CORE_CONCAT_H_

#include <string>
#include <vector>

#include "cstk/core/types.h"

namespace cstk {

// Virtual contiguous speech timeline for one recording: the speech spans
// concatenated with gaps removed.  The frame mapping between virtual and
// original time is exact and invertible.
class ConcatenatedSpeech {
 public:
  ConcatenatedSpeech() = default;

  // Spans must be sorted and non-overlapping.
  ConcatenatedSpeech(std::string recording_id, std::vector<TimeSpan> spans);

  const std::string& recording_id() const { return recording_id_; }
  const std::vector<TimeSpan>& spans() const { return spans_; }
  Frames TotalFrames() const {
    return prefix_.empty() ? 0 : prefix_.back();
  }

  // Virtual frame in [0, TotalFrames()) -> original frame.
  Frames ToOriginal(Frames virtual_frame) const;

  // Original frame inside a speech span -> virtual frame.
  Frames ToVirtual(Frames original_frame) const;

  // Smallest original span containing the virtual span (may include gaps).
  TimeSpan CoveringOriginalSpan(const TimeSpan& virtual_span) const;

  // Original spans covered by the virtual span, split at speech gaps.
  std::vector<TimeSpan> ToOriginalSpans(const TimeSpan& virtual_span) const;

 private:
  std::string recording_id_;
  std::vector<TimeSpan> spans_;
  std::vector<Frames> prefix_;  // prefix_[i] = virtual frames before span i+1
};

}  // namespace cstk

#endif  // CSTK_CORE_CONCAT_H_
