// core/src/core/track.cc

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

#include "cstk/core/track.h"

#include <algorithm>

namespace cstk {

void SegmentTrack::Sort() {
  std::stable_sort(segments_.begin(), segments_.end(),
                   [](const Segment& a, const Segment& b) {
                     if (a.recording_id != b.recording_id)
                       return a.recording_id < b.recording_id;
                     return a.span.start < b.span.start;
                   });
}

std::span<const Segment> SegmentTrack::ForRecording(
    const std::string& recording_id) const {
  auto lo = std::lower_bound(segments_.begin(), segments_.end(), recording_id,
                             [](const Segment& s, const std::string& id) {
                               return s.recording_id < id;
                             });
  auto hi = std::upper_bound(segments_.begin(), segments_.end(), recording_id,
                             [](const std::string& id, const Segment& s) {
                               return id < s.recording_id;
                             });
  return {&*lo, static_cast<size_t>(hi - lo)};
}

Frames SegmentTrack::TotalFrames() const {
  Frames total = 0;
  for (const Segment& s : segments_) total += s.span.Length();
  return total;
}

void SegmentTrack::MergeAdjacent() {
  if (segments_.empty()) return;
  std::vector<Segment> merged;
  merged.reserve(segments_.size());
  merged.push_back(segments_.front());
  for (size_t i = 1; i < segments_.size(); ++i) {
    Segment& prev = merged.back();
    const Segment& cur = segments_[i];
    const bool contiguous = prev.recording_id == cur.recording_id &&
                            prev.span.end == cur.span.start;
    const bool same_annotations =
        prev.speaker == cur.speaker && prev.language == cur.language &&
        prev.source == cur.source && !prev.transcript && !cur.transcript;
    if (contiguous && same_annotations) {
      prev.span.end = cur.span.end;
    } else {
      merged.push_back(cur);
    }
  }
  segments_ = std::move(merged);
}

void ValidateTrack(const SegmentTrack& track, Layer layer) {
  const char* layer_name = LayerName(layer);
  const Segment* prev = nullptr;
  for (const Segment& s : track.segments()) {
    if (s.recording_id.empty())
      ThrowError("segment with empty recording id in layer ", layer_name);
    if (s.span.start < 0 || s.span.end <= s.span.start)
      ThrowError("invalid span [", s.span.start, ",", s.span.end,
                 ") in recording ", s.recording_id, ", layer ", layer_name);
    switch (layer) {
      case Layer::kSpeaker:
        if (!s.speaker)
          ThrowError("speaker-layer segment without speaker label in ",
                     s.recording_id);
        break;
      case Layer::kLanguage:
        if (!s.language)
          ThrowError("language-layer segment without language tag in ",
                     s.recording_id);
        break;
      case Layer::kTranscript:
        if (!s.transcript)
          ThrowError("transcript-layer segment without transcript in ",
                     s.recording_id);
        break;
      case Layer::kSpeech:
        break;
    }
    if (s.transcript) {
      const TaggedWord* prev_word = nullptr;
      for (const TaggedWord& w : s.transcript->words) {
        if (w.surface.empty())
          ThrowError("empty word surface in recording ", s.recording_id);
        if (w.span) {
          if (w.span->start < s.span.start || w.span->end > s.span.end)
            ThrowError("word span outside segment in recording ",
                       s.recording_id, ", layer ", layer_name);
          if (prev_word && prev_word->span && w.span->start < prev_word->span->end)
            ThrowError("word spans overlap or are unsorted in recording ",
                       s.recording_id, ", layer ", layer_name);
        }
        prev_word = &w;
      }
    }
    if (prev && prev->recording_id == s.recording_id) {
      if (s.span.start < prev->span.end)
        ThrowError("segments overlap or are unsorted at frame ", s.span.start,
                   " in recording ", s.recording_id, ", layer ", layer_name);
    } else if (prev && prev->recording_id > s.recording_id) {
      ThrowError("track not sorted by recording id near ", s.recording_id,
                 ", layer ", layer_name);
    }
    prev = &s;
  }
}

}  // namespace cstk
