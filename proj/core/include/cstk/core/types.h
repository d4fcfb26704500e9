// core/include/cstk/core/types.h

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

#ifndef CSTK_CORE_TYPES_H_
#define CSTK_CORE_TYPES_H_

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cstk/util/common.h"

namespace cstk {

// Time is kept as integer frame counts at the recording frame rate (default
// 100 fps).  Seconds are a presentation view; converting at the edges keeps
// the frame-based metrics free of float drift.
using Frames = int64_t;

constexpr int kDefaultFrameRate = 100;

inline Frames FramesFromSeconds(double seconds, int frame_rate) {
  return static_cast<Frames>(std::llround(seconds * frame_rate));
}

inline double SecondsFromFrames(Frames frames, int frame_rate) {
  return static_cast<double>(frames) / frame_rate;
}

// Half-open frame interval [start, end).
struct TimeSpan {
  Frames start = 0;
  Frames end = 0;

  TimeSpan() = default;
  TimeSpan(Frames s, Frames e) : start(s), end(e) {}

  Frames Length() const { return end - start; }
  bool Contains(Frames frame) const { return frame >= start && frame < end; }
  Frames Overlap(const TimeSpan& other) const {
    const Frames lo = std::max(start, other.start);
    const Frames hi = std::min(end, other.end);
    return hi > lo ? hi - lo : 0;
  }
  Frames Midpoint() const { return start + (end - start) / 2; }

  auto operator<=>(const TimeSpan&) const = default;
};

// Exactly two language classes per archive profile.
enum class LanguageTag : uint8_t { kL1 = 0, kL2 = 1 };

constexpr std::array<LanguageTag, 2> kLanguages = {LanguageTag::kL1,
                                                   LanguageTag::kL2};

inline LanguageTag OtherLanguage(LanguageTag t) {
  return t == LanguageTag::kL1 ? LanguageTag::kL2 : LanguageTag::kL1;
}

// Maps the two abstract language classes to their surface names.  The
// default profile renders them "fy" and "nl".
struct LanguageProfile {
  std::string l1_name = "fy";
  std::string l2_name = "nl";

  const std::string& Name(LanguageTag t) const {
    return t == LanguageTag::kL1 ? l1_name : l2_name;
  }
  std::optional<LanguageTag> Parse(std::string_view name) const {
    if (name == l1_name) return LanguageTag::kL1;
    if (name == l2_name) return LanguageTag::kL2;
    return std::nullopt;
  }
  bool operator==(const LanguageProfile&) const = default;
};

enum class LabelSpace : uint8_t { kReference = 0, kPseudo = 1, kLinked = 2 };

// Speaker label: reference identities come from manual annotation, pseudo
// labels from diarization, linked labels from the linking stage.
struct LabelId {
  LabelSpace space = LabelSpace::kReference;
  uint32_t index = 0;

  LabelId() = default;
  LabelId(LabelSpace s, uint32_t i) : space(s), index(i) {}

  static LabelId Reference(uint32_t i) { return {LabelSpace::kReference, i}; }
  static LabelId Pseudo(uint32_t i) { return {LabelSpace::kPseudo, i}; }
  static LabelId Linked(uint32_t i) { return {LabelSpace::kLinked, i}; }

  std::string ToString() const;
  static LabelId FromString(std::string_view text);

  auto operator<=>(const LabelId&) const = default;
};

// Provenance of an annotation, recorded per segment so that the stage order
// of a pipeline run can be audited afterwards.
enum class Source : uint8_t {
  kManual = 0,
  kSad = 1,
  kSd = 2,
  kSl = 3,
  kLr = 4,
  kLd = 5,
  kAsr = 6,
  kRescored = 7,
};

const char* SourceName(Source s);
Source SourceFromName(std::string_view name);

struct TaggedWord {
  std::string surface;
  LanguageTag language = LanguageTag::kL1;
  std::optional<TimeSpan> span;

  TaggedWord() = default;
  TaggedWord(std::string s, LanguageTag l) : surface(std::move(s)), language(l) {}
  TaggedWord(std::string s, LanguageTag l, TimeSpan sp)
      : surface(std::move(s)), language(l), span(sp) {}

  bool operator==(const TaggedWord&) const = default;
};

struct TaggedTranscript {
  std::vector<TaggedWord> words;

  bool Empty() const { return words.empty(); }
  size_t Size() const { return words.size(); }

  bool operator==(const TaggedTranscript&) const = default;
};

// Annotation layers.  Segments in one layer of one recording are sorted and
// non-overlapping; different layers annotate the same speech independently.
enum class Layer : uint8_t {
  kSpeech = 0,
  kSpeaker = 1,
  kLanguage = 2,
  kTranscript = 3,
};

constexpr std::array<Layer, 4> kLayers = {Layer::kSpeech, Layer::kSpeaker,
                                          Layer::kLanguage, Layer::kTranscript};

const char* LayerName(Layer layer);
Layer LayerFromName(std::string_view name);

struct Segment {
  std::string recording_id;
  TimeSpan span;
  std::optional<LabelId> speaker;
  std::optional<LanguageTag> language;
  std::optional<TaggedTranscript> transcript;
  Source source = Source::kManual;
  std::optional<double> confidence;  // reserved for data-selection filters

  bool operator==(const Segment&) const = default;
};

struct Recording {
  std::string id;
  Frames duration = 0;  // frames at frame_rate
  int frame_rate = kDefaultFrameRate;
  // Free-form metadata (year, program, ...), order preserved verbatim.
  std::vector<std::pair<std::string, std::string>> metadata;

  double DurationSeconds() const {
    return SecondsFromFrames(duration, frame_rate);
  }

  bool operator==(const Recording&) const = default;
};

}  // namespace cstk

#endif  // CSTK_CORE_TYPES_H_
