// core/src/core/types.cc

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

#include "cstk/core/types.h"

#include "cstk/util/strings.h"

namespace cstk {

namespace {
const char* SpaceName(LabelSpace s) {
  switch (s) {
    case LabelSpace::kReference: return "ref";
    case LabelSpace::kPseudo: return "pseudo";
    case LabelSpace::kLinked: return "linked";
  }
  throw Error("unknown label space");
}
}  // namespace

std::string LabelId::ToString() const {
  return StrCat(SpaceName(space), ":", index);
}

LabelId LabelId::FromString(std::string_view text) {
  const size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    ThrowError("malformed speaker label '", text, "'");
  const std::string_view space = text.substr(0, colon);
  const int64_t index = ParseInt64(text.substr(colon + 1), "speaker index");
  if (index < 0) ThrowError("negative speaker index in '", text, "'");
  LabelSpace s;
  if (space == "ref") {
    s = LabelSpace::kReference;
  } else if (space == "pseudo") {
    s = LabelSpace::kPseudo;
  } else if (space == "linked") {
    s = LabelSpace::kLinked;
  } else {
    ThrowError("unknown label space in '", text, "'");
  }
  return LabelId(s, static_cast<uint32_t>(index));
}

const char* SourceName(Source s) {
  switch (s) {
    case Source::kManual: return "manual";
    case Source::kSad: return "sad";
    case Source::kSd: return "sd";
    case Source::kSl: return "sl";
    case Source::kLr: return "lr";
    case Source::kLd: return "ld";
    case Source::kAsr: return "asr";
    case Source::kRescored: return "rescored";
  }
  throw Error("unknown source");
}

Source SourceFromName(std::string_view name) {
  if (name == "manual") return Source::kManual;
  if (name == "sad") return Source::kSad;
  if (name == "sd") return Source::kSd;
  if (name == "sl") return Source::kSl;
  if (name == "lr") return Source::kLr;
  if (name == "ld") return Source::kLd;
  if (name == "asr") return Source::kAsr;
  if (name == "rescored") return Source::kRescored;
  ThrowError("unknown segment source '", name, "'");
}

const char* LayerName(Layer layer) {
  switch (layer) {
    case Layer::kSpeech: return "speech";
    case Layer::kSpeaker: return "speaker";
    case Layer::kLanguage: return "language";
    case Layer::kTranscript: return "transcript";
  }
  throw Error("unknown layer");
}

Layer LayerFromName(std::string_view name) {
  if (name == "speech") return Layer::kSpeech;
  if (name == "speaker") return Layer::kSpeaker;
  if (name == "language") return Layer::kLanguage;
  if (name == "transcript") return Layer::kTranscript;
  ThrowError("unknown layer '", name, "'");
}

}  // namespace cstk
