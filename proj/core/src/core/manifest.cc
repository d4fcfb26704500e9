// core/src/core/manifest.cc

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

#include "cstk/core/manifest.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "cstk/util/strings.h"

namespace cstk {

namespace {

constexpr char kFormatName[] = "#CSTK-MANIFEST";
constexpr int kFormatVersion = 1;
constexpr double kTotalsToleranceHours = 1e-6;

void CheckFieldText(const std::string& text, std::string_view what) {
  if (text.find_first_of("\t\n") != std::string::npos)
    ThrowError(what, " must not contain tabs or newlines: '", text, "'");
}

void CheckWordSurface(const std::string& surface) {
  if (surface.empty()) ThrowError("empty word surface");
  if (surface.find_first_of(" \t\n@") != std::string::npos)
    ThrowError("word surface must not contain whitespace or '@': '", surface,
               "'");
}

std::string FormatTranscript(const TaggedTranscript& transcript,
                             const LanguageProfile& languages) {
  std::string out;
  for (size_t i = 0; i < transcript.words.size(); ++i) {
    const TaggedWord& w = transcript.words[i];
    CheckWordSurface(w.surface);
    if (i > 0) out += ' ';
    out += w.surface;
    out += '_';
    out += languages.Name(w.language);
    if (w.span)
      out += StrCat("@", w.span->start, ":", w.span->end);
  }
  return out;
}

TaggedTranscript ParseTranscript(std::string_view field,
                                 const LanguageProfile& languages,
                                 size_t line_no) {
  TaggedTranscript transcript;
  for (std::string_view token : SplitWhitespace(field)) {
    TaggedWord word;
    const size_t at = token.find('@');
    if (at != std::string_view::npos) {
      const std::string_view span_text = token.substr(at + 1);
      const size_t colon = span_text.find(':');
      if (colon == std::string_view::npos)
        ThrowError("line ", line_no, ": malformed word span in '", token, "'");
      word.span = TimeSpan(
          ParseInt64(span_text.substr(0, colon), "word span start"),
          ParseInt64(span_text.substr(colon + 1), "word span end"));
      token = token.substr(0, at);
    }
    const size_t underscore = token.rfind('_');
    if (underscore == std::string_view::npos || underscore == 0)
      ThrowError("line ", line_no, ": word without language suffix: '", token,
                 "'");
    const auto tag = languages.Parse(token.substr(underscore + 1));
    if (!tag)
      ThrowError("line ", line_no, ": unknown language suffix in '", token,
                 "'");
    word.language = *tag;
    word.surface = std::string(token.substr(0, underscore));
    transcript.words.push_back(std::move(word));
  }
  return transcript;
}

}  // namespace

const Recording* ArchiveManifest::FindRecording(const std::string& id) const {
  auto it = std::lower_bound(
      recordings.begin(), recordings.end(), id,
      [](const Recording& r, const std::string& key) { return r.id < key; });
  if (it == recordings.end() || it->id != id) return nullptr;
  return &*it;
}

const Recording& ArchiveManifest::RecordingOrThrow(
    const std::string& id) const {
  const Recording* r = FindRecording(id);
  if (!r) ThrowError("unknown recording '", id, "'");
  return *r;
}

void ArchiveManifest::AddRecording(Recording recording) {
  auto it = std::lower_bound(recordings.begin(), recordings.end(), recording.id,
                             [](const Recording& r, const std::string& key) {
                               return r.id < key;
                             });
  if (it != recordings.end() && it->id == recording.id)
    ThrowError("duplicate recording id '", recording.id, "'");
  recordings.insert(it, std::move(recording));
}

void ArchiveManifest::Finalize() {
  for (Layer layer : kLayers) {
    Track(layer).Sort();
    for (const Segment& s : Track(layer).segments())
      if (s.speaker) speakers.insert(*s.speaker);
  }
}

std::optional<Layer> AccountingLayer(const ArchiveManifest& manifest) {
  auto fully_tagged = [&](Layer layer) {
    const SegmentTrack& track = manifest.Track(layer);
    if (track.Empty()) return false;
    for (const Segment& s : track.segments())
      if (!s.language) return false;
    return true;
  };
  if (fully_tagged(Layer::kTranscript)) return Layer::kTranscript;
  if (fully_tagged(Layer::kLanguage)) return Layer::kLanguage;
  return std::nullopt;
}

std::array<double, 2> DurationTotals(const ArchiveManifest& manifest,
                                     Layer layer) {
  std::array<double, 2> hours = {0.0, 0.0};
  for (const Segment& s : manifest.Track(layer).segments()) {
    if (!s.language)
      ThrowError("untagged segment at frame ", s.span.start, " in recording ",
                 s.recording_id, ", layer ", LayerName(layer));
    const Recording& rec = manifest.RecordingOrThrow(s.recording_id);
    hours[static_cast<size_t>(*s.language)] +=
        SecondsFromFrames(s.span.Length(), rec.frame_rate) / 3600.0;
  }
  return hours;
}

void ValidateManifest(const ArchiveManifest& manifest) {
  if (manifest.languages.l1_name == manifest.languages.l2_name)
    ThrowError("language profile names must differ");
  const Recording* prev = nullptr;
  for (const Recording& r : manifest.recordings) {
    if (r.id.empty()) ThrowError("recording with empty id");
    if (r.duration <= 0)
      ThrowError("recording ", r.id, " has non-positive duration");
    if (r.frame_rate <= 0)
      ThrowError("recording ", r.id, " has non-positive frame rate");
    if (prev && !(prev->id < r.id))
      ThrowError("recording ids not sorted/unique near '", r.id, "'");
    prev = &r;
  }
  for (Layer layer : kLayers) {
    const SegmentTrack& track = manifest.Track(layer);
    ValidateTrack(track, layer);
    for (const Segment& s : track.segments()) {
      const Recording* rec = manifest.FindRecording(s.recording_id);
      if (!rec)
        ThrowError("segment references unknown recording '", s.recording_id,
                   "' in layer ", LayerName(layer));
      if (s.span.end > rec->duration)
        ThrowError("segment [", s.span.start, ",", s.span.end,
                   ") exceeds duration of recording ", s.recording_id,
                   " in layer ", LayerName(layer));
      if (s.speaker && !manifest.speakers.count(*s.speaker))
        ThrowError("speaker ", s.speaker->ToString(),
                   " not in inventory (recording ", s.recording_id, ", layer ",
                   LayerName(layer), ")");
    }
  }
}

void SaveManifest(const ArchiveManifest& manifest, const std::string& path) {
  ValidateManifest(manifest);
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowError("cannot open '", path, "' for writing");
  out << kFormatName << '\t' << kFormatVersion << '\n';
  out << "#languages\t" << manifest.languages.l1_name << '\t'
      << manifest.languages.l2_name << '\n';
  for (const Recording& r : manifest.recordings) {
    CheckFieldText(r.id, "recording id");
    out << "#recording\t" << r.id << '\t' << r.duration << '\t'
        << r.frame_rate;
    for (const auto& [key, value] : r.metadata) {
      CheckFieldText(key, "metadata key");
      CheckFieldText(value, "metadata value");
      if (key.find('=') != std::string::npos)
        ThrowError("metadata key must not contain '=': '", key, "'");
      out << '\t' << key << '=' << value;
    }
    out << '\n';
  }
  for (const LabelId& speaker : manifest.speakers)
    out << "#speaker\t" << speaker.ToString() << '\n';
  if (auto layer = AccountingLayer(manifest)) {
    const auto totals = DurationTotals(manifest, *layer);
    out << "#totals\t" << manifest.languages.l1_name << '\t'
        << DoubleToString(totals[0]) << '\t' << manifest.languages.l2_name
        << '\t' << DoubleToString(totals[1]) << '\n';
  }
  for (Layer layer : kLayers) {
    for (const Segment& s : manifest.Track(layer).segments()) {
      out << s.recording_id << '\t' << LayerName(layer) << '\t' << s.span.start
          << '\t' << s.span.end << '\t'
          << (s.speaker ? s.speaker->ToString() : "-") << '\t'
          << (s.language ? manifest.languages.Name(*s.language) : "-") << '\t'
          << SourceName(s.source) << '\t'
          << (s.transcript ? FormatTranscript(*s.transcript,
                                              manifest.languages)
                           : "-")
          << '\n';
    }
  }
  if (!out) ThrowError("write to '", path, "' failed");
}

ArchiveManifest LoadManifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowError("cannot open manifest '", path, "'");
  ArchiveManifest manifest;
  std::optional<std::array<double, 2>> stored_totals;
  std::string line;
  size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = Split(line, '\t');
    if (line_no == 1) {
      if (fields.size() != 2 || fields[0] != kFormatName)
        ThrowError("line 1: not a manifest file (missing ", kFormatName,
                   " header)");
      if (ParseInt64(fields[1], "format version") != kFormatVersion)
        ThrowError("line 1: unsupported manifest version ", fields[1]);
      saw_header = true;
      continue;
    }
    if (!saw_header) ThrowError("line ", line_no, ": header line missing");
    if (fields[0] == "#languages") {
      if (fields.size() != 3)
        ThrowError("line ", line_no, ": #languages needs two names");
      manifest.languages.l1_name = std::string(fields[1]);
      manifest.languages.l2_name = std::string(fields[2]);
      continue;
    }
    if (fields[0] == "#recording") {
      if (fields.size() < 4)
        ThrowError("line ", line_no, ": malformed #recording line");
      Recording r;
      r.id = std::string(fields[1]);
      r.duration = ParseInt64(fields[2], "recording duration");
      r.frame_rate =
          static_cast<int>(ParseInt64(fields[3], "recording frame rate"));
      for (size_t i = 4; i < fields.size(); ++i) {
        const size_t eq = fields[i].find('=');
        if (eq == std::string_view::npos)
          ThrowError("line ", line_no, ": metadata without '=': '", fields[i],
                     "'");
        r.metadata.emplace_back(std::string(fields[i].substr(0, eq)),
                                std::string(fields[i].substr(eq + 1)));
      }
      manifest.AddRecording(std::move(r));
      continue;
    }
    if (fields[0] == "#speaker") {
      if (fields.size() != 2)
        ThrowError("line ", line_no, ": malformed #speaker line");
      manifest.speakers.insert(LabelId::FromString(fields[1]));
      continue;
    }
    if (fields[0] == "#totals") {
      if (fields.size() != 5)
        ThrowError("line ", line_no, ": malformed #totals line");
      std::array<double, 2> totals = {0.0, 0.0};
      for (int k = 0; k < 2; ++k) {
        const auto tag = manifest.languages.Parse(fields[1 + 2 * k]);
        if (!tag)
          ThrowError("line ", line_no, ": unknown language in #totals: '",
                     fields[1 + 2 * k], "'");
        totals[static_cast<size_t>(*tag)] =
            ParseDouble(fields[2 + 2 * k], "totals hours");
      }
      stored_totals = totals;
      continue;
    }
    if (!fields.empty() && fields[0].size() && fields[0][0] == '#')
      ThrowError("line ", line_no, ": unknown directive '", fields[0], "'");

    if (fields.size() != 8)
      ThrowError("line ", line_no, ": expected 8 tab-separated fields, got ",
                 fields.size());
    Segment s;
    s.recording_id = std::string(fields[0]);
    const Layer layer = LayerFromName(fields[1]);
    s.span.start = ParseInt64(fields[2], "segment start");
    s.span.end = ParseInt64(fields[3], "segment end");
    if (s.span.end <= s.span.start)
      ThrowError("line ", line_no, ": segment end ", s.span.end,
                 " not after start ", s.span.start);
    if (fields[4] != "-") s.speaker = LabelId::FromString(fields[4]);
    if (fields[5] != "-") {
      const auto tag = manifest.languages.Parse(fields[5]);
      if (!tag)
        ThrowError("line ", line_no, ": unknown language '", fields[5], "'");
      s.language = *tag;
    }
    s.source = SourceFromName(fields[6]);
    if (fields[7] != "-")
      s.transcript = ParseTranscript(fields[7], manifest.languages, line_no);
    manifest.Track(layer).Add(std::move(s));
  }
  if (!saw_header) ThrowError("empty manifest file '", path, "'");
  ValidateManifest(manifest);
  if (stored_totals) {
    const auto layer = AccountingLayer(manifest);
    if (!layer)
      ThrowError("manifest has #totals but no fully tagged layer");
    const auto computed = DurationTotals(manifest, *layer);
    for (size_t k = 0; k < 2; ++k) {
      if (std::abs(computed[k] - (*stored_totals)[k]) > kTotalsToleranceHours)
        ThrowError("per-language totals disagree with segment sums for ",
                   k == 0 ? manifest.languages.l1_name
                          : manifest.languages.l2_name,
                   ": stored ", (*stored_totals)[k], " h, computed ",
                   computed[k], " h");
    }
  } else if (AccountingLayer(manifest)) {
    ThrowError("manifest with tagged segments is missing the #totals line");
  }
  return manifest;
}

}  // namespace cstk
