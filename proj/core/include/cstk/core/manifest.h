// core/include/cstk/core/manifest.h

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

#ifndef CSTK_CORE_MANIFEST_H_
#define CSTK_CORE_MANIFEST_H_

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cstk/core/track.h"
#include "cstk/core/types.h"

namespace cstk {

// An archive: recording inventory, speaker inventory and one segment track
// per annotation layer.  Per-language duration totals are derived from the
// segments; the manifest file stores them redundantly and the loader
// cross-checks them.
//
// File format (UTF-8, tab-separated, one segment per line):
//
//   #CSTK-MANIFEST<TAB>1
//   #languages<TAB>fy<TAB>nl
//   #recording<TAB><id><TAB><duration_frames><TAB><frame_rate>[<TAB>k=v ...]
//   #speaker<TAB><label>
//   #totals<TAB>fy<TAB><hours><TAB>nl<TAB><hours>
//   <recording><TAB><layer><TAB><start><TAB><end><TAB><speaker|->
//       <TAB><language|-><TAB><source><TAB><transcript|->
//
// Times are frame counts at the recording's frame rate.  Transcript words
// are space-separated "surface_<lang>" tokens, optionally carrying a word
// span as "@start:end".
class ArchiveManifest {
 public:
  LanguageProfile languages;
  std::vector<Recording> recordings;  // sorted by id
  std::set<LabelId> speakers;         // speaker inventory
  std::array<SegmentTrack, 4> tracks; // indexed by Layer

  SegmentTrack& Track(Layer layer) {
    return tracks[static_cast<size_t>(layer)];
  }
  const SegmentTrack& Track(Layer layer) const {
    return tracks[static_cast<size_t>(layer)];
  }

  const Recording* FindRecording(const std::string& id) const;
  const Recording& RecordingOrThrow(const std::string& id) const;

  void AddRecording(Recording recording);  // keeps recordings sorted

  // Registers every speaker label used by segments into the inventory and
  // sorts all tracks.
  void Finalize();

  bool operator==(const ArchiveManifest&) const = default;
};

// Layer whose language tags define the per-language duration accounting:
// the transcript layer when present, otherwise the language layer.  Empty
// when neither layer carries complete tags.
std::optional<Layer> AccountingLayer(const ArchiveManifest& manifest);

// Per-language totals in hours over the given layer.  Throws if a segment
// in that layer has no language tag.
std::array<double, 2> DurationTotals(const ArchiveManifest& manifest,
                                     Layer layer);

// Checks every type invariant; throws Error naming the offending recording
// and layer otherwise.
void ValidateManifest(const ArchiveManifest& manifest);

ArchiveManifest LoadManifest(const std::string& path);
void SaveManifest(const ArchiveManifest& manifest, const std::string& path);

}  // namespace cstk

#endif  // CSTK_CORE_MANIFEST_H_
