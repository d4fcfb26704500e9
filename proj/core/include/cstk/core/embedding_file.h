// core/include/cstk/core/embedding_file.h

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

#ifndef CSTK_CORE_EMBEDDING_FILE_H_
#define CSTK_CORE_EMBEDDING_FILE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cstk/core/types.h"

namespace cstk {

// Binary vector container:
//   <path>      magic "CSTKVEC1", uint32 dim, uint64 count,
//               count x dim little-endian float32, row-major.
//   <path>.idx  sidecar, one line per row:
//               <recording_id><TAB><start_frames><TAB><end_frames>
//
// Posterior files use the same layout with dim == 1 and one row per frame.
struct EmbeddingIndexEntry {
  std::string recording_id;
  TimeSpan span;

  bool operator==(const EmbeddingIndexEntry&) const = default;
};

class EmbeddingFile {
 public:
  EmbeddingFile() = default;
  explicit EmbeddingFile(uint32_t dim) : dim_(dim) {}

  uint32_t dim() const { return dim_; }
  size_t Count() const { return index_.size(); }
  const std::vector<EmbeddingIndexEntry>& index() const { return index_; }

  std::span<const float> Row(size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

  void Append(EmbeddingIndexEntry entry, std::span<const double> values);

  bool operator==(const EmbeddingFile&) const = default;

 private:
  uint32_t dim_ = 0;
  std::vector<float> data_;
  std::vector<EmbeddingIndexEntry> index_;
};

EmbeddingFile ReadEmbeddingFile(const std::string& path);
void WriteEmbeddingFile(const EmbeddingFile& file, const std::string& path);

}  // namespace cstk

#endif  // CSTK_CORE_EMBEDDING_FILE_H_
