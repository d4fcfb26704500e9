// core/src/core/embedding_file.cc

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

#include "cstk/core/embedding_file.h"

#include <fstream>

#include "cstk/util/binary_io.h"
#include "cstk/util/strings.h"

namespace cstk {

namespace {
constexpr char kMagic[] = "CSTKVEC1";
}

void EmbeddingFile::Append(EmbeddingIndexEntry entry,
                           std::span<const double> values) {
  if (values.size() != dim_)
    ThrowError("embedding dimension mismatch: got ", values.size(),
               ", file has ", dim_);
  for (double v : values) data_.push_back(static_cast<float>(v));
  index_.push_back(std::move(entry));
}

EmbeddingFile ReadEmbeddingFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowError("cannot open embedding file '", path, "'");
  ExpectMagic(in, kMagic, path);
  const auto dim = ReadRaw<uint32_t>(in, "dimension");
  const auto count = ReadRaw<uint64_t>(in, "count");
  if (dim == 0) ThrowError("zero dimension in '", path, "'");
  EmbeddingFile file(dim);
  std::vector<float> row(dim);
  std::vector<double> row_d(dim);

  const std::string index_path = path + ".idx";
  std::ifstream idx(index_path, std::ios::binary);
  if (!idx) ThrowError("cannot open embedding index '", index_path, "'");
  std::string line;
  for (uint64_t i = 0; i < count; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(dim * sizeof(float)));
    if (!in) ThrowError("truncated embedding file '", path, "' at row ", i);
    if (!std::getline(idx, line))
      ThrowError("embedding index '", index_path, "' shorter than data (row ",
                 i, ")");
    const auto fields = Split(line, '\t');
    if (fields.size() != 3)
      ThrowError("index line ", i + 1, ": expected 3 fields");
    EmbeddingIndexEntry entry;
    entry.recording_id = std::string(fields[0]);
    entry.span.start = ParseInt64(fields[1], "index span start");
    entry.span.end = ParseInt64(fields[2], "index span end");
    if (entry.span.end <= entry.span.start)
      ThrowError("index line ", i + 1, ": empty span");
    for (uint32_t d = 0; d < dim; ++d) row_d[d] = row[d];
    file.Append(std::move(entry), row_d);
  }
  return file;
}

void WriteEmbeddingFile(const EmbeddingFile& file, const std::string& path) {
  if (file.dim() == 0) ThrowError("cannot write embedding file of dimension 0");
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowError("cannot open '", path, "' for writing");
  WriteMagic(out, kMagic);
  WriteRaw<uint32_t>(out, file.dim());
  WriteRaw<uint64_t>(out, file.Count());
  for (size_t i = 0; i < file.Count(); ++i) {
    const auto row = file.Row(i);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) ThrowError("write to '", path, "' failed");

  const std::string index_path = path + ".idx";
  std::ofstream idx(index_path, std::ios::binary);
  if (!idx) ThrowError("cannot open '", index_path, "' for writing");
  for (const EmbeddingIndexEntry& e : file.index()) {
    idx << e.recording_id << '\t' << e.span.start << '\t' << e.span.end
        << '\n';
  }
  if (!idx) ThrowError("write to '", index_path, "' failed");
}

}  // namespace cstk
