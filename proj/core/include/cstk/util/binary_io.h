// core/include/cstk/util/binary_io.h

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

#ifndef CSTK_UTIL_BINARY_IO_H_
#define CSTK_UTIL_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "cstk/util/common.h"

// Little-endian binary primitives for the embedding and model file formats.
// Big-endian hosts are not supported.
static_assert(std::endian::native == std::endian::little,
              "cstk binary formats require a little-endian host");

namespace cstk {

template <typename T>
void WriteRaw(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
  if (!os) ThrowError("binary write failed");
}

template <typename T>
T ReadRaw(std::istream& is, std::string_view what) {
  T value;
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) ThrowError("binary read failed (", what, ")");
  return value;
}

inline void WriteMagic(std::ostream& os, const char magic[9]) {
  os.write(magic, 8);
  if (!os) ThrowError("binary write failed");
}

inline void ExpectMagic(std::istream& is, const char magic[9],
                        std::string_view what) {
  char buf[8];
  is.read(buf, 8);
  if (!is || std::memcmp(buf, magic, 8) != 0)
    ThrowError("bad magic in ", what, " (expected ", magic, ")");
}

inline void WriteDoubleVector(std::ostream& os,
                              const std::vector<double>& values) {
  WriteRaw<uint64_t>(os, values.size());
  os.write(reinterpret_cast<const char*>(values.data()),
           static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!os) ThrowError("binary write failed");
}

inline std::vector<double> ReadDoubleVector(std::istream& is,
                                            std::string_view what) {
  const uint64_t n = ReadRaw<uint64_t>(is, what);
  std::vector<double> values(n);
  is.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) ThrowError("binary read failed (", what, ")");
  return values;
}

}  // namespace cstk

#endif  // CSTK_UTIL_BINARY_IO_H_
