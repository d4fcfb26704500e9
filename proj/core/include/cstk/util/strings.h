// core/include/cstk/util/strings.h

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

#ifndef CSTK_UTIL_STRINGS_H_
#define CSTK_UTIL_STRINGS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cstk {

std::vector<std::string_view> Split(std::string_view text, char sep);

// Splits on runs of spaces/tabs, dropping empty fields.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

bool StartsWith(std::string_view text, std::string_view prefix);

// Shortest decimal form that parses back to the identical double.  All text
// formats use this so that save/load round trips are bit-exact.
std::string DoubleToString(double value);

// Strict parsers: the whole field must be consumed.
double ParseDouble(std::string_view text, std::string_view what);
int64_t ParseInt64(std::string_view text, std::string_view what);

}  // namespace cstk

#endif  // CSTK_UTIL_STRINGS_H_
