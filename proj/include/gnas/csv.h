// Copyright 2026 The gnas Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GNAS_CSV_H_
#define GNAS_CSV_H_

#include <optional>
#include <string>
#include <string_view>

namespace gnas {

// Shortest decimal that round-trips to the same double. Locale independent.
std::string FormatDouble(double value);

// Parses the whole of `text` as a decimal; nullopt on any leftover input.
std::optional<double> ParseDouble(std::string_view text);

// RFC 4180 quoting when the field contains ',', '"' or a newline.
std::string CsvField(std::string_view field);

}  // namespace gnas

#endif  // GNAS_CSV_H_
