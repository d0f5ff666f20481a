// Copyright 2026 The Evnoun Authors.
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

// Minimal CSV helpers shared by the dataset, gold and report writers.

#ifndef EVNOUN_CSV_H_
#define EVNOUN_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace evnoun::csv {

// Quotes the field when it contains a comma, quote or line break.
std::string Escape(std::string_view field);
void WriteRow(std::ostream& out, const std::vector<std::string>& fields);

// Splits one line, honoring double-quoted fields. Throws
// std::invalid_argument on an unterminated quote.
std::vector<std::string> SplitLine(std::string_view line);

// Reads the next non-blank line (CR stripped). Returns false at EOF.
bool ReadRow(std::istream& in, std::vector<std::string>* fields,
             long* line_number);

// Fixed-point decimal with the given number of fractional digits.
std::string FormatDecimal(double value, int digits);

}  // namespace evnoun::csv

#endif  // EVNOUN_CSV_H_
