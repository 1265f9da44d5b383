// Copyright 2026 The teleportsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TELEPORTSIM_TEXT_H
#define TELEPORTSIM_TEXT_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teleportsim/qsim.h"

namespace teleportsim {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
/// "re+imi" / "re-imi", using format_double for both parts.
std::string format_complex(const Complex &value);

std::optional<double> parse_double(std::string_view text);
/// Accepts "re", "imi", "re+imi" and "re-imi" (e.g. "0.6", "0.8i", "0.6-0.8i").
std::optional<Complex> parse_complex(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

}  // namespace teleportsim

#endif
