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

#include "teleportsim/text.h"

#include <charconv>
#include <cmath>

namespace teleportsim {

std::string format_double(double value) {
    if (value == 0) {
        value = 0;  // drop the sign of -0
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return {buf, res.ptr};
}

std::string format_complex(const Complex &value) {
    std::string im = format_double(value.imag());
    if (im.front() != '-') {
        im.insert(im.begin(), '+');
    }
    return format_double(value.real()) + im + "i";
}

std::optional<double> parse_double(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return std::nullopt;
    }
    double value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<Complex> parse_complex(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    if (text.back() != 'i') {
        auto re = parse_double(text);
        if (!re) {
            return std::nullopt;
        }
        return Complex(*re, 0);
    }
    std::string_view body = text.substr(0, text.size() - 1);
    // The imaginary part starts at the last sign that is not a leading sign
    // and not an exponent sign.
    std::size_t split_at = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        char c = body[i];
        char prev = body[i - 1];
        if ((c == '+' || c == '-') && prev != 'e' && prev != 'E') {
            split_at = i;
            break;
        }
    }
    auto imag_of = [](std::string_view s) -> std::optional<double> {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return parse_double(s);
    };
    if (split_at == std::string_view::npos) {
        auto im = imag_of(body);
        if (!im) {
            return std::nullopt;
        }
        return Complex(0, *im);
    }
    auto re = parse_double(body.substr(0, split_at));
    auto im = imag_of(body.substr(split_at));
    if (!re || !im) {
        return std::nullopt;
    }
    return Complex(*re, *im);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace teleportsim
