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

#include <cmath>
#include <limits>

#include "gtest/gtest.h"

using namespace teleportsim;

TEST(format_double, shortest_round_trip) {
    EXPECT_EQ(format_double(1), "1");
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(0.49999999999999994), "0.49999999999999994");
    EXPECT_EQ(format_double(1e-20), "1e-20");
}

TEST(format_complex, re_im_form) {
    EXPECT_EQ(format_complex({0.6, 0}), "0.6+0i");
    EXPECT_EQ(format_complex({0.3, -0.7}), "0.3-0.7i");
    EXPECT_EQ(format_complex({-1, 2}), "-1+2i");
}

TEST(parse_complex, accepted_forms) {
    EXPECT_EQ(parse_complex("0.6"), Complex(0.6, 0));
    EXPECT_EQ(parse_complex("0.8i"), Complex(0, 0.8));
    EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
    EXPECT_EQ(parse_complex("0.6-0.8i"), Complex(0.6, -0.8));
    EXPECT_EQ(parse_complex("+0.6+0.8i"), Complex(0.6, 0.8));
    EXPECT_EQ(parse_complex("1e-3+2E+1i"), Complex(1e-3, 20));
    EXPECT_EQ(parse_complex("-1e-3-2e-1i"), Complex(-1e-3, -0.2));
}

TEST(parse_complex, rejects_garbage) {
    for (const char *bad : {"", "i0.5", "0.6+", "abc", "0.6+0.8", "0.6 + 0.8i", "1..2", "nan", "inf"}) {
        EXPECT_FALSE(parse_complex(bad)) << bad;
    }
}

TEST(parse_complex, round_trips_formatted_values) {
    for (Complex c : {Complex(0.1, 0.2), Complex(-1e-17, 3.5), Complex(1.0 / 3, -2.0 / 7)}) {
        EXPECT_EQ(parse_complex(format_complex(c)), c);
    }
}

TEST(split, keeps_empty_fields) {
    auto parts = split("a,,b", ',');
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[1], "");
    EXPECT_EQ(parts[2], "b");
}
