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

#include "teleportsim/ket_expr.h"

#include <stdexcept>

namespace teleportsim {

KetExpr KetExpr::ket(std::string_view bits) {
    if (bits.empty() || bits.find_first_not_of("01") != std::string_view::npos) {
        throw std::invalid_argument("ket label must be a nonempty bit string");
    }
    KetExpr e;
    e.num_qubits_ = bits.size();
    e.terms_.emplace(std::string(bits), 1.0);
    return e;
}

StateVector KetExpr::to_state() const {
    std::vector<Complex> amps(std::size_t{1} << num_qubits_);
    for (const auto &[bits, coef] : terms_) {
        amps[std::stoull(bits, nullptr, 2)] += coef;
    }
    return StateVector::normalized(std::move(amps));
}

KetExpr KetExpr::operator+(const KetExpr &rhs) const {
    if (rhs.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("adding kets of different widths");
    }
    KetExpr out = *this;
    for (const auto &[bits, coef] : rhs.terms_) {
        out.terms_[bits] += coef;
    }
    return out;
}

KetExpr KetExpr::operator-(const KetExpr &rhs) const {
    return *this + (-rhs);
}

KetExpr KetExpr::operator-() const {
    return Complex(-1) * *this;
}

KetExpr KetExpr::operator*(const KetExpr &rhs) const {
    KetExpr out;
    out.num_qubits_ = num_qubits_ + rhs.num_qubits_;
    for (const auto &[lb, lc] : terms_) {
        for (const auto &[rb, rc] : rhs.terms_) {
            out.terms_[lb + rb] += lc * rc;
        }
    }
    return out;
}

KetExpr operator*(Complex scale, const KetExpr &expr) {
    KetExpr out = expr;
    for (auto &term : out.terms_) {
        term.second *= scale;
    }
    return out;
}

}  // namespace teleportsim
