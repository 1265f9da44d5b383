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

#ifndef TELEPORTSIM_KET_EXPR_H
#define TELEPORTSIM_KET_EXPR_H

#include <map>
#include <string>
#include <string_view>

#include "teleportsim/qsim.h"

namespace teleportsim {

/// Unnormalized linear combination of computational basis kets, in ordinary
/// ket notation:
///
///     ket("00") * (a * ket("0") + b * ket("1")) + ket("01") * ...
///
/// operator* between two expressions is the tensor product (left operand
/// supplies the leading qubits).
class KetExpr {
   public:
    static KetExpr ket(std::string_view bits);

    std::size_t num_qubits() const { return num_qubits_; }
    /// Normalized state; throws if the expression is zero.
    StateVector to_state() const;

    KetExpr operator+(const KetExpr &rhs) const;
    KetExpr operator-(const KetExpr &rhs) const;
    KetExpr operator-() const;
    KetExpr operator*(const KetExpr &rhs) const;
    friend KetExpr operator*(Complex scale, const KetExpr &expr);

   private:
    std::size_t num_qubits_ = 0;
    std::map<std::string, Complex> terms_;
};

inline KetExpr ket(std::string_view bits) {
    return KetExpr::ket(bits);
}

}  // namespace teleportsim

#endif
