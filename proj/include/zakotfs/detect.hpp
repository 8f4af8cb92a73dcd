// SPDX-License-Identifier: Apache-2.0
//
// zakotfs: link-level simulation of Zak-transform OTFS
// Copyright (C) 2026 The zakotfs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "zakotfs/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zakotfs {

using Bits = std::vector<std::uint8_t>;

/// Unit average energy constellation. Symbol index i carries the
/// bits_per_symbol bits of i, most significant first.
struct Alphabet {
    std::string name;
    std::vector<cd> symbols;
    int bits_per_symbol = 1;

    int size() const { return static_cast<int>(symbols.size()); }
    /// Index of the closest point; ties go to the lowest index.
    int nearest(cd z) const;

    /// bit 0 -> +1, bit 1 -> -1
    static Alphabet bpsk();
    /// Gray mapped: (b0, b1) -> ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2)
    static Alphabet qpsk();
    static Alphabet by_name(const std::string& name);
};

CVector bits_to_symbols(const Bits& bits, const Alphabet& a);
Bits symbols_to_bits(const CVector& symbols, const Alphabet& a);
/// Hard decision per element.
CVector hard_decision(const CVector& soft, const Alphabet& a);

/// Number of candidates |A|^n; throws std::invalid_argument when
/// n log2|A| > 20.
std::int64_t candidate_count(int n, const Alphabet& a);

/// Candidate c as a symbol vector; position q holds digit q of c in base
/// |A| (most significant first), so the bit labels of c read as c itself.
CVector candidate_vector(std::int64_t c, int n, const Alphabet& a);

/// All candidates stacked as rows (|A|^n x n).
CMatrix candidate_matrix(int n, const Alphabet& a);

/// Index of the row of `outputs` closest to y; ties go to the lowest row.
std::int64_t nearest_row(const CVector& y, const CMatrix& outputs);

/// argmin_x ||y - x H||^2 over all candidate vectors.
CVector ml_detect(const CVector& y, const CMatrix& H, const Alphabet& a);

/// Linear MMSE for y = x H + v with unit-energy symbols:
///   x^ = y H^H (H H^H + N0 I)^{-1}
/// The Gram matrix is formed once; each N0 needs one Cholesky solve.
class MmseEqualizer {
public:
    explicit MmseEqualizer(const CMatrix& H);

    /// Soft estimates. Throws std::runtime_error when N0 = 0 and H is
    /// rank deficient.
    CVector equalize(const CVector& y, double N0) const;

private:
    CMatrix H_;
    CMatrix gram_;
};

CVector mmse_equalize(const CVector& y, const CMatrix& H, double N0);
CVector mmse_detect(const CVector& y, const CMatrix& H, double N0, const Alphabet& a);

} // namespace zakotfs
