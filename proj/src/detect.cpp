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

#include "zakotfs/detect.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zakotfs {

int Alphabet::nearest(cd z) const
{
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) {
        const double d = std::norm(z - symbols[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

Alphabet Alphabet::bpsk()
{
    return {"bpsk", {cd(1.0, 0.0), cd(-1.0, 0.0)}, 1};
}

Alphabet Alphabet::qpsk()
{
    const double s = 1.0 / std::sqrt(2.0);
    return {"qpsk", {cd(s, s), cd(s, -s), cd(-s, s), cd(-s, -s)}, 2};
}

Alphabet Alphabet::by_name(const std::string& name)
{
    if (name == "bpsk")
        return bpsk();
    if (name == "qpsk")
        return qpsk();
    throw std::invalid_argument("unknown alphabet: " + name);
}

CVector bits_to_symbols(const Bits& bits, const Alphabet& a)
{
    const int b = a.bits_per_symbol;
    if (bits.size() % b != 0)
        throw std::invalid_argument("bits_to_symbols: bit count is not a multiple of bits per symbol");
    const int n = static_cast<int>(bits.size()) / b;
    CVector out(n);
    for (int q = 0; q < n; ++q) {
        int idx = 0;
        for (int t = 0; t < b; ++t)
            idx = (idx << 1) | (bits[q * b + t] & 1);
        out[q] = a.symbols[idx];
    }
    return out;
}

Bits symbols_to_bits(const CVector& symbols, const Alphabet& a)
{
    const int b = a.bits_per_symbol;
    Bits out(symbols.size() * b);
    for (Eigen::Index q = 0; q < symbols.size(); ++q) {
        const int idx = a.nearest(symbols[q]);
        for (int t = 0; t < b; ++t)
            out[q * b + t] = static_cast<std::uint8_t>((idx >> (b - 1 - t)) & 1);
    }
    return out;
}

CVector hard_decision(const CVector& soft, const Alphabet& a)
{
    CVector out(soft.size());
    for (Eigen::Index q = 0; q < soft.size(); ++q)
        out[q] = a.symbols[a.nearest(soft[q])];
    return out;
}

std::int64_t candidate_count(int n, const Alphabet& a)
{
    if (n < 1 || n * a.bits_per_symbol > 20)
        throw std::invalid_argument("ML search space exceeds 2^20 candidates");
    return std::int64_t{1} << (n * a.bits_per_symbol);
}

CVector candidate_vector(std::int64_t c, int n, const Alphabet& a)
{
    CVector out(n);
    const int M = a.size();
    for (int q = n - 1; q >= 0; --q) {
        out[q] = a.symbols[c % M];
        c /= M;
    }
    return out;
}

CMatrix candidate_matrix(int n, const Alphabet& a)
{
    const std::int64_t Q = candidate_count(n, a);
    CMatrix out(Q, n);
    for (std::int64_t c = 0; c < Q; ++c)
        out.row(c) = candidate_vector(c, n, a);
    return out;
}

std::int64_t nearest_row(const CVector& y, const CMatrix& outputs)
{
    std::int64_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < outputs.rows(); ++c) {
        const double d = (outputs.row(c) - y).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

CVector ml_detect(const CVector& y, const CMatrix& H, const Alphabet& a)
{
    const int n = static_cast<int>(H.rows());
    if (y.size() != H.cols())
        throw std::invalid_argument("ml_detect: shape mismatch");
    const CMatrix X = candidate_matrix(n, a);
    const CMatrix out = X * H;
    return X.row(nearest_row(y, out));
}

MmseEqualizer::MmseEqualizer(const CMatrix& H) : H_(H), gram_(CMatrix::Zero(H.rows(), H.rows()))
{
    // lower triangle only; both solvers below read the lower half
    gram_.selfadjointView<Eigen::Lower>().rankUpdate(H_);
}

CVector MmseEqualizer::equalize(const CVector& y, double N0) const
{
    if (y.size() != H_.cols())
        throw std::invalid_argument("mmse: shape mismatch");
    if (!(N0 >= 0.0))
        throw std::invalid_argument("mmse: N0 must be >= 0");
    CMatrix R = gram_;
    R.diagonal().array() += N0;
    // (y H^H R^{-1})^H = R^{-1} H y^H since R is Hermitian
    const Eigen::VectorXcd rhs = H_ * y.adjoint();
    if (N0 == 0.0) {
        R = R.selfadjointView<Eigen::Lower>();
        Eigen::FullPivLU<CMatrix> lu(R);
        if (!lu.isInvertible())
            throw std::runtime_error("mmse: singular system (N0 = 0 and H rank deficient)");
        return lu.solve(rhs).adjoint();
    }
    Eigen::LLT<CMatrix> llt(R);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mmse: regularized system is not positive definite");
    return llt.solve(rhs).adjoint();
}

CVector mmse_equalize(const CVector& y, const CMatrix& H, double N0)
{
    return MmseEqualizer(H).equalize(y, N0);
}

CVector mmse_detect(const CVector& y, const CMatrix& H, double N0, const Alphabet& a)
{
    return hard_decision(mmse_equalize(y, H, N0), a);
}

} // namespace zakotfs
