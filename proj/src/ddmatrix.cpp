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

#include "zakotfs/ddmatrix.hpp"

#include "zakotfs/transforms.hpp"

#include <cmath>
#include <iomanip>
#include <stdexcept>

namespace zakotfs {

namespace {

CMatrix dzt_of(const CVector& s, const DDGrid& grid)
{
    if (s.size() != grid.N())
        throw std::invalid_argument("ddmatrix: sequence length does not match grid");
    TimeSignal t;
    t.samples = s;
    return dzt(t, grid).values;
}

} // namespace

CMatrix build_doppler_factor(const CVector& e, const DDGrid& grid)
{
    const int K = grid.K();
    const int L = grid.L();
    const CMatrix Ze = dzt_of(e, grid);
    CMatrix E = CMatrix::Zero(grid.N(), grid.N());
    for (int u = 0; u < L; ++u)
        for (int j = 0; j < K; ++j)
            for (int k = 0; k < K; ++k)
                E(j + K * u, k + K * u) = Ze((k - j + K) % K, u);
    return E;
}

CMatrix build_delay_factor(const CVector& g, const DDGrid& grid)
{
    const int K = grid.K();
    const int L = grid.L();
    const CMatrix Zg = dzt_of(g, grid);
    CMatrix G = CMatrix::Zero(grid.N(), grid.N());
    for (int m = 0; m < L; ++m) {
        // A Q_m: block (m, l) = A_{l - m} for l >= m, Phi A_{l - m + L} otherwise
        for (int l = 0; l < L; ++l) {
            const bool wrap = l < m;
            const int u = wrap ? l - m + L : l - m;
            for (int k = 0; k < K; ++k) {
                cd v = Zg(k, u);
                if (wrap)
                    v *= std::polar(1.0, -2.0 * kPi * k / K);
                G(k + K * m, k + K * l) = v;
            }
        }
    }
    return G;
}

CMatrix build_path_matrix(const ChannelPath& path, const PulseSpec& spec, const DDGrid& grid)
{
    const int K = grid.K();
    const int L = grid.L();
    const int N = grid.N();
    const CMatrix Ze = dzt_of(doppler_sequence(path.doppler_bins(), N), grid);
    const CMatrix Zg = dzt_of(sample_delay_sequence(path.delay_bins(), N, spec), grid);
    // column d + L - 1 of Zw holds Zg~ at delay offset d = l - m
    CMatrix Zw(K, 2 * L - 1);
    for (int d = -(L - 1); d < L; ++d) {
        for (int k = 0; k < K; ++k) {
            Zw(k, d + L - 1) = d >= 0 ? Zg(k, d) : Zg(k, d + L) * std::polar(1.0, -2.0 * kPi * k / K);
        }
    }
    CMatrix H(N, N);
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k) {
            const int col = k + K * l;
            for (int m = 0; m < L; ++m) {
                const cd zg = Zw(k, l - m + L - 1);
                for (int j = 0; j < K; ++j)
                    H(j + K * m, col) = Ze((k - j + K) % K, m) * zg;
            }
        }
    return H;
}

EffectiveChannel build_effective_channel(const ChannelRealization& chan, const PulseSpec& spec,
                                         const DDGrid& grid)
{
    chan.validate();
    EffectiveChannel out{CMatrix::Zero(grid.N(), grid.N()), grid};
    for (const ChannelPath& p : chan.paths)
        out.H.noalias() += p.effective_gain(grid) * build_path_matrix(p, spec, grid);
    return out;
}

CVector dd_noise(const DDGrid& grid, double N0, RngStream& rng)
{
    TimeSignal w;
    w.samples = CVector::Zero(grid.N());
    if (N0 > 0.0)
        for (int n = 0; n < grid.N(); ++n)
            w.samples[n] = rng.complex_gaussian(N0);
    return flatten(dzt(w, grid));
}

CVector dd_transmit_receive(const CVector& x, const CMatrix& H, const DDGrid& grid, double N0,
                            RngStream& rng)
{
    if (x.size() != H.rows() || H.rows() != grid.N() || H.cols() != grid.N())
        throw std::invalid_argument("dd_transmit_receive: shape mismatch");
    CVector y = x * H;
    if (N0 > 0.0)
        y += dd_noise(grid, N0, rng);
    return y;
}

CVector phase_rotate(const CVector& x, double slope)
{
    const double N = static_cast<double>(x.size());
    CVector out(x.size());
    for (Eigen::Index q = 0; q < x.size(); ++q)
        out[q] = x[q] * std::polar(1.0, slope * q / N);
    return out;
}

CVector phase_unrotate(const CVector& x, double slope)
{
    return phase_rotate(x, -slope);
}

void write_matrix_csv(std::ostream& os, const CMatrix& H)
{
    os << "row,col,re,im\n";
    os << std::setprecision(17);
    for (Eigen::Index r = 0; r < H.rows(); ++r)
        for (Eigen::Index c = 0; c < H.cols(); ++c)
            os << r << ',' << c << ',' << H(r, c).real() << ',' << H(r, c).imag() << '\n';
}

} // namespace zakotfs
