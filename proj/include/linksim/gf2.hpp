// linksim - adaptive CRC/QC-LDPC link-level simulator
// Copyright (C) 2026 the linksim authors
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

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "linksim/bitblock.hpp"
#include "linksim/common.hpp"

namespace linksim {

// Dense binary matrix with bit-packed rows.
class Gf2Matrix {
  public:
    Gf2Matrix() = default;

    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1ULL;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t m = 1ULL << (c & 63);
        auto& w = w_[r * wpr_ + (c >> 6)];
        if (v) {
            w |= m;
        } else {
            w &= ~m;
        }
    }

    std::span<const std::uint64_t> row(std::size_t r) const {
        return {w_.data() + r * wpr_, wpr_};
    }

    void xor_rows(std::size_t dst, std::size_t src) {
        auto* d = w_.data() + dst * wpr_;
        const auto* s = w_.data() + src * wpr_;
        for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
    }

    bool operator==(const Gf2Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
    }

    // y = M x over GF(2); x interpreted as a column vector of length cols().
    BitBlock mul_vec(const BitBlock& x) const {
        require(x.size() == cols_, "Gf2Matrix::mul_vec: dimension mismatch");
        BitBlock y(rows_);
        const auto xw = x.words();
        for (std::size_t r = 0; r < rows_; ++r) {
            const auto* rw = w_.data() + r * wpr_;
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < wpr_; ++i) {
                acc ^= rw[i] & xw[i];
            }
            y.set(r, std::popcount(acc) & 1);
        }
        return y;
    }

    std::size_t rank() const {
        Gf2Matrix m = *this;
        std::size_t rk = 0;
        for (std::size_t c = 0; c < cols_ && rk < rows_; ++c) {
            std::size_t piv = rk;
            while (piv < rows_ && !m.get(piv, c)) ++piv;
            if (piv == rows_) continue;
            if (piv != rk) m.swap_rows(piv, rk);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r != rk && m.get(r, c)) m.xor_rows(r, rk);
            }
            ++rk;
        }
        return rk;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        auto* pa = w_.data() + a * wpr_;
        auto* pb = w_.data() + b * wpr_;
        for (std::size_t i = 0; i < wpr_; ++i) std::swap(pa[i], pb[i]);
    }

  private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace linksim
