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
#include <string>
#include <vector>

#include "linksim/common.hpp"

namespace linksim {

// Fixed-length bit sequence packed into 64-bit words. Bit 0 is the first
// (most significant, in polynomial terms) bit of the block.
class BitBlock {
  public:
    BitBlock() = default;

    explicit BitBlock(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitBlock random(std::size_t n, Rng& rng) {
        BitBlock b(n);
        for (auto& w : b.w_) {
            w = rng();
        }
        b.mask_tail();
        return b;
    }

    static BitBlock from_string(const std::string& s) {
        BitBlock b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            require(s[i] == '0' || s[i] == '1', "BitBlock: expected '0' or '1'");
            b.set(i, s[i] == '1');
        }
        return b;
    }

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }

    void set(std::size_t i, bool v) {
        const std::uint64_t m = 1ULL << (i & 63);
        if (v) {
            w_[i >> 6] |= m;
        } else {
            w_[i >> 6] &= ~m;
        }
    }

    void flip(std::size_t i) { w_[i >> 6] ^= 1ULL << (i & 63); }

    BitBlock& operator^=(const BitBlock& o) {
        require(n_ == o.n_, "BitBlock xor: length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) {
            w_[i] ^= o.w_[i];
        }
        return *this;
    }

    friend BitBlock operator^(BitBlock a, const BitBlock& b) { return a ^= b; }

    bool operator==(const BitBlock& o) const { return n_ == o.n_ && w_ == o.w_; }

    bool all_zero() const {
        for (auto w : w_) {
            if (w != 0) return false;
        }
        return true;
    }

    std::size_t count_ones() const {
        std::size_t c = 0;
        for (auto w : w_) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }

    // Concatenation: this block followed by `tail`.
    BitBlock concat(const BitBlock& tail) const {
        BitBlock out(n_ + tail.n_);
        for (std::size_t i = 0; i < n_; ++i) out.set(i, get(i));
        for (std::size_t i = 0; i < tail.n_; ++i) out.set(n_ + i, tail.get(i));
        return out;
    }

    BitBlock slice(std::size_t begin, std::size_t len) const {
        require(begin + len <= n_, "BitBlock slice: out of range");
        BitBlock out(len);
        for (std::size_t i = 0; i < len; ++i) out.set(i, get(begin + i));
        return out;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i) {
            if (get(i)) s[i] = '1';
        }
        return s;
    }

    std::span<const std::uint64_t> words() const { return w_; }
    std::span<std::uint64_t> words() { return w_; }

  private:
    void mask_tail() {
        if (n_ % 64 != 0 && !w_.empty()) {
            w_.back() &= (1ULL << (n_ % 64)) - 1;
        }
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace linksim
