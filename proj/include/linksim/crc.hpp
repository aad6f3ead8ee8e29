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

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "linksim/bitblock.hpp"
#include "linksim/common.hpp"

namespace linksim {

// Generator polynomial of degree `degree`. `poly` may be written either with
// the leading x^degree coefficient (0x1864CFB for CRC-24A) or without it
// (0x1021 for CRC-16); the leading term is implied either way. Convention
// throughout: MSB-first bit order, zero initial register, no reflection, no
// final XOR. The parity of a payload a(x) is the remainder of
// a(x)*x^degree divided by the generator over GF(2).
class CrcSpec {
  public:
    CrcSpec(std::string name, std::uint32_t poly, int degree)
        : name_(std::move(name)), poly_(poly), degree_(degree) {
        require(degree_ >= 1 && degree_ <= 31, "CrcSpec: degree must be in [1, 31]");
        require((static_cast<std::uint64_t>(poly_) >> degree_) <= 1,
                "CrcSpec: poly wider than degree");
        low_terms_ = poly_ & ((1u << degree_) - 1u);
        table_ = build_table(low_terms_, degree_);
    }

    const std::string& name() const { return name_; }
    std::uint32_t poly() const { return poly_; }
    int degree() const { return degree_; }

    // Remainder of data(x)*x^degree, left-aligned at bit 31.
    std::uint32_t remainder_raw(const BitBlock& data) const {
        std::uint32_t reg = 0;
        const std::size_t nbytes = data.size() / 8;
        for (std::size_t b = 0; b < nbytes; ++b) {
            std::uint32_t byte = 0;
            for (int j = 0; j < 8; ++j) {
                byte = (byte << 1) | static_cast<std::uint32_t>(data.get(b * 8 + j));
            }
            reg = (reg << 8) ^ (*table_)[((reg >> 24) ^ byte) & 0xFFu];
        }
        const std::uint32_t g32 = low_terms_ << (32 - degree_);
        for (std::size_t i = nbytes * 8; i < data.size(); ++i) {
            reg ^= static_cast<std::uint32_t>(data.get(i)) << 31;
            const bool msb = reg & 0x80000000u;
            reg <<= 1;
            if (msb) reg ^= g32;
        }
        return reg;
    }

    // Plain remainder of data(x) (no x^degree factor), for checking received
    // blocks that already carry their parity field.
    std::uint32_t plain_remainder_raw(const BitBlock& data) const {
        const std::uint32_t g32 = low_terms_ << (32 - degree_);
        std::uint32_t reg = 0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const bool msb = reg & 0x80000000u;
            reg <<= 1;
            if (msb) reg ^= g32;
            reg ^= static_cast<std::uint32_t>(data.get(i)) << (32 - degree_);
        }
        return reg;
    }

  private:
    static std::shared_ptr<const std::array<std::uint32_t, 256>> build_table(std::uint32_t poly,
                                                                             int degree) {
        auto t = std::make_shared<std::array<std::uint32_t, 256>>();
        const std::uint32_t g32 = poly << (32 - degree);
        for (std::uint32_t b = 0; b < 256; ++b) {
            std::uint32_t reg = b << 24;
            for (int i = 0; i < 8; ++i) {
                const bool msb = reg & 0x80000000u;
                reg <<= 1;
                if (msb) reg ^= g32;
            }
            (*t)[b] = reg;
        }
        return t;
    }

    std::string name_;
    std::uint32_t poly_;
    std::uint32_t low_terms_ = 0;
    int degree_;
    std::shared_ptr<const std::array<std::uint32_t, 256>> table_;
};

// The four 3GPP polynomials used by the configuration space.
inline const std::vector<CrcSpec>& builtin_crcs() {
    static const std::vector<CrcSpec> crcs = {
        CrcSpec("CRC6", 0x27u, 6),
        CrcSpec("CRC11", 0x307u, 11),
        CrcSpec("CRC16", 0x1021u, 16),
        CrcSpec("CRC24A", 0x1864CFBu, 24),
    };
    return crcs;
}

inline BitBlock crc_remainder(const BitBlock& payload, const CrcSpec& spec) {
    require(!payload.empty(), "crc_remainder: payload must be nonempty");
    const std::uint32_t raw = spec.remainder_raw(payload);
    BitBlock rem(static_cast<std::size_t>(spec.degree()));
    for (int i = 0; i < spec.degree(); ++i) {
        rem.set(static_cast<std::size_t>(i), (raw >> (31 - i)) & 1u);
    }
    return rem;
}

inline BitBlock crc_append(const BitBlock& payload, const CrcSpec& spec) {
    return payload.concat(crc_remainder(payload, spec));
}

inline bool crc_check(const BitBlock& block, const CrcSpec& spec) {
    require(block.size() > static_cast<std::size_t>(spec.degree()),
            "crc_check: block must be longer than the CRC degree");
    return spec.plain_remainder_raw(block) == 0;
}

}  // namespace linksim
