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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "linksim/bitblock.hpp"
#include "linksim/common.hpp"
#include "linksim/gf2.hpp"

namespace linksim {

// Grid of circulant shift values; -1 marks an all-zero Z x Z block.
struct BaseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> shifts;

    int at(int r, int c) const { return shifts[static_cast<std::size_t>(r) * cols + c]; }
    int& at(int r, int c) { return shifts[static_cast<std::size_t>(r) * cols + c]; }

    bool operator==(const BaseMatrix&) const = default;
};

struct CodeDefinition {
    int z = 0;
    BaseMatrix base;

    bool operator==(const CodeDefinition&) const = default;
};

// Plain-text format: header "Z rows cols", then `rows` lines of `cols`
// integers (-1 for a null block).
inline CodeDefinition parse_code_definition(std::istream& in) {
    CodeDefinition def;
    std::string line;
    int lineno = 0;

    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("code definition line " + std::to_string(lineno) + ": " + what);
    };

    if (!std::getline(in, line)) {
        lineno = 1;
        fail("missing 'Z rows cols' header");
    }
    ++lineno;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> def.z >> def.base.rows >> def.base.cols) || (hs >> extra)) {
            fail("expected 'Z rows cols' header");
        }
        if (def.z < 1 || def.base.rows < 1 || def.base.cols < 1) {
            fail("Z, rows and cols must be positive");
        }
    }

    def.base.shifts.resize(static_cast<std::size_t>(def.base.rows) * def.base.cols);
    for (int r = 0; r < def.base.rows; ++r) {
        if (!std::getline(in, line)) {
            ++lineno;
            fail("unexpected end of file, expected " + std::to_string(def.base.rows) +
                 " shift rows");
        }
        ++lineno;
        std::istringstream rs(line);
        for (int c = 0; c < def.base.cols; ++c) {
            int s = 0;
            if (!(rs >> s)) {
                fail("expected " + std::to_string(def.base.cols) + " entries, got " +
                     std::to_string(c));
            }
            if (s < -1 || s >= def.z) {
                fail("shift " + std::to_string(s) + " out of range [-1, " +
                     std::to_string(def.z - 1) + "] at column " + std::to_string(c));
            }
            def.base.at(r, c) = s;
        }
        std::string extra;
        if (rs >> extra) {
            fail("trailing token '" + extra + "'");
        }
    }
    return def;
}

inline CodeDefinition parse_code_definition(const std::string& text) {
    std::istringstream in(text);
    return parse_code_definition(in);
}

inline std::string format_code_definition(const CodeDefinition& def) {
    std::ostringstream out;
    out << def.z << ' ' << def.base.rows << ' ' << def.base.cols << '\n';
    for (int r = 0; r < def.base.rows; ++r) {
        for (int c = 0; c < def.base.cols; ++c) {
            if (c) out << ' ';
            out << def.base.at(r, c);
        }
        out << '\n';
    }
    return out.str();
}

// Expands each shift entry s into the Z x Z identity cyclically right-shifted
// by s (row i has its one at column (i+s) mod Z); -1 expands to the zero block.
inline Gf2Matrix expand_base(const BaseMatrix& base, int z) {
    require(base.rows > 0 && base.cols > 0, "expand_base: empty base matrix");
    require(z >= 1, "expand_base: Z must be >= 1");
    Gf2Matrix h(static_cast<std::size_t>(base.rows) * z, static_cast<std::size_t>(base.cols) * z);
    for (int r = 0; r < base.rows; ++r) {
        for (int c = 0; c < base.cols; ++c) {
            const int s = base.at(r, c);
            if (s < 0) continue;
            require(s < z, "expand_base: shift " + std::to_string(s) +
                               " >= Z=" + std::to_string(z) + " at row " + std::to_string(r) +
                               " column " + std::to_string(c));
            for (int i = 0; i < z; ++i) {
                h.set(static_cast<std::size_t>(r) * z + i,
                      static_cast<std::size_t>(c) * z + (i + s) % z, true);
            }
        }
    }
    return h;
}

// Length-4 cycles in the expanded graph exist iff two rows and two columns
// with four non-null entries satisfy (s_ab - s_ae + s_de - s_db) = 0 mod Z.
inline bool validate_no_4cycles(const BaseMatrix& base, int z) {
    for (int r1 = 0; r1 < base.rows; ++r1) {
        for (int r2 = r1 + 1; r2 < base.rows; ++r2) {
            for (int c1 = 0; c1 < base.cols; ++c1) {
                if (base.at(r1, c1) < 0 || base.at(r2, c1) < 0) continue;
                for (int c2 = c1 + 1; c2 < base.cols; ++c2) {
                    if (base.at(r1, c2) < 0 || base.at(r2, c2) < 0) continue;
                    const int d =
                        base.at(r1, c1) - base.at(r1, c2) + base.at(r2, c2) - base.at(r2, c1);
                    if (((d % z) + z) % z == 0) return false;
                }
            }
        }
    }
    return true;
}

struct GeneratorDerivation {
    Gf2Matrix generator;          // k x n, transmit column order
    std::vector<int> info_cols;   // transmit column of information bit i
    std::vector<int> parity_cols; // pivot columns, ascending
};

// Gauss-Jordan with column pivoting from the right, so parity lands on the
// rightmost linearly independent columns and information bits keep their
// natural transmit positions where possible.
inline GeneratorDerivation derive_generator(const Gf2Matrix& h) {
    const std::size_t m = h.rows();
    const std::size_t n = h.cols();
    require(n > m, "derive_generator: H must have more columns than rows");

    Gf2Matrix red = h;
    std::vector<int> pivot_row_of_col(n, -1);
    std::vector<bool> row_used(m, false);
    std::size_t rank = 0;

    for (std::size_t ci = 0; ci < n && rank < m; ++ci) {
        const std::size_t col = n - 1 - ci;
        std::size_t piv = m;
        for (std::size_t r = 0; r < m; ++r) {
            if (!row_used[r] && red.get(r, col)) {
                piv = r;
                break;
            }
        }
        if (piv == m) continue;
        row_used[piv] = true;
        pivot_row_of_col[col] = static_cast<int>(piv);
        for (std::size_t r = 0; r < m; ++r) {
            if (r != piv && red.get(r, col)) red.xor_rows(r, piv);
        }
        ++rank;
    }

    if (rank < m) {
        throw std::invalid_argument("derive_generator: H is rank-deficient over GF(2): rank " +
                                    std::to_string(rank) + " of " + std::to_string(m) +
                                    " rows (" + std::to_string(m - rank) + " dependent rows)");
    }

    GeneratorDerivation out;
    for (std::size_t c = 0; c < n; ++c) {
        if (pivot_row_of_col[c] >= 0) {
            out.parity_cols.push_back(static_cast<int>(c));
        } else {
            out.info_cols.push_back(static_cast<int>(c));
        }
    }

    const std::size_t k = n - m;
    out.generator = Gf2Matrix(k, n);
    for (std::size_t i = 0; i < k; ++i) {
        out.generator.set(i, static_cast<std::size_t>(out.info_cols[i]), true);
        for (std::size_t j = 0; j < m; ++j) {
            const auto pcol = static_cast<std::size_t>(out.parity_cols[j]);
            const auto prow = static_cast<std::size_t>(pivot_row_of_col[pcol]);
            if (red.get(prow, static_cast<std::size_t>(out.info_cols[i]))) {
                out.generator.set(i, pcol, true);
            }
        }
    }
    return out;
}

// A fully constructed code: parity-check and generator matrices plus the
// flattened Tanner graph the decoder iterates over.
struct CodeSpec {
    std::string name;
    BaseMatrix base;
    int z = 0;
    int n = 0;
    int k = 0;
    double rate = 0.0;
    Gf2Matrix H;
    Gf2Matrix G;
    std::vector<BitBlock> gen_rows;
    std::vector<int> info_cols;
    std::vector<int> parity_cols;
    std::vector<std::int32_t> chk_ptr;  // CSR over checks
    std::vector<std::int32_t> chk_var;
};

namespace detail {
inline constexpr int kMaxCheckDegree = 16;
}

inline CodeSpec make_code(std::string name, const CodeDefinition& def) {
    CodeSpec spec;
    spec.name = std::move(name);
    spec.base = def.base;
    spec.z = def.z;
    spec.n = def.base.cols * def.z;
    spec.k = spec.n - def.base.rows * def.z;
    spec.H = expand_base(def.base, def.z);

    auto derived = derive_generator(spec.H);
    spec.G = std::move(derived.generator);
    spec.info_cols = std::move(derived.info_cols);
    spec.parity_cols = std::move(derived.parity_cols);
    spec.rate = static_cast<double>(spec.k) / spec.n;

    spec.gen_rows.reserve(spec.k);
    for (int i = 0; i < spec.k; ++i) {
        BitBlock row(spec.n);
        for (int c = 0; c < spec.n; ++c) {
            if (spec.G.get(i, c)) row.set(c, true);
        }
        spec.gen_rows.push_back(std::move(row));
    }

    // Tanner adjacency straight from the circulant structure.
    const int m = spec.n - spec.k;
    spec.chk_ptr.assign(m + 1, 0);
    for (int br = 0; br < def.base.rows; ++br) {
        int wt = 0;
        for (int bc = 0; bc < def.base.cols; ++bc) {
            if (def.base.at(br, bc) >= 0) ++wt;
        }
        require(wt <= detail::kMaxCheckDegree, "make_code: check degree above decoder limit");
        for (int i = 0; i < def.z; ++i) {
            spec.chk_ptr[br * def.z + i + 1] = wt;
        }
    }
    for (int c = 1; c <= m; ++c) spec.chk_ptr[c] += spec.chk_ptr[c - 1];
    spec.chk_var.resize(spec.chk_ptr[m]);
    std::vector<std::int32_t> fill(m, 0);
    for (int br = 0; br < def.base.rows; ++br) {
        for (int bc = 0; bc < def.base.cols; ++bc) {
            const int s = def.base.at(br, bc);
            if (s < 0) continue;
            for (int i = 0; i < def.z; ++i) {
                const int chk = br * def.z + i;
                spec.chk_var[spec.chk_ptr[chk] + fill[chk]++] = bc * def.z + (i + s) % def.z;
            }
        }
    }
    return spec;
}

inline BitBlock encode(const BitBlock& u, const CodeSpec& spec) {
    require(u.size() == static_cast<std::size_t>(spec.k),
            "encode: expected " + std::to_string(spec.k) + " information bits, got " +
                std::to_string(u.size()));
    BitBlock c(spec.n);
    auto cw = c.words();
    for (int i = 0; i < spec.k; ++i) {
        if (!u.get(i)) continue;
        const auto rw = spec.gen_rows[i].words();
        for (std::size_t w = 0; w < cw.size(); ++w) cw[w] ^= rw[w];
    }
    return c;
}

inline BitBlock syndrome(const CodeSpec& spec, const BitBlock& word) {
    require(word.size() == static_cast<std::size_t>(spec.n),
            "syndrome: expected a length-" + std::to_string(spec.n) + " word");
    return spec.H.mul_vec(word);
}

struct DecodeResult {
    BitBlock u_hat;
    bool converged = false;
    int iterations_used = 0;
};

// Flooding-schedule sum-product decoding with a tanh/atanh check-node kernel.
// Check-to-variable messages are clamped to +-30. After every iteration the
// hard decision is tested against the syndrome and decoding stops early on
// success; the initial channel decision counts as iteration 0.
inline DecodeResult bp_decode(const CodeSpec& spec, const std::vector<double>& llrs,
                              int max_iterations) {
    require(llrs.size() == static_cast<std::size_t>(spec.n),
            "bp_decode: expected " + std::to_string(spec.n) + " LLRs");
    require(max_iterations >= 1, "bp_decode: max_iterations must be >= 1");
    for (double l : llrs) {
        require(std::isfinite(l), "bp_decode: non-finite LLR input");
    }

    const int n = spec.n;
    const int m = n - spec.k;
    const int edges = static_cast<int>(spec.chk_var.size());

    std::vector<float> chan(n);
    for (int v = 0; v < n; ++v) chan[v] = static_cast<float>(llrs[v]);
    std::vector<float> c2v(edges, 0.0f);
    std::vector<float> total = chan;
    std::vector<float> acc(n);
    BitBlock hard(n);

    auto harden = [&] {
        for (int v = 0; v < n; ++v) hard.set(v, total[v] < 0.0f);
    };
    auto syndrome_zero = [&] {
        const auto hw = hard.words();
        for (int r = 0; r < m; ++r) {
            const auto rw = spec.H.row(r);
            std::uint64_t x = 0;
            for (std::size_t w = 0; w < rw.size(); ++w) x ^= rw[w] & hw[w];
            if (std::popcount(x) & 1) return false;
        }
        return true;
    };
    auto extract = [&] {
        BitBlock u(spec.k);
        for (int i = 0; i < spec.k; ++i) {
            u.set(i, hard.get(static_cast<std::size_t>(spec.info_cols[i])));
        }
        return u;
    };

    harden();
    if (syndrome_zero()) {
        return {extract(), true, 0};
    }

    for (int it = 1; it <= max_iterations; ++it) {
        std::fill(acc.begin(), acc.end(), 0.0f);
        for (int c = 0; c < m; ++c) {
            const int lo = spec.chk_ptr[c];
            const int deg = spec.chk_ptr[c + 1] - lo;
            float t[detail::kMaxCheckDegree];
            float pre[detail::kMaxCheckDegree + 1];
            pre[0] = 1.0f;
            for (int j = 0; j < deg; ++j) {
                const int e = lo + j;
                const float q = total[spec.chk_var[e]] - c2v[e];
                t[j] = std::tanh(0.5f * q);
                pre[j + 1] = pre[j] * t[j];
            }
            float suf = 1.0f;
            for (int j = deg - 1; j >= 0; --j) {
                const int e = lo + j;
                float r = 2.0f * std::atanh(pre[j] * suf);
                r = std::fmin(30.0f, std::fmax(-30.0f, r));
                c2v[e] = r;
                acc[spec.chk_var[e]] += r;
                suf *= t[j];
            }
        }
        for (int v = 0; v < n; ++v) total[v] = chan[v] + acc[v];
        harden();
        if (syndrome_zero()) {
            return {extract(), true, it};
        }
    }
    return {extract(), false, max_iterations};
}

}  // namespace linksim
