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

#include "linksim/qcldpc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "linksim/codes.hpp"

using namespace linksim;

namespace {

Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows) {
    Gf2Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m.set(r, c, rows[r][c] != 0);
        }
    }
    return m;
}

bool generator_annihilates(const Gf2Matrix& g, const Gf2Matrix& h) {
    for (std::size_t i = 0; i < g.rows(); ++i) {
        BitBlock row(g.cols());
        for (std::size_t c = 0; c < g.cols(); ++c) row.set(c, g.get(i, c));
        if (!h.mul_vec(row).all_zero()) return false;
    }
    return true;
}

// Hamming (7,4) in standard form H = [P^T | I3].
const std::vector<std::vector<int>> kHamming74H = {
    {1, 1, 0, 1, 1, 0, 0},
    {1, 0, 1, 1, 0, 1, 0},
    {0, 1, 1, 1, 0, 0, 1},
};

CodeSpec hamming74() {
    // Express the Hamming code as a Z=1 "QC" code so the decoder sees it.
    CodeDefinition def;
    def.z = 1;
    def.base.rows = 3;
    def.base.cols = 7;
    def.base.shifts.resize(21);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 7; ++c) {
            def.base.at(r, c) = kHamming74H[r][c] ? 0 : -1;
        }
    }
    return make_code("hamming74", def);
}

}  // namespace

TEST(ExpandBase, ZeroShiftIsIdentity) {
    BaseMatrix b{1, 1, {0}};
    const Gf2Matrix h = expand_base(b, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            EXPECT_EQ(h.get(i, j), i == j);
        }
    }
}

TEST(ExpandBase, UnitShiftIsCyclicPermutation) {
    BaseMatrix b{1, 1, {1}};
    const Gf2Matrix h = expand_base(b, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            EXPECT_EQ(h.get(i, j), j == (i + 1) % 4);
        }
    }
}

TEST(ExpandBase, TwoByTwoBlockLayout) {
    BaseMatrix b{2, 2, {0, -1, 1, 0}};
    const Gf2Matrix h = expand_base(b, 2);
    const Gf2Matrix expected = from_rows({
        {1, 0, 0, 0},
        {0, 1, 0, 0},
        {0, 1, 1, 0},
        {1, 0, 0, 1},
    });
    EXPECT_EQ(h, expected);
}

TEST(ExpandBase, RejectsShiftNotBelowZ) {
    BaseMatrix b{1, 1, {4}};
    EXPECT_THROW(expand_base(b, 4), std::invalid_argument);
}

TEST(ValidateNo4Cycles, Examples) {
    EXPECT_FALSE(validate_no_4cycles(BaseMatrix{2, 2, {0, 0, 0, 0}}, 4));
    EXPECT_TRUE(validate_no_4cycles(BaseMatrix{2, 2, {0, 1, 0, 3}}, 5));
    EXPECT_TRUE(validate_no_4cycles(BaseMatrix{1, 4, {0, 1, 2, 3}}, 4));
}

TEST(DeriveGenerator, RepetitionCode) {
    const auto d = derive_generator(from_rows({{1, 1}}));
    EXPECT_EQ(d.generator, from_rows({{1, 1}}));
    EXPECT_EQ(d.info_cols, std::vector<int>({0}));
    EXPECT_EQ(d.parity_cols, std::vector<int>({1}));
}

TEST(DeriveGenerator, Hamming74StandardForm) {
    const Gf2Matrix h = from_rows(kHamming74H);
    const auto d = derive_generator(h);
    const Gf2Matrix expected = from_rows({
        {1, 0, 0, 0, 1, 1, 0},
        {0, 1, 0, 0, 1, 0, 1},
        {0, 0, 1, 0, 0, 1, 1},
        {0, 0, 0, 1, 1, 1, 1},
    });
    EXPECT_EQ(d.generator, expected);
    EXPECT_TRUE(generator_annihilates(d.generator, h));
}

TEST(DeriveGenerator, RandomFullRankMatricesAnnihilate) {
    Rng rng(31);
    int done = 0;
    while (done < 100) {
        const std::size_t m = 2 + rng() % 6;
        const std::size_t n = m + 1 + rng() % 8;
        Gf2Matrix h(m, n);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                h.set(r, c, rng() & 1u);
            }
        }
        if (h.rank() < m) continue;
        const auto d = derive_generator(h);
        ASSERT_TRUE(generator_annihilates(d.generator, h));
        ASSERT_EQ(d.info_cols.size(), n - m);
        ++done;
    }
}

TEST(DeriveGenerator, RankDeficientNamesDeficiency) {
    const Gf2Matrix h = from_rows({
        {1, 0, 1, 1},
        {1, 0, 1, 1},
    });
    try {
        derive_generator(h);
        FAIL() << "expected rank error";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("rank"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("1 dependent"), std::string::npos);
    }
}

TEST(Codes, BuiltinDimensionsAndGates) {
    const auto& codes = builtin_codes();
    ASSERT_EQ(codes.size(), 3u);
    const int expected_k[] = {288, 384, 432};
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const auto& c = codes[i];
        EXPECT_EQ(c.n, 576);
        EXPECT_EQ(c.k, expected_k[i]);
        EXPECT_EQ(c.z, 48);
        EXPECT_DOUBLE_EQ(c.rate, expected_k[i] / 576.0);
        EXPECT_TRUE(validate_no_4cycles(c.base, c.z));
        EXPECT_EQ(c.H.rank(), static_cast<std::size_t>(c.n - c.k));
        EXPECT_TRUE(generator_annihilates(c.G, c.H));
    }
}

TEST(Codes, ShippedFilesMatchEmbeddedDefinitions) {
    const char* names[] = {"rate12", "rate23", "rate34"};
    for (int i = 0; i < 3; ++i) {
        const std::string path = std::string(LINKSIM_CODES_DIR) + "/" + names[i] + ".txt";
        std::ifstream in(path);
        ASSERT_TRUE(in.good()) << path;
        std::stringstream buf;
        buf << in.rdbuf();
        const auto& [name, text] = builtin_code_texts()[i];
        EXPECT_EQ(name, names[i]);
        EXPECT_EQ(buf.str(), std::string(text)) << "file drifted from embedded copy: " << path;
        const CodeDefinition def = parse_code_definition(buf.str());
        EXPECT_EQ(def, parse_code_definition(std::string(text)));
        EXPECT_EQ(format_code_definition(def), std::string(text));
    }
}

TEST(Codes, ParserRejectsMalformedInput) {
    EXPECT_THROW(parse_code_definition(std::string("")), std::invalid_argument);
    EXPECT_THROW(parse_code_definition(std::string("48 2\n")), std::invalid_argument);
    EXPECT_THROW(parse_code_definition(std::string("4 1 2\n0 4\n")), std::invalid_argument);
    EXPECT_THROW(parse_code_definition(std::string("4 2 2\n0 1\n")), std::invalid_argument);
    EXPECT_THROW(parse_code_definition(std::string("4 1 2\n0 1 2\n")), std::invalid_argument);
    try {
        parse_code_definition(std::string("4 1 2\n0 7\n"));
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("column 1"), std::string::npos);
    }
}

TEST(Encode, ZeroMapsToZeroAndLinearity) {
    Rng rng(37);
    for (const auto& code : builtin_codes()) {
        EXPECT_TRUE(encode(BitBlock(code.k), code).all_zero());
        const BitBlock u1 = BitBlock::random(code.k, rng);
        const BitBlock u2 = BitBlock::random(code.k, rng);
        EXPECT_EQ(encode(u1 ^ u2, code), encode(u1, code) ^ encode(u2, code));
    }
}

TEST(Encode, RandomCodewordsHaveZeroSyndrome) {
    Rng rng(41);
    for (const auto& code : builtin_codes()) {
        for (int i = 0; i < 50; ++i) {
            const BitBlock c = encode(BitBlock::random(code.k, rng), code);
            EXPECT_TRUE(syndrome(code, c).all_zero());
        }
    }
    EXPECT_THROW(encode(BitBlock(5), builtin_codes()[0]), std::invalid_argument);
}

TEST(Syndrome, SingleFlipYieldsColumnOfH) {
    Rng rng(43);
    const auto& code = builtin_codes()[0];
    const BitBlock c = encode(BitBlock::random(code.k, rng), code);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t i = rng() % code.n;
        BitBlock corrupted = c;
        corrupted.flip(i);
        const BitBlock s = syndrome(code, corrupted);
        for (int r = 0; r < code.n - code.k; ++r) {
            EXPECT_EQ(s.get(r), code.H.get(r, i));
        }
    }
    EXPECT_THROW(syndrome(code, BitBlock(5)), std::invalid_argument);
}

TEST(BpDecode, NoiselessAllZeroConvergesImmediately) {
    for (const auto& code : builtin_codes()) {
        const std::vector<double> llrs(code.n, 20.0);
        const DecodeResult res = bp_decode(code, llrs, 50);
        EXPECT_TRUE(res.converged);
        EXPECT_LE(res.iterations_used, 1);
        EXPECT_TRUE(res.u_hat.all_zero());
    }
}

TEST(BpDecode, NoiselessRandomCodewordRecovered) {
    Rng rng(47);
    for (const auto& code : builtin_codes()) {
        const BitBlock u = BitBlock::random(code.k, rng);
        const BitBlock c = encode(u, code);
        std::vector<double> llrs(code.n);
        for (int i = 0; i < code.n; ++i) llrs[i] = c.get(i) ? -20.0 : 20.0;
        const DecodeResult res = bp_decode(code, llrs, 50);
        EXPECT_TRUE(res.converged);
        EXPECT_EQ(res.u_hat, u);
    }
}

TEST(BpDecode, ConvergedOutputReencodesToZeroSyndrome) {
    Rng rng(53);
    const auto& code = builtin_codes()[2];
    std::normal_distribution<double> noise(0.0, 1.0);
    int converged_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const BitBlock u = BitBlock::random(code.k, rng);
        const BitBlock c = encode(u, code);
        std::vector<double> llrs(code.n);
        for (int i = 0; i < code.n; ++i) {
            llrs[i] = (c.get(i) ? -1.0 : 1.0) * 4.0 + noise(rng);
        }
        const DecodeResult res = bp_decode(code, llrs, 50);
        if (res.converged) {
            ++converged_seen;
            EXPECT_TRUE(syndrome(code, encode(res.u_hat, code)).all_zero());
        }
    }
    EXPECT_GT(converged_seen, 0);
}

TEST(BpDecode, InvalidInputs) {
    const auto& code = builtin_codes()[0];
    std::vector<double> llrs(code.n, 1.0);
    EXPECT_THROW(bp_decode(code, std::vector<double>(5, 1.0), 50), std::invalid_argument);
    EXPECT_THROW(bp_decode(code, llrs, 0), std::invalid_argument);
    llrs[3] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(bp_decode(code, llrs, 50), std::invalid_argument);
}

namespace {

struct BpMlCounts {
    int bp = 0;
    int ml = 0;
};

// BP on a tiny code against brute-force ML (max correlation over all 16
// codewords) on BPSK/AWGN at the given Eb/N0 with rate 4/7. Both decoders see
// the same realizations, so the error counts track each other tightly.
BpMlCounts bp_vs_ml_hamming74(const CodeSpec& code, double ebn0_db, int trials, unsigned seed) {
    std::vector<BitBlock> codebook;
    for (int w = 0; w < 16; ++w) {
        BitBlock u(4);
        for (int i = 0; i < 4; ++i) u.set(i, (w >> i) & 1);
        codebook.push_back(encode(u, code));
    }

    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    const double sigma2 = 1.0 / (2.0 * (4.0 / 7.0) * ebn0);
    const double sigma = std::sqrt(sigma2);

    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    BpMlCounts counts;
    for (int t = 0; t < trials; ++t) {
        const BitBlock u = BitBlock::random(4, rng);
        const BitBlock c = encode(u, code);
        double y[7];
        std::vector<double> llrs(7);
        for (int i = 0; i < 7; ++i) {
            y[i] = (c.get(i) ? -1.0 : 1.0) + noise(rng);
            llrs[i] = 2.0 * y[i] / sigma2;
        }

        const DecodeResult bp = bp_decode(code, llrs, 50);
        if (!bp.converged || bp.u_hat != u) ++counts.bp;

        int best = 0;
        double best_corr = -1e18;
        for (int w = 0; w < 16; ++w) {
            double corr = 0.0;
            for (int i = 0; i < 7; ++i) corr += (codebook[w].get(i) ? -1.0 : 1.0) * y[i];
            if (corr > best_corr) {
                best_corr = corr;
                best = w;
            }
        }
        if (codebook[best] != c) ++counts.ml;
    }
    return counts;
}

}  // namespace

TEST(BpDecode, MatchesMlOracleOnHamming74At8dB) {
    const CodeSpec code = hamming74();
    ASSERT_EQ(code.n, 7);
    ASSERT_EQ(code.k, 4);
    const BpMlCounts c = bp_vs_ml_hamming74(code, 8.0, 10000, 59);
    // "Within 2x" on the error counts; the additive slack keeps near-zero
    // counts from turning estimator noise into a failure.
    EXPECT_LE(c.bp, 2 * c.ml + 3);
    EXPECT_LE(c.ml, 2 * c.bp + 3);
}

TEST(BpDecode, MatchesMlOracleOnHamming74LowSnr) {
    const CodeSpec code = hamming74();
    // Error counts in the hundreds here, so the 2x band is a sharp check.
    for (double ebn0_db : {2.0, 4.0}) {
        const BpMlCounts c = bp_vs_ml_hamming74(code, ebn0_db, 10000, 61);
        EXPECT_GT(c.ml, 50) << ebn0_db;
        EXPECT_LE(c.bp, 2 * c.ml) << ebn0_db;
        EXPECT_LE(c.ml, c.bp) << ebn0_db;
    }
}
