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

#include <string_view>
#include <utility>
#include <vector>

#include "linksim/qcldpc.hpp"

namespace linksim {

// Built-in protograph definitions, Z=48. Shift values were produced once by
// randomized search and accepted only if the expanded matrix is full rank and
// free of length-4 cycles; the same text ships as codes/<name>.txt.
inline constexpr std::string_view kCodeTextRate12 =
    "48 6 12\n"
    "-1 23 -1 43 38 -1 -1 19 -1 1 -1 18\n"
    "4 -1 35 -1 21 -1 41 -1 23 -1 7 -1\n"
    "22 -1 -1 24 2 -1 -1 43 25 -1 -1 44\n"
    "-1 45 21 -1 -1 8 -1 14 -1 38 -1 26\n"
    "-1 32 -1 37 -1 27 11 -1 40 -1 14 -1\n"
    "4 -1 17 -1 -1 40 21 -1 -1 40 1 -1\n";

inline constexpr std::string_view kCodeTextRate23 =
    "48 4 12\n"
    "-1 1 7 44 46 25 -1 19 -1 39 -1 11\n"
    "25 39 -1 37 47 -1 34 11 14 -1 -1 33\n"
    "30 -1 39 39 33 2 11 -1 -1 46 30 -1\n"
    "14 38 12 -1 -1 22 4 13 28 -1 42 -1\n";

inline constexpr std::string_view kCodeTextRate34 =
    "48 3 12\n"
    "6 24 2 27 31 44 -1 24 19 27 3 -1\n"
    "44 4 16 39 40 18 46 35 -1 -1 16 22\n"
    "18 31 10 25 28 18 5 -1 38 18 -1 6\n";

inline const std::vector<std::pair<std::string_view, std::string_view>>& builtin_code_texts() {
    static const std::vector<std::pair<std::string_view, std::string_view>> texts = {
        {"rate12", kCodeTextRate12},
        {"rate23", kCodeTextRate23},
        {"rate34", kCodeTextRate34},
    };
    return texts;
}

// The three built-in codes, constructed once and gate-checked: full row rank
// (enforced by generator derivation) and no length-4 cycles.
inline const std::vector<CodeSpec>& builtin_codes() {
    static const std::vector<CodeSpec> codes = [] {
        std::vector<CodeSpec> out;
        for (const auto& [name, text] : builtin_code_texts()) {
            CodeDefinition def = parse_code_definition(std::string(text));
            require(validate_no_4cycles(def.base, def.z),
                    std::string("builtin code ") + std::string(name) + " has a length-4 cycle");
            out.push_back(make_code(std::string(name), def));
        }
        return out;
    }();
    return codes;
}

}  // namespace linksim
