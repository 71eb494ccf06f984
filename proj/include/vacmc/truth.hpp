/*
 * Copyright 2026 The vacmc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>

namespace vacmc {

// Kleene values. The numeric order is the truth order false < maybe < true.
enum class Truth : std::uint8_t { False = 0, Maybe = 1, True = 2 };

inline Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }

inline Truth kleene_not(Truth a) { return static_cast<Truth>(2 - static_cast<int>(a)); }
inline Truth kleene_and(Truth a, Truth b) { return a < b ? a : b; }
inline Truth kleene_or(Truth a, Truth b) { return a < b ? b : a; }
inline Truth kleene_implies(Truth a, Truth b) { return kleene_or(kleene_not(a), b); }

// Truth order.
inline bool truth_leq(Truth a, Truth b) { return a <= b; }

// Information order: maybe is below both classical values, which are incomparable.
inline bool info_leq(Truth a, Truth b) { return a == Truth::Maybe || a == b; }

inline char truth_letter(Truth a) {
    switch (a) {
    case Truth::True: return 'T';
    case Truth::Maybe: return 'M';
    default: return 'F';
    }
}

inline std::string truth_name(Truth a) {
    switch (a) {
    case Truth::True: return "true";
    case Truth::Maybe: return "maybe";
    default: return "false";
    }
}

} // namespace vacmc
