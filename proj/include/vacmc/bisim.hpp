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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vacmc/kripke.hpp"

namespace vacmc {

struct Relation {
    std::string left;
    std::string right;
    std::vector<std::pair<StateId, StateId>> pairs; // sorted, unique

    bool contains(StateId a, StateId b) const;
    std::string to_string(const KripkeStructure& l, const KripkeStructure& r) const;
};

// Greatest bisimulation over `props` between the two state spaces (no initial-state condition).
Relation greatest_bisimulation(const KripkeStructure& k1, const KripkeStructure& k2,
                               const std::vector<std::string>& props);

// Some(greatest bisimulation) if every initial state on each side is related to an
// initial state on the other side.
std::optional<Relation> bisimilar_over(const KripkeStructure& k1, const KripkeStructure& k2,
                                       const std::vector<std::string>& props);

// k1 simulates k2: pairs (s1, s2) where s1 simulates s2. Some iff every initial
// state of k2 is simulated by an initial state of k1.
std::optional<Relation> simulates_over(const KripkeStructure& k1, const KripkeStructure& k2,
                                       const std::vector<std::string>& props);

// Quotient by the greatest auto-bisimulation over `props`; each block is named
// after its lowest-index member.
KripkeStructure quotient_bisim(const KripkeStructure& k, const std::vector<std::string>& props);
KripkeStructure quotient_bisim(const KripkeStructure& k);

// Clause-by-clause replay checks.
bool is_simulation_relation(const KripkeStructure& k1, const KripkeStructure& k2,
                            const std::vector<std::string>& props, const Relation& rel);
bool is_bisimulation_relation(const KripkeStructure& k1, const KripkeStructure& k2,
                              const std::vector<std::string>& props, const Relation& rel);

} // namespace vacmc
