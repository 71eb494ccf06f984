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

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vacmc/formula.hpp"
#include "vacmc/kripke.hpp"
#include "vacmc/truth.hpp"

namespace vacmc {

enum class VacuityStatus { Vacuous, NonVacuous, Unknown };

enum class VacuityRoute {
    Absent,              // psi does not occur
    Monotone,            // constant substitutions (pure polarity or single occurrence)
    SatX,                // K||chi check, satisfied universal case
    FalX,                // K||chi check, falsified existential case
    StructureRefutation, // two subsets Y of S disagree
    VariantRefutation,   // an x-variant of a bisimilar structure disagrees with K
    BoundedValidity,     // phi[psi<-x] constant on all small structures
    Structure,           // structure vacuity only (CLI --via structure)
    Compositional3,      // definite 3-valued value on K_x
    Thorough,            // thorough value on K_x
    Undecided,
};

std::string status_name(VacuityStatus s);
std::string route_name(VacuityRoute r);

// An x-variant, x-bisimilar to the checked structure, on which phi[psi<-x] has value `holds`.
struct VariantWitness {
    KripkeStructure model;
    bool holds;
};

struct VacuityEvidence {
    std::string var;
    Formula substituted; // phi[psi<-x]
    std::optional<bool> with_true;
    std::optional<bool> with_false;
    std::vector<VariantWitness> variants;
    std::optional<std::size_t> bounded_states;
};

struct VacuityBounds {
    std::optional<Truth> compositional; // 3-valued value of phi[psi<-x] on K_x (CTL only)
    std::optional<Truth> labeling;      // verdicts over all x-labelings of K
};

struct VacuityVerdict {
    VacuityStatus status = VacuityStatus::Unknown;
    VacuityRoute route = VacuityRoute::Undecided;
    std::optional<VacuityEvidence> evidence;
    std::optional<VacuityBounds> bounds;
};

struct VacuityOptions {
    std::size_t enumeration_bound = kDefaultEnumerationBound;
    // Run the bounded-validity probe over structures with up to this many states.
    std::optional<std::size_t> bounded_validity;
};

// A proposition name unused by phi, psi and K.
std::string fresh_var(const Formula& phi, const Formula& psi, const KripkeStructure& k);

bool constant_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k);

struct StructureVacuity {
    bool vacuous = false;
    // (Y satisfying phi[psi<-Y], Y falsifying it) when not vacuous.
    std::optional<std::pair<StateSet, StateSet>> witness;
};

StructureVacuity structure_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k,
                                   std::size_t bound = kDefaultEnumerationBound);

bool syntactic_monotone(const Formula& phi, const Formula& psi);

struct MonotoneResult {
    bool vacuous = false;
    bool monotone = false; // false flags a call outside the algorithm's precondition
};

MonotoneResult is_mon_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k);

bool is_sat_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k);
bool is_fal_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k);

VacuityVerdict decide_bisim_vacuity(const Formula& phi, const Formula& psi, const KripkeStructure& k,
                                    const VacuityOptions& opts = {});

// Re-checks a NonVacuous witness: two x-bisimilar variants with opposite verdicts.
bool replay_witness(const Formula& phi, const Formula& psi, const KripkeStructure& k, const VacuityEvidence& ev);

// Value of f if it is the same at every state of every structure with at most
// `max_states` states over props_of(f); nullopt if structures disagree.
std::optional<bool> bounded_constant_value(const Formula& f, std::size_t max_states);

using SubformulaSelector = std::function<bool(const Formula&)>;
bool select_existential(const Formula& f);

// Replaces selected state subformulas by set atoms over K.
Formula prop_simplify(const Formula& phi, const KripkeStructure& k,
                      const SubformulaSelector& selector = select_existential);

} // namespace vacmc
