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

#include "vacmc/formula.hpp"
#include "vacmc/kripke.hpp"

namespace vacmc {

enum class QRoute {
    BruteForceY,           // structure semantics, all labelings of K
    KParallelX,            // single check on K||chi
    Duality,               // exists handled as not-forall-not
    DeterministicCollapse, // K deterministic: quantifier over a single path
    PathFormulaEquivalence,
    ChainImplication,      // structure <= tree <= bisimulation
    RegularWitness,        // a labeling of a finite bisimilar structure decides
    Unknown,
};

std::string route_name(QRoute r);

struct QEvalResult {
    std::optional<bool> value;
    QRoute route = QRoute::Unknown;
    std::optional<QRoute> inner_route; // set with Duality
    // Labeling of K that decides the structure semantics, when one was found.
    std::optional<StateSet> labeling;
    // A structure with the free variable on which the body has the deciding value.
    std::optional<KripkeStructure> model;
};

struct QctlOptions {
    std::size_t enumeration_bound = kDefaultEnumerationBound;
};

struct StructuralResult {
    bool value = false;
    // For forall: a falsifying labeling; for exists: a satisfying one.
    std::optional<StateSet> witness;
};

// Root quantifier helpers. Throw PreconditionError unless q is forall/exists x. body.
void check_quantified(const KripkeStructure& k, const Formula& q);

StructuralResult eval_structural(const KripkeStructure& k, const Formula& q, const QctlOptions& opts = {});
QEvalResult eval_bisimulation(const KripkeStructure& k, const Formula& q, const QctlOptions& opts = {});
QEvalResult eval_tree(const KripkeStructure& k, const Formula& q, const QctlOptions& opts = {});

// Checks the body of a forall formula on the source of a validated unrolling map.
// True iff the map refutes the formula under the tree semantics.
bool refute_tree_with_witness(const KripkeStructure& k, const Formula& q, const UnrollingMap& u);

// Drops every path quantifier.
Formula pathify(const Formula& phi);

} // namespace vacmc
