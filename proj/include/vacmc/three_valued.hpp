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
#include <vector>

#include "vacmc/bisim.hpp"
#include "vacmc/formula.hpp"
#include "vacmc/kripke.hpp"
#include "vacmc/qctl.hpp"
#include "vacmc/truth.hpp"
#include "vacmc/vacuity.hpp"

namespace vacmc {

enum class KleeneOp { Not, And, Or, Implies };
Truth kleene(KleeneOp op, Truth a, Truth b = Truth::False);

// Per-state compositional value of a CTL formula on a 3-valued structure.
std::vector<Truth> eval_states3(const KripkeStructure& k, const Formula& phi);
// Meet over the initial states.
Truth eval_compositional3(const KripkeStructure& k, const Formula& phi);

// Greatest refinement relation with `less` below `more` in the information order.
std::optional<Relation> is_refinement(const KripkeStructure& less, const KripkeStructure& more);

// K with a fresh proposition x labeled maybe everywhere.
KripkeStructure lift_kx(const KripkeStructure& k, const std::string& x);

// Every classical resolution of the maybe labels; bit i of the index resolves the
// i-th maybe (state-major, then proposition order).
std::vector<KripkeStructure> labeling_completions(const KripkeStructure& k3,
                                                  std::size_t bound = kDefaultEnumerationBound);

struct ThoroughResult {
    std::optional<Truth> value;
    std::optional<Truth> compositional;
    std::optional<Truth> labeling;
    QEvalResult universal;   // forall x. phi
    QEvalResult existential; // exists x. phi
};

struct ThoroughOptions {
    std::size_t enumeration_bound = kDefaultEnumerationBound;
};

ThoroughResult thorough_kx(const KripkeStructure& k, const std::string& x, const Formula& phi,
                           const ThoroughOptions& opts = {});

VacuityVerdict vacuity_via_thorough(const Formula& phi, const Formula& psi, const KripkeStructure& k,
                                    const ThoroughOptions& opts = {});

// Value of phi over all x-labelings of K: T, F or M when they disagree.
std::optional<Truth> labeling_value(const KripkeStructure& k, const std::string& x, const Formula& phi,
                                    std::size_t bound = kDefaultEnumerationBound);

} // namespace vacmc
