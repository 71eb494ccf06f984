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
#include <vector>

#include "vacmc/formula.hpp"
#include "vacmc/kripke.hpp"

namespace vacmc {

struct CheckOptions {
    // Evaluate CTL-shaped quantified subformulas with fixpoints; when false every
    // A/E goes through the path checker.
    bool ctl_fixpoints = true;
};

// {s | K,s |= phi} for a quantifier-free state formula on a classical structure.
StateSet eval_states(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts = {});

// States denoted by a set atom on k (mapped through a bisimulation when the
// atom was built over another structure).
StateSet set_atom_states(const KripkeStructure& k, const Formula& atom);

// K |= phi: every initial state satisfies phi.
bool check_ctl_star(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts = {});

// {s | K,s |= E path}. `path` may contain state subformulas.
StateSet exists_path(const KripkeStructure& k, const Formula& path, const CheckOptions& opts = {});

struct Lasso {
    std::vector<StateId> stem;
    std::vector<StateId> loop; // nonempty; the path is stem . loop . loop ...
};

// A path from `s` satisfying `path`, if one exists.
std::optional<Lasso> witness_lasso(const KripkeStructure& k, const Formula& path, StateId s,
                                   const CheckOptions& opts = {});

} // namespace vacmc
