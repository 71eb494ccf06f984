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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vacmc/formula.hpp"
#include "vacmc/kripke.hpp"
#include "vacmc/mc.hpp"

namespace vacmc::testing {

// Seed from VACMC_SEED, or a fixed default so runs are reproducible.
std::uint64_t test_seed();
std::mt19937_64 make_rng(std::uint64_t salt = 0);

struct StructureShape {
    std::size_t min_states = 1;
    std::size_t max_states = 3;
    std::vector<std::string> props{"p", "q"};
    double edge_prob = 0.4;
    bool maybe_labels = false; // three-valued labels
};

KripkeStructure random_structure(std::mt19937_64& rng, const StructureShape& shape, const std::string& name = "R");

enum class FormulaKind {
    Ctl,           // CTL state formula
    CtlStar,       // CTL* state formula
    Path,          // path formula without path quantifiers
    PureActlStar,  // ACTL* in negation normal form (only atoms negated)
};

Formula random_formula(std::mt19937_64& rng, FormulaKind kind, const std::vector<std::string>& props, int depth);

// Every classical structure with exactly n states over `props` (all successor
// sets and labelings), initial state 0.
std::vector<KripkeStructure> all_structures(std::size_t n, const std::vector<std::string>& props);

// All structures with up to n states, one representative per isomorphism class
// (initial state ignored).
std::vector<KripkeStructure> all_structures_up_to_iso(std::size_t max_n, const std::vector<std::string>& props);

// Truth of a quantifier-free path formula on the lasso stem.loop^omega, evaluated
// position by position with bitmasks. Independent of the library's checker.
bool lasso_satisfies(const KripkeStructure& k, const Formula& path, const Lasso& lasso);

// Bounded search for a lasso from s with |stem| + |loop| <= max_len satisfying path.
std::optional<Lasso> bounded_lasso_search(const KripkeStructure& k, const Formula& path, StateId s,
                                          std::size_t max_len);

bool is_valid_lasso(const KripkeStructure& k, const Lasso& lasso, StateId s);

// Formula pools used across suites.
std::vector<Formula> ctl_pool(const std::vector<std::string>& props); // 40 CTL formulas
std::vector<Formula> ctl_star_pool(const std::vector<std::string>& props);

std::vector<std::string> fixture_list();

inline Formula pf(std::string_view text) { return parse_formula(text); }
KripkeStructure fx(const std::string& name);
StateSet states_of(const KripkeStructure& k, const std::vector<std::string>& names);

// Random (phi, psi) over {p, q} where psi is p or a state subformula of phi.
std::pair<Formula, Formula> random_vacuity_instance(std::mt19937_64& rng, FormulaKind kind, int depth);

// Merge states with equal labels, lifting transitions existentially. The result simulates k.
KripkeStructure merge_by_label(const KripkeStructure& k);

} // namespace vacmc::testing
