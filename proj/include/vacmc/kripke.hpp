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
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "vacmc/truth.hpp"

namespace vacmc {

using StateId = std::uint32_t;
using StateSet = boost::dynamic_bitset<>;

// Default cap for 2^n enumerations (state subsets, maybe resolutions).
inline constexpr std::size_t kDefaultEnumerationBound = 20;

class KripkeStructure {
public:
    // Validates totality, index ranges, and label completeness.
    KripkeStructure(std::string name, std::vector<std::string> props, std::vector<std::string> states,
                    std::vector<StateId> init, std::vector<std::vector<StateId>> succ,
                    std::vector<Truth> labels);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& props() const { return props_; }
    const std::vector<std::string>& states() const { return states_; }
    std::size_t num_states() const { return states_.size(); }
    std::size_t num_props() const { return props_.size(); }
    const std::vector<StateId>& init() const { return init_; }
    bool is_initial(StateId s) const { return init_set_.test(s); }
    const StateSet& init_set() const { return init_set_; }
    const std::vector<StateId>& succ(StateId s) const { return succ_[s]; }
    const std::vector<StateId>& pred(StateId s) const { return pred_[s]; }
    bool has_edge(StateId s, StateId t) const;
    std::size_t num_transitions() const;

    Truth label(StateId s, std::size_t prop) const { return labels_[s * props_.size() + prop]; }
    Truth label(StateId s, const std::string& prop) const;
    const std::vector<Truth>& labels() const { return labels_; }

    std::optional<std::size_t> prop_index(const std::string& p) const;
    std::optional<StateId> state_index(const std::string& s) const;
    bool has_prop(const std::string& p) const { return prop_index(p).has_value(); }
    bool is_classical() const;
    std::size_t maybe_count() const;

    // States labeled true for `prop`.
    StateSet prop_set(std::size_t prop) const;
    StateSet empty_set() const { return StateSet(num_states()); }
    StateSet full_set() const { return ~StateSet(num_states()); }

    KripkeStructure renamed(std::string name) const;
    const std::vector<std::vector<StateId>>& successor_lists() const { return succ_; }

private:
    std::string name_;
    std::vector<std::string> props_;
    std::vector<std::string> states_;
    std::vector<StateId> init_;
    StateSet init_set_;
    std::vector<std::vector<StateId>> succ_;
    std::vector<std::vector<StateId>> pred_;
    std::vector<Truth> labels_;
};

// Equal in everything except the structure name.
bool identical(const KripkeStructure& a, const KripkeStructure& b);
// A state bijection a -> b preserving init, transitions and labels (props matched by name).
std::optional<std::vector<StateId>> find_isomorphism(const KripkeStructure& a, const KripkeStructure& b);

KripkeStructure parse_kripke(std::string_view text);
std::string render_kripke(const KripkeStructure& k);
KripkeStructure load_kripke(const std::string& path);

KripkeStructure compose_sync(const KripkeStructure& k1, const KripkeStructure& k2);
// The two-state structure with free proposition `x`: all transitions, both states initial.
KripkeStructure chi(const std::string& x = "x");
// One state with a self-loop over the given (all-true) propositions.
KripkeStructure unit_structure(const std::vector<std::string>& props = {});
KripkeStructure duplicate_m(const KripkeStructure& k, std::size_t m);
KripkeStructure remove_prop(const KripkeStructure& k, const std::string& x);
// K extended with proposition x, true exactly on `ys`.
KripkeStructure x_variant(const KripkeStructure& k, const std::string& x, const StateSet& ys);
// All 2^|S| x-variants; variant i labels state j with x iff bit j of i is set.
std::vector<KripkeStructure> x_variants(const KripkeStructure& k, const std::string& x,
                                        std::size_t bound = kDefaultEnumerationBound);
// The same structure with a different (nonempty) initial set.
KripkeStructure with_init(const KripkeStructure& k, const StateSet& init);
bool is_deterministic(const KripkeStructure& k);
StateSet reachable(const KripkeStructure& k);

struct UnrollingMap {
    KripkeStructure source;
    KripkeStructure target;
    std::vector<StateId> h;
};

bool validate_unrolling_map(const UnrollingMap& u, const std::string& x);

std::string state_set_to_string(const KripkeStructure& k, const StateSet& ys);
std::vector<std::string> state_names(const KripkeStructure& k, const StateSet& ys);

} // namespace vacmc
