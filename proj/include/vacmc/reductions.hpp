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

#include <string>
#include <vector>

#include "vacmc/formula.hpp"
#include "vacmc/kripke.hpp"

namespace vacmc {

// Bijection props -> [1..n]: the proposition at position i has index i + 1.
class PropOrdering {
public:
    explicit PropOrdering(std::vector<std::string> order);
    static PropOrdering of(const KripkeStructure& k) { return PropOrdering(k.props()); }

    std::size_t size() const { return order_.size(); }
    const std::vector<std::string>& props() const { return order_; }
    // 1-based index; throws PreconditionError for unknown propositions.
    std::size_t index(const std::string& p) const;

private:
    std::vector<std::string> order_;
};

// Single-proposition encoding: every state s becomes a chain (s,0) (s,1) ... (s,n+1).
KripkeStructure ez_encode(const KripkeStructure& k, const PropOrdering& o, const std::string& z = "z");

Formula f_translate_ctl(const Formula& psi, const PropOrdering& o, const std::string& z = "z");
Formula g_translate_ctl_star(const Formula& psi, const PropOrdering& o, const std::string& z = "z");

// Reads a structure over o's propositions back from a single-proposition structure.
KripkeStructure decode_single_prop(const KripkeStructure& m, const PropOrdering& o, const std::string& z = "z");

} // namespace vacmc
