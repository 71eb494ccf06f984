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
#include <unordered_map>
#include <vector>

#include "vacmc/formula.hpp"
#include "vacmc/kripke.hpp"
#include "vacmc/mc.hpp"

namespace vacmc::detail {

// Product of a structure with the closure atoms of a path formula. Path
// operators are pushed to negation normal form over state-formula leaves; an
// atom is fixed by its state (leaf values) plus one "next" bit per X, U and R
// node. A product node satisfies E path if it can reach a nontrivial SCC that
// contains, for every U node, an atom where the until is false or its right
// operand holds.
class PathProduct {
public:
    using LeafEval = std::function<StateSet(const Formula&)>;

    PathProduct(const KripkeStructure& k, const Formula& path, LeafEval eval);

    StateSet satisfying_states() const;
    std::optional<Lasso> lasso_from(StateId s) const;

private:
    enum class Kind { Leaf, And, Or, X, U, R };
    struct PNode {
        Kind kind;
        int a = -1;
        int b = -1;
        int leaf = -1;
        int bit = -1;
    };

    int compile(const Formula& f, bool negate);
    int add(PNode n);
    void build();
    void find_accepting();
    std::vector<std::uint32_t> bfs_path(std::uint32_t from, const std::function<bool(std::uint32_t)>& goal,
                                        bool allow_empty, int scc) const;

    const KripkeStructure& k_;
    LeafEval eval_;
    std::vector<PNode> nodes_;
    std::vector<StateSet> leaves_;
    std::unordered_map<Formula, int, FormulaHash> leaf_cache_;
    std::unordered_map<Formula, int, FormulaHash> memo_[2];
    std::vector<int> until_nodes_;
    int root_ = -1;
    int nbits_ = 0;

    std::size_t atoms_ = 0; // 2^nbits
    std::vector<std::uint32_t> req_;
    std::vector<bool> root_true_;
    std::vector<std::uint32_t> fulfilled_;
    std::vector<std::uint32_t> edge_begin_;
    std::vector<std::uint32_t> edges_;
    std::vector<int> scc_;
    std::vector<bool> accepting_;
    std::vector<bool> good_;
};

} // namespace vacmc::detail
