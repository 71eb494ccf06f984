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

#include "path_checker.hpp"

#include <algorithm>
#include <deque>

#include "vacmc/error.hpp"

namespace vacmc::detail {

namespace {
constexpr int kMaxBits = 20;
}

PathProduct::PathProduct(const KripkeStructure& k, const Formula& path, LeafEval eval)
    : k_(k), eval_(std::move(eval)) {
    root_ = compile(path, false);
    if (nbits_ > kMaxBits)
        throw BoundError("path formula has too many temporal operators for the atom product");
    if (until_nodes_.size() > 32) throw BoundError("path formula has too many until operators");
    build();
    find_accepting();
}

int PathProduct::add(PNode n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

int PathProduct::compile(const Formula& f, bool negate) {
    auto& memo = memo_[negate ? 1 : 0];
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    int id = -1;
    if (is_state_formula(f)) {
        int leaf;
        if (auto it = leaf_cache_.find(f); it != leaf_cache_.end()) {
            leaf = it->second;
        } else {
            leaves_.push_back(eval_(f));
            leaf = static_cast<int>(leaves_.size()) - 1;
            leaf_cache_.emplace(f, leaf);
        }
        if (negate) {
            leaves_.push_back(~leaves_[leaf]);
            leaf = static_cast<int>(leaves_.size()) - 1;
        }
        id = add({Kind::Leaf, -1, -1, leaf, -1});
    } else {
        switch (f.op()) {
        case Op::Not: id = compile(f.child(), !negate); break;
        case Op::And:
        case Op::Or: {
            int a = compile(f.left(), negate), b = compile(f.right(), negate);
            bool conj = (f.op() == Op::And) != negate;
            id = add({conj ? Kind::And : Kind::Or, a, b});
            break;
        }
        case Op::Implies: {
            int a = compile(f.left(), !negate), b = compile(f.right(), negate);
            id = add({negate ? Kind::And : Kind::Or, a, b});
            break;
        }
        case Op::X: {
            int a = compile(f.child(), negate);
            id = add({Kind::X, a, -1, -1, nbits_++});
            break;
        }
        case Op::U:
        case Op::R: {
            int a = compile(f.left(), negate), b = compile(f.right(), negate);
            bool until = (f.op() == Op::U) != negate;
            id = add({until ? Kind::U : Kind::R, a, b, -1, nbits_++});
            if (until) until_nodes_.push_back(id);
            break;
        }
        case Op::F:
        case Op::G: {
            // F g = true U g, G g = false R g
            bool future = (f.op() == Op::F) != negate;
            int c = compile(f.child(), negate);
            int constant = compile(Formula::constant(future), false);
            id = add({future ? Kind::U : Kind::R, constant, c, -1, nbits_++});
            if (future) until_nodes_.push_back(id);
            break;
        }
        default: throw PreconditionError("unsupported operator in path formula '" + f.str() + "'");
        }
    }
    memo.emplace(f, id);
    return id;
}

void PathProduct::build() {
    const std::size_t n = k_.num_states();
    atoms_ = std::size_t{1} << nbits_;
    const std::size_t total = n * atoms_;
    req_.assign(total, 0);
    root_true_.assign(total, false);
    fulfilled_.assign(total, 0);
    std::vector<char> val(nodes_.size());
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t m = 0; m < atoms_; ++m) {
            for (std::size_t i = 0; i < nodes_.size(); ++i) {
                const PNode& p = nodes_[i];
                bool v = false;
                switch (p.kind) {
                case Kind::Leaf: v = leaves_[p.leaf].test(s); break;
                case Kind::And: v = val[p.a] && val[p.b]; break;
                case Kind::Or: v = val[p.a] || val[p.b]; break;
                case Kind::X: v = (m >> p.bit) & 1u; break;
                case Kind::U: v = val[p.b] || (val[p.a] && ((m >> p.bit) & 1u)); break;
                case Kind::R: v = val[p.b] && (val[p.a] || ((m >> p.bit) & 1u)); break;
                }
                val[i] = v;
            }
            std::size_t node = s * atoms_ + m;
            std::uint32_t r = 0;
            for (const PNode& p : nodes_) {
                if (p.kind == Kind::X && val[p.a]) r |= 1u << p.bit;
            }
            for (std::size_t i = 0; i < nodes_.size(); ++i) {
                const PNode& p = nodes_[i];
                if ((p.kind == Kind::U || p.kind == Kind::R) && val[i]) r |= 1u << p.bit;
            }
            req_[node] = r;
            root_true_[node] = val[root_];
            std::uint32_t ful = 0;
            for (std::size_t u = 0; u < until_nodes_.size(); ++u) {
                const PNode& p = nodes_[until_nodes_[u]];
                if (!val[until_nodes_[u]] || val[p.b]) ful |= 1u << u;
            }
            fulfilled_[node] = ful;
        }
    }
    // Forward edges (s, req(t,m')) -> (t, m') for s in pred(t).
    edge_begin_.assign(total + 1, 0);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t m = 0; m < atoms_; ++m) {
            std::size_t node = t * atoms_ + m;
            for (StateId s : k_.pred(static_cast<StateId>(t))) ++edge_begin_[s * atoms_ + req_[node] + 1];
        }
    for (std::size_t i = 0; i < total; ++i) edge_begin_[i + 1] += edge_begin_[i];
    edges_.assign(edge_begin_[total], 0);
    std::vector<std::uint32_t> fill(edge_begin_.begin(), edge_begin_.end() - 1);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t m = 0; m < atoms_; ++m) {
            std::size_t node = t * atoms_ + m;
            for (StateId s : k_.pred(static_cast<StateId>(t)))
                edges_[fill[s * atoms_ + req_[node]]++] = static_cast<std::uint32_t>(node);
        }
}

void PathProduct::find_accepting() {
    const std::size_t total = req_.size();
    // Iterative Tarjan.
    scc_.assign(total, -1);
    std::vector<int> index(total, -1), low(total, 0);
    std::vector<bool> on_stack(total, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> call; // node, next edge
    int counter = 0, comps = 0;
    std::vector<std::uint32_t> comp_ful;
    std::vector<bool> comp_cyclic;
    for (std::size_t root = 0; root < total; ++root) {
        if (index[root] != -1) continue;
        call.push_back({static_cast<std::uint32_t>(root), edge_begin_[root]});
        index[root] = low[root] = counter++;
        stack.push_back(static_cast<std::uint32_t>(root));
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < edge_begin_[v + 1]) {
                std::uint32_t w = edges_[e++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, edge_begin_[w]});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::uint32_t ful = 0;
                std::size_t size = 0;
                bool self_loop = false;
                for (;;) {
                    std::uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    scc_[w] = comps;
                    ful |= fulfilled_[w];
                    ++size;
                    if (w == done) break;
                }
                for (std::uint32_t e2 = edge_begin_[done]; e2 < edge_begin_[done + 1]; ++e2)
                    if (edges_[e2] == done) self_loop = true;
                comp_ful.push_back(ful);
                comp_cyclic.push_back(size > 1 || self_loop);
                ++comps;
            }
        }
    }
    const std::uint32_t all = until_nodes_.empty() ? 0u
                              : until_nodes_.size() == 32 ? 0xffffffffu
                                                          : ((1u << until_nodes_.size()) - 1u);
    accepting_.assign(total, false);
    good_.assign(total, false);
    std::deque<std::uint32_t> queue;
    for (std::size_t v = 0; v < total; ++v) {
        int c = scc_[v];
        if (comp_cyclic[c] && (comp_ful[c] & all) == all) {
            accepting_[v] = true;
            good_[v] = true;
            queue.push_back(static_cast<std::uint32_t>(v));
        }
    }
    while (!queue.empty()) {
        std::uint32_t v = queue.front();
        queue.pop_front();
        std::size_t t = v / atoms_;
        std::size_t pm = req_[v];
        for (StateId s : k_.pred(static_cast<StateId>(t))) {
            std::size_t u = s * atoms_ + pm;
            if (!good_[u]) {
                good_[u] = true;
                queue.push_back(static_cast<std::uint32_t>(u));
            }
        }
    }
}

StateSet PathProduct::satisfying_states() const {
    StateSet out(k_.num_states());
    for (std::size_t v = 0; v < req_.size(); ++v)
        if (root_true_[v] && good_[v]) out.set(v / atoms_);
    return out;
}

std::vector<std::uint32_t> PathProduct::bfs_path(std::uint32_t from, const std::function<bool(std::uint32_t)>& goal,
                                                 bool allow_empty, int scc) const {
    if (allow_empty && goal(from)) return {};
    // parent: -2 unvisited, -1 reached directly from `from`
    std::vector<std::int64_t> parent(req_.size(), -2);
    std::deque<std::uint32_t> queue;
    auto push_succ = [&](std::uint32_t v, std::int64_t mark) {
        for (std::uint32_t e = edge_begin_[v]; e < edge_begin_[v + 1]; ++e) {
            std::uint32_t w = edges_[e];
            if (parent[w] != -2 || (scc >= 0 && scc_[w] != scc)) continue;
            parent[w] = mark;
            queue.push_back(w);
        }
    };
    push_succ(from, -1);
    while (!queue.empty()) {
        std::uint32_t v = queue.front();
        queue.pop_front();
        if (goal(v)) {
            std::vector<std::uint32_t> path;
            for (std::int64_t c = v; c != -1; c = parent[c]) path.push_back(static_cast<std::uint32_t>(c));
            std::reverse(path.begin(), path.end());
            return path; // excludes `from`, ends at goal
        }
        push_succ(v, v);
    }
    throw Error("internal: lasso search failed");
}

std::optional<Lasso> PathProduct::lasso_from(StateId s) const {
    std::optional<std::uint32_t> start;
    for (std::size_t m = 0; m < atoms_; ++m) {
        std::size_t v = s * atoms_ + m;
        if (root_true_[v] && good_[v]) {
            start = static_cast<std::uint32_t>(v);
            break;
        }
    }
    if (!start) return std::nullopt;
    std::vector<std::uint32_t> stem{*start};
    auto to_acc = bfs_path(*start, [&](std::uint32_t v) { return bool(accepting_[v]); }, true, -1);
    stem.insert(stem.end(), to_acc.begin(), to_acc.end());
    std::uint32_t entry = stem.back();
    stem.pop_back();
    int comp = scc_[entry];

    std::vector<std::uint32_t> cycle{entry};
    std::uint32_t cur = entry;
    for (std::size_t u = 0; u < until_nodes_.size(); ++u) {
        std::uint32_t bit = 1u << u;
        bool seen = std::any_of(cycle.begin(), cycle.end(), [&](std::uint32_t v) { return fulfilled_[v] & bit; });
        if (seen) continue;
        auto seg = bfs_path(cur, [&](std::uint32_t v) { return bool(fulfilled_[v] & bit); }, false, comp);
        cycle.insert(cycle.end(), seg.begin(), seg.end());
        cur = cycle.back();
    }
    auto back = bfs_path(cur, [&](std::uint32_t v) { return v == entry; }, false, comp);
    cycle.insert(cycle.end(), back.begin(), back.end() - 1);

    Lasso lasso;
    for (std::uint32_t v : stem) lasso.stem.push_back(static_cast<StateId>(v / atoms_));
    for (std::uint32_t v : cycle) lasso.loop.push_back(static_cast<StateId>(v / atoms_));
    return lasso;
}

} // namespace vacmc::detail
