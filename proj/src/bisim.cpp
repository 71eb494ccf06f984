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

#include "vacmc/bisim.hpp"

#include <algorithm>
#include <map>

#include "vacmc/error.hpp"

namespace vacmc {

bool Relation::contains(StateId a, StateId b) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
}

std::string Relation::to_string(const KripkeStructure& l, const KripkeStructure& r) const {
    std::string out = "{";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) out += ", ";
        out += "(" + l.states()[pairs[i].first] + "," + r.states()[pairs[i].second] + ")";
    }
    return out + "}";
}

namespace {

std::vector<std::size_t> prop_indices(const KripkeStructure& k, const std::vector<std::string>& props) {
    std::vector<std::size_t> out;
    for (const auto& p : props) {
        auto i = k.prop_index(p);
        if (!i) throw PreconditionError("proposition '" + p + "' is not in structure '" + k.name() + "'");
        out.push_back(*i);
    }
    return out;
}

bool labels_agree(const KripkeStructure& k1, StateId s1, const std::vector<std::size_t>& p1,
                  const KripkeStructure& k2, StateId s2, const std::vector<std::size_t>& p2) {
    for (std::size_t i = 0; i < p1.size(); ++i)
        if (k1.label(s1, p1[i]) != k2.label(s2, p2[i])) return false;
    return true;
}

// Coarsest stable partition of the disjoint union of the given structures.
std::vector<std::size_t> refine(const std::vector<const KripkeStructure*>& ks,
                                const std::vector<std::vector<std::size_t>>& pidx) {
    std::vector<std::size_t> offset{0};
    for (auto* k : ks) offset.push_back(offset.back() + k->num_states());
    const std::size_t total = offset.back();
    std::vector<std::size_t> block(total);
    {
        std::map<std::vector<Truth>, std::size_t> ids;
        for (std::size_t c = 0; c < ks.size(); ++c)
            for (std::size_t s = 0; s < ks[c]->num_states(); ++s) {
                std::vector<Truth> sig;
                for (std::size_t p : pidx[c]) sig.push_back(ks[c]->label(static_cast<StateId>(s), p));
                auto [it, _] = ids.emplace(sig, ids.size());
                block[offset[c] + s] = it->second;
            }
    }
    std::size_t count = 0;
    for (std::size_t b : block) count = std::max(count, b + 1);
    for (;;) {
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
        std::vector<std::size_t> next(total);
        for (std::size_t c = 0; c < ks.size(); ++c)
            for (std::size_t s = 0; s < ks[c]->num_states(); ++s) {
                std::vector<std::size_t> succ;
                for (StateId t : ks[c]->succ(static_cast<StateId>(s))) succ.push_back(block[offset[c] + t]);
                std::sort(succ.begin(), succ.end());
                succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
                auto [it, _] = ids.emplace(std::make_pair(block[offset[c] + s], std::move(succ)), ids.size());
                next[offset[c] + s] = it->second;
            }
        block = std::move(next);
        if (ids.size() == count) return block;
        count = ids.size();
    }
}

} // namespace

Relation greatest_bisimulation(const KripkeStructure& k1, const KripkeStructure& k2,
                               const std::vector<std::string>& props) {
    auto p1 = prop_indices(k1, props), p2 = prop_indices(k2, props);
    auto block = refine({&k1, &k2}, {p1, p2});
    const std::size_t n1 = k1.num_states();
    Relation rel{k1.name(), k2.name(), {}};
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < k2.num_states(); ++b)
            if (block[a] == block[n1 + b]) rel.pairs.emplace_back(static_cast<StateId>(a), static_cast<StateId>(b));
    return rel;
}

std::optional<Relation> bisimilar_over(const KripkeStructure& k1, const KripkeStructure& k2,
                                       const std::vector<std::string>& props) {
    Relation rel = greatest_bisimulation(k1, k2, props);
    for (StateId a : k1.init()) {
        bool ok = std::any_of(k2.init().begin(), k2.init().end(), [&](StateId b) { return rel.contains(a, b); });
        if (!ok) return std::nullopt;
    }
    for (StateId b : k2.init()) {
        bool ok = std::any_of(k1.init().begin(), k1.init().end(), [&](StateId a) { return rel.contains(a, b); });
        if (!ok) return std::nullopt;
    }
    return rel;
}

std::optional<Relation> simulates_over(const KripkeStructure& k1, const KripkeStructure& k2,
                                       const std::vector<std::string>& props) {
    auto p1 = prop_indices(k1, props), p2 = prop_indices(k2, props);
    const std::size_t n1 = k1.num_states(), n2 = k2.num_states();
    std::vector<char> sim(n1 * n2, 0);
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b)
            sim[a * n2 + b] = labels_agree(k1, static_cast<StateId>(a), p1, k2, static_cast<StateId>(b), p2);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < n1; ++a)
            for (std::size_t b = 0; b < n2; ++b) {
                if (!sim[a * n2 + b]) continue;
                for (StateId tb : k2.succ(static_cast<StateId>(b))) {
                    bool matched = false;
                    for (StateId ta : k1.succ(static_cast<StateId>(a)))
                        if (sim[ta * n2 + tb]) {
                            matched = true;
                            break;
                        }
                    if (!matched) {
                        sim[a * n2 + b] = 0;
                        changed = true;
                        break;
                    }
                }
            }
    }
    Relation rel{k1.name(), k2.name(), {}};
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b)
            if (sim[a * n2 + b]) rel.pairs.emplace_back(static_cast<StateId>(a), static_cast<StateId>(b));
    for (StateId b : k2.init()) {
        bool ok = std::any_of(k1.init().begin(), k1.init().end(), [&](StateId a) { return rel.contains(a, b); });
        if (!ok) return std::nullopt;
    }
    return rel;
}

KripkeStructure quotient_bisim(const KripkeStructure& k, const std::vector<std::string>& props) {
    auto pidx = prop_indices(k, props);
    auto block = refine({&k}, {pidx});
    // Renumber blocks by their lowest member.
    std::map<std::size_t, std::size_t> renum;
    std::vector<StateId> rep;
    for (std::size_t s = 0; s < k.num_states(); ++s)
        if (renum.emplace(block[s], renum.size()).second) rep.push_back(static_cast<StateId>(s));
    const std::size_t nb = rep.size();
    std::vector<std::string> states;
    std::vector<std::vector<StateId>> succ(nb);
    std::vector<Truth> labels;
    for (std::size_t b = 0; b < nb; ++b) {
        states.push_back(k.states()[rep[b]]);
        for (std::size_t p : pidx) labels.push_back(k.label(rep[b], p));
    }
    for (std::size_t s = 0; s < k.num_states(); ++s)
        for (StateId t : k.succ(static_cast<StateId>(s)))
            succ[renum[block[s]]].push_back(static_cast<StateId>(renum[block[t]]));
    std::vector<StateId> init;
    for (StateId s : k.init()) init.push_back(static_cast<StateId>(renum[block[s]]));
    std::vector<std::string> qprops;
    for (std::size_t p : pidx) qprops.push_back(k.props()[p]);
    return KripkeStructure(k.name() + "_q", std::move(qprops), std::move(states), std::move(init), std::move(succ),
                           std::move(labels));
}

KripkeStructure quotient_bisim(const KripkeStructure& k) { return quotient_bisim(k, k.props()); }

bool is_simulation_relation(const KripkeStructure& k1, const KripkeStructure& k2,
                            const std::vector<std::string>& props, const Relation& rel) {
    auto p1 = prop_indices(k1, props), p2 = prop_indices(k2, props);
    for (auto [a, b] : rel.pairs) {
        if (a >= k1.num_states() || b >= k2.num_states()) return false;
        if (!labels_agree(k1, a, p1, k2, b, p2)) return false;
        for (StateId tb : k2.succ(b)) {
            bool matched = false;
            for (StateId ta : k1.succ(a))
                if (rel.contains(ta, tb)) matched = true;
            if (!matched) return false;
        }
    }
    for (StateId b : k2.init()) {
        bool ok = false;
        for (StateId a : k1.init())
            if (rel.contains(a, b)) ok = true;
        if (!ok) return false;
    }
    return true;
}

bool is_bisimulation_relation(const KripkeStructure& k1, const KripkeStructure& k2,
                              const std::vector<std::string>& props, const Relation& rel) {
    if (!is_simulation_relation(k1, k2, props, rel)) return false;
    Relation inv{k2.name(), k1.name(), {}};
    for (auto [a, b] : rel.pairs) inv.pairs.emplace_back(b, a);
    std::sort(inv.pairs.begin(), inv.pairs.end());
    return is_simulation_relation(k2, k1, props, inv);
}

} // namespace vacmc
