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

#include "vacmc/kripke.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "vacmc/error.hpp"

namespace vacmc {

KripkeStructure::KripkeStructure(std::string name, std::vector<std::string> props,
                                 std::vector<std::string> states, std::vector<StateId> init,
                                 std::vector<std::vector<StateId>> succ, std::vector<Truth> labels)
    : name_(std::move(name)),
      props_(std::move(props)),
      states_(std::move(states)),
      init_(std::move(init)),
      succ_(std::move(succ)),
      labels_(std::move(labels)) {
    const std::size_t n = states_.size();
    if (n == 0) throw ModelError("structure '" + name_ + "' has no states");
    {
        std::set<std::string> seen(states_.begin(), states_.end());
        if (seen.size() != n) throw ModelError("duplicate state name in '" + name_ + "'");
        std::set<std::string> pseen(props_.begin(), props_.end());
        if (pseen.size() != props_.size()) throw ModelError("duplicate proposition in '" + name_ + "'");
    }
    if (succ_.size() != n) throw ModelError("transition table size mismatch in '" + name_ + "'");
    if (labels_.size() != n * props_.size()) throw ModelError("incomplete labeling in '" + name_ + "'");
    std::sort(init_.begin(), init_.end());
    init_.erase(std::unique(init_.begin(), init_.end()), init_.end());
    if (init_.empty()) throw ModelError("structure '" + name_ + "' has no initial state");
    init_set_.resize(n);
    for (StateId s : init_) {
        if (s >= n) throw ModelError("initial state out of range in '" + name_ + "'");
        init_set_.set(s);
    }
    pred_.assign(n, {});
    for (std::size_t s = 0; s < n; ++s) {
        auto& out = succ_[s];
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        if (out.empty())
            throw ModelError("state '" + states_[s] + "' of '" + name_ + "' has no outgoing transition");
        for (StateId t : out) {
            if (t >= n) throw ModelError("transition target out of range in '" + name_ + "'");
            pred_[t].push_back(static_cast<StateId>(s));
        }
    }
}

bool KripkeStructure::has_edge(StateId s, StateId t) const {
    return std::binary_search(succ_[s].begin(), succ_[s].end(), t);
}

std::size_t KripkeStructure::num_transitions() const {
    std::size_t n = 0;
    for (const auto& v : succ_) n += v.size();
    return n;
}

Truth KripkeStructure::label(StateId s, const std::string& prop) const {
    auto i = prop_index(prop);
    if (!i) throw ModelError("proposition '" + prop + "' not in structure '" + name_ + "'");
    return label(s, *i);
}

std::optional<std::size_t> KripkeStructure::prop_index(const std::string& p) const {
    for (std::size_t i = 0; i < props_.size(); ++i)
        if (props_[i] == p) return i;
    return std::nullopt;
}

std::optional<StateId> KripkeStructure::state_index(const std::string& s) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == s) return static_cast<StateId>(i);
    return std::nullopt;
}

bool KripkeStructure::is_classical() const { return maybe_count() == 0; }

std::size_t KripkeStructure::maybe_count() const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), Truth::Maybe));
}

StateSet KripkeStructure::prop_set(std::size_t prop) const {
    StateSet out(num_states());
    for (std::size_t s = 0; s < num_states(); ++s)
        if (label(static_cast<StateId>(s), prop) == Truth::True) out.set(s);
    return out;
}

KripkeStructure KripkeStructure::renamed(std::string name) const {
    KripkeStructure k = *this;
    k.name_ = std::move(name);
    return k;
}

bool identical(const KripkeStructure& a, const KripkeStructure& b) {
    return a.props() == b.props() && a.states() == b.states() && a.init() == b.init() &&
           a.successor_lists() == b.successor_lists() && a.labels() == b.labels();
}

// ---------------------------------------------------------------------------
// Isomorphism (backtracking; only meant for small structures)

std::optional<std::vector<StateId>> find_isomorphism(const KripkeStructure& a, const KripkeStructure& b) {
    const std::size_t n = a.num_states();
    if (n != b.num_states() || a.num_props() != b.num_props() || a.init().size() != b.init().size() ||
        a.num_transitions() != b.num_transitions())
        return std::nullopt;
    std::vector<std::size_t> pmap(a.num_props());
    for (std::size_t p = 0; p < a.num_props(); ++p) {
        auto j = b.prop_index(a.props()[p]);
        if (!j) return std::nullopt;
        pmap[p] = *j;
    }
    auto compatible = [&](StateId s, StateId t) {
        if (a.is_initial(s) != b.is_initial(t)) return false;
        if (a.succ(s).size() != b.succ(t).size() || a.pred(s).size() != b.pred(t).size()) return false;
        if (a.has_edge(s, s) != b.has_edge(t, t)) return false;
        for (std::size_t p = 0; p < a.num_props(); ++p)
            if (a.label(s, p) != b.label(t, pmap[p])) return false;
        return true;
    };
    std::vector<StateId> map(n, 0);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == n) return true;
        StateId s = static_cast<StateId>(i);
        for (StateId t = 0; t < n; ++t) {
            if (used[t] || !compatible(s, t)) continue;
            bool ok = true;
            for (StateId r = 0; r < s && ok; ++r) {
                if (a.has_edge(s, r) != b.has_edge(t, map[r])) ok = false;
                if (a.has_edge(r, s) != b.has_edge(map[r], t)) ok = false;
            }
            if (!ok) continue;
            map[s] = t;
            used[t] = true;
            if (go(i + 1)) return true;
            used[t] = false;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return map;
}

// ---------------------------------------------------------------------------
// Constructions

KripkeStructure compose_sync(const KripkeStructure& k1, const KripkeStructure& k2) {
    for (const auto& p : k1.props())
        if (k2.has_prop(p))
            throw PreconditionError("composition requires disjoint propositions; '" + p + "' is shared");
    const std::size_t n1 = k1.num_states(), n2 = k2.num_states();
    std::vector<std::string> props = k1.props();
    props.insert(props.end(), k2.props().begin(), k2.props().end());
    std::vector<std::string> states;
    std::vector<std::vector<StateId>> succ(n1 * n2);
    std::vector<Truth> labels;
    labels.reserve(n1 * n2 * props.size());
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            states.push_back("(" + k1.states()[i] + "," + k2.states()[j] + ")");
            auto& out = succ[i * n2 + j];
            for (StateId a : k1.succ(static_cast<StateId>(i)))
                for (StateId b : k2.succ(static_cast<StateId>(j)))
                    out.push_back(static_cast<StateId>(a * n2 + b));
            for (std::size_t p = 0; p < k1.num_props(); ++p) labels.push_back(k1.label(static_cast<StateId>(i), p));
            for (std::size_t p = 0; p < k2.num_props(); ++p) labels.push_back(k2.label(static_cast<StateId>(j), p));
        }
    }
    std::vector<StateId> init;
    for (StateId a : k1.init())
        for (StateId b : k2.init()) init.push_back(static_cast<StateId>(a * n2 + b));
    return KripkeStructure(k1.name() + "_" + k2.name(), std::move(props), std::move(states), std::move(init),
                           std::move(succ), std::move(labels));
}

KripkeStructure chi(const std::string& x) {
    return KripkeStructure("chi", {x}, {"x0", "x1"}, {0, 1}, {{0, 1}, {0, 1}}, {Truth::False, Truth::True});
}

KripkeStructure unit_structure(const std::vector<std::string>& props) {
    return KripkeStructure("unit", props, {"u0"}, {0}, {{0}}, std::vector<Truth>(props.size(), Truth::True));
}

KripkeStructure duplicate_m(const KripkeStructure& k, std::size_t m) {
    if (m == 0) throw PreconditionError("duplication factor must be at least 1");
    const std::size_t n = k.num_states();
    std::vector<std::string> states;
    std::vector<std::vector<StateId>> succ(n * m);
    std::vector<Truth> labels;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < m; ++i) {
            states.push_back("(" + k.states()[s] + "," + std::to_string(i) + ")");
            for (StateId t : k.succ(static_cast<StateId>(s)))
                for (std::size_t j = 0; j < m; ++j) succ[s * m + i].push_back(static_cast<StateId>(t * m + j));
            for (std::size_t p = 0; p < k.num_props(); ++p) labels.push_back(k.label(static_cast<StateId>(s), p));
        }
    }
    std::vector<StateId> init;
    for (StateId s : k.init())
        for (std::size_t i = 0; i < m; ++i) init.push_back(static_cast<StateId>(s * m + i));
    return KripkeStructure(k.name() + "_m" + std::to_string(m), k.props(), std::move(states), std::move(init),
                           std::move(succ), std::move(labels));
}

KripkeStructure remove_prop(const KripkeStructure& k, const std::string& x) {
    auto xi = k.prop_index(x);
    if (!xi) throw PreconditionError("proposition '" + x + "' not in structure '" + k.name() + "'");
    std::vector<std::string> props;
    for (std::size_t p = 0; p < k.num_props(); ++p)
        if (p != *xi) props.push_back(k.props()[p]);
    std::vector<Truth> labels;
    for (std::size_t s = 0; s < k.num_states(); ++s)
        for (std::size_t p = 0; p < k.num_props(); ++p)
            if (p != *xi) labels.push_back(k.label(static_cast<StateId>(s), p));
    return KripkeStructure(k.name(), std::move(props), k.states(), k.init(), k.successor_lists(), std::move(labels));
}

KripkeStructure x_variant(const KripkeStructure& k, const std::string& x, const StateSet& ys) {
    if (k.has_prop(x)) throw PreconditionError("proposition '" + x + "' already in structure '" + k.name() + "'");
    std::vector<std::string> props = k.props();
    props.push_back(x);
    std::vector<Truth> labels;
    labels.reserve(k.num_states() * props.size());
    for (std::size_t s = 0; s < k.num_states(); ++s) {
        for (std::size_t p = 0; p < k.num_props(); ++p) labels.push_back(k.label(static_cast<StateId>(s), p));
        labels.push_back(truth_of(ys.test(s)));
    }
    std::string ybits;
    for (std::size_t s = 0; s < k.num_states(); ++s) ybits += ys.test(s) ? '1' : '0';
    return KripkeStructure(k.name() + "_" + x + ybits, std::move(props), k.states(), k.init(), k.successor_lists(),
                           std::move(labels));
}

std::vector<KripkeStructure> x_variants(const KripkeStructure& k, const std::string& x, std::size_t bound) {
    const std::size_t n = k.num_states();
    if (n > bound)
        throw BoundError("x-variant enumeration over " + std::to_string(n) + " states exceeds bound " +
                         std::to_string(bound));
    std::vector<KripkeStructure> out;
    out.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask)
        out.push_back(x_variant(k, x, StateSet(n, mask)));
    return out;
}

StateSet reachable(const KripkeStructure& k) {
    StateSet seen(k.num_states());
    std::vector<StateId> stack(k.init().begin(), k.init().end());
    for (StateId s : stack) seen.set(s);
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (StateId t : k.succ(s))
            if (!seen.test(t)) {
                seen.set(t);
                stack.push_back(t);
            }
    }
    return seen;
}

KripkeStructure with_init(const KripkeStructure& k, const StateSet& init) {
    std::vector<StateId> ids;
    for (auto s = init.find_first(); s != StateSet::npos; s = init.find_next(s)) ids.push_back(static_cast<StateId>(s));
    if (ids.empty()) throw PreconditionError("empty initial state set");
    return KripkeStructure(k.name(), k.props(), k.states(), std::move(ids), k.successor_lists(), k.labels());
}

bool is_deterministic(const KripkeStructure& k) {
    if (k.init().size() != 1) return false;
    StateSet r = reachable(k);
    for (std::size_t s = r.find_first(); s != StateSet::npos; s = r.find_next(s))
        if (k.succ(static_cast<StateId>(s)).size() != 1) return false;
    return true;
}

bool validate_unrolling_map(const UnrollingMap& u, const std::string& x) {
    const KripkeStructure& src = u.source;
    const KripkeStructure& dst = u.target;
    {
        std::set<std::string> want(dst.props().begin(), dst.props().end());
        want.insert(x);
        std::set<std::string> have(src.props().begin(), src.props().end());
        if (want != have || dst.has_prop(x))
            throw PreconditionError("unrolling map: source propositions must be target propositions plus '" + x + "'");
    }
    if (u.h.size() != src.num_states()) return false;
    for (StateId t : u.h)
        if (t >= dst.num_states()) return false;
    for (StateId s : src.init())
        if (!dst.is_initial(u.h[s])) return false;
    std::vector<std::size_t> pmap;
    for (const auto& p : dst.props()) pmap.push_back(*src.prop_index(p));
    StateSet r = reachable(src);
    for (std::size_t s = r.find_first(); s != StateSet::npos; s = r.find_next(s)) {
        StateId hs = u.h[s];
        for (std::size_t p = 0; p < dst.num_props(); ++p)
            if (src.label(static_cast<StateId>(s), pmap[p]) != dst.label(hs, p)) return false;
        std::vector<StateId> image;
        for (StateId t : src.succ(static_cast<StateId>(s))) image.push_back(u.h[t]);
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
        if (image != dst.succ(hs)) return false;
    }
    return true;
}

std::vector<std::string> state_names(const KripkeStructure& k, const StateSet& ys) {
    std::vector<std::string> out;
    for (std::size_t s = ys.find_first(); s != StateSet::npos; s = ys.find_next(s)) out.push_back(k.states()[s]);
    return out;
}

std::string state_set_to_string(const KripkeStructure& k, const StateSet& ys) {
    std::string out = "{";
    bool first = true;
    for (const auto& n : state_names(k, ys)) {
        if (!first) out += ',';
        out += n;
        first = false;
    }
    return out + "}";
}

} // namespace vacmc
