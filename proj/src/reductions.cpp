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

#include "vacmc/reductions.hpp"

#include <set>

#include "vacmc/error.hpp"
#include "vacmc/mc.hpp"

namespace vacmc {

PropOrdering::PropOrdering(std::vector<std::string> order) : order_(std::move(order)) {
    std::set<std::string> seen(order_.begin(), order_.end());
    if (seen.size() != order_.size()) throw PreconditionError("proposition ordering repeats a proposition");
}

std::size_t PropOrdering::index(const std::string& p) const {
    for (std::size_t i = 0; i < order_.size(); ++i)
        if (order_[i] == p) return i + 1;
    throw PreconditionError("proposition '" + p + "' is not in the ordering");
}

KripkeStructure ez_encode(const KripkeStructure& k, const PropOrdering& o, const std::string& z) {
    if (!k.is_classical()) throw PreconditionError("ez encoding needs a classical structure");
    if (k.has_prop(z)) throw PreconditionError("marker proposition '" + z + "' collides with '" + k.name() + "'");
    if (o.size() != k.num_props()) throw PreconditionError("ordering does not cover the propositions of '" + k.name() + "'");
    const std::size_t n = o.size(), layers = n + 2, ns = k.num_states();
    std::vector<std::size_t> pidx;
    for (const auto& p : o.props()) {
        auto i = k.prop_index(p);
        if (!i) throw PreconditionError("proposition '" + p + "' is not in '" + k.name() + "'");
        pidx.push_back(*i);
    }
    auto id = [&](std::size_t s, std::size_t i) { return static_cast<StateId>(s * layers + i); };
    std::vector<std::string> states;
    std::vector<std::vector<StateId>> succ(ns * layers);
    std::vector<Truth> labels;
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t i = 0; i < layers; ++i) {
            states.push_back("(" + k.states()[s] + "," + std::to_string(i) + ")");
            bool zv = i == 1 || (i >= 2 && k.label(static_cast<StateId>(s), pidx[i - 2]) == Truth::True);
            labels.push_back(truth_of(zv));
            auto& out = succ[id(s, i)];
            if (i == 0)
                for (StateId t : k.succ(static_cast<StateId>(s))) out.push_back(id(t, 0));
            out.push_back(i + 1 < layers ? id(s, i + 1) : id(s, i));
        }
    std::vector<StateId> init;
    for (StateId s : k.init()) init.push_back(id(s, 0));
    return KripkeStructure("ez" + k.name(), {z}, std::move(states), std::move(init), std::move(succ),
                           std::move(labels));
}

namespace {

bool is_true(const Formula& f) { return f.op() == Op::True; }
bool is_false(const Formula& f) { return f.op() == Op::False; }

// Constructors that fold constants introduced by the guards.
Formula neg(const Formula& a) {
    if (is_true(a)) return Formula::falsity();
    if (is_false(a)) return Formula::truth();
    if (a.op() == Op::Not) return a.child();
    return Formula::Not(a);
}

Formula conj(const Formula& a, const Formula& b) {
    if (is_false(a) || is_false(b)) return Formula::falsity();
    if (is_true(a)) return b;
    if (is_true(b)) return a;
    return Formula::And(a, b);
}

Formula disj(const Formula& a, const Formula& b) {
    if (is_true(a) || is_true(b)) return Formula::truth();
    if (is_false(a)) return b;
    if (is_false(b)) return a;
    return Formula::Or(a, b);
}

Formula impl(const Formula& a, const Formula& b) {
    if (is_true(a)) return b;
    if (is_false(a) || is_true(b)) return Formula::truth();
    if (is_false(b)) return neg(a);
    return Formula::Implies(a, b);
}

Formula until(const Formula& l, const Formula& r) { return is_true(l) ? Formula::F(r) : Formula::U(l, r); }
Formula release(const Formula& l, const Formula& r) { return is_false(l) ? Formula::G(r) : Formula::R(l, r); }

struct Translator {
    const PropOrdering& o;
    Formula z;
    Formula nz;
    bool ctl; // f (CTL) or g (CTL*)

    // (EX z) & AX(z -> N^k lit) with N = AX for f and X for g.
    Formula prop(const std::string& p, bool positive) const {
        std::size_t k = o.index(p);
        Formula inner = positive ? z : nz;
        for (std::size_t i = 0; i < k; ++i) inner = ctl ? Formula::A(Formula::X(inner)) : Formula::X(inner);
        return conj(Formula::E(Formula::X(z)), Formula::A(Formula::X(Formula::Implies(z, inner))));
    }

    Formula eg_nz() const { return Formula::E(Formula::G(nz)); }

    Formula state(const Formula& f) const {
        switch (f.op()) {
        case Op::True:
        case Op::False: return f;
        case Op::Prop: return prop(f.name(), true);
        case Op::Not:
            if (f.child().op() == Op::Prop) return prop(f.child().name(), false);
            return neg(state(f.child()));
        case Op::And: return conj(state(f.left()), state(f.right()));
        case Op::Or: return disj(state(f.left()), state(f.right()));
        case Op::Implies: return impl(state(f.left()), state(f.right()));
        case Op::A:
        case Op::E: return ctl ? ctl_pair(f) : star_quant(f);
        case Op::SetAtom: throw NotApplicableError("set atoms have no single-proposition encoding");
        default:
            if (ctl) throw NotApplicableError("f translation needs a CTL formula");
            return path(f);
        }
    }

    Formula ctl_pair(const Formula& f) const {
        const bool universal = f.op() == Op::A;
        const Formula& p = f.child();
        Formula l, r;
        Op kind = p.op();
        switch (kind) {
        case Op::X: r = state(p.child()); break;
        case Op::F: l = Formula::truth(), r = state(p.child()), kind = Op::U; break;
        case Op::G: l = Formula::falsity(), r = state(p.child()), kind = Op::R; break;
        case Op::U:
        case Op::R: l = state(p.left()), r = state(p.right()); break;
        default: throw NotApplicableError("f translation needs a CTL formula");
        }
        if (kind == Op::X) {
            if (!universal) return Formula::E(Formula::X(conj(nz, r)));
            return conj(Formula::E(Formula::X(nz)), Formula::A(Formula::X(impl(nz, r))));
        }
        auto build = kind == Op::U ? until : release;
        if (!universal) return Formula::E(build(conj(nz, l), conj(nz, r)));
        return conj(eg_nz(), Formula::A(build(impl(nz, l), impl(nz, r))));
    }

    Formula star_quant(const Formula& f) const {
        Formula body = path(f.child());
        if (f.op() == Op::E) return Formula::E(conj(Formula::G(nz), body));
        return conj(eg_nz(), Formula::A(impl(Formula::G(nz), body)));
    }

    Formula path(const Formula& f) const {
        switch (f.op()) {
        case Op::X: return Formula::X(path(f.child()));
        case Op::F: return Formula::F(path(f.child()));
        case Op::G: return Formula::G(path(f.child()));
        case Op::U: return Formula::U(path(f.left()), path(f.right()));
        case Op::R: return Formula::R(path(f.left()), path(f.right()));
        case Op::Not:
            if (f.child().op() == Op::Prop) return prop(f.child().name(), false);
            return neg(path(f.child()));
        case Op::And: return conj(path(f.left()), path(f.right()));
        case Op::Or: return disj(path(f.left()), path(f.right()));
        case Op::Implies: return impl(path(f.left()), path(f.right()));
        case Op::Forall:
        case Op::Exists: throw NotApplicableError("proposition quantifiers have no single-proposition encoding");
        default: return state(f);
        }
    }
};

void check_marker(const Formula& psi, const PropOrdering& o, const std::string& z) {
    if (props_of(psi).count(z)) throw PreconditionError("marker proposition '" + z + "' occurs in the formula");
    for (const auto& p : o.props())
        if (p == z) throw PreconditionError("marker proposition '" + z + "' collides with the ordering");
}

} // namespace

Formula f_translate_ctl(const Formula& psi, const PropOrdering& o, const std::string& z) {
    if (!is_ctl(psi)) throw NotApplicableError("f translation needs a CTL formula");
    check_marker(psi, o, z);
    Translator t{o, Formula::prop(z), Formula::Not(Formula::prop(z)), true};
    return t.state(psi);
}

Formula g_translate_ctl_star(const Formula& psi, const PropOrdering& o, const std::string& z) {
    if (has_prop_quantifier(psi)) throw NotApplicableError("g translation needs a quantifier-free formula");
    if (!is_state_formula(psi)) throw PreconditionError("g translation needs a state formula");
    check_marker(psi, o, z);
    Translator t{o, Formula::prop(z), Formula::Not(Formula::prop(z)), false};
    return t.state(psi);
}

KripkeStructure decode_single_prop(const KripkeStructure& m, const PropOrdering& o, const std::string& z) {
    if (m.num_props() != 1 || m.props()[0] != z)
        throw PreconditionError("decoding needs a structure over the single proposition '" + z + "'");
    if (!m.is_classical()) throw PreconditionError("decoding needs a classical structure");
    const std::size_t n = m.num_states();
    const StateSet zs = m.prop_set(0);

    // Initial states plus the not-z states reachable through not-z states.
    StateSet base(n);
    std::vector<StateId> stack;
    for (StateId s : m.init()) {
        base.set(s);
        stack.push_back(s);
    }
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (StateId t : m.succ(s))
            if (!zs.test(t) && !base.test(t)) {
                base.set(t);
                stack.push_back(t);
            }
    }
    if (base.none()) throw ModelError("decoding produced an empty base");

    const Formula zf = Formula::prop(z);
    std::vector<StateSet> pos, negs;
    for (std::size_t i = 0; i < o.size(); ++i) {
        Formula a = zf, b = Formula::Not(zf);
        for (std::size_t j = 0; j <= i; ++j) a = Formula::A(Formula::X(a)), b = Formula::A(Formula::X(b));
        pos.push_back(eval_states(m, Formula::A(Formula::X(Formula::Implies(zf, a)))));
        negs.push_back(eval_states(m, Formula::A(Formula::X(Formula::Implies(zf, b)))));
    }

    std::vector<StateId> renum(n, 0);
    std::vector<StateId> members;
    for (std::size_t s = base.find_first(); s != StateSet::npos; s = base.find_next(s)) {
        renum[s] = static_cast<StateId>(members.size());
        members.push_back(static_cast<StateId>(s));
    }
    std::vector<std::string> states;
    std::vector<std::vector<StateId>> succ(members.size());
    std::vector<Truth> labels;
    for (std::size_t b = 0; b < members.size(); ++b) {
        StateId s = members[b];
        states.push_back(m.states()[s]);
        for (StateId t : m.succ(s))
            if (base.test(t)) succ[b].push_back(renum[t]);
        if (succ[b].empty()) throw ModelError("decoded state '" + m.states()[s] + "' has no successor");
        for (std::size_t i = 0; i < o.size(); ++i) {
            bool p = pos[i].test(s), q = negs[i].test(s);
            if (p == q)
                throw ModelError("inconsistent encoding at state '" + m.states()[s] + "' for proposition '" +
                                 o.props()[i] + "'");
            labels.push_back(truth_of(p));
        }
    }
    std::vector<StateId> init;
    for (StateId s : m.init()) init.push_back(renum[s]);
    return KripkeStructure(m.name() + "_dec", o.props(), std::move(states), std::move(init), std::move(succ),
                           std::move(labels));
}

} // namespace vacmc
