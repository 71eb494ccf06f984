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

#include "vacmc/mc.hpp"

#include "vacmc/bisim.hpp"
#include "vacmc/error.hpp"
#include "path_checker.hpp"

namespace vacmc {

namespace {

StateSet pre_exists(const KripkeStructure& k, const StateSet& z) {
    StateSet out(k.num_states());
    for (std::size_t t = z.find_first(); t != StateSet::npos; t = z.find_next(t))
        for (StateId s : k.pred(static_cast<StateId>(t))) out.set(s);
    return out;
}

StateSet pre_forall(const KripkeStructure& k, const StateSet& z) { return ~pre_exists(k, ~z); }

StateSet eu(const KripkeStructure& k, const StateSet& f, const StateSet& g) {
    StateSet z = g;
    for (;;) {
        StateSet next = g | (f & pre_exists(k, z));
        if (next == z) return z;
        z = std::move(next);
    }
}

StateSet eg(const KripkeStructure& k, const StateSet& f) {
    StateSet z = f;
    for (;;) {
        StateSet next = f & pre_exists(k, z);
        if (next == z) return z;
        z = std::move(next);
    }
}

// E[f R g]: g holds up to and including the first f, or forever.
StateSet er(const KripkeStructure& k, const StateSet& f, const StateSet& g) {
    StateSet z = g;
    for (;;) {
        StateSet next = g & (f | pre_exists(k, z));
        if (next == z) return z;
        z = std::move(next);
    }
}

} // namespace

StateSet set_atom_states(const KripkeStructure& k, const Formula& atom) {
    const auto& src = atom.source();
    bool foreign = src ? !identical(*src, k) : atom.name() != k.name();
    if (!foreign) {
        StateSet out(k.num_states());
        for (const auto& name : atom.states()) {
            auto s = k.state_index(name);
            if (!s) throw ModelError("set atom names unknown state '" + name + "' of '" + k.name() + "'");
            out.set(*s);
        }
        return out;
    }
    if (!src)
        throw ModelError("set atom over '" + atom.name() + "' evaluated on '" + k.name() +
                         "' without its source structure");
    for (const auto& p : src->props())
        if (!k.has_prop(p))
            throw ModelError("set atom over '" + atom.name() + "' needs proposition '" + p + "' in '" + k.name() + "'");
    auto rel = bisimilar_over(*src, k, src->props());
    if (!rel)
        throw ModelError("set atom over '" + atom.name() + "' evaluated on non-bisimilar structure '" + k.name() + "'");
    StateSet ys(src->num_states());
    for (const auto& name : atom.states()) {
        auto s = src->state_index(name);
        if (!s) throw ModelError("set atom names unknown state '" + name + "' of '" + src->name() + "'");
        ys.set(*s);
    }
    StateSet out(k.num_states());
    for (const auto& [a, b] : rel->pairs)
        if (ys.test(a)) out.set(b);
    return out;
}

namespace {

bool ctl_shaped(const Formula& path) {
    switch (path.op()) {
    case Op::X:
    case Op::F:
    case Op::G: return is_state_formula(path.child());
    case Op::U:
    case Op::R: return is_state_formula(path.left()) && is_state_formula(path.right());
    default: return false;
    }
}

StateSet eval_ctl_pair(const KripkeStructure& k, bool universal, const Formula& path, const CheckOptions& opts) {
    auto ev = [&](const Formula& f) { return eval_states(k, f, opts); };
    StateSet all = k.full_set();
    switch (path.op()) {
    case Op::X: {
        StateSet f = ev(path.child());
        return universal ? pre_forall(k, f) : pre_exists(k, f);
    }
    case Op::F: {
        StateSet f = ev(path.child());
        return universal ? ~eg(k, ~f) : eu(k, all, f);
    }
    case Op::G: {
        StateSet f = ev(path.child());
        return universal ? ~eu(k, all, ~f) : eg(k, f);
    }
    case Op::U: {
        StateSet f = ev(path.left()), g = ev(path.right());
        return universal ? ~er(k, ~f, ~g) : eu(k, f, g);
    }
    case Op::R: {
        StateSet f = ev(path.left()), g = ev(path.right());
        return universal ? ~eu(k, ~f, ~g) : er(k, f, g);
    }
    default: throw Error("internal: not a CTL pair");
    }
}

} // namespace

StateSet eval_states(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts) {
    switch (phi.op()) {
    case Op::True: return k.full_set();
    case Op::False: return k.empty_set();
    case Op::Prop: {
        auto p = k.prop_index(phi.name());
        if (!p) throw ModelError("proposition '" + phi.name() + "' not in structure '" + k.name() + "'");
        for (std::size_t s = 0; s < k.num_states(); ++s)
            if (k.label(static_cast<StateId>(s), *p) == Truth::Maybe)
                throw PreconditionError("two-valued checking needs a classical labeling of '" + phi.name() + "'");
        return k.prop_set(*p);
    }
    case Op::SetAtom: return set_atom_states(k, phi);
    case Op::Not: return ~eval_states(k, phi.child(), opts);
    case Op::And: return eval_states(k, phi.left(), opts) & eval_states(k, phi.right(), opts);
    case Op::Or: return eval_states(k, phi.left(), opts) | eval_states(k, phi.right(), opts);
    case Op::Implies: return ~eval_states(k, phi.left(), opts) | eval_states(k, phi.right(), opts);
    case Op::A:
    case Op::E: {
        const Formula& path = phi.child();
        bool universal = phi.op() == Op::A;
        if (opts.ctl_fixpoints && ctl_shaped(path)) return eval_ctl_pair(k, universal, path, opts);
        if (universal) return ~exists_path(k, Formula::Not(path), opts);
        return exists_path(k, path, opts);
    }
    case Op::Forall:
    case Op::Exists: throw PreconditionError("propositional quantifier needs a qctl semantics");
    default: throw PreconditionError("path formula '" + phi.str() + "' outside a path quantifier");
    }
}

bool check_ctl_star(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts) {
    StateSet sat = eval_states(k, phi, opts);
    return k.init_set().is_subset_of(sat);
}

StateSet exists_path(const KripkeStructure& k, const Formula& path, const CheckOptions& opts) {
    detail::PathProduct product(k, path, [&](const Formula& f) { return eval_states(k, f, opts); });
    return product.satisfying_states();
}

std::optional<Lasso> witness_lasso(const KripkeStructure& k, const Formula& path, StateId s,
                                   const CheckOptions& opts) {
    detail::PathProduct product(k, path, [&](const Formula& f) { return eval_states(k, f, opts); });
    return product.lasso_from(s);
}

} // namespace vacmc
