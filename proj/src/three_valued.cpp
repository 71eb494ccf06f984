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

#include "vacmc/three_valued.hpp"

#include <algorithm>

#include "vacmc/error.hpp"
#include "vacmc/mc.hpp"

namespace vacmc {

namespace {

using Values = std::vector<Truth>;

Values pre3(const KripkeStructure& k, const Values& z, bool universal) {
    Values out(k.num_states());
    for (std::size_t s = 0; s < k.num_states(); ++s) {
        Truth acc = universal ? Truth::True : Truth::False;
        for (StateId t : k.succ(static_cast<StateId>(s)))
            acc = universal ? kleene_and(acc, z[t]) : kleene_or(acc, z[t]);
        out[s] = acc;
    }
    return out;
}

// Iterates z := step(z) from `start` until stable. Steps are monotone in the truth order.
template <class Step>
Values fixpoint(Values z, Step step) {
    for (;;) {
        Values next = step(z);
        if (next == z) return z;
        z = std::move(next);
    }
}

Values until3(const KripkeStructure& k, const Values& f, const Values& g, bool universal) {
    return fixpoint(Values(k.num_states(), Truth::False), [&](const Values& z) {
        Values p = pre3(k, z, universal), out(z.size());
        for (std::size_t s = 0; s < z.size(); ++s) out[s] = kleene_or(g[s], kleene_and(f[s], p[s]));
        return out;
    });
}

Values release3(const KripkeStructure& k, const Values& f, const Values& g, bool universal) {
    return fixpoint(Values(k.num_states(), Truth::True), [&](const Values& z) {
        Values p = pre3(k, z, universal), out(z.size());
        for (std::size_t s = 0; s < z.size(); ++s) out[s] = kleene_and(g[s], kleene_or(f[s], p[s]));
        return out;
    });
}

Values pointwise(const Values& a, const Values& b, Truth (*op)(Truth, Truth)) {
    Values out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
    return out;
}

} // namespace

Truth kleene(KleeneOp op, Truth a, Truth b) {
    switch (op) {
    case KleeneOp::Not: return kleene_not(a);
    case KleeneOp::And: return kleene_and(a, b);
    case KleeneOp::Or: return kleene_or(a, b);
    default: return kleene_implies(a, b);
    }
}

std::vector<Truth> eval_states3(const KripkeStructure& k, const Formula& phi) {
    const std::size_t n = k.num_states();
    switch (phi.op()) {
    case Op::True: return Values(n, Truth::True);
    case Op::False: return Values(n, Truth::False);
    case Op::Prop: {
        auto p = k.prop_index(phi.name());
        if (!p) throw ModelError("proposition '" + phi.name() + "' not in structure '" + k.name() + "'");
        Values out(n);
        for (std::size_t s = 0; s < n; ++s) out[s] = k.label(static_cast<StateId>(s), *p);
        return out;
    }
    case Op::SetAtom: {
        StateSet ys = set_atom_states(k, phi);
        Values out(n);
        for (std::size_t s = 0; s < n; ++s) out[s] = truth_of(ys.test(s));
        return out;
    }
    case Op::Not: {
        Values v = eval_states3(k, phi.child());
        for (auto& t : v) t = kleene_not(t);
        return v;
    }
    case Op::And: return pointwise(eval_states3(k, phi.left()), eval_states3(k, phi.right()), kleene_and);
    case Op::Or: return pointwise(eval_states3(k, phi.left()), eval_states3(k, phi.right()), kleene_or);
    case Op::Implies: return pointwise(eval_states3(k, phi.left()), eval_states3(k, phi.right()), kleene_implies);
    case Op::A:
    case Op::E: {
        const bool universal = phi.op() == Op::A;
        const Formula& path = phi.child();
        const Values all(n, Truth::True), none(n, Truth::False);
        switch (path.op()) {
        case Op::X: return pre3(k, eval_states3(k, path.child()), universal);
        case Op::F: return until3(k, all, eval_states3(k, path.child()), universal);
        case Op::G: return release3(k, none, eval_states3(k, path.child()), universal);
        case Op::U: return until3(k, eval_states3(k, path.left()), eval_states3(k, path.right()), universal);
        case Op::R: return release3(k, eval_states3(k, path.left()), eval_states3(k, path.right()), universal);
        default: break;
        }
        [[fallthrough]];
    }
    default: throw NotApplicableError("three-valued evaluation supports CTL only: " + render_formula(phi));
    }
}

Truth eval_compositional3(const KripkeStructure& k, const Formula& phi) {
    if (!is_ctl(phi)) throw NotApplicableError("three-valued evaluation supports CTL only");
    Values v = eval_states3(k, phi);
    Truth out = Truth::True;
    for (StateId s : k.init()) out = kleene_and(out, v[s]);
    return out;
}

std::optional<Relation> is_refinement(const KripkeStructure& less, const KripkeStructure& more) {
    std::vector<std::size_t> pmap;
    if (less.num_props() != more.num_props()) throw PreconditionError("refinement needs the same propositions");
    for (const auto& p : less.props()) {
        auto i = more.prop_index(p);
        if (!i) throw PreconditionError("refinement needs the same propositions");
        pmap.push_back(*i);
    }
    const std::size_t n1 = less.num_states(), n2 = more.num_states();
    std::vector<char> rel(n1 * n2, 0);
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b) {
            bool ok = true;
            for (std::size_t p = 0; p < pmap.size() && ok; ++p)
                ok = info_leq(less.label(static_cast<StateId>(a), p), more.label(static_cast<StateId>(b), pmap[p]));
            rel[a * n2 + b] = ok;
        }
    auto forth = [&](std::size_t a, std::size_t b) {
        for (StateId ta : less.succ(static_cast<StateId>(a))) {
            bool m = false;
            for (StateId tb : more.succ(static_cast<StateId>(b))) m = m || rel[ta * n2 + tb];
            if (!m) return false;
        }
        for (StateId tb : more.succ(static_cast<StateId>(b))) {
            bool m = false;
            for (StateId ta : less.succ(static_cast<StateId>(a))) m = m || rel[ta * n2 + tb];
            if (!m) return false;
        }
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t a = 0; a < n1; ++a)
            for (std::size_t b = 0; b < n2; ++b)
                if (rel[a * n2 + b] && !forth(a, b)) {
                    rel[a * n2 + b] = 0;
                    changed = true;
                }
    }
    for (StateId a : less.init())
        if (std::none_of(more.init().begin(), more.init().end(), [&](StateId b) { return rel[a * n2 + b]; }))
            return std::nullopt;
    for (StateId b : more.init())
        if (std::none_of(less.init().begin(), less.init().end(), [&](StateId a) { return rel[a * n2 + b]; }))
            return std::nullopt;
    Relation out{less.name(), more.name(), {}};
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b)
            if (rel[a * n2 + b]) out.pairs.emplace_back(static_cast<StateId>(a), static_cast<StateId>(b));
    return out;
}

KripkeStructure lift_kx(const KripkeStructure& k, const std::string& x) {
    if (k.has_prop(x)) throw PreconditionError("proposition '" + x + "' already occurs in '" + k.name() + "'");
    auto props = k.props();
    props.push_back(x);
    std::vector<Truth> labels;
    for (std::size_t s = 0; s < k.num_states(); ++s) {
        for (std::size_t p = 0; p < k.num_props(); ++p) labels.push_back(k.label(static_cast<StateId>(s), p));
        labels.push_back(Truth::Maybe);
    }
    return KripkeStructure(k.name() + "_x", std::move(props), k.states(), k.init(), k.successor_lists(),
                           std::move(labels));
}

std::vector<KripkeStructure> labeling_completions(const KripkeStructure& k3, std::size_t bound) {
    std::vector<std::size_t> maybes;
    for (std::size_t i = 0; i < k3.labels().size(); ++i)
        if (k3.labels()[i] == Truth::Maybe) maybes.push_back(i);
    if (maybes.size() > bound)
        throw BoundError(std::to_string(maybes.size()) + " maybe labels exceed bound " + std::to_string(bound));
    std::vector<KripkeStructure> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << maybes.size()); ++mask) {
        auto labels = k3.labels();
        for (std::size_t i = 0; i < maybes.size(); ++i) labels[maybes[i]] = truth_of(mask >> i & 1);
        out.emplace_back(k3.name() + "_c" + std::to_string(mask), k3.props(), k3.states(), k3.init(),
                         k3.successor_lists(), std::move(labels));
    }
    return out;
}

std::optional<Truth> labeling_value(const KripkeStructure& k, const std::string& x, const Formula& phi,
                                    std::size_t bound) {
    const std::size_t n = k.num_states();
    if (n > bound) return std::nullopt;
    bool seen_true = false, seen_false = false;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        (check_ctl_star(x_variant(k, x, StateSet(n, mask)), phi) ? seen_true : seen_false) = true;
        if (seen_true && seen_false) return Truth::Maybe;
    }
    return truth_of(seen_true);
}

ThoroughResult thorough_kx(const KripkeStructure& k, const std::string& x, const Formula& phi,
                           const ThoroughOptions& opts) {
    if (!props_of(phi).count(x)) throw PreconditionError("'" + x + "' does not occur in the formula");
    if (has_prop_quantifier(phi)) throw NotApplicableError("formula must be quantifier-free");
    ThoroughResult out;
    QctlOptions qo{opts.enumeration_bound};
    // With several initial states "every completion falsifies phi" is not "every
    // completion satisfies !phi", so the false side asks whether any completion satisfies phi.
    out.universal = eval_bisimulation(k, Formula::Forall(x, phi), qo);
    out.existential = eval_bisimulation(k, Formula::Exists(x, phi), qo);
    if (out.universal.value == true)
        out.value = Truth::True;
    else if (out.existential.value == false)
        out.value = Truth::False;
    else if (out.universal.value == false && out.existential.value == true)
        out.value = Truth::Maybe;
    if (is_ctl(phi)) out.compositional = eval_compositional3(lift_kx(k, x), phi);
    out.labeling = labeling_value(k, x, phi, opts.enumeration_bound);
    return out;
}

VacuityVerdict vacuity_via_thorough(const Formula& phi, const Formula& psi, const KripkeStructure& k,
                                    const ThoroughOptions& opts) {
    if (!is_state_formula(psi)) throw NotApplicableError("psi must be a state formula");
    VacuityVerdict out;
    if (count_occurrences(phi, psi) == 0) {
        out.status = VacuityStatus::Vacuous;
        out.route = VacuityRoute::Absent;
        return out;
    }
    const std::string x = fresh_var(phi, psi, k);
    const Formula sub = substitute(phi, psi, Formula::prop(x)).result;
    VacuityEvidence ev;
    ev.var = x;
    ev.substituted = sub;

    if (is_ctl(sub) && eval_compositional3(lift_kx(k, x), sub) != Truth::Maybe) {
        out.status = VacuityStatus::Vacuous;
        out.route = VacuityRoute::Compositional3;
        out.evidence = std::move(ev);
        return out;
    }
    auto t = thorough_kx(k, x, sub, opts);
    if (t.value) {
        out.route = VacuityRoute::Thorough;
        if (*t.value == Truth::Maybe) {
            out.status = VacuityStatus::NonVacuous;
            ev.variants.push_back({*t.existential.model, true});
            ev.variants.push_back({*t.universal.model, false});
        } else {
            out.status = VacuityStatus::Vacuous;
        }
        out.evidence = std::move(ev);
        return out;
    }
    out.status = VacuityStatus::Unknown;
    out.route = VacuityRoute::Undecided;
    out.evidence = std::move(ev);
    out.bounds = VacuityBounds{t.compositional, t.labeling};
    return out;
}

} // namespace vacmc
