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

#include "vacmc/vacuity.hpp"

#include <memory>

#include "vacmc/bisim.hpp"
#include "vacmc/error.hpp"
#include "vacmc/mc.hpp"
#include "vacmc/three_valued.hpp"

namespace vacmc {

namespace {

// 2^(2|S|) labelings of the doubled structure get expensive quickly.
constexpr std::size_t kDoubledLabelingBits = 14;
constexpr std::size_t kBoundedProbeLimit = 2'000'000;

bool contains_op(const Formula& f, Op op) {
    if (f.op() == op) return true;
    for (std::size_t i = 0; i < f.arity(); ++i)
        if (contains_op(f.child(i), op)) return true;
    return false;
}

void check_inputs(const Formula& phi, const Formula& psi) {
    if (has_prop_quantifier(phi) || has_prop_quantifier(psi))
        throw NotApplicableError("vacuity needs quantifier-free formulas");
    if (!is_state_formula(phi)) throw PreconditionError("phi must be a state formula");
    if (!is_state_formula(psi)) throw NotApplicableError("psi must be a state formula");
}

VacuityEvidence base_evidence(const std::string& x, const Formula& sub) {
    VacuityEvidence ev;
    ev.var = x;
    ev.substituted = sub;
    return ev;
}

VariantWitness variant(KripkeStructure model, const Formula& sub) {
    bool holds = check_ctl_star(model, sub);
    return {std::move(model), holds};
}

} // namespace

std::string status_name(VacuityStatus s) {
    switch (s) {
    case VacuityStatus::Vacuous: return "Vacuous";
    case VacuityStatus::NonVacuous: return "NonVacuous";
    default: return "Unknown";
    }
}

std::string route_name(VacuityRoute r) {
    switch (r) {
    case VacuityRoute::Absent: return "Absent";
    case VacuityRoute::Monotone: return "Monotone";
    case VacuityRoute::SatX: return "SatX";
    case VacuityRoute::FalX: return "FalX";
    case VacuityRoute::StructureRefutation: return "StructureRefutation";
    case VacuityRoute::VariantRefutation: return "VariantRefutation";
    case VacuityRoute::BoundedValidity: return "BoundedValidity";
    case VacuityRoute::Structure: return "Structure";
    case VacuityRoute::Compositional3: return "Compositional3";
    case VacuityRoute::Thorough: return "Thorough";
    default: return "Undecided";
    }
}

std::string fresh_var(const Formula& phi, const Formula& psi, const KripkeStructure& k) {
    auto taken = props_of(phi);
    for (const auto& p : props_of(psi)) taken.insert(p);
    for (const auto& p : k.props()) taken.insert(p);
    return fresh_name("x", taken);
}

bool constant_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k) {
    check_inputs(phi, psi);
    const bool base = check_ctl_star(k, phi);
    for (bool c : {true, false})
        if (check_ctl_star(k, substitute(phi, psi, Formula::constant(c)).result) != base) return false;
    return true;
}

StructureVacuity structure_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k,
                                   std::size_t bound) {
    check_inputs(phi, psi);
    const std::size_t n = k.num_states();
    if (n > bound)
        throw BoundError("structure vacuity over " + std::to_string(n) + " states exceeds bound " +
                         std::to_string(bound));
    const std::string x = fresh_var(phi, psi, k);
    const Formula sub = substitute(phi, psi, Formula::prop(x)).result;
    std::optional<StateSet> sat, fal;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        StateSet ys(n, mask);
        bool v = check_ctl_star(x_variant(k, x, ys), sub);
        auto& slot = v ? sat : fal;
        if (!slot) slot = ys;
        if (sat && fal) return {false, std::make_pair(*sat, *fal)};
    }
    return {true, std::nullopt};
}

bool syntactic_monotone(const Formula& phi, const Formula& psi) {
    if (count_occurrences(phi, psi) <= 1) return true;
    auto pol = occurrence_polarity(phi, psi);
    return pol == Polarity::Positive || pol == Polarity::Negative;
}

MonotoneResult is_mon_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k) {
    check_inputs(phi, psi);
    bool t = check_ctl_star(k, substitute(phi, psi, Formula::truth()).result);
    bool f = check_ctl_star(k, substitute(phi, psi, Formula::falsity()).result);
    return {t == f, syntactic_monotone(phi, psi)};
}

bool is_sat_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k) {
    check_inputs(phi, psi);
    if (!is_actl_star(phi) && !universal_in(phi, psi))
        throw NotApplicableError("psi is not universal in phi");
    if (!check_ctl_star(k, phi)) throw PreconditionError("K does not satisfy phi");
    const std::string x = fresh_var(phi, psi, k);
    return check_ctl_star(compose_sync(k, chi(x)), substitute(phi, psi, Formula::prop(x)).result);
}

bool is_fal_vacuous(const Formula& phi, const Formula& psi, const KripkeStructure& k) {
    check_inputs(phi, psi);
    if (!is_ectl_star(phi) && !existential_in(phi, psi))
        throw NotApplicableError("psi is not existential in phi");
    if (check_ctl_star(k, phi)) throw PreconditionError("K satisfies phi");
    const std::string x = fresh_var(phi, psi, k);
    // No initial state of K||chi may satisfy the substituted formula.
    return check_ctl_star(compose_sync(k, chi(x)), Formula::Not(substitute(phi, psi, Formula::prop(x)).result));
}

std::optional<bool> bounded_constant_value(const Formula& f, std::size_t max_states) {
    if (contains_op(f, Op::SetAtom)) throw NotApplicableError("bounded probe cannot enumerate set atoms");
    const auto prop_set = props_of(f);
    const std::vector<std::string> props(prop_set.begin(), prop_set.end());
    const std::size_t np = props.size();
    double total = 0;
    for (std::size_t n = 1; n <= max_states; ++n) {
        double per = 1;
        for (std::size_t i = 0; i < n; ++i) per *= double((std::size_t{1} << n) - 1);
        total += per * double(std::size_t{1} << (n * np));
    }
    if (max_states > 6 || total > double(kBoundedProbeLimit))
        throw BoundError("bounded probe would enumerate too many structures");
    bool seen_true = false, seen_false = false;
    for (std::size_t n = 1; n <= max_states; ++n) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
        const std::size_t succ_choices = (std::size_t{1} << n) - 1;
        std::vector<std::size_t> choice(n, 1);
        for (;;) {
            std::vector<std::vector<StateId>> succ(n);
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; t < n; ++t)
                    if (choice[s] >> t & 1) succ[s].push_back(static_cast<StateId>(t));
            for (std::size_t lab = 0; lab < (std::size_t{1} << (n * np)); ++lab) {
                std::vector<Truth> labels(n * np);
                for (std::size_t i = 0; i < n * np; ++i) labels[i] = truth_of(lab >> i & 1);
                KripkeStructure k("probe", props, names, {0}, succ, std::move(labels));
                StateSet sat = eval_states(k, f);
                if (sat.any()) seen_true = true;
                if (!sat.all()) seen_false = true;
                if (seen_true && seen_false) return std::nullopt;
            }
            std::size_t i = 0;
            while (i < n && choice[i] == succ_choices) choice[i++] = 1;
            if (i == n) break;
            ++choice[i];
        }
    }
    return seen_true;
}

VacuityVerdict decide_bisim_vacuity(const Formula& phi, const Formula& psi, const KripkeStructure& k,
                                    const VacuityOptions& opts) {
    check_inputs(phi, psi);
    VacuityVerdict out;
    if (count_occurrences(phi, psi) == 0) {
        out.status = VacuityStatus::Vacuous;
        out.route = VacuityRoute::Absent;
        return out;
    }
    const std::string x = fresh_var(phi, psi, k);
    const Formula sub = substitute(phi, psi, Formula::prop(x)).result;
    const bool holds = check_ctl_star(k, phi);
    auto psi_variant = [&] { return VariantWitness{x_variant(k, x, eval_states(k, psi)), holds}; };
    auto non_vacuous = [&](VacuityRoute route, VacuityEvidence ev) {
        out.status = VacuityStatus::NonVacuous;
        out.route = route;
        out.evidence = std::move(ev);
        return out;
    };

    if (syntactic_monotone(phi, psi)) {
        auto ev = base_evidence(x, sub);
        ev.with_true = check_ctl_star(k, substitute(phi, psi, Formula::truth()).result);
        ev.with_false = check_ctl_star(k, substitute(phi, psi, Formula::falsity()).result);
        if (*ev.with_true == *ev.with_false) {
            out.status = VacuityStatus::Vacuous;
            out.route = VacuityRoute::Monotone;
            out.evidence = std::move(ev);
            return out;
        }
        const std::size_t n = k.num_states();
        ev.variants.push_back(variant(x_variant(k, x, ~StateSet(n)), sub));
        ev.variants.push_back(variant(x_variant(k, x, StateSet(n)), sub));
        return non_vacuous(VacuityRoute::Monotone, std::move(ev));
    }

    if (holds && (is_actl_star(phi) || universal_in(phi, psi))) {
        auto kx = compose_sync(k, chi(x));
        auto ev = base_evidence(x, sub);
        if (check_ctl_star(kx, sub)) {
            out.status = VacuityStatus::Vacuous;
            out.route = VacuityRoute::SatX;
            out.evidence = std::move(ev);
            return out;
        }
        ev.variants.push_back(psi_variant());
        ev.variants.push_back({std::move(kx), false});
        return non_vacuous(VacuityRoute::SatX, std::move(ev));
    }

    if (!holds && (is_ectl_star(phi) || existential_in(phi, psi))) {
        auto kx = compose_sync(k, chi(x));
        auto ev = base_evidence(x, sub);
        const StateSet sat_init = eval_states(kx, sub) & kx.init_set();
        if (sat_init.none()) {
            out.status = VacuityStatus::Vacuous;
            out.route = VacuityRoute::FalX;
            out.evidence = std::move(ev);
            return out;
        }
        // With several initial states the satisfying ones may not cover K; then
        // the refutation search below decides.
        auto witness = with_init(kx, sat_init);
        if (bisimilar_over(witness, k, k.props())) {
            ev.variants.push_back({std::move(witness), true});
            ev.variants.push_back(psi_variant());
            return non_vacuous(VacuityRoute::FalX, std::move(ev));
        }
    }

    // Refutation search: any x-labeling of a structure bisimilar to K whose verdict
    // differs from K's.
    const std::size_t n = k.num_states();
    if (n <= opts.enumeration_bound) {
        auto sv = structure_vacuous(phi, psi, k, opts.enumeration_bound);
        if (sv.witness) {
            auto ev = base_evidence(x, sub);
            ev.variants.push_back({x_variant(k, x, sv.witness->first), true});
            ev.variants.push_back({x_variant(k, x, sv.witness->second), false});
            return non_vacuous(VacuityRoute::StructureRefutation, std::move(ev));
        }
    } else {
        auto q = quotient_bisim(k);
        if (q.num_states() <= opts.enumeration_bound)
            for (auto& v : x_variants(q, x, opts.enumeration_bound))
                if (check_ctl_star(v, sub) != holds) {
                    auto ev = base_evidence(x, sub);
                    ev.variants.push_back({std::move(v), !holds});
                    ev.variants.push_back(psi_variant());
                    return non_vacuous(VacuityRoute::VariantRefutation, std::move(ev));
                }
    }
    if (2 * n <= std::min(opts.enumeration_bound, kDoubledLabelingBits)) {
        auto doubled = duplicate_m(k, 2);
        for (std::size_t mask = 0; mask < (std::size_t{1} << (2 * n)); ++mask) {
            auto v = x_variant(doubled, x, StateSet(2 * n, mask));
            if (check_ctl_star(v, sub) != holds) {
                auto ev = base_evidence(x, sub);
                ev.variants.push_back({std::move(v), !holds});
                ev.variants.push_back(psi_variant());
                return non_vacuous(VacuityRoute::VariantRefutation, std::move(ev));
            }
        }
    }

    if (opts.bounded_validity && !contains_op(sub, Op::SetAtom)) {
        if (auto c = bounded_constant_value(sub, *opts.bounded_validity)) {
            auto ev = base_evidence(x, sub);
            ev.bounded_states = *opts.bounded_validity;
            out.status = VacuityStatus::Vacuous;
            out.route = VacuityRoute::BoundedValidity;
            out.evidence = std::move(ev);
            return out;
        }
    }

    VacuityBounds b;
    if (is_ctl(sub)) b.compositional = eval_compositional3(lift_kx(k, x), sub);
    if (n <= opts.enumeration_bound) b.labeling = labeling_value(k, x, sub, opts.enumeration_bound);
    out.status = VacuityStatus::Unknown;
    out.route = VacuityRoute::Undecided;
    out.evidence = base_evidence(x, sub);
    out.bounds = b;
    return out;
}

bool replay_witness(const Formula& phi, const Formula& psi, const KripkeStructure& k, const VacuityEvidence& ev) {
    if (ev.variants.size() != 2 || ev.variants[0].holds == ev.variants[1].holds) return false;
    if (ev.substituted != substitute(phi, psi, Formula::prop(ev.var)).result) return false;
    if (k.has_prop(ev.var)) return false;
    for (const auto& w : ev.variants) {
        if (!w.model.has_prop(ev.var)) return false;
        if (!bisimilar_over(k, w.model, k.props())) return false;
        if (check_ctl_star(w.model, ev.substituted) != w.holds) return false;
    }
    return true;
}

bool select_existential(const Formula& f) { return f.op() == Op::E; }

Formula prop_simplify(const Formula& phi, const KripkeStructure& k, const SubformulaSelector& selector) {
    auto source = std::make_shared<const KripkeStructure>(k);
    auto rec = [&](auto& self, const Formula& f) -> Formula {
        if (selector(f)) {
            if (!is_state_formula(f)) throw PreconditionError("selected subformula is not a state formula");
            return Formula::set_atom(k.name(), state_names(k, eval_states(k, f)), source);
        }
        switch (f.op()) {
        case Op::Not: return Formula::Not(self(self, f.child()));
        case Op::And: return Formula::And(self(self, f.left()), self(self, f.right()));
        case Op::Or: return Formula::Or(self(self, f.left()), self(self, f.right()));
        case Op::Implies: return Formula::Implies(self(self, f.left()), self(self, f.right()));
        case Op::A: return Formula::A(self(self, f.child()));
        case Op::E: return Formula::E(self(self, f.child()));
        case Op::X: return Formula::X(self(self, f.child()));
        case Op::F: return Formula::F(self(self, f.child()));
        case Op::G: return Formula::G(self(self, f.child()));
        case Op::U: return Formula::U(self(self, f.left()), self(self, f.right()));
        case Op::R: return Formula::R(self(self, f.left()), self(self, f.right()));
        case Op::Forall: return Formula::Forall(f.name(), self(self, f.child()));
        case Op::Exists: return Formula::Exists(f.name(), self(self, f.child()));
        default: return f;
        }
    };
    return rec(rec, phi);
}

} // namespace vacmc
