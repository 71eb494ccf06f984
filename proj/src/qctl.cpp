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

#include "vacmc/qctl.hpp"

#include <algorithm>

#include "vacmc/bisim.hpp"
#include "vacmc/error.hpp"
#include "vacmc/mc.hpp"

namespace vacmc {

namespace {

// Labelings of bisimilar witness structures are tried only up to 2^14.
constexpr std::size_t kWitnessLabelingBits = 14;

bool is_forall(const Formula& q) { return q.op() == Op::Forall; }

// First labeling of k (mask order) on which body has value `want`.
std::optional<StateSet> find_labeling(const KripkeStructure& k, const std::string& x, const Formula& body, bool want,
                                      std::size_t bound) {
    const std::size_t n = k.num_states();
    if (n > bound)
        throw BoundError("labeling enumeration over " + std::to_string(n) + " states exceeds bound " +
                         std::to_string(bound));
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        StateSet ys(n, mask);
        if (check_ctl_star(x_variant(k, x, ys), body) == want) return ys;
    }
    return std::nullopt;
}

QEvalResult decided(bool value, QRoute route) {
    QEvalResult r;
    r.value = value;
    r.route = route;
    return r;
}

} // namespace

std::string route_name(QRoute r) {
    switch (r) {
    case QRoute::BruteForceY: return "BruteForceY";
    case QRoute::KParallelX: return "KParallelX";
    case QRoute::Duality: return "Duality";
    case QRoute::DeterministicCollapse: return "DeterministicCollapse";
    case QRoute::PathFormulaEquivalence: return "PathFormulaEquivalence";
    case QRoute::ChainImplication: return "ChainImplication";
    case QRoute::RegularWitness: return "RegularWitness";
    default: return "Unknown";
    }
}

void check_quantified(const KripkeStructure& k, const Formula& q) {
    if (q.op() != Op::Forall && q.op() != Op::Exists)
        throw PreconditionError("expected a formula of the form forall x. phi or exists x. phi");
    if (has_prop_quantifier(q.child())) throw NotApplicableError("nested proposition quantifiers");
    if (!is_state_formula(q.child())) throw PreconditionError("quantified body must be a state formula");
    if (k.has_prop(q.name()))
        throw PreconditionError("quantified variable '" + q.name() + "' is already a proposition of '" + k.name() + "'");
}

StructuralResult eval_structural(const KripkeStructure& k, const Formula& q, const QctlOptions& opts) {
    check_quantified(k, q);
    const bool forall = is_forall(q);
    // forall: search for a falsifying labeling; exists: for a satisfying one.
    auto ys = find_labeling(k, q.name(), q.child(), !forall, opts.enumeration_bound);
    if (forall) return {!ys.has_value(), ys};
    return {ys.has_value(), ys};
}

QEvalResult eval_bisimulation(const KripkeStructure& k, const Formula& q, const QctlOptions& opts) {
    check_quantified(k, q);
    const bool forall = is_forall(q);
    const std::string& x = q.name();
    const Formula& body = q.child();
    const Formula var = Formula::prop(x);

    if (forall && universal_in(body, var)) {
        auto kx = compose_sync(k, chi(x));
        auto r = decided(check_ctl_star(kx, body), QRoute::KParallelX);
        r.model = std::move(kx);
        return r;
    }
    if (!forall && existential_in(body, var)) {
        auto kx = compose_sync(k, chi(x));
        const StateSet sat_init = eval_states(kx, body) & kx.init_set();
        if (sat_init.none()) return decided(false, QRoute::KParallelX);
        // True needs a variant satisfying the body at every initial state; restricting
        // K||chi to its satisfying initial states gives one when it still covers K.
        auto witness = with_init(kx, sat_init);
        if (bisimilar_over(witness, k, k.props())) {
            auto r = decided(true, QRoute::KParallelX);
            r.model = std::move(witness);
            return r;
        }
    }

    // Structure semantics implies bisimulation semantics in the deciding direction.
    if (k.num_states() <= opts.enumeration_bound) {
        auto s = eval_structural(k, q, opts);
        if (s.witness) {
            auto r = decided(s.value, QRoute::ChainImplication);
            r.labeling = s.witness;
            r.model = x_variant(k, x, *s.witness);
            return r;
        }
    }

    // Labelings of other finite structures bisimilar to K.
    std::vector<KripkeStructure> bases;
    {
        auto quot = quotient_bisim(k);
        if (quot.num_states() < k.num_states()) bases.push_back(std::move(quot));
        auto doubled = duplicate_m(k, 2);
        bases.push_back(std::move(doubled));
    }
    for (const auto& base : bases) {
        if (base.num_states() > std::min(opts.enumeration_bound, kWitnessLabelingBits)) continue;
        if (auto ys = find_labeling(base, x, body, !forall, opts.enumeration_bound)) {
            auto r = decided(!forall, QRoute::RegularWitness);
            r.model = x_variant(base, x, *ys);
            return r;
        }
    }
    return {};
}

Formula pathify(const Formula& phi) {
    switch (phi.op()) {
    case Op::A:
    case Op::E: return pathify(phi.child());
    case Op::Not: return Formula::Not(pathify(phi.child()));
    case Op::And: return Formula::And(pathify(phi.left()), pathify(phi.right()));
    case Op::Or: return Formula::Or(pathify(phi.left()), pathify(phi.right()));
    case Op::Implies: return Formula::Implies(pathify(phi.left()), pathify(phi.right()));
    case Op::X: return Formula::X(pathify(phi.child()));
    case Op::F: return Formula::F(pathify(phi.child()));
    case Op::G: return Formula::G(pathify(phi.child()));
    case Op::U: return Formula::U(pathify(phi.left()), pathify(phi.right()));
    case Op::R: return Formula::R(pathify(phi.left()), pathify(phi.right()));
    case Op::Forall:
    case Op::Exists: throw NotApplicableError("pathify over a proposition quantifier");
    default: return phi;
    }
}

QEvalResult eval_tree(const KripkeStructure& k, const Formula& q, const QctlOptions& opts) {
    check_quantified(k, q);
    const std::string& x = q.name();
    const Formula& body = q.child();

    if (!is_forall(q)) {
        auto inner = eval_tree(k, Formula::Forall(x, Formula::Not(body)), opts);
        QEvalResult r;
        r.route = QRoute::Duality;
        r.inner_route = inner.route;
        if (inner.value) r.value = !*inner.value;
        r.labeling = inner.labeling;
        r.model = std::move(inner.model);
        return r;
    }

    // A single path formula: all three semantics coincide.
    if (body.op() == Op::A && is_quantifier_free_path(body.child())) {
        auto b = eval_bisimulation(k, q, opts);
        if (b.value) {
            b.route = QRoute::PathFormulaEquivalence;
            return b;
        }
    }

    // A deterministic structure unwinds to one path, so every path quantifier can
    // be read as the universal one over K||chi.
    if (is_deterministic(k)) {
        auto kx = compose_sync(k, chi(x));
        auto r = decided(check_ctl_star(kx, Formula::A(pathify(body))), QRoute::DeterministicCollapse);
        r.model = std::move(kx);
        return r;
    }

    // structure-false implies tree-false; bisimulation-true implies tree-true.
    if (k.num_states() <= opts.enumeration_bound) {
        auto s = eval_structural(k, q, opts);
        if (!s.value) {
            auto r = decided(false, QRoute::ChainImplication);
            r.labeling = s.witness;
            r.model = x_variant(k, x, *s.witness);
            return r;
        }
    }
    auto b = eval_bisimulation(k, q, opts);
    if (b.value && *b.value) {
        b.route = QRoute::ChainImplication;
        return b;
    }
    return {};
}

bool refute_tree_with_witness(const KripkeStructure& k, const Formula& q, const UnrollingMap& u) {
    check_quantified(k, q);
    if (!is_forall(q)) throw PreconditionError("unrolling witnesses refute forall formulas");
    if (!identical(u.target, k)) throw PreconditionError("unrolling map does not target K");
    if (!validate_unrolling_map(u, q.name())) throw PreconditionError("invalid unrolling map");
    return !check_ctl_star(u.source, q.child());
}

} // namespace vacmc
