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

#include <doctest.h>

#include <algorithm>
#include <functional>

#include "support.hpp"
#include "vacmc/bisim.hpp"
#include "vacmc/error.hpp"
#include "vacmc/mc.hpp"
#include "vacmc/three_valued.hpp"
#include "vacmc/vacuity.hpp"

using namespace vacmc;
using namespace vacmc::testing;

namespace {

constexpr Truth T = Truth::True, M = Truth::Maybe, F = Truth::False;

// Proper state subformulas of phi that are not constants.
std::vector<Formula> state_subformulas(const Formula& phi) {
    std::vector<Formula> out;
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
        for (std::size_t c = 0; c < f.arity(); ++c) {
            const Formula& g = f.child(c);
            if (is_state_formula(g) && g.op() != Op::True && g.op() != Op::False) out.push_back(g);
            walk(g);
        }
    };
    walk(phi);
    return out;
}

// A classical structure with one label flipped or one edge added.
KripkeStructure mutate(std::mt19937_64& rng, const KripkeStructure& k) {
    auto labels = k.labels();
    auto succ = k.successor_lists();
    std::uniform_int_distribution<std::size_t> st(0, k.num_states() - 1);
    if (rng() % 2) {
        std::uniform_int_distribution<std::size_t> li(0, labels.size() - 1);
        auto& l = labels[li(rng)];
        l = l == T ? F : T;
    } else {
        auto s = st(rng), t = st(rng);
        if (std::find(succ[s].begin(), succ[s].end(), t) == succ[s].end()) succ[s].push_back(static_cast<StateId>(t));
        std::sort(succ[s].begin(), succ[s].end());
    }
    return KripkeStructure(k.name() + "_mut", k.props(), k.states(), k.init(), succ, labels);
}

} // namespace

TEST_CASE("Kleene operators") {
    CHECK(kleene(KleeneOp::Or, M, T) == T);
    CHECK(kleene(KleeneOp::Or, M, kleene(KleeneOp::Not, M)) == M);
    CHECK(kleene(KleeneOp::Not, kleene(KleeneOp::Not, M)) == M);
    CHECK(kleene(KleeneOp::And, M, F) == F);
    CHECK(kleene(KleeneOp::Implies, F, M) == T);
    CHECK(kleene(KleeneOp::Implies, M, F) == M);
    CHECK(truth_leq(F, M));
    CHECK(truth_leq(M, T));
    CHECK(info_leq(M, T));
    CHECK(info_leq(M, F));
    CHECK_FALSE(info_leq(T, F));
    CHECK_FALSE(info_leq(T, M));
}

TEST_CASE("compositional evaluation examples") {
    auto lx = lift_kx(fx("L"), "x");
    CHECK(eval_compositional3(lx, pf("x | !x")) == M);
    CHECK(eval_compositional3(lx, pf("p")) == T);
    CHECK(eval_compositional3(fx("L"), pf("AG ((AX p) | (AX !p))")) == T);
    CHECK(eval_compositional3(lx, pf("AG ((AX x) | (AX !x))")) == M);
    CHECK(eval_compositional3(lx, pf("AG (x -> x)")) == M);
    CHECK(eval_compositional3(lx, pf("EF p")) == T);
    CHECK_THROWS_AS(eval_compositional3(lx, pf("A(F G p)")), NotApplicableError);
}

TEST_CASE("classical coincidence") {
    for (const auto& name : fixture_list()) {
        auto k = fx(name);
        for (const auto& f : ctl_pool(k.props())) {
            INFO(name << " " << render_formula(f));
            CHECK(eval_compositional3(k, f) == truth_of(check_ctl_star(k, f)));
            auto per_state = eval_states3(k, f);
            auto two = eval_states(k, f);
            for (StateId s = 0; s < k.num_states(); ++s) CHECK(per_state[s] == truth_of(two.test(s)));
        }
    }
}

TEST_CASE("lift and completions") {
    auto lx = lift_kx(fx("L"), "x");
    CHECK(lx.num_states() == 1);
    CHECK(lx.label(0, "p") == T);
    CHECK(lx.label(0, "x") == M);
    CHECK(identical(remove_prop(lx, "x"), fx("L")));
    CHECK(labeling_completions(lift_kx(fx("M"), "x")).size() == 4);
    auto comp = labeling_completions(lx);
    auto vars = x_variants(fx("L"), "x");
    REQUIRE(comp.size() == vars.size());
    for (std::size_t i = 0; i < comp.size(); ++i) CHECK(find_isomorphism(comp[i], vars[i]).has_value());
    auto single = labeling_completions(fx("P"));
    REQUIRE(single.size() == 1);
    CHECK(find_isomorphism(single[0], fx("P")).has_value());
    CHECK_THROWS_AS(lift_kx(fx("Q"), "x"), PreconditionError);
    CHECK_THROWS_AS(labeling_completions(lift_kx(duplicate_m(fx("M"), 11), "x")), BoundError);

    auto rng = make_rng(60);
    for (int i = 0; i < 40; ++i) {
        StructureShape shape{1, 3, {"p", "q"}};
        shape.maybe_labels = true;
        auto k3 = random_structure(rng, shape);
        auto cs = labeling_completions(k3);
        CHECK(cs.size() == (std::size_t{1} << k3.maybe_count()));
        for (const auto& c : cs) {
            CHECK(c.is_classical());
            CHECK(is_refinement(k3, c).has_value());
        }
    }
}

TEST_CASE("refinement examples") {
    auto lx = lift_kx(fx("L"), "x");
    for (const auto& v : x_variants(fx("L"), "x")) CHECK(is_refinement(lx, v).has_value());
    auto m4 = x_variants(fx("M"), "x")[3];
    CHECK(is_refinement(lx, m4).has_value());
    auto l1 = x_variants(fx("L"), "x")[1];
    auto back = is_refinement(lift_kx(remove_prop(l1, "x"), "x"), l1);
    REQUIRE(back.has_value());
    CHECK(back->contains(0, 0));
    CHECK_FALSE(is_refinement(l1, lx).has_value());
    CHECK_THROWS_AS(is_refinement(lx, fx("L")), PreconditionError);
}

TEST_CASE("refinement preserves compositional values") {
    auto rng = make_rng(61);
    auto pool = ctl_pool({"p", "q"});
    int related = 0;
    for (int i = 0; i < 120; ++i) {
        StructureShape shape{1, 3, {"p", "q"}};
        shape.maybe_labels = true;
        auto a = random_structure(rng, shape);
        KripkeStructure b = i % 2 ? random_structure(rng, shape) : [&] {
            auto cs = labeling_completions(a);
            return cs[rng() % cs.size()];
        }();
        if (!is_refinement(a, b)) continue;
        ++related;
        for (std::size_t j = 0; j < pool.size(); j += 3) {
            INFO(render_formula(pool[j]));
            CHECK(info_leq(eval_compositional3(a, pool[j]), eval_compositional3(b, pool[j])));
        }
    }
    CHECK(related >= 60);
}

TEST_CASE("thorough examples") {
    CHECK(thorough_kx(fx("L"), "x", pf("AG ((AX x) | (AX !x))")).value == M);
    CHECK(thorough_kx(fx("L"), "x", pf("A((X x) | (X !x))")).value == T);
    CHECK(thorough_kx(fx("P"), "x", pf("AG (x -> x)")).value == T);
    // A two-state variant of L (x loop stepping to a !x state) satisfies this one.
    CHECK(thorough_kx(fx("L"), "x", pf("EG x & EF !x")).value == M);
    CHECK(thorough_kx(fx("L"), "x", pf("x & !x")).value == F);
}

TEST_CASE("vacuity via thorough") {
    auto p4 = vacuity_via_thorough(pf("AG ((AX p) | (AX !p))"), pf("p"), fx("L"));
    CHECK(p4.status == VacuityStatus::NonVacuous);
    CHECK(p4.route == VacuityRoute::Thorough);
    auto p3 = vacuity_via_thorough(pf("A((X p) | (X !p))"), pf("p"), fx("L"));
    CHECK(p3.status == VacuityStatus::Vacuous);
    CHECK(vacuity_via_thorough(pf("AG p"), pf("q"), fx("L")).route == VacuityRoute::Absent);
    for (const auto& name : fixture_list()) {
        auto k = fx(name);
        if (!k.has_prop("p") || !k.has_prop("q")) continue;
        Formula phi = pf("AG (p -> AF q)"), psi = pf("AF q");
        INFO(name);
        bool mono = is_mon_vacuous(phi, psi, k).vacuous;
        auto v = vacuity_via_thorough(phi, psi, k);
        REQUIRE(v.status != VacuityStatus::Unknown);
        CHECK((v.status == VacuityStatus::Vacuous) == mono);
    }
}

TEST_CASE("precision and labeling bounds") {
    auto rng = make_rng(62);
    for (int i = 0; i < 120; ++i) {
        auto k = random_structure(rng, {1, 3, {"p"}});
        Formula phi = random_formula(rng, FormulaKind::Ctl, {"p", "x"}, 3);
        if (!props_of(phi).count("x")) continue;
        INFO(render_formula(phi));
        auto t = thorough_kx(k, "x", phi);
        if (!t.value) continue;
        CHECK(info_leq(eval_compositional3(lift_kx(k, "x"), phi), *t.value));
        auto lab = labeling_value(k, "x", phi);
        REQUIRE(lab.has_value());
        if (*t.value == T) CHECK(*lab == T);
        if (*t.value == F) CHECK(*lab == F);
        if (*lab == M) CHECK(*t.value == M);
    }
}

TEST_CASE("completions of K_x are exactly the x-bisimilar structures") {
    auto rng = make_rng(63);
    int positives = 0, negatives = 0;
    for (int i = 0; i < 80; ++i) {
        auto k = random_structure(rng, {1, 3, {"p"}});
        auto kx = lift_kx(k, "x");
        std::vector<KripkeStructure> cands;
        for (const auto& base : {k, quotient_bisim(k), duplicate_m(k, 2)}) {
            auto vs = x_variants(base, "x");
            cands.push_back(vs[rng() % vs.size()]);
            cands.push_back(mutate(rng, vs[rng() % vs.size()]));
        }
        for (const auto& c : cands) {
            bool expected = bisimilar_over(c, k, k.props()).has_value();
            CHECK(is_refinement(kx, c).has_value() == expected);
            (expected ? positives : negatives)++;
        }
    }
    CHECK(positives > 0);
    CHECK(negatives > 0);
}

TEST_CASE("thorough and dispatcher agree") {
    for (const auto& name : fixture_list()) {
        auto k = fx(name);
        for (const auto& phi : ctl_pool(k.props())) {
            auto subs = state_subformulas(phi);
            std::vector<Formula> psis{Formula::prop(k.props()[0])};
            if (!subs.empty()) psis.push_back(subs.front());
            for (const auto& psi : psis) {
                INFO(name << " " << render_formula(phi) << " / " << render_formula(psi));
                auto a = vacuity_via_thorough(phi, psi, k);
                auto b = decide_bisim_vacuity(phi, psi, k);
                if (a.status != VacuityStatus::Unknown && b.status != VacuityStatus::Unknown)
                    CHECK(a.status == b.status);
            }
        }
    }
}
