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

#include "support.hpp"
#include "vacmc/bisim.hpp"
#include "vacmc/error.hpp"
#include "vacmc/mc.hpp"
#include "vacmc/qctl.hpp"

using namespace vacmc;
using namespace vacmc::testing;

namespace {

const char* const kP1 = "forall x . AG (x -> AX x)";
const char* const kP2 = "forall x . AG ((AX x) | (AX !x))";
const char* const kP3 = "forall x . A((X x) | (X !x))";

// The alternating lasso x, !x, x, ... over L.
UnrollingMap alternating_lasso() {
    auto t = parse_kripke("kripke T\nprops: p x\ninit: t0\nstate t0: p x\nstate t1: p\ntrans: t0 t1 t1 t0\n");
    return {t, fx("L"), {0, 0}};
}

// Random CTL body over p and x.
Formula random_body(std::mt19937_64& rng) { return random_formula(rng, FormulaKind::Ctl, {"p", "x"}, 3); }

// Random body where x occurs only universally (pure ACTL* over p and x).
Formula random_universal_body(std::mt19937_64& rng) {
    for (;;) {
        Formula f = random_formula(rng, FormulaKind::PureActlStar, {"p", "x"}, 3);
        if (props_of(f).count("x")) return f;
    }
}

} // namespace

TEST_CASE("structure semantics") {
    CHECK(eval_structural(fx("L"), pf(kP1)).value);
    auto m = eval_structural(fx("M"), pf(kP1));
    CHECK_FALSE(m.value);
    REQUIRE(m.witness.has_value());
    // Oracle: {b0} is a falsifying labeling, and the returned one falsifies too.
    auto body = pf(kP1).child();
    CHECK_FALSE(check_ctl_star(x_variant(fx("M"), "x", states_of(fx("M"), {"b0"})), body));
    CHECK_FALSE(check_ctl_star(x_variant(fx("M"), "x", *m.witness), body));
    CHECK(eval_structural(fx("L"), pf(kP2)).value);
    CHECK(eval_structural(fx("L"), pf("exists x . AG x & EF !x")).value == false);
    auto e = eval_structural(fx("M"), pf("exists x . x & AX !x"));
    CHECK_FALSE(e.value);
    CHECK_THROWS_AS(eval_structural(duplicate_m(fx("M"), 3), pf(kP1), {5}), BoundError);
}

TEST_CASE("bisimulation semantics") {
    auto l1 = eval_bisimulation(fx("L"), pf(kP1));
    CHECK(l1.value == false);
    CHECK(l1.route == QRoute::KParallelX);
    CHECK(eval_bisimulation(fx("L"), pf(kP2)).value == false);
    auto m3 = eval_bisimulation(fx("M"), pf(kP3));
    CHECK(m3.value == true);
    CHECK(m3.route == QRoute::KParallelX);
    REQUIRE(l1.model.has_value());
    CHECK(bisimilar_over(*l1.model, fx("L"), {"p"}).has_value());
    CHECK_FALSE(check_ctl_star(*l1.model, pf(kP1).child()));
}

TEST_CASE("exists under bisimulation semantics needs every initial state") {
    auto r = eval_bisimulation(fx("L"), pf("exists x . EG x"));
    CHECK(r.value == true);
    REQUIRE(r.model.has_value());
    CHECK(check_ctl_star(*r.model, pf("EG x")));
    CHECK(bisimilar_over(*r.model, fx("L"), {"p"}).has_value());
    CHECK(eval_bisimulation(fx("L"), pf("exists x . EF (x & !p)")).value == false);
}

TEST_CASE("tree semantics") {
    auto l2 = eval_tree(fx("L"), pf(kP2));
    CHECK(l2.value == true);
    CHECK(l2.route == QRoute::DeterministicCollapse);
    auto l1 = eval_tree(fx("L"), pf(kP1));
    CHECK(l1.value == false);
    CHECK(l1.route == QRoute::DeterministicCollapse);
    auto m1 = eval_tree(fx("M"), pf(kP1));
    CHECK(m1.value == false);
    CHECK(m1.route == QRoute::ChainImplication);
    auto m3 = eval_tree(fx("M"), pf(kP3));
    CHECK(m3.value == true);
    CHECK(m3.route == QRoute::PathFormulaEquivalence);
    auto e = eval_tree(fx("L"), pf("exists x . EG x"));
    CHECK(e.route == QRoute::Duality);
    CHECK(e.value == true);
    CHECK(e.inner_route.has_value());
}

TEST_CASE("satisfaction grid for L and M") {
    struct Row {
        const char* model;
        const char* prop;
        bool structure, tree, bisim;
    };
    const Row rows[] = {
        {"L", kP1, true, false, false}, {"M", kP1, false, false, false}, {"L", kP2, true, true, false},
        {"M", kP2, false, false, false}, {"L", kP3, true, true, true},   {"M", kP3, true, true, true},
    };
    for (const auto& r : rows) {
        INFO(r.model << " " << r.prop);
        auto k = fx(r.model);
        CHECK(eval_structural(k, pf(r.prop)).value == r.structure);
        CHECK(eval_tree(k, pf(r.prop)).value == r.tree);
        CHECK(eval_bisimulation(k, pf(r.prop)).value == r.bisim);
    }
}

TEST_CASE("tree refutation by unrolling") {
    auto u = alternating_lasso();
    CHECK(refute_tree_with_witness(fx("L"), pf(kP1), u));
    CHECK_FALSE(refute_tree_with_witness(fx("L"), pf(kP3), u));
    auto broken = u;
    broken.h = {0};
    CHECK_THROWS_AS(refute_tree_with_witness(fx("L"), pf(kP1), broken), PreconditionError);
    CHECK_THROWS_AS(refute_tree_with_witness(fx("M"), pf(kP1), u), PreconditionError);
}

TEST_CASE("pathify and errors") {
    CHECK(pathify(pf("AG ((AX x) | (AX !x))")) == pf("A(G ((X x) | (X !x)))").child());
    CHECK(pathify(pf("E[p U AX q]")) == pf("A(p U X q)").child());
    CHECK_THROWS_AS(eval_bisimulation(fx("L"), pf("AG p")), PreconditionError);
    CHECK_THROWS_AS(eval_bisimulation(fx("L"), pf("forall p . AG p")), PreconditionError);
    CHECK_THROWS_AS(check_quantified(fx("L"), pf("AG p")), PreconditionError);
}

TEST_CASE("implication chain on random instances") {
    auto rng = make_rng(50);
    for (int i = 0; i < 150; ++i) {
        auto k = random_structure(rng, {1, 3, {"p"}});
        Formula body = random_body(rng);
        bool forall = i % 2 == 0;
        Formula q = forall ? Formula::Forall("x", body) : Formula::Exists("x", body);
        INFO(render_formula(q));
        bool s = eval_structural(k, q).value;
        auto t = eval_tree(k, q);
        auto b = eval_bisimulation(k, q);
        if (forall) {
            if (b.value == true) CHECK(s);
            if (t.value == true) CHECK(s);
            if (b.value == true && t.value) CHECK(*t.value);
        } else {
            if (s) {
                if (t.value) CHECK(*t.value);
                if (b.value) CHECK(*b.value);
            }
            if (t.value == true && b.value) CHECK(*b.value);
        }
        if (b.value && b.model) {
            CHECK(bisimilar_over(*b.model, k, k.props()).has_value());
            CHECK(check_ctl_star(*b.model, body) == *b.value);
        }
    }
}

TEST_CASE("path formula equivalence and deterministic collapse") {
    auto rng = make_rng(51);
    for (int i = 0; i < 100; ++i) {
        auto k = random_structure(rng, {1, 3, {"p"}});
        Formula path = random_formula(rng, FormulaKind::Path, {"p", "x"}, 3);
        Formula q = Formula::Forall("x", Formula::A(path));
        INFO(render_formula(q));
        auto t = eval_tree(k, q);
        auto b = eval_bisimulation(k, q);
        if (t.value && b.value) CHECK(*t.value == *b.value);
        if (t.route == QRoute::DeterministicCollapse && *t.value) CHECK(eval_structural(k, q).value);
    }
    // Deterministic structures: collapse never contradicts a refuting unrolling.
    auto u = alternating_lasso();
    for (const char* body : {"AG (x -> AX x)", "AG ((AX x) | (AX !x))", "AG (x | AX x)", "AF x | AF !x"}) {
        Formula q = Formula::Forall("x", pf(body));
        auto t = eval_tree(fx("L"), q);
        REQUIRE(t.value.has_value());
        if (refute_tree_with_witness(fx("L"), q, u)) CHECK_FALSE(*t.value);
    }
}

TEST_CASE("K||chi soundness against variant enumeration") {
    auto rng = make_rng(52);
    for (int i = 0; i < 80; ++i) {
        auto k = random_structure(rng, {1, 3, {"p"}});
        Formula body = random_universal_body(rng);
        Formula q = Formula::Forall("x", body);
        auto b = eval_bisimulation(k, q);
        REQUIRE(b.route == QRoute::KParallelX);
        if (b.value != true) continue;
        INFO(render_formula(q));
        for (const auto& base : {k, quotient_bisim(k), duplicate_m(k, 2)})
            for (const auto& v : x_variants(base, "x")) CHECK(check_ctl_star(v, body));
    }
}
