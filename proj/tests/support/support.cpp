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

#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "vacmc/error.hpp"
#include "vacmc/fixtures.hpp"

namespace vacmc::testing {

std::uint64_t test_seed() {
    if (const char* s = std::getenv("VACMC_SEED")) return std::strtoull(s, nullptr, 10);
    return 20261016;
}

std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(test_seed() * 1000003ULL + salt); }

KripkeStructure random_structure(std::mt19937_64& rng, const StructureShape& shape, const std::string& name) {
    std::uniform_int_distribution<std::size_t> nd(shape.min_states, shape.max_states);
    std::bernoulli_distribution edge(shape.edge_prob), extra_init(0.2);
    std::uniform_int_distribution<int> lab(0, shape.maybe_labels ? 2 : 1);
    const std::size_t n = nd(rng);
    std::vector<std::string> states;
    for (std::size_t i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
    std::vector<std::vector<StateId>> succ(n);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t)
            if (edge(rng)) succ[s].push_back(static_cast<StateId>(t));
        if (succ[s].empty()) succ[s].push_back(static_cast<StateId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)));
    }
    std::vector<Truth> labels;
    for (std::size_t i = 0; i < n * shape.props.size(); ++i) {
        int v = lab(rng);
        labels.push_back(v == 0 ? Truth::False : v == 1 ? Truth::True : Truth::Maybe);
    }
    std::vector<StateId> init{0};
    for (std::size_t s = 1; s < n; ++s)
        if (extra_init(rng)) init.push_back(static_cast<StateId>(s));
    return KripkeStructure(name, shape.props, states, init, succ, labels);
}

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int roll(std::mt19937_64& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

Formula literal(std::mt19937_64& rng, const std::vector<std::string>& props, bool allow_neg = true) {
    Formula a = Formula::prop(pick(rng, props));
    return allow_neg && roll(rng, 3) == 0 ? Formula::Not(a) : a;
}

Formula random_ctl(std::mt19937_64& rng, const std::vector<std::string>& props, int depth) {
    if (depth <= 0 || roll(rng, 5) == 0) {
        int r = roll(rng, 12);
        if (r == 0) return Formula::constant(roll(rng, 2) == 0);
        return literal(rng, props);
    }
    auto sub = [&] { return random_ctl(rng, props, depth - 1); };
    switch (roll(rng, 14)) {
    case 0: return Formula::Not(sub());
    case 1: return Formula::And(sub(), sub());
    case 2: return Formula::Or(sub(), sub());
    case 3: return Formula::Implies(sub(), sub());
    case 4: return Formula::E(Formula::X(sub()));
    case 5: return Formula::A(Formula::X(sub()));
    case 6: return Formula::E(Formula::F(sub()));
    case 7: return Formula::A(Formula::F(sub()));
    case 8: return Formula::E(Formula::G(sub()));
    case 9: return Formula::A(Formula::G(sub()));
    case 10: return Formula::E(Formula::U(sub(), sub()));
    case 11: return Formula::A(Formula::U(sub(), sub()));
    case 12: return Formula::E(Formula::R(sub(), sub()));
    default: return Formula::A(Formula::R(sub(), sub()));
    }
}

Formula random_path(std::mt19937_64& rng, const std::vector<std::string>& props, int depth,
                    const std::function<Formula(int)>& leaf) {
    if (depth <= 0 || roll(rng, 5) == 0) return leaf(depth);
    auto sub = [&] { return random_path(rng, props, depth - 1, leaf); };
    switch (roll(rng, 9)) {
    case 0: return Formula::Not(sub());
    case 1: return Formula::And(sub(), sub());
    case 2: return Formula::Or(sub(), sub());
    case 3: return Formula::X(sub());
    case 4: return Formula::F(sub());
    case 5: return Formula::G(sub());
    case 6: return Formula::U(sub(), sub());
    case 7: return Formula::R(sub(), sub());
    default: return Formula::Implies(sub(), sub());
    }
}

Formula random_ctl_star(std::mt19937_64& rng, const std::vector<std::string>& props, int depth) {
    if (depth <= 0 || roll(rng, 5) == 0) return literal(rng, props);
    auto sub = [&] { return random_ctl_star(rng, props, depth - 1); };
    auto leaf = [&](int d) { return roll(rng, 4) == 0 && d > 0 ? random_ctl_star(rng, props, d - 1) : literal(rng, props); };
    switch (roll(rng, 6)) {
    case 0: return Formula::Not(sub());
    case 1: return Formula::And(sub(), sub());
    case 2: return Formula::Or(sub(), sub());
    case 3: return Formula::E(random_path(rng, props, depth - 1, leaf));
    default: return Formula::A(random_path(rng, props, depth - 1, leaf));
    }
}

// Positive path formulas built from X F G U R & | over universal state leaves.
Formula random_pure_actl(std::mt19937_64& rng, const std::vector<std::string>& props, int depth);

Formula random_pure_path(std::mt19937_64& rng, const std::vector<std::string>& props, int depth) {
    if (depth <= 0 || roll(rng, 4) == 0)
        return roll(rng, 4) == 0 && depth > 0 ? random_pure_actl(rng, props, depth - 1) : literal(rng, props);
    auto sub = [&] { return random_pure_path(rng, props, depth - 1); };
    switch (roll(rng, 7)) {
    case 0: return Formula::And(sub(), sub());
    case 1: return Formula::Or(sub(), sub());
    case 2: return Formula::X(sub());
    case 3: return Formula::F(sub());
    case 4: return Formula::G(sub());
    case 5: return Formula::U(sub(), sub());
    default: return Formula::R(sub(), sub());
    }
}

Formula random_pure_actl(std::mt19937_64& rng, const std::vector<std::string>& props, int depth) {
    if (depth <= 0 || roll(rng, 5) == 0) return literal(rng, props);
    auto sub = [&] { return random_pure_actl(rng, props, depth - 1); };
    switch (roll(rng, 4)) {
    case 0: return Formula::And(sub(), sub());
    case 1: return Formula::Or(sub(), sub());
    default: return Formula::A(random_pure_path(rng, props, depth - 1));
    }
}

} // namespace

Formula random_formula(std::mt19937_64& rng, FormulaKind kind, const std::vector<std::string>& props, int depth) {
    switch (kind) {
    case FormulaKind::Ctl: return random_ctl(rng, props, depth);
    case FormulaKind::CtlStar: return random_ctl_star(rng, props, depth);
    case FormulaKind::Path: return random_path(rng, props, depth, [&](int) { return literal(rng, props); });
    default: return random_pure_actl(rng, props, depth);
    }
}

std::vector<KripkeStructure> all_structures(std::size_t n, const std::vector<std::string>& props) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
    const std::size_t np = props.size(), full = (std::size_t{1} << n) - 1;
    std::vector<KripkeStructure> out;
    std::vector<std::size_t> choice(n, 1);
    for (;;) {
        std::vector<std::vector<StateId>> succ(n);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t)
                if (choice[s] >> t & 1) succ[s].push_back(static_cast<StateId>(t));
        for (std::size_t lab = 0; lab < (std::size_t{1} << (n * np)); ++lab) {
            std::vector<Truth> labels(n * np);
            for (std::size_t i = 0; i < n * np; ++i) labels[i] = truth_of(lab >> i & 1);
            out.emplace_back("E" + std::to_string(out.size()), props, names, std::vector<StateId>{0}, succ, labels);
        }
        std::size_t i = 0;
        while (i < n && choice[i] == full) choice[i++] = 1;
        if (i == n) break;
        ++choice[i];
    }
    return out;
}

std::vector<KripkeStructure> all_structures_up_to_iso(std::size_t max_n, const std::vector<std::string>& props) {
    std::vector<KripkeStructure> out;
    const std::size_t np = props.size();
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::set<std::vector<int>> seen;
        for (auto& k : all_structures(n, props)) {
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::vector<int> best;
            do {
                // perm[s] is the new index of s.
                std::vector<int> code(n * n + n * np, 0);
                for (std::size_t s = 0; s < n; ++s) {
                    for (StateId t : k.succ(static_cast<StateId>(s))) code[perm[s] * n + perm[t]] = 1;
                    for (std::size_t p = 0; p < np; ++p)
                        code[n * n + perm[s] * np + p] = k.label(static_cast<StateId>(s), p) == Truth::True;
                }
                if (best.empty() || code < best) best = code;
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (seen.insert(best).second) out.push_back(std::move(k));
        }
    }
    return out;
}

namespace {

using Mask = std::uint64_t;

struct LassoEval {
    const KripkeStructure& k;
    std::vector<StateId> seq;
    std::size_t loop_start;
    Mask full;

    Mask next(Mask m) const {
        const std::size_t len = seq.size();
        Mask out = m >> 1;
        if (m >> loop_start & 1) out |= Mask{1} << (len - 1);
        else out &= ~(Mask{1} << (len - 1));
        return out & full;
    }

    Mask eval(const Formula& f) const {
        switch (f.op()) {
        case Op::True: return full;
        case Op::False: return 0;
        case Op::Prop: {
            auto p = k.prop_index(f.name());
            if (!p) throw Error("lasso oracle: unknown proposition");
            Mask m = 0;
            for (std::size_t i = 0; i < seq.size(); ++i)
                if (k.label(seq[i], *p) == Truth::True) m |= Mask{1} << i;
            return m;
        }
        case Op::Not: return ~eval(f.child()) & full;
        case Op::And: return eval(f.left()) & eval(f.right());
        case Op::Or: return eval(f.left()) | eval(f.right());
        case Op::Implies: return (~eval(f.left()) & full) | eval(f.right());
        case Op::X: return next(eval(f.child()));
        case Op::F: return until(full, eval(f.child()));
        case Op::G: return release(0, eval(f.child()));
        case Op::U: return until(eval(f.left()), eval(f.right()));
        case Op::R: return release(eval(f.left()), eval(f.right()));
        default: throw Error("lasso oracle: only quantifier-free path formulas");
        }
    }

    Mask until(Mask l, Mask r) const {
        Mask z = 0;
        for (;;) {
            Mask n = r | (l & next(z));
            if (n == z) return z;
            z = n;
        }
    }

    Mask release(Mask l, Mask r) const {
        Mask z = full;
        for (;;) {
            Mask n = r & (l | next(z));
            if (n == z) return z;
            z = n;
        }
    }
};

} // namespace

bool lasso_satisfies(const KripkeStructure& k, const Formula& path, const Lasso& lasso) {
    LassoEval ev{k, lasso.stem, lasso.stem.size(), 0};
    ev.seq.insert(ev.seq.end(), lasso.loop.begin(), lasso.loop.end());
    if (ev.seq.size() > 63) throw Error("lasso oracle: lasso too long");
    ev.full = (Mask{1} << ev.seq.size()) - 1;
    return ev.eval(path) & 1;
}

bool is_valid_lasso(const KripkeStructure& k, const Lasso& lasso, StateId s) {
    if (lasso.loop.empty()) return false;
    std::vector<StateId> seq = lasso.stem;
    seq.insert(seq.end(), lasso.loop.begin(), lasso.loop.end());
    if (seq.front() != s) return false;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!k.has_edge(seq[i], seq[i + 1])) return false;
    return k.has_edge(seq.back(), lasso.loop.front());
}

std::optional<Lasso> bounded_lasso_search(const KripkeStructure& k, const Formula& path, StateId s,
                                          std::size_t max_len) {
    std::vector<StateId> seq{s};
    std::optional<Lasso> found;
    std::function<bool()> dfs = [&]() -> bool {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (!k.has_edge(seq.back(), seq[i])) continue;
            Lasso l{{seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(i)},
                    {seq.begin() + static_cast<std::ptrdiff_t>(i), seq.end()}};
            if (lasso_satisfies(k, path, l)) {
                found = l;
                return true;
            }
        }
        if (seq.size() >= max_len) return false;
        for (StateId t : k.succ(seq.back())) {
            seq.push_back(t);
            if (dfs()) return true;
            seq.pop_back();
        }
        return false;
    };
    dfs();
    return found;
}

std::vector<Formula> ctl_pool(const std::vector<std::string>& props) {
    const std::string a = props.at(0), b = props.size() > 1 ? props[1] : props[0];
    const std::vector<std::string> templates = {
        "$a", "!$a", "$a & $b", "$a | !$b", "$a -> $b",
        "EX $a", "AX $a", "EF $a", "AF $a", "EG $a", "AG $a",
        "E[$a U $b]", "A[$a U $b]", "E[$a R $b]", "A[$a R $b]",
        "AG ($a -> AF $b)", "AG ($a -> AX $b)", "EF ($a & EG !$b)", "AG ((AX $a) | (AX !$a))", "AG ($a -> AX $a)",
        "EX EX $a", "AX AX !$a", "EF AG $a", "AG EF $a", "AF AG $a", "EG EF $b",
        "A[$a U ($b & EX $a)]", "E[!$a U ($b | AX $a)]", "A[($a | $b) R (EX $a)]", "E[$a R ($b -> EF $a)]",
        "!(EF ($a & $b))", "AG ($a | $b)", "EF ($a -> AX !$b)", "(EX $a) | (AX !$a)", "AF ($a & AX $b)",
        "EG ($a | EX $b)", "AX ($a -> EF $b)", "E[true U !$a & A[false R $b]]", "AG AF $a", "EF EG !$b",
    };
    std::vector<Formula> out;
    for (const auto& t : templates) {
        std::string r;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] == '$') r += t[++i] == 'a' ? a : b;
            else r += t[i];
        }
        out.push_back(parse_formula(r));
    }
    return out;
}

std::vector<Formula> ctl_star_pool(const std::vector<std::string>& props) {
    auto out = ctl_pool(props);
    const std::string a = props.at(0), b = props.size() > 1 ? props[1] : props[0];
    const std::vector<std::string> extra = {
        "A(F G " + a + ")",
        "E(G F " + a + ")",
        "A((X " + b + ") -> X X " + b + ")",
        "E(" + a + " U (" + b + " & X !" + a + "))",
        "A(G (" + a + " -> F " + b + "))",
        "E((F " + a + ") & (G !" + b + "))",
        "A((G F " + a + ") -> (G F " + b + "))",
        "E((X " + a + ") & (X X !" + a + "))",
        "A(" + a + " R (" + b + " | X " + a + "))",
        "E(F (" + a + " & X " + a + "))",
    };
    for (const auto& e : extra) out.push_back(parse_formula(e));
    return out;
}

std::vector<std::string> fixture_list() { return fixture_names(); }

KripkeStructure fx(const std::string& name) { return fixture(name); }

StateSet states_of(const KripkeStructure& k, const std::vector<std::string>& names) {
    StateSet out(k.num_states());
    for (const auto& n : names) out.set(*k.state_index(n));
    return out;
}

// Merge states with equal labels; transitions lifted existentially. The result simulates k.
KripkeStructure merge_by_label(const KripkeStructure& k) {
    std::map<std::vector<Truth>, StateId> cls;
    std::vector<StateId> of(k.num_states());
    std::vector<std::string> names;
    std::vector<Truth> labels;
    for (StateId s = 0; s < k.num_states(); ++s) {
        std::vector<Truth> key;
        for (std::size_t p = 0; p < k.num_props(); ++p) key.push_back(k.label(s, p));
        auto [it, fresh] = cls.emplace(key, static_cast<StateId>(names.size()));
        if (fresh) {
            names.push_back("m" + std::to_string(names.size()));
            labels.insert(labels.end(), key.begin(), key.end());
        }
        of[s] = it->second;
    }
    std::vector<std::vector<StateId>> succ(names.size());
    for (StateId s = 0; s < k.num_states(); ++s)
        for (StateId t : k.succ(s)) succ[of[s]].push_back(of[t]);
    for (auto& v : succ) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    std::vector<StateId> init;
    for (StateId s : k.init()) init.push_back(of[s]);
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    return KripkeStructure(k.name() + "_a", k.props(), names, init, succ, labels);
}

// Random (phi, psi) where psi is a proposition or a state subformula of phi.
std::pair<Formula, Formula> random_vacuity_instance(std::mt19937_64& rng, FormulaKind kind, int depth) {
    Formula phi = random_formula(rng, kind, {"p", "q"}, depth);
    std::vector<Formula> subs;
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
        if (is_state_formula(f) && f.op() != Op::True && f.op() != Op::False) subs.push_back(f);
        for (std::size_t c = 0; c < f.arity(); ++c) walk(f.child(c));
    };
    walk(phi);
    subs.push_back(Formula::prop("p"));
    std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
    return {phi, subs[pick(rng)]};
}

} // namespace vacmc::testing
