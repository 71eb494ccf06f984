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

#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vacmc {

class KripkeStructure;

enum class Op : unsigned char {
    Prop,
    SetAtom,
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    A,
    E,
    X,
    U,
    R, // release
    F,
    G,
    Forall,
    Exists,
};

// Immutable CTL* formula with shared subterms. Equality is structural.
class Formula {
public:
    struct Node;

    Formula(); // the constant true

    static Formula prop(std::string name);
    static Formula constant(bool value);
    static Formula truth() { return constant(true); }
    static Formula falsity() { return constant(false); }
    // A set atom naming states of the structure called `model`. `source` lets the
    // checker evaluate the atom on a different (bisimilar) structure.
    static Formula set_atom(std::string model, std::vector<std::string> states,
                            std::shared_ptr<const KripkeStructure> source = nullptr);

    static Formula Not(Formula a);
    static Formula And(Formula a, Formula b);
    static Formula Or(Formula a, Formula b);
    static Formula Implies(Formula a, Formula b);
    static Formula A(Formula a);
    static Formula E(Formula a);
    static Formula X(Formula a);
    static Formula U(Formula l, Formula r);
    static Formula R(Formula l, Formula r);
    static Formula F(Formula a);
    static Formula G(Formula a);
    static Formula Forall(std::string var, Formula body);
    static Formula Exists(std::string var, Formula body);

    Op op() const;
    // Proposition name, quantified variable, or the model name of a set atom.
    const std::string& name() const;
    const std::vector<std::string>& states() const;
    const std::shared_ptr<const KripkeStructure>& source() const;

    std::size_t arity() const;
    const Formula& child(std::size_t i = 0) const;
    const Formula& left() const { return child(0); }
    const Formula& right() const { return child(1); }

    bool is_atomic() const;
    bool is_binary() const;
    std::size_t hash() const;
    const Node* id() const { return node_.get(); }

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

    std::string str() const;

private:
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula make(Op op, std::vector<Formula> children);
    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

Formula parse_formula(std::string_view text);
std::string render_formula(const Formula& f);

struct Substitution {
    Formula result;
    std::size_t occurrences = 0;
};

// Replaces every maximal occurrence of `psi` (structural equality) by `chi`.
Substitution substitute(const Formula& phi, const Formula& psi, const Formula& chi);
std::size_t count_occurrences(const Formula& phi, const Formula& psi);

Formula nnf(const Formula& phi);

enum class Polarity { Positive, Negative, Mixed, Absent };
Polarity occurrence_polarity(const Formula& phi, const Formula& psi);
std::string polarity_name(Polarity p);

struct FragmentInfo {
    bool is_ctl = false;
    bool is_ltl = false;
    bool is_actl_star = false;
    bool is_ectl_star = false;
    std::size_t size = 0;
    bool universal_in = false;
    bool existential_in = false;
};

FragmentInfo analyze(const Formula& phi, const Formula& psi);

std::size_t formula_size(const Formula& phi);
bool is_state_formula(const Formula& phi);
bool is_ctl(const Formula& phi);
bool is_ltl(const Formula& phi);
bool is_actl_star(const Formula& phi);
bool is_ectl_star(const Formula& phi);
// Pure path formula: no path quantifiers anywhere inside.
bool is_quantifier_free_path(const Formula& phi);
bool universal_in(const Formula& phi, const Formula& psi);
bool existential_in(const Formula& phi, const Formula& psi);
bool has_prop_quantifier(const Formula& phi);

// Proposition names occurring in phi (set atoms excluded).
std::set<std::string> props_of(const Formula& phi);
// Number of distinct subformulas.
std::size_t closure_size(const Formula& phi);
// `base` if unused in `taken`, else base1, base2, ...
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

} // namespace vacmc
