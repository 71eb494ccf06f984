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

#include "vacmc/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "vacmc/error.hpp"

namespace vacmc {

struct Formula::Node {
    Op op;
    std::string name;
    std::vector<std::string> states;
    std::shared_ptr<const KripkeStructure> source;
    std::vector<Formula> children;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_node(const Formula::Node& n) {
    std::size_t h = static_cast<std::size_t>(n.op) * 1315423911u;
    h = mix(h, std::hash<std::string>{}(n.name));
    for (const auto& s : n.states) h = mix(h, std::hash<std::string>{}(s));
    for (const auto& c : n.children) h = mix(h, c.hash());
    return h;
}

const Formula& true_singleton() {
    static const Formula t = Formula::constant(true);
    return t;
}

} // namespace

Formula::Formula() : node_(true_singleton().node_) {}

Formula Formula::make(Op op, std::vector<Formula> children) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->children = std::move(children);
    n->hash = hash_node(*n);
    return Formula(std::move(n));
}

Formula Formula::prop(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Prop;
    n->name = std::move(name);
    n->hash = hash_node(*n);
    return Formula(std::move(n));
}

Formula Formula::constant(bool value) {
    auto n = std::make_shared<Node>();
    n->op = value ? Op::True : Op::False;
    n->hash = hash_node(*n);
    return Formula(std::move(n));
}

Formula Formula::set_atom(std::string model, std::vector<std::string> states,
                          std::shared_ptr<const KripkeStructure> source) {
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    auto n = std::make_shared<Node>();
    n->op = Op::SetAtom;
    n->name = std::move(model);
    n->states = std::move(states);
    n->source = std::move(source);
    n->hash = hash_node(*n);
    return Formula(std::move(n));
}

Formula Formula::Not(Formula a) { return make(Op::Not, {std::move(a)}); }
Formula Formula::And(Formula a, Formula b) { return make(Op::And, {std::move(a), std::move(b)}); }
Formula Formula::Or(Formula a, Formula b) { return make(Op::Or, {std::move(a), std::move(b)}); }
Formula Formula::Implies(Formula a, Formula b) {
    return make(Op::Implies, {std::move(a), std::move(b)});
}
Formula Formula::A(Formula a) { return make(Op::A, {std::move(a)}); }
Formula Formula::E(Formula a) { return make(Op::E, {std::move(a)}); }
Formula Formula::X(Formula a) { return make(Op::X, {std::move(a)}); }
Formula Formula::U(Formula l, Formula r) { return make(Op::U, {std::move(l), std::move(r)}); }
Formula Formula::R(Formula l, Formula r) { return make(Op::R, {std::move(l), std::move(r)}); }
Formula Formula::F(Formula a) { return make(Op::F, {std::move(a)}); }
Formula Formula::G(Formula a) { return make(Op::G, {std::move(a)}); }

Formula Formula::Forall(std::string var, Formula body) {
    Formula f = make(Op::Forall, {std::move(body)});
    auto n = std::make_shared<Node>(*f.node_);
    n->name = std::move(var);
    n->hash = hash_node(*n);
    return Formula(std::move(n));
}

Formula Formula::Exists(std::string var, Formula body) {
    Formula f = make(Op::Exists, {std::move(body)});
    auto n = std::make_shared<Node>(*f.node_);
    n->name = std::move(var);
    n->hash = hash_node(*n);
    return Formula(std::move(n));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<std::string>& Formula::states() const { return node_->states; }
const std::shared_ptr<const KripkeStructure>& Formula::source() const { return node_->source; }
std::size_t Formula::arity() const { return node_->children.size(); }
const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::is_atomic() const {
    switch (op()) {
    case Op::Prop:
    case Op::SetAtom:
    case Op::True:
    case Op::False: return true;
    default: return false;
    }
}

bool Formula::is_binary() const {
    switch (op()) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::U:
    case Op::R: return true;
    default: return false;
    }
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.hash != b.hash || a.op != b.op || a.name != b.name || a.states != b.states ||
        a.children.size() != b.children.size())
        return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (a.children[i] != b.children[i]) return false;
    return true;
}

std::string Formula::str() const { return render_formula(*this); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

const char* binary_symbol(Op op) {
    switch (op) {
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::U: return "U";
    case Op::R: return "R";
    default: return "?";
    }
}

bool is_prefix_unary(const Formula& f) {
    switch (f.op()) {
    case Op::X:
    case Op::F:
    case Op::G: return true;
    case Op::A:
    case Op::E: {
        Op c = f.child().op();
        return c == Op::X || c == Op::F || c == Op::G;
    }
    default: return false;
    }
}

void render(const Formula& f, std::string& out);

// Operand of a binary connective.
void render_operand(const Formula& f, std::string& out) {
    if (f.is_binary() || is_prefix_unary(f) || f.op() == Op::Forall || f.op() == Op::Exists) {
        out += '(';
        render(f, out);
        out += ')';
    } else {
        render(f, out);
    }
}

// Operand of a prefix operator; `spaced` for word operators such as AX.
void render_unary_operand(const Formula& f, std::string& out, bool spaced) {
    if (f.is_binary() || f.op() == Op::Forall || f.op() == Op::Exists) {
        if (spaced) out += ' ';
        out += '(';
        render(f, out);
        out += ')';
    } else {
        if (spaced) out += ' ';
        render(f, out);
    }
}

// Operand inside A[..] / E[..]: top level, except that an infix U/R must be wrapped.
void render_bracket_operand(const Formula& f, std::string& out) {
    if (f.op() == Op::U || f.op() == Op::R) {
        out += '(';
        render(f, out);
        out += ')';
    } else {
        render(f, out);
    }
}

void render(const Formula& f, std::string& out) {
    switch (f.op()) {
    case Op::Prop: out += f.name(); return;
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::SetAtom: {
        out += '{';
        for (std::size_t i = 0; i < f.states().size(); ++i) {
            if (i) out += ',';
            out += f.states()[i];
        }
        out += "}@";
        out += f.name();
        return;
    }
    case Op::Not:
        out += '!';
        render_unary_operand(f.child(), out, false);
        return;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::U:
    case Op::R:
        render_operand(f.left(), out);
        out += ' ';
        out += binary_symbol(f.op());
        out += ' ';
        render_operand(f.right(), out);
        return;
    case Op::X:
    case Op::F:
    case Op::G:
        out += f.op() == Op::X ? "X" : f.op() == Op::F ? "F" : "G";
        render_unary_operand(f.child(), out, true);
        return;
    case Op::A:
    case Op::E: {
        const char* q = f.op() == Op::A ? "A" : "E";
        const Formula& c = f.child();
        if (c.op() == Op::X || c.op() == Op::F || c.op() == Op::G) {
            out += q;
            out += c.op() == Op::X ? "X" : c.op() == Op::F ? "F" : "G";
            render_unary_operand(c.child(), out, true);
        } else if (c.op() == Op::U || c.op() == Op::R) {
            out += q;
            out += '[';
            render_bracket_operand(c.left(), out);
            out += c.op() == Op::U ? " U " : " R ";
            render_bracket_operand(c.right(), out);
            out += ']';
        } else {
            out += q;
            out += '(';
            render(c, out);
            out += ')';
        }
        return;
    }
    case Op::Forall:
    case Op::Exists:
        out += f.op() == Op::Forall ? "forall " : "exists ";
        out += f.name();
        out += " . ";
        render(f.child(), out);
        return;
    }
}

} // namespace

std::string render_formula(const Formula& f) {
    std::string out;
    render(f, out);
    return out;
}

// ---------------------------------------------------------------------------
// Substitution and occurrences

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
    switch (f.op()) {
    case Op::Not: return Formula::Not(kids[0]);
    case Op::And: return Formula::And(kids[0], kids[1]);
    case Op::Or: return Formula::Or(kids[0], kids[1]);
    case Op::Implies: return Formula::Implies(kids[0], kids[1]);
    case Op::A: return Formula::A(kids[0]);
    case Op::E: return Formula::E(kids[0]);
    case Op::X: return Formula::X(kids[0]);
    case Op::U: return Formula::U(kids[0], kids[1]);
    case Op::R: return Formula::R(kids[0], kids[1]);
    case Op::F: return Formula::F(kids[0]);
    case Op::G: return Formula::G(kids[0]);
    case Op::Forall: return Formula::Forall(f.name(), kids[0]);
    case Op::Exists: return Formula::Exists(f.name(), kids[0]);
    default: return f;
    }
}

Formula subst_rec(const Formula& f, const Formula& psi, const Formula& chi, std::size_t& count) {
    if (f == psi) {
        ++count;
        return chi;
    }
    if (f.arity() == 0) return f;
    std::vector<Formula> kids;
    bool changed = false;
    for (std::size_t i = 0; i < f.arity(); ++i) {
        kids.push_back(subst_rec(f.child(i), psi, chi, count));
        if (kids.back().id() != f.child(i).id()) changed = true;
    }
    return changed ? rebuild(f, std::move(kids)) : f;
}

} // namespace

Substitution substitute(const Formula& phi, const Formula& psi, const Formula& chi) {
    Substitution s;
    s.result = subst_rec(phi, psi, chi, s.occurrences);
    return s;
}

std::size_t count_occurrences(const Formula& phi, const Formula& psi) {
    if (phi == psi) return 1;
    std::size_t n = 0;
    for (std::size_t i = 0; i < phi.arity(); ++i) n += count_occurrences(phi.child(i), psi);
    return n;
}

// ---------------------------------------------------------------------------
// Negation normal form

namespace {

Formula nnf_rec(const Formula& f, bool negate) {
    switch (f.op()) {
    case Op::Prop:
    case Op::SetAtom: return negate ? Formula::Not(f) : f;
    case Op::True: return Formula::constant(!negate);
    case Op::False: return Formula::constant(negate);
    case Op::Not: return nnf_rec(f.child(), !negate);
    case Op::And:
    case Op::Or: {
        Formula l = nnf_rec(f.left(), negate);
        Formula r = nnf_rec(f.right(), negate);
        bool conj = (f.op() == Op::And) != negate;
        return conj ? Formula::And(l, r) : Formula::Or(l, r);
    }
    case Op::Implies: {
        Formula l = nnf_rec(f.left(), !negate);
        Formula r = nnf_rec(f.right(), negate);
        return negate ? Formula::And(l, r) : Formula::Or(l, r);
    }
    case Op::A:
    case Op::E: {
        Formula c = nnf_rec(f.child(), negate);
        bool universal = (f.op() == Op::A) != negate;
        return universal ? Formula::A(c) : Formula::E(c);
    }
    case Op::X: return Formula::X(nnf_rec(f.child(), negate));
    case Op::U:
    case Op::R: {
        Formula l = nnf_rec(f.left(), negate);
        Formula r = nnf_rec(f.right(), negate);
        bool until = (f.op() == Op::U) != negate;
        return until ? Formula::U(l, r) : Formula::R(l, r);
    }
    case Op::F:
    case Op::G: {
        Formula c = nnf_rec(f.child(), negate);
        bool future = (f.op() == Op::F) != negate;
        return future ? Formula::F(c) : Formula::G(c);
    }
    case Op::Forall:
    case Op::Exists: {
        Formula c = nnf_rec(f.child(), negate);
        bool universal = (f.op() == Op::Forall) != negate;
        return universal ? Formula::Forall(f.name(), c) : Formula::Exists(f.name(), c);
    }
    }
    return f;
}

} // namespace

Formula nnf(const Formula& phi) { return nnf_rec(phi, false); }

// ---------------------------------------------------------------------------
// Polarity

namespace {

void polarity_rec(const Formula& f, const Formula& psi, bool negated, bool& pos, bool& neg) {
    if (f == psi) {
        (negated ? neg : pos) = true;
        return;
    }
    switch (f.op()) {
    case Op::Not: polarity_rec(f.child(), psi, !negated, pos, neg); return;
    case Op::Implies:
        polarity_rec(f.left(), psi, !negated, pos, neg);
        polarity_rec(f.right(), psi, negated, pos, neg);
        return;
    default:
        for (std::size_t i = 0; i < f.arity(); ++i) polarity_rec(f.child(i), psi, negated, pos, neg);
    }
}

} // namespace

Polarity occurrence_polarity(const Formula& phi, const Formula& psi) {
    bool pos = false, neg = false;
    polarity_rec(phi, psi, false, pos, neg);
    if (pos && neg) return Polarity::Mixed;
    if (pos) return Polarity::Positive;
    if (neg) return Polarity::Negative;
    return Polarity::Absent;
}

std::string polarity_name(Polarity p) {
    switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Mixed: return "mixed";
    default: return "absent";
    }
}

// ---------------------------------------------------------------------------
// Fragments

std::size_t formula_size(const Formula& phi) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < phi.arity(); ++i) n += formula_size(phi.child(i));
    return n;
}

bool is_state_formula(const Formula& phi) {
    switch (phi.op()) {
    case Op::Prop:
    case Op::SetAtom:
    case Op::True:
    case Op::False:
    case Op::A:
    case Op::E: return true;
    case Op::X:
    case Op::U:
    case Op::R:
    case Op::F:
    case Op::G: return false;
    default:
        for (std::size_t i = 0; i < phi.arity(); ++i)
            if (!is_state_formula(phi.child(i))) return false;
        return true;
    }
}

bool is_ctl(const Formula& phi) {
    switch (phi.op()) {
    case Op::Prop:
    case Op::SetAtom:
    case Op::True:
    case Op::False: return true;
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Implies:
        for (std::size_t i = 0; i < phi.arity(); ++i)
            if (!is_ctl(phi.child(i))) return false;
        return true;
    case Op::A:
    case Op::E: {
        const Formula& c = phi.child();
        switch (c.op()) {
        case Op::X:
        case Op::F:
        case Op::G: return is_ctl(c.child());
        case Op::U:
        case Op::R: return is_ctl(c.left()) && is_ctl(c.right());
        default: return false;
        }
    }
    default: return false;
    }
}

bool is_quantifier_free_path(const Formula& phi) {
    if (phi.op() == Op::A || phi.op() == Op::E || phi.op() == Op::Forall || phi.op() == Op::Exists)
        return false;
    for (std::size_t i = 0; i < phi.arity(); ++i)
        if (!is_quantifier_free_path(phi.child(i))) return false;
    return true;
}

bool is_ltl(const Formula& phi) { return phi.op() == Op::A && is_quantifier_free_path(phi.child()); }

namespace {

bool contains_op(const Formula& f, Op op) {
    if (f.op() == op) return true;
    for (std::size_t i = 0; i < f.arity(); ++i)
        if (contains_op(f.child(i), op)) return true;
    return false;
}

// True iff no occurrence of `atom` sits below a node of kind `forbidden`.
bool only_under(const Formula& f, const Formula& atom, Op forbidden, bool under_forbidden) {
    if (f == atom) return !under_forbidden;
    bool flag = under_forbidden || f.op() == forbidden;
    for (std::size_t i = 0; i < f.arity(); ++i)
        if (!only_under(f.child(i), atom, forbidden, flag)) return false;
    return true;
}

bool quantified_in(const Formula& phi, const Formula& psi, Op forbidden) {
    std::set<std::string> taken = props_of(phi);
    for (const auto& p : props_of(psi)) taken.insert(p);
    Formula marker = Formula::prop(fresh_name("x", taken));
    Formula body = nnf(substitute(phi, psi, marker).result);
    return only_under(body, marker, forbidden, false);
}

} // namespace

bool is_actl_star(const Formula& phi) { return !contains_op(nnf(phi), Op::E); }
bool is_ectl_star(const Formula& phi) { return !contains_op(nnf(phi), Op::A); }

bool universal_in(const Formula& phi, const Formula& psi) { return quantified_in(phi, psi, Op::E); }
bool existential_in(const Formula& phi, const Formula& psi) { return quantified_in(phi, psi, Op::A); }

bool has_prop_quantifier(const Formula& phi) {
    return contains_op(phi, Op::Forall) || contains_op(phi, Op::Exists);
}

FragmentInfo analyze(const Formula& phi, const Formula& psi) {
    FragmentInfo info;
    info.is_ctl = is_ctl(phi);
    info.is_ltl = is_ltl(phi);
    info.is_actl_star = is_actl_star(phi);
    info.is_ectl_star = is_ectl_star(phi);
    info.size = formula_size(phi);
    info.universal_in = universal_in(phi, psi);
    info.existential_in = existential_in(phi, psi);
    return info;
}

namespace {

void collect_props(const Formula& f, std::set<std::string>& out) {
    if (f.op() == Op::Prop) out.insert(f.name());
    if (f.op() == Op::Forall || f.op() == Op::Exists) out.insert(f.name());
    for (std::size_t i = 0; i < f.arity(); ++i) collect_props(f.child(i), out);
}

void collect_subformulas(const Formula& f, std::unordered_set<Formula, FormulaHash>& out) {
    if (!out.insert(f).second) return;
    for (std::size_t i = 0; i < f.arity(); ++i) collect_subformulas(f.child(i), out);
}

} // namespace

std::set<std::string> props_of(const Formula& phi) {
    std::set<std::string> out;
    collect_props(phi, out);
    return out;
}

std::size_t closure_size(const Formula& phi) {
    std::unordered_set<Formula, FormulaHash> subs;
    collect_subformulas(phi, subs);
    return subs.size();
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int i = 1;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!taken.count(candidate)) return candidate;
    }
}

} // namespace vacmc
