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

#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vacmc/bisim.hpp"
#include "vacmc/error.hpp"
#include "vacmc/fixtures.hpp"
#include "vacmc/formula.hpp"
#include "vacmc/kripke.hpp"
#include "vacmc/mc.hpp"
#include "vacmc/qctl.hpp"
#include "vacmc/reductions.hpp"
#include "vacmc/three_valued.hpp"
#include "vacmc/vacuity.hpp"

namespace vacmc::cli {

namespace {

using Json = nlohmann::ordered_json;

// Exit code for results whose status is Unknown.
constexpr int kUnknownExit = 2;

KripkeStructure load_model(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_kripke(arg);
    std::string stem = std::filesystem::path(arg).stem().string();
    for (const auto& name : fixture_names())
        if (name == stem) return fixture(name);
    throw Error("no model file or built-in fixture named '" + arg + "'");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Json names_json(const KripkeStructure& k, const StateSet& ys) { return Json(state_names(k, ys)); }

Json model_json(const KripkeStructure& k) {
    return Json{{"name", k.name()}, {"kr", render_kripke(k)}};
}

Json truth_json(Truth t) { return std::string(1, truth_letter(t)); }

Json evidence_json(const VacuityEvidence& ev) {
    Json w{{"var", ev.var}, {"formula", render_formula(ev.substituted)}};
    if (ev.with_true) w["with_true"] = *ev.with_true;
    if (ev.with_false) w["with_false"] = *ev.with_false;
    if (ev.bounded_states) w["bounded_states"] = *ev.bounded_states;
    if (!ev.variants.empty()) {
        Json vs = Json::array();
        for (const auto& v : ev.variants) {
            Json m = model_json(v.model);
            m["holds"] = v.holds;
            auto xi = v.model.prop_index(ev.var);
            if (xi) names_json(v.model, v.model.prop_set(*xi)).swap(m["x_states"]);
            vs.push_back(std::move(m));
        }
        w["variants"] = std::move(vs);
    }
    return w;
}

Json verdict_json(const VacuityVerdict& v) {
    Json r{{"status", status_name(v.status)}, {"route", route_name(v.route)}};
    if (v.evidence) r["witness"] = evidence_json(*v.evidence);
    if (v.bounds) {
        Json b = Json::object();
        b["compositional"] = v.bounds->compositional ? truth_json(*v.bounds->compositional) : Json();
        b["labeling"] = v.bounds->labeling ? truth_json(*v.bounds->labeling) : Json();
        r["bounds"] = std::move(b);
    }
    return r;
}

Json qresult_json(const QEvalResult& q) {
    Json r;
    r["value"] = q.value ? Json(*q.value) : Json();
    r["route"] = route_name(q.route);
    if (q.inner_route) r["inner_route"] = route_name(*q.inner_route);
    if (q.model) r["witness"] = {{"model", model_json(*q.model)}};
    return r;
}

std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "unknown";
    return j.dump();
}

void print_text(const Json& result, std::ostream& out) {
    if (result.contains("output")) {
        out << result["output"].get<std::string>();
        const auto& s = result["output"].get_ref<const std::string&>();
        if (!s.empty() && s.back() != '\n') out << '\n';
        return;
    }
    for (const auto& [key, val] : result.items()) {
        if (key == "witness" && val.contains("variants")) {
            out << "witness: " << val["var"].get<std::string>() << " in " << val["formula"].get<std::string>() << "\n";
            for (const auto& v : val["variants"])
                out << "  variant " << v["name"].get<std::string>() << " with " << val["var"].get<std::string>()
                    << " on " << v["x_states"].dump() << ": " << (v["holds"].get<bool>() ? "holds" : "fails") << "\n";
        } else if (val.is_object()) {
            out << key << ":";
            for (const auto& [k2, v2] : val.items()) {
                if (v2.is_object() && v2.contains("name"))
                    out << " " << k2 << "=" << v2["name"].get<std::string>();
                else
                    out << " " << k2 << "=" << scalar_text(v2);
            }
            out << "\n";
        } else {
            out << key << ": " << scalar_text(val) << "\n";
        }
    }
}

struct Common {
    std::string format = "text";
    std::size_t bound = kDefaultEnumerationBound;
};

struct Outcome {
    Json inputs = Json::object();
    Json result = Json::object();
    int code = 0;
};

Outcome cmd_check(const std::string& model, const std::string& formula) {
    Outcome o;
    o.inputs = {{"model", model}, {"formula", formula}};
    auto k = load_model(model);
    auto phi = parse_formula(formula);
    if (k.is_classical()) {
        o.result["value"] = check_ctl_star(k, phi);
        o.result["route"] = "ModelCheck";
    } else {
        o.result["value"] = truth_json(eval_compositional3(k, phi));
        o.result["route"] = "Compositional3";
    }
    return o;
}

Outcome cmd_vacuity(const std::string& model, const std::string& formula, const std::string& sub,
                    const std::string& via, std::optional<std::size_t> bounded, std::size_t bound) {
    Outcome o;
    o.inputs = {{"model", model}, {"formula", formula}, {"sub", sub}};
    auto k = load_model(model);
    auto phi = parse_formula(formula);
    auto psi = parse_formula(sub);
    if (via == "auto") {
        VacuityOptions opts;
        opts.enumeration_bound = bound;
        opts.bounded_validity = bounded;
        auto v = decide_bisim_vacuity(phi, psi, k, opts);
        o.result = verdict_json(v);
        if (v.status == VacuityStatus::Unknown) o.code = kUnknownExit;
    } else if (via == "thorough") {
        auto v = vacuity_via_thorough(phi, psi, k, ThoroughOptions{bound});
        o.result = verdict_json(v);
        if (v.status == VacuityStatus::Unknown) o.code = kUnknownExit;
    } else if (via == "mono") {
        auto m = is_mon_vacuous(phi, psi, k);
        o.result = {{"status", m.vacuous ? "Vacuous" : "NonVacuous"}, {"route", "Monotone"}, {"monotone", m.monotone}};
    } else if (via == "satx") {
        bool holds = check_ctl_star(k, phi);
        bool vac = holds ? is_sat_vacuous(phi, psi, k) : is_fal_vacuous(phi, psi, k);
        o.result = {{"status", vac ? "Vacuous" : "NonVacuous"}, {"route", holds ? "SatX" : "FalX"}};
    } else {
        auto s = structure_vacuous(phi, psi, k, bound);
        o.result = {{"status", s.vacuous ? "Vacuous" : "NonVacuous"}, {"route", "Structure"}};
        if (s.witness)
            o.result["witness"] = {{"satisfying", names_json(k, s.witness->first)},
                                   {"falsifying", names_json(k, s.witness->second)}};
    }
    return o;
}

Outcome cmd_qctl(const std::string& model, const std::string& formula, const std::string& semantics,
                 std::size_t bound) {
    Outcome o;
    o.inputs = {{"model", model}, {"formula", formula}, {"semantics", semantics}};
    auto k = load_model(model);
    auto q = parse_formula(formula);
    QctlOptions opts{bound};
    if (semantics == "structure") {
        auto s = eval_structural(k, q, opts);
        o.result["value"] = s.value;
        o.result["route"] = route_name(QRoute::BruteForceY);
        if (s.witness) o.result["witness"] = {{"labeling", names_json(k, *s.witness)}};
        return o;
    }
    auto r = semantics == "tree" ? eval_tree(k, q, opts) : eval_bisimulation(k, q, opts);
    o.result = qresult_json(r);
    if (r.labeling) o.result["witness"]["labeling"] = names_json(k, *r.labeling);
    if (!r.value) o.code = kUnknownExit;
    return o;
}

std::vector<std::string> default_props(const KripkeStructure& a, const KripkeStructure& b) {
    std::vector<std::string> out;
    for (const auto& p : a.props())
        if (b.has_prop(p)) out.push_back(p);
    return out;
}

Outcome cmd_relation(bool bisim, const std::string& ma, const std::string& mb, const std::string& props) {
    Outcome o;
    o.inputs = {{"model", ma}, {"other", mb}, {"props", props}};
    auto a = load_model(ma), b = load_model(mb);
    auto ps = props.empty() ? default_props(a, b) : split_list(props);
    auto rel = bisim ? bisimilar_over(a, b, ps) : simulates_over(a, b, ps);
    o.result["value"] = rel.has_value();
    o.result["route"] = bisim ? "PartitionRefinement" : "SimulationRefinement";
    if (rel) o.result["witness"] = {{"relation", rel->to_string(a, b)}};
    return o;
}

Outcome cmd_quotient(const std::string& model, const std::string& props) {
    Outcome o;
    o.inputs = {{"model", model}};
    auto k = load_model(model);
    auto q = props.empty() ? quotient_bisim(k) : quotient_bisim(k, split_list(props));
    o.result["output"] = render_kripke(q);
    return o;
}

Outcome cmd_translate(const std::string& kind, const std::string& arg, const std::string& order,
                      const std::string& z) {
    Outcome o;
    o.inputs = {{"kind", kind}, {"input", arg}};
    if (kind == "ez" || kind == "decode") {
        auto k = load_model(arg);
        if (kind == "ez") {
            auto ord = order.empty() ? PropOrdering::of(k) : PropOrdering(split_list(order));
            o.result["output"] = render_kripke(ez_encode(k, ord, z));
        } else {
            if (order.empty()) throw Error("decode needs --order");
            o.result["output"] = render_kripke(decode_single_prop(k, PropOrdering(split_list(order)), z));
        }
        return o;
    }
    auto psi = parse_formula(arg);
    PropOrdering ord = order.empty() ? PropOrdering([&] {
        auto ps = props_of(psi);
        return std::vector<std::string>(ps.begin(), ps.end());
    }())
                                     : PropOrdering(split_list(order));
    Formula out = kind == "f" ? f_translate_ctl(psi, ord, z) : g_translate_ctl_star(psi, ord, z);
    o.result["output"] = render_formula(out);
    return o;
}

std::string cell(const std::optional<bool>& v, const std::string& route) {
    std::string s = v ? (*v ? "true" : "false") : "unknown";
    return s + " (" + route + ")";
}

} // namespace

std::string table1_text() {
    const std::vector<std::pair<std::string, std::string>> props = {
        {"P1", "AG (x -> AX x)"},
        {"P2", "AG ((AX x) | (AX !x))"},
        {"P3", "A((X x) | (X !x))"},
    };
    std::ostringstream out;
    auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                   const std::string& e) {
        out << a << std::string(7 - a.size(), ' ') << b << std::string(12 - b.size(), ' ') << c
            << std::string(22 - c.size(), ' ') << d << std::string(34 - d.size(), ' ') << e << "\n";
    };
    row("model", "property", "structure", "tree", "bisimulation");
    for (const auto& [pname, ptext] : props)
        for (const std::string mname : {"L", "M"}) {
            auto k = fixture(mname);
            auto q = Formula::Forall("x", parse_formula(ptext));
            auto s = eval_structural(k, q);
            auto t = eval_tree(k, q);
            auto b = eval_bisimulation(k, q);
            row(mname, "forall x." + pname, cell(s.value, route_name(QRoute::BruteForceY)),
                cell(t.value, route_name(t.route)), cell(b.value, route_name(b.route)));
        }
    return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"vacmc: vacuity detection and CTL* model checking over Kripke structures", "vacmc"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--bound", common.bound, "Largest n for 2^n enumerations")->capture_default_str();

    std::string model, other, formula, sub, via = "auto", semantics = "bisim", props, kind, order, z = "z";
    std::optional<std::size_t> bounded;

    auto* check = app.add_subcommand("check", "Check a formula (3-valued when the model has maybe labels)");
    check->add_option("model", model, "Model file or fixture name")->required();
    check->add_option("formula", formula, "CTL* formula")->required();

    auto* vac = app.add_subcommand("vacuity", "Decide whether a subformula affects the verdict");
    vac->add_option("model", model)->required();
    vac->add_option("formula", formula)->required();
    vac->add_option("--sub", sub, "Subformula")->required();
    vac->add_option("--via", via, "Algorithm")
        ->check(CLI::IsMember({"auto", "mono", "satx", "thorough", "structure"}))
        ->capture_default_str();
    vac->add_option("--bounded-validity", bounded, "Probe validity on structures up to N states");

    auto* bis = app.add_subcommand("bisim", "Check bisimilarity over a set of propositions");
    auto* sim = app.add_subcommand("simulates", "Check that the first model simulates the second");
    for (auto* c : {bis, sim}) {
        c->add_option("a", model)->required();
        c->add_option("b", other)->required();
        c->add_option("--props", props, "Comma-separated propositions (default: shared ones)");
    }

    auto* quot = app.add_subcommand("quotient", "Print the bisimulation quotient");
    quot->add_option("model", model)->required();
    quot->add_option("--props", props);

    auto* qctl = app.add_subcommand("qctl", "Evaluate a quantified formula");
    qctl->add_option("model", model)->required();
    qctl->add_option("formula", formula)->required();
    qctl->add_option("--semantics", semantics)
        ->check(CLI::IsMember({"structure", "tree", "bisim"}))
        ->capture_default_str();

    auto* tr = app.add_subcommand("translate", "Single-proposition encodings");
    tr->add_option("kind", kind)->required()->check(CLI::IsMember({"ez", "f", "g", "decode"}));
    tr->add_option("input", formula, "Model (ez, decode) or formula (f, g)")->required();
    tr->add_option("--order", order, "Proposition order, comma-separated");
    tr->add_option("--marker", z, "Marker proposition")->capture_default_str();

    auto* t1 = app.add_subcommand("table1", "Print the QCTL satisfaction grid for L and M");

    std::vector<const char*> argv{"vacmc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; every other usage error is a plain failure.
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::string command;
    try {
        if (check->parsed()) {
            command = "check";
            o = cmd_check(model, formula);
        } else if (vac->parsed()) {
            command = "vacuity";
            o = cmd_vacuity(model, formula, sub, via, bounded, common.bound);
        } else if (bis->parsed() || sim->parsed()) {
            command = bis->parsed() ? "bisim" : "simulates";
            o = cmd_relation(bis->parsed(), model, other, props);
        } else if (quot->parsed()) {
            command = "quotient";
            o = cmd_quotient(model, props);
        } else if (qctl->parsed()) {
            command = "qctl";
            o = cmd_qctl(model, formula, semantics, common.bound);
        } else if (tr->parsed()) {
            command = "translate";
            o = cmd_translate(kind, formula, order, z);
        } else if (t1->parsed()) {
            command = "table1";
            o.result["output"] = table1_text();
        }
    } catch (const Error& e) {
        err << "vacmc " << command << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "vacmc " << command << ": internal error: " << e.what() << "\n";
        return 1;
    }

    if (common.format == "json") {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        const char* seed = std::getenv("VACMC_SEED");
        Json report{{"command", command},
                    {"inputs", o.inputs},
                    {"result", o.result},
                    {"meta", {{"seed", seed ? Json(seed) : Json()}, {"elapsed_ms", ms}}}};
        out << report.dump(2) << "\n";
    } else {
        print_text(o.result, out);
    }
    return o.code;
}

} // namespace vacmc::cli
