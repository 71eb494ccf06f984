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

#include <fstream>
#include <map>
#include <sstream>

#include "vacmc/error.hpp"
#include "vacmc/kripke.hpp"

namespace vacmc {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(const std::string& s, bool commas_separate) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || (commas_separate && c == ',')) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

struct StateDecl {
    std::string name;
    std::vector<std::string> labels;
    std::size_t line;
};

} // namespace

KripkeStructure parse_kripke(std::string_view text) {
    std::string name;
    std::vector<std::string> props;
    bool have_props = false;
    std::vector<std::string> init_names;
    std::size_t init_line = 0;
    std::vector<StateDecl> decls;
    std::vector<std::pair<std::string, std::string>> trans;
    std::vector<std::size_t> trans_lines;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) -> ModelError {
        return ModelError("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.rfind("kripke", 0) == 0 && (line.size() == 6 || std::isspace(static_cast<unsigned char>(line[6])))) {
            name = trim(line.substr(6));
            if (!valid_identifier(name)) throw fail("invalid structure name '" + name + "'");
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) throw fail("expected 'key: value'");
        std::string key = trim(line.substr(0, colon));
        std::string rest = line.substr(colon + 1);
        if (key == "props") {
            props = words(rest, true);
            have_props = true;
        } else if (key == "init") {
            auto w = words(rest, false);
            init_names.insert(init_names.end(), w.begin(), w.end());
            init_line = lineno;
        } else if (key.rfind("state", 0) == 0 && key.size() > 5 && std::isspace(static_cast<unsigned char>(key[5]))) {
            decls.push_back({trim(key.substr(5)), words(rest, false), lineno});
        } else if (key == "trans") {
            auto w = words(rest, false);
            if (w.empty() || w.size() % 2 != 0) throw fail("transition line needs pairs of states");
            for (std::size_t i = 0; i < w.size(); i += 2) {
                trans.emplace_back(w[i], w[i + 1]);
                trans_lines.push_back(lineno);
            }
        } else {
            throw fail("unknown key '" + key + "'");
        }
    }
    if (name.empty()) throw ModelError("missing 'kripke NAME' header");
    if (!have_props) throw ModelError("missing 'props:' line");
    for (const auto& p : props)
        if (!valid_identifier(p) || !(p[0] >= 'a' && p[0] <= 'z'))
            throw ModelError("invalid proposition name '" + p + "'");

    std::map<std::string, StateId> index;
    std::vector<std::string> states;
    for (const auto& d : decls) {
        if (index.count(d.name)) throw ModelError("line " + std::to_string(d.line) + ": duplicate state '" + d.name + "'");
        index[d.name] = static_cast<StateId>(states.size());
        states.push_back(d.name);
    }
    std::map<std::string, std::size_t> pidx;
    for (std::size_t i = 0; i < props.size(); ++i) pidx[props[i]] = i;

    std::vector<Truth> labels(states.size() * props.size(), Truth::False);
    for (std::size_t s = 0; s < decls.size(); ++s) {
        for (const auto& item : decls[s].labels) {
            std::string pname = item;
            Truth value = Truth::True;
            if (!pname.empty() && pname[0] == '-') {
                value = Truth::False;
                pname = pname.substr(1);
            } else if (auto eq = pname.find('='); eq != std::string::npos) {
                std::string v = pname.substr(eq + 1);
                pname = pname.substr(0, eq);
                if (v == "M") value = Truth::Maybe;
                else if (v == "T") value = Truth::True;
                else if (v == "F") value = Truth::False;
                else throw ModelError("line " + std::to_string(decls[s].line) + ": bad label value '" + v + "'");
            }
            auto it = pidx.find(pname);
            if (it == pidx.end())
                throw ModelError("line " + std::to_string(decls[s].line) + ": undeclared proposition '" + pname + "'");
            labels[s * props.size() + it->second] = value;
        }
    }
    std::vector<std::vector<StateId>> succ(states.size());
    for (std::size_t i = 0; i < trans.size(); ++i) {
        auto a = index.find(trans[i].first), b = index.find(trans[i].second);
        if (a == index.end() || b == index.end()) {
            const std::string& bad = a == index.end() ? trans[i].first : trans[i].second;
            throw ModelError("line " + std::to_string(trans_lines[i]) + ": undeclared state '" + bad + "'");
        }
        succ[a->second].push_back(b->second);
    }
    std::vector<StateId> init;
    for (const auto& s : init_names) {
        auto it = index.find(s);
        if (it == index.end()) throw ModelError("line " + std::to_string(init_line) + ": undeclared state '" + s + "'");
        init.push_back(it->second);
    }
    if (init.empty()) throw ModelError("empty initial state set");
    return KripkeStructure(name, props, states, init, succ, labels);
}

std::string render_kripke(const KripkeStructure& k) {
    std::ostringstream out;
    out << "kripke " << k.name() << "\n";
    out << "props:";
    for (const auto& p : k.props()) out << ' ' << p;
    out << "\ninit:";
    for (StateId s : k.init()) out << ' ' << k.states()[s];
    out << "\n";
    for (std::size_t s = 0; s < k.num_states(); ++s) {
        out << "state " << k.states()[s] << ":";
        for (std::size_t p = 0; p < k.num_props(); ++p) {
            Truth v = k.label(static_cast<StateId>(s), p);
            if (v == Truth::True) out << ' ' << k.props()[p];
            else if (v == Truth::Maybe) out << ' ' << k.props()[p] << "=M";
        }
        out << "\n";
    }
    for (std::size_t s = 0; s < k.num_states(); ++s)
        for (StateId t : k.succ(static_cast<StateId>(s)))
            out << "trans: " << k.states()[s] << ' ' << k.states()[t] << "\n";
    return out.str();
}

KripkeStructure load_kripke(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kripke(buf.str());
}

} // namespace vacmc
