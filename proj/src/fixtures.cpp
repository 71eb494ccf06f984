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

#include "vacmc/fixtures.hpp"

#include <map>

#include "vacmc/error.hpp"

namespace vacmc {

namespace detail {
const std::map<std::string, std::string>& fixture_texts();
}

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : detail::fixture_texts()) out.push_back(name);
    return out;
}

const std::string& fixture_text(const std::string& name) {
    const auto& texts = detail::fixture_texts();
    auto it = texts.find(name);
    if (it == texts.end()) throw Error("unknown fixture '" + name + "'");
    return it->second;
}

KripkeStructure fixture(const std::string& name) { return parse_kripke(fixture_text(name)); }

} // namespace vacmc
