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

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "vacmc/error.hpp"
#include "vacmc/fixtures.hpp"
#include "vacmc/formula.hpp"
#include "vacmc/kripke.hpp"

namespace py = pybind11;

namespace {

py::tuple run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = vacmc::cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

// Runs a command with JSON output and returns the parsed report.
py::object report(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = vacmc::cli::run(args, out, err);
    }
    if (code == 1) throw py::value_error(err.str());
    return py::module_::import("json").attr("loads")(out.str());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Vacuity detection and CTL* model checking";
    m.attr("__version__") = VACMC_VERSION;

    m.def("run", &run, py::arg("args"),
          "Run a vacmc command line (without the program name); returns (exit_code, stdout, stderr).");

    m.def(
        "check",
        [](const std::string& model, const std::string& formula) {
            return report({"check", model, formula});
        },
        py::arg("model"), py::arg("formula"), "Model-check a formula; model is a fixture name or .kr path.");

    m.def(
        "vacuity",
        [](const std::string& model, const std::string& formula, const std::string& sub, const std::string& via,
           std::optional<std::size_t> bounded_validity) {
            std::vector<std::string> args{"vacuity", model, formula, "--sub", sub, "--via", via};
            if (bounded_validity) {
                args.push_back("--bounded-validity");
                args.push_back(std::to_string(*bounded_validity));
            }
            return report(args);
        },
        py::arg("model"), py::arg("formula"), py::arg("sub"), py::arg("via") = "auto",
        py::arg("bounded_validity") = py::none());

    m.def(
        "qctl",
        [](const std::string& model, const std::string& formula, const std::string& semantics) {
            return report({"qctl", model, formula, "--semantics", semantics});
        },
        py::arg("model"), py::arg("formula"), py::arg("semantics") = "bisim");

    m.def(
        "bisim",
        [](const std::string& a, const std::string& b) { return report({"bisim", a, b}); }, py::arg("a"),
        py::arg("b"));

    m.def("table1", &vacmc::cli::table1_text);
    m.def("fixtures", &vacmc::fixture_names);
    m.def(
        "fixture_text", [](const std::string& name) { return vacmc::fixture_text(name); }, py::arg("name"));
    m.def(
        "normalize_formula", [](const std::string& text) { return vacmc::render_formula(vacmc::parse_formula(text)); },
        py::arg("text"));

    py::register_exception<vacmc::Error>(m, "VacmcError", PyExc_ValueError);
}
