// Command-line entry point: group inspection, higher-limit computations, and
// the reproduction certificates.
//
// Exit codes: 0 pass, 1 mathematical fail, 2 input error, 3 cap exceeded.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fuslim/constructions.hpp"
#include "fuslim/json_io.hpp"
#include "fuslim/limits.hpp"
#include "fuslim/repro.hpp"

using namespace fuslim;

namespace {

void render_text(const Json& j, int indent = 0) {
    std::string pad(size_t(indent) * 2, ' ');
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) {
                std::cout << pad << k << ":\n";
                render_text(v, indent + 1);
            } else {
                std::cout << pad << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (auto& v : j) {
            if (v.is_object() || v.is_array()) {
                std::cout << pad << "-\n";
                render_text(v, indent + 1);
            } else {
                std::cout << pad << "- " << v.dump() << "\n";
            }
        }
    } else {
        std::cout << pad << j.dump() << "\n";
    }
}

int emit(const Json& report, bool text, bool pass) {
    if (text)
        render_text(report);
    else
        std::cout << report.dump(2) << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Mackey-functor and higher-limit computations for fusion systems"};
    app.require_subcommand(1);
    bool text = false;
    app.add_flag("--text", text, "render reports as indented text instead of JSON");

    auto* inspect = app.add_subcommand("group-inspect", "order, center and subgroup classes");
    std::string inspect_input;
    inspect->add_option("input", inspect_input, "group file or builtin name")->required();

    auto* limits = app.add_subcommand("limits", "higher limits over the centric orbit category");
    std::string limits_system, limits_functor = "h1", limits_method = "auto";
    int limits_degree = -1;
    long limits_cap = kComplexDimCap;
    uint64_t limits_seed = 0;
    limits->add_option("system", limits_system, "fusion system file or builtin name")->required();
    limits->add_option("--functor", limits_functor, "h0, h1, or a functor JSON file");
    limits->add_option("--max-degree", limits_degree, "highest degree to compute (default n+3)");
    limits->add_option("--method", limits_method, "auto, cochain, or shift");
    limits->add_option("--cap", limits_cap, "total cochain dimension cap");
    limits->add_option("--seed", limits_seed, "seed recorded in the report");

    auto* repro = app.add_subcommand("repro", "reproduction certificates");
    std::string repro_name;
    uint32_t repro_p = 2;
    uint64_t repro_seed = 2024;
    int repro_case = 0;
    std::string repro_group = "d8";
    bool deep = false;
    repro->add_option("name", repro_name, "example43 | b3r | acyclicity | boundB | thm63")
        ->required();
    repro->add_option("--p", repro_p, "prime for example43 (2, or 3 with --deep)");
    repro->add_option("--seed", repro_seed, "seed for sampled checks");
    repro->add_option("--case", repro_case, "theorem case for thm63 (1..4; 0 = all)");
    repro->add_option("--group", repro_group, "system for boundB");
    repro->add_flag("--deep", deep, "enable order-729 computations");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*inspect) {
            auto G = load_group(inspect_input);
            Json j = group_inspect_json(*G);
            return emit(j, text, true);
        }
        if (*limits) {
            FusionSystem F = load_fusion(limits_system);
            OrbitCategory cent(F, true);
            ContravariantFunctorData N;
            if (limits_functor == "h0")
                N = contravariant_part(h0_functor(cent));
            else if (limits_functor == "h1")
                N = contravariant_part(h1_functor(cent));
            else
                N = functor_from_json(load_json_file(limits_functor), cent);
            SharpnessReport rep;
            if (limits_method == "shift")
                rep = sharpness_report_shift(N, limits_degree, true);
            else if (limits_method == "cochain")
                rep = sharpness_report(N, limits_degree, limits_cap);
            else {
                try {
                    rep = sharpness_report(N, limits_degree, limits_cap);
                } catch (const cap_exceeded&) {
                    rep = sharpness_report_shift(N, limits_degree, true);
                }
            }
            Json j;
            j["schema"] = 1;
            j["command"] = "limits";
            j["system"] = limits_system;
            j["functor"] = limits_functor;
            j["method"] = rep.method;
            j["seed"] = limits_seed;
            j["n"] = rep.n;
            j["max_degree"] = rep.max_degree;
            Json dims;
            for (size_t i = 0; i < rep.dims.size(); ++i)
                dims["lim" + std::to_string(i)] = rep.dims[i];
            j["dims"] = dims;
            j["pass"] = rep.pass;
            return emit(j, text, rep.pass);
        }
        if (*repro) {
            Json j;
            if (repro_name == "example43") {
                if (repro_p != 2 && !deep) throw input_error("example43 with p != 2 needs --deep");
                j = repro_example43(repro_p);
            } else if (repro_name == "b3r") {
                j = repro_b3r(deep);
            } else if (repro_name == "acyclicity") {
                j = repro_acyclicity();
            } else if (repro_name == "boundB") {
                j = repro_boundB(repro_group, repro_seed);
            } else if (repro_name == "thm63") {
                if (repro_case != 0) {
                    j = repro_thm63(repro_case);
                } else {
                    Json all;
                    all["schema"] = 1;
                    all["command"] = "repro";
                    all["name"] = "thm63";
                    Json cases = Json::array();
                    bool pass = true;
                    for (int c = 1; c <= 4; ++c) {
                        Json jc = repro_thm63(c);
                        if (!jc["pass"].get<bool>()) pass = false;
                        cases.push_back(jc);
                    }
                    all["cases"] = cases;
                    all["pass"] = pass;
                    j = all;
                }
            } else {
                throw input_error("unknown repro target: " + repro_name);
            }
            return emit(j, text, j["pass"].get<bool>());
        }
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
