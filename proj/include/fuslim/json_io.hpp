#pragma once

// File formats and builtin registries for the command-line tools. JSON is the
// single interchange format; all reports carry "schema": 1 and are rendered
// deterministically.

#include <memory>
#include <string>

#include "json.hpp"

#include "fuslim/fusion.hpp"
#include "fuslim/mackey.hpp"

namespace fuslim {

using Json = nlohmann::ordered_json;

// {"degree": n, "generators": [[...], ...]} or {"cayley": [[...], ...]}
std::shared_ptr<const Group> group_from_json(const Json& j);
std::shared_ptr<const Group> load_group(const std::string& path_or_builtin);

// builtin group names: d8 q8 sd16 d16 q16 x27 x125 s4 c2 c3 c4 c3c3,
// b3r-<r>-<gamma>, ex43-p2, ex43-p3
std::shared_ptr<const Group> builtin_group(const std::string& name);
bool is_builtin_group(const std::string& name);

// fusion system JSON:
// {"type": "inner"|"ambient"|"generated", "group": <path or builtin>,
//  "ambient": <path or builtin>, "sylow_generators": [ids],
//  "extra_automorphisms": [{"subgroup": [gen ids], "images": [ids]}]}
FusionSystem fusion_from_json(const Json& j);
// builtin systems: d8 q8 sd16 d16 x27 x125 s4d8 b3r-<r>-<g> ex43-p2 ex43-p3
FusionSystem load_fusion(const std::string& path_or_builtin);
bool is_builtin_fusion(const std::string& name);

// contravariant functor file over the centric skeleton of F:
// {"schema": 1, "objects": [{"index": a, "order": o, "dim": d}...],
//  "maps": [{"src": a, "dst": b, "cls": c, "matrix": [[...]]}]}
// Validates shape and functoriality (input_error otherwise).
ContravariantFunctorData functor_from_json(const Json& j, const OrbitCategory& cat);

Json group_inspect_json(const Group& g);

Json load_json_file(const std::string& path);

}  // namespace fuslim
