#include "fuslim/json_io.hpp"

#include <fstream>

#include "fuslim/constructions.hpp"

namespace fuslim {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

std::shared_ptr<const Group> group_from_json(const Json& j) {
    try {
        if (j.contains("cayley")) {
            std::vector<std::vector<int>> table = j.at("cayley");
            return std::make_shared<Group>(from_cayley(table));
        }
        int degree = j.at("degree");
        std::vector<std::vector<int>> gens = j.at("generators");
        return std::make_shared<Group>(from_permutations(degree, gens));
    } catch (const Json::exception& e) {
        throw input_error(std::string("bad group JSON: ") + e.what());
    }
}

bool is_builtin_group(const std::string& name) {
    if (name.rfind("b3r-", 0) == 0 || name.rfind("ex43-", 0) == 0) return true;
    for (const char* n :
         {"d8", "q8", "sd16", "d16", "q16", "x27", "x125", "s4", "c2", "c3", "c4", "c3c3"})
        if (name == n) return true;
    return false;
}

std::shared_ptr<const Group> builtin_group(const std::string& name) {
    if (name == "d8") return build_2group(TwoGroupKind::Dihedral, 8);
    if (name == "d16") return build_2group(TwoGroupKind::Dihedral, 16);
    if (name == "q8") return build_2group(TwoGroupKind::Quaternion, 8);
    if (name == "q16") return build_2group(TwoGroupKind::Quaternion, 16);
    if (name == "sd16") return build_2group(TwoGroupKind::Semidihedral, 16);
    if (name == "x27") return build_extraspecial(3);
    if (name == "x125") return build_extraspecial(5);
    if (name == "s4")
        return std::make_shared<Group>(from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}));
    if (name == "c2") return std::make_shared<Group>(from_permutations(2, {{1, 0}}));
    if (name == "c3") return std::make_shared<Group>(from_permutations(3, {{1, 2, 0}}));
    if (name == "c4") return std::make_shared<Group>(from_permutations(4, {{1, 2, 3, 0}}));
    if (name == "c3c3")
        return std::make_shared<Group>(
            from_permutations(6, {{1, 2, 0, 3, 4, 5}, {0, 1, 2, 4, 5, 3}}));
    if (name.rfind("b3r-", 0) == 0) {
        int r = 0, g = 0;
        if (sscanf(name.c_str(), "b3r-%d-%d", &r, &g) != 2)
            throw input_error("bad b3r name: " + name);
        return build_b3r(r, g).G;
    }
    if (name.rfind("ex43-p", 0) == 0) {
        int p = 0;
        if (sscanf(name.c_str(), "ex43-p%d", &p) != 1)
            throw input_error("bad ex43 name: " + name);
        return build_example43(uint32_t(p)).S;
    }
    throw input_error("unknown builtin group: " + name);
}

std::shared_ptr<const Group> load_group(const std::string& path_or_builtin) {
    if (is_builtin_group(path_or_builtin)) return builtin_group(path_or_builtin);
    return group_from_json(load_json_file(path_or_builtin));
}

FusionSystem fusion_from_json(const Json& j) {
    std::string type;
    try {
        type = j.at("type");
    } catch (const Json::exception& e) {
        throw input_error(std::string("bad fusion JSON: ") + e.what());
    }
    if (type == "inner") {
        return FusionSystem::inner(load_group(j.at("group")));
    }
    if (type == "ambient") {
        auto G = load_group(j.at("ambient"));
        Subgroup S;
        if (j.contains("sylow_generators")) {
            std::vector<elt> gens;
            for (int x : j.at("sylow_generators")) {
                if (x < 0 || x >= G->n) throw input_error("sylow generator id out of range");
                gens.push_back(elt(x));
            }
            S = closure(*G, gens);
        } else {
            // default: the deterministic Sylow subgroup at the stated prime,
            // or the largest prime if none given
            uint32_t p = j.contains("p") ? uint32_t(j.at("p")) : 0;
            if (p == 0) {
                for (uint32_t d = 2; d <= uint32_t(G->n); ++d)
                    if (G->n % d == 0 && is_prime(d)) p = d;
            }
            S = sylow_subgroup(*G, p);
        }
        return FusionSystem::ambient(G, S);
    }
    if (type == "generated") {
        auto S = load_group(j.at("group"));
        std::vector<std::pair<std::vector<elt>, std::vector<elt>>> extra;
        if (j.contains("extra_automorphisms"))
            for (const Json& e : j.at("extra_automorphisms")) {
                std::vector<elt> gens, images;
                for (int x : e.at("subgroup")) gens.push_back(elt(x));
                for (int x : e.at("images")) images.push_back(elt(x));
                extra.emplace_back(std::move(gens), std::move(images));
            }
        return FusionSystem::generated(S, extra);
    }
    throw input_error("unknown fusion system type: " + type);
}

bool is_builtin_fusion(const std::string& name) {
    if (name == "s4d8") return true;
    return is_builtin_group(name);
}

FusionSystem load_fusion(const std::string& path_or_builtin) {
    if (path_or_builtin == "s4d8") {
        auto G = builtin_group("s4");
        return FusionSystem::ambient(G, sylow_subgroup(*G, 2));
    }
    if (is_builtin_group(path_or_builtin))
        return FusionSystem::inner(builtin_group(path_or_builtin));
    return fusion_from_json(load_json_file(path_or_builtin));
}

ContravariantFunctorData functor_from_json(const Json& j, const OrbitCategory& cat) {
    ContravariantFunctorData N;
    N.cat = &cat;
    N.p = cat.fusion().p();
    N.dims.assign(cat.nobj(), -1);
    try {
        if (int(j.at("schema")) != 1) throw input_error("functor file: unsupported schema");
        for (const Json& o : j.at("objects")) {
            int a = o.at("index");
            if (a < 0 || a >= cat.nobj()) throw input_error("functor file: object out of range");
            N.dims[a] = o.at("dim");
        }
        for (int a = 0; a < cat.nobj(); ++a)
            if (N.dims[a] < 0) throw input_error("functor file: missing object dimension");
        allocate_functor_slots(cat, N.contra);
        std::vector<std::vector<std::vector<char>>> seen(cat.nobj());
        for (int a = 0; a < cat.nobj(); ++a) {
            seen[a].resize(cat.nobj());
            for (int b = 0; b < cat.nobj(); ++b)
                seen[a][b].assign(cat.nclasses(a, b), 0);
        }
        for (const Json& mj : j.at("maps")) {
            int a = mj.at("src"), b = mj.at("dst"), c = mj.at("cls");
            if (a < 0 || a >= cat.nobj() || b < 0 || b >= cat.nobj() || c < 0 ||
                c >= cat.nclasses(a, b))
                throw input_error("functor file: map index out of range");
            FpMatrix m(N.dims[a], N.dims[b], N.p);
            std::vector<std::vector<long>> rows = mj.at("matrix");
            if (int(rows.size()) != m.rows) throw input_error("functor file: bad matrix shape");
            for (int i = 0; i < m.rows; ++i) {
                if (int(rows[i].size()) != m.cols)
                    throw input_error("functor file: bad matrix shape");
                for (int k = 0; k < m.cols; ++k) {
                    long v = rows[i][k] % long(N.p);
                    if (v < 0) v += N.p;
                    m.at(i, k) = uint32_t(v);
                }
            }
            N.contra[a][b][c] = std::move(m);
            seen[a][b][c] = 1;
        }
        for (int a = 0; a < cat.nobj(); ++a)
            for (int b = 0; b < cat.nobj(); ++b)
                for (int c = 0; c < cat.nclasses(a, b); ++c)
                    if (!seen[a][b][c]) throw input_error("functor file: missing map");
    } catch (const Json::exception& e) {
        throw input_error(std::string("bad functor JSON: ") + e.what());
    }
    if (!N.is_functorial()) throw input_error("functor file: data is not functorial");
    return N;
}

Json group_inspect_json(const Group& g) {
    Json out;
    out["schema"] = 1;
    out["order"] = g.n;
    out["center_order"] = int(center(g).size());
    auto lat = enumerate_subgroups(g);
    out["num_subgroups"] = lat.size();
    out["num_classes"] = int(lat.classes.size());
    Json classes = Json::array();
    for (size_t c = 0; c < lat.classes.size(); ++c) {
        const Subgroup& rep = lat.subs[lat.class_rep[c]];
        Json jc;
        jc["order"] = rep.order();
        jc["class_size"] = int(lat.classes[c].size());
        Json gens = Json::array();
        for (elt x : rep.gens) gens.push_back(int(x));
        jc["rep_generators"] = gens;
        classes.push_back(jc);
    }
    out["classes"] = classes;
    return out;
}

}  // namespace fuslim
