#include "fuslim/repro.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "fuslim/constructions.hpp"
#include "fuslim/limits.hpp"
#include "fuslim/mackeyfication.hpp"
#include "fuslim/simple.hpp"

namespace fuslim {

namespace {

void add_check(Json& checks, const std::string& name, bool pass) {
    Json c;
    c["name"] = name;
    c["pass"] = pass;
    checks.push_back(c);
}

bool overall(const Json& checks) {
    for (const Json& c : checks)
        if (!c.at("pass")) return false;
    return true;
}

struct NamedSystem {
    std::string name;
    FusionSystem F;
};

std::vector<NamedSystem> mandatory_systems() {
    std::vector<NamedSystem> out;
    out.push_back({"d8", load_fusion("d8")});
    out.push_back({"s4d8", load_fusion("s4d8")});
    out.push_back({"x27", load_fusion("x27")});
    return out;
}

}  // namespace

Json repro_example43(uint32_t p) {
    Json out;
    out["schema"] = 1;
    out["command"] = "repro";
    out["name"] = "example43";
    out["p"] = int(p);
    Json checks = Json::array();

    Example43 ex = build_example43(p);
    out["order"] = ex.S->n;
    out["convention"] = ex.convention;
    Json cs = Json::array();
    for (long v : ex.c_super) cs.push_back(v);
    out["c_column_superdiagonal"] = cs;

    FusionSystem F = FusionSystem::inner(ex.S);
    int q = F.object_of_elems(ex.Q);
    int pp = F.object_of_elems(ex.P);
    int u = F.object_of_elems(ex.U);
    int top = F.nobjects() - 1;

    // (i) subgroup geometry and centricity
    std::set<elt> prod;
    for (elt a : ex.P)
        for (elt b : ex.Q) prod.insert(ex.S->times(a, b));
    add_check(checks, "PQ = S", int(prod.size()) == ex.S->n);
    add_check(checks, "P ∩ Q = U", F.lattice().intersection(q, pp) == u);
    add_check(checks, "U not centric", !F.is_centric(u));
    add_check(checks, "P centric", F.is_centric(pp));
    add_check(checks, "Q centric", F.is_centric(q));

    // (ii) the rightmost column of C = I + A + ... + A^{p-1}
    add_check(checks, "c_1 nonzero mod p (superdiagonal)", ex.c_super[0] % long(p) != 0);
    bool rest_zero = true;
    for (size_t i = 1; i < ex.c_super.size(); ++i)
        if (ex.c_super[i] % long(p) != 0) rest_zero = false;
    add_check(checks, "c_2..c_p zero mod p", rest_zero);
    add_check(checks, "orientation convention recorded", !ex.convention.empty());

    // (iii)-(iv) the Mackey violation
    OrbitCategory cent(F, true);
    MackeyFunctorData Mc;
    if (p == 2) {
        // at desk scale the full orbit category is cheap, so also certify
        // that H^1 is an honest Mackey functor before restricting
        OrbitCategory full(F, false);
        MackeyFunctorData M = h1_functor(full);
        add_check(checks, "H^1 Mackey over O(F)", verify_axioms(M).ok());
        Mc = restrict_to_centrics(M, cent);
    } else {
        Mc = h1_functor(cent);
    }
    FpMatrix rt = fp_mul(Mc.r(top, pp), Mc.t(top, q));
    add_check(checks, "r∘t: H^1(Q) -> H^1(S) -> H^1(P) nonzero", !rt.is_zero());
    // the Mackey instance at (S; P, Q): the truncated double-coset sum is
    // empty, so the nonzero composite above is already a violation witness
    bool truncated_empty = F.truncated_double_cosets(pp, top, q, true).empty();
    bool witness = truncated_empty && !rt.is_zero();
    if (p == 2) {
        VerifyOptions opt;
        opt.max_failures = 100000;
        AxiomReport rep = verify_axioms(Mc, opt);
        bool listed = false;
        for (const AxiomFailure& f : rep.failures)
            if (f.axiom == "Mackey decomposition" && f.P == top &&
                ((f.Q == pp && f.R == q) || (f.Q == q && f.R == pp)))
                listed = true;
        witness = witness && !rep.ok() && listed;
    }
    add_check(checks, "H^1 restriction fails Mackey with witness (S; P, Q)", witness);

    // (v) sharpness
    ContravariantFunctorData N = contravariant_part(Mc);
    SharpnessReport sharp;
    if (p == 2)
        sharp = sharpness_report(N, 4);
    else
        sharp = sharpness_report_shift(N, 4, true);
    out["method"] = sharp.method;
    Json dims = Json::array();
    for (long d : sharp.dims) dims.push_back(d);
    out["h1_lim_dims"] = dims;
    bool vanish = true;
    for (int i = 1; i <= 4 && i < int(sharp.dims.size()); ++i)
        if (sharp.dims[i] != 0) vanish = false;
    add_check(checks, "lim^i H^1 = 0 for i = 1..4", vanish);

    out["checks"] = checks;
    out["pass"] = overall(checks);
    return out;
}

Json repro_b3r(bool deep) {
    Json out;
    out["schema"] = 1;
    out["command"] = "repro";
    out["name"] = "b3r";
    Json cases = Json::array();
    std::vector<std::pair<int, int>> specs{{4, 0}, {4, 2}, {5, 0}, {5, 1}};
    if (deep) {
        specs.push_back({6, 0});
        specs.push_back({6, 1});
        specs.push_back({6, 2});
    }
    bool all = true;
    for (auto [r, g] : specs) {
        B3rGroup B = build_b3r(r, g);
        B3rReport rep = check_b3r(B);
        Json jc;
        jc["r"] = r;
        jc["gamma"] = g;
        jc["order"] = B.G->n;
        Json checks = Json::array();
        add_check(checks, "action matrix has order 3", rep.matrix_order3);
        add_check(checks, "gamma_1 abelian of rank two with stated generator orders",
                  rep.gamma1_abelian_rank2);
        add_check(checks, "gamma_1 unique abelian of its order (characteristic)",
                  rep.gamma1_unique_abelian);
        add_check(checks, "derived subgroup inside gamma_1", rep.contains_derived);
        add_check(checks, "s acts through the matrix columns", rep.action_matches);
        add_check(checks, "center of order 3 with the stated generator", rep.center_as_stated);
        add_check(checks, "(d1) P <= gamma_1 centric iff P = gamma_1", rep.d1);
        add_check(checks, "(d2) nontrivial K contains Z(B)", rep.d2_contains_center);
        add_check(checks, "(d2) rank-one K equals Z(B)", rep.d2_rank_one);
        add_check(checks, "(d2) P not in gamma_1 centric iff K nontrivial", rep.d2_centric);
        add_check(checks, "F-centric classification", rep.cor62);
        jc["checks"] = checks;
        jc["pass"] = overall(checks);
        if (!jc["pass"].get<bool>()) all = false;
        cases.push_back(jc);
    }
    out["cases"] = cases;
    out["pass"] = all;
    return out;
}

Json repro_acyclicity() {
    Json out;
    out["schema"] = 1;
    out["command"] = "repro";
    out["name"] = "acyclicity";
    Json rows = Json::array();
    bool all = true;
    for (NamedSystem& ns : mandatory_systems()) {
        const FusionSystem& F = ns.F;
        OrbitCategory full(F, false), cent(F, true);
        int n = cent.chain_bound();
        std::vector<std::pair<std::string, MackeyFunctorData>> functors;
        functors.emplace_back("h0", h0_functor(cent));
        functors.emplace_back("representable@top",
                              representable_functor(cent, F.nobjects() - 1));
        functors.emplace_back("representable@min", representable_functor(cent, cent.object(0)));
        // three centric simple pairs, restricted from the full category
        int added = 0;
        for (int a = full.nobj() - 1; a >= 0 && added < 3; --a) {
            if (!F.is_centric(full.object(a))) continue;
            for (const OutModule& V : enumerate_simple_modules(full, a)) {
                if (added >= 3) break;
                MackeyFunctorData S = build_S_quotient(full, V);
                functors.emplace_back(
                    "S@order" + std::to_string(
                                    F.lattice().subs[full.object(a)].order()) +
                        "dimV" + std::to_string(V.dim),
                    restrict_to_centrics(S, cent));
                ++added;
            }
        }
        for (auto& [fname, M] : functors) {
            Json row;
            row["system"] = ns.name;
            row["functor"] = fname;
            bool mackey = verify_axioms(M).ok();
            row["mackey"] = mackey;
            SharpnessReport rep = sharpness_report(contravariant_part(M), n + 3);
            Json dims = Json::array();
            for (long d : rep.dims) dims.push_back(d);
            row["dims"] = dims;
            row["pass"] = mackey && rep.pass;
            if (!row["pass"].get<bool>()) all = false;
            rows.push_back(row);
        }
    }
    out["functors"] = rows;
    out["pass"] = all;
    return out;
}

Json repro_boundB(const std::string& system, uint64_t seed) {
    Json out;
    out["schema"] = 1;
    out["command"] = "repro";
    out["name"] = "boundB";
    out["system"] = system;
    out["seed"] = seed;
    FusionSystem F = load_fusion(system);
    OrbitCategory cent(F, true);
    int n = cent.chain_bound();
    out["n"] = n;
    bool all_vanish = true;
    bool exhibited = false;
    Json rows = Json::array();
    for (int k = 0; k < 25; ++k) {
        ContravariantFunctorData N = random_contravariant(cent, seed + uint64_t(k));
        SharpnessReport rep = sharpness_report(N, n + 3);
        Json row;
        row["seed"] = seed + uint64_t(k);
        Json dims = Json::array();
        for (long d : rep.dims) dims.push_back(d);
        row["dims"] = dims;
        rows.push_back(row);
        if (rep.dims[n + 2] != 0 || rep.dims[n + 3] != 0) all_vanish = false;
        if (n + 1 < int(rep.dims.size()) && rep.dims[n + 1] != 0) exhibited = true;
    }
    out["functors"] = rows;
    out["all_vanish_at_n_plus_2_and_3"] = all_vanish;
    out["lim_n_plus_1_nonzero_exhibited"] = exhibited;
    out["pass"] = all_vanish;
    return out;
}

Json repro_thm63(int case_no) {
    Json out;
    out["schema"] = 1;
    out["command"] = "repro";
    out["name"] = "thm63";
    out["case"] = case_no;
    std::vector<std::string> systems;
    switch (case_no) {
        case 1:
            systems = {"d8", "sd16", "q8"};
            break;
        case 2:
            systems = {"x27"};
            break;
        case 3:
            systems = {"b3r-5-0"};
            break;
        case 4:
            systems = {"c3c3"};  // abelian Sylow: resistant
            break;
        default:
            throw input_error("thm63: case must be 1..4");
    }
    Json rows = Json::array();
    bool all = true;
    for (const std::string& sysname : systems) {
        FusionSystem F = load_fusion(sysname);
        OrbitCategory full(F, false), cent(F, true);
        int n = cent.chain_bound();
        for (const char* mname : {"h0", "h1"}) {
            Json row;
            row["system"] = sysname;
            row["M"] = mname;
            MackeyFunctorData M =
                std::string(mname) == "h0" ? h0_functor(full) : h1_functor(full);
            bool ok = verify_axioms(M).ok();
            CategoryAlgebraModule mod = as_category_module(M);
            CompositionSeries series = composition_series(mod.dense);
            row["series_length"] = series.length();
            row["series_conclusive"] = series.conclusive;
            if (!series.conclusive) ok = false;
            Json factors = Json::array();
            for (int i = 0; i + 1 < int(series.chain.size()); ++i) {
                FactorView fv = factor_view(mod.dense, series.chain[i], series.chain[i + 1]);
                FactorIdentity id = identify_factor(M, mod, fv);
                Json fj;
                int qobj = full.object(id.a);
                fj["q_order"] = F.lattice().subs[qobj].order();
                fj["v_dim"] = id.v.dim;
                bool noncentric = !F.is_centric(qobj);
                fj["q_noncentric"] = noncentric;
                if (noncentric) {
                    MackeyFunctorData S = build_S_formula(full, id.v);
                    if (case_no == 1 || case_no == 2 || case_no == 4) {
                        // proof claim: the restriction to centrics vanishes
                        bool vanishes = true;
                        for (int b = 0; b < full.nobj(); ++b)
                            if (F.is_centric(full.object(b)) && S.dims[b] != 0) vanishes = false;
                        fj["claim"] = "restriction vanishes on centrics";
                        fj["claim_pass"] = vanishes;
                        if (!vanishes) ok = false;
                    } else {
                        Criterion45Report c45 = check_criterion_45(S);
                        fj["claim"] = "r-then-t criterion";
                        fj["claim_pass"] = c45.ok;
                        if (!c45.ok) ok = false;
                    }
                }
                factors.push_back(fj);
            }
            row["factors"] = factors;
            SharpnessReport rep =
                sharpness_report(contravariant_part(restrict_to_centrics(M, cent)), n + 3);
            Json dims = Json::array();
            for (long d : rep.dims) dims.push_back(d);
            row["lim_dims"] = dims;
            row["sharp"] = rep.pass;
            if (!rep.pass) ok = false;
            row["pass"] = ok;
            if (!ok) all = false;
            rows.push_back(row);
        }
        // case 3 extra: the proof-case composition vanishes on S_{gamma1,k}
        if (case_no == 3) {
            int g1 = -1;
            B3rGroup B = build_b3r(5, 0);
            for (int a = 0; a < full.nobj(); ++a)
                if (F.lattice().subs[full.object(a)].elems == B.gamma1) g1 = a;
            if (g1 >= 0) {
                OutModule V = trivial_out_module(full, g1);
                MackeyFunctorData S = build_S_formula(full, V);
                Criterion45Report c45 = check_criterion_45(S);
                Json row;
                row["system"] = sysname;
                row["M"] = "S_{gamma1,k} (proof case 3.1 shape)";
                row["pass"] = c45.ok;
                if (!c45.ok) all = false;
                rows.push_back(row);
            }
        }
    }
    out["systems"] = rows;
    out["pass"] = all;
    return out;
}

Json criterion_oracle_equivalence() {
    Json out;
    out["schema"] = 1;
    out["name"] = "simple-functor oracle equivalence";
    Json rows = Json::array();
    bool all = true;
    std::vector<NamedSystem> systems;
    systems.push_back({"d8", load_fusion("d8")});
    systems.push_back({"x27", load_fusion("x27")});
    systems.push_back({"s4d8", load_fusion("s4d8")});
    for (NamedSystem& ns : systems) {
        const FusionSystem& F = ns.F;
        OrbitCategory full(F, false);
        for (int a = 0; a < full.nobj(); ++a) {
            for (const OutModule& V : enumerate_simple_modules(full, a)) {
                MackeyFunctorData Sq = build_S_quotient(full, V);
                MackeyFunctorData Sf = build_S_formula(full, V);
                bool dims_equal = Sq.dims == Sf.dims;
                bool tw = dims_equal && find_intertwiner(Sq, Sf).has_value();
                bool minimal = Sq.dims[a] == V.dim;
                Json row;
                row["system"] = ns.name;
                row["q_order"] = F.lattice().subs[full.object(a)].order();
                row["q_centric"] = F.is_centric(full.object(a));
                row["v_dim"] = V.dim;
                row["dims_equal"] = dims_equal;
                row["intertwiner"] = tw;
                row["pass"] = dims_equal && tw && minimal;
                if (!row["pass"].get<bool>()) all = false;
                rows.push_back(row);
            }
        }
    }
    out["pairs"] = rows;
    out["pass"] = all;
    return out;
}

Json criterion_cor35() {
    Json out;
    out["schema"] = 1;
    out["name"] = "corollary 3.5 suite";
    Json rows = Json::array();
    bool all = true;
    std::vector<NamedSystem> systems;
    systems.push_back({"d8", load_fusion("d8")});
    systems.push_back({"x27", load_fusion("x27")});
    systems.push_back({"s4d8", load_fusion("s4d8")});
    for (NamedSystem& ns : systems) {
        const FusionSystem& F = ns.F;
        OrbitCategory full(F, false);
        for (int a = 0; a < full.nobj(); ++a) {
            for (const OutModule& V : enumerate_simple_modules(full, a)) {
                MackeyFunctorData S = build_S_quotient(full, V);
                VanishingReport rep = vanishing_tests(S, V);
                Json row;
                row["system"] = ns.name;
                row["q_order"] = F.lattice().subs[full.object(a)].order();
                row["v_dim"] = V.dim;
                row["clause1"] = rep.clause1;
                row["clause2_applicable"] = rep.clause2_applicable;
                row["clause2"] = rep.clause2;
                row["clause3_hypothesis"] = rep.clause3_hypothesis;
                row["clause3"] = rep.clause3;
                row["clause4"] = rep.clause4;
                row["pass"] = rep.ok();
                if (!rep.ok()) all = false;
                rows.push_back(row);
            }
        }
    }
    out["functors"] = rows;
    out["pass"] = all;
    return out;
}

Json criterion_lemma21(uint64_t seed) {
    Json out;
    out["schema"] = 1;
    out["name"] = "Lemma 2.1 vs set-level oracle";
    out["seed"] = seed;
    bool all = true;
    // exhaustive on D_8
    {
        FusionSystem F = load_fusion("d8");
        long checked = 0;
        bool ok = true;
        std::vector<std::vector<std::vector<Biset>>> bases(F.nobjects());
        for (int a = 0; a < F.nobjects(); ++a) {
            bases[a].resize(F.nobjects());
            for (int b = 0; b < F.nobjects(); ++b) bases[a][b] = biset_basis(F, a, b);
        }
        for (int a = 0; a < F.nobjects() && ok; ++a)
            for (int b = 0; b < F.nobjects() && ok; ++b)
                for (int c = 0; c < F.nobjects() && ok; ++c)
                    for (const Biset& f : bases[a][b])
                        for (const Biset& g : bases[b][c]) {
                            if (compose_bisets(F, g, f) != oracle_compose(F, g, f)) ok = false;
                            ++checked;
                        }
        out["d8_exhaustive_pairs"] = checked;
        out["d8_exhaustive_pass"] = ok;
        if (!ok) all = false;
    }
    // 200 seeded pairs split across d8 and x27
    {
        std::mt19937_64 rng(seed);
        bool ok = true;
        long done = 0;
        for (const char* sys : {"d8", "x27"}) {
            FusionSystem F = load_fusion(sys);
            int want = 100;
            int got = 0;
            while (got < want) {
                int a = int(rng() % F.nobjects());
                int b = int(rng() % F.nobjects());
                int c = int(rng() % F.nobjects());
                auto fs = biset_basis(F, a, b);
                auto gs = biset_basis(F, b, c);
                if (fs.empty() || gs.empty()) continue;
                const Biset& f = fs[rng() % fs.size()];
                const Biset& g = gs[rng() % gs.size()];
                if (compose_bisets(F, g, f) != oracle_compose(F, g, f)) ok = false;
                ++got;
                ++done;
            }
        }
        out["random_pairs"] = done;
        out["random_pass"] = ok;
        if (!ok) all = false;
    }
    out["pass"] = all;
    return out;
}

Json criterion_congruence() {
    Json out;
    out["schema"] = 1;
    out["name"] = "coset-counting congruence";
    Json rows = Json::array();
    bool all = true;
    for (const char* sys : {"d8", "q8", "sd16", "x27"}) {
        auto G = builtin_group(sys);
        uint32_t p = p_group_prime(*G);
        auto lat = enumerate_subgroups(*G);
        bool ok = true;
        long pairs = 0;
        for (int qi = 0; qi < lat.size(); ++qi)
            for (int hi = 0; hi < lat.size(); ++hi) {
                TransporterData t = n_g_q_h(*G, lat.subs[qi], lat.subs[hi]);
                if (t.index % p != (long(G->n) / lat.subs[hi].order()) % p) ok = false;
                ++pairs;
            }
        Json row;
        row["group"] = sys;
        row["pairs"] = pairs;
        row["pass"] = ok;
        if (!ok) all = false;
        rows.push_back(row);
    }
    out["groups"] = rows;
    out["pass"] = all;
    return out;
}

Json criterion_mackeyfication(uint64_t seed) {
    Json out;
    out["schema"] = 1;
    out["name"] = "mackeyfication adjunction";
    out["seed"] = seed;
    Json rows = Json::array();
    bool all = true;
    for (NamedSystem& ns : mandatory_systems()) {
        const FusionSystem& F = ns.F;
        OrbitCategory full(F, false), cent(F, true);
        // triangle identities for four Mackey functors over the centrics
        std::vector<std::pair<std::string, MackeyFunctorData>> functors;
        functors.emplace_back("h0", h0_functor(cent));
        functors.emplace_back("representable@top",
                              representable_functor(cent, F.nobjects() - 1));
        functors.emplace_back("representable@min", representable_functor(cent, cent.object(0)));
        {
            int a = full.rep_pos(F.nobjects() - 1);
            OutModule V = trivial_out_module(full, a);
            functors.emplace_back("S@top", restrict_to_centrics(build_S_quotient(full, V), cent));
        }
        for (auto& [fname, M] : functors) {
            TriangleReport rep = counit_and_triangles(M);
            Json row;
            row["system"] = ns.name;
            row["functor"] = fname;
            row["triangles"] = rep.ok();
            row["pass"] = rep.ok();
            if (!rep.ok()) all = false;
            rows.push_back(row);
        }
        // random functors: I(N) Mackey; shift identity at i = 1, 2
        bool iok = true, shiftok = true;
        for (uint64_t k = 0; k < 10; ++k) {
            ContravariantFunctorData N = random_contravariant(cent, seed + k);
            MackeyficationResult res = mackeyfy(N);
            if (!verify_axioms(res.I).ok()) iok = false;
            CohomologyReport rn = cohomology(cent, build_complex(N, 4));
            CohomologyReport rc = cohomology(cent, build_complex(res.C, 4));
            for (int i = 1; i <= 2; ++i)
                if (rn.dims[i + 1] != rc.dims[i]) shiftok = false;
        }
        Json row;
        row["system"] = ns.name;
        row["functor"] = "10 seeded random N";
        row["i_of_n_mackey"] = iok;
        row["dim_shift_i_1_2"] = shiftok;
        row["pass"] = iok && shiftok;
        if (!iok || !shiftok) all = false;
        rows.push_back(row);
    }
    out["rows"] = rows;
    out["pass"] = all;
    return out;
}

}  // namespace fuslim
