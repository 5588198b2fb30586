// twistgroup: exact computations with Suzuki and Ree groups, the B_n/C_n
// isogenies, Tits mixed groups, and brute-force group enumeration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "twistgroup/verify.hpp"

using namespace twistgroup;

namespace {

struct Output {
    std::string json_path;

    int emit(const ordered_json& j, bool ok)
    {
        std::string text = j.dump(2);
        std::cout << text << "\n";
        if (!json_path.empty()) {
            std::ofstream f(json_path);
            f << text << "\n";
        }
        return ok ? 0 : 1;
    }
};

ordered_json load_json_input(const std::string& path)
{
    if (path.empty() || path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        return ordered_json::parse(buf.str());
    }
    std::ifstream f(path);
    if (!f)
        fail(errc::bad_argument, "cannot open '" + path + "'");
    return ordered_json::parse(f);
}

ordered_json census_json(const BruhatCensus& c)
{
    ordered_json j;
    j["check"] = "bruhat_census";
    j["cells"] = {{"w=1", c.small_cell}, {"w=w0", c.big_cell}};
    j["status"] = c.all_ok ? "pass" : "fail";
    if (!c.witness.empty())
        j["witness"] = c.witness;
    return j;
}

int run_suzuki(Output& out, unsigned q, bool order, bool bruhat_all, std::size_t relations,
               std::uint64_t seed, unsigned threads, std::size_t limit)
{
    unsigned k = q == 2 ? 1 : q == 8 ? 3 : q == 32 ? 5 : 0;
    if (!k)
        fail(errc::bad_argument, "suzuki supports q in {2, 8, 32}");
    SuzukiGroup G(Ring::gf(2, k));
    ordered_json j;
    j["group"] = "suzuki";
    j["q"] = q;
    bool ok = true;
    if (order || bruhat_all) {
        GroupTable t = suzuki_table(G, limit);
        j["order"] = t.order();
        if (bruhat_all) {
            auto cen = bruhat_census(t, [&](const Mat& m) { return suzuki_decomposer(G, m); });
            j["bruhat"] = census_json(cen);
            ok = ok && cen.all_ok;
        }
    }
    if (relations) {
        Report r = G.relation_suite(relations, seed, threads);
        j["relations"] = report_to_json(r);
        ok = ok && r.all_pass();
    }
    return out.emit(j, ok);
}

int run_ree(Output& out, unsigned q, bool order, bool derived_order, bool bruhat_all,
            std::size_t relations, std::uint64_t seed, unsigned threads, std::size_t limit)
{
    unsigned k = q == 3 ? 1 : q == 27 ? 3 : 0;
    if (!k)
        fail(errc::bad_argument, "ree supports q in {3, 27}");
    ReeGroup G(Ring::gf(3, k));
    ordered_json j;
    j["group"] = "ree";
    j["q"] = q;
    bool ok = true;
    if (order || derived_order || bruhat_all) {
        GroupTable t = ree_table(G, limit);
        j["order"] = t.order();
        if (derived_order)
            j["derived_order"] = commutator_subgroup(t, limit).order();
        if (bruhat_all) {
            auto cen = bruhat_census(t, [&](const Mat& m) { return ree_decomposer(G, m); });
            j["bruhat"] = census_json(cen);
            ok = ok && cen.all_ok;
        }
    }
    if (relations) {
        Report r = G.relation_suite(relations, seed, threads);
        j["relations"] = report_to_json(r);
        ok = ok && r.all_pass();
    }
    return out.emit(j, ok);
}

int run_isogeny(Output& out, unsigned n, const std::string& ring_tag, bool apply_theta,
                bool apply_rho, std::size_t check_frobenius, std::size_t check_norm,
                const std::string& in_path, std::uint64_t seed, unsigned threads)
{
    const Ring* R = Ring::from_tag(ring_tag);
    if (R->p != 2)
        fail(errc::wrong_characteristic, "the isogeny machinery needs characteristic 2");
    if (apply_theta || apply_rho) {
        Mat g = mat_from_json(load_json_input(in_path));
        Mat result = apply_theta ? theta(g, n) : rho(g, n);
        return out.emit(mat_to_json(result), true);
    }
    Report r;
    if (check_norm)
        r.merge(norm_and_scliff_check(R, n, check_norm, seed, threads));
    if (check_frobenius)
        r.merge(frobenius_factorization_check(R, n, check_frobenius, seed, threads));
    if (!check_norm && !check_frobenius) {
        r.merge(isogeny_generator_law_checks(R, n, seed));
        r.merge(u_invariance_check(R, n, 100, seed, threads));
    }
    return out.emit(report_to_json(r), r.all_pass());
}

int run_mixed(Output& out, const std::string& type, const std::string& pair_name,
              const std::string& element_path)
{
    RingPair pair = RingPair::from_name(pair_name);
    Mat g = mat_from_json(load_json_input(element_path));
    MixedMembership v;
    if (type == "bc") {
        if (g.rows() % 2 == 0)
            fail(errc::dim_mismatch, "bc membership expects a (2n+1)x(2n+1) B_n element");
        unsigned n = unsigned((g.rows() - 1) / 2);
        v = mixed_member_bc(g, n, pair);
    } else if (type == "g2") {
        G2Rep rep(pair.F);
        v = mixed_member_g2(g, pair, rep);
    } else {
        fail(errc::bad_argument, "mixed --type must be bc or g2");
    }
    ordered_json j;
    j["check"] = "mixed_membership";
    j["type"] = type;
    j["pair"] = pair_name;
    j["verdict"] = v.member ? "member" : "non-member";
    if (!v.witness.empty())
        j["witness"] = v.witness;
    if (v.preimage)
        j["preimage"] = mat_to_json(*v.preimage);
    // a non-member verdict is an answer, not a failure
    return out.emit(j, true);
}

int run_lab(Output& out, const std::string& group, bool order, bool derived,
            std::size_t simple_check, bool census, std::size_t limit, const std::string& cache,
            std::uint64_t seed)
{
    std::optional<SuzukiGroup> sz;
    std::optional<ReeGroup> ree;
    if (group == "sz2")
        sz.emplace(Ring::gf(2, 1));
    else if (group == "sz8")
        sz.emplace(Ring::gf(2, 3));
    else if (group == "sz32")
        sz.emplace(Ring::gf(2, 5));
    else if (group == "ree3")
        ree.emplace(Ring::gf(3, 1));
    else
        fail(errc::bad_argument, "lab supports sz2, sz8, sz32, ree3");

    GroupTable t;
    bool loaded = false;
    if (!cache.empty()) {
        if (auto cached = load_table(cache)) {
            t = std::move(*cached);
            loaded = true;
        }
    }
    if (!loaded) {
        t = sz ? bfs_closure(sz->standard_generators(), limit)
               : bfs_closure(ree->standard_generators(), limit);
        if (!cache.empty())
            save_table(cache, t);
    }

    ordered_json j;
    j["group"] = group;
    bool ok = true;
    if (order || (!derived && !simple_check && !census))
        j["order"] = t.order();
    if (derived)
        j["derived_order"] = commutator_subgroup(t, limit).order();
    if (simple_check) {
        std::mt19937_64 rng(seed);
        bool simple = true;
        for (std::size_t i = 0; i < simple_check && simple; ++i) {
            Mat g = t.element_at(1 + rng() % (t.order() - 1));
            simple = normal_closure(g, t, limit).order() == t.order();
        }
        j["simple_check"] = {{"probes", simple_check}, {"all_full", simple}};
        ok = ok && simple;
    }
    if (census) {
        auto cen = sz ? bruhat_census(t, [&](const Mat& m) { return suzuki_decomposer(*sz, m); })
                      : bruhat_census(t, [&](const Mat& m) { return ree_decomposer(*ree, m); });
        j["bruhat"] = census_json(cen);
        ok = ok && cen.all_ok;
    }
    return out.emit(j, ok);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact Suzuki/Ree groups, B-C isogenies, and mixed groups"};
    app.require_subcommand(1);

    std::uint64_t seed = 7;
    unsigned threads = 1;
    Output out;
    app.add_option("--seed", seed, "random seed for all sampled checks");
    app.add_option("--threads", threads, "worker threads (output is identical for any value)");
    app.add_option("--json", out.json_path, "also write the JSON report to this path");

    auto* sz = app.add_subcommand("suzuki", "Suzuki group ^sigma G(C2, GF(q))");
    sz->fallthrough();
    unsigned sz_q = 8;
    bool sz_order = false, sz_bruhat = false;
    std::size_t sz_rel = 0, sz_limit = 100000;
    sz->add_option("--q", sz_q, "field size: 2, 8, or 32")->required();
    sz->add_flag("--order", sz_order, "enumerate the group and print its order");
    sz->add_flag("--bruhat-all", sz_bruhat, "decompose every element and report cell sizes");
    sz->add_option("--relations", sz_rel, "run the relation suite with N samples");
    sz->add_option("--limit", sz_limit, "BFS element cap");

    auto* re = app.add_subcommand("ree", "small Ree group ^sigma G(G2, GF(q))");
    re->fallthrough();
    unsigned re_q = 3;
    bool re_order = false, re_derived = false, re_bruhat = false;
    std::size_t re_rel = 0, re_limit = 100000;
    re->add_option("--q", re_q, "field size: 3 or 27")->required();
    re->add_flag("--order", re_order, "enumerate the group and print its order");
    re->add_flag("--derived-order", re_derived, "also compute the commutator subgroup order");
    re->add_flag("--bruhat-all", re_bruhat, "decompose every element and report cell sizes");
    re->add_option("--relations", re_rel, "run the relation suite with N samples");
    re->add_option("--limit", re_limit, "BFS element cap");

    auto* iso = app.add_subcommand("isogeny", "B_n <-> C_n polynomial maps in characteristic 2");
    iso->fallthrough();
    unsigned iso_n = 2;
    std::string iso_ring = "gf2", iso_in;
    bool iso_theta = false, iso_rho = false;
    std::size_t iso_frob = 0, iso_norm = 0;
    iso->add_option("--n", iso_n, "rank: 2, 3, or 4")->required();
    iso->add_option("--ring", iso_ring, "gf2, gf4, or f2t");
    iso->add_flag("--theta", iso_theta, "apply theta to a matrix (JSON from --in or stdin)");
    iso->add_flag("--rho", iso_rho, "apply rho to a matrix (JSON from --in or stdin)");
    iso->add_option("--check-frobenius", iso_frob, "verify both composites on N random elements");
    iso->add_option("--check-norm", iso_norm, "verify norm and SCliff span on N random elements");
    iso->add_option("--in", iso_in, "input matrix JSON path ('-' for stdin)");

    auto* mx = app.add_subcommand("mixed", "Tits mixed group membership");
    mx->fallthrough();
    std::string mx_type = "bc", mx_pair = "f2t2-f2t", mx_elem;
    mx->add_option("--type", mx_type, "bc or g2")->required();
    mx->add_option("--pair", mx_pair, "f2t2-f2t or gf3-gf27")->required();
    mx->add_option("--check-element", mx_elem, "matrix JSON path ('-' for stdin)")->required();

    auto* lab = app.add_subcommand("lab", "brute-force group computations");
    lab->fallthrough();
    std::string lab_group, lab_cache;
    bool lab_order = false, lab_derived = false, lab_census = false;
    std::size_t lab_simple = 0, lab_limit = 100000;
    lab->add_option("--group", lab_group, "sz2, sz8, sz32, or ree3")->required();
    lab->add_flag("--order", lab_order, "print the group order");
    lab->add_flag("--derived", lab_derived, "print the commutator subgroup order");
    lab->add_option("--simple-check", lab_simple, "normal closures of N random elements");
    lab->add_flag("--bruhat-census", lab_census, "decompose every element");
    lab->add_option("--limit", lab_limit, "BFS element cap (sz32 needs ~3.3e7)");
    lab->add_option("--cache", lab_cache, "binary table cache path (load if present, else save)");

    auto* va = app.add_subcommand("verify-all", "run every check battery");
    va->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sz->parsed())
            return run_suzuki(out, sz_q, sz_order, sz_bruhat, sz_rel, seed, threads, sz_limit);
        if (re->parsed())
            return run_ree(out, re_q, re_order, re_derived, re_bruhat, re_rel, seed, threads,
                           re_limit);
        if (iso->parsed())
            return run_isogeny(out, iso_n, iso_ring, iso_theta, iso_rho, iso_frob, iso_norm,
                               iso_in, seed, threads);
        if (mx->parsed())
            return run_mixed(out, mx_type, mx_pair, mx_elem);
        if (lab->parsed())
            return run_lab(out, lab_group, lab_order, lab_derived, lab_simple, lab_census,
                           lab_limit, lab_cache, seed);
        if (va->parsed()) {
            Report r = verify_all(seed, threads);
            return out.emit(report_to_json(r), r.all_pass());
        }
    } catch (const LimitError& e) {
        ordered_json j;
        j["error"] = "limit_exceeded";
        j["found"] = e.found();
        std::cout << j.dump(2) << "\n";
        return 1;
    } catch (const Error& e) {
        ordered_json j;
        j["error"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        ordered_json j;
        j["error"] = std::string("json: ") + e.what();
        std::cout << j.dump(2) << "\n";
        return 1;
    }
    return 2;
}
