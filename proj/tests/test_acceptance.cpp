// Acceptance suite: one test per criterion, each printing a single
// pass/fail line.  Run via ctest or directly; everything is exact
// arithmetic, no tolerances.

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twistgroup/verify.hpp"

using namespace twistgroup;

namespace {

void verdict(int criterion, const std::string& what, bool ok)
{
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what
              << std::endl;
}

bool report_clean(const Report& r)
{
    for (const auto& c : r.checks)
        if (!c.pass) {
            std::cout << "  failed check: " << c.name << " (" << c.params << ") witness "
                      << c.witness << "\n";
            return false;
        }
    return true;
}

} // namespace

TEST_CASE("criterion 1: relation suites at 500 random tuples")
{
    const std::uint64_t seed = 20240801;
    Report all;
    all.merge(SuzukiGroup(Ring::gf(2, 3)).relation_suite(500, seed));
    all.merge(SuzukiGroup(Ring::gf(2, 5)).relation_suite(500, seed));
    all.merge(ReeGroup(Ring::gf(3, 3)).relation_suite(500, seed));
    all.merge(ReeGroup(Ring::gf(3, 5)).relation_suite(500, seed));
    bool ok = report_clean(all);
    verdict(1, "displayed identities over GF(8), GF(32), GF(27), GF(243), 500 tuples each", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 2: membership and closure coherence")
{
    const std::uint64_t seed = 20240802;
    Report all;
    all.merge(suzuki_membership_checks(SuzukiGroup(Ring::gf(2, 3)), 1000, seed));
    all.merge(suzuki_membership_checks(SuzukiGroup(Ring::gf(2, 5)), 1000, seed));
    all.merge(ree_membership_checks(ReeGroup(Ring::gf(3, 3)), 1000, seed));
    bool ok = report_clean(all);
    verdict(2, "x+, x-, h, w0 certified; 1000 products/inverses stay members", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 3: mu laws and mu o mu = Frobenius")
{
    const std::uint64_t seed = 20240803;
    Report all;
    all.merge(suzuki_mu_law_checks(SuzukiGroup(Ring::gf(2, 3)), 50, 100, seed));
    all.merge(suzuki_mu_law_checks(SuzukiGroup(Ring::gf(2, 5)), 50, 100, seed));
    all.merge(ree_mu_law_checks(ReeGroup(Ring::gf(3, 3)), 50, 100, seed));
    all.merge(ree_mu_law_checks(ReeGroup(Ring::gf(3, 5)), 50, 100, seed));
    bool ok = report_clean(all);
    verdict(3, "generator mu-laws at 50 xi per root; squares equal Frobenius on 100 products",
            ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 4: BFS orders against the closed-form counts")
{
    bool ok = true;
    GroupTable sz2 = suzuki_table(SuzukiGroup(Ring::gf(2, 1)));
    ok = ok && sz2.order() == 20 && sz2.order() == suzuki_order_formula(2);
    GroupTable sz8 = suzuki_table(SuzukiGroup(Ring::gf(2, 3)));
    ok = ok && sz8.order() == 29120 && sz8.order() == suzuki_order_formula(8);
    GroupTable ree3 = ree_table(ReeGroup(Ring::gf(3, 1)));
    ok = ok && ree3.order() == 1512 && ree3.order() == ree_order_formula(3);
    GroupTable derived = commutator_subgroup(ree3);
    ok = ok && derived.order() == 504;
    // the 504-element derived subgroup is simple: 20 random normal closures
    std::mt19937_64 rng(20240804);
    for (int i = 0; i < 20 && ok; ++i) {
        Mat g = derived.element_at(1 + rng() % (derived.order() - 1));
        ok = normal_closure(g, derived).order() == derived.order();
    }
    verdict(4, "|Sz(2)| = 20, |Sz(8)| = 29120, |2G2(3)| = 1512, derived 504 simple", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 5: Sz(8) perfectness and simplicity")
{
    GroupTable sz8 = suzuki_table(SuzukiGroup(Ring::gf(2, 3)));
    bool ok = commutator_subgroup(sz8).order() == sz8.order();
    std::mt19937_64 rng(20240805);
    for (int i = 0; i < 20 && ok; ++i) {
        Mat g = sz8.element_at(1 + rng() % (sz8.order() - 1));
        ok = normal_closure(g, sz8).order() == sz8.order();
    }
    verdict(5, "[Sz(8), Sz(8)] = Sz(8); 20 random normal closures are the whole group", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 6: exhaustive Bruhat censuses")
{
    bool ok = true;
    {
        SuzukiGroup G(Ring::gf(2, 1));
        auto cen = bruhat_census(suzuki_table(G),
                                 [&](const Mat& m) { return suzuki_decomposer(G, m); });
        ok = ok && cen.all_ok && cen.small_cell == 4 && cen.big_cell == 16;
    }
    {
        SuzukiGroup G(Ring::gf(2, 3));
        auto cen = bruhat_census(suzuki_table(G),
                                 [&](const Mat& m) { return suzuki_decomposer(G, m); });
        ok = ok && cen.all_ok && cen.small_cell == 448 && cen.big_cell == 28672;
    }
    {
        ReeGroup G(Ring::gf(3, 1));
        auto cen =
            bruhat_census(ree_table(G), [&](const Mat& m) { return ree_decomposer(G, m); });
        ok = ok && cen.all_ok && cen.small_cell == 54 && cen.big_cell == 1458;
    }
    verdict(6, "cells 4+16 (Sz(2)), 448+28672 (Sz(8)), 54+1458 (2G2(3)), exact reassembly", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 7: G2 foundations")
{
    Report r = g2_foundation_checks();
    bool ok = report_clean(r);
    verdict(7, "Chevalley basis, brackets, B/T derivations, mod-3 rank 14, form preservation",
            ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 8: isogeny suite for n = 2, 3 over GF(2), GF(4), F_2(t)")
{
    const std::uint64_t seed = 20240808;
    Report all;
    bool dims_ok = true;
    for (const Ring* R : {Ring::gf(2, 1), Ring::gf(2, 2), Ring::rational(2)}) {
        for (unsigned n : {2u, 3u}) {
            all.merge(isogeny_generator_law_checks(R, n, seed));
            all.merge(u_invariance_check(R, n, 200, seed));
            all.merge(norm_and_scliff_check(R, n, 200, seed));
            all.merge(frobenius_factorization_check(R, n, 100, seed));
            dims_ok = dims_ok && spin_quotient_dim(R, n) == (std::size_t(1) << n);
        }
    }
    bool ok = report_clean(all) && dims_ok;
    verdict(8, "rho/theta laws, dim(ker X+/U) = 2^n, U invariance, norm, both composites", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 9: mixed groups")
{
    Report r = mixed_checks(20240809);
    bool ok = report_clean(r);
    verdict(9, "elementary mixed generators are ambient members; non-member rejected with witness",
            ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 10: verify-all determinism across runs and thread counts")
{
    const std::uint64_t seed = 7;
    ordered_json first = report_to_json(verify_all(seed, 1));
    std::string run1 = first.dump(2);
    std::string run2 = report_to_json(verify_all(seed, 1)).dump(2);
    std::string run4 = report_to_json(verify_all(seed, 4)).dump(2);
    bool ok = run1 == run2 && run1 == run4;
    bool all_pass = first["status"] == "pass";

#ifdef TWISTGROUP_CLI_PATH
    // byte-compare two invocations of the actual binary
    auto run_cli = [](const std::string& args, const std::string& out) {
        std::string cmd = std::string(TWISTGROUP_CLI_PATH) + " " + args + " > " + out;
        return std::system(cmd.c_str()) == 0;
    };
    bool cli_ok = run_cli("verify-all --seed 7 --threads 1", "va_t1.json") &&
                  run_cli("verify-all --seed 7 --threads 2", "va_t2.json");
    if (cli_ok) {
        std::ifstream f1("va_t1.json"), f2("va_t2.json");
        std::stringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        cli_ok = !s1.str().empty() && s1.str() == s2.str();
    }
    std::remove("va_t1.json");
    std::remove("va_t2.json");
    ok = ok && cli_ok;
#endif

    verdict(10, "verify-all --seed 7 is byte-identical across runs and thread counts", ok && all_pass);
    REQUIRE(ok);
    REQUIRE(all_pass);
}
