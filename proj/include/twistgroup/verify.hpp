#pragma once

// Check batteries binding the modules together; shared by the CLI
// (verify-all and per-module subcommands) and by the acceptance suite.

#include <atomic>
#include <cstdint>

#include "group_lab.hpp"
#include "isogeny.hpp"
#include "json_io.hpp"
#include "mixed.hpp"
#include "ree.hpp"
#include "suzuki.hpp"

namespace twistgroup {

inline std::uint64_t suzuki_order_formula(std::uint64_t q) { return q * q * (q * q + 1) * (q - 1); }
inline std::uint64_t ree_order_formula(std::uint64_t q)
{
    return q * q * q * (q * q * q + 1) * (q - 1);
}

inline GroupTable suzuki_table(const SuzukiGroup& G, std::size_t limit = 100000)
{
    return bfs_closure(G.standard_generators(), limit);
}

inline GroupTable ree_table(const ReeGroup& G, std::size_t limit = 100000)
{
    return bfs_closure(G.standard_generators(), limit);
}

inline std::optional<bool> suzuki_decomposer(const SuzukiGroup& G, const Mat& m)
{
    auto elem = G.certify(m);
    if (!elem)
        return std::nullopt;
    try {
        auto parts = G.bruhat(*elem);
        if (parts.reassemble(G.w0_mat()) != m)
            return std::nullopt;
        // the w-component is determined by the corner entry, so uniqueness
        // amounts to the decomposition agreeing with that test
        if (parts.big_cell == m.at(3, 0).is_zero())
            return std::nullopt;
        return parts.big_cell;
    } catch (const Error&) {
        return std::nullopt;
    }
}

inline std::optional<bool> ree_decomposer(const ReeGroup& G, const Mat& m)
{
    auto elem = G.certify(m);
    if (!elem)
        return std::nullopt;
    try {
        auto parts = G.bruhat(*elem);
        if (parts.reassemble(G.w0_mat()) != m)
            return std::nullopt;
        return parts.big_cell;
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// Random certified Suzuki element: a short product of x+, x-, h factors.
inline Mat random_suzuki_element(const SuzukiGroup& G, std::mt19937_64& rng, unsigned factors = 4)
{
    const Ring* R = G.ring();
    Mat g = Mat::identity(R, 4);
    for (unsigned f = 0; f < factors; ++f) {
        switch (rng() % 3) {
        case 0: g = g * G.xplus_mat(sample(R, rng), sample(R, rng)); break;
        case 1: g = g * G.xminus_mat(sample(R, rng), sample(R, rng)); break;
        default: g = g * G.h_mat(sample_unit(R, rng)); break;
        }
    }
    return g;
}

inline Mat random_ree_element(const ReeGroup& G, std::mt19937_64& rng, unsigned factors = 4)
{
    const Ring* R = G.ring();
    Mat g = Mat::identity(R, 7);
    for (unsigned f = 0; f < factors; ++f) {
        switch (rng() % 3) {
        case 0:
            g = g * G.xplus_mat(sample(R, rng), sample(R, rng), sample(R, rng));
            break;
        case 1:
            g = g * G.xminus_mat(sample(R, rng), sample(R, rng), sample(R, rng));
            break;
        default: g = g * G.h_mat(sample_unit(R, rng)); break;
        }
    }
    return g;
}

/// Generators pass the membership predicate; products and inverses of
/// certified members stay certified.
inline Report suzuki_membership_checks(const SuzukiGroup& G, std::size_t samples,
                                       std::uint64_t seed, unsigned threads = 1)
{
    Report out;
    const Ring* R = G.ring();
    bool gens_ok = true;
    std::string gw;
    std::mt19937_64 rng(seed);
    for (int rep = 0; rep < 8 && gens_ok; ++rep) {
        RingElem a = sample(R, rng), b = sample(R, rng);
        RingElem e = sample_unit(R, rng);
        for (const Mat& m : {G.xplus_mat(a, b), G.xminus_mat(a, b), G.h_mat(e), G.w0_mat()}) {
            if (!G.certify(m)) {
                gens_ok = false;
                gw = "generator failed with a=" + a.str() + " b=" + b.str() + " eps=" + e.str();
                break;
            }
        }
    }
    out.add("c2.membership_generators", "ring=" + R->tag(), gens_ok, gw);

    std::atomic<std::size_t> failures{0};
    std::vector<std::string> witnesses(samples);
    parallel_samples(samples, threads, [&](std::size_t i) {
        std::mt19937_64 r2(per_sample_seed(seed, i));
        Mat g = random_suzuki_element(G, r2);
        Mat h = random_suzuki_element(G, r2);
        if (!G.certify(g * h) || !G.certify(g.inverse())) {
            witnesses[i] = "sample=" + std::to_string(i);
            failures.fetch_add(1, std::memory_order_relaxed);
        }
    });
    std::string w;
    for (const auto& s : witnesses)
        if (!s.empty()) {
            w = s;
            break;
        }
    out.add("c2.membership_closure",
            "ring=" + R->tag() + " samples=" + std::to_string(samples), failures.load() == 0, w);
    return out;
}

inline Report ree_membership_checks(const ReeGroup& G, std::size_t samples, std::uint64_t seed,
                                    unsigned threads = 1)
{
    Report out;
    const Ring* R = G.ring();
    bool gens_ok = true;
    std::string gw;
    std::mt19937_64 rng(seed);
    for (int rep = 0; rep < 8 && gens_ok; ++rep) {
        RingElem a = sample(R, rng), b = sample(R, rng), c = sample(R, rng);
        RingElem e = sample_unit(R, rng);
        for (const Mat& m :
             {G.xplus_mat(a, b, c), G.xminus_mat(a, b, c), G.h_mat(e), G.w0_mat()}) {
            if (!G.certify(m)) {
                gens_ok = false;
                gw = "generator failed with a=" + a.str() + " b=" + b.str() + " c=" + c.str() +
                     " eps=" + e.str();
                break;
            }
        }
    }
    out.add("g2.membership_generators", "ring=" + R->tag(), gens_ok, gw);

    std::atomic<std::size_t> failures{0};
    std::vector<std::string> witnesses(samples);
    parallel_samples(samples, threads, [&](std::size_t i) {
        std::mt19937_64 r2(per_sample_seed(seed, i));
        Mat g = random_ree_element(G, r2);
        Mat h = random_ree_element(G, r2);
        if (!G.certify(g * h) || !G.certify(g.inverse())) {
            witnesses[i] = "sample=" + std::to_string(i);
            failures.fetch_add(1, std::memory_order_relaxed);
        }
    });
    std::string w;
    for (const auto& s : witnesses)
        if (!s.empty()) {
            w = s;
            break;
        }
    out.add("g2.membership_closure",
            "ring=" + R->tag() + " samples=" + std::to_string(samples), failures.load() == 0, w);
    return out;
}

/// The displayed generator laws for the mu-image and mu o mu = Frobenius.
inline Report suzuki_mu_law_checks(const SuzukiGroup& G, std::size_t xi_samples,
                                   std::size_t product_samples, std::uint64_t seed)
{
    Report out;
    const Ring* R = G.ring();
    std::mt19937_64 rng(seed);
    bool law_ok = true;
    std::string w;
    for (C2Root r : all_c2_roots()) {
        const auto& info = c2_root_info(r);
        for (std::size_t s = 0; s < xi_samples && law_ok; ++s) {
            RingElem xi = sample(R, rng);
            Mat got = c2_mu_image(G.xroot(r, xi));
            Mat want = G.xroot(info.sigma, info.is_short ? xi * xi : xi);
            if (got != want) {
                law_ok = false;
                w = std::string("root ") + info.name + " xi=" + xi.str();
            }
        }
    }
    out.add("c2.mu_generator_law",
            "ring=" + R->tag() + " xi_samples=" + std::to_string(xi_samples), law_ok, w);

    bool frob_ok = true;
    std::string fw;
    for (std::size_t s = 0; s < product_samples && frob_ok; ++s) {
        Mat g = random_suzuki_element(G, rng);
        if (c2_mu_image(c2_mu_image(g)) != frobenius_map(g)) {
            frob_ok = false;
            fw = "sample=" + std::to_string(s);
        }
    }
    out.add("c2.mu_squared_is_frobenius",
            "ring=" + R->tag() + " samples=" + std::to_string(product_samples), frob_ok, fw);
    return out;
}

inline Report ree_mu_law_checks(const ReeGroup& G, std::size_t xi_samples,
                                std::size_t product_samples, std::uint64_t seed)
{
    Report out;
    const Ring* R = G.ring();
    std::mt19937_64 rng(seed);
    bool law_ok = true;
    std::string w;
    for (G2Root r : all_g2_roots()) {
        const auto& info = g2_root_info(r);
        for (std::size_t s = 0; s < xi_samples && law_ok; ++s) {
            RingElem xi = sample(R, rng);
            int sign = ((1 + info.height) % 2 == 0) ? 1 : -1;
            RingElem arg = info.is_long ? xi : xi * xi * xi;
            if (sign < 0)
                arg = -arg;
            Mat got = G.rep().mu_image(G.xroot(r, xi));
            Mat want = G.xroot(info.sigma, arg);
            if (got != want) {
                law_ok = false;
                w = std::string("root ") + info.name + " xi=" + xi.str();
            }
        }
    }
    out.add("g2.mu_generator_law",
            "ring=" + R->tag() + " xi_samples=" + std::to_string(xi_samples), law_ok, w);

    bool frob_ok = true;
    std::string fw;
    for (std::size_t s = 0; s < product_samples && frob_ok; ++s) {
        Mat g = random_ree_element(G, rng);
        if (G.rep().mu_image(G.rep().mu_image(g)) != frobenius_map(g)) {
            frob_ok = false;
            fw = "sample=" + std::to_string(s);
        }
    }
    out.add("g2.mu_squared_is_frobenius",
            "ring=" + R->tag() + " samples=" + std::to_string(product_samples), frob_ok, fw);
    return out;
}

/// One-time structural checks of the G2 Chevalley basis: bracket relations
/// over Z, derivation conditions for B and T over Z, nilpotency degrees,
/// and mod-3 linear independence.
inline Report g2_foundation_checks()
{
    Report out;
    const G2Data& D = G2Data::instance();

    bool brackets = D.bracket(D.e[int(G2Root::a)], D.e[int(G2Root::ma)]) == D.h_alpha &&
                    D.bracket(D.e[int(G2Root::b)], D.e[int(G2Root::mb)]) == D.h_beta;
    out.add("g2.cartan_brackets", "over Z", brackets);

    bool deriv = true;
    std::array<std::array<int, 7>, 7> ey{};
    for (int i = 0; i < 7; ++i)
        ey[i][i] = 1;
    std::vector<IntMat7> basis14;
    for (int r = 0; r < 12; ++r)
        basis14.push_back(D.e[r]);
    basis14.push_back(D.h_alpha);
    basis14.push_back(D.h_beta);
    for (const IntMat7& g : basis14) {
        // B(gu,v) + B(u,gv) = 0
        IntMat7 gt{};
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j)
                gt[i][j] = g[j][i];
        IntMat7 m1 = G2Data::mul(gt, D.bgram), m2 = G2Data::mul(D.bgram, g);
        for (int i = 0; i < 7 && deriv; ++i)
            for (int j = 0; j < 7; ++j)
                if (m1[i][j] + m2[i][j] != 0) {
                    deriv = false;
                    break;
                }
        // T(gu,v,w) + T(u,gv,w) + T(u,v,gw) = 0 on basis triples
        std::array<std::array<int, 7>, 7> cols{};
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j)
                cols[j][i] = g[i][j];
        for (int i = 0; i < 7 && deriv; ++i)
            for (int j = 0; j < 7 && deriv; ++j)
                for (int kk = 0; kk < 7; ++kk) {
                    int s = D.t_eval(cols[i], ey[j], ey[kk]) + D.t_eval(ey[i], cols[j], ey[kk]) +
                            D.t_eval(ey[i], ey[j], cols[kk]);
                    if (s != 0) {
                        deriv = false;
                        break;
                    }
                }
        if (!deriv)
            break;
    }
    out.add("g2.derivation_conditions", "B and T over Z", deriv);

    bool nilp = true;
    for (int r = 0; r < 12 && nilp; ++r) {
        IntMat7 sq = G2Data::mul(D.e[r], D.e[r]);
        for (int i = 0; i < 7 && nilp; ++i)
            for (int j = 0; j < 7; ++j)
                if (sq[i][j] % 2 != 0) {
                    nilp = false;
                    break;
                }
        IntMat7 cube = G2Data::mul(sq, D.e[r]);
        for (int i = 0; i < 7 && nilp; ++i)
            for (int j = 0; j < 7; ++j)
                if (cube[i][j] != 0) {
                    nilp = false;
                    break;
                }
    }
    out.add("g2.divided_power_shape", "e^2 even, e^3 = 0 over Z", nilp);

    // mod-3 independence: building the solver throws when the rank drops
    bool rank14 = true;
    std::string w;
    try {
        G2Rep rep(Ring::gf(3, 1));
    } catch (const Error& e) {
        rank14 = false;
        w = e.what();
    }
    out.add("g2.mod3_independence", "rank of the 14 basis matrices over GF(3)", rank14, w);

    bool forms_ok = true;
    for (const Ring* R : {Ring::gf(3, 1), Ring::gf(3, 3)}) {
        std::mt19937_64 rng(11);
        for (G2Root r : all_g2_roots()) {
            for (int rep = 0; rep < 4; ++rep) {
                if (!g2_check_forms(g2_xroot(R, r, sample(R, rng)))) {
                    forms_ok = false;
                    break;
                }
            }
        }
    }
    out.add("g2.generators_preserve_forms", "GF(3) and GF(27)", forms_ok);
    return out;
}

/// BFS order against the closed-form count, with optional derived-subgroup
/// order and simplicity probing.
inline Report order_and_simplicity_checks(std::uint64_t seed, bool include_sz8,
                                          std::size_t simplicity_probes)
{
    Report out;

    {
        SuzukiGroup G2q(Ring::gf(2, 1));
        GroupTable t = suzuki_table(G2q);
        out.add("lab.order_sz2", "expected 20 = q^2(q^2+1)(q-1)",
                t.order() == suzuki_order_formula(2),
                t.order() == 20 ? "" : "got " + std::to_string(t.order()));
        auto cen = bruhat_census(
            t, [&](const Mat& m) { return suzuki_decomposer(G2q, m); });
        out.add("lab.bruhat_census_sz2", "cells 4 + 16",
                cen.all_ok && cen.small_cell == 4 && cen.big_cell == 16,
                cen.all_ok ? "" : cen.witness);
    }

    {
        ReeGroup G3(Ring::gf(3, 1));
        GroupTable t = ree_table(G3);
        out.add("lab.order_ree3", "expected 1512 = q^3(q^3+1)(q-1)",
                t.order() == ree_order_formula(3),
                t.order() == 1512 ? "" : "got " + std::to_string(t.order()));
        GroupTable derived = commutator_subgroup(t);
        out.add("lab.derived_order_ree3", "expected 504", derived.order() == 504,
                derived.order() == 504 ? "" : "got " + std::to_string(derived.order()));
        bool simple = true;
        std::string w;
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < simplicity_probes && simple; ++i) {
            Mat g = derived.element_at(1 + rng() % (derived.order() - 1));
            if (normal_closure(g, derived).order() != derived.order()) {
                simple = false;
                w = "probe " + std::to_string(i);
            }
        }
        out.add("lab.derived_ree3_simple",
                "normal closures of " + std::to_string(simplicity_probes) + " random elements",
                simple, w);
        auto cen = bruhat_census(t, [&](const Mat& m) { return ree_decomposer(G3, m); });
        out.add("lab.bruhat_census_ree3", "cells 54 + 1458",
                cen.all_ok && cen.small_cell == 54 && cen.big_cell == 1458,
                cen.all_ok ? "" : cen.witness);
    }

    if (include_sz8) {
        SuzukiGroup G8(Ring::gf(2, 3));
        GroupTable t = suzuki_table(G8);
        out.add("lab.order_sz8", "expected 29120 = q^2(q^2+1)(q-1)",
                t.order() == suzuki_order_formula(8),
                t.order() == 29120 ? "" : "got " + std::to_string(t.order()));
        GroupTable derived = commutator_subgroup(t);
        out.add("lab.sz8_perfect", "commutator subgroup equals the whole group",
                derived.order() == t.order(),
                derived.order() == t.order() ? "" : "got " + std::to_string(derived.order()));
        bool simple = true;
        std::string w;
        std::mt19937_64 rng(seed + 1);
        for (std::size_t i = 0; i < simplicity_probes && simple; ++i) {
            Mat g = t.element_at(1 + rng() % (t.order() - 1));
            if (normal_closure(g, t).order() != t.order()) {
                simple = false;
                w = "probe " + std::to_string(i);
            }
        }
        out.add("lab.sz8_simple",
                "normal closures of " + std::to_string(simplicity_probes) + " random elements",
                simple, w);
        auto cen = bruhat_census(t, [&](const Mat& m) { return suzuki_decomposer(G8, m); });
        out.add("lab.bruhat_census_sz8", "cells 448 + 28672",
                cen.all_ok && cen.small_cell == 448 && cen.big_cell == 28672,
                cen.all_ok ? "" : cen.witness);
    }

    return out;
}

/// rho and theta generator laws over one ring.
inline Report isogeny_generator_law_checks(const Ring* R, unsigned n, std::uint64_t seed)
{
    Report out;
    std::mt19937_64 rng(seed);
    bool rho_ok = true, theta_ok = true, stv_ok = true;
    std::string rw, tw, sw;
    for (int rep = 0; rep < 6; ++rep) {
        RingElem xi = sample(R, rng, 1);
        for (int i = 1; i <= int(n); ++i) {
            if (rho(bn_xroot_short(R, n, i, xi), n) != cn_xroot(R, n, i, -i, xi * xi)) {
                rho_ok = false;
                rw = "short i=" + std::to_string(i) + " xi=" + xi.str();
            }
            // theta on the long root: e_A + xi e_{A \ {-i} u {i}}
            Mat th = theta(cn_xroot(R, n, i, -i, xi), n);
            auto idx = bc::spin_subsets(n);
            Mat want(R, idx.size(), idx.size());
            for (std::size_t c = 0; c < idx.size(); ++c) {
                want.at(c, c) = R->one();
                unsigned A = idx[c];
                unsigned pi = 1u << bc::pos(i, n), mi = 1u << bc::pos(-i, n);
                if (A & mi) {
                    unsigned B = (A & ~mi) | pi;
                    for (std::size_t r2 = 0; r2 < idx.size(); ++r2)
                        if (idx[r2] == B)
                            want.at(r2, c) = want.at(r2, c) + xi;
                }
            }
            if (th != want) {
                theta_ok = false;
                tw = "T_{i,-i} i=" + std::to_string(i) + " xi=" + xi.str();
            }
            if (spin_to_vector(th, n) != bn_xroot_short(R, n, i, xi)) {
                stv_ok = false;
                sw = "T_{i,-i} i=" + std::to_string(i);
            }
            for (int j = 1; j <= int(n); ++j) {
                if (j == i)
                    continue;
                if (rho(bn_xroot_long(R, n, i, j, xi), n) != cn_xroot(R, n, i, j, xi)) {
                    rho_ok = false;
                    rw = "long (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
                // theta on short roots: xi^2 on the swapped subset
                Mat th2 = theta(cn_xroot(R, n, i, j, xi), n);
                auto idx2 = bc::spin_subsets(n);
                Mat want2(R, idx2.size(), idx2.size());
                unsigned pi = 1u << bc::pos(i, n), mi = 1u << bc::pos(-i, n);
                unsigned pj = 1u << bc::pos(j, n), mj = 1u << bc::pos(-j, n);
                for (std::size_t c = 0; c < idx2.size(); ++c) {
                    want2.at(c, c) = R->one();
                    unsigned A = idx2[c];
                    if ((A & mi) && (A & pj)) {
                        unsigned B = (A & ~(mi | pj)) | pi | mj;
                        for (std::size_t r2 = 0; r2 < idx2.size(); ++r2)
                            if (idx2[r2] == B)
                                want2.at(r2, c) = want2.at(r2, c) + xi * xi;
                    }
                }
                if (th2 != want2) {
                    theta_ok = false;
                    tw = "T_{ij} (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
                if (spin_to_vector(th2, n) != bn_xroot_long(R, n, i, j, xi * xi)) {
                    stv_ok = false;
                    sw = "T_{ij} (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
        }
    }
    std::string params = "ring=" + R->tag() + " n=" + std::to_string(n);
    out.add("isogeny.rho_generator_law", params, rho_ok, rw);
    out.add("isogeny.theta_generator_law", params, theta_ok, tw);
    out.add("isogeny.spin_vector_law", params, stv_ok, sw);
    out.add("isogeny.spin_quotient_dim", params + " expect 2^n",
            spin_quotient_dim(R, n) == (std::size_t(1) << n));
    return out;
}

inline Report mixed_checks(std::uint64_t seed)
{
    Report out;
    (void)seed;
    {
        RingPair pair = RingPair::f2t2_f2t();
        const Ring* F = pair.F;
        RingElem t = F->generator();
        std::vector<RingElem> longs = {t * t, t * t + F->one()};
        std::vector<RingElem> shorts = {t, t * t + t};
        unsigned n = 2;
        auto gens = mixed_elementary_gens(MixedType::Bn, n, pair, longs, shorts);
        bool all_member = true;
        std::string w;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            auto v = mixed_member_bc(gens[i], n, pair);
            if (!v.member) {
                all_member = false;
                w = "generator #" + std::to_string(i) + ": " + v.witness;
                break;
            }
        }
        out.add("mixed.bc_elementary_members", "pair=f2t2-f2t n=2", all_member, w);

        bool rejected = false;
        std::string rw;
        try {
            mixed_elementary_gens(MixedType::Bn, n, pair, {t}, {});
        } catch (const Error& e) {
            rejected = e.code() == errc::param_not_in_subring;
            rw = e.what();
        }
        out.add("mixed.bc_long_param_rejected", "long parameter t outside E", rejected, rw);

        auto bad = mixed_member_bc(bn_xroot_long(F, n, 1, 2, t), n, pair);
        out.add("mixed.bc_non_member_witness", "long generator with parameter t",
                !bad.member && !bad.witness.empty(), bad.member ? "accepted" : bad.witness);

        // closure under products of members
        bool closed = true;
        std::string cw;
        std::mt19937_64 rng(seed);
        for (int i = 0; i < 24 && closed; ++i) {
            const Mat& a = gens[rng() % gens.size()];
            const Mat& b = gens[rng() % gens.size()];
            auto v = mixed_member_bc(a * b, n, pair);
            if (!v.member) {
                closed = false;
                cw = v.witness;
            }
        }
        out.add("mixed.bc_member_products", "pair=f2t2-f2t n=2", closed, cw);
    }
    {
        RingPair pair = RingPair::gf3_gf27();
        const Ring* F = pair.F;
        G2Rep rep(F);
        std::vector<RingElem> longs = {F->one(), F->from_int(2)};
        std::vector<RingElem> shorts = {F->generator(), F->generator() * F->generator()};
        auto gens = mixed_elementary_gens(MixedType::G2, 0, pair, longs, shorts);
        bool all_member = true;
        std::string w;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            auto v = mixed_member_g2(gens[i], pair, rep);
            if (!v.member) {
                all_member = false;
                w = "generator #" + std::to_string(i) + ": " + v.witness;
                break;
            }
        }
        out.add("mixed.g2_elementary_members", "pair=gf3-gf27", all_member, w);

        // explicit law inversion: x_b(c) with c in GF(3) has mu-preimage
        // x_{sigma b}(+-c)
        bool law = true;
        for (int c = 0; c < 3; ++c) {
            Mat g = g2_xroot(F, G2Root::b, F->from_int(c));
            auto v = mixed_member_g2(g, pair, rep);
            if (!v.member) {
                law = false;
                break;
            }
        }
        out.add("mixed.g2_long_root_preimage", "x_b(c), c in GF(3)", law);
    }
    return out;
}

/// The whole battery behind `verify-all`: deterministic given (seed, thread
/// count is immaterial by construction).
inline Report verify_all(std::uint64_t seed, unsigned threads = 1)
{
    Report out;
    {
        SuzukiGroup G8(Ring::gf(2, 3)), G32(Ring::gf(2, 5));
        out.merge(G8.relation_suite(500, seed, threads));
        out.merge(G32.relation_suite(500, seed, threads));
        out.merge(suzuki_membership_checks(G8, 1000, seed, threads));
        out.merge(suzuki_membership_checks(G32, 1000, seed, threads));
        out.merge(suzuki_mu_law_checks(G8, 50, 100, seed));
        out.merge(suzuki_mu_law_checks(G32, 50, 100, seed));
    }
    {
        ReeGroup G27(Ring::gf(3, 3)), G243(Ring::gf(3, 5));
        out.merge(G27.relation_suite(500, seed, threads));
        out.merge(G243.relation_suite(500, seed, threads));
        out.merge(ree_membership_checks(G27, 1000, seed, threads));
        out.merge(ree_mu_law_checks(G27, 50, 100, seed));
    }
    out.merge(g2_foundation_checks());
    out.merge(order_and_simplicity_checks(seed, true, 5));
    for (const Ring* R : {Ring::gf(2, 1), Ring::gf(2, 2), Ring::rational(2)}) {
        for (unsigned n : {2u, 3u}) {
            out.merge(isogeny_generator_law_checks(R, n, seed));
            out.merge(u_invariance_check(R, n, 200, seed, threads));
            out.merge(norm_and_scliff_check(R, n, 200, seed, threads));
            out.merge(frobenius_factorization_check(R, n, 100, seed, threads));
        }
    }
    out.merge(mixed_checks(seed));
    return out;
}

} // namespace twistgroup
