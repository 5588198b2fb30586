#include <catch_amalgamated.hpp>

#include "twistgroup/group_lab.hpp"
#include "twistgroup/suzuki.hpp"
#include "twistgroup/verify.hpp"

using namespace twistgroup;

TEST_CASE("root elements preserve the signed form in odd characteristic")
{
    // the recorded Z-level structure constants are visible over GF(3)
    const Ring* F3 = Ring::gf(3, 1);
    for (C2Root r : all_c2_roots()) {
        for (int v = 0; v < 3; ++v) {
            Mat m = c2_xroot(F3, r, F3->from_int(v));
            REQUIRE(c2_is_symplectic(m));
            REQUIRE(m.determinant() == F3->one());
        }
    }
}

TEST_CASE("negative root elements are the transposed patterns")
{
    const Ring* F8 = Ring::gf(2, 3);
    std::mt19937_64 rng(11);
    const std::pair<C2Root, C2Root> pairs[] = {{C2Root::a, C2Root::ma},
                                               {C2Root::b, C2Root::mb},
                                               {C2Root::ab, C2Root::mab},
                                               {C2Root::a2b, C2Root::ma2b}};
    for (auto [pos, neg] : pairs)
        for (int i = 0; i < 10; ++i) {
            RingElem xi = sample(F8, rng);
            REQUIRE(c2_xroot(F8, neg, xi) == c2_xroot(F8, pos, xi).transpose());
            REQUIRE(c2_is_symplectic(c2_xroot(F8, neg, xi)));
        }
}

TEST_CASE("x+(a,b) matches the displayed matrix")
{
    for (const Ring* R : {Ring::gf(2, 1), Ring::gf(2, 3), Ring::gf(2, 5)}) {
        SuzukiGroup G(R);
        const auto& tau = G.tits();
        std::mt19937_64 rng(1);
        for (int i = 0; i < 200; ++i) {
            RingElem a = sample(R, rng), b = sample(R, rng);
            Mat m = G.xplus_mat(a, b);
            Mat want = Mat::identity(R, 4);
            want.at(0, 1) = a;
            want.at(0, 2) = b + tau(a) * a;
            want.at(0, 3) = a * b + tau(b) + tau(a) * a * a;
            want.at(1, 2) = tau(a);
            want.at(1, 3) = b;
            want.at(2, 3) = a;
            REQUIRE(m == want);
        }
    }
}

TEST_CASE("mu image on generators: long keeps xi, short squares it")
{
    for (const Ring* R : {Ring::gf(2, 3), Ring::gf(2, 5)}) {
        std::mt19937_64 rng(2);
        for (C2Root r : all_c2_roots()) {
            const auto& info = c2_root_info(r);
            for (int i = 0; i < 50; ++i) {
                RingElem xi = sample(R, rng);
                Mat img = c2_mu_image(c2_xroot(R, r, xi));
                Mat want = c2_xroot(R, info.sigma, info.is_short ? xi * xi : xi);
                REQUIRE(img == want);
            }
        }
    }
    SECTION("mu rejects characteristic 3")
    {
        Mat m = Mat::identity(Ring::gf(3, 1), 4);
        REQUIRE_THROWS_AS(c2_mu_image(m), Error);
    }
    SECTION("mu works over any characteristic-2 ring, including F_2(t)")
    {
        const Ring* F = Ring::rational(2);
        RingElem t = F->generator();
        for (C2Root r : all_c2_roots()) {
            const auto& info = c2_root_info(r);
            Mat img = c2_mu_image(c2_xroot(F, r, t));
            REQUIRE(img == c2_xroot(F, info.sigma, info.is_short ? t * t : t));
        }
    }
    SECTION("mu is multiplicative on generator products")
    {
        const Ring* R = Ring::gf(2, 3);
        SuzukiGroup G(R);
        std::mt19937_64 rng(7);
        for (int i = 0; i < 1000; ++i) {
            Mat g = random_suzuki_element(G, rng, 3);
            Mat h = random_suzuki_element(G, rng, 3);
            REQUIRE(c2_mu_image(g * h) == c2_mu_image(g) * c2_mu_image(h));
        }
    }
    SECTION("mu o mu = entrywise Frobenius")
    {
        const Ring* R = Ring::gf(2, 3);
        SuzukiGroup G(R);
        std::mt19937_64 rng(8);
        for (int i = 0; i < 1000; ++i) {
            Mat g = random_suzuki_element(G, rng, 3);
            REQUIRE(c2_mu_image(c2_mu_image(g)) == frobenius_map(g));
        }
    }
}

TEST_CASE("membership certificates")
{
    SECTION("x_a(1) over GF(2) is not a member")
    {
        const Ring* F2 = Ring::gf(2, 1);
        SuzukiGroup G(F2);
        MembershipFailure why;
        auto v = G.certify(c2_xroot(F2, C2Root::a, F2->one()), &why);
        REQUIRE_FALSE(v.has_value());
        REQUIRE(why.tau_value != why.mu_value);
    }
    SECTION("x+(a,b) is always a member")
    {
        const Ring* F8 = Ring::gf(2, 3);
        SuzukiGroup G(F8);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 64; ++i) {
            RingElem a = sample(F8, rng), b = sample(F8, rng);
            REQUIRE(G.certify(G.xplus_mat(a, b)).has_value());
        }
    }
    SECTION("closure under products and inverses")
    {
        for (const Ring* R : {Ring::gf(2, 3), Ring::gf(2, 5)}) {
            SuzukiGroup G(R);
            std::mt19937_64 rng(4);
            for (int i = 0; i < 1000; ++i) {
                Mat g = random_suzuki_element(G, rng);
                Mat h = random_suzuki_element(G, rng);
                REQUIRE(G.certify(g * h).has_value());
                REQUIRE(G.certify(g.inverse()).has_value());
            }
        }
    }
}

TEST_CASE("torus pinned example over GF(8)")
{
    const Ring* F8 = Ring::gf(2, 3);
    SuzukiGroup G(F8);
    RingElem e = F8->generator(); // tau: e -> e^4
    Mat h = G.h_mat(e);
    REQUIRE(h.at(0, 0) == e);
    REQUIRE(h.at(1, 1) == e.pow(3)); // e^(tau-1)
    REQUIRE(h.at(2, 2) == e.pow(4)); // e^(1-tau) = e^(-3) = e^4
    REQUIRE(h.at(3, 3) == e.pow(6)); // e^(-1)
    REQUIRE(G.xplus_mat(F8->zero(), F8->zero()) == Mat::identity(F8, 4));
    REQUIRE_THROWS_AS(G.h_mat(F8->zero()), Error);
}

TEST_CASE("torus membership needs eps2 = eps1^tau")
{
    // h_a(e1) h_b(e2) = diag(e1, e2/e1, e1/e2, 1/e1); the displayed form
    // makes eps2 = eps1^tau sufficient -- this checks it is also necessary
    // at q = 8 and q = 32 (exhaustive)
    for (const Ring* R : {Ring::gf(2, 3), Ring::gf(2, 5)}) {
        SuzukiGroup G(R);
        const auto& tau = G.tits();
        for (std::uint32_t v1 = 1; v1 < R->q; ++v1)
            for (std::uint32_t v2 = 1; v2 < R->q; ++v2) {
                RingElem e1 = RingElem::gf_make(R, v1), e2 = RingElem::gf_make(R, v2);
                Mat h(R, 4, 4);
                h.at(0, 0) = e1;
                h.at(1, 1) = e2 / e1;
                h.at(2, 2) = e1 / e2;
                h.at(3, 3) = e1.inv();
                bool member = G.certify(h).has_value();
                REQUIRE(member == (e2 == tau(e1)));
            }
    }
}

TEST_CASE("relation suite passes at 500 samples")
{
    for (const Ring* R : {Ring::gf(2, 3), Ring::gf(2, 5)}) {
        SuzukiGroup G(R);
        Report rep = G.relation_suite(500, 2024);
        for (const auto& c : rep.checks) {
            INFO(c.name << " witness: " << c.witness);
            REQUIRE(c.pass);
        }
    }
}

TEST_CASE("perfectness identities hold for every eps outside {0,1} over GF(8)")
{
    const Ring* F8 = Ring::gf(2, 3);
    SuzukiGroup G(F8);
    const auto& tau = G.tits();
    std::mt19937_64 rng(5);
    auto comm = [](const Mat& g, const Mat& h) { return g * h * g.inverse() * h.inverse(); };
    for (std::uint32_t v = 2; v < 8; ++v) {
        RingElem e = RingElem::gf_make(F8, v);
        Mat h = G.h_mat(e);
        for (int i = 0; i < 100; ++i) {
            RingElem a = sample(F8, rng), b = sample(F8, rng);
            RingElem den_b = tau(e) + F8->one();
            REQUIRE(comm(h, G.xplus_mat(F8->zero(), b / den_b)) ==
                    G.xplus_mat(F8->zero(), b));
            RingElem den_a = e * e / tau(e) + F8->one();
            REQUIRE(comm(h, G.xplus_mat(a / den_a, F8->zero())) ==
                    G.xplus_mat(a, tau(a) * a / den_a));
        }
    }
}

TEST_CASE("Bruhat decomposition")
{
    SECTION("identity and w0")
    {
        const Ring* F8 = Ring::gf(2, 3);
        SuzukiGroup G(F8);
        auto parts = G.bruhat(G.identity());
        REQUIRE_FALSE(parts.big_cell);
        REQUIRE(parts.u.m.is_identity());
        REQUIRE(parts.h.m.is_identity());

        auto wparts = G.bruhat(G.w0());
        REQUIRE(wparts.big_cell);
        REQUIRE(wparts.u.m.is_identity());
        REQUIRE(wparts.h.m.is_identity());
        REQUIRE(wparts.v.m.is_identity());
        REQUIRE(wparts.reassemble(G.w0_mat()) == G.w0_mat());
    }
    SECTION("exhaustive over Sz(2): cells 4 + 16, exact reassembly")
    {
        SuzukiGroup G(Ring::gf(2, 1));
        GroupTable t = suzuki_table(G);
        REQUIRE(t.order() == 20);
        std::size_t small = 0, big = 0;
        for (std::size_t i = 0; i < t.order(); ++i) {
            Mat m = t.element_at(i);
            auto elem = G.certify(m);
            REQUIRE(elem.has_value());
            auto parts = G.bruhat(*elem);
            REQUIRE(parts.reassemble(G.w0_mat()) == m);
            REQUIRE(parts.big_cell == !m.at(3, 0).is_zero());
            (parts.big_cell ? big : small) += 1;
        }
        REQUIRE(small == 4);
        REQUIRE(big == 16);
    }
    SECTION("random big-cell elements over GF(32) reassemble")
    {
        SuzukiGroup G(Ring::gf(2, 5));
        std::mt19937_64 rng(6);
        for (int i = 0; i < 200; ++i) {
            Mat m = random_suzuki_element(G, rng, 5);
            auto parts = G.bruhat(G.must_certify(m));
            REQUIRE(parts.reassemble(G.w0_mat()) == m);
        }
    }
}

TEST_CASE("w0 h identity uses the tau-twisted torus argument")
{
    // w0 h(eps^tau) = x-(0,eps)^{x+(eps^(1-tau),0)} holds exhaustively;
    // the untwisted variant fails for every eps with eps^tau != eps
    const Ring* F8 = Ring::gf(2, 3);
    SuzukiGroup G(F8);
    const auto& tau = G.tits();
    for (std::uint32_t v = 1; v < 8; ++v) {
        RingElem e = RingElem::gf_make(F8, v);
        Mat x = G.xplus_mat(e / tau(e), F8->zero());
        Mat conj = x.inverse() * G.xminus_mat(F8->zero(), e) * x;
        REQUIRE(conj == G.w0_mat() * G.h_mat(tau(e)));
        if (tau(e) != e)
            REQUIRE(conj != G.w0_mat() * G.h_mat(e));
    }
}
