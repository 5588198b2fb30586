#include <catch_amalgamated.hpp>

#include "twistgroup/group_lab.hpp"
#include "twistgroup/ree.hpp"
#include "twistgroup/verify.hpp"

using namespace twistgroup;

namespace {

IntMat7 from_units(std::initializer_list<std::array<int, 3>> units)
{
    IntMat7 m{};
    for (const auto& u : units)
        m[u[1]][u[2]] += u[0];
    return m;
}

} // namespace

TEST_CASE("Chevalley basis matches the fixed list")
{
    const G2Data& D = G2Data::instance();
    // positive root vectors, basis e1 e2 e3 e0 e-3 e-2 e-1 (positions 0..6)
    REQUIRE(D.e[int(G2Root::a)] ==
            from_units({{1, 0, 1}, {-2, 2, 3}, {1, 3, 4}, {-1, 5, 6}}));
    REQUIRE(D.e[int(G2Root::b)] == from_units({{1, 1, 2}, {-1, 4, 5}}));
    REQUIRE(D.e[int(G2Root::ab)] ==
            from_units({{1, 0, 2}, {2, 1, 3}, {-1, 3, 5}, {-1, 4, 6}}));
    REQUIRE(D.e[int(G2Root::a2b)] ==
            from_units({{2, 0, 3}, {-1, 1, 4}, {1, 2, 5}, {-1, 3, 6}}));
    REQUIRE(D.e[int(G2Root::a3b)] == from_units({{-1, 0, 4}, {1, 2, 6}}));
    REQUIRE(D.e[int(G2Root::a3b2)] == from_units({{-1, 0, 5}, {1, 1, 6}}));
    // negatives are -P e P
    for (int r = 0; r < 6; ++r) {
        IntMat7 peri{};
        for (int i = 0; i < 7; ++i)
            peri[i][6 - i] = 1;
        IntMat7 want = G2Data::mul(peri, G2Data::mul(D.e[r], peri));
        for (auto& row : want)
            for (auto& v : row)
                v = -v;
        REQUIRE(D.e[r + 6] == want);
    }
    // Cartan elements
    IntMat7 ha{}, hb{};
    int hav[7] = {1, -1, 2, 0, -2, 1, -1}, hbv[7] = {0, 1, -1, 0, 1, -1, 0};
    for (int i = 0; i < 7; ++i) {
        ha[i][i] = hav[i];
        hb[i][i] = hbv[i];
    }
    REQUIRE(D.h_alpha == ha);
    REQUIRE(D.h_beta == hb);
}

TEST_CASE("foundation checks all pass")
{
    Report r = g2_foundation_checks();
    for (const auto& c : r.checks) {
        INFO(c.name << " " << c.witness);
        REQUIRE(c.pass);
    }
}

TEST_CASE("divided powers give the displayed generator shapes")
{
    const Ring* F27 = Ring::gf(3, 3);
    std::mt19937_64 rng(1);
    SECTION("x_b(xi) = I + xi e_b")
    {
        for (int i = 0; i < 20; ++i) {
            RingElem xi = sample(F27, rng);
            Mat want = Mat::identity(F27, 7) +
                       reduce_int_mat(F27, G2Data::instance().e[int(G2Root::b)])
                           .map_entries([&](const RingElem& v) { return xi * v; });
            REQUIRE(g2_xroot(F27, G2Root::b, xi) == want);
        }
    }
    SECTION("x_a(xi) = I + xi e_a - xi^2 e_{3,-3}")
    {
        for (int i = 0; i < 20; ++i) {
            RingElem xi = sample(F27, rng);
            Mat want = Mat::identity(F27, 7) +
                       reduce_int_mat(F27, G2Data::instance().e[int(G2Root::a)])
                           .map_entries([&](const RingElem& v) { return xi * v; });
            want.at(2, 4) = want.at(2, 4) - xi * xi;
            REQUIRE(g2_xroot(F27, G2Root::a, xi) == want);
        }
    }
    SECTION("x_gamma(0) = I")
    {
        for (G2Root r : all_g2_roots())
            REQUIRE(g2_xroot(F27, r, F27->zero()) == Mat::identity(F27, 7));
    }
}

TEST_CASE("form checks")
{
    const Ring* F27 = Ring::gf(3, 3);
    std::mt19937_64 rng(2);
    SECTION("identity and generators preserve the forms")
    {
        REQUIRE(g2_check_forms(Mat::identity(F27, 7)));
        for (G2Root r : all_g2_roots())
            for (int i = 0; i < 10; ++i)
                REQUIRE(g2_check_forms(g2_xroot(F27, r, sample(F27, rng))));
    }
    SECTION("diag(2,1,1,1,1,1,2^-1) breaks T")
    {
        Mat d = Mat::identity(F27, 7);
        d.at(0, 0) = F27->from_int(2);
        d.at(6, 6) = F27->from_int(2).inv();
        REQUIRE_FALSE(g2_check_forms(d));
    }
}

TEST_CASE("adjoint action")
{
    const Ring* F27 = Ring::gf(3, 3);
    ReeGroup G(F27);
    SECTION("Ad(I) = I14")
    {
        REQUIRE(G.rep().adjoint_action(Mat::identity(F27, 7)) == Mat::identity(F27, 14));
    }
    SECTION("Ad(x_b(1)) fixes e_b")
    {
        Mat ad = G.rep().adjoint_action(G.xroot(G2Root::b, F27->one()));
        // e_b sits at index 2 of the basis order
        for (std::size_t r = 0; r < 14; ++r)
            REQUIRE(ad.at(r, 2) == (r == 2 ? F27->one() : F27->zero()));
    }
    SECTION("Ad(h) is diagonal with root-character entries")
    {
        // Ad(h) e_gamma = gamma(h) e_gamma, and gamma(h) = h_ii / h_jj for
        // any matrix unit (i,j) of e_gamma; Cartan elements are fixed
        const G2Data& D = G2Data::instance();
        const G2Root basis_roots[14] = {
            G2Root::a3b2, G2Root::a3b,  G2Root::b,    G2Root::b /*h_b slot*/,
            G2Root::mb,   G2Root::ma3b, G2Root::ma3b2, G2Root::a2b,
            G2Root::ab,   G2Root::a,    G2Root::a /*h_a slot*/, G2Root::ma,
            G2Root::mab,  G2Root::ma2b};
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 10; ++trial) {
            RingElem e = sample_unit(F27, rng);
            Mat h = G.h_mat(e);
            Mat ad = G.rep().adjoint_action(h);
            for (std::size_t r = 0; r < 14; ++r)
                for (std::size_t c = 0; c < 14; ++c)
                    if (r != c)
                        REQUIRE(ad.at(r, c) == F27->zero());
            for (std::size_t k = 0; k < 14; ++k) {
                if (k == 3 || k == 10) {
                    REQUIRE(ad.at(k, k) == F27->one()); // h_b, h_a are fixed
                    continue;
                }
                const IntMat7& ev = D.e[int(basis_roots[k])];
                RingElem character;
                for (int i = 0; i < 7 && !character.valid(); ++i)
                    for (int j = 0; j < 7; ++j)
                        if (ev[i][j]) {
                            character = h.at(i, i) / h.at(j, j);
                            break;
                        }
                REQUIRE(ad.at(k, k) == character);
            }
        }
    }
    SECTION("non-G2 inputs are flagged")
    {
        Mat bad = Mat::identity(F27, 7);
        bad.at(0, 1) = F27->one(); // not form-preserving
        REQUIRE_THROWS_AS(G.rep().adjoint_action(bad), Error);
    }
}

TEST_CASE("mu law for all twelve roots")
{
    SECTION("exhaustive at q = 3, xi = 1: the sign (-1)^(1+ht) is reproduced")
    {
        const Ring* F3 = Ring::gf(3, 1);
        G2Rep rep(F3);
        for (G2Root r : all_g2_roots()) {
            const auto& info = g2_root_info(r);
            int sign = ((1 + info.height) % 2 == 0) ? 1 : -1;
            Mat got = rep.mu_image(g2_xroot(F3, r, F3->one()));
            Mat want = g2_xroot(F3, info.sigma, F3->from_int(sign));
            REQUIRE(got == want);
        }
    }
    SECTION("random xi over GF(27), exponent 1 long / 3 short")
    {
        const Ring* F27 = Ring::gf(3, 3);
        G2Rep rep(F27);
        std::mt19937_64 rng(4);
        for (G2Root r : all_g2_roots()) {
            const auto& info = g2_root_info(r);
            for (int i = 0; i < 50; ++i) {
                RingElem xi = sample(F27, rng);
                int sign = ((1 + info.height) % 2 == 0) ? 1 : -1;
                RingElem arg = info.is_long ? xi : xi * xi * xi;
                if (sign < 0)
                    arg = -arg;
                REQUIRE(rep.mu_image(g2_xroot(F27, r, xi)) == g2_xroot(F27, info.sigma, arg));
            }
        }
    }
    SECTION("mu is multiplicative on generator products")
    {
        const Ring* F27 = Ring::gf(3, 3);
        ReeGroup G(F27);
        std::mt19937_64 rng(12);
        for (int i = 0; i < 1000; ++i) {
            Mat g = random_ree_element(G, rng, 2);
            Mat h = random_ree_element(G, rng, 2);
            REQUIRE(G.rep().mu_image(g * h) == G.rep().mu_image(g) * G.rep().mu_image(h));
        }
    }
    SECTION("mu o mu = entrywise cube on generator products")
    {
        const Ring* F27 = Ring::gf(3, 3);
        ReeGroup G(F27);
        std::mt19937_64 rng(5);
        for (int i = 0; i < 1000; ++i) {
            Mat g = random_ree_element(G, rng, 3);
            REQUIRE(G.rep().mu_image(G.rep().mu_image(g)) == frobenius_map(g));
        }
    }
}

TEST_CASE("membership")
{
    SECTION("x_a(1) alone over GF(3) is not a member")
    {
        const Ring* F3 = Ring::gf(3, 1);
        ReeGroup G(F3);
        REQUIRE_FALSE(G.certify(G.xroot(G2Root::a, F3->one())).has_value());
    }
    SECTION("x+(a,b,c) is always a member; h(-1) is the displayed diagonal")
    {
        const Ring* F27 = Ring::gf(3, 3);
        ReeGroup G(F27);
        std::mt19937_64 rng(6);
        for (int i = 0; i < 50; ++i) {
            RingElem a = sample(F27, rng), b = sample(F27, rng), c = sample(F27, rng);
            REQUIRE(G.certify(G.xplus_mat(a, b, c)).has_value());
        }
        Mat h = G.h_mat(-F27->one());
        for (std::size_t i = 0; i < 7; ++i)
            REQUIRE(h.at(i, i) == (i % 2 == 0 ? -F27->one() : F27->one()));
        REQUIRE(G.certify(h).has_value());
    }
    SECTION("closure under products and inverses")
    {
        const Ring* F27 = Ring::gf(3, 3);
        ReeGroup G(F27);
        std::mt19937_64 rng(7);
        for (int i = 0; i < 1000; ++i) {
            Mat g = random_ree_element(G, rng);
            Mat h = random_ree_element(G, rng);
            REQUIRE(G.certify(g * h).has_value());
            REQUIRE(G.certify(g.inverse()).has_value());
        }
    }
}

TEST_CASE("torus membership needs eps2 = eps1^tau, exhaustively at q = 3 and 27")
{
    // h_a(e1) h_b(e2) = diag(e1, e2/e1, e1^2/e2, 1, e2/e1^2, e1/e2, 1/e1);
    // the displayed h(eps) is the eps2 = eps1^tau case -- check the only-if
    // direction over both fields
    for (const Ring* R : {Ring::gf(3, 1), Ring::gf(3, 3)}) {
        ReeGroup G(R);
        const auto& tau = G.tits();
        for (std::uint32_t v1 = 1; v1 < R->q; ++v1)
            for (std::uint32_t v2 = 1; v2 < R->q; ++v2) {
                RingElem e1 = RingElem::gf_make(R, v1), e2 = RingElem::gf_make(R, v2);
                Mat h(R, 7, 7);
                h.at(0, 0) = e1;
                h.at(1, 1) = e2 / e1;
                h.at(2, 2) = e1 * e1 / e2;
                h.at(3, 3) = R->one();
                h.at(4, 4) = e2 / (e1 * e1);
                h.at(5, 5) = e1 / e2;
                h.at(6, 6) = e1.inv();
                bool member = G.certify(h).has_value();
                REQUIRE(member == (e2 == tau(e1)));
                if (member)
                    REQUIRE(h == G.h_mat(e1));
            }
    }
}

TEST_CASE("x1 factor matches its displayed factorization")
{
    const Ring* F27 = Ring::gf(3, 3);
    ReeGroup G(F27);
    const auto& tau = G.tits();
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
        RingElem a = sample(F27, rng);
        Mat want = G.xroot(G2Root::a, a) * G.xroot(G2Root::b, tau(a)) *
                   G.xroot(G2Root::ab, -(tau(a) * a)) * G.xroot(G2Root::a2b, tau(a) * a * a);
        REQUIRE(G.x1(a) == want);
        REQUIRE(G.xplus_mat(a, F27->zero(), F27->zero()) == want);
    }
}

TEST_CASE("relation suite passes at 500 samples")
{
    for (const Ring* R : {Ring::gf(3, 3), Ring::gf(3, 5)}) {
        ReeGroup G(R);
        Report rep = G.relation_suite(500, 2024);
        for (const auto& c : rep.checks) {
            INFO(c.name << " witness: " << c.witness);
            REQUIRE(c.pass);
        }
    }
}

TEST_CASE("Bruhat decomposition over GF(3), exhaustive")
{
    ReeGroup G(Ring::gf(3, 1));
    GroupTable t = ree_table(G);
    REQUIRE(t.order() == 1512);
    std::size_t small = 0, big = 0;
    for (std::size_t i = 0; i < t.order(); ++i) {
        Mat m = t.element_at(i);
        auto elem = G.certify(m);
        REQUIRE(elem.has_value());
        auto parts = G.bruhat(*elem);
        REQUIRE(parts.reassemble(G.w0_mat()) == m);
        (parts.big_cell ? big : small) += 1;
    }
    REQUIRE(small == 54);
    REQUIRE(big == 1458);
}

TEST_CASE("w0 expression identity pinned: x+(0,1/eta,0) x-(0,eta,0) x+(0,1/eta,0)")
{
    const Ring* F27 = Ring::gf(3, 3);
    ReeGroup G(F27);
    const auto& tau = G.tits();
    for (std::uint32_t v = 1; v < 27; ++v) {
        RingElem eta = RingElem::gf_make(F27, v);
        RingElem ie = eta.inv();
        RingElem z = F27->zero();
        Mat lhs = G.xplus_mat(z, ie, z) * G.xminus_mat(z, eta, z) * G.xplus_mat(z, ie, z);
        REQUIRE(lhs == G.w0_mat() * G.h_mat(tau(eta) * eta));
    }
}

TEST_CASE("derived subgroup at q=3 has order 504 and the BFS certifies members")
{
    ReeGroup G(Ring::gf(3, 1));
    GroupTable t = ree_table(G);
    GroupTable derived = commutator_subgroup(t);
    REQUIRE(derived.order() == 504);
    // every table element passes the membership predicate
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        Mat m = t.element_at(rng() % t.order());
        REQUIRE(G.certify(m).has_value());
    }
}
