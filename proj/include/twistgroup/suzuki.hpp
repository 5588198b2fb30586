#pragma once

// The C2 (Sp4) Chevalley group in its 4-dim representation over the weight
// basis e1, e2, e-2, e-1, the mu-image through the 5-dim short-root module,
// and the Suzuki group ^sigma G(C2, R, tau) = { g : tau(g_lambda) = g_mu }.

#include <array>
#include <atomic>
#include <optional>
#include <utility>

#include "linalg.hpp"
#include "report.hpp"

namespace twistgroup {

enum class C2Root { a, b, ab, a2b, ma, mb, mab, ma2b };

struct C2RootInfo {
    const char* name;
    bool is_short;
    C2Root sigma;
    int height;
    // Z-level matrix units with signs: (coef, row, col), terminated by coef 0
    std::array<std::array<int, 3>, 2> units;
};

inline const C2RootInfo& c2_root_info(C2Root r)
{
    // signs chosen so the elementary matrices preserve the symplectic form
    // with Gram antidiag(1,1,-1,-1) over Z and reproduce the displayed
    // x+(a,b) matrix in characteristic 2
    static const std::array<C2RootInfo, 8> table = {{
        {"a", true, C2Root::b, 1, {{{1, 0, 1}, {-1, 2, 3}}}},
        {"b", false, C2Root::a, 1, {{{1, 1, 2}, {0, 0, 0}}}},
        {"a+b", true, C2Root::a2b, 2, {{{1, 0, 2}, {1, 1, 3}}}},
        {"2a+b", false, C2Root::ab, 3, {{{1, 0, 3}, {0, 0, 0}}}},
        {"-a", true, C2Root::mb, -1, {{{1, 1, 0}, {-1, 3, 2}}}},
        {"-b", false, C2Root::ma, -1, {{{1, 2, 1}, {0, 0, 0}}}},
        {"-a-b", true, C2Root::ma2b, -2, {{{1, 2, 0}, {1, 3, 1}}}},
        {"-2a-b", false, C2Root::mab, -3, {{{1, 3, 0}, {0, 0, 0}}}},
    }};
    return table[static_cast<std::size_t>(r)];
}

inline const std::array<C2Root, 8>& all_c2_roots()
{
    static const std::array<C2Root, 8> roots = {C2Root::a,  C2Root::b,   C2Root::ab,
                                                C2Root::a2b, C2Root::ma, C2Root::mb,
                                                C2Root::mab, C2Root::ma2b};
    return roots;
}

/// Elementary root element x_gamma(xi), valid over any characteristic
/// (the recorded Z-level signs are used).
inline Mat c2_xroot(const Ring* R, C2Root r, const RingElem& xi)
{
    Mat m = Mat::identity(R, 4);
    for (const auto& u : c2_root_info(r).units) {
        if (u[0] == 0)
            break;
        RingElem v = u[0] > 0 ? xi : -xi;
        m.at(u[1], u[2]) = m.at(u[1], u[2]) + v;
    }
    return m;
}

/// Gram matrix of the symplectic form: antidiag(1,1,-1,-1).
inline Mat c2_gram(const Ring* R)
{
    Mat o(R, 4, 4);
    o.at(0, 3) = R->one();
    o.at(1, 2) = R->one();
    o.at(2, 1) = -R->one();
    o.at(3, 0) = -R->one();
    return o;
}

inline bool c2_is_symplectic(const Mat& g)
{
    Mat o = c2_gram(g.ring());
    return g.transpose() * o * g == o;
}

/// Matrix of g on V(mu) = (ker of the wedge^2 contraction) / <omega>, in the
/// basis identified with V(lambda) by the weight-poset isomorphism.  On
/// generators: x_gamma(xi) -> x_{sigma gamma}(xi) for gamma long, xi^2 short.
inline Mat c2_mu_image(const Mat& g)
{
    const Ring* R = g.ring();
    if (R->p != 2)
        fail(errc::wrong_characteristic, "mu image needs characteristic 2");
    if (g.rows() != 4 || g.cols() != 4)
        fail(errc::dim_mismatch, "mu image needs a 4x4 matrix");
    // wedge^2 basis pairs in weight order: {1,2},{1,-2},{1,-1},{2,-2},{2,-1},{-2,-1}
    static const std::array<std::pair<int, int>, 6> pairs = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    static const std::array<std::size_t, 4> sub = {0, 1, 4, 5}; // V(mu) basis pairs
    Mat out(R, 4, 4);
    for (std::size_t c = 0; c < 4; ++c) {
        auto [k, l] = pairs[sub[c]];
        std::array<RingElem, 6> col;
        for (std::size_t r = 0; r < 6; ++r) {
            auto [i, j] = pairs[r];
            col[r] = g.at(i, k) * g.at(j, l) - g.at(i, l) * g.at(j, k);
        }
        // image lies in ker of the contraction: {1,-1} and {2,-2} coordinates
        // agree, and together they form the omega component we quotient out
        if (col[2] != col[3])
            fail(errc::not_symplectic, "wedge image escapes the contraction kernel");
        for (std::size_t r = 0; r < 4; ++r)
            out.at(r, c) = col[sub[r]];
    }
    return out;
}

struct SuzukiElement {
    Mat m;  // action on V(lambda)
    Mat mu; // certified mu-image: entrywise tau(m)
};

struct BruhatParts {
    SuzukiElement u, h, v;
    bool big_cell = false;
    RingElem eps;

    Mat reassemble(const Mat& w0) const
    {
        Mat m = u.m * h.m;
        if (big_cell)
            m = m * w0;
        return m * v.m;
    }
};

class SuzukiGroup {
public:
    explicit SuzukiGroup(const Ring* R) : R_(R), tau_(TitsEndo::on(R))
    {
        if (R->p != 2)
            fail(errc::wrong_characteristic, "Suzuki groups need characteristic 2");
    }

    const Ring* ring() const { return R_; }
    const TitsEndo& tits() const { return tau_; }

    Mat xroot(C2Root r, const RingElem& xi) const { return c2_xroot(R_, r, xi); }

    /// x+(a,b) = x_a(a) x_b(a^tau) x_{a+b}(b) x_{2a+b}(a^(tau+2) + b^tau)
    Mat xplus_mat(const RingElem& a, const RingElem& b) const
    {
        RingElem at = tau_(a);
        RingElem last = at * a * a + tau_(b);
        return xroot(C2Root::a, a) * xroot(C2Root::b, at) * xroot(C2Root::ab, b) *
               xroot(C2Root::a2b, last);
    }

    Mat w0_mat() const
    {
        Mat w(R_, 4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            w.at(i, 3 - i) = R_->one();
        return w;
    }

    Mat xminus_mat(const RingElem& a, const RingElem& b) const
    {
        Mat w = w0_mat();
        return w * xplus_mat(a, b) * w;
    }

    /// h(eps) = diag(eps, eps^(tau-1), eps^(1-tau), eps^(-1))
    Mat h_mat(const RingElem& eps) const
    {
        if (!eps.is_unit())
            fail(errc::non_unit, "torus parameter must be a unit");
        RingElem te = tau_(eps);
        Mat h(R_, 4, 4);
        h.at(0, 0) = eps;
        h.at(1, 1) = te / eps;
        h.at(2, 2) = eps / te;
        h.at(3, 3) = eps.inv();
        return h;
    }

    std::optional<SuzukiElement> certify(const Mat& g, MembershipFailure* why = nullptr) const
    {
        Mat mu = c2_mu_image(g);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                RingElem t = tau_(g.at(i, j));
                if (t != mu.at(i, j)) {
                    if (why)
                        *why = {i, j, t, mu.at(i, j)};
                    return std::nullopt;
                }
            }
        return SuzukiElement{g, mu};
    }

    SuzukiElement must_certify(const Mat& g) const
    {
        auto e = certify(g);
        if (!e)
            fail(errc::element_not_in_group, "element fails the tau g = g_mu tau condition");
        return *e;
    }

    SuzukiElement xplus(const RingElem& a, const RingElem& b) const
    {
        return must_certify(xplus_mat(a, b));
    }
    SuzukiElement xminus(const RingElem& a, const RingElem& b) const
    {
        return must_certify(xminus_mat(a, b));
    }
    SuzukiElement h(const RingElem& eps) const { return must_certify(h_mat(eps)); }
    SuzukiElement w0() const { return must_certify(w0_mat()); }
    SuzukiElement identity() const { return must_certify(Mat::identity(R_, 4)); }

    /// Recognize u = x+(a,b); the parameters sit at fixed entries.
    std::optional<std::pair<RingElem, RingElem>> u_params(const Mat& u) const
    {
        RingElem a = u.at(0, 1);
        RingElem b = u.at(1, 3);
        if (xplus_mat(a, b) != u)
            return std::nullopt;
        return std::make_pair(a, b);
    }

    /// Bruhat decomposition over a field: g = u h w v with w in {1, w0},
    /// decided by the bottom-left corner.
    BruhatParts bruhat(const SuzukiElement& g) const
    {
        if (!R_->is_field())
            fail(errc::not_a_field, "Bruhat decomposition needs a field");
        BruhatParts parts;
        if (g.m.at(3, 0).is_zero()) {
            RingElem eps = g.m.at(0, 0);
            Mat hm = h_mat(eps);
            Mat um = g.m * hm.inverse();
            auto pu = u_params(um);
            if (!pu)
                fail(errc::element_not_in_group, "upper-triangular part is not in U");
            parts.big_cell = false;
            parts.eps = eps;
            parts.u = must_certify(um);
            parts.h = must_certify(hm);
            parts.v = identity();
            return parts;
        }
        RingElem eps = g.m.at(3, 0).inv();
        RingElem c = g.m.at(3, 1) * eps;
        RingElem d = g.m.at(3, 2) * eps + tau_(c) * c;
        Mat vm = xplus_mat(c, d);
        Mat hm = h_mat(eps);
        Mat um = g.m * (hm * w0_mat() * vm).inverse();
        auto pu = u_params(um);
        if (!pu)
            fail(errc::element_not_in_group, "u-part is not in U");
        parts.big_cell = true;
        parts.eps = eps;
        parts.u = must_certify(um);
        parts.h = must_certify(hm);
        parts.v = must_certify(vm);
        return parts;
    }

    /// Generators of U and U^- with parameters running over an F_p-basis,
    /// enough to generate the whole group by BFS.
    std::vector<Mat> standard_generators() const
    {
        std::vector<Mat> gens;
        RingElem g = R_->generator();
        RingElem x = R_->one();
        for (unsigned i = 0; i < R_->k; ++i) {
            gens.push_back(xplus_mat(x, R_->zero()));
            gens.push_back(xplus_mat(R_->zero(), x));
            gens.push_back(xminus_mat(x, R_->zero()));
            gens.push_back(xminus_mat(R_->zero(), x));
            x = x * g;
        }
        return gens;
    }

    /// Evaluate every displayed section-1 identity at random parameters.
    Report relation_suite(std::size_t samples, std::uint64_t seed, unsigned threads = 1) const;

private:
    const Ring* R_;
    TitsEndo tau_;
};

inline Report SuzukiGroup::relation_suite(std::size_t samples, std::uint64_t seed,
                                          unsigned threads) const
{
    struct Identity {
        const char* name;
        // returns witness string on failure
        std::function<std::string(const SuzukiGroup&, std::mt19937_64&)> run;
    };

    auto comm = [](const Mat& g, const Mat& h) {
        return g * h * g.inverse() * h.inverse();
    };

    const std::vector<Identity> identities = {
        {"c2.product",
         [](const SuzukiGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem a = sample(R, rng), b = sample(R, rng);
             RingElem c = sample(R, rng), d = sample(R, rng);
             Mat lhs = G.xplus_mat(a, b) * G.xplus_mat(c, d);
             Mat rhs = G.xplus_mat(a + c, b + d + G.tits()(a) * c);
             if (lhs == rhs)
                 return "";
             return "a=" + a.str() + " b=" + b.str() + " c=" + c.str() + " d=" + d.str();
         }},
        {"c2.inverse",
         [](const SuzukiGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem a = sample(R, rng), b = sample(R, rng);
             Mat lhs = G.xplus_mat(a, b).inverse();
             Mat rhs = G.xplus_mat(a, b + G.tits()(a) * a);
             return lhs == rhs ? "" : "a=" + a.str() + " b=" + b.str();
         }},
        {"c2.torus_conjugation",
         [](const SuzukiGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem a = sample(R, rng), b = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             RingElem te = G.tits()(e);
             Mat h = G.h_mat(e);
             Mat lhs = h * G.xplus_mat(a, b) * h.inverse();
             Mat rhs = G.xplus_mat(e * e / te * a, te * b);
             return lhs == rhs ? "" : "a=" + a.str() + " b=" + b.str() + " eps=" + e.str();
         }},
        {"c2.commutator_b",
         [comm](const SuzukiGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem b = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             Mat lhs = comm(G.h_mat(e), G.xplus_mat(R->zero(), b));
             Mat rhs = G.xplus_mat(R->zero(), b + G.tits()(e) * b);
             return lhs == rhs ? "" : "b=" + b.str() + " eps=" + e.str();
         }},
        {"c2.commutator_a",
         [comm](const SuzukiGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem a = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             RingElem te = G.tits()(e);
             RingElem e2mt = e * e / te;      // eps^(2-tau)
             RingElem e2tm2 = te * te / (e * e); // eps^(2tau-2)
             Mat lhs = comm(G.h_mat(e), G.xplus_mat(a, R->zero()));
             Mat rhs = G.xplus_mat(a + e2mt * a, G.tits()(a) * a * (e2tm2 + R->one()));
             return lhs == rhs ? "" : "a=" + a.str() + " eps=" + e.str();
         }},
        {"c2.w0h_conjugation",
         [](const SuzukiGroup& G, std::mt19937_64& rng) -> std::string {
             // w0 h(eps^tau) = x-(0,eps)^{x+(eps^(1-tau),0)}
             const Ring* R = G.ring();
             RingElem e = sample_unit(R, rng);
             RingElem te = G.tits()(e);
             Mat lhs = G.w0_mat() * G.h_mat(te);
             Mat x = G.xplus_mat(e / te, R->zero());
             Mat rhs = x.inverse() * G.xminus_mat(R->zero(), e) * x;
             return lhs == rhs ? "" : "eps=" + e.str();
         }},
        {"c2.perfectness_b",
         [comm](const SuzukiGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem b = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             if (e.is_one())
                 return ""; // identity requires eps outside {0,1}
             RingElem den = G.tits()(e) + R->one();
             Mat lhs = comm(G.h_mat(e), G.xplus_mat(R->zero(), b / den));
             Mat rhs = G.xplus_mat(R->zero(), b);
             return lhs == rhs ? "" : "b=" + b.str() + " eps=" + e.str();
         }},
        {"c2.perfectness_a",
         [comm](const SuzukiGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem a = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             if (e.is_one())
                 return "";
             RingElem den = e * e / G.tits()(e) + R->one();
             Mat lhs = comm(G.h_mat(e), G.xplus_mat(a / den, R->zero()));
             Mat rhs = G.xplus_mat(a, G.tits()(a) * a / den);
             return lhs == rhs ? "" : "a=" + a.str() + " eps=" + e.str();
         }},
    };

    Report out;
    for (const auto& ident : identities) {
        std::atomic<std::size_t> failures{0};
        std::vector<std::string> witnesses(samples);
        parallel_samples(samples, threads, [&](std::size_t i) {
            std::mt19937_64 rng(per_sample_seed(seed, i));
            std::string w = ident.run(*this, rng);
            if (!w.empty()) {
                witnesses[i] = w;
                failures.fetch_add(1, std::memory_order_relaxed);
            }
        });
        std::string witness;
        for (const auto& w : witnesses)
            if (!w.empty()) {
                witness = w;
                break;
            }
        out.add(ident.name, "ring=" + R_->tag() + " samples=" + std::to_string(samples),
                failures.load() == 0, witness);
    }
    return out;
}

} // namespace twistgroup
