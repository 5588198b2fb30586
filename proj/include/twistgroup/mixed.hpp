#pragma once

// Tits mixed groups over ring pairs phi(F) <= E <= F: elementary mixed
// subgroups from generators (long-root parameters restricted to E), and
// ambient membership through the isogenies -- theta for types B/C and the
// mu-image for G2 -- using Frobenius-preimage extraction.

#include <functional>
#include <optional>
#include <string>

#include "isogeny.hpp"
#include "ree.hpp"

namespace twistgroup {

/// F plus a membership predicate for the subring E.  E only ever enters
/// through containment tests and p-th roots relative to F, so it is not a
/// separate ring type.
struct RingPair {
    const Ring* F = nullptr;
    std::string name;
    std::function<bool(const RingElem&)> in_E;

    /// E = F_2(t^2) = squares inside F = F_2(t).
    static RingPair f2t2_f2t()
    {
        RingPair p;
        p.F = Ring::rational(2);
        p.name = "f2t2-f2t";
        p.in_E = [](const RingElem& x) { return p_th_root(x).has_value(); };
        return p;
    }

    /// E = GF(3) as the prime subfield of F = GF(27).
    static RingPair gf3_gf27()
    {
        RingPair p;
        p.F = Ring::gf(3, 3);
        p.name = "gf3-gf27";
        p.in_E = [](const RingElem& x) { return frobenius(x) == x; };
        return p;
    }

    /// Degenerate pair E = F.
    static RingPair trivial(const Ring* R)
    {
        RingPair p;
        p.F = R;
        p.name = R->tag() + "-" + R->tag();
        p.in_E = [](const RingElem&) { return true; };
        return p;
    }

    static RingPair from_name(std::string_view n)
    {
        if (n == "f2t2-f2t")
            return f2t2_f2t();
        if (n == "gf3-gf27")
            return gf3_gf27();
        fail(errc::bad_argument, "unknown ring pair '" + std::string(n) + "'");
    }
};

enum class MixedType { Bn, Cn, G2 };

/// Generators x_alpha(xi) with xi in E for long alpha and xi in F for short;
/// a long-root parameter outside E raises param_not_in_subring.
inline std::vector<Mat> mixed_elementary_gens(MixedType type, unsigned n, const RingPair& pair,
                                              const std::vector<RingElem>& long_params,
                                              const std::vector<RingElem>& short_params)
{
    for (const RingElem& xi : long_params)
        if (!pair.in_E(xi))
            fail(errc::param_not_in_subring,
                 "long-root parameter '" + xi.str() + "' is not in E (" + pair.name + ")");
    std::vector<Mat> gens;
    const Ring* R = pair.F;
    switch (type) {
    case MixedType::Cn:
        // long roots 2eps_i; short roots eps_i - eps_j (i != +-j)
        for (const RingElem& xi : long_params)
            for (int i = 1; i <= int(n); ++i) {
                gens.push_back(cn_xroot(R, n, i, -i, xi));
                gens.push_back(cn_xroot(R, n, -i, i, xi));
            }
        for (const RingElem& xi : short_params)
            for (int i = -int(n); i <= int(n); ++i)
                for (int j = -int(n); j <= int(n); ++j) {
                    if (i == 0 || j == 0 || i == j || i == -j)
                        continue;
                    gens.push_back(cn_xroot(R, n, i, j, xi));
                }
        break;
    case MixedType::Bn:
        // long roots eps_i - eps_j; short roots eps_i
        for (const RingElem& xi : long_params)
            for (int i = -int(n); i <= int(n); ++i)
                for (int j = -int(n); j <= int(n); ++j) {
                    if (i == 0 || j == 0 || i == j || i == -j)
                        continue;
                    gens.push_back(bn_xroot_long(R, n, i, j, xi));
                }
        for (const RingElem& xi : short_params)
            for (int i = 1; i <= int(n); ++i) {
                gens.push_back(bn_xroot_short(R, n, i, xi));
                gens.push_back(bn_xroot_short(R, n, -i, xi));
            }
        break;
    case MixedType::G2:
        for (G2Root r : all_g2_roots()) {
            const auto& info = g2_root_info(r);
            for (const RingElem& xi : info.is_long ? long_params : short_params)
                gens.push_back(g2_xroot(R, r, xi));
        }
        break;
    }
    return gens;
}

struct MixedMembership {
    bool member = false;
    std::optional<Mat> preimage; // h with theta'(h) = g (or the mu-preimage)
    std::string witness;
};

/// Ambient mixed membership for type B: g is in theta(G(C_n, F)) iff
/// rho(g) has an entrywise square root h in F and spin_to_vector(theta(h))
/// reproduces g.
inline MixedMembership mixed_member_bc(const Mat& g, unsigned n, const RingPair& pair)
{
    MixedMembership out;
    if (!is_orthogonal(g, n)) {
        out.witness = "input does not preserve the quadratic form";
        return out;
    }
    Mat r = rho(g, n);
    Mat h(pair.F, 2 * n, 2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = 0; j < 2 * n; ++j) {
            auto root = p_th_root(r.at(i, j));
            if (!root) {
                out.witness = "rho(g)[" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                              r.at(i, j).str() + " has no square root in F";
                return out;
            }
            h.at(i, j) = *root;
        }
    if (!is_symplectic(h, n)) {
        out.witness = "recovered preimage is not symplectic";
        return out;
    }
    Mat back = spin_to_vector(theta(h, n), n);
    if (back != g) {
        for (std::size_t i = 0; i < 2 * n + 1; ++i)
            for (std::size_t j = 0; j < 2 * n + 1; ++j)
                if (back.at(i, j) != g.at(i, j)) {
                    out.witness = "theta(h) disagrees with g at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")";
                    return out;
                }
    }
    out.member = true;
    out.preimage = std::move(h);
    return out;
}

/// Ambient mixed membership for G2: g is in the mu-image of G(G2, F) iff
/// mu(g) has an entrywise cube root h in F with mu(h) = g (mu o mu is
/// Frobenius).
inline MixedMembership mixed_member_g2(const Mat& g, const RingPair& pair, const G2Rep& rep)
{
    MixedMembership out;
    if (!g2_check_forms(g)) {
        out.witness = "input does not preserve B and T";
        return out;
    }
    Mat mu = rep.mu_image(g);
    Mat h(pair.F, 7, 7);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) {
            auto root = p_th_root(mu.at(i, j));
            if (!root) {
                out.witness = "mu(g)[" + std::to_string(i) + "][" + std::to_string(j) +
                              "] has no cube root in F";
                return out;
            }
            h.at(i, j) = *root;
        }
    if (!g2_check_forms(h)) {
        out.witness = "recovered preimage does not preserve B and T";
        return out;
    }
    Mat back = rep.mu_image(h);
    if (back != g) {
        out.witness = "mu(h) disagrees with g";
        return out;
    }
    out.member = true;
    out.preimage = std::move(h);
    return out;
}

} // namespace twistgroup
