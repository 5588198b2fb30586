#pragma once

// The G2 Chevalley group in the 7-dim representation cut out by the bilinear
// form B and the alternating trilinear form T, the explicit Chevalley basis,
// the adjoint-quotient mu-image (characteristic 3), and the small Ree group
// ^sigma G(G2, R, tau).

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>

#include "linalg.hpp"
#include "report.hpp"

namespace twistgroup {

enum class G2Root {
    a,     // alpha (short)
    b,     // beta (long)
    ab,    // alpha+beta (short)
    a2b,   // 2alpha+beta (short)
    a3b,   // 3alpha+beta (long)
    a3b2,  // 3alpha+2beta (long)
    ma, mb, mab, ma2b, ma3b, ma3b2,
};

using IntMat7 = std::array<std::array<int, 7>, 7>;

struct G2RootInfo {
    const char* name;
    bool is_long;
    int height;
    G2Root sigma;
};

inline const G2RootInfo& g2_root_info(G2Root r)
{
    static const std::array<G2RootInfo, 12> table = {{
        {"a", false, 1, G2Root::b},
        {"b", true, 1, G2Root::a},
        {"a+b", false, 2, G2Root::a3b},
        {"2a+b", false, 3, G2Root::a3b2},
        {"3a+b", true, 4, G2Root::ab},
        {"3a+2b", true, 5, G2Root::a2b},
        {"-a", false, -1, G2Root::mb},
        {"-b", true, -1, G2Root::ma},
        {"-a-b", false, -2, G2Root::ma3b},
        {"-2a-b", false, -3, G2Root::ma3b2},
        {"-3a-b", true, -4, G2Root::mab},
        {"-3a-2b", true, -5, G2Root::ma2b},
    }};
    return table[static_cast<std::size_t>(r)];
}

inline const std::array<G2Root, 12>& all_g2_roots()
{
    static const std::array<G2Root, 12> roots = {
        G2Root::a,  G2Root::b,  G2Root::ab,  G2Root::a2b,  G2Root::a3b,  G2Root::a3b2,
        G2Root::ma, G2Root::mb, G2Root::mab, G2Root::ma2b, G2Root::ma3b, G2Root::ma3b2};
    return roots;
}

/// Integer-level G2 data: Chevalley basis matrices, their halved squares,
/// Cartan elements, and the two invariant forms.  Basis order of V:
/// e1, e2, e3, e0, e-3, e-2, e-1.
class G2Data {
public:
    static const G2Data& instance()
    {
        static const G2Data d;
        return d;
    }

    IntMat7 e[12];   // Chevalley basis root vectors, indexed by G2Root
    IntMat7 e2h[12]; // e^2 / 2 (exact; e^3 = 0 in this representation)
    IntMat7 h_alpha{}, h_beta{};
    IntMat7 bgram{};
    std::int8_t T[7][7][7] = {};

    static IntMat7 mul(const IntMat7& A, const IntMat7& B)
    {
        IntMat7 C{};
        for (int i = 0; i < 7; ++i)
            for (int k = 0; k < 7; ++k)
                if (A[i][k])
                    for (int j = 0; j < 7; ++j)
                        C[i][j] += A[i][k] * B[k][j];
        return C;
    }

    static IntMat7 bracket(const IntMat7& A, const IntMat7& B)
    {
        IntMat7 AB = mul(A, B), BA = mul(B, A);
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j)
                AB[i][j] -= BA[i][j];
        return AB;
    }

    int t_eval(const std::array<int, 7>& u, const std::array<int, 7>& v,
               const std::array<int, 7>& w) const
    {
        int s = 0;
        for (int i = 0; i < 7; ++i)
            if (u[i])
                for (int j = 0; j < 7; ++j)
                    if (v[j])
                        for (int k = 0; k < 7; ++k)
                            if (w[k] && T[i][j][k])
                                s += T[i][j][k] * u[i] * v[j] * w[k];
        return s;
    }

private:
    G2Data()
    {
        auto set = [](IntMat7& m, std::initializer_list<std::array<int, 3>> units) {
            for (const auto& u : units)
                m[u[1]][u[2]] += u[0];
        };
        IntMat7& ea = e[int(G2Root::a)];
        IntMat7& eb = e[int(G2Root::b)];
        IntMat7& eab = e[int(G2Root::ab)];
        IntMat7& ea2b = e[int(G2Root::a2b)];
        IntMat7& ea3b = e[int(G2Root::a3b)];
        IntMat7& ea3b2 = e[int(G2Root::a3b2)];
        set(ea, {{1, 0, 1}, {-2, 2, 3}, {1, 3, 4}, {-1, 5, 6}});       // e12-2e30+e0-3-e-2-1
        set(eb, {{1, 1, 2}, {-1, 4, 5}});                              // e23-e-3-2
        set(eab, {{1, 0, 2}, {2, 1, 3}, {-1, 3, 5}, {-1, 4, 6}});      // e13+2e20-e0-2-e-3-1
        set(ea2b, {{2, 0, 3}, {-1, 1, 4}, {1, 2, 5}, {-1, 3, 6}});     // 2e10-e2-3+e3-2-e0-1
        set(ea3b, {{-1, 0, 4}, {1, 2, 6}});                            // -e1-3+e3-1
        set(ea3b2, {{-1, 0, 5}, {1, 1, 6}});                           // -e1-2+e2-1
        // negative roots: e_gamma = -P e_{-gamma} P
        IntMat7 peri{};
        for (int i = 0; i < 7; ++i)
            peri[i][6 - i] = 1;
        for (int r = 0; r < 6; ++r) {
            IntMat7 m = mul(peri, mul(e[r], peri));
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j)
                    e[r + 6][i][j] = -m[i][j];
        }
        for (int r = 0; r < 12; ++r) {
            IntMat7 sq = mul(e[r], e[r]);
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j)
                    e2h[r][i][j] = sq[i][j] / 2; // entries are even; see tests
        }
        static const int ha[7] = {1, -1, 2, 0, -2, 1, -1};
        static const int hb[7] = {0, 1, -1, 0, 1, -1, 0};
        for (int i = 0; i < 7; ++i) {
            h_alpha[i][i] = ha[i];
            h_beta[i][i] = hb[i];
        }
        static const int bdiag[7] = {1, 1, 1, 2, 1, 1, 1};
        for (int i = 0; i < 7; ++i)
            bgram[i][6 - i] = bdiag[i];
        // T = alternating extension of the five unit triples
        static const int lbl[7] = {1, 2, 3, 0, -3, -2, -1};
        auto pos_of = [&](int l) {
            for (int i = 0; i < 7; ++i)
                if (lbl[i] == l)
                    return i;
            return -1;
        };
        static const int base[5][3] = {
            {0, 1, -1}, {0, -2, 2}, {0, -3, 3}, {1, -2, -3}, {-1, 3, 2}};
        for (const auto& tri : base) {
            int p0 = pos_of(tri[0]), p1 = pos_of(tri[1]), p2 = pos_of(tri[2]);
            const int idx[3] = {p0, p1, p2};
            static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                            {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
            static const int signs[6] = {1, -1, -1, 1, 1, -1};
            for (int s = 0; s < 6; ++s)
                T[idx[perms[s][0]]][idx[perms[s][1]]][idx[perms[s][2]]] =
                    static_cast<std::int8_t>(signs[s]);
        }
    }
};

inline Mat reduce_int_mat(const Ring* R, const IntMat7& m)
{
    Mat out(R, 7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            if (m[i][j])
                out.at(i, j) = R->from_int(m[i][j]);
    return out;
}

/// x_gamma(xi) = exp(xi e_gamma), computed by Z-level divided powers
/// (I + xi e + xi^2 e^2/2) and then reduced into R.  Valid in any
/// characteristic.
inline Mat g2_xroot(const Ring* R, G2Root r, const RingElem& xi)
{
    const G2Data& D = G2Data::instance();
    Mat m = Mat::identity(R, 7);
    RingElem xi2 = xi * xi;
    const IntMat7& e = D.e[int(r)];
    const IntMat7& e2 = D.e2h[int(r)];
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            if (e[i][j])
                m.at(i, j) = m.at(i, j) + xi * R->from_int(e[i][j]);
            if (e2[i][j])
                m.at(i, j) = m.at(i, j) + xi2 * R->from_int(e2[i][j]);
        }
    return m;
}

/// g preserves both forms: g^T B g = B and T(g.,g.,g.) = T on basis triples.
inline bool g2_check_forms(const Mat& g)
{
    if (g.rows() != 7 || g.cols() != 7)
        fail(errc::dim_mismatch, "form check needs a 7x7 matrix");
    const Ring* R = g.ring();
    const G2Data& D = G2Data::instance();
    Mat B = reduce_int_mat(R, D.bgram);
    if (g.transpose() * B * g != B)
        return false;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k) {
                RingElem s = R->zero();
                for (int a = 0; a < 7; ++a)
                    for (int b = 0; b < 7; ++b)
                        for (int c = 0; c < 7; ++c)
                            if (D.T[a][b][c]) {
                                RingElem term = g.at(a, i) * g.at(b, j) * g.at(c, k);
                                s = s + term * R->from_int(D.T[a][b][c]);
                            }
                if (s != R->from_int(D.T[i][j][k]))
                    return false;
            }
    return true;
}

struct ReeElement {
    Mat m;
    Mat mu;
};

/// Per-ring representation data shared by the Ree group and the mixed-group
/// membership test: the reduced Chevalley basis with a precomputed
/// coordinate solver, and the adjoint quotient.
class G2Rep {
public:
    explicit G2Rep(const Ring* R) : R_(R)
    {
        if (R->p != 3)
            fail(errc::wrong_characteristic, "the G2 mu-image needs characteristic 3");
        const G2Data& D = G2Data::instance();
        // basis order: surviving long part by weight, then the ideal s
        static const G2Root longs[6] = {G2Root::a3b2, G2Root::a3b,  G2Root::b,
                                        G2Root::mb,   G2Root::ma3b, G2Root::ma3b2};
        static const G2Root shorts[6] = {G2Root::a2b,  G2Root::ab,   G2Root::a,
                                         G2Root::ma,   G2Root::mab,  G2Root::ma2b};
        basis_.push_back(reduce_int_mat(R, D.e[int(longs[0])]));
        basis_.push_back(reduce_int_mat(R, D.e[int(longs[1])]));
        basis_.push_back(reduce_int_mat(R, D.e[int(longs[2])]));
        basis_.push_back(reduce_int_mat(R, D.h_beta));
        basis_.push_back(reduce_int_mat(R, D.e[int(longs[3])]));
        basis_.push_back(reduce_int_mat(R, D.e[int(longs[4])]));
        basis_.push_back(reduce_int_mat(R, D.e[int(longs[5])]));
        basis_.push_back(reduce_int_mat(R, D.e[int(shorts[0])]));
        basis_.push_back(reduce_int_mat(R, D.e[int(shorts[1])]));
        basis_.push_back(reduce_int_mat(R, D.e[int(shorts[2])]));
        basis_.push_back(reduce_int_mat(R, D.h_alpha));
        basis_.push_back(reduce_int_mat(R, D.e[int(shorts[3])]));
        basis_.push_back(reduce_int_mat(R, D.e[int(shorts[4])]));
        basis_.push_back(reduce_int_mat(R, D.e[int(shorts[5])]));
        build_solver();
        verify_mu_law_at_one();
    }

    const Ring* ring() const { return R_; }
    const std::vector<Mat>& basis() const { return basis_; }

    /// Coordinates of X in the Chevalley basis span; errc::not_in_lie_algebra
    /// when X is outside (signals a non-G2 input).
    std::vector<RingElem> coords(const Mat& X) const
    {
        std::vector<RingElem> t(14, R_->zero());
        for (std::size_t i = 0; i < 14; ++i)
            t[i] = X.at(pivots_[i] / 7, pivots_[i] % 7);
        std::vector<RingElem> c(14, R_->zero());
        for (std::size_t i = 0; i < 14; ++i)
            for (std::size_t j = 0; j < 14; ++j)
                if (!inv_.at(i, j).is_zero())
                    c[i] = c[i] + inv_.at(i, j) * t[j];
        // full verification catches targets outside the span
        Mat re(R_, 7, 7);
        for (std::size_t i = 0; i < 14; ++i)
            if (!c[i].is_zero())
                re = re + basis_[i].map_entries([&](const RingElem& v) { return c[i] * v; });
        if (re != X)
            fail(errc::not_in_lie_algebra, "conjugate escapes the Chevalley basis span");
        return c;
    }

    /// Matrix of Ad(g): X -> g X g^-1 in Chevalley-basis coordinates.
    Mat adjoint_action(const Mat& g) const
    {
        Mat gi = g.inverse();
        Mat out(R_, 14, 14);
        for (std::size_t c = 0; c < 14; ++c) {
            auto co = coords(g * basis_[c] * gi);
            for (std::size_t r = 0; r < 14; ++r)
                out.at(r, c) = co[r];
        }
        return out;
    }

    /// Ad(g) modulo the short-root ideal s, expressed in the surviving basis
    /// identified with V(lambda); on generators this is the displayed mu-law
    /// x_gamma(xi) -> x_{sigma gamma}((-1)^(1+ht) xi^(e(gamma))).
    Mat mu_image(const Mat& g) const
    {
        Mat gi = g.inverse();
        Mat out(R_, 7, 7);
        for (std::size_t c = 0; c < 7; ++c) {
            auto co = coords(g * basis_[c] * gi);
            for (std::size_t r = 0; r < 7; ++r)
                out.at(r, c) = co[r];
        }
        return out;
    }

private:
    void build_solver()
    {
        // choose 14 coordinate positions where the flattened basis matrix is
        // invertible, and store the inverse of that 14x14 block
        std::vector<std::vector<RingElem>> rowsv;
        std::vector<std::size_t> all_pos;
        for (std::size_t posn = 0; posn < 49; ++posn) {
            std::vector<RingElem> row(14, R_->zero());
            for (std::size_t b = 0; b < 14; ++b)
                row[b] = basis_[b].at(posn / 7, posn % 7);
            rowsv.push_back(std::move(row));
            all_pos.push_back(posn);
        }
        // greedy pivot selection by elimination
        std::vector<std::vector<RingElem>> work = rowsv;
        std::vector<bool> used(49, false);
        pivots_.clear();
        for (std::size_t c = 0; c < 14; ++c) {
            std::size_t piv = std::size_t(-1);
            for (std::size_t r = 0; r < 49; ++r)
                if (!used[r] && !work[r][c].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv == std::size_t(-1))
                fail(errc::not_in_lie_algebra, "Chevalley basis is not independent mod p");
            used[piv] = true;
            pivots_.push_back(all_pos[piv]);
            RingElem ic = work[piv][c].inv();
            for (std::size_t r = 0; r < 49; ++r) {
                if (r == piv || used[r] || work[r][c].is_zero())
                    continue;
                RingElem f = work[r][c] * ic;
                for (std::size_t j = 0; j < 14; ++j)
                    work[r][j] = work[r][j] - f * work[piv][j];
            }
        }
        Mat block(R_, 14, 14);
        for (std::size_t i = 0; i < 14; ++i)
            for (std::size_t j = 0; j < 14; ++j)
                block.at(i, j) = rowsv[pivots_[i]][j];
        // c = inv_ * t solves block * c = t
        inv_ = block.inverse();
    }

    void verify_mu_law_at_one()
    {
        // the identification is fixed by requiring the displayed law at xi=1;
        // with this basis order the scaling comes out as the identity, which
        // we assert constructively here
        for (G2Root r : all_g2_roots()) {
            const auto& info = g2_root_info(r);
            Mat got = mu_image(g2_xroot(R_, r, R_->one()));
            int sign = ((1 + info.height) % 2 == 0) ? 1 : -1;
            Mat want = g2_xroot(R_, info.sigma, R_->from_int(sign));
            if (got != want)
                fail(errc::not_in_lie_algebra, "mu-law normalization failed at xi=1");
        }
    }

    const Ring* R_;
    std::vector<Mat> basis_;
    std::vector<std::size_t> pivots_;
    Mat inv_;
};

struct G2BruhatParts {
    ReeElement u, h, v;
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

class ReeGroup {
public:
    explicit ReeGroup(const Ring* R) : R_(R), tau_(TitsEndo::on(R)), rep_(R) {}

    const Ring* ring() const { return R_; }
    const TitsEndo& tits() const { return tau_; }
    const G2Rep& rep() const { return rep_; }

    Mat xroot(G2Root r, const RingElem& xi) const { return g2_xroot(R_, r, xi); }

    /// x1(a) = x_a(a) x_b(a^tau) x_{a+b}(-a^(tau+1)) x_{2a+b}(a^(tau+2))
    Mat x1(const RingElem& a) const
    {
        RingElem at = tau_(a);
        return xroot(G2Root::a, a) * xroot(G2Root::b, at) * xroot(G2Root::ab, -(at * a)) *
               xroot(G2Root::a2b, at * a * a);
    }

    Mat x2(const RingElem& b) const
    {
        return xroot(G2Root::ab, b) * xroot(G2Root::a3b, -tau_(b));
    }

    Mat x3(const RingElem& c) const
    {
        return xroot(G2Root::a2b, c) * xroot(G2Root::a3b2, tau_(c));
    }

    Mat xplus_mat(const RingElem& a, const RingElem& b, const RingElem& c) const
    {
        return x1(a) * x2(b) * x3(c);
    }

    Mat w0_mat() const
    {
        Mat w(R_, 7, 7);
        for (std::size_t i = 0; i < 7; ++i)
            w.at(i, 6 - i) = -R_->one();
        return w;
    }

    Mat xminus_mat(const RingElem& a, const RingElem& b, const RingElem& c) const
    {
        Mat w = w0_mat();
        return w * xplus_mat(a, b, c) * w.inverse();
    }

    /// h(eps) = diag(eps, eps^(tau-1), eps^(2-tau), 1, eps^(tau-2), eps^(1-tau), eps^(-1))
    Mat h_mat(const RingElem& eps) const
    {
        if (!eps.is_unit())
            fail(errc::non_unit, "torus parameter must be a unit");
        RingElem te = tau_(eps);
        Mat h(R_, 7, 7);
        h.at(0, 0) = eps;
        h.at(1, 1) = te / eps;
        h.at(2, 2) = eps * eps / te;
        h.at(3, 3) = R_->one();
        h.at(4, 4) = te / (eps * eps);
        h.at(5, 5) = eps / te;
        h.at(6, 6) = eps.inv();
        return h;
    }

    std::optional<ReeElement> certify(const Mat& g, MembershipFailure* why = nullptr) const
    {
        if (!g2_check_forms(g)) {
            if (why)
                *why = {0, 0, R_->zero(), R_->zero()};
            return std::nullopt;
        }
        Mat mu = rep_.mu_image(g);
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j) {
                RingElem t = tau_(g.at(i, j));
                if (t != mu.at(i, j)) {
                    if (why)
                        *why = {i, j, t, mu.at(i, j)};
                    return std::nullopt;
                }
            }
        return ReeElement{g, mu};
    }

    ReeElement must_certify(const Mat& g) const
    {
        auto e = certify(g);
        if (!e)
            fail(errc::element_not_in_group, "element fails the tau g = g_mu tau condition");
        return *e;
    }

    ReeElement xplus(const RingElem& a, const RingElem& b, const RingElem& c) const
    {
        return must_certify(xplus_mat(a, b, c));
    }
    ReeElement xminus(const RingElem& a, const RingElem& b, const RingElem& c) const
    {
        return must_certify(xminus_mat(a, b, c));
    }
    ReeElement h(const RingElem& eps) const { return must_certify(h_mat(eps)); }
    ReeElement w0() const { return must_certify(w0_mat()); }
    ReeElement identity() const { return must_certify(Mat::identity(R_, 7)); }

    std::optional<std::array<RingElem, 3>> u_params(const Mat& u) const
    {
        RingElem a = u.at(0, 1);
        RingElem b = u.at(0, 2);
        Mat z = xplus_mat(a, b, R_->zero()).inverse() * u;
        RingElem c = -z.at(1, 4);
        if (xplus_mat(a, b, c) != u)
            return std::nullopt;
        return std::array<RingElem, 3>{a, b, c};
    }

    G2BruhatParts bruhat(const ReeElement& g) const
    {
        if (!R_->is_field())
            fail(errc::not_a_field, "Bruhat decomposition needs a field");
        G2BruhatParts parts;
        if (g.m.at(6, 0).is_zero()) {
            RingElem eps = g.m.at(0, 0);
            Mat hm = h_mat(eps);
            Mat um = g.m * hm.inverse();
            if (!u_params(um))
                fail(errc::element_not_in_group, "upper-triangular part is not in U");
            parts.big_cell = false;
            parts.eps = eps;
            parts.u = must_certify(um);
            parts.h = must_certify(hm);
            parts.v = identity();
            return parts;
        }
        RingElem eps = -g.m.at(6, 0).inv();
        // row 7 of g is -eps^(-1) * (first row of v)
        RingElem scale = g.m.at(6, 0).inv();
        RingElem a = g.m.at(6, 1) * scale;
        RingElem b = g.m.at(6, 2) * scale;
        RingElem v14 = g.m.at(6, 3) * scale;
        RingElem w14 = xplus_mat(a, b, R_->zero()).at(0, 3);
        RingElem c = -(v14 - w14); // 2^(-1) = -1 in characteristic 3
        Mat vm = xplus_mat(a, b, c);
        Mat hm = h_mat(eps);
        Mat um = g.m * (hm * w0_mat() * vm).inverse();
        if (!u_params(um))
            fail(errc::element_not_in_group, "u-part is not in U");
        parts.big_cell = true;
        parts.eps = eps;
        parts.u = must_certify(um);
        parts.h = must_certify(hm);
        parts.v = must_certify(vm);
        return parts;
    }

    std::vector<Mat> standard_generators() const
    {
        std::vector<Mat> gens;
        RingElem g = R_->generator();
        RingElem x = R_->one();
        RingElem z = R_->zero();
        for (unsigned i = 0; i < R_->k; ++i) {
            gens.push_back(xplus_mat(x, z, z));
            gens.push_back(xplus_mat(z, x, z));
            gens.push_back(xplus_mat(z, z, x));
            gens.push_back(xminus_mat(x, z, z));
            gens.push_back(xminus_mat(z, x, z));
            gens.push_back(xminus_mat(z, z, x));
            x = x * g;
        }
        return gens;
    }

    Report relation_suite(std::size_t samples, std::uint64_t seed, unsigned threads = 1) const;

private:
    const Ring* R_;
    TitsEndo tau_;
    G2Rep rep_;
};

inline Report ReeGroup::relation_suite(std::size_t samples, std::uint64_t seed,
                                       unsigned threads) const
{
    struct Identity {
        const char* name;
        std::function<std::string(const ReeGroup&, std::mt19937_64&)> run;
    };

    auto comm = [](const Mat& g, const Mat& h) {
        return g * h * g.inverse() * h.inverse();
    };

    const std::vector<Identity> identities = {
        {"g2.product",
         [](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             const auto& t = G.tits();
             RingElem a1 = sample(R, rng), b1 = sample(R, rng), c1 = sample(R, rng);
             RingElem a2 = sample(R, rng), b2 = sample(R, rng), c2 = sample(R, rng);
             Mat lhs = G.xplus_mat(a1, b1, c1) * G.xplus_mat(a2, b2, c2);
             RingElem a3 = a1 + a2;
             RingElem b3 = b1 + b2 + a1 * t(a2);
             RingElem c3 = c1 + c2 + b1 * a2 + a1 * a2 * t(a2) - a1 * a1 * t(a2);
             Mat rhs = G.xplus_mat(a3, b3, c3);
             if (lhs == rhs)
                 return "";
             return "a1=" + a1.str() + " b1=" + b1.str() + " c1=" + c1.str() + " a2=" +
                    a2.str() + " b2=" + b2.str() + " c2=" + c2.str();
         }},
        {"g2.inverse",
         [](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             const auto& t = G.tits();
             RingElem a = sample(R, rng), b = sample(R, rng), c = sample(R, rng);
             Mat lhs = G.xplus_mat(a, b, c).inverse();
             Mat rhs = G.xplus_mat(-a, -b + t(a) * a, -c + a * b + t(a) * a * a);
             return lhs == rhs ? "" : "a=" + a.str() + " b=" + b.str() + " c=" + c.str();
         }},
        {"g2.torus_conjugation",
         [](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             const auto& t = G.tits();
             RingElem a = sample(R, rng), b = sample(R, rng), c = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             RingElem te = t(e);
             Mat h = G.h_mat(e);
             Mat lhs = h * G.xplus_mat(a, b, c) * h.inverse();
             Mat rhs = G.xplus_mat(e * e / te * a, te / e * b, e * c);
             return lhs == rhs ? "" : "a=" + a.str() + " b=" + b.str() + " c=" + c.str() +
                                          " eps=" + e.str();
         }},
        {"g2.commutator_c",
         [comm](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem c = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             Mat lhs = comm(G.h_mat(e), G.xplus_mat(R->zero(), R->zero(), c));
             Mat rhs = G.xplus_mat(R->zero(), R->zero(), c * (e - R->one()));
             return lhs == rhs ? "" : "c=" + c.str() + " eps=" + e.str();
         }},
        {"g2.commutator_b",
         [comm](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem b = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             RingElem etm1 = G.tits()(e) / e;
             Mat lhs = comm(G.h_mat(e), G.xplus_mat(R->zero(), b, R->zero()));
             Mat rhs = G.xplus_mat(R->zero(), b * (etm1 - R->one()), R->zero());
             return lhs == rhs ? "" : "b=" + b.str() + " eps=" + e.str();
         }},
        {"g2.commutator_a",
         [comm](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             const auto& t = G.tits();
             RingElem a = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             RingElem k = e * e / t(e) - R->one(); // eps^(2-tau) - 1
             Mat lhs = comm(G.h_mat(e), G.xplus_mat(a, R->zero(), R->zero()));
             Mat rhs = G.xplus_mat(a * k, t(a) * a * (-k), t(a) * a * a * k * k);
             return lhs == rhs ? "" : "a=" + a.str() + " eps=" + e.str();
         }},
        {"g2.commutator_h_w0h",
         [comm](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem e = sample_unit(R, rng), eta = sample_unit(R, rng);
             Mat lhs = comm(G.h_mat(e), G.w0_mat() * G.h_mat(eta));
             return lhs == G.h_mat(e * e) ? "" : "eps=" + e.str() + " eta=" + eta.str();
         }},
        {"g2.commutator_w0h_w0h",
         [comm](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem e = sample_unit(R, rng), eta = sample_unit(R, rng);
             Mat lhs = comm(G.w0_mat() * G.h_mat(e), G.w0_mat() * G.h_mat(eta));
             Mat rhs = G.h_mat(eta * eta / (e * e));
             return lhs == rhs ? "" : "eps=" + e.str() + " eta=" + eta.str();
         }},
        {"g2.w0_expression_b",
         [](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             // x+(0,1/eta,0) x-(0,eta,0) x+(0,1/eta,0) = w0 h(eta^(tau+1))
             const Ring* R = G.ring();
             RingElem eta = sample_unit(R, rng);
             RingElem ie = eta.inv();
             RingElem z = R->zero();
             Mat lhs = G.xplus_mat(z, ie, z) * G.xminus_mat(z, eta, z) * G.xplus_mat(z, ie, z);
             Mat rhs = G.w0_mat() * G.h_mat(G.tits()(eta) * eta);
             return lhs == rhs ? "" : "eta=" + eta.str();
         }},
        {"g2.w0_expression_a",
         [](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             // x+(-1/eta, eta^(-1-tau), eta^(-2-tau)) x-(eta,0,0)
             //   x+(1/eta, -eta^(-1-tau), eta^(-2-tau)) = w0 h(-eta^(4+2tau))
             const Ring* R = G.ring();
             const auto& t = G.tits();
             RingElem eta = sample_unit(R, rng);
             RingElem ie = eta.inv();
             RingElem it = t(eta).inv();
             RingElem m1t = ie * it;      // eta^(-1-tau)
             RingElem m2t = ie * ie * it; // eta^(-2-tau)
             RingElem z = R->zero();
             Mat lhs = G.xplus_mat(-ie, m1t, m2t) * G.xminus_mat(eta, z, z) *
                       G.xplus_mat(ie, -m1t, m2t);
             RingElem e4 = eta * eta * eta * eta;
             Mat rhs = G.w0_mat() * G.h_mat(-(e4 * t(eta) * t(eta)));
             return lhs == rhs ? "" : "eta=" + eta.str();
         }},
        {"g2.perfectness_c",
         [comm](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem c = sample(R, rng);
             Mat x = G.xplus_mat(R->zero(), R->zero(), c);
             return x == comm(G.h_mat(-R->one()), x) ? "" : "c=" + c.str();
         }},
        {"g2.perfectness_b",
         [comm](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             const Ring* R = G.ring();
             RingElem b = sample(R, rng);
             RingElem e = sample_unit(R, rng);
             RingElem den = G.tits()(e) / e - R->one();
             if (den.is_zero())
                 return ""; // identity requires eps outside F_3
             Mat lhs = comm(G.h_mat(e), G.xplus_mat(R->zero(), b / den, R->zero()));
             return lhs == G.xplus_mat(R->zero(), b, R->zero()) ? ""
                                                                : "b=" + b.str() + " eps=" + e.str();
         }},
        {"g2.perfectness_a",
         [comm](const ReeGroup& G, std::mt19937_64& rng) -> std::string {
             // x+(a,0,0) = [h(-1), x+(a,0,0)] x+(0, a^(tau+1), -a^(tau+2))
             const Ring* R = G.ring();
             const auto& t = G.tits();
             RingElem a = sample(R, rng);
             RingElem z = R->zero();
             Mat x = G.xplus_mat(a, z, z);
             Mat rest = G.xplus_mat(z, t(a) * a, -(t(a) * a * a));
             return x == comm(G.h_mat(-R->one()), x) * rest ? "" : "a=" + a.str();
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
