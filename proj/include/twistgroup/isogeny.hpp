#pragma once

// Characteristic-2 polynomial maps between types B_n and C_n: rho (drop the
// radical e0), the spin construction on ker X+ / U with theta given by n x n
// minors, the Clifford norm, and the conjugation action recovering the
// (2n+1)-dim module.  Composites equal the Frobenius endomorphism.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>

#include "linalg.hpp"
#include "report.hpp"

namespace twistgroup {

namespace bc {

/// Position of signed index a in the basis e1..en, e-n..e-1.
inline std::size_t pos(int a, unsigned n)
{
    return std::size_t(SubsetIndex::ord(a, n));
}

/// Position in the B_n basis e1..en, e0, e-n..e-1 (a = 0 is the radical).
inline std::size_t bpos(int a, unsigned n)
{
    if (a == 0)
        return n;
    return a > 0 ? std::size_t(a - 1) : std::size_t(2 * n + 1 + a);
}

/// Signed index sitting at position p.
inline int label_at(std::size_t p, unsigned n)
{
    return p < n ? int(p) + 1 : int(p) - int(2 * n);
}

/// Subsets of {1..n, -n..-1} as bitmasks over positions; enumeration order
/// is ascending mask value, shared by every construction below.
inline std::vector<unsigned> subsets_of_size(unsigned n, unsigned size)
{
    std::vector<unsigned> out;
    unsigned full = 1u << (2 * n);
    for (unsigned m = 0; m < full; ++m)
        if (unsigned(__builtin_popcount(m)) == size)
            out.push_back(m);
    return out;
}

inline bool has_sym_pair(unsigned mask, unsigned n)
{
    for (unsigned i = 1; i <= n; ++i)
        if ((mask >> pos(int(i), n) & 1u) && (mask >> pos(-int(i), n) & 1u))
            return true;
    return false;
}

/// The 2^n spin-basis subsets: |A| = n with S(A) empty.
inline std::vector<unsigned> spin_subsets(unsigned n)
{
    std::vector<unsigned> out;
    for (unsigned m : subsets_of_size(n, n))
        if (!has_sym_pair(m, n))
            out.push_back(m);
    return out;
}

inline unsigned negate_mask(unsigned mask, unsigned n)
{
    unsigned out = 0;
    for (unsigned p = 0; p < 2 * n; ++p)
        if (mask >> p & 1u)
            out |= 1u << pos(-label_at(p, n), n);
    return out;
}

inline std::vector<std::size_t> mask_positions(unsigned mask, unsigned n)
{
    std::vector<std::size_t> out;
    for (unsigned p = 0; p < 2 * n; ++p)
        if (mask >> p & 1u)
            out.push_back(p);
    return out;
}

} // namespace bc

/// C_n elementary generator: T_ij(xi) = e + xi e_ij + xi e_{-j,-i} for
/// i != +-j, and the long root T_{i,-i}(xi) = e + xi e_{i,-i}.
inline Mat cn_xroot(const Ring* R, unsigned n, int i, int j, const RingElem& xi)
{
    if (i == 0 || j == 0 || i == j || unsigned(std::abs(i)) > n || unsigned(std::abs(j)) > n)
        fail(errc::bad_argument, "bad C_n root label");
    Mat m = Mat::identity(R, 2 * n);
    if (j == -i) {
        m.at(bc::pos(i, n), bc::pos(-i, n)) = m.at(bc::pos(i, n), bc::pos(-i, n)) + xi;
    } else {
        m.at(bc::pos(i, n), bc::pos(j, n)) = m.at(bc::pos(i, n), bc::pos(j, n)) + xi;
        m.at(bc::pos(-j, n), bc::pos(-i, n)) = m.at(bc::pos(-j, n), bc::pos(-i, n)) + xi;
    }
    return m;
}

/// B_n long-root generator (i != +-j): e_j -> e_j + xi e_i and
/// e_{-i} -> e_{-i} + xi e_{-j}, fixing e0.
inline Mat bn_xroot_long(const Ring* R, unsigned n, int i, int j, const RingElem& xi)
{
    if (i == 0 || j == 0 || i == j || i == -j || unsigned(std::abs(i)) > n ||
        unsigned(std::abs(j)) > n)
        fail(errc::bad_argument, "bad B_n long root label");
    Mat m = Mat::identity(R, 2 * n + 1);
    m.at(bc::bpos(i, n), bc::bpos(j, n)) = m.at(bc::bpos(i, n), bc::bpos(j, n)) + xi;
    m.at(bc::bpos(-j, n), bc::bpos(-i, n)) = m.at(bc::bpos(-j, n), bc::bpos(-i, n)) + xi;
    return m;
}

/// B_n short-root generator x_{eps_s}(xi): e_{-s} -> e_{-s} + xi e0 + xi^2 e_s,
/// fixing e0 (characteristic 2).
inline Mat bn_xroot_short(const Ring* R, unsigned n, int s, const RingElem& xi)
{
    if (s == 0 || unsigned(std::abs(s)) > n)
        fail(errc::bad_argument, "bad B_n short root label");
    Mat m = Mat::identity(R, 2 * n + 1);
    m.at(bc::bpos(0, n), bc::bpos(-s, n)) = xi;
    m.at(bc::bpos(s, n), bc::bpos(-s, n)) = xi * xi;
    return m;
}

inline bool is_symplectic(const Mat& g, unsigned n)
{
    if (g.rows() != 2 * n || g.cols() != 2 * n)
        return false;
    const Ring* R = g.ring();
    Mat omega(R, 2 * n, 2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
        omega.at(i, 2 * n - 1 - i) = R->one(); // char-2 Gram
    return g.transpose() * omega * g == omega;
}

/// q(sum x_a e_a) = x_0^2 + sum_{i>0} x_i x_{-i}; checks the bilinear Gram
/// identity plus q on columns, which together give q-preservation.
inline bool is_orthogonal(const Mat& g, unsigned n)
{
    std::size_t d = 2 * n + 1;
    if (g.rows() != d || g.cols() != d)
        return false;
    const Ring* R = g.ring();
    if (R->p != 2)
        fail(errc::wrong_characteristic, "the B_n/C_n machinery is characteristic 2");
    Mat B(R, d, d);
    for (unsigned i = 1; i <= n; ++i) {
        B.at(bc::bpos(int(i), n), bc::bpos(-int(i), n)) = R->one();
        B.at(bc::bpos(-int(i), n), bc::bpos(int(i), n)) = R->one();
    }
    if (g.transpose() * B * g != B)
        return false;
    for (std::size_t c = 0; c < d; ++c) {
        RingElem q = g.at(bc::bpos(0, n), c) * g.at(bc::bpos(0, n), c);
        for (unsigned i = 1; i <= n; ++i)
            q = q + g.at(bc::bpos(int(i), n), c) * g.at(bc::bpos(-int(i), n), c);
        RingElem want = (c == bc::bpos(0, n)) ? R->one() : R->zero();
        if (q != want)
            return false;
    }
    return true;
}

/// rho: G(B_n) -> G(C_n), the induced action on V/<e0>.
inline Mat rho(const Mat& g, unsigned n)
{
    if (!is_orthogonal(g, n))
        fail(errc::not_orthogonal, "rho needs a form-preserving B_n element");
    const Ring* R = g.ring();
    std::size_t c0 = bc::bpos(0, n);
    for (std::size_t r = 0; r < 2 * n + 1; ++r) {
        RingElem want = (r == c0) ? R->one() : R->zero();
        if (g.at(r, c0) != want)
            fail(errc::not_orthogonal, "radical column is not fixed");
    }
    Mat out(R, 2 * n, 2 * n);
    for (std::size_t r = 0, ro = 0; r < 2 * n + 1; ++r) {
        if (r == c0)
            continue;
        for (std::size_t c = 0, co = 0; c < 2 * n + 1; ++c) {
            if (c == c0)
                continue;
            out.at(ro, co) = g.at(r, c);
            ++co;
        }
        ++ro;
    }
    if (!is_symplectic(out, n))
        fail(errc::not_symplectic, "rho image is not symplectic");
    return out;
}

/// X+ : wedge^n V -> wedge^(n-2) V, X+ e_A = sum over positive a in S(A) of
/// e_{A minus {a,-a}}.
inline Mat xplus_operator(const Ring* R, unsigned n)
{
    if (n < 2)
        fail(errc::bad_argument, "X+ needs n >= 2");
    auto dom = bc::subsets_of_size(n, n);
    auto cod = bc::subsets_of_size(n, n - 2);
    std::vector<int> cidx(1u << (2 * n), -1);
    for (std::size_t i = 0; i < cod.size(); ++i)
        cidx[cod[i]] = int(i);
    Mat m(R, cod.size(), dom.size());
    for (std::size_t c = 0; c < dom.size(); ++c) {
        unsigned A = dom[c];
        for (unsigned i = 1; i <= n; ++i) {
            unsigned pi = 1u << bc::pos(int(i), n);
            unsigned mi = 1u << bc::pos(-int(i), n);
            if ((A & pi) && (A & mi)) {
                unsigned B = A & ~(pi | mi);
                std::size_t r = std::size_t(cidx[B]);
                m.at(r, c) = m.at(r, c) + R->one();
            }
        }
    }
    return m;
}

/// wedge^n g on the full C(2n,n)-dimensional space; entries are n x n minors.
inline Mat wedge_power(const Mat& g, unsigned n)
{
    auto dom = bc::subsets_of_size(n, n);
    Mat out(g.ring(), dom.size(), dom.size());
    for (std::size_t a = 0; a < dom.size(); ++a) {
        auto ca = bc::mask_positions(dom[a], n);
        for (std::size_t b = 0; b < dom.size(); ++b)
            out.at(b, a) = minor_det(g, bc::mask_positions(dom[b], n), ca);
    }
    return out;
}

/// theta: Sp(2n) -> the 2^n spin representation; theta(g)[B][A] is the
/// minor of g on rows B, columns A over the S-empty subsets.  The S-nonempty
/// residue of any image lies in U, so reduction mod U is plain projection.
inline Mat theta(const Mat& g, unsigned n)
{
    if (!is_symplectic(g, n))
        fail(errc::not_symplectic, "theta needs a symplectic element");
    auto idx = bc::spin_subsets(n);
    Mat out(g.ring(), idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
        auto ca = bc::mask_positions(idx[a], n);
        for (std::size_t b = 0; b < idx.size(); ++b)
            out.at(b, a) = minor_det(g, bc::mask_positions(idx[b], n), ca);
    }
    return out;
}

/// N(x) = x J x^t J with J_{A,B} = [A = -B]; equals det(g) * I = I on
/// theta-images by the multi-row Laplace identity.
inline Mat clifford_norm(const Mat& x, unsigned n)
{
    auto idx = bc::spin_subsets(n);
    if (x.rows() != idx.size() || x.cols() != idx.size())
        fail(errc::dim_mismatch, "clifford_norm expects a 2^n spin matrix");
    const Ring* R = x.ring();
    std::vector<int> where(1u << (2 * n), -1);
    for (std::size_t i = 0; i < idx.size(); ++i)
        where[idx[i]] = int(i);
    Mat J(R, idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        J.at(i, std::size_t(where[bc::negate_mask(idx[i], n)])) = R->one();
    return x * J * x.transpose() * J;
}

/// s_i (i in {+-1..+-n}): e_A -> e_{A \ {-i} u {i}} if -i in A, 0 if i in A.
inline Mat s_operator(const Ring* R, unsigned n, int i)
{
    if (i == 0 || unsigned(std::abs(i)) > n)
        fail(errc::bad_argument, "bad s-operator index");
    auto idx = bc::spin_subsets(n);
    std::vector<int> where(1u << (2 * n), -1);
    for (std::size_t k = 0; k < idx.size(); ++k)
        where[idx[k]] = int(k);
    Mat m(R, idx.size(), idx.size());
    unsigned pi = 1u << bc::pos(i, n), mi = 1u << bc::pos(-i, n);
    for (std::size_t c = 0; c < idx.size(); ++c) {
        unsigned A = idx[c];
        if (A & mi) {
            unsigned B = (A & ~mi) | pi;
            m.at(std::size_t(where[B]), c) = R->one();
        }
    }
    return m;
}

/// Conjugation action of an invertible spin matrix on the span
/// (s_1..s_n, id, s_{-n}..s_{-1}); lands in G(B_n) when x is in SCliff.
inline Mat spin_to_vector(const Mat& x, unsigned n)
{
    const Ring* R = x.ring();
    std::vector<Mat> ops;
    for (unsigned i = 1; i <= n; ++i)
        ops.push_back(s_operator(R, n, int(i)));
    ops.push_back(Mat::identity(R, x.rows()));
    for (int i = -int(n); i <= -1; ++i)
        ops.push_back(s_operator(R, n, i));
    Mat xi = x.inverse();
    Mat out(R, 2 * n + 1, 2 * n + 1);
    for (std::size_t c = 0; c < ops.size(); ++c) {
        Mat conj = x * ops[c] * xi;
        auto sol = solve_in_span(conj, ops);
        if (!sol)
            fail(errc::not_in_scliff, "conjugation leaves the s-operator span");
        for (std::size_t r = 0; r < ops.size(); ++r)
            out.at(r, c) = (*sol)[r];
    }
    if (!is_orthogonal(out, n))
        fail(errc::not_in_scliff, "conjugation action does not preserve the quadratic form");
    return out;
}

/// Basis of U = span{e_A : S(A) nonempty} ∩ ker X+, as coordinate vectors
/// on the full wedge^n basis.
inline std::vector<std::vector<RingElem>> u_subspace_basis(const Ring* R, unsigned n)
{
    Mat X = xplus_operator(R, n);
    auto dom = bc::subsets_of_size(n, n);
    std::vector<std::size_t> scols;
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (bc::has_sym_pair(dom[i], n))
            scols.push_back(i);
    Mat sub(R, X.rows(), scols.size());
    for (std::size_t r = 0; r < X.rows(); ++r)
        for (std::size_t c = 0; c < scols.size(); ++c)
            sub.at(r, c) = X.at(r, scols[c]);
    auto ker = kernel_basis(sub);
    std::vector<std::vector<RingElem>> out;
    for (const auto& v : ker) {
        std::vector<RingElem> full(dom.size(), R->zero());
        for (std::size_t c = 0; c < scols.size(); ++c)
            full[scols[c]] = v[c];
        out.push_back(std::move(full));
    }
    return out;
}

/// dim(ker X+ / U); equals 2^n.
inline std::size_t spin_quotient_dim(const Ring* R, unsigned n)
{
    Mat X = xplus_operator(R, n);
    return kernel_basis(X).size() - u_subspace_basis(R, n).size();
}

/// Random products of elementary generators; used by the randomized checks.
inline Mat random_cn_element(const Ring* R, unsigned n, std::mt19937_64& rng,
                             unsigned factors = 6, unsigned deg_bound = 1)
{
    Mat g = Mat::identity(R, 2 * n);
    for (unsigned f = 0; f < factors; ++f) {
        int i = 0, j = 0;
        do {
            i = int(rng() % (2 * n)) - int(n);
            if (i >= 0)
                ++i;
            j = int(rng() % (2 * n)) - int(n);
            if (j >= 0)
                ++j;
        } while (i == j);
        g = g * cn_xroot(R, n, i, j, sample(R, rng, deg_bound));
    }
    return g;
}

inline Mat random_bn_element(const Ring* R, unsigned n, std::mt19937_64& rng,
                             unsigned factors = 6, unsigned deg_bound = 1)
{
    Mat g = Mat::identity(R, 2 * n + 1);
    for (unsigned f = 0; f < factors; ++f) {
        int i = int(rng() % (2 * n)) - int(n);
        if (i >= 0)
            ++i;
        if (rng() % 2) {
            g = g * bn_xroot_short(R, n, i, sample(R, rng, deg_bound));
        } else {
            int j;
            do {
                j = int(rng() % (2 * n)) - int(n);
                if (j >= 0)
                    ++j;
            } while (j == i || j == -i);
            g = g * bn_xroot_long(R, n, i, j, sample(R, rng, deg_bound));
        }
    }
    return g;
}

/// Sampled invariance of U under the wedge^n action of random generators.
inline Report u_invariance_check(const Ring* R, unsigned n, std::size_t trials,
                                 std::uint64_t seed, unsigned threads = 1)
{
    auto ubasis = u_subspace_basis(R, n);
    Mat X = xplus_operator(R, n);
    auto dom = bc::subsets_of_size(n, n);
    std::vector<bool> is_s(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i)
        is_s[i] = bc::has_sym_pair(dom[i], n);

    std::atomic<std::size_t> failures{0};
    std::vector<std::string> witnesses(trials);
    parallel_samples(trials, threads, [&](std::size_t it) {
        std::mt19937_64 rng(per_sample_seed(seed, it));
        // random U element
        std::vector<RingElem> u(dom.size(), R->zero());
        for (const auto& v : ubasis) {
            RingElem coef = sample(R, rng, 1);
            for (std::size_t i = 0; i < u.size(); ++i)
                u[i] = u[i] + coef * v[i];
        }
        Mat g = random_cn_element(R, n, rng, 4);
        Mat W = wedge_power(g, n);
        std::vector<RingElem> img(dom.size(), R->zero());
        for (std::size_t c = 0; c < dom.size(); ++c)
            if (!u[c].is_zero())
                for (std::size_t r = 0; r < dom.size(); ++r)
                    img[r] = img[r] + W.at(r, c) * u[c];
        bool ok = true;
        for (std::size_t i = 0; i < dom.size() && ok; ++i)
            if (!is_s[i] && !img[i].is_zero())
                ok = false;
        for (std::size_t r = 0; r < X.rows() && ok; ++r) {
            RingElem s = R->zero();
            for (std::size_t c = 0; c < dom.size(); ++c)
                if (!img[c].is_zero())
                    s = s + X.at(r, c) * img[c];
            if (!s.is_zero())
                ok = false;
        }
        if (!ok) {
            witnesses[it] = "trial=" + std::to_string(it);
            failures.fetch_add(1, std::memory_order_relaxed);
        }
    });
    Report out;
    std::string w;
    for (const auto& s : witnesses)
        if (!s.empty()) {
            w = s;
            break;
        }
    out.add("isogeny.u_invariance",
            "ring=" + R->tag() + " n=" + std::to_string(n) + " trials=" + std::to_string(trials),
            failures.load() == 0, w);
    return out;
}

/// clifford_norm(theta(g)) = I and SCliff span-preservation on random g.
inline Report norm_and_scliff_check(const Ring* R, unsigned n, std::size_t trials,
                                    std::uint64_t seed, unsigned threads = 1)
{
    std::atomic<std::size_t> norm_failures{0}, span_failures{0};
    std::vector<std::string> witnesses(trials);
    Mat eye = Mat::identity(R, std::size_t(1) << n);
    parallel_samples(trials, threads, [&](std::size_t it) {
        std::mt19937_64 rng(per_sample_seed(seed, it));
        Mat g = random_cn_element(R, n, rng);
        Mat th = theta(g, n);
        if (clifford_norm(th, n) != eye) {
            witnesses[it] = "norm trial=" + std::to_string(it);
            norm_failures.fetch_add(1, std::memory_order_relaxed);
            return;
        }
        try {
            spin_to_vector(th, n);
        } catch (const Error&) {
            witnesses[it] = "span trial=" + std::to_string(it);
            span_failures.fetch_add(1, std::memory_order_relaxed);
        }
    });
    Report out;
    std::string w;
    for (const auto& s : witnesses)
        if (!s.empty()) {
            w = s;
            break;
        }
    std::string params =
        "ring=" + R->tag() + " n=" + std::to_string(n) + " trials=" + std::to_string(trials);
    out.add("isogeny.clifford_norm", params, norm_failures.load() == 0, w);
    out.add("isogeny.scliff_span", params, span_failures.load() == 0, w);
    return out;
}

/// Both composites equal entrywise Frobenius:
///   rho(spin_to_vector(theta(g))) = g^(2) for g in Sp(2n), and
///   spin_to_vector(theta(rho(h))) = h^(2) for h in G(B_n).
inline Report frobenius_factorization_check(const Ring* R, unsigned n, std::size_t trials,
                                            std::uint64_t seed, unsigned threads = 1)
{
    std::atomic<std::size_t> c_failures{0}, b_failures{0};
    std::vector<std::string> witnesses(trials);
    parallel_samples(trials, threads, [&](std::size_t it) {
        std::mt19937_64 rng(per_sample_seed(seed, it));
        Mat g = random_cn_element(R, n, rng);
        if (rho(spin_to_vector(theta(g, n), n), n) != frobenius_map(g)) {
            witnesses[it] = "C-route trial=" + std::to_string(it);
            c_failures.fetch_add(1, std::memory_order_relaxed);
            return;
        }
        Mat h = random_bn_element(R, n, rng);
        if (spin_to_vector(theta(rho(h, n), n), n) != frobenius_map(h)) {
            witnesses[it] = "B-route trial=" + std::to_string(it);
            b_failures.fetch_add(1, std::memory_order_relaxed);
        }
    });
    Report out;
    std::string w;
    for (const auto& s : witnesses)
        if (!s.empty()) {
            w = s;
            break;
        }
    std::string params =
        "ring=" + R->tag() + " n=" + std::to_string(n) + " trials=" + std::to_string(trials);
    out.add("isogeny.frobenius_rho_theta", params, c_failures.load() == 0, w);
    out.add("isogeny.frobenius_theta_rho", params, b_failures.load() == 0, w);
    return out;
}

} // namespace twistgroup
