#pragma once

// Exact dense linear algebra over the rings module: products, inverses,
// determinants and minors, kernels, and span-membership solving.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <vector>

#include "rings.hpp"

namespace twistgroup {

class Mat {
public:
    Mat() = default;

    Mat(const Ring* r, std::size_t rows, std::size_t cols)
        : ring_(r), rows_(rows), cols_(cols), a_(rows * cols, r->zero())
    {
    }

    static Mat identity(const Ring* r, std::size_t n)
    {
        Mat m(r, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = r->one();
        return m;
    }

    /// Build from element strings in the ring's syntax; rows of equal length.
    static Mat parse(const Ring* r, const std::vector<std::vector<std::string>>& rows)
    {
        if (rows.empty())
            fail(errc::bad_argument, "empty matrix");
        Mat m(r, rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                fail(errc::dim_mismatch, "ragged matrix rows");
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                m.at(i, j) = r->parse(rows[i][j]);
        }
        return m;
    }

    const Ring* ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RingElem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const RingElem& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const
    {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator*(const Mat& o) const
    {
        if (ring_ != o.ring_)
            fail(errc::ring_mismatch, "matrix product over different rings");
        if (cols_ != o.rows_)
            fail(errc::dim_mismatch, "inner dimensions disagree");
        Mat r(ring_, rows_, o.cols_);
        if (ring_->kind == Ring::Kind::gf) {
            // packed fast path on raw field values; the BFS enumerations
            // live in this loop
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t k = 0; k < cols_; ++k) {
                    std::uint32_t aik = a_[i * cols_ + k].gf_value();
                    if (!aik)
                        continue;
                    for (std::size_t j = 0; j < o.cols_; ++j) {
                        std::uint32_t b = o.a_[k * o.cols_ + j].gf_value();
                        if (!b)
                            continue;
                        RingElem& dst = r.a_[i * o.cols_ + j];
                        dst = RingElem::gf_make(
                            ring_, ring_->gf_add(dst.gf_value(), ring_->gf_mul(aik, b)));
                    }
                }
            return r;
        }
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const RingElem& aik = at(i, k);
                if (aik.is_zero())
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const RingElem& b = o.at(k, j);
                    if (!b.is_zero())
                        r.at(i, j) = r.at(i, j) + aik * b;
                }
            }
        return r;
    }

    Mat operator+(const Mat& o) const
    {
        if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_)
            fail(errc::dim_mismatch, "matrix sum shape/ring mismatch");
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i)
            r.a_[i] = r.a_[i] + o.a_[i];
        return r;
    }

    Mat operator-(const Mat& o) const
    {
        if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_)
            fail(errc::dim_mismatch, "matrix difference shape/ring mismatch");
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i)
            r.a_[i] = r.a_[i] - o.a_[i];
        return r;
    }

    Mat transpose() const
    {
        Mat r(ring_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r.at(j, i) = at(i, j);
        return r;
    }

    bool is_identity() const
    {
        if (rows_ != cols_)
            return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero())
                    return false;
            }
        return true;
    }

    bool is_upper_triangular() const
    {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < i && j < cols_; ++j)
                if (!at(i, j).is_zero())
                    return false;
        return true;
    }

    Mat map_entries(const std::function<RingElem(const RingElem&)>& f) const
    {
        Mat r = *this;
        for (auto& e : r.a_)
            e = f(e);
        return r;
    }

    RingElem determinant() const;
    Mat inverse() const;

    std::string encode() const
    {
        std::string out;
        out.reserve(a_.size() * 4);
        for (const auto& e : a_)
            e.encode(out);
        return out;
    }

    static Mat decode(const Ring* r, std::size_t rows, std::size_t cols, const std::string& in,
                      std::size_t& pos)
    {
        Mat m(r, rows, cols);
        for (auto& e : m.a_)
            e = RingElem::decode(r, in, pos);
        return m;
    }

private:
    const Ring* ring_ = nullptr;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RingElem> a_;
};

inline Mat frobenius_map(const Mat& m)
{
    return m.map_entries([](const RingElem& e) { return frobenius(e); });
}

namespace detail {

/// Bareiss fraction-free elimination on an n x m workspace (m >= n).
/// Returns (rank-deficient flag, determinant of the left n x n block).
/// Works over any of the three rings: divisions by previous pivots are
/// exact by the Bareiss identity.
inline RingElem bareiss_forward(std::vector<std::vector<RingElem>>& w, const Ring* R, int n,
                                bool* singular)
{
    RingElem prev = R->one();
    RingElem sign = R->one();
    *singular = false;
    int m = int(w[0].size());
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!w[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) {
            *singular = true;
            return R->zero();
        }
        if (piv != c) {
            std::swap(w[piv], w[c]);
            sign = -sign;
        }
        for (int r = c + 1; r < n; ++r) {
            for (int j = c + 1; j < m; ++j)
                w[r][j] = (w[c][c] * w[r][j] - w[r][c] * w[c][j]).div_exact(prev);
            w[r][c] = R->zero();
        }
        prev = w[c][c];
    }
    return sign * w[n - 1][n - 1];
}

} // namespace detail

inline RingElem Mat::determinant() const
{
    if (rows_ != cols_)
        fail(errc::dim_mismatch, "determinant of non-square matrix");
    if (rows_ == 0)
        return ring_->one();
    if (rows_ == 1)
        return at(0, 0);
    std::vector<std::vector<RingElem>> w(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        w[i].reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            w[i].push_back(at(i, j));
    }
    bool singular = false;
    RingElem d = detail::bareiss_forward(w, ring_, int(rows_), &singular);
    return singular ? ring_->zero() : d;
}

inline Mat Mat::inverse() const
{
    if (rows_ != cols_)
        fail(errc::dim_mismatch, "inverse of non-square matrix");
    const Ring* R = ring_;
    std::size_t n = rows_;

    if (R->kind == Ring::Kind::gf) {
        // plain Gauss-Jordan; all divisions are field divisions
        std::vector<std::vector<RingElem>> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i].assign(2 * n, R->zero());
            for (std::size_t j = 0; j < n; ++j)
                w[i][j] = at(i, j);
            w[i][n + i] = R->one();
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            while (piv < n && w[piv][c].is_zero())
                ++piv;
            if (piv == n)
                fail(errc::singular, "matrix is singular");
            std::swap(w[piv], w[c]);
            RingElem ic = w[c][c].inv();
            for (auto& v : w[c])
                v = ic * v;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || w[r][c].is_zero())
                    continue;
                RingElem f = w[r][c];
                for (std::size_t j = 0; j < 2 * n; ++j)
                    w[r][j] = w[r][j] - f * w[c][j];
            }
        }
        Mat out(R, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out.at(i, j) = w[i][n + j];
        return out;
    }

    if (R->kind == Ring::Kind::poly) {
        // lift to the fraction field, invert there, demand polynomial entries
        const Ring* F = Ring::rational(R->p);
        Mat lifted(F, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                lifted.at(i, j) = RingElem::frac_make(F, at(i, j).num(), {1});
        Mat inv = lifted.inverse();
        Mat out(R, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const RingElem& e = inv.at(i, j);
                if (e.den() != Coeffs{1})
                    fail(errc::non_unit, "determinant is not a unit in F_p[t]");
                out.at(i, j) = RingElem::poly_make(R, e.num());
            }
        return out;
    }

    // F_p(t): clear each row's denominators first, then run fraction-free
    // Gauss-Jordan over polynomial values; divide by the determinant once
    // at the end.  Bounds intermediate degree growth (Bareiss).
    const Ring* P = Ring::poly_ring(R->p);
    std::vector<std::vector<RingElem>> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        Coeffs lcm{1};
        for (std::size_t j = 0; j < n; ++j) {
            const Coeffs& d = at(i, j).den();
            Coeffs g = polyops::gcd(R->p, lcm, d);
            lcm = polyops::mul(R->p, lcm, polyops::divmod(R->p, d, g).first);
        }
        w[i].assign(2 * n, P->zero());
        for (std::size_t j = 0; j < n; ++j) {
            Coeffs scaled = polyops::mul(R->p, at(i, j).num(),
                                         polyops::divmod(R->p, lcm, at(i, j).den()).first);
            w[i][j] = RingElem::poly_make(P, std::move(scaled));
        }
        w[i][n + i] = RingElem::poly_make(P, lcm);
    }
    bool singular = false;
    detail::bareiss_forward(w, P, int(n), &singular);
    if (singular)
        fail(errc::singular, "matrix is singular");
    // back-elimination, still fraction-free: after the forward pass row r
    // has pivots w[r][r]; eliminate above using cross-multiplication.
    for (int c = int(n) - 1; c >= 0; --c) {
        for (int r = 0; r < c; ++r) {
            if (w[r][c].is_zero())
                continue;
            RingElem f = w[r][c];
            RingElem piv = w[c][c];
            for (std::size_t j = 0; j < 2 * n; ++j)
                w[r][j] = piv * w[r][j] - f * w[c][j];
        }
    }
    Mat out(R, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.at(i, j) = RingElem::frac_make(R, w[i][n + j].num(), w[i][i].num());
    return out;
}

/// Where a twisted-group membership check failed: the first entry with
/// tau(g) != g_mu.
struct MembershipFailure {
    std::size_t row = 0, col = 0;
    RingElem tau_value, mu_value;
};

/// A subset of {1..n, -n..-1} under the weight order 1 < 2 < ... < n < -n < ... < -1.
struct SubsetIndex {
    unsigned n = 0;
    std::vector<int> members; // sorted by ord()

    static int ord(int a, unsigned n)
    {
        if (a == 0 || a > int(n) || a < -int(n))
            fail(errc::bad_argument, "subset member out of range");
        return a > 0 ? a - 1 : int(2 * n) + a;
    }

    static SubsetIndex of(unsigned n, std::vector<int> ms)
    {
        SubsetIndex s;
        s.n = n;
        s.members = std::move(ms);
        for (int a : s.members)
            (void)ord(a, n);
        std::sort(s.members.begin(), s.members.end(),
                  [n](int a, int b) { return ord(a, n) < ord(b, n); });
        for (std::size_t i = 0; i + 1 < s.members.size(); ++i)
            if (s.members[i] == s.members[i + 1])
                fail(errc::bad_argument, "duplicate subset member");
        return s;
    }

    /// S(A) = A ∩ -A, in the same order.
    std::vector<int> sym_part() const
    {
        std::vector<int> out;
        for (int a : members)
            if (std::find(members.begin(), members.end(), -a) != members.end())
                out.push_back(a);
        return out;
    }

    std::vector<std::size_t> positions() const
    {
        std::vector<std::size_t> out;
        out.reserve(members.size());
        for (int a : members)
            out.push_back(std::size_t(ord(a, n)));
        return out;
    }
};

/// Determinant of the submatrix selected by position lists (true determinant,
/// signs included, so characteristic-3 uses are safe).
inline RingElem minor_det(const Mat& g, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols)
{
    if (rows.size() != cols.size())
        fail(errc::dim_mismatch, "minor requires |rows| = |cols|");
    Mat sub(g.ring(), rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (rows[i] >= g.rows() || cols[j] >= g.cols())
                fail(errc::dim_mismatch, "minor index out of range");
            sub.at(i, j) = g.at(rows[i], cols[j]);
        }
    return sub.determinant();
}

inline RingElem minor_det(const Mat& g, const SubsetIndex& rows, const SubsetIndex& cols)
{
    return minor_det(g, rows.positions(), cols.positions());
}

/// Echelonized basis of the right kernel over a field, pivot-sorted and
/// deterministic: one basis vector per free column, in ascending column order.
inline std::vector<std::vector<RingElem>> kernel_basis(const Mat& m)
{
    const Ring* R = m.ring();
    if (!R->is_field())
        fail(errc::not_a_field, "kernel_basis needs a field");
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<RingElem>> w(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        w[i].reserve(cols);
        for (std::size_t j = 0; j < cols; ++j)
            w[i].push_back(m.at(i, j));
    }
    std::vector<std::optional<std::size_t>> pivot_row(cols);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && w[piv][c].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(w[piv], w[r]);
        RingElem ic = w[r][c].inv();
        for (auto& v : w[r])
            v = ic * v;
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || w[rr][c].is_zero())
                continue;
            RingElem f = w[rr][c];
            for (std::size_t j = 0; j < cols; ++j)
                w[rr][j] = w[rr][j] - f * w[r][j];
        }
        pivot_row[c] = r;
        ++r;
    }
    std::vector<std::vector<RingElem>> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (pivot_row[c])
            continue;
        std::vector<RingElem> v(cols, R->zero());
        v[c] = R->one();
        for (std::size_t pc = 0; pc < cols; ++pc)
            if (pivot_row[pc])
                v[pc] = -w[*pivot_row[pc]][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Coefficients expressing target in span(basis), or nullopt when the target
/// is outside the span (a meaningful negative answer, not a failure).
inline std::optional<std::vector<RingElem>> solve_in_span(const Mat& target,
                                                          const std::vector<Mat>& basis)
{
    if (basis.empty())
        return std::nullopt;
    const Ring* R = target.ring();
    if (!R->is_field())
        fail(errc::not_a_field, "solve_in_span needs a field");
    std::size_t dim = target.rows() * target.cols();
    std::size_t m = basis.size();
    for (const Mat& b : basis)
        if (b.ring() != R || b.rows() != target.rows() || b.cols() != target.cols())
            fail(errc::dim_mismatch, "span basis shape/ring mismatch");
    // augmented system [B | t], columns are flattened basis matrices
    std::vector<std::vector<RingElem>> w(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        w[r].reserve(m + 1);
        for (std::size_t c = 0; c < m; ++c)
            w[r].push_back(basis[c].at(r / target.cols(), r % target.cols()));
        w[r].push_back(target.at(r / target.cols(), r % target.cols()));
    }
    std::vector<std::size_t> piv_cols;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m && row < dim; ++c) {
        std::size_t piv = row;
        while (piv < dim && w[piv][c].is_zero())
            ++piv;
        if (piv == dim)
            continue;
        std::swap(w[piv], w[row]);
        RingElem ic = w[row][c].inv();
        for (auto& v : w[row])
            v = ic * v;
        for (std::size_t rr = 0; rr < dim; ++rr) {
            if (rr == row || w[rr][c].is_zero())
                continue;
            RingElem f = w[rr][c];
            for (std::size_t j = 0; j <= m; ++j)
                w[rr][j] = w[rr][j] - f * w[row][j];
        }
        piv_cols.push_back(c);
        ++row;
    }
    for (std::size_t rr = row; rr < dim; ++rr)
        if (!w[rr][m].is_zero())
            return std::nullopt;
    std::vector<RingElem> sol(m, R->zero());
    for (std::size_t i = 0; i < piv_cols.size(); ++i)
        sol[piv_cols[i]] = w[i][m];
    return sol;
}

} // namespace twistgroup
