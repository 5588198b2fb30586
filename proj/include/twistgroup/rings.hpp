#pragma once

// Exact arithmetic in characteristic-p coefficient rings: GF(p^k) with an
// explicit monic irreducible modulus, the polynomial ring F_p[t], and the
// rational function field F_p(t).  All payloads are canonical, so equality
// is payload equality and matrix hashing is well-defined.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace twistgroup {

/// Polynomial over F_p: coefficient vector, low degree first, no trailing zeros.
using Coeffs = std::vector<std::uint8_t>;

namespace polyops {

inline void trim(Coeffs& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline int deg(const Coeffs& a)
{
    return static_cast<int>(a.size()) - 1; // deg(0) = -1
}

inline Coeffs add(unsigned p, const Coeffs& a, const Coeffs& b)
{
    Coeffs r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        unsigned v = (i < a.size() ? a[i] : 0u) + (i < b.size() ? b[i] : 0u);
        r[i] = static_cast<std::uint8_t>(v % p);
    }
    trim(r);
    return r;
}

inline Coeffs neg(unsigned p, const Coeffs& a)
{
    Coeffs r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = static_cast<std::uint8_t>((p - a[i]) % p);
    trim(r);
    return r;
}

inline Coeffs sub(unsigned p, const Coeffs& a, const Coeffs& b)
{
    return add(p, a, neg(p, b));
}

inline Coeffs mul(unsigned p, const Coeffs& a, const Coeffs& b)
{
    if (a.empty() || b.empty())
        return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint8_t>((r[i + j] + unsigned(a[i]) * b[j]) % p);
    }
    trim(r);
    return r;
}

inline unsigned inv_mod_p(unsigned p, unsigned a)
{
    a %= p;
    if (a == 0)
        fail(errc::non_unit, "zero has no inverse mod p");
    unsigned r = 1, b = a, e = p - 2; // Fermat
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline std::pair<Coeffs, Coeffs> divmod(unsigned p, Coeffs a, const Coeffs& b)
{
    if (b.empty())
        fail(errc::non_unit, "polynomial division by zero");
    Coeffs q;
    int db = deg(b);
    unsigned lead_inv = inv_mod_p(p, b.back());
    while (deg(a) >= db) {
        int shift = deg(a) - db;
        unsigned c = a.back() * lead_inv % p;
        if (q.size() < std::size_t(shift + 1))
            q.resize(shift + 1, 0);
        q[shift] = static_cast<std::uint8_t>((q[shift] + c) % p);
        for (int i = 0; i <= db; ++i) {
            unsigned v = (p + a[shift + i] - c * b[i] % p) % p;
            a[shift + i] = static_cast<std::uint8_t>(v);
        }
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline Coeffs make_monic(unsigned p, Coeffs a)
{
    if (a.empty())
        return a;
    unsigned li = inv_mod_p(p, a.back());
    for (auto& c : a)
        c = static_cast<std::uint8_t>(c * li % p);
    return a;
}

inline Coeffs gcd(unsigned p, Coeffs a, Coeffs b)
{
    while (!b.empty()) {
        auto r = divmod(p, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(p, std::move(a));
}

inline Coeffs frobenius(unsigned p, const Coeffs& a)
{
    // (sum c_i t^i)^p = sum c_i t^(ip) since c^p = c in F_p
    if (a.empty())
        return {};
    Coeffs r(p * (a.size() - 1) + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i * p] = a[i];
    return r;
}

inline std::optional<Coeffs> pth_root(unsigned p, const Coeffs& a)
{
    if (a.empty())
        return Coeffs{};
    Coeffs r((a.size() - 1) / p + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i]) {
            if (i % p != 0)
                return std::nullopt;
            r[i / p] = a[i];
        }
    }
    return r;
}

inline bool is_irreducible(unsigned p, const Coeffs& m)
{
    // trial division against all monic polynomials of degree <= deg(m)/2
    int d = deg(m);
    if (d < 1)
        return false;
    for (int dd = 1; dd <= d / 2; ++dd) {
        // enumerate monic polys of degree dd
        std::uint64_t count = 1;
        for (int i = 0; i < dd; ++i)
            count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            Coeffs divisor(dd + 1, 0);
            std::uint64_t t = v;
            for (int i = 0; i < dd; ++i) {
                divisor[i] = static_cast<std::uint8_t>(t % p);
                t /= p;
            }
            divisor[dd] = 1;
            if (divmod(p, m, divisor).second.empty())
                return false;
        }
    }
    return true;
}

inline std::string to_string(const Coeffs& a, char var)
{
    if (a.empty())
        return "0";
    std::string out;
    for (int i = deg(a); i >= 0; --i) {
        if (!a[i])
            continue;
        if (!out.empty())
            out += '+';
        if (a[i] != 1 || i == 0)
            out += std::to_string(unsigned(a[i]));
        if (i > 0) {
            out += var;
            if (i > 1) {
                out += '^';
                out += std::to_string(i);
            }
        }
    }
    return out;
}

inline Coeffs parse(unsigned p, std::string_view s, char var)
{
    Coeffs r;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && s[i] == ' ')
            ++i;
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= s.size()) {
            if (first)
                fail(errc::parse_error, "empty polynomial");
            break;
        }
        int sign = 1;
        if (s[i] == '+') {
            ++i;
        } else if (s[i] == '-') {
            sign = -1;
            ++i;
        } else if (!first) {
            fail(errc::parse_error, "expected '+' between terms in '" + std::string(s) + "'");
        }
        skip_ws();
        unsigned coef = 1;
        bool saw_digit = false;
        unsigned digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            digits = digits * 10 + unsigned(s[i] - '0');
            saw_digit = true;
            ++i;
        }
        if (saw_digit)
            coef = digits;
        unsigned exp = 0;
        if (i < s.size() && s[i] == var) {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                unsigned e = 0;
                bool saw = false;
                while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
                    e = e * 10 + unsigned(s[i] - '0');
                    saw = true;
                    ++i;
                }
                if (!saw)
                    fail(errc::parse_error, "missing exponent in '" + std::string(s) + "'");
                exp = e;
            }
        } else if (!saw_digit) {
            fail(errc::parse_error, "unexpected character in '" + std::string(s) + "'");
        }
        if (r.size() < exp + 1)
            r.resize(exp + 1, 0);
        unsigned v = (r[exp] + (sign > 0 ? coef : (p - coef % p) % p)) % p;
        r[exp] = static_cast<std::uint8_t>(v);
        first = false;
        skip_ws();
        if (i >= s.size())
            break;
        if (s[i] != '+' && s[i] != '-')
            fail(errc::parse_error, "trailing garbage in '" + std::string(s) + "'");
    }
    trim(r);
    return r;
}

} // namespace polyops

class RingElem;

/// Immutable ring descriptor.  Instances are interned and live for the
/// whole process, so RingElem can hold a plain pointer and ring equality
/// is pointer equality.
class Ring {
public:
    enum class Kind { gf, poly, ratfunc };

    Kind kind;
    unsigned p = 0;      // characteristic
    unsigned k = 0;      // extension degree (gf only)
    std::uint32_t q = 0; // p^k (gf only)
    Coeffs modulus;      // gf only, monic irreducible of degree k

    static const Ring* gf(unsigned p, unsigned k);
    static const Ring* gf(unsigned p, unsigned k, Coeffs modulus);
    static const Ring* poly_ring(unsigned p);
    static const Ring* rational(unsigned p);
    static const Ring* from_tag(std::string_view tag);

    bool is_field() const { return kind != Kind::poly; }
    char var() const { return kind == Kind::gf ? 'x' : 't'; }

    std::string tag() const
    {
        switch (kind) {
        case Kind::gf: return "gf" + std::to_string(q);
        case Kind::poly: return "f" + std::to_string(p) + "poly";
        case Kind::ratfunc: return "f" + std::to_string(p) + "t";
        }
        return "?";
    }

    // --- GF element arithmetic on digit-packed values in [0, q) ---

    std::uint32_t gf_add(std::uint32_t a, std::uint32_t b) const
    {
        if (p == 2)
            return a ^ b;
        std::uint32_t r = 0, mult = 1;
        for (unsigned i = 0; i < k; ++i) {
            r += (a % p + b % p) % p * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        return r;
    }

    std::uint32_t gf_neg(std::uint32_t a) const
    {
        if (p == 2)
            return a;
        std::uint32_t r = 0, mult = 1;
        for (unsigned i = 0; i < k; ++i) {
            r += (p - a % p) % p * mult;
            a /= p;
            mult *= p;
        }
        return r;
    }

    std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b) const
    {
        if (a == 0 || b == 0)
            return 0;
        if (!exp_.empty())
            return exp_[(std::uint64_t(log_[a]) + log_[b]) % (q - 1)];
        return gf_mul_generic(a, b);
    }

    std::uint32_t gf_inv(std::uint32_t a) const
    {
        if (a == 0)
            fail(errc::non_unit, "inverse of 0 in " + tag());
        if (!exp_.empty())
            return exp_[(q - 1 - log_[a]) % (q - 1)];
        return gf_pow(a, q - 2);
    }

    std::uint32_t gf_pow(std::uint32_t a, long long n) const
    {
        if (a == 0) {
            if (n < 0)
                fail(errc::non_unit, "inverse of 0 in " + tag());
            return n == 0 ? 1u : 0u;
        }
        long long m = n % (long long)(q - 1);
        if (m < 0)
            m += q - 1;
        if (!exp_.empty())
            return exp_[std::uint64_t(log_[a]) * std::uint64_t(m) % (q - 1)];
        std::uint32_t r = 1, base = a;
        while (m) {
            if (m & 1)
                r = gf_mul_generic(r, base);
            base = gf_mul_generic(base, base);
            m >>= 1;
        }
        return r;
    }

    Coeffs gf_digits(std::uint32_t a) const
    {
        Coeffs d(k, 0);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = static_cast<std::uint8_t>(a % p);
            a /= p;
        }
        polyops::trim(d);
        return d;
    }

    std::uint32_t gf_pack(const Coeffs& d) const
    {
        std::uint32_t v = 0;
        for (std::size_t i = d.size(); i-- > 0;)
            v = v * p + d[i] % p;
        return v;
    }

    // element constructors / parsing
    RingElem zero() const;
    RingElem one() const;
    RingElem from_int(long long v) const;
    RingElem generator() const; // class of x (gf) or t (poly/ratfunc)
    RingElem parse(std::string_view s) const;

private:
    Ring() = default;
    std::uint32_t gf_mul_generic(std::uint32_t a, std::uint32_t b) const
    {
        Coeffs pa = gf_digits(a), pb = gf_digits(b);
        Coeffs prod = polyops::mul(p, pa, pb);
        prod = polyops::divmod(p, std::move(prod), modulus).second;
        return gf_pack(prod);
    }
    void build_tables();
    static const Ring* intern(std::unique_ptr<Ring> r);

    std::vector<std::uint32_t> exp_, log_; // discrete log tables, q <= 2^20
};

/// An element of one of the three ring kinds, stored canonically.
class RingElem {
public:
    RingElem() = default; // invalid until assigned; kept for container use

    const Ring& ring() const { return *ring_; }
    const Ring* ring_ptr() const { return ring_; }
    bool valid() const { return ring_ != nullptr; }

    static RingElem gf_make(const Ring* r, std::uint32_t v)
    {
        RingElem e;
        e.ring_ = r;
        e.gf_ = v;
        return e;
    }

    static RingElem poly_make(const Ring* r, Coeffs num)
    {
        RingElem e;
        e.ring_ = r;
        e.num_ = std::move(num);
        return e;
    }

    static RingElem frac_make(const Ring* r, Coeffs num, Coeffs den)
    {
        RingElem e;
        e.ring_ = r;
        e.assign_reduced(std::move(num), std::move(den));
        return e;
    }

    std::uint32_t gf_value() const { return gf_; }
    const Coeffs& num() const { return num_; }
    const Coeffs& den() const { return den_; }

    bool is_zero() const
    {
        return ring_->kind == Ring::Kind::gf ? gf_ == 0 : num_.empty();
    }

    bool is_one() const
    {
        switch (ring_->kind) {
        case Ring::Kind::gf: return gf_ == 1;
        case Ring::Kind::poly: return num_ == Coeffs{1};
        case Ring::Kind::ratfunc: return num_ == Coeffs{1} && den_ == Coeffs{1};
        }
        return false;
    }

    bool is_unit() const
    {
        if (is_zero())
            return false;
        if (ring_->kind == Ring::Kind::poly)
            return polyops::deg(num_) == 0;
        return true;
    }

    RingElem operator+(const RingElem& o) const
    {
        check_ring(o);
        switch (ring_->kind) {
        case Ring::Kind::gf:
            return gf_make(ring_, ring_->gf_add(gf_, o.gf_));
        case Ring::Kind::poly:
            return poly_make(ring_, polyops::add(ring_->p, num_, o.num_));
        case Ring::Kind::ratfunc: {
            // a/b + c/d = (ad + cb) / bd
            Coeffs n = polyops::add(ring_->p, polyops::mul(ring_->p, num_, o.den_),
                                    polyops::mul(ring_->p, o.num_, den_));
            Coeffs d = polyops::mul(ring_->p, den_, o.den_);
            return frac_make(ring_, std::move(n), std::move(d));
        }
        }
        fail(errc::bad_argument, "bad ring kind");
    }

    RingElem operator-() const
    {
        switch (ring_->kind) {
        case Ring::Kind::gf:
            return gf_make(ring_, ring_->gf_neg(gf_));
        case Ring::Kind::poly:
            return poly_make(ring_, polyops::neg(ring_->p, num_));
        case Ring::Kind::ratfunc: {
            RingElem e;
            e.ring_ = ring_;
            e.num_ = polyops::neg(ring_->p, num_);
            e.den_ = den_;
            if (e.num_.empty())
                e.den_ = Coeffs{1};
            return e;
        }
        }
        fail(errc::bad_argument, "bad ring kind");
    }

    RingElem operator-(const RingElem& o) const { return *this + (-o); }

    RingElem operator*(const RingElem& o) const
    {
        check_ring(o);
        switch (ring_->kind) {
        case Ring::Kind::gf:
            return gf_make(ring_, ring_->gf_mul(gf_, o.gf_));
        case Ring::Kind::poly:
            return poly_make(ring_, polyops::mul(ring_->p, num_, o.num_));
        case Ring::Kind::ratfunc:
            return frac_make(ring_, polyops::mul(ring_->p, num_, o.num_),
                             polyops::mul(ring_->p, den_, o.den_));
        }
        fail(errc::bad_argument, "bad ring kind");
    }

    RingElem inv() const
    {
        switch (ring_->kind) {
        case Ring::Kind::gf:
            return gf_make(ring_, ring_->gf_inv(gf_));
        case Ring::Kind::poly: {
            if (!is_unit())
                fail(errc::non_unit, "'" + str() + "' is not a unit in " + ring_->tag());
            return poly_make(ring_, {static_cast<std::uint8_t>(polyops::inv_mod_p(ring_->p, num_[0]))});
        }
        case Ring::Kind::ratfunc: {
            if (is_zero())
                fail(errc::non_unit, "inverse of 0 in " + ring_->tag());
            return frac_make(ring_, den_, num_);
        }
        }
        fail(errc::bad_argument, "bad ring kind");
    }

    RingElem operator/(const RingElem& o) const { return *this * o.inv(); }

    /// Exact division in the ring (used by fraction-free elimination);
    /// over F_p[t] requires the remainder to vanish.
    RingElem div_exact(const RingElem& o) const
    {
        if (ring_->kind != Ring::Kind::poly)
            return *this / o;
        check_ring(o);
        auto [quot, rem] = polyops::divmod(ring_->p, num_, o.num_);
        if (!rem.empty())
            fail(errc::non_unit, "inexact polynomial division");
        return poly_make(ring_, std::move(quot));
    }

    RingElem pow(long long n) const
    {
        if (ring_->kind == Ring::Kind::gf)
            return gf_make(ring_, ring_->gf_pow(gf_, n));
        if (n < 0)
            return inv().pow(-n);
        RingElem r = ring_->one();
        RingElem b = *this;
        while (n) {
            if (n & 1)
                r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    bool operator==(const RingElem& o) const
    {
        return ring_ == o.ring_ && gf_ == o.gf_ && num_ == o.num_ && den_ == o.den_;
    }

    bool operator!=(const RingElem& o) const { return !(*this == o); }

    std::string str() const
    {
        switch (ring_->kind) {
        case Ring::Kind::gf:
            return polyops::to_string(ring_->gf_digits(gf_), 'x');
        case Ring::Kind::poly:
            return polyops::to_string(num_, 't');
        case Ring::Kind::ratfunc: {
            std::string ns = polyops::to_string(num_, 't');
            if (den_ == Coeffs{1})
                return ns;
            std::string ds = polyops::to_string(den_, 't');
            auto wrap = [](std::string sv) {
                return sv.find('+') == std::string::npos ? sv : "(" + sv + ")";
            };
            return wrap(ns) + "/" + wrap(ds);
        }
        }
        return "?";
    }

    /// Canonical byte encoding, injective per ring; decodable (see decode).
    /// Field values take one byte when q <= 256, which keeps enumeration
    /// tables compact.
    void encode(std::string& out) const
    {
        switch (ring_->kind) {
        case Ring::Kind::gf:
            if (ring_->q <= 256) {
                out.push_back(char(gf_ & 0xff));
            } else {
                for (int i = 0; i < 4; ++i)
                    out.push_back(char((gf_ >> (8 * i)) & 0xff));
            }
            break;
        case Ring::Kind::poly:
            encode_poly(out, num_);
            break;
        case Ring::Kind::ratfunc:
            encode_poly(out, num_);
            encode_poly(out, den_);
            break;
        }
    }

    static RingElem decode(const Ring* r, const std::string& in, std::size_t& pos)
    {
        switch (r->kind) {
        case Ring::Kind::gf: {
            if (r->q <= 256)
                return gf_make(r, std::uint32_t(static_cast<unsigned char>(in.at(pos++))));
            std::uint32_t v = 0;
            for (int i = 0; i < 4; ++i)
                v |= std::uint32_t(static_cast<unsigned char>(in.at(pos++))) << (8 * i);
            return gf_make(r, v);
        }
        case Ring::Kind::poly:
            return poly_make(r, decode_poly(in, pos));
        case Ring::Kind::ratfunc: {
            Coeffs n = decode_poly(in, pos);
            Coeffs d = decode_poly(in, pos);
            RingElem e;
            e.ring_ = r;
            e.num_ = std::move(n);
            e.den_ = std::move(d);
            return e;
        }
        }
        fail(errc::bad_argument, "bad ring kind");
    }

private:
    friend class Ring;

    void check_ring(const RingElem& o) const
    {
        if (ring_ != o.ring_)
            fail(errc::ring_mismatch, ring_->tag() + " vs " + (o.ring_ ? o.ring_->tag() : "invalid"));
    }

    void assign_reduced(Coeffs num, Coeffs den)
    {
        unsigned p = ring_->p;
        if (den.empty())
            fail(errc::non_unit, "zero denominator");
        if (num.empty()) {
            num_ = {};
            den_ = Coeffs{1};
            return;
        }
        Coeffs g = polyops::gcd(p, num, den);
        if (polyops::deg(g) > 0) {
            num = polyops::divmod(p, num, g).first;
            den = polyops::divmod(p, den, g).first;
        }
        unsigned li = polyops::inv_mod_p(p, den.back());
        for (auto& c : den)
            c = static_cast<std::uint8_t>(c * li % p);
        for (auto& c : num)
            c = static_cast<std::uint8_t>(c * li % p);
        num_ = std::move(num);
        den_ = std::move(den);
    }

    static void encode_poly(std::string& out, const Coeffs& c)
    {
        std::size_t n = c.size();
        while (n >= 0x80) {
            out.push_back(char(0x80 | (n & 0x7f)));
            n >>= 7;
        }
        out.push_back(char(n));
        out.append(reinterpret_cast<const char*>(c.data()), c.size());
    }

    static Coeffs decode_poly(const std::string& in, std::size_t& pos)
    {
        std::size_t n = 0;
        int shift = 0;
        while (true) {
            unsigned char b = static_cast<unsigned char>(in.at(pos++));
            n |= std::size_t(b & 0x7f) << shift;
            if (!(b & 0x80))
                break;
            shift += 7;
        }
        Coeffs c(n);
        for (std::size_t i = 0; i < n; ++i)
            c[i] = static_cast<std::uint8_t>(in.at(pos++));
        return c;
    }

    const Ring* ring_ = nullptr;
    std::uint32_t gf_ = 0;
    Coeffs num_, den_;
};

inline RingElem Ring::zero() const
{
    switch (kind) {
    case Kind::gf: return RingElem::gf_make(this, 0);
    case Kind::poly: return RingElem::poly_make(this, {});
    default: return RingElem::frac_make(this, {}, {1});
    }
}

inline RingElem Ring::one() const { return from_int(1); }

inline RingElem Ring::from_int(long long v) const
{
    long long m = v % (long long)p;
    if (m < 0)
        m += p;
    auto c = static_cast<std::uint8_t>(m);
    switch (kind) {
    case Kind::gf: return RingElem::gf_make(this, c);
    case Kind::poly: return RingElem::poly_make(this, c ? Coeffs{c} : Coeffs{});
    default: return RingElem::frac_make(this, c ? Coeffs{c} : Coeffs{}, {1});
    }
}

inline RingElem Ring::generator() const
{
    switch (kind) {
    case Kind::gf:
        if (k == 1)
            return one();
        return RingElem::gf_make(this, p); // the class of x
    case Kind::poly: return RingElem::poly_make(this, {0, 1});
    default: return RingElem::frac_make(this, {0, 1}, {1});
    }
}

inline RingElem Ring::parse(std::string_view s) const
{
    switch (kind) {
    case Kind::gf: {
        Coeffs c = polyops::parse(p, s, 'x');
        c = polyops::divmod(p, std::move(c), modulus).second;
        return RingElem::gf_make(this, gf_pack(c));
    }
    case Kind::poly:
        return RingElem::poly_make(this, polyops::parse(p, s, 't'));
    case Kind::ratfunc: {
        // num or num/den with optional parentheses around either side
        auto strip = [](std::string_view v) {
            while (!v.empty() && v.front() == ' ')
                v.remove_prefix(1);
            while (!v.empty() && v.back() == ' ')
                v.remove_suffix(1);
            if (v.size() >= 2 && v.front() == '(' && v.back() == ')')
                v = v.substr(1, v.size() - 2);
            return v;
        };
        // top-level '/' split: parens only ever wrap whole sides
        int depth = 0;
        std::size_t slash = std::string_view::npos;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(')
                ++depth;
            else if (s[i] == ')')
                --depth;
            else if (s[i] == '/' && depth == 0) {
                slash = i;
                break;
            }
        }
        if (slash == std::string_view::npos)
            return RingElem::frac_make(this, polyops::parse(p, strip(s), 't'), {1});
        Coeffs n = polyops::parse(p, strip(s.substr(0, slash)), 't');
        Coeffs d = polyops::parse(p, strip(s.substr(slash + 1)), 't');
        if (d.empty())
            fail(errc::parse_error, "zero denominator in '" + std::string(s) + "'");
        return RingElem::frac_make(this, std::move(n), std::move(d));
    }
    }
    fail(errc::bad_argument, "bad ring kind");
}

namespace detail {

inline bool is_prime(unsigned n)
{
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Conway polynomials for the fields this artifact names; coefficient
/// lists are low degree first.
inline const std::map<std::pair<unsigned, unsigned>, Coeffs>& conway_table()
{
    static const std::map<std::pair<unsigned, unsigned>, Coeffs> t = {
        {{2, 1}, {1, 1}},          // x+1
        {{2, 2}, {1, 1, 1}},       // x^2+x+1
        {{2, 3}, {1, 1, 0, 1}},    // x^3+x+1
        {{2, 4}, {1, 1, 0, 0, 1}}, // x^4+x+1
        {{2, 5}, {1, 0, 1, 0, 0, 1}}, // x^5+x^2+1
        {{3, 1}, {1, 1}},          // x+1
        {{3, 2}, {2, 2, 1}},       // x^2+2x+2
        {{3, 3}, {1, 2, 0, 1}},    // x^3+2x+1
        {{3, 5}, {1, 2, 0, 0, 0, 1}}, // x^5+2x+1
    };
    return t;
}

inline std::map<std::string, std::unique_ptr<Ring>>& ring_registry()
{
    static std::map<std::string, std::unique_ptr<Ring>> reg;
    return reg;
}

inline std::mutex& ring_registry_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace detail

inline const Ring* Ring::intern(std::unique_ptr<Ring> r)
{
    std::string key = r->tag();
    if (r->kind == Kind::gf) {
        key += ":";
        for (auto c : r->modulus)
            key += std::to_string(unsigned(c)) + ",";
    }
    std::lock_guard<std::mutex> lock(detail::ring_registry_mutex());
    auto& reg = detail::ring_registry();
    auto it = reg.find(key);
    if (it == reg.end())
        it = reg.emplace(key, std::move(r)).first;
    return it->second.get();
}

inline void Ring::build_tables()
{
    if (q > (1u << 20))
        return; // fall back to generic arithmetic
    exp_.assign(q - 1, 0);
    log_.assign(q, 0);
    if (q == 2) {
        exp_[0] = 1;
        log_[1] = 0;
        return;
    }
    // find a multiplicative generator by order search
    for (std::uint32_t cand = 2; cand < q; ++cand) {
        std::uint32_t v = 1;
        std::uint32_t ord = 0;
        do {
            v = gf_mul_generic(v, cand);
            ++ord;
        } while (v != 1 && ord <= q);
        if (ord == q - 1) {
            std::uint32_t acc = 1;
            for (std::uint32_t i = 0; i < q - 1; ++i) {
                exp_[i] = acc;
                log_[acc] = i;
                acc = gf_mul_generic(acc, cand);
            }
            return;
        }
    }
    fail(errc::bad_argument, "no multiplicative generator found (modulus not irreducible?)");
}

inline const Ring* Ring::gf(unsigned p, unsigned k, Coeffs modulus)
{
    if (!detail::is_prime(p))
        fail(errc::bad_argument, "characteristic must be prime, got " + std::to_string(p));
    if (k < 1)
        fail(errc::bad_argument, "extension degree must be >= 1");
    polyops::trim(modulus);
    if (polyops::deg(modulus) != int(k) || modulus.back() != 1)
        fail(errc::bad_argument, "modulus must be monic of degree k");
    if (!polyops::is_irreducible(p, modulus))
        fail(errc::bad_argument, "modulus is not irreducible over F_" + std::to_string(p));
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > (1ull << 31))
            fail(errc::bad_argument, "field too large");
    }
    auto r = std::unique_ptr<Ring>(new Ring());
    r->kind = Kind::gf;
    r->p = p;
    r->k = k;
    r->q = static_cast<std::uint32_t>(q);
    r->modulus = std::move(modulus);
    r->build_tables();
    return intern(std::move(r));
}

inline const Ring* Ring::gf(unsigned p, unsigned k)
{
    auto it = detail::conway_table().find({p, k});
    if (it == detail::conway_table().end())
        fail(errc::bad_argument,
             "no default modulus for GF(" + std::to_string(p) + "^" + std::to_string(k) +
                 "); pass one explicitly");
    return gf(p, k, it->second);
}

inline const Ring* Ring::poly_ring(unsigned p)
{
    if (!detail::is_prime(p))
        fail(errc::bad_argument, "characteristic must be prime");
    auto r = std::unique_ptr<Ring>(new Ring());
    r->kind = Kind::poly;
    r->p = p;
    return intern(std::move(r));
}

inline const Ring* Ring::rational(unsigned p)
{
    if (!detail::is_prime(p))
        fail(errc::bad_argument, "characteristic must be prime");
    auto r = std::unique_ptr<Ring>(new Ring());
    r->kind = Kind::ratfunc;
    r->p = p;
    return intern(std::move(r));
}

inline const Ring* Ring::from_tag(std::string_view tag)
{
    if (tag.size() > 2 && tag.substr(0, 2) == "gf") {
        unsigned q = 0;
        for (char c : tag.substr(2)) {
            if (c < '0' || c > '9')
                fail(errc::parse_error, "bad ring tag '" + std::string(tag) + "'");
            q = q * 10 + unsigned(c - '0');
        }
        for (unsigned p : {2u, 3u, 5u, 7u}) {
            unsigned k = 0, v = q;
            while (v % p == 0) {
                v /= p;
                ++k;
            }
            if (v == 1 && k >= 1)
                return gf(p, k);
        }
        fail(errc::parse_error, "ring tag '" + std::string(tag) + "' is not a prime power");
    }
    if (tag == "f2t")
        return rational(2);
    if (tag == "f3t")
        return rational(3);
    if (tag == "f2poly")
        return poly_ring(2);
    if (tag == "f3poly")
        return poly_ring(3);
    fail(errc::parse_error, "unknown ring tag '" + std::string(tag) + "'");
}

// ---- Frobenius, Tits endomorphism, p-th roots ----

inline RingElem frobenius(const RingElem& x)
{
    const Ring& R = x.ring();
    switch (R.kind) {
    case Ring::Kind::gf:
        return RingElem::gf_make(&R, R.gf_pow(x.gf_value(), R.p));
    case Ring::Kind::poly:
        return RingElem::poly_make(&R, polyops::frobenius(R.p, x.num()));
    case Ring::Kind::ratfunc:
        return RingElem::frac_make(&R, polyops::frobenius(R.p, x.num()),
                                   polyops::frobenius(R.p, x.den()));
    }
    fail(errc::bad_argument, "bad ring kind");
}

inline std::optional<RingElem> p_th_root(const RingElem& x)
{
    const Ring& R = x.ring();
    switch (R.kind) {
    case Ring::Kind::gf: {
        // Frobenius is bijective: root = x^(p^(k-1))
        long long e = 1;
        for (unsigned i = 0; i + 1 < R.k; ++i)
            e *= R.p;
        return RingElem::gf_make(&R, R.gf_pow(x.gf_value(), e));
    }
    case Ring::Kind::poly: {
        auto r = polyops::pth_root(R.p, x.num());
        if (!r)
            return std::nullopt;
        return RingElem::poly_make(&R, std::move(*r));
    }
    case Ring::Kind::ratfunc: {
        auto n = polyops::pth_root(R.p, x.num());
        auto d = polyops::pth_root(R.p, x.den());
        if (!n || !d)
            return std::nullopt;
        return RingElem::frac_make(&R, std::move(*n), std::move(*d));
    }
    }
    fail(errc::bad_argument, "bad ring kind");
}

/// Tits endomorphism tau with tau^2 = Frobenius.  Exists on GF(p^(2m+1))
/// as x -> x^(p^(m+1)); no tau exists on even-degree extensions or on
/// F_p[t] / F_p(t).
struct TitsEndo {
    const Ring* ring = nullptr;
    long long exponent = 0; // p^(m+1)

    static TitsEndo on(const Ring* r)
    {
        if (r->kind != Ring::Kind::gf || r->k % 2 == 0)
            fail(errc::no_tits_endo,
                 "no Tits endomorphism on " + r->tag() + " (need GF(p^(2m+1)))");
        unsigned m = (r->k - 1) / 2;
        TitsEndo t;
        t.ring = r;
        t.exponent = 1;
        for (unsigned i = 0; i < m + 1; ++i)
            t.exponent *= r->p;
        // construction-time verification: tau(tau(x)) = x^p, exhaustive
        // for small fields
        if (r->q <= 4096) {
            for (std::uint32_t v = 0; v < r->q; ++v) {
                std::uint32_t tt = r->gf_pow(r->gf_pow(v, t.exponent), t.exponent);
                if (tt != r->gf_pow(v, r->p))
                    fail(errc::no_tits_endo, "tau^2 != Frobenius on " + r->tag());
            }
        }
        return t;
    }

    RingElem operator()(const RingElem& x) const
    {
        if (x.ring_ptr() != ring)
            fail(errc::ring_mismatch, "Tits endomorphism applied to foreign element");
        return x.pow(exponent);
    }
};

/// Deterministic random element; for poly/ratfunc the numerator and
/// denominator degrees are bounded by deg_bound.
inline RingElem sample(const Ring* r, std::mt19937_64& rng, unsigned deg_bound = 2)
{
    switch (r->kind) {
    case Ring::Kind::gf:
        return RingElem::gf_make(r, static_cast<std::uint32_t>(rng() % r->q));
    case Ring::Kind::poly: {
        Coeffs c(deg_bound + 1);
        for (auto& v : c)
            v = static_cast<std::uint8_t>(rng() % r->p);
        polyops::trim(c);
        return RingElem::poly_make(r, std::move(c));
    }
    case Ring::Kind::ratfunc: {
        Coeffs n(deg_bound + 1), d;
        for (auto& v : n)
            v = static_cast<std::uint8_t>(rng() % r->p);
        polyops::trim(n);
        do {
            d.assign(deg_bound + 1, 0);
            for (auto& v : d)
                v = static_cast<std::uint8_t>(rng() % r->p);
            polyops::trim(d);
        } while (d.empty());
        return RingElem::frac_make(r, std::move(n), std::move(d));
    }
    }
    fail(errc::bad_argument, "bad ring kind");
}

/// Nonzero deterministic random element.
inline RingElem sample_unit(const Ring* r, std::mt19937_64& rng, unsigned deg_bound = 2)
{
    for (;;) {
        RingElem e = sample(r, rng, deg_bound);
        if (r->kind == Ring::Kind::poly ? e.is_unit() : !e.is_zero())
            return e;
    }
}

} // namespace twistgroup
