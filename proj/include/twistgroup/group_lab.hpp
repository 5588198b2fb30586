#pragma once

// Brute-force finite group computations: BFS closure over generators with
// canonical-byte hashing, commutator subgroups and normal closures by
// incremental closure, Bruhat censuses, and a binary table cache.
//
// Tables store elements as their canonical encodings and decode on demand;
// for GF rings with q <= 256 the encoding is the packed matrix itself and
// products run directly on the byte representation, which is what makes
// the ~3e7-element enumerations fit in memory.

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <string_view>
#include <unordered_map>

#include "linalg.hpp"

namespace twistgroup {

namespace detail {

struct TransparentHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept
    {
        return std::hash<std::string_view>{}(s);
    }
    std::size_t operator()(const std::string& s) const noexcept
    {
        return std::hash<std::string_view>{}(s);
    }
};

/// Multiplication on packed square GF matrices (one byte per entry).
struct PackedOps {
    const Ring* ring = nullptr;
    std::size_t dim = 0;

    static bool applicable(const Ring* r) { return r->kind == Ring::Kind::gf && r->q <= 256; }

    void mul(const unsigned char* a, const unsigned char* b, unsigned char* dst) const
    {
        const Ring& R = *ring;
        std::size_t d = dim;
        for (std::size_t i = 0; i < d * d; ++i)
            dst[i] = 0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) {
                std::uint32_t av = a[i * d + k];
                if (!av)
                    continue;
                const unsigned char* brow = b + k * d;
                unsigned char* drow = dst + i * d;
                for (std::size_t j = 0; j < d; ++j) {
                    std::uint32_t bv = brow[j];
                    if (bv)
                        drow[j] =
                            static_cast<unsigned char>(R.gf_add(drow[j], R.gf_mul(av, bv)));
                }
            }
    }

    std::string mul(std::string_view a, std::string_view b) const
    {
        std::string out(dim * dim, '\0');
        mul(reinterpret_cast<const unsigned char*>(a.data()),
            reinterpret_cast<const unsigned char*>(b.data()),
            reinterpret_cast<unsigned char*>(&out[0]));
        return out;
    }
};

} // namespace detail

class GroupTable {
public:
    std::size_t order() const { return order_.size(); }
    const std::vector<Mat>& generators() const { return gens_; }
    const Ring* ring() const { return ring_; }
    std::size_t dim() const { return dim_; }

    /// Decode element i from its canonical key (i = 0 is the identity).
    Mat element_at(std::size_t i) const
    {
        std::size_t pos = 0;
        return Mat::decode(ring_, dim_, dim_, *order_[i], pos);
    }

    const std::string& key_at(std::size_t i) const { return *order_[i]; }

    bool contains(const Mat& m) const { return index_.find(m.encode()) != index_.end(); }
    bool contains_key(std::string_view k) const { return index_.find(k) != index_.end(); }

private:
    friend GroupTable bfs_closure(const std::vector<Mat>&, std::size_t);
    friend GroupTable closure_with_conjugation(const std::vector<Mat>&, const GroupTable&,
                                               std::size_t);
    friend GroupTable frobenius_map_table(const GroupTable&);
    friend std::optional<GroupTable> load_table(const std::string&);

    void init(const Ring* r, std::size_t dim)
    {
        ring_ = r;
        dim_ = dim;
    }

    bool insert_key(std::string key)
    {
        auto [it, fresh] = index_.emplace(std::move(key), order_.size());
        if (fresh)
            order_.push_back(&it->first);
        return fresh;
    }

    const Ring* ring_ = nullptr;
    std::size_t dim_ = 0;
    std::unordered_map<std::string, std::size_t, detail::TransparentHash, std::equal_to<>>
        index_;
    std::vector<const std::string*> order_; // points at map keys, insertion order
    std::vector<Mat> gens_;
};

/// The subgroup generated by gens, as long as its order stays within limit;
/// deterministic element order (BFS from the identity, generators in the
/// given order followed by their inverses).
inline GroupTable bfs_closure(const std::vector<Mat>& gens, std::size_t limit = 100000)
{
    if (gens.empty())
        fail(errc::bad_argument, "bfs_closure needs at least one generator");
    const Ring* R = gens.front().ring();
    std::size_t d = gens.front().rows();
    for (const Mat& g : gens)
        if (g.ring() != R || g.rows() != d || g.cols() != d)
            fail(errc::dim_mismatch, "generators must be square, same shape and ring");

    GroupTable t;
    t.init(R, d);
    t.gens_ = gens;
    std::vector<Mat> mult = gens;
    for (const Mat& g : gens)
        mult.push_back(g.inverse());
    t.insert_key(Mat::identity(R, d).encode());

    if (detail::PackedOps::applicable(R)) {
        detail::PackedOps ops{R, d};
        std::vector<std::string> pm;
        for (const Mat& g : mult)
            pm.push_back(g.encode());
        std::string buf(d * d, '\0');
        for (std::size_t i = 0; i < t.order_.size(); ++i) {
            for (const std::string& g : pm) {
                ops.mul(reinterpret_cast<const unsigned char*>(t.order_[i]->data()),
                        reinterpret_cast<const unsigned char*>(g.data()),
                        reinterpret_cast<unsigned char*>(&buf[0]));
                if (!t.contains_key(buf)) {
                    if (t.order() >= limit)
                        throw LimitError(t.order(), limit);
                    t.insert_key(buf);
                }
            }
        }
        return t;
    }

    for (std::size_t i = 0; i < t.order_.size(); ++i) {
        Mat cur = t.element_at(i);
        for (const Mat& g : mult) {
            std::string key = (cur * g).encode();
            if (!t.contains_key(key)) {
                if (t.order() >= limit)
                    throw LimitError(t.order(), limit);
                t.insert_key(std::move(key));
            }
        }
    }
    return t;
}

/// Closure of `seeds` under multiplication and under conjugation by the
/// parent's generators: the normal-closure machinery shared by
/// commutator_subgroup and normal_closure.  Incremental: adding a seed
/// resumes the product BFS instead of restarting it.
inline GroupTable closure_with_conjugation(const std::vector<Mat>& seeds, const GroupTable& parent,
                                           std::size_t limit)
{
    const Ring* R = parent.ring();
    std::size_t d = parent.dim();
    bool packed = detail::PackedOps::applicable(R);
    detail::PackedOps ops{R, d};

    GroupTable t;
    t.init(R, d);
    t.gens_ = seeds;
    t.insert_key(Mat::identity(R, d).encode());

    std::vector<std::string> mult; // packed multipliers: seeds and inverses
    auto add_seed = [&](const Mat& s) {
        mult.push_back(s.encode());
        mult.push_back(s.inverse().encode());
    };
    for (const Mat& s : seeds)
        add_seed(s);

    std::vector<std::string> conj_pairs; // (left, right) conjugators, interleaved
    for (const Mat& g : parent.generators()) {
        Mat gi = g.inverse();
        conj_pairs.push_back(g.encode());
        conj_pairs.push_back(gi.encode());
        conj_pairs.push_back(gi.encode());
        conj_pairs.push_back(g.encode());
    }

    auto mul_keys = [&](std::string_view a, std::string_view b) {
        if (packed)
            return ops.mul(a, b);
        std::size_t pa = 0, pb = 0;
        Mat ma = Mat::decode(R, d, d, std::string(a), pa);
        Mat mb = Mat::decode(R, d, d, std::string(b), pb);
        return (ma * mb).encode();
    };

    std::vector<std::size_t> done(mult.size(), 0); // per-multiplier progress
    std::size_t conj_done = 0;
    for (;;) {
        bool progress = false;
        for (std::size_t m = 0; m < mult.size(); ++m) {
            while (done[m] < t.order_.size()) {
                std::string key = mul_keys(*t.order_[done[m]], mult[m]);
                ++done[m];
                if (!t.contains_key(key)) {
                    if (t.order() >= limit)
                        throw LimitError(t.order(), limit);
                    t.insert_key(std::move(key));
                    progress = true;
                }
            }
        }
        if (progress)
            continue;
        // normal closures live inside the parent, so reaching its order
        // finishes the computation without the conjugation scan
        if (t.order() == parent.order())
            return t;
        // product-closed; look for a conjugate that escapes
        bool added = false;
        while (conj_done < t.order_.size() && !added) {
            for (std::size_t c = 0; c + 1 < conj_pairs.size(); c += 2) {
                std::string conj =
                    mul_keys(mul_keys(conj_pairs[c], *t.order_[conj_done]), conj_pairs[c + 1]);
                if (!t.contains_key(conj)) {
                    std::size_t pos = 0;
                    add_seed(Mat::decode(R, d, d, conj, pos));
                    done.resize(mult.size(), 0);
                    added = true;
                    break;
                }
            }
            if (!added)
                ++conj_done;
        }
        if (!added)
            return t;
        conj_done = 0; // new seed invalidates the conjugation scan
    }
}

/// Normal closure in t of the commutators of t's generators.
inline GroupTable commutator_subgroup(const GroupTable& t, std::size_t limit = 100000)
{
    std::vector<Mat> seeds;
    const auto& gens = t.generators();
    for (const Mat& g : gens)
        for (const Mat& h : gens) {
            Mat c = g * h * g.inverse() * h.inverse();
            if (!c.is_identity())
                seeds.push_back(c);
        }
    if (seeds.empty()) {
        std::vector<Mat> id = {Mat::identity(t.ring(), t.dim())};
        return bfs_closure(id, limit);
    }
    return closure_with_conjugation(seeds, t, limit);
}

/// Smallest normal subgroup of t containing g.
inline GroupTable normal_closure(const Mat& g, const GroupTable& t, std::size_t limit = 100000)
{
    if (!t.contains(g))
        fail(errc::element_not_in_group, "normal_closure seed is outside the group");
    return closure_with_conjugation({g}, t, limit);
}

/// Entrywise-Frobenius image of a complete table; same order.
inline GroupTable frobenius_map_table(const GroupTable& t)
{
    GroupTable out;
    out.init(t.ring(), t.dim());
    for (const Mat& g : t.generators())
        out.gens_.push_back(frobenius_map(g));
    for (std::size_t i = 0; i < t.order(); ++i)
        out.insert_key(frobenius_map(t.element_at(i)).encode());
    return out;
}

struct BruhatCensus {
    std::size_t small_cell = 0; // w = 1
    std::size_t big_cell = 0;   // w = w0
    bool all_ok = true;
    std::string witness;
};

/// Decompose every element of a twisted-group table; the decomposer returns
/// whether the element landed in the big cell after verifying exact
/// reassembly, or nullopt on failure.
inline BruhatCensus bruhat_census(const GroupTable& t,
                                  const std::function<std::optional<bool>(const Mat&)>& decomposer)
{
    BruhatCensus census;
    for (std::size_t i = 0; i < t.order(); ++i) {
        auto r = decomposer(t.element_at(i));
        if (!r) {
            census.all_ok = false;
            if (census.witness.empty())
                census.witness = "element #" + std::to_string(i) + " failed to decompose";
            continue;
        }
        (*r ? census.big_cell : census.small_cell) += 1;
    }
    return census;
}

// ---- binary table cache ----

inline void save_table(const std::string& path, const GroupTable& t)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        fail(errc::bad_argument, "cannot open '" + path + "' for writing");
    std::string header = "TWGL0001";
    header += char(t.dim());
    std::string tag = t.ring()->tag();
    header += char(tag.size());
    header += tag;
    auto put64 = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i)
            header += char((v >> (8 * i)) & 0xff);
    };
    put64(t.generators().size());
    put64(t.order());
    f.write(header.data(), std::streamsize(header.size()));
    for (const Mat& g : t.generators()) {
        std::string e = g.encode();
        f.write(e.data(), std::streamsize(e.size()));
    }
    for (std::size_t i = 0; i < t.order(); ++i)
        f.write(t.key_at(i).data(), std::streamsize(t.key_at(i).size()));
}

inline std::optional<GroupTable> load_table(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        return std::nullopt;
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (data.size() < 9 || data.compare(0, 8, "TWGL0001") != 0)
        return std::nullopt;
    std::size_t pos = 8;
    std::size_t dim = std::size_t(static_cast<unsigned char>(data[pos++]));
    std::size_t taglen = std::size_t(static_cast<unsigned char>(data[pos++]));
    std::string tag = data.substr(pos, taglen);
    pos += taglen;
    auto get64 = [&]() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= std::uint64_t(static_cast<unsigned char>(data[pos++])) << (8 * i);
        return v;
    };
    std::uint64_t ngens = get64();
    std::uint64_t nelems = get64();
    const Ring* R = Ring::from_tag(tag);
    GroupTable t;
    t.init(R, dim);
    for (std::uint64_t i = 0; i < ngens; ++i)
        t.gens_.push_back(Mat::decode(R, dim, dim, data, pos));
    for (std::uint64_t i = 0; i < nelems; ++i) {
        Mat m = Mat::decode(R, dim, dim, data, pos);
        t.insert_key(m.encode());
    }
    return t;
}

} // namespace twistgroup
