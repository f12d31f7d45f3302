#ifndef ARROWSCOPE_CANONICAL_HPP
#define ARROWSCOPE_CANONICAL_HPP

#include <arrowscope/quiver.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace arrowscope {

/// Deterministic byte string identifying a quiver up to vertex permutations
/// that map mutable vertices to mutable ones and frozen to frozen.
struct CanonicalKey {
    std::vector<std::uint8_t> bytes;

    bool operator==(const CanonicalKey& o) const { return bytes == o.bytes; }
    bool operator!=(const CanonicalKey& o) const { return bytes != o.bytes; }
    bool operator<(const CanonicalKey& o) const { return bytes < o.bytes; }

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        out.reserve(bytes.size() * 2);
        for (std::uint8_t b : bytes) {
            out += digits[b >> 4];
            out += digits[b & 0xf];
        }
        return out;
    }
};

inline std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t len) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ULL;
    }
    return h;
}

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const {
        return static_cast<std::size_t>(fnv1a64(k.bytes.data(), k.bytes.size()));
    }
};

namespace detail {

inline void append_varuint(std::vector<std::uint8_t>& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(v) | 0x80);
        v >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(v));
}

// Signed values go through the usual zigzag map so small magnitudes stay short.
inline void append_varint(std::vector<std::uint8_t>& out, const Int& v) {
    if (v >= 0) {
        Int z = v * 2;
        while (z >= 0x80) {
            out.push_back(static_cast<std::uint8_t>(z & 0x7f) | 0x80);
            z >>= 7;
        }
        out.push_back(static_cast<std::uint8_t>(z));
    } else {
        Int z = -v * 2 - 1;
        while (z >= 0x80) {
            out.push_back(static_cast<std::uint8_t>(z & 0x7f) | 0x80);
            z >>= 7;
        }
        out.push_back(static_cast<std::uint8_t>(z));
    }
}

// Branch-and-bound over orderings of the mutable block. Matrices are compared
// through the "staircase" sequence of entries revealed as vertices are placed;
// the minimal sequence pins a unique matrix, which is then serialized
// row-major. Frozen vertices never need searching: their mutual entries are
// all zero, so sorting them by their column signature is already optimal.
template <typename T>
class CanonicalSearch {
public:
    CanonicalSearch(const std::vector<T>& mat, int n_mut, int n_frozen)
        : mat_(mat), n_mut_(n_mut), n_frozen_(n_frozen), n_(n_mut + n_frozen) {}

    std::vector<int> run() {
        perm_.assign(n_mut_, -1);
        used_.assign(n_mut_, 0);
        // Seed with the identity ordering so pruning has a baseline.
        std::vector<int> ident(n_mut_);
        std::iota(ident.begin(), ident.end(), 0);
        best_seq_ = full_sequence(ident);
        best_perm_ = ident;
        seq_.clear();
        search(0, 0);
        std::vector<int> full = best_perm_;
        append_frozen_order(full);
        return full;
    }

private:
    T at(int i, int j) const { return mat_[static_cast<std::size_t>(i) * n_ + j]; }

    std::vector<T> increment(const std::vector<int>& placed, int t, int v) const {
        std::vector<T> inc;
        inc.reserve(2 * t);
        for (int u = 0; u < t; ++u) {
            inc.push_back(at(placed[u], v));
            inc.push_back(at(v, placed[u]));
        }
        return inc;
    }

    std::vector<T> full_sequence(const std::vector<int>& perm) const {
        std::vector<T> seq;
        for (int t = 0; t < n_mut_; ++t) {
            auto inc = increment(perm, t, perm[t]);
            seq.insert(seq.end(), inc.begin(), inc.end());
        }
        std::vector<int> order = perm;
        append_frozen_order(order);
        for (int u = n_mut_; u < n_; ++u) {
            for (int w = 0; w < n_mut_; ++w) {
                seq.push_back(at(order[w], order[u]));
                seq.push_back(at(order[u], order[w]));
            }
        }
        return seq;
    }

    void append_frozen_order(std::vector<int>& order) const {
        std::vector<std::pair<std::vector<T>, int>> sigs;
        sigs.reserve(n_frozen_);
        for (int f = n_mut_; f < n_; ++f) {
            std::vector<T> sig;
            sig.reserve(2 * n_mut_);
            for (int w = 0; w < n_mut_; ++w) {
                sig.push_back(at(order[w], f));
                sig.push_back(at(f, order[w]));
            }
            sigs.emplace_back(std::move(sig), f);
        }
        std::sort(sigs.begin(), sigs.end());
        for (auto& s : sigs) order.push_back(s.second);
    }

    // Compares seq_ (the running prefix) against best_seq_ from offset; the
    // caller guarantees everything before `from` is equal.
    int cmp_from(std::size_t from) const {
        for (std::size_t i = from; i < seq_.size(); ++i) {
            if (seq_[i] < best_seq_[i]) return -1;
            if (seq_[i] > best_seq_[i]) return 1;
        }
        return 0;
    }

    // prefix_cmp is the relation of seq_ (the placed prefix) to best_seq_:
    // 0 = equal so far, -1 = already strictly smaller. It flips back to 0
    // whenever a descendant installs a new best, because that best is then a
    // completion of the current path.
    bool search(int t, int prefix_cmp) {
        if (t == n_mut_) {
            std::size_t base = seq_.size();
            std::vector<int> order = perm_;
            append_frozen_order(order);
            for (int u = n_mut_; u < n_; ++u) {
                for (int w = 0; w < n_mut_; ++w) {
                    seq_.push_back(at(order[w], order[u]));
                    seq_.push_back(at(order[u], order[w]));
                }
            }
            bool improved = prefix_cmp < 0 || cmp_from(base) < 0;
            if (improved) {
                best_seq_ = seq_;
                best_perm_ = perm_;
            }
            seq_.resize(base);
            return improved;
        }

        struct Cand {
            std::vector<T> inc;
            int v;
            bool operator<(const Cand& o) const {
                return inc < o.inc || (inc == o.inc && v < o.v);
            }
        };
        std::vector<Cand> cands;
        cands.reserve(n_mut_);
        for (int v = 0; v < n_mut_; ++v)
            if (!used_[v]) cands.push_back({increment(perm_, t, v), v});
        std::sort(cands.begin(), cands.end());

        bool improved_any = false;
        int cur_cmp = prefix_cmp;
        for (auto& c : cands) {
            std::size_t base = seq_.size();
            seq_.insert(seq_.end(), c.inc.begin(), c.inc.end());
            int child_cmp;
            if (cur_cmp == 0) {
                int rel = cmp_from(base);
                if (rel > 0) {
                    seq_.resize(base);
                    break;  // candidates are sorted, later ones are worse
                }
                child_cmp = rel < 0 ? -1 : 0;
            } else {
                child_cmp = -1;
            }
            perm_[t] = c.v;
            used_[c.v] = 1;
            bool improved = search(t + 1, child_cmp);
            used_[c.v] = 0;
            perm_[t] = -1;
            seq_.resize(base);
            if (improved) {
                improved_any = true;
                cur_cmp = 0;
            }
        }
        return improved_any;
    }

    const std::vector<T>& mat_;
    int n_mut_, n_frozen_, n_;
    std::vector<int> perm_, best_perm_;
    std::vector<char> used_;
    std::vector<T> seq_, best_seq_;
};

template <typename T>
std::vector<int> canonical_order(const std::vector<T>& mat, int n_mut, int n_frozen) {
    return CanonicalSearch<T>(mat, n_mut, n_frozen).run();
}

}  // namespace detail

/// Canonical key: minimal matrix over admissible relabelings, serialized as
/// varints in row-major order behind the two vertex counts.
inline CanonicalKey canonical_form(const Quiver& q) {
    const int n = q.size();
    const int nm = q.mutable_count();

    bool fits = true;
    for (int i = 0; i < n && fits; ++i)
        for (int j = 0; j < n; ++j)
            if (abs(q.entry(i, j)) > Int(1) << 60) {
                fits = false;
                break;
            }

    std::vector<int> order;
    if (fits) {
        std::vector<long long> mat(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                mat[static_cast<std::size_t>(i) * n + j] =
                    static_cast<long long>(q.entry(i, j));
        order = detail::canonical_order(mat, nm, q.frozen_count());
    } else {
        std::vector<Int> mat(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mat[static_cast<std::size_t>(i) * n + j] = q.entry(i, j);
        order = detail::canonical_order(mat, nm, q.frozen_count());
    }

    CanonicalKey key;
    detail::append_varuint(key.bytes, static_cast<std::uint64_t>(nm));
    detail::append_varuint(key.bytes, static_cast<std::uint64_t>(q.frozen_count()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) detail::append_varint(key.bytes, q.entry(order[i], order[j]));
    return key;
}

inline bool are_isomorphic(const Quiver& a, const Quiver& b) {
    if (a.mutable_count() != b.mutable_count() || a.frozen_count() != b.frozen_count())
        return false;
    // Cheap invariant: the multiset of pair multiplicities must agree.
    auto mults = [](const Quiver& q) {
        std::vector<Int> m;
        for (int i = 0; i < q.size(); ++i)
            for (int j = i + 1; j < q.size(); ++j) m.push_back(abs(q.entry(i, j)));
        std::sort(m.begin(), m.end());
        return m;
    };
    if (mults(a) != mults(b)) return false;
    return canonical_form(a) == canonical_form(b);
}

}  // namespace arrowscope

#endif
