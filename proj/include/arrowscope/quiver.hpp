#ifndef ARROWSCOPE_QUIVER_HPP
#define ARROWSCOPE_QUIVER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arrowscope {

/// Exchange-matrix entries are arbitrary-precision: repeated mutation of a
/// mutation-infinite quiver exceeds any fixed-width integer.
using Int = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidQuiverError : Error { using Error::Error; };
struct VertexOutOfRangeError : Error { using Error::Error; };
struct FrozenVertexError : Error { using Error::Error; };
struct LimitError : Error { using Error::Error; };
struct TruncatedEnumerationError : Error { using Error::Error; };
struct SurfaceError : Error { using Error::Error; };
struct TriangulationError : Error { using Error::Error; };
struct CensusError : Error { using Error::Error; };
struct FormulaDomainError : Error { using Error::Error; };
struct UnsupportedSurfaceError : Error { using Error::Error; };
struct ConstructionError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

inline int sign_of(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Cluster quiver encoded as a skew-symmetric integer matrix.
///
/// Entry b(i,j) is the net arrow count i -> j, so loops and 2-cycles cannot
/// be represented at all. Mutable vertices occupy indices [0, n_mut), frozen
/// vertices the trailing block, and the frozen-frozen block is identically
/// zero. Instances are immutable values once built; every operation below is
/// a pure function returning a fresh quiver.
class Quiver {
public:
    Quiver() = default;

    Quiver(int n_mut, int n_frozen) : n_mut_(n_mut), n_frozen_(n_frozen) {
        if (n_mut < 0 || n_frozen < 0)
            throw InvalidQuiverError("vertex counts must be nonnegative");
        b_.assign(static_cast<std::size_t>(size()) * size(), Int(0));
    }

    static Quiver from_matrix(int n_mut, int n_frozen,
                              const std::vector<std::vector<Int>>& rows) {
        Quiver q(n_mut, n_frozen);
        const int n = q.size();
        if (static_cast<int>(rows.size()) != n)
            throw InvalidQuiverError("matrix order does not match vertex count");
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw InvalidQuiverError("matrix is not square");
            for (int j = 0; j < n; ++j) q.b_[q.idx(i, j)] = rows[i][j];
        }
        q.validate();
        return q;
    }

    int mutable_count() const { return n_mut_; }
    int frozen_count() const { return n_frozen_; }
    int size() const { return n_mut_ + n_frozen_; }

    bool is_mutable_vertex(int v) const { return v >= 0 && v < n_mut_; }
    bool is_frozen_vertex(int v) const { return v >= n_mut_ && v < size(); }

    const Int& entry(int i, int j) const { return b_[idx(i, j)]; }

    /// Adds `count` arrows from -> to, keeping skew-symmetry.
    void add_arrows(int from, int to, const Int& count = Int(1)) {
        check_vertex(from);
        check_vertex(to);
        if (from == to) throw InvalidQuiverError("loops are not allowed");
        if (is_frozen_vertex(from) && is_frozen_vertex(to))
            throw InvalidQuiverError("no arrows between frozen vertices");
        b_[idx(from, to)] += count;
        b_[idx(to, from)] -= count;
    }

    /// Sets the net multiplicity of the pair (i, j) outright.
    void set_arrows(int from, int to, const Int& mult) {
        check_vertex(from);
        check_vertex(to);
        if (from == to) throw InvalidQuiverError("loops are not allowed");
        if (is_frozen_vertex(from) && is_frozen_vertex(to) && mult != 0)
            throw InvalidQuiverError("no arrows between frozen vertices");
        b_[idx(from, to)] = mult;
        b_[idx(to, from)] = -mult;
    }

    bool operator==(const Quiver& o) const {
        return n_mut_ == o.n_mut_ && n_frozen_ == o.n_frozen_ && b_ == o.b_;
    }
    bool operator!=(const Quiver& o) const { return !(*this == o); }

    void validate() const {
        const int n = size();
        for (int i = 0; i < n; ++i) {
            if (b_[idx(i, i)] != 0) throw InvalidQuiverError("nonzero diagonal entry");
            for (int j = i + 1; j < n; ++j) {
                if (b_[idx(i, j)] != -b_[idx(j, i)])
                    throw InvalidQuiverError("matrix is not skew-symmetric");
                if (i >= n_mut_ && j >= n_mut_ && b_[idx(i, j)] != 0)
                    throw InvalidQuiverError("arrow between frozen vertices");
            }
        }
    }

    std::string to_string() const {
        std::string out = std::to_string(n_mut_) + " " + std::to_string(n_frozen_) + "\n";
        for (int i = 0; i < size(); ++i) {
            for (int j = 0; j < size(); ++j) {
                if (j) out += ' ';
                out += entry(i, j).str();
            }
            out += '\n';
        }
        return out;
    }

private:
    friend Quiver mutate(const Quiver&, int);
    friend Quiver restrict_to_mutable(const Quiver&);

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * size() + j;
    }
    void check_vertex(int v) const {
        if (v < 0 || v >= size())
            throw VertexOutOfRangeError("vertex index " + std::to_string(v) + " out of range");
    }

    int n_mut_ = 0;
    int n_frozen_ = 0;
    std::vector<Int> b_;
};

/// Mutation at a mutable vertex k (matrix form).
///
/// Entries in row/column k flip sign; every other pair picks up the
/// composition through k when the two legs point the same way. Frozen-frozen
/// entries are left untouched, which keeps them zero.
inline Quiver mutate(const Quiver& q, int k) {
    if (k < 0 || k >= q.size())
        throw VertexOutOfRangeError("mutation vertex " + std::to_string(k) + " out of range");
    if (!q.is_mutable_vertex(k))
        throw FrozenVertexError("mutation at frozen vertex " + std::to_string(k));
    const int n = q.size();
    Quiver out(q.mutable_count(), q.frozen_count());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Int& bij = q.entry(i, j);
            if (i == k || j == k) {
                out.b_[out.idx(i, j)] = -bij;
            } else if (q.is_frozen_vertex(i) && q.is_frozen_vertex(j)) {
                out.b_[out.idx(i, j)] = bij;
            } else {
                const Int& bik = q.entry(i, k);
                const Int& bkj = q.entry(k, j);
                Int prod = bik * bkj;
                if (prod > 0)
                    out.b_[out.idx(i, j)] = bij + sign_of(bik) * prod;
                else
                    out.b_[out.idx(i, j)] = bij;
            }
        }
    }
    return out;
}

inline Quiver mutate_sequence(Quiver q, const std::vector<int>& ks) {
    for (int k : ks) q = mutate(q, k);
    return q;
}

/// Number of arrows counted with multiplicity. With extended=false only
/// mutable-mutable pairs count; extended=true adds the mutable-frozen pairs.
inline Int arrow_count(const Quiver& q, bool extended = false) {
    Int total = 0;
    const int nm = q.mutable_count();
    const int n = q.size();
    for (int i = 0; i < nm; ++i) {
        const int jmax = extended ? n : nm;
        for (int j = i + 1; j < jmax; ++j) total += abs(q.entry(i, j));
    }
    return total;
}

inline Quiver restrict_to_mutable(const Quiver& q) {
    Quiver out(q.mutable_count(), 0);
    for (int i = 0; i < q.mutable_count(); ++i)
        for (int j = 0; j < q.mutable_count(); ++j) out.b_[out.idx(i, j)] = q.entry(i, j);
    return out;
}

/// Largest |b(i,j)| over pairs with at least one mutable vertex.
inline Int max_multiplicity(const Quiver& q) {
    Int best = 0;
    const int n = q.size();
    for (int i = 0; i < q.mutable_count(); ++i)
        for (int j = i + 1; j < n; ++j) {
            Int a = abs(q.entry(i, j));
            if (a > best) best = a;
        }
    return best;
}

/// Connectivity of the underlying undirected graph on all vertices.
inline bool is_connected(const Quiver& q) {
    const int n = q.size();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w) {
            if (!seen[w] && q.entry(v, w) != 0) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

}  // namespace arrowscope

#endif
