#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cks/graph.hpp"
#include "cks/rational.hpp"

namespace cks {

enum class IneqFamily { cover, connectivity, indegree, gencon, multiway, pairing, other };

std::string family_name(IneqFamily f);
IneqFamily family_from_name(const std::string& s);

/// Sparse inequality  sum coef[(v,c)] * x_{v,c} <= rhs  over variables indexed
/// by (vertex, class).  Zero coefficients are never stored.
struct LinearInequality {
    IneqFamily family = IneqFamily::other;
    std::map<std::pair<int, int>, Rat> coef;  // (vertex, class) -> coefficient
    Rat rhs;

    void set(int v, int c, const Rat& value);  // drops the entry when value == 0
    Rat at(int v, int c) const;
    bool operator==(const LinearInequality& o) const {
        return family == o.family && coef == o.coef && rhs == o.rhs;
    }
};

/// Dense fractional assignment x in [0,1]^{n x k}, one value per (vertex, class).
struct FractionalPoint {
    int n = 0;
    int k = 0;
    std::vector<Rat> val;  // index v * k + c

    FractionalPoint() = default;
    FractionalPoint(int n_, int k_) : n(n_), k(k_), val(static_cast<size_t>(n_) * k_) {}
    Rat& at(int v, int c) { return val[static_cast<size_t>(v) * k + c]; }
    const Rat& at(int v, int c) const { return val[static_cast<size_t>(v) * k + c]; }
};

/// Up to k disjoint connected vertex sets; classes[c] may be empty.
struct Subpartition {
    std::vector<VertexSet> classes;
};

/// 0/1 vector of length n*k, index v*k + c.
using IncidenceVector = std::vector<unsigned char>;

IncidenceVector incidence_vector(const Subpartition& sp, int n, int k);

/// One block per entry of s (same order), every vertex covered, orientation over
/// the crossing edges of w.
struct GenConSpec {
    VertexPartition w;
    VertexSet s;  // one vertex per block, sorted
    Orientation orient;
    int cls = 0;
};

/// Class subset cset, stable set s, multiway cut z (no component of g - z holds
/// two vertices of s).
struct MultiwaySpec {
    std::vector<int> cset;  // ascending class ids
    VertexSet s;
    VertexSet z;
};

/// Delegate pairs (one nonadjacent pair per class in cset), a separator z for
/// every pair, and a 0/1 weight gamma[(z_vertex, class)] on the separator rows.
struct PairingSpec {
    std::vector<int> cset;                          // ascending class ids
    std::vector<std::pair<int, int>> delegates;     // delegates[i] belongs to cset[i]
    VertexSet z;
    std::map<std::pair<int, int>, int> gamma;       // (vertex in z, class) -> 0/1
};

/// sum_c x_{v,c} <= 1.
LinearInequality make_cover(int v, int k);

/// x_{u,c} + x_{v,c} - sum_{z} x_{z,c} <= 1 for a u,v-separator z.
/// z may be empty when u and v already sit in different components.
LinearInequality make_connectivity(const Graph& g, int u, int v, const VertexSet& z, int cls,
                                   int k);

/// sum_v (1 - indeg(v)) x_{v,c} <= 1 for an orientation of all edges of g.
LinearInequality make_indegree(const Graph& g, const Orientation& orient, int cls, int k);

/// Number of distinct blocks of w that contain the tail of some arc with head v.
std::vector<int> block_indegrees(const Graph& g, const VertexPartition& w,
                                 const Orientation& orient);

/// sum_{u in s} (1 - bd(u)) x_{u,c} - sum_{v not in s} bd(v) x_{v,c} <= 1
/// where bd is the block indegree of the oriented crossing edges of w.
LinearInequality make_gencon(const Graph& g, const GenConSpec& spec, int k);

/// sum_{v in s, c in cset} x_{v,c} - beta * sum_{z, c in cset} x_{z,c} <= |cset|
/// with beta = max(|s| - |cset|, 0).
LinearInequality make_multiway(const Graph& g, const MultiwaySpec& spec, int k);

/// sum_c (x_{v_c,c} + x_{u_c,c}) - sum_{z,c} gamma[z][c] x_{z,c} <= |cset|.
LinearInequality make_pairing(const Graph& g, const PairingSpec& spec, int k);

Rat evaluate(const LinearInequality& ineq, const FractionalPoint& x);
Rat evaluate(const LinearInequality& ineq, const IncidenceVector& chi, int n, int k);

/// Text form: ineq <family> <rhs> { (<v>,<c>):<coef> ... } with 1-based ids.
std::string serialize_inequality(const LinearInequality& ineq);
LinearInequality parse_inequality(const std::string& line);

}  // namespace cks
