#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cks/graph.hpp"
#include "cks/inequality.hpp"

namespace cks {

/// Thrown when an enumeration would exceed its configured cap.  Callers treat
/// this as a hard error, never as silent truncation.
struct GuardExceeded : std::runtime_error {
    explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kMaxEnumVertices = 14;
inline constexpr long long kDefaultSubpartitionLimit = 10'000'000;

/// All vertex subsets inducing a connected subgraph (the empty set included),
/// as bitmasks in ascending numeric order.  Requires g.n() <= cap.
std::vector<std::uint32_t> connected_subset_masks(const Graph& g, int cap = kMaxEnumVertices);

/// Same, as sorted vertex lists.
std::vector<VertexSet> enumerate_connected_subsets(const Graph& g, int cap = kMaxEnumVertices);

Subpartition subpartition_from_masks(const std::vector<std::uint32_t>& masks, int n);

/// Calls fn once per ordered k-tuple of pairwise disjoint connected subsets
/// (classes may be empty).  Throws GuardExceeded past `limit` tuples.
template <typename Fn>
void for_each_subpartition(const Graph& g, int k, Fn&& fn,
                           long long limit = kDefaultSubpartitionLimit) {
    if (k < 1) throw std::invalid_argument("for_each_subpartition: k < 1");
    auto subsets = connected_subset_masks(g);
    std::vector<std::uint32_t> chosen(k, 0);
    long long count = 0;
    auto rec = [&](auto&& self, int cls, std::uint32_t used) -> void {
        if (cls == k) {
            if (++count > limit) throw GuardExceeded("subpartition enumeration cap exceeded");
            fn(static_cast<const std::vector<std::uint32_t>&>(chosen));
            return;
        }
        for (std::uint32_t mask : subsets) {
            if (mask & used) continue;
            chosen[cls] = mask;
            self(self, cls + 1, used | mask);
        }
    };
    rec(rec, 0, 0);
}

/// Materialized version of for_each_subpartition, for small inputs.
std::vector<Subpartition> enumerate_subpartitions(const Graph& g, int k,
                                                  long long limit = kDefaultSubpartitionLimit);

long long count_subpartitions(const Graph& g, int k,
                              long long limit = kDefaultSubpartitionLimit);

struct ValidityReport {
    bool valid = true;
    Rat worst_violation;   // max over subpartitions of lhs - rhs (may be negative)
    Subpartition witness;  // first subpartition attaining the max
};

/// Exhaustively checks ineq against every subpartition incidence vector.
ValidityReport check_validity(const Graph& g, int k, const LinearInequality& ineq,
                              long long limit = kDefaultSubpartitionLimit);

struct FacetReport {
    long long tight_point_count = 0;
    int affine_rank = 0;  // max number of affinely independent tight points
    bool is_facet = false;
    std::vector<Subpartition> certificate;  // affinely independent tight points
};

/// Affine rank of the tight incidence vectors of a valid inequality.
/// is_facet holds exactly when affine_rank == n*k.
FacetReport check_facet(const Graph& g, int k, const LinearInequality& ineq,
                        long long limit = kDefaultSubpartitionLimit);

/// Max number of affinely independent incidence vectors of the whole polytope
/// (full dimension means this equals n*k + 1).
int affine_rank_of_polytope(const Graph& g, int k,
                            long long limit = kDefaultSubpartitionLimit);

/// Perfectness test for a multiway triple (cset, s, z) on a connected graph:
///  (i)  |s| > |cset|,
///  (ii) every z-vertex sees at least |s|-|cset|+1 components of g - z that
///       contain a vertex of s,
///  (iii) some z-vertex sees at least |s|-|cset|+2 of them when |cset| >= 2.
bool check_perfect(const Graph& g, const MultiwaySpec& spec);

struct ViolationWitness {
    LinearInequality ineq;
    Rat violation;
};

/// Brute-force most-violated inequality of one family at x, used as the oracle
/// that separation heuristics are tested against.  Caps: indegree needs
/// m <= 14, gencon n <= 6, multiway n <= 7, connectivity n <= 14.
std::optional<ViolationWitness> find_violated_by_enumeration(const Graph& g, int k,
                                                             const FractionalPoint& x,
                                                             IneqFamily family);

}  // namespace cks
