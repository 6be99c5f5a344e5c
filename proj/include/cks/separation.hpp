#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cks/graph.hpp"
#include "cks/inequality.hpp"
#include "cks/rational.hpp"

namespace cks {

/// Violated cuts found by one separation call; each violation is the exact
/// amount by which the paired inequality exceeds its right-hand side.
struct SeparationOutcome {
    std::vector<std::pair<LinearInequality, Rat>> cuts;

    void add(LinearInequality ineq, Rat violation);
    int count(IneqFamily f) const;
    bool holds(const LinearInequality& ineq) const;
};

/// Output of the fixed-partition separator: the cost-minimal orientation and
/// per-block delegates packed as a GenConSpec, plus the assembled inequality
/// and its left-hand side at the separated point.
struct GenConCut {
    GenConSpec spec;
    LinearInequality ineq;
    Rat lhs;
};

/// Exact separation of the block-partition connectivity inequality for class
/// cls over a FIXED partition w: per block pair, a minimum-weight vertex cover
/// of the crossing edges (weights x) oriented toward the cover yields the
/// orientation minimizing the subtracted mass, and each block delegates its
/// maximum-value vertex.  The returned inequality has the largest left-hand
/// side achievable for w.
GenConCut separate_gencon_fixed_partition(const Graph& g, const VertexPartition& w, int cls,
                                          const FractionalPoint& x);

/// Orients every edge toward its smaller-value endpoint (tie: lower id), which
/// maximizes the indegree inequality's left-hand side; returns the inequality
/// only when violated.
std::optional<LinearInequality> separate_indegree(const Graph& g, int cls,
                                                  const FractionalPoint& x);

/// Greedy coarsening that starts from singletons and repeatedly merges the
/// pair of singleton blocks with the best positive merge gain.  The gain of
/// {u}, {v} is the saved cover mass over common neighbors z with
/// x_z <= min(x_u, x_v), minus the lost delegate value min(x_u, x_v) when u
/// and v are nonadjacent (an adjacent pair also saves its own crossing-edge
/// cover, which cancels that loss).  Merged blocks never merge again.
VertexPartition merge_heuristic_partition(const Graph& g, int cls, const FractionalPoint& x);

/// Per class, scans nonadjacent pairs with x_u + x_v > 1 in descending order
/// of that sum and emits the connectivity cut through a minimum vertex cut
/// when its value stays below x_u + x_v - 1; stops at the first violated pair
/// per class unless `exhaustive`.  Separators are minimalized before emission.
SeparationOutcome separate_connectivity(const Graph& g, const FractionalPoint& x,
                                        bool exhaustive = false);

/// Heuristic separation of the multiway inequality with class set [k]: vertex
/// weights sum x over classes, z = minimum-weight separating set, s = one
/// maximum-weight vertex per component of g - z.  Runs per connected
/// component; complete components are skipped.  With `try_all_class_subsets`
/// (k <= 3) every nonempty class subset is tried and the most violated cut is
/// returned.
std::optional<LinearInequality> separate_multiway(const Graph& g, const FractionalPoint& x,
                                                  bool try_all_class_subsets = false);

/// Output of the exact tree separator: the chosen separator/charging data and
/// the assembled inequality.
struct PairingCut {
    PairingSpec spec;
    LinearInequality ineq;
};

/// Exact minimization of the subtracted mass of the delegate-pairing
/// inequality on a tree: pairs whose tree path contains another pair's path
/// are dropped from the routing (separating the inner pair already separates
/// them), and a min-cost flow assigns each remaining class one interior path
/// vertex of minimum value.  The emitted inequality keeps every class of
/// cset, dropped ones with a zero charging row.
PairingCut separate_pairing_tree(const Graph& g, const std::vector<int>& cset,
                                 const std::vector<std::pair<int, int>>& delegates,
                                 const FractionalPoint& x);

}  // namespace cks
