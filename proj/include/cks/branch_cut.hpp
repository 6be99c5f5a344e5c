#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cks/graph.hpp"
#include "cks/inequality.hpp"

namespace cks {

/// Vertex-weighted instance: choose up to k disjoint classes, each inducing a
/// connected subgraph, maximizing the total weight of the chosen vertices.
struct WeightedInstance {
    Graph graph;
    std::vector<long long> weights;
    int k = 1;

    WeightedInstance(Graph g, std::vector<long long> w, int kk);
};

/// Cut families the solver may separate on fractional points.  Connectivity
/// cuts are not optional: the solver always adds them lazily because the
/// relaxation is wrong without them.
struct SolverConfig {
    bool indegree = false;
    bool gencon = false;
    bool multiway = false;
    double time_limit_seconds = 900.0;
    double violation_tolerance = 1e-6;
    long long node_limit = -1;   // < 0 means unlimited
    int heuristic_period = 8;    // heuristic families at the root and every this many nodes
    unsigned long long seed = 0; // recorded for reporting; the search itself is deterministic
};

/// Named presets: "bc" (connectivity only), "bc+i" (exact indegree cuts),
/// "bc+g" (heuristic block cuts), "bc+m" (block cuts plus multiway cuts).
SolverConfig config_from_name(const std::string& name);
std::string config_name(const SolverConfig& cfg);

enum class SolveStatus { optimal, limit };

struct SolveReport {
    SolveStatus status = SolveStatus::optimal;
    Subpartition incumbent;
    long long objective = 0;    // exact weight of the incumbent
    double bound = 0.0;         // valid upper bound on the optimum
    double gap_percent = 0.0;   // (bound - objective) / max(1, |objective|) * 100
    double root_bound = 0.0;    // LP bound at the root after its cut loop
    long long nodes = 0;
    long long cuts_connectivity = 0;
    long long cuts_indegree = 0;
    long long cuts_gencon = 0;
    long long cuts_multiway = 0;
    double seconds = 0.0;
};

/// Branch-and-cut for the maximum-weight connected-subgraph problem with at
/// most k components.  Deterministic for a fixed instance and config.
SolveReport solve_mws(const WeightedInstance& inst, const SolverConfig& cfg);

/// For an integral point satisfying the cover rows: one connectivity cut per
/// class whose chosen vertices are disconnected (u and v from two different
/// components, separated by the minimalized neighborhood of u's component).
/// Returns nothing when every class is connected.
std::optional<std::vector<LinearInequality>> lazy_integral_check(const WeightedInstance& inst,
                                                                 const FractionalPoint& x);

/// CSV header and row for a solve, matching column for column:
/// instance,config,n,m,k,status,objective,bound,gap,nodes,cuts_conn,cuts_ind,
/// cuts_gen,cuts_mw,seconds.  zero_seconds replaces the timing column with 0
/// so reruns produce byte-identical files.
std::string report_csv_header();
std::string report_csv_row(const std::string& instance_name, const SolverConfig& cfg,
                           const WeightedInstance& inst, const SolveReport& rep,
                           bool zero_seconds = false);

}  // namespace cks
