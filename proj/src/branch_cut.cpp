#include "cks/branch_cut.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "cks/lp.hpp"
#include "cks/separation.hpp"

namespace cks {

WeightedInstance::WeightedInstance(Graph g, std::vector<long long> w, int kk)
    : graph(std::move(g)), weights(std::move(w)), k(kk) {
    if (static_cast<int>(weights.size()) != graph.n())
        throw std::invalid_argument("WeightedInstance: one weight per vertex required");
    if (k < 1) throw std::invalid_argument("WeightedInstance: k must be positive");
}

SolverConfig config_from_name(const std::string& name) {
    SolverConfig cfg;
    if (name == "bc") return cfg;
    if (name == "bc+i") {
        cfg.indegree = true;
        return cfg;
    }
    if (name == "bc+g") {
        cfg.gencon = true;
        return cfg;
    }
    if (name == "bc+m") {
        cfg.gencon = true;
        cfg.multiway = true;
        return cfg;
    }
    throw std::invalid_argument("SolverConfig: unknown preset: " + name);
}

std::string config_name(const SolverConfig& cfg) {
    if (cfg.multiway) return "bc+m";
    if (cfg.gencon) return "bc+g";
    if (cfg.indegree) return "bc+i";
    return "bc";
}

std::optional<std::vector<LinearInequality>> lazy_integral_check(const WeightedInstance& inst,
                                                                 const FractionalPoint& x) {
    const Graph& g = inst.graph;
    if (x.n != g.n() || x.k != inst.k)
        throw std::invalid_argument("lazy_integral_check: point shape mismatch");
    std::vector<LinearInequality> cuts;
    for (int c = 0; c < inst.k; ++c) {
        VertexSet support;
        for (int v = 0; v < g.n(); ++v) {
            const Rat& val = x.at(v, c);
            if (val == Rat(1))
                support.push_back(v);
            else if (!val.is_zero())
                throw std::invalid_argument("lazy_integral_check: point is not integral");
        }
        if (support.size() < 2) continue;
        auto comps = components_within(g, support);
        if (comps.size() <= 1) continue;
        int u = comps[0].front();
        int v = comps[1].front();
        VertexSet z = minimalize_separator(g, u, v, neighborhood(g, comps[0]));
        cuts.push_back(make_connectivity(g, u, v, z, c, inst.k));
    }
    if (cuts.empty()) return std::nullopt;
    return cuts;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr int kRowCap = 150;      // cut rows carried between nodes
constexpr int kRowCapRoot = 300;  // cut-row budget while the root loop runs
constexpr int kRowMargin = 60;    // hysteresis before an in-loop trim
constexpr int kAgeLimit = 6;      // consecutive slack solves before a cut retires

struct Node {
    double bound = kInf;
    long long id = 0;
    std::vector<std::pair<int, char>> fixes;  // (variable, 0 or 1)
    LpBasis basis;
};

/// Best bound first; equal bounds in creation order.
struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.id > b.id;
    }
};

bool integral_within(const std::vector<double>& x, double tol) {
    for (double d : x)
        if (std::fabs(d - std::round(d)) > tol) return false;
    return true;
}

FractionalPoint snap_point(const std::vector<double>& x, int n, int k) {
    FractionalPoint p(n, k);
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < k; ++c) {
            double d = x[static_cast<size_t>(v) * k + c];
            d = std::min(1.0, std::max(0.0, d));
            p.at(v, c) = Rat::nearest(d, 1000000);
        }
    return p;
}

double double_violation(const LinearInequality& ineq, const std::vector<double>& x, int k) {
    double lhs = 0.0;
    for (const auto& [vc, coef] : ineq.coef)
        lhs += coef.to_double() * x[static_cast<size_t>(vc.first) * k + vc.second];
    return lhs - ineq.rhs.to_double();
}

LpRow to_row(const LinearInequality& ineq, int k) {
    LpRow row;
    for (const auto& [vc, coef] : ineq.coef)
        row.coef.push_back({vc.first * k + vc.second, coef.to_double()});
    row.rhs = ineq.rhs.to_double();
    return row;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

/// Bookkeeping for the cut manager: the pool key of a row and how long it has
/// been slack.  Cover rows keep an empty key and are never dropped.
struct RowMeta {
    std::string key;
    int age = 0;
    double slack = 0.0;
};

void note_row_activity(const LpModel& model, const std::vector<double>& x, int first_cut_row,
                       std::vector<RowMeta>& meta) {
    for (int r = first_cut_row; r < static_cast<int>(model.rows.size()); ++r) {
        double ax = 0.0;
        for (auto [j, a] : model.rows[r].coef) ax += a * x[j];
        double slack = model.rows[r].rhs - ax;
        meta[r].slack = slack;
        meta[r].age = slack > 1e-7 ? meta[r].age + 1 : 0;
    }
}

/// Rewrite a saved basis after rows were dropped.  Returns the empty basis
/// when the saved one leaned on a dropped slack; lp_solve then starts cold.
LpBasis remap_basis(const LpBasis& b, const std::vector<int>& rowmap, int nvars) {
    if (b.basic.empty()) return {};
    int old_m = static_cast<int>(rowmap.size());
    int new_m = 0;
    for (int r = 0; r < old_m; ++r)
        if (rowmap[r] >= 0) ++new_m;
    LpBasis nb;
    nb.basic.assign(new_m, -1);
    for (int r = 0; r < old_m; ++r) {
        if (rowmap[r] < 0) continue;
        // Rows appended after the basis was captured carry their own slack.
        int bj = r < static_cast<int>(b.basic.size()) ? b.basic[r] : nvars + r;
        if (bj >= nvars) {
            int s = bj - nvars;
            if (s >= old_m || rowmap[s] < 0) return {};
            bj = nvars + rowmap[s];
        }
        nb.basic[rowmap[r]] = bj;
    }
    size_t keep = std::min(b.at_upper.size(), static_cast<size_t>(nvars));
    nb.at_upper.assign(b.at_upper.begin(), b.at_upper.begin() + keep);
    return nb;
}

/// Drop negative-weight vertices from a class while it stays connected.
void trim_class(const Graph& g, const std::vector<long long>& w, VertexSet& cls) {
    while (cls.size() > 1) {
        int pick = -1;
        for (int v : cls) {
            if (w[v] >= 0) continue;
            VertexSet rest;
            rest.reserve(cls.size() - 1);
            for (int u : cls)
                if (u != v) rest.push_back(u);
            if (!is_connected_subset(g, rest)) continue;
            if (pick < 0 || w[v] < w[pick] || (w[v] == w[pick] && v < pick)) pick = v;
        }
        if (pick < 0) break;
        cls.erase(std::find(cls.begin(), cls.end(), pick));
    }
    if (cls.size() == 1 && w[cls[0]] < 0) cls.clear();
}

/// Absorb the heaviest positive unused neighbor until none is left.
long long grow_class(const Graph& g, const std::vector<long long>& w, VertexSet& cls,
                     std::vector<char>& used) {
    long long gain = 0;
    while (true) {
        int pick = -1;
        for (size_t i = 0; i < cls.size(); ++i)
            for (int u : g.neighbors(cls[i]))
                if (!used[u] && w[u] > 0 &&
                    (pick < 0 || w[u] > w[pick] || (w[u] == w[pick] && u < pick)))
                    pick = u;
        if (pick < 0) break;
        used[pick] = 1;
        cls.push_back(pick);
        gain += w[pick];
    }
    std::sort(cls.begin(), cls.end());
    return gain;
}

/// Round a fractional point to a feasible subpartition: threshold the vertex
/// mass, trim each component to positive weight, keep the best k, then grow
/// greedily.  A pure function of x, so reruns stay bit-for-bit identical.
std::pair<long long, Subpartition> round_to_incumbent(const Graph& g,
                                                      const std::vector<long long>& w, int k,
                                                      const std::vector<double>& x) {
    const int n = g.n();
    std::vector<double> mass(n, 0.0);
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < k; ++c) mass[v] += x[static_cast<size_t>(v) * k + c];
    long long best = 0;
    Subpartition best_sp;
    best_sp.classes.assign(k, {});
    for (double theta : {0.75, 0.5, 0.25}) {
        VertexSet support;
        for (int v = 0; v < n; ++v)
            if (mass[v] >= theta - 1e-9) support.push_back(v);
        std::vector<std::pair<long long, VertexSet>> parts;
        for (auto& comp : components_within(g, support)) {
            VertexSet cls = comp;
            trim_class(g, w, cls);
            if (cls.empty()) continue;
            long long val = 0;
            for (int v : cls) val += w[v];
            if (val > 0) parts.push_back({val, std::move(cls)});
        }
        std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        Subpartition sp;
        sp.classes.assign(k, {});
        std::vector<char> used(n, 0);
        long long total = 0;
        int placed = 0;
        for (auto& [val, cls] : parts) {
            if (placed >= k) break;
            for (int v : cls) used[v] = 1;
            sp.classes[placed++] = std::move(cls);
            total += val;
        }
        for (int c = 0; c < placed; ++c) total += grow_class(g, w, sp.classes[c], used);
        while (placed < k) {
            int seed = -1;
            for (int v = 0; v < n; ++v)
                if (!used[v] && w[v] > 0 && (seed < 0 || w[v] > w[seed])) seed = v;
            if (seed < 0) break;
            used[seed] = 1;
            sp.classes[placed].push_back(seed);
            total += w[seed] + grow_class(g, w, sp.classes[placed], used);
            ++placed;
        }
        if (total > best) {
            best = total;
            best_sp = std::move(sp);
        }
    }
    return {best, std::move(best_sp)};
}

}  // namespace

SolveReport solve_mws(const WeightedInstance& inst, const SolverConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    auto time_up = [&] { return elapsed() >= cfg.time_limit_seconds; };

    const Graph& g = inst.graph;
    const int n = g.n(), k = inst.k, nvars = n * k;
    const double tol = cfg.violation_tolerance;

    LpModel model(nvars);
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < k; ++c)
            model.objective[v * k + c] = static_cast<double>(inst.weights[v]);
    for (int v = 0; v < n; ++v) {
        LpRow cover;
        for (int c = 0; c < k; ++c) cover.coef.push_back({v * k + c, 1.0});
        cover.rhs = 1.0;
        model.add_row(cover);
    }
    const int cover_rows = n;
    std::vector<RowMeta> meta(model.rows.size());
    LpFactorCache lp_cache;

    long long best_obj = 0;  // the empty subpartition is always feasible
    Subpartition best_sp;
    best_sp.classes.assign(k, {});
    long long cuts_conn = 0, cuts_ind = 0, cuts_gen = 0, cuts_mw = 0;
    std::set<std::string> pool;

    std::vector<Node> open;  // heap under NodeOrder; front is the best bound
    long long next_id = 0;
    {
        Node root;
        root.id = next_id++;
        open.push_back(std::move(root));
    }
    auto push_node = [&](Node&& nd) {
        open.push_back(std::move(nd));
        std::push_heap(open.begin(), open.end(), NodeOrder{});
    };
    auto add_cut_row = [&](const LinearInequality& cut, long long& counter) -> bool {
        std::string key = serialize_inequality(cut);
        if (!pool.insert(key).second) return false;
        model.add_row(to_row(cut, k));
        RowMeta rm;
        rm.key = std::move(key);
        meta.push_back(std::move(rm));
        ++counter;
        return true;
    };
    // Retire cut rows that stayed slack (plus the weakest extras once over
    // `cap`) so basis factorizations stay small.  Retired keys leave the pool;
    // a cut may return later if it becomes violated again.
    auto maintain_rows = [&](int cap, LpBasis* live) {
        int rcount = static_cast<int>(model.rows.size());
        std::vector<char> drop(rcount, 0);
        int ndrop = 0;
        for (int r = cover_rows; r < rcount; ++r)
            if (meta[r].age >= kAgeLimit) {
                drop[r] = 1;
                ++ndrop;
            }
        int excess = rcount - cover_rows - ndrop - cap;
        if (excess > 0) {
            std::vector<int> cand;
            for (int r = cover_rows; r < rcount; ++r)
                if (!drop[r] && meta[r].age >= 1) cand.push_back(r);
            std::sort(cand.begin(), cand.end(), [&](int a, int b) {
                if (meta[a].age != meta[b].age) return meta[a].age > meta[b].age;
                if (meta[a].slack != meta[b].slack) return meta[a].slack > meta[b].slack;
                return a > b;
            });
            for (int i = 0; i < excess && i < static_cast<int>(cand.size()); ++i) {
                drop[cand[i]] = 1;
                ++ndrop;
            }
        }
        if (ndrop == 0) return;
        std::vector<int> rowmap(rcount, -1);
        std::vector<LpRow> kept_rows;
        std::vector<RowMeta> kept_meta;
        kept_rows.reserve(rcount - ndrop);
        kept_meta.reserve(rcount - ndrop);
        for (int r = 0; r < rcount; ++r) {
            if (drop[r]) {
                pool.erase(meta[r].key);
                continue;
            }
            rowmap[r] = static_cast<int>(kept_rows.size());
            kept_rows.push_back(std::move(model.rows[r]));
            kept_meta.push_back(std::move(meta[r]));
        }
        model.rows = std::move(kept_rows);
        meta = std::move(kept_meta);
        lp_cache.basic.clear();  // row ids shifted; the cached inverse is stale
        for (Node& nd : open) nd.basis = remap_basis(nd.basis, rowmap, nvars);
        if (live) *live = remap_basis(*live, rowmap, nvars);
    };

    bool hit_limit = false;
    bool root_done = false;
    double root_bound = kInf;
    long long processed = 0;

    while (!open.empty()) {
        if (time_up() || (cfg.node_limit >= 0 && processed >= cfg.node_limit)) {
            hit_limit = true;
            break;
        }
        if (processed > 0) maintain_rows(kRowCap, nullptr);
        std::pop_heap(open.begin(), open.end(), NodeOrder{});
        Node node = std::move(open.back());
        open.pop_back();
        if (std::floor(node.bound + tol) <= static_cast<double>(best_obj)) continue;
        ++processed;

        for (int j = 0; j < nvars; ++j) {
            model.lower[j] = 0.0;
            model.upper[j] = 1.0;
        }
        for (auto [var, val] : node.fixes) {
            model.lower[var] = static_cast<double>(val);
            model.upper[var] = static_cast<double>(val);
        }

        LpBasis basis = node.basis;
        bool have_basis = !basis.basic.empty();
        double node_bound = node.bound;
        bool pruned = false;
        bool out_of_time = false;
        std::vector<double> xcur;
        int rounds = 0;
        bool heuristic_node =
            cfg.heuristic_period > 0 ? node.id % cfg.heuristic_period == 0 : node.id == 0;

        while (true) {
            if (time_up()) {
                out_of_time = true;
                break;
            }
            LpSolution sol;
            try {
                sol = lp_solve(model, have_basis ? &basis : nullptr, {}, &lp_cache);
            } catch (const std::runtime_error&) {
                sol = lp_solve(model, nullptr, {}, &lp_cache);  // retry cold on numerical trouble
            }
            if (sol.status == LpStatus::infeasible) {
                pruned = true;
                break;
            }
            basis = sol.basis;
            have_basis = true;
            node_bound = std::min(node_bound, sol.objective);
            xcur = sol.x;
            note_row_activity(model, sol.x, cover_rows, meta);
            auto rounded = round_to_incumbent(g, inst.weights, k, sol.x);
            if (rounded.first > best_obj) {
                best_obj = rounded.first;
                best_sp = std::move(rounded.second);
            }
            if (std::floor(node_bound + tol) <= static_cast<double>(best_obj)) {
                pruned = true;
                break;
            }
            const int live_cap = node.id == 0 ? kRowCapRoot : kRowCap;
            if (static_cast<int>(model.rows.size()) - cover_rows > live_cap + kRowMargin) {
                maintain_rows(live_cap, &basis);
                have_basis = !basis.basic.empty();
            }

            if (integral_within(sol.x, tol)) {
                FractionalPoint ip(n, k);
                Subpartition sp;
                sp.classes.assign(k, {});
                long long weight = 0;
                for (int v = 0; v < n; ++v)
                    for (int c = 0; c < k; ++c)
                        if (std::round(sol.x[v * k + c]) == 1.0) {
                            ip.at(v, c) = Rat(1);
                            sp.classes[c].push_back(v);
                            weight += inst.weights[v];
                        }
                auto lazy = lazy_integral_check(inst, ip);
                if (!lazy) {
                    if (weight > best_obj) {
                        best_obj = weight;
                        best_sp = sp;
                    }
                    pruned = true;  // node solved exactly
                    break;
                }
                // Mandatory repairs: each cut is violated by one unit here,
                // so the loop strictly cuts off this point.  Not charged
                // against the heuristic round cap.
                for (auto& cut : *lazy) add_cut_row(cut, cuts_conn);
                continue;
            }

            // Tailing off: hand the node to branching.  The root gets a
            // generous budget because its bound is reported.
            if (rounds >= (node.id == 0 ? 20 : 4)) break;
            ++rounds;

            int added = 0;
            int family_added = 0;
            auto try_add = [&](const LinearInequality& cut, long long& counter) {
                if (family_added >= 50) return;
                if (double_violation(cut, sol.x, k) <= tol) return;
                if (!add_cut_row(cut, counter)) return;
                ++added;
                ++family_added;
            };

            FractionalPoint fp = snap_point(sol.x, n, k);
            SeparationOutcome conn = separate_connectivity(g, fp);
            for (auto& [cut, viol] : conn.cuts) try_add(cut, cuts_conn);
            if (cfg.indegree && (node.id == 0 || rounds == 1)) {
                family_added = 0;
                for (int c = 0; c < k; ++c) {
                    auto cut = separate_indegree(g, c, fp);
                    if (cut) try_add(*cut, cuts_ind);
                }
            }
            if (cfg.gencon && heuristic_node) {
                family_added = 0;
                for (int c = 0; c < k; ++c) {
                    VertexPartition part = merge_heuristic_partition(g, c, fp);
                    GenConCut gc = separate_gencon_fixed_partition(g, part, c, fp);
                    try_add(gc.ineq, cuts_gen);
                }
            }
            if (cfg.multiway && heuristic_node) {
                family_added = 0;
                auto cut = separate_multiway(g, fp);
                if (cut) try_add(*cut, cuts_mw);
            }
            if (added == 0) break;  // nothing violated: branch
        }

        if (out_of_time) {
            hit_limit = true;
            Node back;
            back.bound = node_bound;
            back.id = node.id;
            back.fixes = std::move(node.fixes);
            back.basis = std::move(basis);
            push_node(std::move(back));
            break;
        }
        if (!root_done) {
            root_bound = pruned && xcur.empty() ? static_cast<double>(best_obj) : node_bound;
            root_done = true;
        }
        if (pruned) continue;

        // Branch on the fractional variable closest to one half.
        int bvar = -1;
        double best_dist = 2.0;
        for (int j = 0; j < nvars; ++j) {
            double d = xcur[j];
            if (std::fabs(d - std::round(d)) <= tol) continue;
            double dist = std::fabs(d - 0.5);
            if (dist < best_dist) {
                best_dist = dist;
                bvar = j;
            }
        }
        if (bvar < 0) continue;  // defensive: nothing fractional survived
        for (char val : {static_cast<char>(1), static_cast<char>(0)}) {
            Node child;
            child.bound = node_bound;
            child.id = next_id++;
            child.fixes = node.fixes;
            child.fixes.push_back({bvar, val});
            child.basis = basis;
            push_node(std::move(child));
        }
    }

    SolveReport rep;
    rep.status = hit_limit ? SolveStatus::limit : SolveStatus::optimal;
    rep.incumbent = best_sp;
    rep.objective = best_obj;
    rep.nodes = processed;
    rep.cuts_connectivity = cuts_conn;
    rep.cuts_indegree = cuts_ind;
    rep.cuts_gencon = cuts_gen;
    rep.cuts_multiway = cuts_mw;
    rep.seconds = elapsed();
    if (hit_limit && !open.empty())
        rep.bound = std::max(static_cast<double>(best_obj), open.front().bound);
    else
        rep.bound = static_cast<double>(best_obj);
    rep.root_bound = root_done ? root_bound : rep.bound;
    rep.gap_percent =
        rep.status == SolveStatus::optimal
            ? 0.0
            : (rep.bound - static_cast<double>(best_obj)) /
                  std::max(1.0, std::fabs(static_cast<double>(best_obj))) * 100.0;

    // Independent feasibility audit of the incumbent before reporting it.
    std::vector<char> used(n, 0);
    long long audit = 0;
    for (const auto& cls : rep.incumbent.classes) {
        for (int v : cls) {
            if (v < 0 || v >= n || used[v])
                throw std::logic_error("solve_mws: incumbent classes overlap");
            used[v] = 1;
            audit += inst.weights[v];
        }
        if (!cls.empty() && !is_connected_subset(g, cls))
            throw std::logic_error("solve_mws: incumbent class disconnected");
    }
    if (audit != rep.objective) throw std::logic_error("solve_mws: incumbent weight mismatch");
    return rep;
}

std::string report_csv_header() {
    return "instance,config,n,m,k,status,objective,bound,gap,nodes,cuts_conn,cuts_ind,cuts_gen,"
           "cuts_mw,seconds";
}

std::string report_csv_row(const std::string& instance_name, const SolverConfig& cfg,
                           const WeightedInstance& inst, const SolveReport& rep,
                           bool zero_seconds) {
    std::ostringstream os;
    os << instance_name << ',' << config_name(cfg) << ',' << inst.graph.n() << ','
       << inst.graph.m() << ',' << inst.k << ','
       << (rep.status == SolveStatus::optimal ? "optimal" : "limit") << ',' << rep.objective << ','
       << fmt(rep.bound) << ',' << fmt(rep.gap_percent) << ',' << rep.nodes << ','
       << rep.cuts_connectivity << ',' << rep.cuts_indegree << ',' << rep.cuts_gencon << ','
       << rep.cuts_multiway << ',' << fmt(zero_seconds ? 0.0 : rep.seconds);
    return os.str();
}

}  // namespace cks
