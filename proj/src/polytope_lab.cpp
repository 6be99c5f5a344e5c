#include "cks/polytope_lab.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace cks {

std::vector<std::uint32_t> connected_subset_masks(const Graph& g, int cap) {
    if (g.n() > cap)
        throw GuardExceeded("connected-subset enumeration limited to " + std::to_string(cap) +
                            " vertices");
    int n = g.n();
    std::vector<std::uint32_t> nbr(n, 0);
    for (auto [u, v] : g.edges()) {
        nbr[u] |= 1u << v;
        nbr[v] |= 1u << u;
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (mask == 0) {
            out.push_back(0);
            continue;
        }
        // flood fill from the lowest bit, staying inside mask
        std::uint32_t start = mask & (~mask + 1);
        std::uint32_t seen = start, frontier = start;
        while (frontier) {
            std::uint32_t next = 0;
            std::uint32_t f = frontier;
            while (f) {
                int v = std::countr_zero(f);
                f &= f - 1;
                next |= nbr[v] & mask & ~seen;
            }
            seen |= next;
            frontier = next;
        }
        if (seen == mask) out.push_back(mask);
    }
    return out;
}

std::vector<VertexSet> enumerate_connected_subsets(const Graph& g, int cap) {
    std::vector<VertexSet> out;
    for (std::uint32_t mask : connected_subset_masks(g, cap)) {
        VertexSet vs;
        for (std::uint32_t m = mask; m; m &= m - 1) vs.push_back(std::countr_zero(m));
        out.push_back(std::move(vs));
    }
    return out;
}

Subpartition subpartition_from_masks(const std::vector<std::uint32_t>& masks, int) {
    Subpartition sp;
    for (std::uint32_t mask : masks) {
        VertexSet vs;
        for (std::uint32_t m = mask; m; m &= m - 1) vs.push_back(std::countr_zero(m));
        sp.classes.push_back(std::move(vs));
    }
    return sp;
}

std::vector<Subpartition> enumerate_subpartitions(const Graph& g, int k, long long limit) {
    std::vector<Subpartition> out;
    for_each_subpartition(
        g, k, [&](const std::vector<std::uint32_t>& masks) {
            out.push_back(subpartition_from_masks(masks, g.n()));
        },
        limit);
    return out;
}

long long count_subpartitions(const Graph& g, int k, long long limit) {
    long long count = 0;
    for_each_subpartition(g, k, [&](const std::vector<std::uint32_t>&) { ++count; }, limit);
    return count;
}

namespace {

/// Inequality scaled to integer numerators over one common denominator, so the
/// per-subpartition evaluation is pure 64-bit addition.
struct ScaledIneq {
    std::vector<std::tuple<int, int, long long>> terms;  // (vertex, class, numerator)
    long long rhs_num = 0;

    explicit ScaledIneq(const LinearInequality& ineq) {
        long long lcm = ineq.rhs.den();
        for (const auto& kv : ineq.coef) lcm = std::lcm(lcm, kv.second.den());
        for (const auto& [key, c] : ineq.coef)
            terms.emplace_back(key.first, key.second, c.num() * (lcm / c.den()));
        rhs_num = ineq.rhs.num() * (lcm / ineq.rhs.den());
    }

    long long lhs(const std::vector<std::uint32_t>& class_masks) const {
        long long acc = 0;
        for (auto [v, c, num] : terms)
            if (class_masks[c] >> v & 1) acc += num;
        return acc;
    }
};

void check_ineq_fits(const Graph& g, int k, const LinearInequality& ineq) {
    for (const auto& [key, c] : ineq.coef) {
        (void)c;
        if (key.first < 0 || key.first >= g.n() || key.second < 0 || key.second >= k)
            throw std::invalid_argument("inequality does not fit the given (g, k)");
    }
}

/// Incrementally maintained reduced row echelon form over exact rationals.
class RatEchelon {
public:
    explicit RatEchelon(int dim) : dim_(dim) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    bool add(std::vector<Rat> v) {
        for (size_t i = 0; i < rows_.size(); ++i) {
            const Rat& f = v[pivot_[i]];
            if (!f.is_zero()) {
                Rat factor = f;  // rows are normalized to a leading 1
                for (int j = 0; j < dim_; ++j)
                    if (!rows_[i][j].is_zero()) v[j] -= factor * rows_[i][j];
            }
        }
        int p = -1;
        for (int j = 0; j < dim_; ++j)
            if (!v[j].is_zero()) {
                p = j;
                break;
            }
        if (p < 0) return false;
        Rat lead = v[p];
        for (int j = p; j < dim_; ++j)
            if (!v[j].is_zero()) v[j] /= lead;
        for (size_t i = 0; i < rows_.size(); ++i) {
            const Rat& f = rows_[i][p];
            if (!f.is_zero()) {
                Rat factor = f;
                for (int j = 0; j < dim_; ++j)
                    if (!v[j].is_zero()) rows_[i][j] -= factor * v[j];
            }
        }
        rows_.push_back(std::move(v));
        pivot_.push_back(p);
        return true;
    }

private:
    int dim_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<int> pivot_;
};

std::vector<Rat> incidence_rats(const std::vector<std::uint32_t>& masks, int n, int k) {
    std::vector<Rat> out(static_cast<size_t>(n) * k);
    for (int c = 0; c < static_cast<int>(masks.size()); ++c)
        for (std::uint32_t m = masks[c]; m; m &= m - 1)
            out[static_cast<size_t>(std::countr_zero(m)) * k + c] = Rat(1);
    return out;
}

}  // namespace

ValidityReport check_validity(const Graph& g, int k, const LinearInequality& ineq,
                              long long limit) {
    check_ineq_fits(g, k, ineq);
    ScaledIneq scaled(ineq);
    ValidityReport report;
    bool first = true;
    long long best = 0;
    std::vector<std::uint32_t> best_masks;
    for_each_subpartition(
        g, k,
        [&](const std::vector<std::uint32_t>& masks) {
            long long lhs = scaled.lhs(masks);
            if (first || lhs > best) {
                first = false;
                best = lhs;
                best_masks = masks;
            }
        },
        limit);
    // worst violation = (best lhs - rhs) / common denominator
    long long lcm = ineq.rhs.den();
    for (const auto& [key, c] : ineq.coef) {
        (void)key;
        lcm = std::lcm(lcm, c.den());
    }
    report.worst_violation = Rat(best - scaled.rhs_num, lcm);
    report.valid = !report.worst_violation.is_positive();
    report.witness = subpartition_from_masks(best_masks, g.n());
    return report;
}

FacetReport check_facet(const Graph& g, int k, const LinearInequality& ineq, long long limit) {
    check_ineq_fits(g, k, ineq);
    ScaledIneq scaled(ineq);
    int dim = g.n() * k;
    FacetReport report;
    RatEchelon echelon(dim);
    bool have_base = false;
    std::vector<Rat> base;
    for_each_subpartition(
        g, k,
        [&](const std::vector<std::uint32_t>& masks) {
            if (scaled.lhs(masks) != scaled.rhs_num) return;
            ++report.tight_point_count;
            if (report.affine_rank == dim) return;  // rank can no longer grow
            auto vec = incidence_rats(masks, g.n(), k);
            if (!have_base) {
                have_base = true;
                base = std::move(vec);
                report.affine_rank = 1;
                report.certificate.push_back(subpartition_from_masks(masks, g.n()));
                return;
            }
            std::vector<Rat> diff(base.size());
            for (size_t i = 0; i < base.size(); ++i) diff[i] = vec[i] - base[i];
            if (echelon.add(std::move(diff))) {
                report.affine_rank = echelon.rank() + 1;
                report.certificate.push_back(subpartition_from_masks(masks, g.n()));
            }
        },
        limit);
    report.is_facet = (report.affine_rank == dim);
    return report;
}

int affine_rank_of_polytope(const Graph& g, int k, long long limit) {
    int dim = g.n() * k;
    RatEchelon echelon(dim);
    bool have_base = false;
    std::vector<Rat> base;
    int rank = 0;
    for_each_subpartition(
        g, k,
        [&](const std::vector<std::uint32_t>& masks) {
            if (rank == dim + 1) return;
            auto vec = incidence_rats(masks, g.n(), k);
            if (!have_base) {
                have_base = true;
                base = std::move(vec);
                rank = 1;
                return;
            }
            std::vector<Rat> diff(base.size());
            for (size_t i = 0; i < base.size(); ++i) diff[i] = vec[i] - base[i];
            if (echelon.add(std::move(diff))) rank = echelon.rank() + 1;
        },
        limit);
    return rank;
}

bool check_perfect(const Graph& g, const MultiwaySpec& spec) {
    int k_for_validation = spec.cset.empty() ? 1 : spec.cset.back() + 1;
    make_multiway(g, spec, k_for_validation);  // reuse the constructor's validation
    if (components(g).size() != 1) throw std::invalid_argument("check_perfect: g must be connected");
    long long s_size = static_cast<long long>(spec.s.size());
    long long c_size = static_cast<long long>(spec.cset.size());
    if (s_size <= c_size) return false;
    VertexSet rest;
    for (int v = 0; v < g.n(); ++v)
        if (!contains(spec.z, v)) rest.push_back(v);
    auto comps = components_within(g, rest);
    // component id per vertex, for counting which components each z-vertex sees
    std::vector<int> comp_of(g.n(), -1);
    for (size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
    std::vector<char> comp_has_s(comps.size(), 0);
    for (int v : spec.s) comp_has_s[comp_of[v]] = 1;
    bool some_slack = false;
    for (int z : spec.z) {
        std::vector<char> seen(comps.size(), 0);
        long long sees = 0;
        for (int w : g.neighbors(z)) {
            int c = comp_of[w];
            if (c >= 0 && comp_has_s[c] && !seen[c]) {
                seen[c] = 1;
                ++sees;
            }
        }
        if (sees < s_size - c_size + 1) return false;
        if (sees >= s_size - c_size + 2) some_slack = true;
    }
    if (c_size >= 2 && !some_slack) return false;
    return true;
}

namespace {

std::optional<ViolationWitness> best_cover(const Graph& g, int k, const FractionalPoint& x) {
    std::optional<ViolationWitness> best;
    for (int v = 0; v < g.n(); ++v) {
        auto ineq = make_cover(v, k);
        Rat viol = evaluate(ineq, x) - ineq.rhs;
        if (!best || viol > best->violation) best = ViolationWitness{ineq, viol};
    }
    return best;
}

std::optional<ViolationWitness> best_connectivity(const Graph& g, int k,
                                                 const FractionalPoint& x) {
    if (g.n() > kMaxEnumVertices)
        throw GuardExceeded("connectivity enumeration limited to 14 vertices");
    std::optional<ViolationWitness> best;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            if (g.has_edge(u, v)) continue;
            std::vector<int> others;
            for (int w = 0; w < g.n(); ++w)
                if (w != u && w != v) others.push_back(w);
            int t = static_cast<int>(others.size());
            for (std::uint32_t sel = 0; sel < (1u << t); ++sel) {
                VertexSet z;
                for (int i = 0; i < t; ++i)
                    if (sel >> i & 1) z.push_back(others[i]);
                if (!separates(g, u, v, z)) continue;
                for (int c = 0; c < k; ++c) {
                    Rat lhs = x.at(u, c) + x.at(v, c);
                    for (int zz : z) lhs -= x.at(zz, c);
                    Rat viol = lhs - Rat(1);
                    if (!best || viol > best->violation)
                        best = ViolationWitness{make_connectivity(g, u, v, z, c, k), viol};
                }
            }
        }
    return best;
}

std::optional<ViolationWitness> best_indegree(const Graph& g, int k, const FractionalPoint& x) {
    if (g.m() > 14) throw GuardExceeded("indegree enumeration limited to 14 edges");
    std::optional<ViolationWitness> best;
    int m = g.m();
    std::vector<int> indeg(g.n());
    for (std::uint32_t sel = 0; sel < (1u << m); ++sel) {
        std::fill(indeg.begin(), indeg.end(), 0);
        for (int e = 0; e < m; ++e) ++indeg[sel >> e & 1 ? g.edges()[e].first : g.edges()[e].second];
        for (int c = 0; c < k; ++c) {
            Rat lhs;
            for (int v = 0; v < g.n(); ++v)
                if (indeg[v] != 1) lhs += Rat(1 - indeg[v]) * x.at(v, c);
            Rat viol = lhs - Rat(1);
            if (!best || viol > best->violation) {
                Orientation orient;
                for (int e = 0; e < m; ++e) {
                    auto [a, b] = g.edges()[e];
                    if (sel >> e & 1)
                        orient.arcs.emplace_back(b, a);
                    else
                        orient.arcs.emplace_back(a, b);
                }
                best = ViolationWitness{make_indegree(g, orient, c, k), viol};
            }
        }
    }
    return best;
}

std::optional<ViolationWitness> best_gencon(const Graph& g, int k, const FractionalPoint& x) {
    if (g.n() > 6) throw GuardExceeded("gencon enumeration limited to 6 vertices");
    int n = g.n();
    std::optional<ViolationWitness> best;
    // restricted growth strings enumerate set partitions with blocks ordered by
    // smallest member
    std::vector<int> rgs(n, 0);
    auto handle_partition = [&]() {
        int nblocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        VertexPartition w;
        w.blocks.assign(nblocks, {});
        for (int v = 0; v < n; ++v) w.blocks[rgs[v]].push_back(v);
        auto crossing = crossing_edges(g, w);
        int ce = static_cast<int>(crossing.size());
        std::vector<int> pick(nblocks, 0);  // odometer over one s-vertex per block
        while (true) {
            VertexSet s;
            for (int b = 0; b < nblocks; ++b) s.push_back(w.blocks[b][pick[b]]);
            std::sort(s.begin(), s.end());
            std::vector<char> in_s(n, 0);
            for (int v : s) in_s[v] = 1;
            for (std::uint32_t sel = 0; sel < (1u << ce); ++sel) {
                Orientation orient;
                for (int e = 0; e < ce; ++e) {
                    auto [a, b] = crossing[e];
                    if (sel >> e & 1)
                        orient.arcs.emplace_back(b, a);
                    else
                        orient.arcs.emplace_back(a, b);
                }
                auto bd = block_indegrees(g, w, orient);
                for (int c = 0; c < k; ++c) {
                    Rat lhs;
                    for (int v = 0; v < n; ++v) {
                        int coefficient = in_s[v] ? 1 - bd[v] : -bd[v];
                        if (coefficient != 0) lhs += Rat(coefficient) * x.at(v, c);
                    }
                    Rat viol = lhs - Rat(1);
                    if (!best || viol > best->violation) {
                        GenConSpec spec{w, s, orient, c};
                        best = ViolationWitness{make_gencon(g, spec, k), viol};
                    }
                }
            }
            int b = nblocks - 1;
            while (b >= 0 && ++pick[b] == static_cast<int>(w.blocks[b].size())) pick[b--] = 0;
            if (b < 0) break;
        }
    };
    auto rec = [&](auto&& self, int v, int maxid) -> void {
        if (v == n) {
            handle_partition();
            return;
        }
        for (int id = 0; id <= maxid + 1; ++id) {
            rgs[v] = id;
            self(self, v + 1, std::max(maxid, id));
        }
    };
    rec(rec, 1, 0);  // vertex 0 always starts block 0
    return best;
}

std::optional<ViolationWitness> best_multiway(const Graph& g, int k, const FractionalPoint& x) {
    if (g.n() > 7) throw GuardExceeded("multiway enumeration limited to 7 vertices");
    int n = g.n();
    std::vector<std::uint32_t> nbr(n, 0);
    for (auto [u, v] : g.edges()) {
        nbr[u] |= 1u << v;
        nbr[v] |= 1u << u;
    }
    std::vector<std::vector<int>> csets;
    for (std::uint32_t sel = 1; sel < (1u << k); ++sel) {
        std::vector<int> cs;
        for (int c = 0; c < k; ++c)
            if (sel >> c & 1) cs.push_back(c);
        csets.push_back(std::move(cs));
    }
    std::optional<ViolationWitness> best;
    for (std::uint32_t smask = 0; smask < (1u << n); ++smask) {
        if (std::popcount(smask) < 1) continue;
        bool stable = true;
        for (std::uint32_t m = smask; m && stable; m &= m - 1)
            if (nbr[std::countr_zero(m)] & smask) stable = false;
        if (!stable) continue;
        VertexSet s;
        for (std::uint32_t m = smask; m; m &= m - 1) s.push_back(std::countr_zero(m));
        std::uint32_t free = ((1u << n) - 1) & ~smask;
        // iterate z over subsets of V \ s
        for (std::uint32_t zmask = free;; zmask = (zmask - 1) & free) {
            VertexSet z;
            for (std::uint32_t m = zmask; m; m &= m - 1) z.push_back(std::countr_zero(m));
            VertexSet rest;
            for (int v = 0; v < n; ++v)
                if (!(zmask >> v & 1)) rest.push_back(v);
            bool ok = true;
            for (const auto& comp : components_within(g, rest)) {
                int hits = 0;
                for (int v : comp)
                    if (smask >> v & 1) ++hits;
                if (hits > 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                for (const auto& cs : csets) {
                    long long beta = std::max<long long>(
                        static_cast<long long>(s.size()) - static_cast<long long>(cs.size()), 0);
                    Rat lhs;
                    for (int c : cs) {
                        for (int v : s) lhs += x.at(v, c);
                        if (beta > 0)
                            for (int v : z) lhs -= Rat(beta) * x.at(v, c);
                    }
                    Rat viol = lhs - Rat(static_cast<long long>(cs.size()));
                    if (!best || viol > best->violation) {
                        MultiwaySpec spec{cs, s, z};
                        best = ViolationWitness{make_multiway(g, spec, k), viol};
                    }
                }
            }
            if (zmask == 0) break;
        }
    }
    return best;
}

}  // namespace

std::optional<ViolationWitness> find_violated_by_enumeration(const Graph& g, int k,
                                                             const FractionalPoint& x,
                                                             IneqFamily family) {
    if (x.n != g.n() || x.k != k)
        throw std::invalid_argument("find_violated_by_enumeration: point dimensions mismatch");
    std::optional<ViolationWitness> best;
    switch (family) {
        case IneqFamily::cover: best = best_cover(g, k, x); break;
        case IneqFamily::connectivity: best = best_connectivity(g, k, x); break;
        case IneqFamily::indegree: best = best_indegree(g, k, x); break;
        case IneqFamily::gencon: best = best_gencon(g, k, x); break;
        case IneqFamily::multiway: best = best_multiway(g, k, x); break;
        default:
            throw std::invalid_argument("find_violated_by_enumeration: unsupported family");
    }
    if (best && best->violation.is_positive()) return best;
    return std::nullopt;
}

}  // namespace cks
