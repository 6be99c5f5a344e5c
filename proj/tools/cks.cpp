#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cks/branch_cut.hpp"
#include "cks/instance_io.hpp"
#include "cks/polytope_lab.hpp"
#include "cks/separation.hpp"

namespace {

using namespace cks;

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("CKS_LOG");
    if (!env) return LogLevel::info;
    std::string v(env);
    if (v == "quiet") return LogLevel::quiet;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::info;
}

void info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << msg << '\n';
}

void debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::cerr << msg << '\n';
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

/// "1,3,5" with 1-based ids -> sorted 0-based vertex set.
VertexSet parse_id_list(const std::string& text) {
    VertexSet out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item) - 1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// "1-4,2-5" with 1-based ids -> list of 0-based pairs.
std::vector<std::pair<int, int>> parse_pair_list(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        auto dash = item.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("delegates: expected pairs like 1-4");
        out.push_back({std::stoi(item.substr(0, dash)) - 1, std::stoi(item.substr(dash + 1)) - 1});
    }
    return out;
}

LinearInequality read_inequality_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open inequality file " + path);
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) return parse_inequality(line);
    throw std::runtime_error("inequality file is empty: " + path);
}

std::string subpartition_text(const Subpartition& sp) {
    std::ostringstream os;
    bool any = false;
    for (size_t c = 0; c < sp.classes.size(); ++c) {
        if (sp.classes[c].empty()) continue;
        if (any) os << ' ';
        any = true;
        os << 'c' << c + 1 << ':';
        for (size_t i = 0; i < sp.classes[c].size(); ++i)
            os << (i ? "," : "") << sp.classes[c][i] + 1;
    }
    return any ? os.str() : std::string("empty");
}

struct SolveArgs {
    std::string instance, out, csv, cuts = "bc";
    double time_limit = 900.0;
    long long node_limit = -1;
    std::uint64_t seed = 0;
    bool zero_seconds = false;
};

int run_solve(const SolveArgs& a) {
    WeightedInstance inst = read_instance(a.instance);
    SolverConfig cfg = config_from_name(a.cuts);
    cfg.time_limit_seconds = a.time_limit;
    cfg.node_limit = a.node_limit;
    cfg.seed = a.seed;
    std::string name = stem_of(a.instance);
    info("instance " + name + ": n=" + std::to_string(inst.graph.n()) +
         " m=" + std::to_string(inst.graph.m()) + " k=" + std::to_string(inst.k));
    debug("config " + config_name(cfg) + " time-limit " + std::to_string(cfg.time_limit_seconds));

    SolveReport rep = solve_mws(inst, cfg);
    std::ostringstream head;
    head << "status " << (rep.status == SolveStatus::optimal ? "optimal" : "limit")
         << " objective " << rep.objective << " bound " << rep.bound << " gap "
         << rep.gap_percent << "% nodes " << rep.nodes;
    std::cout << head.str() << '\n';
    std::cout << "cuts connectivity=" << rep.cuts_connectivity
              << " indegree=" << rep.cuts_indegree << " gencon=" << rep.cuts_gencon
              << " multiway=" << rep.cuts_multiway << '\n';
    std::cout << "solution " << subpartition_text(rep.incumbent) << '\n';

    if (!a.out.empty()) write_solution(a.out, rep.incumbent, rep.objective);
    if (!a.csv.empty())
        append_csv_row(a.csv, report_csv_row(name, cfg, inst, rep, a.zero_seconds));
    return rep.status == SolveStatus::optimal ? 0 : 2;
}

struct GenArgs {
    std::string model = "er", out;
    int n = 0, k = 1, batch = 1;
    double p = 0.0;
    std::uint64_t seed = 0;
};

int run_gen(const GenArgs& a) {
    if (a.out.empty()) throw std::invalid_argument("gen: --out is required");
    if (a.batch < 1) throw std::invalid_argument("gen: --batch must be positive");
    GeneratorSpec spec{a.model, a.n, a.p, a.k, a.seed};
    std::filesystem::path base(a.out);
    for (int i = 0; i < a.batch; ++i) {
        spec.seed = a.seed + static_cast<std::uint64_t>(i);
        std::filesystem::path path = base;
        if (a.batch > 1) {
            path = base.parent_path() /
                   (base.stem().string() + "_" + std::to_string(i) + base.extension().string());
        }
        write_instance(path.string(), gen_instance(spec));
        info("wrote " + path.string());
    }
    return 0;
}

struct LabArgs {
    std::string instance, ineq, point, family;
    std::string cset, stable, cut_set, delegates;
    int k_override = 0;
};

int lab_enumerate(const WeightedInstance& inst, int k) {
    long long count = count_subpartitions(inst.graph, k);
    std::cout << "SUBPARTITIONS " << count << '\n';
    return 0;
}

int lab_validity(const WeightedInstance& inst, int k, const LabArgs& a) {
    LinearInequality ineq = read_inequality_file(a.ineq);
    ValidityReport rep = check_validity(inst.graph, k, ineq);
    if (rep.valid)
        std::cout << "VALID\n";
    else
        std::cout << "VIOLATED " << rep.worst_violation.str() << " by "
                  << subpartition_text(rep.witness) << '\n';
    return 0;
}

int lab_facet(const WeightedInstance& inst, int k, const LabArgs& a) {
    LinearInequality ineq = read_inequality_file(a.ineq);
    FacetReport rep = check_facet(inst.graph, k, ineq);
    std::cout << (rep.is_facet ? "FACET" : "NOT-FACET") << " rank=" << rep.affine_rank << "/"
              << inst.graph.n() * k << '\n';
    return 0;
}

int lab_perfect(const WeightedInstance& inst, const LabArgs& a) {
    MultiwaySpec spec;
    for (int c : parse_id_list(a.cset)) spec.cset.push_back(c);
    spec.s = parse_id_list(a.stable);
    spec.z = parse_id_list(a.cut_set);
    std::cout << (check_perfect(inst.graph, spec) ? "PERFECT" : "NOT-PERFECT") << '\n';
    return 0;
}

int lab_separate(const WeightedInstance& inst, int k, const LabArgs& a) {
    const Graph& g = inst.graph;
    FractionalPoint x = read_point(a.point, g.n(), k);
    std::vector<std::pair<LinearInequality, Rat>> found;
    if (a.family == "connectivity") {
        for (auto& [cut, viol] : separate_connectivity(g, x, true).cuts)
            found.push_back({cut, viol});
    } else if (a.family == "indegree") {
        for (int c = 0; c < k; ++c)
            if (auto cut = separate_indegree(g, c, x))
                found.push_back({*cut, evaluate(*cut, x) - cut->rhs});
    } else if (a.family == "gencon") {
        for (int c = 0; c < k; ++c) {
            GenConCut gc =
                separate_gencon_fixed_partition(g, merge_heuristic_partition(g, c, x), c, x);
            if (gc.lhs > gc.ineq.rhs) found.push_back({gc.ineq, gc.lhs - gc.ineq.rhs});
        }
    } else if (a.family == "multiway") {
        if (auto cut = separate_multiway(g, x, k <= 3))
            found.push_back({*cut, evaluate(*cut, x) - cut->rhs});
    } else if (a.family == "pairing") {
        std::vector<int> cset;
        for (int c : parse_id_list(a.cset)) cset.push_back(c);
        PairingCut pc = separate_pairing_tree(g, cset, parse_pair_list(a.delegates), x);
        found.push_back({pc.ineq, evaluate(pc.ineq, x) - pc.ineq.rhs});
    } else {
        throw std::invalid_argument("separate: unknown family: " + a.family);
    }
    if (found.empty()) {
        std::cout << "NONE\n";
    } else {
        for (auto& [cut, viol] : found)
            std::cout << "CUT " << serialize_inequality(cut) << " violation=" << viol.str()
                      << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"connected k-subpartition laboratory and solver"};
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "branch-and-cut solve of an instance file");
    solve->add_option("--instance", sa.instance, "instance file")->required();
    solve->add_option("--out", sa.out, "solution file to write");
    solve->add_option("--cuts", sa.cuts, "bc | bc+i | bc+g | bc+m");
    solve->add_option("--time-limit", sa.time_limit, "seconds before giving up");
    solve->add_option("--node-limit", sa.node_limit, "search node cap, -1 = unlimited");
    solve->add_option("--seed", sa.seed, "seed recorded in the report");
    solve->add_option("--csv", sa.csv, "append a result row to this CSV file");
    solve->add_flag("--zero-seconds", sa.zero_seconds, "write 0 in the CSV timing column");

    GenArgs ga;
    CLI::App* gen = app.add_subcommand("gen", "generate random instances");
    gen->add_option("--model", ga.model, "er | bipartite");
    gen->add_option("--n", ga.n, "vertex count")->required();
    gen->add_option("--p", ga.p, "edge probability");
    gen->add_option("--k", ga.k, "class budget");
    gen->add_option("--seed", ga.seed, "base seed");
    gen->add_option("--batch", ga.batch, "write this many files, seeds seed+i");
    gen->add_option("--out", ga.out, "output file (batch inserts _i)")->required();

    LabArgs la;
    CLI::App* lab = app.add_subcommand("lab", "polytope laboratory checks");
    lab->require_subcommand(1);
    CLI::App* enumerate = lab->add_subcommand("enumerate", "count subpartitions");
    CLI::App* validity = lab->add_subcommand("validity", "exhaustive inequality validity");
    CLI::App* facet = lab->add_subcommand("facet", "tight-point affine rank");
    CLI::App* perfect = lab->add_subcommand("perfect", "multiway facet condition");
    CLI::App* separate = lab->add_subcommand("separate", "run one separator on a point");
    for (CLI::App* sub : {enumerate, validity, facet, perfect, separate}) {
        sub->add_option("--instance", la.instance, "instance file")->required();
        sub->add_option("--k", la.k_override, "override the instance's class budget");
    }
    validity->add_option("--ineq", la.ineq, "inequality file")->required();
    facet->add_option("--ineq", la.ineq, "inequality file")->required();
    perfect->add_option("--cset", la.cset, "classes, e.g. 1,2")->required();
    perfect->add_option("--stable", la.stable, "stable set, e.g. 1,3,5")->required();
    perfect->add_option("--cut-set", la.cut_set, "separating set, e.g. 2,4");
    separate->add_option("--family", la.family,
                         "connectivity | indegree | gencon | multiway | pairing")
        ->required();
    separate->add_option("--point", la.point, "fractional point file")->required();
    separate->add_option("--cset", la.cset, "classes for pairing");
    separate->add_option("--delegates", la.delegates, "pairs for pairing, e.g. 1-3,2-4");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(sa);
        if (gen->parsed()) return run_gen(ga);
        WeightedInstance inst = read_instance(la.instance);
        int k = la.k_override > 0 ? la.k_override : inst.k;
        debug("lab instance n=" + std::to_string(inst.graph.n()) + " k=" + std::to_string(k));
        if (enumerate->parsed()) return lab_enumerate(inst, k);
        if (validity->parsed()) return lab_validity(inst, k, la);
        if (facet->parsed()) return lab_facet(inst, k, la);
        if (perfect->parsed()) return lab_perfect(inst, la);
        if (separate->parsed()) return lab_separate(inst, k, la);
        return 1;
    } catch (const GuardExceeded& e) {
        std::cerr << "enumeration guard: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
