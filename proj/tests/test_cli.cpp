#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cks/branch_cut.hpp"
#include "cks/instance_io.hpp"
#include "cks/polytope_lab.hpp"
#include "support/fixtures.hpp"

using namespace cks;
namespace fx = cks::fixtures;

namespace {

std::filesystem::path work_dir() {
    auto dir = std::filesystem::temp_directory_path() / "cks_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string binary() {
    const char* bin = std::getenv("CKS_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

struct RunResult {
    int code = -1;
    std::string out;
};

/// Runs the CLI with the given arguments, capturing exit code and stdout.
RunResult run(const std::string& args) {
    auto out_path = work_dir() / "stdout.txt";
    std::string cmd = "\"" + binary() + "\" " + args + " > \"" + out_path.string() + "\" 2> \"" +
                      (work_dir() / "stderr.txt").string() + "\"";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = (raw >> 8) & 0xff;
    std::ifstream in(out_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("gen writes deterministic instances and batches") {
    auto dir = work_dir();
    auto a = dir / "det.cks";
    std::string flags = "gen --model er --n 12 --p 0.3 --k 2 --seed 99 --out \"" +
                        a.string() + "\"";
    CHECK(run(flags).code == 0);
    std::string first = slurp(a);
    CHECK(run(flags).code == 0);
    CHECK(slurp(a) == first);
    WeightedInstance direct = gen_er(GeneratorSpec{"er", 12, 0.3, 2, 99});
    CHECK(first == instance_to_text(direct));

    auto batch = dir / "many.cks";
    CHECK(run("gen --model er --n 6 --p 0.5 --k 1 --seed 4 --batch 3 --out \"" +
              batch.string() + "\"")
              .code == 0);
    for (int i = 0; i < 3; ++i) {
        auto path = dir / ("many_" + std::to_string(i) + ".cks");
        CHECK(std::filesystem::exists(path));
        WeightedInstance want = gen_er(GeneratorSpec{"er", 6, 0.5, 1, 4 + static_cast<std::uint64_t>(i)});
        CHECK(slurp(path) == instance_to_text(want));
    }

    CHECK(run("gen --model bipartite --n 9 --p 0.5 --out \"" + (dir / "odd.cks").string() + "\"")
              .code == 1);
}

TEST_CASE("solve reports the optimum and writes solution plus csv") {
    auto dir = work_dir();
    auto inst_path = dir / "solve_me.cks";
    WeightedInstance inst(fx::path(3), {5, -1, 5}, 2);
    write_instance(inst_path.string(), inst);

    auto sol_path = dir / "solve_me.sol";
    auto csv_path = dir / "solve_me.csv";
    std::filesystem::remove(csv_path);
    RunResult r = run("solve --instance \"" + inst_path.string() + "\" --cuts bc+m --out \"" +
                      sol_path.string() + "\" --csv \"" + csv_path.string() +
                      "\" --zero-seconds");
    CHECK(r.code == 0);
    CHECK(r.out.find("status optimal") != std::string::npos);
    CHECK(r.out.find("objective 10") != std::string::npos);
    std::string sol = slurp(sol_path);
    CHECK(sol.substr(0, 5) == "s 10\n");

    std::string csv = slurp(csv_path);
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == report_csv_header());
    CHECK(row.find("solve_me,bc+m,3,2,2,optimal,10,") == 0);
    CHECK(row.substr(row.size() - 8) == "0.000000");

    // Rerunning appends an identical second row.
    CHECK(run("solve --instance \"" + inst_path.string() + "\" --cuts bc+m --csv \"" +
              csv_path.string() + "\" --zero-seconds")
              .code == 0);
    std::istringstream again(slurp(csv_path));
    std::vector<std::string> all;
    std::string line;
    while (std::getline(again, line)) all.push_back(line);
    REQUIRE(all.size() == 3);
    CHECK(all[1] == all[2]);

    CHECK(run("solve --instance \"" + inst_path.string() + "\" --cuts bogus").code == 1);
    CHECK(run("solve --instance \"" + (dir / "missing.cks").string() + "\"").code == 1);
    CHECK(run("solve --instance \"" + inst_path.string() + "\" --node-limit 0").code == 2);
}

TEST_CASE("lab enumerate matches the library count and guards big inputs") {
    auto dir = work_dir();
    auto p3 = dir / "lab_p3.cks";
    write_instance(p3.string(), WeightedInstance(fx::path(3), {1, 1, 1}, 2));
    RunResult r = run("lab enumerate --instance \"" + p3.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out == "SUBPARTITIONS " + std::to_string(count_subpartitions(fx::path(3), 2)) + "\n");
    RunResult one = run("lab enumerate --instance \"" + p3.string() + "\" --k 1");
    CHECK(one.out == "SUBPARTITIONS " + std::to_string(count_subpartitions(fx::path(3), 1)) + "\n");

    auto big = dir / "lab_big.cks";
    write_instance(big.string(),
                   WeightedInstance(fx::path(20), std::vector<long long>(20, 1), 1));
    CHECK(run("lab enumerate --instance \"" + big.string() + "\"").code == 3);
}

TEST_CASE("lab validity and facet verdicts come out verbatim") {
    auto dir = work_dir();
    auto p2 = dir / "lab_p2.cks";
    write_instance(p2.string(), WeightedInstance(fx::path(2), {1, 1}, 1));

    auto good = dir / "cover.ineq";
    spit(good, serialize_inequality(make_cover(0, 1)) + "\n");
    RunResult valid = run("lab validity --instance \"" + p2.string() + "\" --ineq \"" +
                          good.string() + "\"");
    CHECK(valid.code == 0);
    CHECK(valid.out == "VALID\n");

    auto bad = dir / "bogus.ineq";
    LinearInequality wrong;
    wrong.set(0, 0, Rat(1));
    wrong.rhs = Rat(0);  // x_{1,1} <= 0 fails on the subpartition {v1}
    spit(bad, serialize_inequality(wrong) + "\n");
    RunResult vio = run("lab validity --instance \"" + p2.string() + "\" --ineq \"" +
                        bad.string() + "\"");
    CHECK(vio.code == 0);
    CHECK(vio.out.find("VIOLATED 1 by c1:1") == 0);

    RunResult facet = run("lab facet --instance \"" + p2.string() + "\" --ineq \"" +
                          good.string() + "\"");
    CHECK(facet.code == 0);
    CHECK(facet.out == "FACET rank=2/2\n");
}

TEST_CASE("lab separate prints cuts and rejects bad scopes") {
    auto dir = work_dir();
    auto p3 = dir / "sep_p3.cks";
    write_instance(p3.string(), WeightedInstance(fx::path(3), {1, 1, 1}, 1));
    auto pt = dir / "sep.pt";
    spit(pt, "1 1 1\n2 1 3/10\n3 1 1\n");
    RunResult r = run("lab separate --instance \"" + p3.string() + "\" --family connectivity "
                      "--point \"" + pt.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("CUT ineq connectivity") == 0);
    CHECK(r.out.find("violation=7/10") != std::string::npos);

    auto flat = dir / "flat.pt";
    spit(flat, "1 1 1/4\n2 1 1/4\n3 1 1/4\n");
    RunResult none = run("lab separate --instance \"" + p3.string() + "\" --family connectivity "
                         "--point \"" + flat.string() + "\"");
    CHECK(none.out == "NONE\n");

    auto c4 = dir / "sep_c4.cks";
    write_instance(c4.string(), WeightedInstance(fx::cycle(4), {1, 1, 1, 1}, 1));
    auto cpt = dir / "sep_c4.pt";
    spit(cpt, "1 1 1/2\n3 1 1/2\n");
    CHECK(run("lab separate --instance \"" + c4.string() + "\" --family pairing --cset 1 "
              "--delegates 1-3 --point \"" + cpt.string() + "\"")
              .code == 1);

    auto tree = dir / "sep_p5.cks";
    write_instance(tree.string(), WeightedInstance(fx::path(5), {1, 1, 1, 1, 1}, 1));
    auto tpt = dir / "sep_p5.pt";
    spit(tpt, "1 1 1/2\n3 1 1/2\n5 1 1/2\n");
    RunResult pair = run("lab separate --instance \"" + tree.string() + "\" --family pairing "
                         "--cset 1 --delegates 1-5 --point \"" + tpt.string() + "\"");
    CHECK(pair.code == 0);
    CHECK(pair.out.find("CUT ineq pairing") == 0);
}

TEST_CASE("lab perfect answers both ways") {
    auto dir = work_dir();
    auto star = dir / "perf_star.cks";
    write_instance(star.string(), WeightedInstance(fx::star(3), {1, 1, 1, 1}, 2));
    RunResult yes = run("lab perfect --instance \"" + star.string() +
                        "\" --cset 1,2 --stable 1,2,3 --cut-set 4");
    CHECK(yes.code == 0);
    CHECK(yes.out == "PERFECT\n");
    // With all three classes available the pigeonhole surplus disappears.
    auto k3 = dir / "perf_star3.cks";
    write_instance(k3.string(), WeightedInstance(fx::star(3), {1, 1, 1, 1}, 3));
    RunResult no = run("lab perfect --instance \"" + k3.string() +
                       "\" --cset 1,2,3 --stable 1,2,3 --cut-set 4");
    CHECK(no.code == 0);
    CHECK(no.out == "NOT-PERFECT\n");
}
