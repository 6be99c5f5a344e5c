#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cks/instance_io.hpp"
#include "support/fixtures.hpp"

using namespace cks;
namespace fx = cks::fixtures;

namespace {

std::string thrown_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("prng streams are reproducible and bounded") {
    Prng a(42), b(42), c(43);
    bool all_same = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        std::uint64_t va = a.next();
        all_same = all_same && va == b.next();
        any_diff = any_diff || va != c.next();
    }
    CHECK(all_same);
    CHECK(any_diff);

    Prng d(7);
    for (int i = 0; i < 1000; ++i) {
        CHECK(d.below(13) < 13);
        double u = d.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK_THROWS_AS(d.below(0), std::invalid_argument);
}

TEST_CASE("uniform generator obeys the degenerate probabilities") {
    GeneratorSpec spec;
    spec.n = 5;
    spec.k = 2;
    spec.seed = 9;

    spec.p = 0.0;
    CHECK(gen_er(spec).graph.m() == 0);
    spec.p = 1.0;
    WeightedInstance full = gen_er(spec);
    CHECK(full.graph.m() == 10);
    CHECK(full.graph.is_complete());
    for (long long w : full.weights) {
        CHECK(w >= -50);
        CHECK(w <= 50);
    }
    CHECK(full.k == 2);
}

TEST_CASE("generation is byte-identical per seed and varies across seeds") {
    GeneratorSpec spec;
    spec.n = 30;
    spec.p = 0.2;
    spec.k = 3;
    spec.seed = 1234;
    std::string once = instance_to_text(gen_er(spec));
    std::string twice = instance_to_text(gen_er(spec));
    CHECK(once == twice);
    spec.seed = 1235;
    CHECK(instance_to_text(gen_er(spec)) != once);

    spec.model = "bipartite";
    spec.seed = 77;
    std::string bip = instance_to_text(gen_instance(spec));
    CHECK(bip == instance_to_text(gen_bipartite(spec)));
    CHECK_THROWS_AS(gen_instance(GeneratorSpec{"nope", 4, 0.5, 1, 1}), std::invalid_argument);
}

TEST_CASE("bipartite generator keeps parts, signs and ranges") {
    GeneratorSpec spec;
    spec.model = "bipartite";
    spec.n = 4;
    spec.p = 1.0;
    spec.seed = 5;
    WeightedInstance inst = gen_bipartite(spec);
    CHECK(inst.graph.m() == 4);
    for (auto [u, v] : inst.graph.edges()) {
        CHECK(u < 2);
        CHECK(v >= 2);
    }
    spec.n = 40;
    spec.p = 0.5;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        spec.seed = seed;
        WeightedInstance draw = gen_bipartite(spec);
        for (int v = 0; v < 20; ++v) {
            CHECK(draw.weights[v] <= 0);
            CHECK(draw.weights[v] >= -50);
        }
        for (int v = 20; v < 40; ++v) {
            CHECK(draw.weights[v] >= 0);
            CHECK(draw.weights[v] <= 50);
        }
        for (auto [u, v] : draw.graph.edges()) {
            CHECK(u < 20);
            CHECK(v >= 20);
        }
    }
    spec.n = 5;
    CHECK_THROWS_AS(gen_bipartite(spec), std::invalid_argument);
}

TEST_CASE("a fixed pair is an edge with the configured probability") {
    // Chi-squared with one degree of freedom against p = 0.3, significance
    // 0.001 (critical value 10.828), over 1000 independent seeds.
    GeneratorSpec spec;
    spec.n = 5;
    spec.p = 0.3;
    int present = 0;
    const int draws = 1000;
    for (int s = 0; s < draws; ++s) {
        spec.seed = 100000 + static_cast<std::uint64_t>(s);
        if (gen_er(spec).graph.has_edge(0, 1)) ++present;
    }
    double e1 = draws * 0.3, e0 = draws * 0.7;
    double chi2 = (present - e1) * (present - e1) / e1 +
                  (draws - present - e0) * (draws - present - e0) / e0;
    CHECK(chi2 < 10.828);
}

TEST_CASE("edge counts sit near the binomial mean") {
    GeneratorSpec spec;
    spec.n = 100;
    spec.p = 0.05;
    double total = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        spec.seed = 5000 + static_cast<std::uint64_t>(s);
        total += gen_er(spec).graph.m();
    }
    double mean = total / seeds;
    double expect = 4950 * 0.05;
    double sigma = std::sqrt(4950 * 0.05 * 0.95);
    CHECK(std::fabs(mean - expect) <= 3.0 * sigma / std::sqrt(static_cast<double>(seeds)));

    spec.model = "bipartite";
    spec.p = 0.5;
    total = 0.0;
    for (int s = 0; s < seeds; ++s) {
        spec.seed = 9000 + static_cast<std::uint64_t>(s);
        total += gen_bipartite(spec).graph.m();
    }
    mean = total / seeds;
    sigma = std::sqrt(2500 * 0.25);
    CHECK(std::fabs(mean - 1250.0) <= 3.0 * sigma / std::sqrt(static_cast<double>(seeds)));
}

TEST_CASE("instance text round trips exactly") {
    GeneratorSpec spec;
    for (int trial = 0; trial < 50; ++trial) {
        spec.model = trial % 2 == 0 ? "er" : "bipartite";
        spec.n = 4 + 2 * (trial % 8);
        spec.p = 0.1 + 0.08 * (trial % 10);
        spec.k = 1 + trial % 4;
        spec.seed = 31000 + static_cast<std::uint64_t>(trial);
        WeightedInstance inst = gen_instance(spec);
        std::string text = instance_to_text(inst);
        WeightedInstance back = instance_from_text(text);
        CHECK(back.graph.n() == inst.graph.n());
        CHECK(back.graph.edges() == inst.graph.edges());
        CHECK(back.weights == inst.weights);
        CHECK(back.k == inst.k);
        CHECK(instance_to_text(back) == text);
    }
}

TEST_CASE("instance files survive the disk") {
    auto path = temp_file("cks_io_roundtrip.cks");
    GeneratorSpec spec;
    spec.n = 12;
    spec.p = 0.4;
    spec.k = 2;
    spec.seed = 404;
    WeightedInstance inst = gen_er(spec);
    write_instance(path.string(), inst);
    WeightedInstance back = read_instance(path.string());
    CHECK(back.graph.edges() == inst.graph.edges());
    CHECK(back.weights == inst.weights);
    std::filesystem::remove(path);
    CHECK(thrown_message([&] { read_instance(path.string()); }).find("cannot open") !=
          std::string::npos);
}

TEST_CASE("malformed instance text is rejected with line numbers") {
    CHECK(thrown_message([] { instance_from_text(""); }).find("line 1") != std::string::npos);
    CHECK(thrown_message([] { instance_from_text("q cks 2 1 1\n"); }).find("line 1") !=
          std::string::npos);
    std::string selfloop = "p cks 2 1 1\nw 1 0\nw 2 0\ne 1 1\n";
    CHECK(thrown_message([&] { instance_from_text(selfloop); }).find("self-loop") !=
          std::string::npos);
    CHECK(thrown_message([&] { instance_from_text(selfloop); }).find("line 4") !=
          std::string::npos);
    std::string dup = "p cks 2 2 1\nw 1 0\nw 2 0\ne 1 2\ne 1 2\n";
    CHECK(thrown_message([&] { instance_from_text(dup); }).find("duplicate edge") !=
          std::string::npos);
    std::string backwards = "p cks 2 1 1\nw 1 0\nw 2 0\ne 2 1\n";
    CHECK(thrown_message([&] { instance_from_text(backwards); }).find("smaller endpoint") !=
          std::string::npos);
    std::string truncated = "p cks 3 1 1\nw 1 0\nw 2 0\n";
    CHECK(thrown_message([&] { instance_from_text(truncated); }).find("missing weight") !=
          std::string::npos);
    std::string extra = "p cks 1 0 1\nw 1 0\nw 1 0\n";
    CHECK(thrown_message([&] { instance_from_text(extra); }).find("extra line") !=
          std::string::npos);
    std::string badrange = "p cks 2 1 1\nw 1 0\nw 3 0\ne 1 2\n";
    CHECK(thrown_message([&] { instance_from_text(badrange); }).find("out of range") !=
          std::string::npos);
}

TEST_CASE("solution text lists nonempty classes with 1-based ids") {
    Subpartition sp;
    sp.classes = {{0, 2}, {}, {4}};
    CHECK(solution_to_text(sp, 7) == "s 7\nc 1 1 3\nc 3 5\n");
    Subpartition empty;
    empty.classes = {{}, {}};
    CHECK(solution_to_text(empty, 0) == "s 0\n");

    auto path = temp_file("cks_io_solution.sol");
    write_solution(path.string(), sp, 7);
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "s 7\nc 1 1 3\nc 3 5\n");
    std::filesystem::remove(path);
}

TEST_CASE("fractional point text round trips rationals") {
    FractionalPoint x = fx::star3_saturated_point();
    std::string text = point_to_text(x);
    CHECK(text.find("1 1 1/2\n") == 0);
    FractionalPoint back = point_from_text(text, 4, 2);
    CHECK(back.val == x.val);

    FractionalPoint decimal = point_from_text("1 1 0.25\n2 1 3/4\n", 2, 1);
    CHECK(decimal.at(0, 0) == Rat(1, 4));
    CHECK(decimal.at(1, 0) == Rat(3, 4));

    CHECK(thrown_message([] { point_from_text("1 3 1/2\n", 2, 2); }).find("out of range") !=
          std::string::npos);
    CHECK(thrown_message([] { point_from_text("nope\n", 2, 2); }).find("line 1") !=
          std::string::npos);
}

TEST_CASE("csv append writes one header and then rows") {
    auto path = temp_file("cks_io_rows.csv");
    std::filesystem::remove(path);
    append_csv_row(path.string(), "a,bc,1,0,1,optimal,0,0.000000,0.000000,1,0,0,0,0,0.000000");
    append_csv_row(path.string(), "b,bc,2,1,1,optimal,3,3.000000,0.000000,1,0,0,0,0,0.000000");
    std::ifstream in(path);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == report_csv_header());
    CHECK(lines[1].substr(0, 2) == "a,");
    CHECK(lines[2].substr(0, 2) == "b,");
    std::filesystem::remove(path);
}
