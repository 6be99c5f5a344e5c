#include "cks/instance_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cks {

namespace {

std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Prng::Prng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) word = splitmix(x);
}

std::uint64_t Prng::next() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Prng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Prng::below: zero bound");
    std::uint64_t reject = (0 - bound) % bound;  // 2^64 mod bound
    while (true) {
        std::uint64_t r = next();
        if (r >= reject) return r % bound;
    }
}

double Prng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

void check_spec(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("GeneratorSpec: n must be positive");
    if (spec.p < 0.0 || spec.p > 1.0)
        throw std::invalid_argument("GeneratorSpec: p must lie in [0, 1]");
    if (spec.k < 1) throw std::invalid_argument("GeneratorSpec: k must be positive");
}

}  // namespace

WeightedInstance gen_er(const GeneratorSpec& spec) {
    check_spec(spec);
    Prng rng(spec.seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j)
            if (rng.unit() < spec.p) edges.emplace_back(i, j);
    std::vector<long long> weights(spec.n);
    for (auto& w : weights) w = static_cast<long long>(rng.below(101)) - 50;
    return WeightedInstance(Graph(spec.n, std::move(edges)), std::move(weights), spec.k);
}

WeightedInstance gen_bipartite(const GeneratorSpec& spec) {
    check_spec(spec);
    if (spec.n % 2 != 0)
        throw std::invalid_argument("gen_bipartite: n must be even for equal parts");
    Prng rng(spec.seed);
    int half = spec.n / 2;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < half; ++i)
        for (int j = half; j < spec.n; ++j)
            if (rng.unit() < spec.p) edges.emplace_back(i, j);
    std::vector<long long> weights(spec.n);
    for (int v = 0; v < spec.n; ++v)
        weights[v] = v < half ? -static_cast<long long>(rng.below(51))
                              : static_cast<long long>(rng.below(51));
    return WeightedInstance(Graph(spec.n, std::move(edges)), std::move(weights), spec.k);
}

WeightedInstance gen_instance(const GeneratorSpec& spec) {
    if (spec.model == "er") return gen_er(spec);
    if (spec.model == "bipartite") return gen_bipartite(spec);
    throw std::invalid_argument("gen_instance: unknown model: " + spec.model);
}

std::string instance_to_text(const WeightedInstance& inst) {
    std::ostringstream os;
    os << "p cks " << inst.graph.n() << ' ' << inst.graph.m() << ' ' << inst.k << '\n';
    for (int v = 0; v < inst.graph.n(); ++v)
        os << "w " << v + 1 << ' ' << inst.weights[v] << '\n';
    for (auto [u, v] : inst.graph.edges()) os << "e " << u + 1 << ' ' << v + 1 << '\n';
    return os.str();
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw std::runtime_error("instance_from_text: line " + std::to_string(line) + ": " + what);
}

}  // namespace

WeightedInstance instance_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto next_line = [&](std::istringstream& fields) {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                fields.clear();
                fields.str(line);
                return true;
            }
        }
        ++lineno;
        return false;
    };

    std::istringstream fields;
    if (!next_line(fields)) parse_fail(1, "missing header");
    std::string tag, kind;
    int n = 0, m = 0, k = 0;
    if (!(fields >> tag >> kind >> n >> m >> k) || tag != "p" || kind != "cks")
        parse_fail(lineno, "expected header `p cks <n> <m> <k>`");
    if (n < 1 || m < 0 || k < 1) parse_fail(lineno, "header values out of range");

    std::vector<long long> weights(n);
    std::vector<char> have_weight(n, 0);
    for (int i = 0; i < n; ++i) {
        if (!next_line(fields)) parse_fail(lineno, "missing weight line");
        int v = 0;
        long long w = 0;
        if (!(fields >> tag >> v >> w) || tag != "w")
            parse_fail(lineno, "expected `w <v> <weight>`");
        if (v < 1 || v > n) parse_fail(lineno, "vertex id out of range");
        if (have_weight[v - 1]) parse_fail(lineno, "duplicate weight for vertex");
        have_weight[v - 1] = 1;
        weights[v - 1] = w;
    }

    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
    for (int i = 0; i < m; ++i) {
        if (!next_line(fields)) parse_fail(lineno, "missing edge line");
        int u = 0, v = 0;
        if (!(fields >> tag >> u >> v) || tag != "e") parse_fail(lineno, "expected `e <u> <v>`");
        if (u < 1 || u > n || v < 1 || v > n) parse_fail(lineno, "vertex id out of range");
        if (u == v) parse_fail(lineno, "self-loop rejected");
        if (u > v) parse_fail(lineno, "edges must list the smaller endpoint first");
        if (seen[u - 1][v - 1]) parse_fail(lineno, "duplicate edge");
        seen[u - 1][v - 1] = 1;
        edges.emplace_back(u - 1, v - 1);
    }
    if (next_line(fields)) parse_fail(lineno, "unexpected extra line");
    return WeightedInstance(Graph(n, std::move(edges)), std::move(weights), k);
}

WeightedInstance read_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_instance: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_text(buf.str());
}

void write_instance(const std::string& path, const WeightedInstance& inst) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_instance: cannot open " + path);
    out << instance_to_text(inst);
}

std::string solution_to_text(const Subpartition& sp, long long objective) {
    std::ostringstream os;
    os << "s " << objective << '\n';
    for (size_t c = 0; c < sp.classes.size(); ++c) {
        if (sp.classes[c].empty()) continue;
        os << "c " << c + 1;
        for (int v : sp.classes[c]) os << ' ' << v + 1;
        os << '\n';
    }
    return os.str();
}

void write_solution(const std::string& path, const Subpartition& sp, long long objective) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_solution: cannot open " + path);
    out << solution_to_text(sp, objective);
}

std::string point_to_text(const FractionalPoint& x) {
    std::ostringstream os;
    for (int v = 0; v < x.n; ++v)
        for (int c = 0; c < x.k; ++c)
            if (!x.at(v, c).is_zero())
                os << v + 1 << ' ' << c + 1 << ' ' << x.at(v, c).str() << '\n';
    return os.str();
}

FractionalPoint point_from_text(const std::string& text, int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("point_from_text: bad dimensions");
    FractionalPoint x(n, k);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        int v = 0, c = 0;
        std::string value;
        if (!(fields >> v >> c >> value))
            throw std::runtime_error("point_from_text: line " + std::to_string(lineno) +
                                     ": expected `<v> <c> <value>`");
        if (v < 1 || v > n || c < 1 || c > k)
            throw std::runtime_error("point_from_text: line " + std::to_string(lineno) +
                                     ": index out of range");
        x.at(v - 1, c - 1) = Rat::parse(value);
    }
    return x;
}

FractionalPoint read_point(const std::string& path, int n, int k) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_point: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return point_from_text(buf.str(), n, k);
}

void append_csv_row(const std::string& path, const std::string& row) {
    bool fresh = true;
    std::error_code ec;
    auto size = std::filesystem::file_size(path, ec);
    if (!ec && size > 0) fresh = false;
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("append_csv_row: cannot open " + path);
    if (fresh) out << report_csv_header() << '\n';
    out << row << '\n';
}

}  // namespace cks
