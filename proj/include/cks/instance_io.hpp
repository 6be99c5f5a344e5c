#pragma once

#include <cstdint>
#include <string>

#include "cks/branch_cut.hpp"
#include "cks/inequality.hpp"

namespace cks {

/// Fixed, portable 64-bit generator (a splitmix-seeded xoshiro256** stream):
/// the same seed yields the same draws on every platform, which keeps
/// generated instances byte-identical across machines.
class Prng {
public:
    explicit Prng(std::uint64_t seed);
    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
    double unit();                             // uniform in [0, 1)

private:
    std::uint64_t s_[4];
};

/// Parameters for the two random-instance families.
struct GeneratorSpec {
    std::string model = "er";  // "er" or "bipartite"
    int n = 0;
    double p = 0.0;  // edge probability
    int k = 1;
    std::uint64_t seed = 0;
};

/// Uniform graph: every vertex pair (i < j, lexicographic order) is an edge
/// with probability p; integer weights uniform in [-50, 50], drawn after the
/// edges in vertex order.
WeightedInstance gen_er(const GeneratorSpec& spec);

/// Balanced bipartite graph (n even): vertices 0..n/2-1 carry weights in
/// [-50, 0], the rest in [0, 50]; cross pairs are edges with probability p.
WeightedInstance gen_bipartite(const GeneratorSpec& spec);

/// Dispatch on spec.model.
WeightedInstance gen_instance(const GeneratorSpec& spec);

/// Text form, 1-based vertex ids:
///   p cks <n> <m> <k>
///   w <v> <weight>     (one line per vertex, ascending)
///   e <u> <v>          (one line per edge, u < v, sorted)
std::string instance_to_text(const WeightedInstance& inst);
WeightedInstance instance_from_text(const std::string& text);  // errors carry line numbers

WeightedInstance read_instance(const std::string& path);
void write_instance(const std::string& path, const WeightedInstance& inst);

/// Solution text: `s <objective>` then `c <class> <v1> <v2> ...` for each
/// nonempty class, classes and vertices 1-based.
std::string solution_to_text(const Subpartition& sp, long long objective);
void write_solution(const std::string& path, const Subpartition& sp, long long objective);

/// Fractional point text: one `<v> <c> <value>` line per nonzero entry,
/// 1-based ids, values in the rational/decimal syntax of Rat::parse.
std::string point_to_text(const FractionalPoint& x);
FractionalPoint point_from_text(const std::string& text, int n, int k);
FractionalPoint read_point(const std::string& path, int n, int k);

/// Appends one data row, writing the header first when the file is new/empty.
void append_csv_row(const std::string& path, const std::string& row);

}  // namespace cks
