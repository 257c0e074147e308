#pragma once

#include <string>
#include <vector>

#include "troppt/arith.hpp"
#include "troppt/budget.hpp"

namespace troppt {

Int stirling2(unsigned n, unsigned k);
// Euler characteristic of the configuration space of n distinct points on a curve of characteristic chiC
Rat chi_config(unsigned n, const Rat& chiC);
Rat c_seq(unsigned n);  // c_0 = 1
// monomial ideals of colength l in k[x, e]/(x^l, e^n), by growing order ideals cell by cell
Int punctual_count(unsigned l, unsigned n);
// partitions of l with all parts < q
Int partitions_below(unsigned q, unsigned l);
using Partition = std::vector<unsigned>;  // weakly decreasing
std::vector<Partition> partitions(unsigned k);
Int automorphisms(const Partition& p);  // product of factorials of part multiplicities
// sum over partitions of k of c_len / N * prod P_{n+1}(part)
Rat h_value(unsigned k, unsigned n);

// roots of f, g, h with multiplicities; g and h share no root
struct AlphaType {
    struct Root {
        unsigned mf, mg, mh;
        auto operator<=>(const Root&) const = default;
    };
    std::vector<Root> roots;  // sorted
    size_t t() const { return roots.size(); }
    size_t b() const;  // 2 + roots of g + roots of h
    unsigned deg_f() const;
};
std::vector<AlphaType> enumerate_alpha(unsigned i, unsigned j);
Rat chi_M(size_t b, unsigned k);

struct BlockInstance {
    unsigned i = 0, j = 0;
    std::vector<unsigned> right;  // weights of the marked points right of v0, in order
    std::vector<unsigned> left;
    unsigned w0 = 0;  // weight at v0, 0 when absent
};
Rat chi_block(const BlockInstance& blk);

// truncated power series in the total weight
using Series = std::vector<Rat>;
// sum of chi_block over right/left point sequences and w0, graded by total weight, up to n;
// n_right / n_left bound the number of point sequences (0 or 1 each)
Series block_series(unsigned i, unsigned j, unsigned n_right, unsigned n_left, unsigned n);

// torus-fixed types for the class (1,d) on P1 x P1: horizontal breaks of the spine
struct CaterpillarType {
    std::vector<std::pair<unsigned, unsigned>> breaks;  // (weight on the left edge, on the right edge), bottom up
    size_t zero_piece = 0;                              // spine piece holding the origin height
    std::vector<int> side;                              // side of each break vertex relative to the origin
    int zero_side = 1;
    bool maximal() const;  // no break shared by both sides
    std::string to_string() const;
};
std::vector<CaterpillarType> caterpillar_types(unsigned d, const Budget& budget = Budget{});

enum class SpineOrder { OneW, WOne };
struct EulerOptions {
    SpineOrder spine = SpineOrder::OneW;
};
struct EulerContribution {
    CaterpillarType type;
    Rat value;
};
struct EulerResult {
    Rat total;
    size_t types = 0;
    std::vector<EulerContribution> audit;  // filled when requested
};
EulerResult euler_satake(unsigned d, unsigned n, bool audit = false, const EulerOptions& opt = {},
                         const Budget& budget = Budget{});

// totals for n = 0..n_max from one pass over the types
std::vector<Rat> euler_satake_row(unsigned d, unsigned n_max, const EulerOptions& opt = {},
                                  const Budget& budget = Budget{});

}  // namespace troppt
