#include <doctest.h>

#include <functional>

#include "troppt/euler.hpp"
#include "troppt/loglinear.hpp"

using namespace troppt;

namespace {

// partitions of l with parts at most p, by the usual recursion
Int count_parts_at_most(unsigned p, unsigned l) {
    if (l == 0) return 1;
    if (p == 0) return 0;
    Int r = count_parts_at_most(p - 1, l);
    if (p <= l) r += count_parts_at_most(p, l - p);
    return r;
}

Rat falling(const Rat& x, unsigned n) {
    Rat r = 1;
    for (unsigned i = 0; i < n; ++i) r *= x - i;
    return r;
}

void compositions(unsigned total, std::vector<unsigned>& cur, const std::function<void()>& f) {
    if (total == 0) {
        f();
        return;
    }
    for (unsigned w = 1; w <= total; ++w) {
        cur.push_back(w);
        compositions(total - w, cur, f);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("combinatorial helpers") {
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(5, 3) == 25);
    CHECK(stirling2(3, 0) == 0);
    CHECK(stirling2(0, 0) == 1);
    CHECK(partitions(4).size() == 5);
    CHECK(partitions(6).size() == 11);
    CHECK(automorphisms({2, 1, 1}) == 2);
    CHECK(automorphisms({1, 1, 1}) == 6);
    CHECK(partitions_below(2, 3) == 1);
    CHECK(partitions_below(3, 3) == 2);
    CHECK(c_seq(0) == 1);
    CHECK(c_seq(1) == 1);
    CHECK(c_seq(2) == -1);
    CHECK(c_seq(3) == 2);
}

TEST_CASE("configuration space characteristic") {
    for (long chi : {-3, -1, 0, 1, 2, 5})
        for (unsigned n = 0; n < 6; ++n) CHECK(chi_config(n, Rat(chi)) == falling(Rat(chi), n));
}

TEST_CASE("punctual counts") {
    CHECK(punctual_count(1, 1) == 1);
    CHECK(punctual_count(2, 2) == 2);
    CHECK(punctual_count(3, 2) == 2);
    for (unsigned l = 0; l <= 6; ++l)
        for (unsigned n = 1; n <= 6; ++n) {
            CHECK(punctual_count(l, n) == count_parts_at_most(n, l));
            CHECK(partitions_below(n + 1, l) == count_parts_at_most(n, l));
        }
}

TEST_CASE("h values") {
    for (unsigned n = 0; n < 5; ++n) CHECK(h_value(0, n) == 1);
    CHECK(h_value(1, 0) == 0);
    for (unsigned n = 1; n < 5; ++n) CHECK(h_value(1, n) == 1);
    // two parts of one, or one part of two
    for (unsigned n = 0; n < 5; ++n) {
        Int p1 = count_parts_at_most(n, 1), p2 = count_parts_at_most(n, 2);
        CHECK(h_value(2, n) == Rat(p2) - Rat(p1 * p1) / 2);
    }
}

TEST_CASE("alpha types") {
    CHECK(enumerate_alpha(0, 0).size() == 1);
    CHECK(enumerate_alpha(1, 0).size() == 1);
    CHECK(enumerate_alpha(1, 1).size() == 2);
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 3; ++j)
            for (const auto& a : enumerate_alpha(i, j)) {
                for (const auto& r : a.roots) CHECK_FALSE((r.mg > 0 && r.mh > 0));
                CHECK(std::is_sorted(a.roots.begin(), a.roots.end()));
            }
}

TEST_CASE("moduli characteristic") {
    CHECK(chi_M(2, 0) == 1);
    for (size_t b = 2; b < 7; ++b) CHECK(chi_M(b, 1) == Rat(2 - static_cast<long>(b)));
    CHECK(chi_M(3, 2) == 0);
}

TEST_CASE("block series is the graded sum of block characteristics") {
    BlockInstance one;
    one.i = 1;
    one.right = {1};
    CHECK(chi_block(one) == 1);
    const unsigned n = 3;
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = 0; j < 2; ++j)
            for (unsigned nr : {0u, 1u})
                for (unsigned nl : {0u, 1u}) {
                    Series s = block_series(i, j, nr, nl, n);
                    for (unsigned tot = 0; tot <= n; ++tot) {
                        Rat sum = 0;
                        for (unsigned r = 0; r <= (nr ? tot : 0); ++r)
                            for (unsigned l = 0; r + l <= tot && l <= (nl ? tot : 0); ++l) {
                                unsigned w0 = tot - r - l;
                                std::vector<unsigned> rc, lc;
                                compositions(r, rc, [&] {
                                    compositions(l, lc, [&] {
                                        BlockInstance b{i, j, rc, lc, w0};
                                        sum += chi_block(b);
                                    });
                                });
                            }
                        CHECK(s[tot] == sum);
                    }
                }
}

TEST_CASE("caterpillar types against the pt0 fans") {
    struct Row {
        unsigned d;
        LatticePolytope P;
    };
    for (const auto& r : {Row{1, LatticePolytope::unit_square()}, Row{2, LatticePolytope::rectangle(1, 2)}}) {
        auto types = caterpillar_types(r.d);
        size_t maximal = 0;
        for (const auto& t : types) maximal += t.maximal();
        auto X = normal_fan(r.P);
        auto pt = build_pt0(r.P, X);
        size_t fixed = 0;
        for (auto i : pt.fan.maximal())
            fixed += is_fixed_stratum(pre_expansion(r.P, X, r.P.from_n(pt.fan.cone(i).relint_point())));
        CHECK(maximal == fixed);
    }
    CHECK(caterpillar_types(1).size() == 24);
    CHECK(caterpillar_types(2).size() == 436);
}

TEST_CASE("euler satake totals") {
    auto row1 = euler_satake_row(1, 3);
    CHECK(row1 == std::vector<Rat>{Rat(20), Rat(96), Rat(384), Rat(4024, 3)});
    auto row2 = euler_satake_row(2, 3);
    CHECK(row2 == std::vector<Rat>{Rat(186), Rat(1336), Rat(7028), Rat(92290, 3)});
    for (unsigned n = 0; n <= 3; ++n) CHECK(euler_satake(1, n).total == row1[n]);
    EulerOptions w1;
    w1.spine = SpineOrder::WOne;
    CHECK(euler_satake_row(1, 3, w1) == std::vector<Rat>{Rat(20), Rat(96), Rat(340), Rat(3092, 3)});
    SUBCASE("audit sums to the total") {
        auto r = euler_satake(2, 2, true);
        Rat s = 0;
        for (const auto& c : r.audit) s += c.value;
        CHECK(s == r.total);
        CHECK(r.types == r.audit.size());
    }
    SUBCASE("thread count does not change the result") {
        Budget b;
        b.threads = 4;
        CHECK(euler_satake(3, 2, false, {}, b).total == euler_satake(3, 2).total);
        CHECK(euler_satake(3, 2).total == 113898);
    }
}
