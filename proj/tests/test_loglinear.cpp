#include <doctest.h>

#include <random>
#include <set>

#include "troppt/loglinear.hpp"

using namespace troppt;

namespace {

std::set<ConeType> sampled_generic_types(const LatticePolytope& P, const ToricSurfaceFan& X, int samples) {
    std::mt19937_64 rng(3);
    std::set<ConeType> out;
    for (int s = 0; s < samples; ++s) {
        QVec v(P.size());
        for (auto& x : v) x = Rat(static_cast<long>(rng() % 200001) - 100000, 37);
        auto t = cone_type(P, X, v);
        bool generic = t.min_set.size() == 1;
        for (const auto& c : t.subdivision.cells) generic = generic && c.size() == 3;
        for (auto k : t.vertex_sector) generic = generic && X.fan.cone(k).dim() == 2;
        if (generic) out.insert(t);
    }
    return out;
}

std::set<ConeType> maximal_types(const PT0Fan& pt) {
    std::set<ConeType> s;
    for (auto i : pt.fan.maximal()) s.insert(pt.types[i]);
    return s;
}

}  // namespace

TEST_CASE("normal fans") {
    auto sq = normal_fan(LatticePolytope::unit_square());
    CHECK(sq.fan.of_dim(1).size() == 4);
    CHECK(sq.fan.maximal().size() == 4);
    CHECK(sq.fan.is_complete());
    auto tri = normal_fan(LatticePolytope::triangle(2));
    CHECK(tri.fan.of_dim(1).size() == 3);
    CHECK(tri.fan.is_complete());
    auto seg = normal_fan(LatticePolytope::segment(3));
    CHECK(seg.fan.ambient() == 1);
    CHECK(seg.fan.maximal().size() == 2);
}

TEST_CASE("xdagger fan sizes") {
    CHECK(build_xdagger_fan(LatticePolytope::triangle(1)).maximal().size() == 3);
    CHECK(build_xdagger_fan(LatticePolytope::unit_square()).maximal().size() == 8);
    CHECK(build_xdagger_fan(LatticePolytope::rectangle(1, 2)).maximal().size() == 74);
    CHECK(build_xdagger_fan(LatticePolytope::triangle(2)).maximal().size() == 69);
}

TEST_CASE("pt0 fans") {
    struct Row {
        LatticePolytope P;
        size_t maximal, total;
        bool exact;
    };
    std::vector<Row> rows{{LatticePolytope::triangle(1), 6, 13, true},
                          {LatticePolytope::unit_square(), 20, 63, true},
                          {LatticePolytope::rectangle(1, 2), 298, 2047, false},
                          {LatticePolytope::triangle(2), 261, 1833, false}};
    for (const auto& r : rows) {
        auto X = normal_fan(r.P);
        auto pt = build_pt0(r.P, X);
        std::string why;
        CHECK_MESSAGE(pt.fan.check_fan(&why), why);
        CHECK(pt.fan.is_complete());
        CHECK(pt.fan.maximal().size() == r.maximal);
        CHECK(pt.fan.size() == r.total);
        // generic sampled types are types of maximal cones; every one is hit on the small cases
        auto walked = maximal_types(pt);
        CHECK(walked.size() == r.maximal);
        auto sampled = sampled_generic_types(r.P, X, r.exact ? 4000 : 20000);
        for (const auto& t : sampled) CHECK(walked.count(t) == 1);
        if (r.exact) CHECK(sampled.size() == walked.size());
    }
}

TEST_CASE("type is constant on relative interiors") {
    auto P = LatticePolytope::unit_square();
    auto X = normal_fan(P);
    auto pt = build_pt0(P, X);
    size_t bad = 0;
    for (size_t i = 0; i < pt.fan.size(); ++i) {
        const auto& s = pt.fan.cone(i);
        QVec r = s.relint_point();
        for (const auto& ray : s.rays())
            for (int e : {1, 100, 10000}) {
                QVec z = to_q(ray) + scale(r, Rat(1, e));
                if (!(cone_type(P, X, P.from_n(z)) == pt.types[i])) ++bad;
            }
    }
    CHECK(bad == 0);
    std::set<ConeType> all(pt.types.begin(), pt.types.end());
    CHECK(all.size() == pt.fan.size());
}

TEST_CASE("superimposed curve and its main component") {
    auto P = LatticePolytope::unit_square();
    auto X = normal_fan(P);
    QVec phi = qvec({0, 0, 0, 1});
    auto G = pre_expansion(P, X, phi);
    auto direct = superimpose(dual_tropical_curve(P, phi), X, G.origin, P, phi);
    CHECK(direct.vertices.size() == G.vertices.size());
    CHECK(direct.segments.size() == G.segments.size());
    CHECK(direct.rays.size() == G.rays.size());
    auto E = extended_main_component(G);
    size_t bounded = 0, unbounded = 0;
    for (const auto& a : E.arms) {
        if (a.reach) {
            ++bounded;
            CHECK(a.dir == ivec({-1, -1}));
            CHECK(*a.reach == 1);
        } else {
            ++unbounded;
        }
    }
    CHECK(bounded == 1);
    CHECK(unbounded == 4);
    CHECK(E.contains(G.origin));
}

TEST_CASE("fixed strata") {
    auto P = LatticePolytope::unit_square();
    auto X = normal_fan(P);
    auto pt = build_pt0(P, X);
    size_t fixed_max = 0, nonfixed = 0;
    for (size_t i = 0; i < pt.fan.size(); ++i) {
        bool f = is_fixed_stratum(pre_expansion(P, X, P.from_n(pt.fan.cone(i).relint_point())));
        nonfixed += !f;
        if (pt.fan.cone(i).dim() == pt.fan.ambient()) fixed_max += f;
    }
    CHECK(fixed_max == 20);
    CHECK(nonfixed == 39);
    CHECK_FALSE(is_fixed_stratum(pre_expansion(P, X, QVec(4, Rat(0)))));
}

TEST_CASE("evaluation maps") {
    auto R = LatticePolytope::rectangle(1, 2);
    auto pt = build_pt0(R, normal_fan(R));
    size_t long_faces = 0;
    for (size_t f = 0; f < R.edges().size(); ++f) {
        auto ev = ev_map(R, f);
        CHECK(ev.lattice_surjective());
        if (R.edges()[f].size() < 3) continue;
        ++long_faces;
        Fan pk = build_xdagger_fan(LatticePolytope::segment(static_cast<long>(R.edges()[f].size()) - 1));
        size_t outside = 0;
        for (const auto& c : pt.fan.cones())
            if (!pk.index_of(c.image(ev.matrix))) ++outside;
        CHECK(outside == 46);
    }
    CHECK(long_faces == 2);
}

TEST_CASE("weighted types") {
    auto P = LatticePolytope::unit_square();
    auto X = normal_fan(P);
    auto pt = build_pt0(P, X);
    std::vector<size_t> expect{63, 789, 6179};
    for (unsigned n = 0; n < 3; ++n) {
        auto w = weighted_types(P, X, pt, n);
        CHECK(w.size() == expect[n]);
        Int formula = 0;
        for (size_t i = 0; i < pt.fan.size(); ++i) {
            auto G = pre_expansion(P, X, P.from_n(pt.fan.cone(i).relint_point()));
            size_t V = 0;
            for (bool b : G.dual_vertex) V += b;
            formula += placement_count(G.segments.size() + G.rays.size(), V, n);
        }
        CHECK(formula == Int(expect[n]));
        for (const auto& t : w) {
            unsigned total = 0;
            for (const auto& m : t.marks) total += m.weight;
            CHECK(total == n);
        }
    }
    CHECK(placement_count(3, 2, 0) == 1);
    CHECK(placement_count(3, 2, 1) == 5);
    // weight 2 on a single edge: one point of weight 2 or two ordered points
    CHECK(placement_count(1, 0, 2) == 2);
}

TEST_CASE("local fan matches the global star") {
    auto P = LatticePolytope::unit_square();
    auto X = normal_fan(P);
    auto pt = build_pt0(P, X);
    std::set<std::string> global;
    for (const auto& c : pt.fan.cones()) global.insert(c.key());
    for (size_t i : pt.fan.of_dim(pt.fan.lineality_dim() + 1)) {
        auto local = local_pt0(P, X, P.from_n(pt.fan.cone(i).relint_point()));
        std::set<std::string> lk;
        for (const auto& c : local.fan.cones()) lk.insert(c.key());
        for (const auto& k : lk) CHECK(global.count(k) == 1);
        for (auto j : pt.fan.star_of(i)) CHECK(lk.count(pt.fan.cone(j).key()) == 1);
    }
}
