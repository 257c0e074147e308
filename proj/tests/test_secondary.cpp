#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "troppt/secondary.hpp"

using namespace troppt;

namespace {

QVec lift_at(const LatticePolytope& P, std::initializer_list<std::pair<Point, long>> vals) {
    QVec phi(P.size(), Rat(0));
    for (const auto& [p, v] : vals) phi[*P.find(p)] = v;
    return phi;
}

std::vector<std::vector<size_t>> cells_of(const LatticePolytope& P, std::initializer_list<std::vector<Point>> cs) {
    std::vector<std::vector<size_t>> out;
    for (const auto& c : cs) {
        std::vector<size_t> idx;
        for (const auto& p : c) idx.push_back(*P.find(p));
        std::sort(idx.begin(), idx.end());
        out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("induced subdivisions") {
    auto sq = LatticePolytope::unit_square();
    CHECK(induced_subdivision(sq, QVec(4, Rat(0))).cells.size() == 1);
    auto split = induced_subdivision(sq, lift_at(sq, {{{1, 1}, 1}}));
    CHECK(split.cells == cells_of(sq, {{{0, 0}, {1, 0}, {0, 1}}, {{1, 0}, {0, 1}, {1, 1}}}));
    auto seg = LatticePolytope::segment(2);
    CHECK(induced_subdivision(seg, qvec({0, -1, 0})).cells == cells_of(seg, {{{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}}));
    CHECK(induced_subdivision(seg, qvec({0, 1, 0})).cells == cells_of(seg, {{{0, 0}, {2, 0}}}));
}

TEST_CASE("secondary cones") {
    auto sq = LatticePolytope::unit_square();
    Cone triv = secondary_cone(sq, induced_subdivision(sq, QVec(4, Rat(0))));
    CHECK(triv.dim() == 2);
    CHECK(triv.lineality_dim() == 2);
    QVec phi = lift_at(sq, {{{1, 1}, 1}});
    auto S = induced_subdivision(sq, phi);
    Cone c = secondary_cone(sq, S);
    CHECK(c.dim() == 3);
    CHECK(c.facets().size() == 1);
    // single folding inequality phi(0,0) + phi(1,1) >= phi(1,0) + phi(0,1)
    IVec coeff(4, Int(0));
    coeff[*sq.find({0, 0})] = 1;
    coeff[*sq.find({1, 1})] = 1;
    coeff[*sq.find({1, 0})] = -1;
    coeff[*sq.find({0, 1})] = -1;
    IVec form = sq.form_on_n(coeff);
    CHECK(c.facets()[0] == primitive(form));
    CHECK(c.in_relint(sq.to_n(phi)));
}

TEST_CASE("regular subdivision enumeration") {
    auto sq = LatticePolytope::unit_square();
    auto s = enumerate_regular_subdivisions(sq);
    CHECK(s.fan.size() == 3);
    CHECK(s.maximal.size() == 2);
    auto seg = enumerate_regular_subdivisions(LatticePolytope::segment(2));
    CHECK(seg.maximal.size() == 2);
    CHECK(seg.fan.size() == 3);
    SUBCASE("rectangle against brute force over lifts") {
        auto P = LatticePolytope::rectangle(1, 2);
        auto e = enumerate_regular_subdivisions(P);
        std::set<Subdivision> walked(e.subdivision.begin(), e.subdivision.end());
        auto brute = brute_force_subdivisions(P, 0, 5);
        std::set<Subdivision> bf(brute.begin(), brute.end());
        CHECK(walked == bf);
        CHECK(e.fan.size() == 45);
        CHECK(e.maximal.size() == 14);
    }
    SUBCASE("budget guard") {
        Budget b;
        b.max_points = 3;
        CHECK_THROWS_WITH(enumerate_regular_subdivisions(sq, b), "enumeration budget exceeded");
    }
}

TEST_CASE("secondary cones tile") {
    std::mt19937_64 rng(11);
    for (const auto& P : {LatticePolytope::unit_square(), LatticePolytope::triangle(2), LatticePolytope::rectangle(1, 2)}) {
        auto sec = enumerate_regular_subdivisions(P);
        for (int it = 0; it < 20; ++it) {
            QVec phi(P.size());
            for (auto& x : phi) x = Rat(static_cast<long>(rng() % 2000001) - 1000000);
            QVec x = P.to_n(phi);
            size_t hits = 0;
            for (auto i : sec.maximal) hits += sec.fan.cone(i).contains(x);
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("dual tropical curves") {
    auto sq = LatticePolytope::unit_square();
    auto g0 = dual_tropical_curve(sq, QVec(4, Rat(0)));
    REQUIRE(g0.vertices.size() == 1);
    CHECK(g0.vertices[0] == QPoint{Rat(0), Rat(0)});
    CHECK(g0.rays.size() == 4);
    for (const auto& r : g0.rays) CHECK(r.weight == 1);
    auto g1 = dual_tropical_curve(sq, lift_at(sq, {{{1, 1}, 1}}));
    REQUIRE(g1.vertices.size() == 2);
    REQUIRE(g1.edges.size() == 1);
    IVec d = g1.edges[0].dir;
    CHECK((d == ivec({1, 1}) || d == ivec({-1, -1})));
    CHECK(g1.edges[0].weight == 1);
    CHECK(g1.balanced());
    SUBCASE("translation by linear functions") {
        QVec phi = lift_at(sq, {{{1, 1}, 1}, {{1, 0}, 3}});
        auto g = dual_tropical_curve(sq, phi);
        QVec shifted = phi;
        for (size_t i = 0; i < sq.size(); ++i) shifted[i] += Rat(2 * sq.point(i)[0] - 5 * sq.point(i)[1]);
        auto h = dual_tropical_curve(sq, shifted);
        REQUIRE(g.vertices.size() == h.vertices.size());
        std::set<std::pair<Rat, Rat>> a, b;
        for (const auto& v : g.vertices) a.insert({v[0] - 2, v[1] + 5});
        for (const auto& v : h.vertices) b.insert({v[0], v[1]});
        CHECK(a == b);
    }
}

TEST_CASE("duality round trip and balancing on random lifts") {
    std::mt19937_64 rng(5);
    std::vector<LatticePolytope> polys{LatticePolytope::unit_square(), LatticePolytope::triangle(3),
                                       LatticePolytope::rectangle(2, 2), LatticePolytope::rectangle(1, 3)};
    for (int it = 0; it < 200; ++it) {
        const auto& P = polys[it % polys.size()];
        QVec phi(P.size());
        for (auto& x : phi) x = Rat(static_cast<long>(rng() % 11) - 5);
        auto g = dual_tropical_curve(P, phi);
        CHECK(g.balanced());
        std::set<std::vector<size_t>> cells;
        for (const auto& v : g.vertices) cells.insert(argmin_set(P, phi, v));
        auto S = induced_subdivision(P, phi);
        CHECK(std::vector<std::vector<size_t>>(cells.begin(), cells.end()) == S.cells);
        // edge weight equals the lattice length of the dual wall
        for (const auto& e : g.edges) {
            const auto& A = g.vertex_cells[e.a];
            const auto& B = g.vertex_cells[e.b];
            std::vector<size_t> wall;
            std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(wall));
            REQUIRE(wall.size() >= 2);
            long gx = 0;
            for (size_t i = 1; i < wall.size(); ++i) {
                long dx = P.point(wall[i])[0] - P.point(wall[0])[0];
                long dy = P.point(wall[i])[1] - P.point(wall[0])[1];
                gx = std::max(gx, std::gcd(std::labs(dx), std::labs(dy)));
            }
            CHECK(e.weight == gx);
        }
        for (const auto& w : walls(P, S)) {
            long dx = P.point(w.points.back())[0] - P.point(w.points.front())[0];
            long dy = P.point(w.points.back())[1] - P.point(w.points.front())[1];
            CHECK(w.lattice_length == std::gcd(std::labs(dx), std::labs(dy)));
        }
    }
}

TEST_CASE("projective fans") {
    CHECK(projective_fan(1).of_dim(1).size() == 2);
    CHECK(projective_fan(1).is_complete());
    Fan p2 = projective_fan(2);
    CHECK(p2.maximal().size() == 3);
    CHECK(p2.is_complete());
    Fan p3 = projective_fan(3);
    CHECK(p3.maximal().size() == 4);
    auto sq = LatticePolytope::unit_square();
    Cone diag = delta_cone(3, {*sq.find({0, 0}), *sq.find({1, 1})});
    CHECK(diag.dim() == 2);
    CHECK(p3.index_of(diag).has_value());
}

TEST_CASE("invalid subdivisions are rejected") {
    auto sq = LatticePolytope::unit_square();
    Subdivision bad;
    bad.cells = {{0, 1, 2}};
    CHECK_THROWS_WITH(secondary_cone(sq, bad), "invalid cell complex");
}
