#include <doctest.h>

#include "troppt/intersection.hpp"

using namespace troppt;

namespace {

FanPtr share(Fan f) { return std::make_shared<const Fan>(std::move(f)); }

Fan p1_squared() {
    std::vector<Cone> q;
    for (long a : {1, -1})
        for (long b : {1, -1}) q.push_back(Cone::from_generators(2, {ivec({a, 0}), ivec({0, b})}));
    return Fan::from_cones(2, q);
}

Rat total(const MinkowskiWeight& w) {
    Rat s = 0;
    for (const auto& [k, v] : w.entries) s += v;
    return s;
}

}  // namespace

TEST_CASE("good triples") {
    Cone quad = Cone::from_generators(2, {ivec({1, 0}), ivec({0, 1})});
    Cone zero = Cone::zero(2);
    CHECK(good_triple(quad, zero, Displacement{qvec({3, 5})}));
    CHECK_FALSE(good_triple(quad, zero, Displacement{qvec({-3, 5})}));
    CHECK_THROWS_AS(good_triple(quad, zero, Displacement{qvec({0, 5})}), NonGenericDisplacement);
    Cone r1 = Cone::from_generators(2, {ivec({1, 0})});
    Cone r2 = Cone::from_generators(2, {ivec({0, 1})});
    // rho meets tau + v iff v lies in rho - tau
    CHECK(good_triple(r1, r2, Displacement{qvec({2, -7})}));
    CHECK_FALSE(good_triple(r1, r2, Displacement{qvec({2, 7})}));
    CHECK_FALSE(good_triple(r1, r1, Displacement{qvec({2, 7})}));
    CHECK_THROWS_AS(good_triple(r1, r1, Displacement{qvec({2, 0})}), NonGenericDisplacement);
}

TEST_CASE("balancing on the projective plane") {
    auto p2 = share(projective_fan(2));
    auto H = projective_hyperplane(p2);
    CHECK(check_balancing(H));
    MinkowskiWeight one_ray{p2, 1, {}};
    one_ray.entries[p2->of_dim(1).front()] = 1;
    std::string why;
    CHECK_FALSE(check_balancing(one_ray, &why));
    CHECK_FALSE(why.empty());
    CHECK(check_balancing(fundamental_class(p2)));
}

TEST_CASE("cup products on projective spaces") {
    auto p2 = share(projective_fan(2));
    auto H = projective_hyperplane(p2);
    auto v = generic_displacement(2, 17);
    CHECK(cup(fundamental_class(p2), H, v) == H);
    auto H2 = cup(H, H, v);
    CHECK(H2.codim == 2);
    CHECK(total(H2) == 1);
    CHECK(H2 == projective_hyperplane_power(p2, 2));
    auto p3 = share(projective_fan(3));
    CHECK(total(projective_hyperplane_power(p3, 3)) == 1);
    CHECK(check_balancing(projective_hyperplane_power(p3, 2)));
    auto pt = point_class(p2);
    CHECK(total(pt) == 1);
    CHECK(orbit_closure(p2, p2->maximal().front()).degree() == 1);
    CHECK(cap(H, orbit_closure(p2, p2->require(Cone::zero(2))), v).cone_dim == 1);
}

TEST_CASE("results do not depend on the displacement") {
    auto p2 = share(projective_fan(2));
    auto H = projective_hyperplane(p2);
    auto ref = cup(H, H, generic_displacement(2, 1));
    for (uint64_t s = 2; s < 12; ++s) CHECK(with_generic(2, s, [&](const Displacement& v) { return cup(H, H, v); }) == ref);
}

TEST_CASE("pullbacks") {
    auto p2 = share(projective_fan(2));
    auto H = projective_hyperplane(p2);
    CHECK(pullback_weight(LatticeMap::identity(2), p2, H) == H);
    SUBCASE("fiber class of the projection") {
        auto sq = share(p1_squared());
        auto p1 = share(projective_fan(1));
        auto w = pullback_weight(LatticeMap(2, 1, {ivec({1, 0})}), sq, point_class(p1));
        CHECK(w.codim == 1);
        CHECK(check_balancing(w));
        for (long b : {1, -1}) CHECK(w.at(sq->require(Cone::from_generators(2, {ivec({0, b})}))) == 1);
        for (long a : {1, -1}) CHECK(w.at(sq->require(Cone::from_generators(2, {ivec({a, 0})}))) == 0);
    }
    SUBCASE("pullback to a refinement is a ring map") {
        auto fine = share(common_refinement(projective_fan(2), p1_squared()));
        auto f = LatticeMap::identity(2);
        auto pH = pullback_weight(f, fine, H);
        CHECK(check_balancing(pH));
        auto v = generic_displacement(2, 29);
        auto lhs = cup(pH, pH, v);
        auto rhs = pullback_weight(f, fine, cup(H, H, v));
        CHECK(lhs == rhs);
        CHECK(total(lhs) == 1);
    }
    SUBCASE("maps that are not fan morphisms are rejected") {
        auto sq = share(p1_squared());
        CHECK_THROWS_WITH(pullback_weight(LatticeMap::identity(2), sq, H), "not a fan morphism");
    }
}

TEST_CASE("hyperplane class on the pt0 fan") {
    for (const auto& P : {LatticePolytope::triangle(1), LatticePolytope::unit_square()}) {
        auto X = normal_fan(P);
        auto pt = build_pt0(P, X);
        auto fan = share(pt.fan);
        auto c = hyperplane_pullback(P, fan);
        CHECK(check_balancing(c));
        for (size_t i = 0; i < fan->size(); ++i) {
            if (fan->cone(i).codim() != 1) continue;
            bool two = pt.types[i].min_set.size() == 2;
            CHECK(c.at(i) == (two ? 1 : 0));
        }
        size_t m = P.m();
        auto top = with_generic(m, 5, [&](const Displacement& v) {
            MinkowskiWeight a = c;
            for (size_t i = 1; i < m; ++i) a = cup(a, c, v);
            return a;
        });
        CHECK(total(top) == 1);
        auto v = generic_displacement(m, 41);
        for (size_t i = 0; i < fan->size(); ++i) {
            const auto& s = fan->cone(i);
            if (s.codim() == 0) CHECK(point_insertion_power(P, fan, i, 0, v) == 1);
            if (s.codim() == 1) CHECK(point_insertion_power(P, fan, i, 1, v) == c.at(i));
        }
    }
}

TEST_CASE("boundary point weights") {
    Int fact = 1;
    for (unsigned d = 1; d <= 5; ++d) {
        fact *= d;
        auto pd = share(build_xdagger_fan(LatticePolytope::segment(d)));
        auto w = boundary_point_weight(d, pd);
        CHECK(check_balancing(w));
        CHECK(w.entries.size() == 2);
        for (const auto& [k, val] : w.entries) CHECK(val == Rat(fact));
    }
    CHECK_THROWS_WITH(boundary_point_weight(0, share(projective_fan(1))), "invalid d");
}

TEST_CASE("normalized volumes") {
    CHECK(normalized_volume({ivec({0, 0}), ivec({1, 0}), ivec({0, 1})}, 2) == 1);
    CHECK(normalized_volume({ivec({0, 0}), ivec({1, 0}), ivec({0, 1}), ivec({1, 1})}, 2) == 2);
    CHECK(normalized_volume({ivec({0, 0}), ivec({2, 0}), ivec({0, 2})}, 2) == 4);
    CHECK(normalized_volume({ivec({0, 0}), ivec({1, 1}), ivec({2, 2})}, 2) == 0);
    CHECK(normalized_volume({ivec({0, 0, 0}), ivec({1, 0, 0}), ivec({0, 1, 0}), ivec({0, 0, 1})}, 3) == 1);
}

TEST_CASE("single point integral") {
    CHECK(single_point_exponent(1) == 2);
    auto r1 = integral_single_point(1);
    CHECK(r1.value == 1);
    CHECK(r1.formula == 1);
    CHECK_THROWS_WITH(integral_single_point(0), "invalid d");
    CHECK_THROWS_WITH(integral_single_point(2), "invalid d");
    CHECK_THROWS_WITH(integral_single_point(3), "invalid d");
    auto l2 = single_point_lazy(2);
    CHECK(l2.value == 64);
    auto m2 = LatticePolytope::triangle(2).m();
    Rat g2 = with_generic(m2, 3, [&](const Displacement& a) {
        return with_generic(m2, 53, [&](const Displacement& b) { return integral_single_point_global(2, a, b); });
    });
    CHECK(g2 == l2.value);
    auto m1 = LatticePolytope::triangle(1).m();
    Rat g1 = with_generic(m1, 3, [&](const Displacement& a) {
        return with_generic(m1, 53, [&](const Displacement& b) { return integral_single_point_global(1, a, b); });
    });
    CHECK(g1 == 1);
}
