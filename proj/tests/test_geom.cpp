#include <doctest.h>

#include <random>
#include <set>

#include "troppt/loglinear.hpp"

using namespace troppt;

namespace {

Fan p1_fan() { return projective_fan(1); }

Fan quadrants_from_halfplanes(bool vertical) {
    IVec a = vertical ? ivec({1, 0}) : ivec({0, 1});
    IVec b = vertical ? ivec({0, 1}) : ivec({1, 0});
    // two half-planes sharing the line through b
    return Fan::from_cones(2, {Cone::from_generators(2, {a}, {b}), Cone::from_generators(2, {-a}, {b})});
}

bool pairwise_faces(const Fan& F) {
    for (size_t i = 0; i < F.size(); ++i)
        for (size_t j = i + 1; j < F.size(); ++j) {
            Cone c = F.cone(i).intersect(F.cone(j));
            if (!c.is_face_of(F.cone(i)) || !c.is_face_of(F.cone(j))) return false;
        }
    return true;
}

std::set<std::string> keys(const Fan& F) {
    std::set<std::string> s;
    for (const auto& c : F.cones()) s.insert(c.key());
    return s;
}

}  // namespace

TEST_CASE("lattice index of sublattices") {
    CHECK(lattice_index(2, {ivec({1, 0}), ivec({0, 1})}) == Int(1));
    CHECK(lattice_index(2, {ivec({2, 0}), ivec({0, 1})}) == Int(2));
    CHECK_FALSE(lattice_index(2, {ivec({1, 0})}).has_value());
    CHECK(lattice_index(3, {ivec({1, 2, 3}), ivec({0, 4, 5}), ivec({0, 0, 6})}) == Int(24));
    CHECK_THROWS_WITH(lattice_index(2, {ivec({1, 0, 0})}), "rank mismatch");
}

TEST_CASE("index is multiplicative along chains") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 40; ++it) {
        size_t n = 1 + rng() % 5;
        // random full-rank chain L2 ⊂ L1 ⊂ Z^n given by integer matrices A, B: L1 = A Z^n, L2 = A B Z^n
        auto random_full = [&]() {
            for (;;) {
                IMat m(n, IVec(n));
                for (auto& r : m)
                    for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
                if (rank(m) == n) return m;
            }
        };
        IMat A = random_full(), B = random_full();
        IMat AB = compose(A, B);
        auto i1 = lattice_index(n, transpose(A));
        auto i12 = lattice_index(n, transpose(B));
        auto i2 = lattice_index(n, transpose(AB));
        REQUIRE(i1);
        REQUIRE(i12);
        REQUIRE(i2);
        CHECK(*i2 == *i1 * *i12);
    }
}

TEST_CASE("cone membership") {
    Cone q = Cone::from_generators(2, {ivec({1, 0}), ivec({0, 1})});
    CHECK(q.contains(qvec({2, 3})));
    CHECK_FALSE(q.contains(qvec({-1, 0})));
    Cone line = Cone::from_generators(2, {}, {ivec({1, 1})});
    CHECK(line.contains(qvec({-2, -2})));
    CHECK_FALSE(line.contains(qvec({1, 0})));
    CHECK(line.dim() == 1);
}

TEST_CASE("cones store primitive irredundant rays") {
    Cone c = Cone::from_generators(2, {ivec({2, 0}), ivec({0, 3}), ivec({1, 1})});
    CHECK(c.rays().size() == 2);
    for (const auto& r : c.rays()) CHECK(gcd_of(r) == 1);
}

TEST_CASE("common refinement") {
    Fan p1 = p1_fan();
    CHECK(keys(common_refinement(p1, p1)) == keys(p1));
    Fan triv = Fan::from_cones(2, {Cone::whole(2)});
    Fan p2 = projective_fan(2);
    CHECK(keys(common_refinement(triv, p2)) == keys(p2));
    Fan q = common_refinement(quadrants_from_halfplanes(true), quadrants_from_halfplanes(false));
    CHECK(q.maximal().size() == 4);
    CHECK(q.of_dim(1).size() == 4);
    CHECK(q.is_complete());
    SUBCASE("commutative and idempotent") {
        Fan a = projective_fan(2), b = q;
        CHECK(keys(common_refinement(a, b)) == keys(common_refinement(b, a)));
        Fan ab = common_refinement(a, b);
        CHECK(keys(common_refinement(ab, ab)) == keys(ab));
        CHECK(pairwise_faces(ab));
    }
}

TEST_CASE("pullback of fan structure") {
    Fan triv2 = Fan::from_cones(2, {Cone::whole(2)});
    Fan p2 = projective_fan(2);
    CHECK(keys(pullback_fan_structure(LatticeMap::identity(2), Fan::from_cones(2, {Cone::whole(2)}), p2)) ==
          keys(p2));
    CHECK(keys(pullback_fan_structure(LatticeMap::identity(2), p2, triv2)) == keys(p2));
    LatticeMap proj(2, 1, {ivec({1, 0})});
    Fan halves = pullback_fan_structure(proj, p1_fan(), triv2);
    CHECK(halves.maximal().size() == 2);
    CHECK(halves.lineality_dim() == 1);
    CHECK(keys(halves) == keys(quadrants_from_halfplanes(true)));
}

TEST_CASE("fiber products of fans") {
    Fan p2 = projective_fan(2);
    SUBCASE("with the identity") {
        auto fp = fiber_product_fans(LatticeMap::identity(2), LatticeMap::identity(2), p2, p2, p2);
        CHECK(fp.fan.size() == p2.size());
        CHECK(fp.fan.maximal().size() == 3);
    }
    SUBCASE("over the zero lattice") {
        Fan p1 = p1_fan();
        Fan zero = Fan::from_cones(0, {Cone::zero(0)});
        auto fp = fiber_product_fans(LatticeMap(2, 0, {}), LatticeMap(1, 0, {}), p2, p1, zero);
        CHECK(fp.fan.ambient() == 3);
        CHECK(fp.fan.maximal().size() == 6);
        CHECK(fp.fan.size() == p2.size() * p1.size());
    }
    SUBCASE("unit square family against pairwise enumeration") {
        LatticePolytope P = LatticePolytope::unit_square();
        ToricSurfaceFan X = normal_fan(P);
        Fan pt0 = build_pt0_fan(P, X);
        auto sec = enumerate_regular_subdivisions(P);
        Fan xd = common_refinement(projective_fan(P.m()), sec.fan);
        IMat D = P.dagger_projection();
        std::vector<Cone> imgs;
        for (auto i : sec.fan.maximal()) imgs.push_back(sec.fan.cone(i).image(D));
        Fan pdag = Fan::from_cones(D.size(), imgs);
        LatticeMap f(P.m(), D.size(), D);
        auto fp = fiber_product_fans(f, f, pt0, xd, pdag);
        CHECK(fp.fan.ambient() == 5);
        CHECK(fp.fan.check_fan());
        std::set<std::string> brute;
        IMat KT = transpose(fp.kernel);
        for (const auto& s : pt0.cones())
            for (const auto& t : xd.cones()) {
                Cone c = s.product(t).preimage(KT);
                brute.insert(c.key());
            }
        CHECK(brute == keys(fp.fan));
        MESSAGE("fiber product cones: " << fp.fan.size());
    }
    SUBCASE("incompatible maps are rejected") {
        LatticeMap proj(2, 1, {ivec({1, 0})});
        CHECK_THROWS_WITH(fiber_product_fans(proj, LatticeMap::identity(1), p2, p1_fan(), p1_fan()),
                          "not combinatorially compatible");
    }
}

TEST_CASE("stars") {
    Fan p2 = projective_fan(2);
    size_t zero = p2.require(Cone::zero(2));
    CHECK(p2.star_of(zero).size() == p2.size());
    for (auto i : p2.maximal()) CHECK(p2.star_of(i) == std::vector<size_t>{i});
    for (auto r : p2.of_dim(1)) CHECK(p2.star_of(r).size() == 3);
}

TEST_CASE("produced fans are fans") {
    for (const auto& P : {LatticePolytope::unit_square(), LatticePolytope::triangle(2), LatticePolytope::rectangle(1, 2)}) {
        auto sec = enumerate_regular_subdivisions(P);
        CHECK(pairwise_faces(sec.fan));
        Fan xd = build_xdagger_fan(P);
        CHECK(xd.check_fan());
        CHECK(xd.is_complete());
    }
}

TEST_CASE("rationals stay in lowest terms") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        Rat a(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 97));
        a.canonicalize();
        Rat b(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 89));
        b.canonicalize();
        CHECK(lowest_terms(a + b));
        CHECK(lowest_terms(a * b));
        CHECK(lowest_terms(a - b));
        if (b != 0) CHECK(lowest_terms(a / b));
        CHECK(parse_rat(to_string(a)) == a);
    }
}
