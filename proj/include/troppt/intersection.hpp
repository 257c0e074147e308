#pragma once

#include <memory>

#include "troppt/loglinear.hpp"

namespace troppt {

using FanPtr = std::shared_ptr<const Fan>;

struct NonGenericDisplacement : std::runtime_error {
    NonGenericDisplacement() : std::runtime_error("displacement not generic") {}
};

// Function on the codim-p cones of a fan; absent entries are zero.
struct MinkowskiWeight {
    FanPtr fan;
    size_t codim = 0;
    std::map<size_t, Rat> entries;
    Rat at(size_t cone) const;
    bool operator==(const MinkowskiWeight& o) const;
};

// sum of lambda_tau [V(tau)] over cones of one dimension
struct ChowCycle {
    FanPtr fan;
    size_t cone_dim = 0;
    std::map<size_t, Rat> terms;
    Rat degree() const;  // only for cycles on maximal cones
    bool operator==(const ChowCycle& o) const;
};

struct Displacement {
    QVec v;
    // number of strict interiority checks passed while this vector was in use
    std::shared_ptr<size_t> verified = std::make_shared<size_t>(0);
};
// large random integers from a seeded stream, with gcd 1
Displacement generic_displacement(size_t n, uint64_t seed);

// (rho, tau, v) good iff rho ∩ (tau + v) is nonempty; throws when v sits on a boundary
bool good_triple(const Cone& rho, const Cone& tau, const Displacement& v);
// retries f with fresh seeded displacements while it reports non-genericity
template <class F>
auto with_generic(size_t n, uint64_t seed, F&& f) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        try {
            return f(generic_displacement(n, seed + 1000003ULL * static_cast<uint64_t>(attempt)));
        } catch (const NonGenericDisplacement&) {
        }
    }
    throw NonGenericDisplacement();
}

// [N : N_a + N_b], nullopt when the sum has lower rank
std::optional<Int> sum_index(const Cone& a, const Cone& b);

bool check_balancing(const MinkowskiWeight& w, std::string* why = nullptr);
MinkowskiWeight fundamental_class(FanPtr fan);
ChowCycle orbit_closure(FanPtr fan, size_t cone);
MinkowskiWeight cup(const MinkowskiWeight& a, const MinkowskiWeight& b, const Displacement& v);
ChowCycle cap(const MinkowskiWeight& w, const ChowCycle& B, const Displacement& v);
// f: source lattice -> fan lattice of w, rationally surjective and a fan morphism
MinkowskiWeight pullback_weight(const LatticeMap& f, FanPtr source, const MinkowskiWeight& w);

// [H] on the fan of P^m and its powers
MinkowskiWeight projective_hyperplane(FanPtr pm);
MinkowskiWeight projective_hyperplane_power(FanPtr pm, size_t k);
// codim-1 weight: 1 on the codim-1 cones whose interior functions are minimal at exactly two points
MinkowskiWeight hyperplane_pullback(const LatticePolytope& P, FanPtr pt0);
// [pt] on the fan of X
MinkowskiWeight point_class(FanPtr x);

// fan of the universal family: PT0 x_{P-dagger} X-dagger pulled back along the fiber map to X
struct UniversalFamily {
    FanPtr fan;
    FanPtr x_fan;
    IMat kernel;            // rows: basis in N + N coordinates
    LatticeMap to_pt0;      // first factor
    LatticeMap to_xdagger;  // second factor
    LatticeMap to_x;        // second minus first, in fiber_basis coordinates
    QVec coords(const QVec& first, const QVec& second) const;  // N x N point -> lattice coordinates
};
UniversalFamily build_universal_family(const LatticePolytope& P, const ToricSurfaceFan& X, FanPtr pt0,
                                       const Budget& budget = Budget{});

// first Chern class of the universal ideal sheaf as a codim-1 weight
MinkowskiWeight universal_curve_weight(const LatticePolytope& P, const UniversalFamily& U, FanPtr pt0);
// flat pullback of a cycle along the projection to PT0
ChowCycle flat_pullback(const UniversalFamily& U, FanPtr pt0, const ChowCycle& B);
// pushforward along the projection to PT0 (relative dimension two)
ChowCycle pushforward(const UniversalFamily& U, FanPtr pt0, const ChowCycle& C);

struct Tau0Result {
    ChowCycle cycle;
    MinkowskiWeight cup_weight;  // c1 cup pi_X^*[pt] on the universal family
};
// pushforward of (c1 cup pi_X^*[pt]) cap flat pullback of B, computed on the universal family
Tau0Result tau0_direct(const LatticePolytope& P, const UniversalFamily& U, FanPtr pt0, const ChowCycle& B,
                       const Displacement& v_cup, const Displacement& v_cap);

// degree of c^k cap V(sigma) for sigma of codim k
Rat point_insertion_power(const LatticePolytope& P, FanPtr pt0, size_t sigma, size_t k, const Displacement& v);

// weight d! on the two rays spanned by the single-support-point line of the P_d fan
MinkowskiWeight boundary_point_weight(unsigned d, FanPtr pd);

// lattice-normalized volume of conv(points) in Z^k, 0 when not full-dimensional
Int normalized_volume(const IMat& points, size_t k);

struct SinglePointIntegral {
    Rat value;
    size_t exponent = 0;  // number of point insertions
    Int weight_product;   // product of the boundary weights
    Int transversality;   // lattice index of the three linear supports
    Int linear_degree;    // degree of the common linear support in P^m
    Rat formula;          // (d!)^3
};
// lazy route: each boundary pullback is a weighted linear subspace
SinglePointIntegral integral_single_point(unsigned d, const Budget& budget = Budget{});
// same computation without the degree precondition
SinglePointIntegral single_point_lazy(unsigned d, const Budget& budget = Budget{});
// global route on the full PT0 fan (small d only)
Rat integral_single_point_global(unsigned d, const Displacement& v_cup, const Displacement& v_cap,
                                 const Budget& budget = Budget{});
// exponent of the point insertion in the integral
size_t single_point_exponent(unsigned d);

}  // namespace troppt
