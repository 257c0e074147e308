#pragma once

#include "troppt/secondary.hpp"

namespace troppt {

struct ToricSurfaceFan {
    // complete fan in Z^2 with rays the primitive inner normals of hull edges;
    // for a segment, the fan {+1, -1} of P^1 in the lattice coordinate along it
    Fan fan;
    LatticePolytope polytope;
};

ToricSurfaceFan normal_fan(const LatticePolytope& P);
// rows: N coordinates of the basis of N_X in which the fan above is written
IMat fiber_basis(const LatticePolytope& P);

// common refinement of the P^m fan and the secondary fan lifted to N
Fan build_xdagger_fan(const LatticePolytope& P, const Budget& budget = Budget{});

// Functions phi below are values on the points of P unless stated otherwise.

// vertex of the dual curve for a 2-cell, as a rational 2 x m matrix acting on N coordinates
QMat vertex_map(const LatticePolytope& P, const std::vector<size_t>& cell);

// Combinatorial type of the pre-expansion curve of phi: min-set at the origin,
// induced subdivision, and the cone of the surface fan holding each dual vertex.
struct ConeType {
    std::vector<size_t> min_set;
    Subdivision subdivision;
    std::vector<size_t> vertex_sector;
    bool operator==(const ConeType& o) const {
        return min_set == o.min_set && subdivision == o.subdivision && vertex_sector == o.vertex_sector;
    }
    bool operator<(const ConeType& o) const;
    std::string to_string() const;
};
ConeType cone_type(const LatticePolytope& P, const ToricSurfaceFan& X, const QVec& phi);

struct PT0Fan {
    Fan fan;
    std::vector<ConeType> types;  // per cone, from its relative interior point
};
// global fan; for a one-dimensional polytope this is the X-dagger fan (the P_k fan)
PT0Fan build_pt0(const LatticePolytope& P, const ToricSurfaceFan& X, const Budget& budget = Budget{});
Fan build_pt0_fan(const LatticePolytope& P, const ToricSurfaceFan& X, const Budget& budget = Budget{});
// closed star of the cone holding seed in its relative interior
PT0Fan local_pt0(const LatticePolytope& P, const ToricSurfaceFan& X, const QVec& seed,
                 const Budget& budget = Budget{});
// maximal secondary chambers (as subdivisions) whose cones contain phi
std::vector<Subdivision> chambers_containing(const LatticePolytope& P, const QVec& phi);

struct PreExpansionCurve {
    TropicalCurve dual;
    QPoint origin{Rat(0), Rat(0)};
    enum class OriginKind { Cell, Edge, Vertex } origin_kind = OriginKind::Cell;
    std::vector<size_t> origin_argmin;
    std::vector<QPoint> vertices;
    std::vector<bool> dual_vertex;  // vertex of the dual curve
    struct Segment {
        size_t a, b;
        bool curve, fan;
    };
    struct Ray {
        size_t v;
        IVec dir;
        bool curve, fan;
    };
    std::vector<Segment> segments;
    std::vector<Ray> rays;
    size_t origin_vertex = 0;
};
PreExpansionCurve superimpose(const TropicalCurve& g, const ToricSurfaceFan& X, const QPoint& origin,
                              const LatticePolytope& P, const QVec& phi);
PreExpansionCurve pre_expansion(const LatticePolytope& P, const ToricSurfaceFan& X, const QVec& phi);

struct ExtendedComponent {
    struct Arm {
        IVec dir;
        std::optional<Rat> reach;  // in units of dir; nullopt when unbounded
    };
    std::vector<Arm> arms;
    bool contains(const QPoint& p) const;
};
ExtendedComponent extended_main_component(const PreExpansionCurve& G);
bool is_fixed_stratum(const PreExpansionCurve& G);

// restriction of functions to the points of hull edge i, modulo constants
LatticeMap ev_map(const LatticePolytope& P, size_t face);

struct WeightedCurveType {
    size_t base;  // cone index in the PT0 fan
    struct Mark {
        bool on_vertex;
        size_t where;  // segment/ray index (segments first) or vertex index
        size_t order;  // position along the edge
        unsigned weight;
    };
    std::vector<Mark> marks;
};
// placements of positive weights summing to n on edges and dual-curve vertices of each base type
std::vector<WeightedCurveType> weighted_types(const LatticePolytope& P, const ToricSurfaceFan& X,
                                              const PT0Fan& pt0, unsigned n,
                                              const Budget& budget = Budget{});
// count of placements on E edges and V admissible vertices with total weight n
Int placement_count(size_t E, size_t V, unsigned n);

}  // namespace troppt
