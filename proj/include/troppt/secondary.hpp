#pragma once

#include <array>

#include "troppt/budget.hpp"
#include "troppt/fan.hpp"

namespace troppt {

using Point = std::array<long, 2>;

// Finite point set in Z^2 together with its convex hull.
class LatticePolytope {
public:
    LatticePolytope() = default;
    explicit LatticePolytope(std::vector<Point> pts);

    static LatticePolytope unit_square();
    static LatticePolytope rectangle(long a, long b);  // {0..a} x {0..b}
    static LatticePolytope triangle(long d);           // conv{(0,0),(d,0),(0,d)}
    static LatticePolytope segment(long k);            // {0..k} x {0}

    size_t size() const { return pts_.size(); }
    size_t m() const { return pts_.size() - 1; }  // rank of N
    const std::vector<Point>& points() const { return pts_; }
    const Point& point(size_t i) const { return pts_[i]; }
    int dim() const { return dim_; }
    std::optional<size_t> find(const Point& p) const;

    // hull vertices in counterclockwise order (2-dim) or the two ends (1-dim)
    const std::vector<size_t>& hull_vertices() const { return hull_; }
    // hull edges as ordered point lists, from one vertex to the next counterclockwise
    const std::vector<std::vector<size_t>>& edges() const { return edges_; }
    // primitive inner normal of each hull edge
    const std::vector<std::array<long, 2>>& inner_normals() const { return normals_; }
    // twice the area of the hull
    long double_area() const { return area2_; }
    bool in_hull(const std::array<Rat, 2>& q) const;

    // coordinates of a function on points in N: x_k = phi(p_k) - phi(p_0)
    QVec to_n(const QVec& values) const;
    QVec from_n(const QVec& x) const;  // representative with phi(p_0) = 0
    // linear form sum c_p phi(p) with sum c_p = 0, written on N coordinates
    IVec form_on_n(const IVec& coeffs) const;
    // N coordinates of e_x and e_y
    IVec ex() const;
    IVec ey() const;
    // integer basis of the saturation of span(e_x, e_y) in N
    IMat nx_basis() const;
    // lattice-surjective projection N -> N† with kernel N_X
    IMat dagger_projection() const;

private:
    std::vector<Point> pts_;
    int dim_ = 0;
    std::vector<size_t> hull_;
    std::vector<std::vector<size_t>> edges_;
    std::vector<std::array<long, 2>> normals_;
    long area2_ = 0;
};

struct LiftingFunction {
    QVec values;  // aligned to points; canonical representative has minimum 0
    static LiftingFunction canonical(QVec v);
};

// Cells are sorted point-index sets; the list of cells is sorted.
struct Subdivision {
    std::vector<std::vector<size_t>> cells;
    bool operator==(const Subdivision& o) const { return cells == o.cells; }
    bool operator<(const Subdivision& o) const { return cells < o.cells; }
    bool trivial_for(const LatticePolytope& P) const;
    std::string to_string() const;
};

struct Wall {
    size_t cell_a, cell_b;           // cell_b == npos for boundary walls
    std::vector<size_t> points;       // points of the polytope on the wall, in order
    Int lattice_length;
    static constexpr size_t npos = static_cast<size_t>(-1);
};

Subdivision induced_subdivision(const LatticePolytope& P, const QVec& phi);
// subdivision induced by phi + eps*h for small eps > 0
Subdivision refine(const LatticePolytope& P, const Subdivision& S, const QVec& h);
// corner points of a cell in counterclockwise order
std::vector<size_t> cell_corners(const LatticePolytope& P, const std::vector<size_t>& cell);
std::vector<Wall> walls(const LatticePolytope& P, const Subdivision& S);
void validate_subdivision(const LatticePolytope& P, const Subdivision& S);

// closed secondary cone in N of a regular subdivision
Cone secondary_cone(const LatticePolytope& P, const Subdivision& S);

struct SecondaryFan {
    Fan fan;                             // in N, lineality span(e_x, e_y)
    std::vector<Subdivision> subdivision;  // per cone of fan
    std::vector<size_t> maximal;
    bool partial = false;
};
SecondaryFan enumerate_regular_subdivisions(const LatticePolytope& P, const Budget& budget = Budget{});
// brute force: distinct subdivisions induced by every lift with values in {lo..hi}
std::vector<Subdivision> brute_force_subdivisions(const LatticePolytope& P, long lo, long hi);
// deterministic lift whose induced subdivision is a regular triangulation
QVec generic_lift(const LatticePolytope& P, unsigned seed);

using QPoint = std::array<Rat, 2>;

struct TropicalCurve {
    struct Edge {
        size_t a, b;
        IVec dir;  // primitive, from a to b
        Int weight;
    };
    struct Ray {
        size_t v;
        IVec dir;
        Int weight;
    };
    std::vector<QPoint> vertices;
    std::vector<Edge> edges;
    std::vector<Ray> rays;
    std::vector<std::vector<size_t>> vertex_cells;  // dual cell of each vertex
    bool balanced() const;
};

TropicalCurve dual_tropical_curve(const LatticePolytope& P, const QVec& phi);
// points of P where min_p (p.x + phi(p)) is attained
std::vector<size_t> argmin_set(const LatticePolytope& P, const QVec& phi, const QPoint& x);

// fan of P^m in N: maximal cone i = functions minimal at point i
Fan projective_fan(size_t m);
// delta_S: functions minimal on all of S
Cone delta_cone(size_t m, const std::vector<size_t>& S);
std::vector<size_t> min_set(const QVec& values);

}  // namespace troppt
