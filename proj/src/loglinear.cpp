#include "troppt/loglinear.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace troppt {

ToricSurfaceFan normal_fan(const LatticePolytope& P) {
    if (P.dim() == 1) {
        // coordinate = lattice position along the segment; inner normals +1 and -1
        return {Fan::from_cones(1, {Cone::from_generators(1, {ivec({1})}), Cone::from_generators(1, {ivec({-1})})}), P};
    }
    const auto& nr = P.inner_normals();
    std::vector<Cone> cones;
    for (size_t i = 0; i < nr.size(); ++i) {
        const auto& a = nr[i];
        const auto& b = nr[(i + 1) % nr.size()];
        cones.push_back(Cone::from_generators(2, {ivec({a[0], a[1]}), ivec({b[0], b[1]})}));
    }
    return {Fan::from_cones(2, cones), P};
}

IMat fiber_basis(const LatticePolytope& P) {
    if (P.dim() == 2) return {P.ex(), P.ey()};
    const auto& pts = P.points();
    const Point& a = pts[P.hull_vertices()[0]];
    const Point& b = pts[P.hull_vertices()[1]];
    long g = std::gcd(std::labs(b[0] - a[0]), std::labs(b[1] - a[1]));
    long dx = (b[0] - a[0]) / g, dy = (b[1] - a[1]) / g;
    auto t = [&](const Point& p) { return ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy); };
    IVec r(P.m());
    for (size_t k = 1; k < P.size(); ++k) r[k - 1] = t(pts[k]) - t(pts[0]);
    return {r};
}

Fan build_xdagger_fan(const LatticePolytope& P, const Budget& budget) {
    auto sec = enumerate_regular_subdivisions(P, budget);
    return common_refinement(projective_fan(P.m()), sec.fan);
}

QMat vertex_map(const LatticePolytope& P, const std::vector<size_t>& cell) {
    auto cor = cell_corners(P, cell);
    if (cor.size() < 3) throw InvariantViolation("degenerate cell");
    const auto& pts = P.points();
    // (p_c0 - p_ci).v = x_ci - x_c0
    Rat a = pts[cor[0]][0] - pts[cor[1]][0], b = pts[cor[0]][1] - pts[cor[1]][1];
    Rat c = pts[cor[0]][0] - pts[cor[2]][0], d = pts[cor[0]][1] - pts[cor[2]][1];
    Rat det = a * d - b * c;
    if (det == 0) throw InvariantViolation("degenerate cell");
    size_t m = P.m();
    auto coord = [&](size_t p) {
        QVec v(m, Rat(0));
        if (p > 0) v[p - 1] = 1;
        return v;
    };
    QVec r1 = coord(cor[1]) - coord(cor[0]);
    QVec r2 = coord(cor[2]) - coord(cor[0]);
    QMat out(2, QVec(m));
    for (size_t k = 0; k < m; ++k) {
        out[0][k] = (d * r1[k] - b * r2[k]) / det;
        out[1][k] = (-c * r1[k] + a * r2[k]) / det;
    }
    return out;
}

bool ConeType::operator<(const ConeType& o) const {
    return std::tie(min_set, subdivision, vertex_sector) < std::tie(o.min_set, o.subdivision, o.vertex_sector);
}

std::string ConeType::to_string() const {
    std::ostringstream s;
    s << "min{";
    for (size_t i = 0; i < min_set.size(); ++i) s << (i ? "," : "") << min_set[i];
    s << "} " << subdivision.to_string() << " sectors[";
    for (size_t i = 0; i < vertex_sector.size(); ++i) s << (i ? "," : "") << vertex_sector[i];
    s << "]";
    return s.str();
}

ConeType cone_type(const LatticePolytope& P, const ToricSurfaceFan& X, const QVec& phi) {
    ConeType t;
    t.min_set = min_set(phi);
    t.subdivision = induced_subdivision(P, phi);
    if (P.dim() != 2) return t;
    auto T = dual_tropical_curve(P, phi);
    for (const auto& v : T.vertices) {
        auto i = X.fan.locate(QVec{v[0], v[1]});
        if (!i) throw InvariantViolation("surface fan is not complete");
        t.vertex_sector.push_back(*i);
    }
    return t;
}

namespace {

// one common denominator, so the rescaling is a positive multiple of the map
IMat integral_rows(const QMat& q) {
    Int den = 1;
    for (const auto& r : q)
        for (const auto& x : r) den = lcm(den, Int(x.get_den()));
    IMat out;
    for (const auto& r : q) {
        IVec v(r.size());
        for (size_t i = 0; i < r.size(); ++i) v[i] = r[i].get_num() * (den / r[i].get_den());
        out.push_back(v);
    }
    return out;
}

// full-dimensional pieces of K on which every dual vertex stays in one cone of the surface fan
std::vector<Cone> refine_chamber(const LatticePolytope& P, const ToricSurfaceFan& X, const Cone& K,
                                 const Budget& budget) {
    size_t m = P.m();
    Subdivision S = induced_subdivision(P, P.from_n(K.relint_point()));
    std::vector<Cone> pieces{K};
    auto xmax = X.fan.maximal();
    for (const auto& cell : S.cells) {
        IMat V = integral_rows(vertex_map(P, cell));
        std::vector<Cone> next;
        for (const auto& pc : pieces)
            for (auto j : xmax) {
                Cone c = pc.intersect(X.fan.cone(j).preimage(V));
                if (c.dim() == m) next.push_back(c);
            }
        if (next.size() > budget.max_cones) throw BudgetExceeded("enumeration budget exceeded");
        pieces = std::move(next);
    }
    return pieces;
}

PT0Fan with_types(const LatticePolytope& P, const ToricSurfaceFan& X, Fan f) {
    PT0Fan out;
    out.fan = std::move(f);
    for (const auto& c : out.fan.cones()) out.types.push_back(cone_type(P, X, P.from_n(c.relint_point())));
    return out;
}

}  // namespace

PT0Fan build_pt0(const LatticePolytope& P, const ToricSurfaceFan& X, const Budget& budget) {
    Fan xd = build_xdagger_fan(P, budget);
    if (P.dim() == 1) {
        PT0Fan out;
        out.fan = xd;
        for (const auto& c : xd.cones()) {
            QVec phi = P.from_n(c.relint_point());
            out.types.push_back({min_set(phi), induced_subdivision(P, phi), {}});
        }
        return out;
    }
    std::vector<Cone> all;
    for (auto i : xd.maximal()) {
        auto pieces = refine_chamber(P, X, xd.cone(i), budget);
        all.insert(all.end(), pieces.begin(), pieces.end());
        if (all.size() > budget.max_cones) throw BudgetExceeded("enumeration budget exceeded");
    }
    return with_types(P, X, Fan::from_cones(P.m(), all));
}

Fan build_pt0_fan(const LatticePolytope& P, const ToricSurfaceFan& X, const Budget& budget) {
    return build_pt0(P, X, budget).fan;
}

std::vector<Subdivision> chambers_containing(const LatticePolytope& P, const QVec& phi) {
    QVec x = P.to_n(phi);
    QVec g = generic_lift(P, 7);
    Subdivision s0 = refine(P, induced_subdivision(P, phi), g);
    std::set<Subdivision> found{s0};
    std::deque<Subdivision> queue{s0};
    while (!queue.empty()) {
        Subdivision S = queue.front();
        queue.pop_front();
        Cone C = secondary_cone(P, S);
        if (!C.contains(x)) throw InvariantViolation("chamber walk left the seed");
        auto fc = C.facet_cones();
        for (size_t f = 0; f < fc.size(); ++f) {
            if (!fc[f].contains(x)) continue;
            Subdivision SF = induced_subdivision(P, P.from_n(fc[f].relint_point()));
            Subdivision N = refine(P, refine(P, SF, P.from_n(to_q(-C.facets()[f]))), g);
            if (found.insert(N).second) queue.push_back(N);
        }
    }
    return {found.begin(), found.end()};
}

PT0Fan local_pt0(const LatticePolytope& P, const ToricSurfaceFan& X, const QVec& seed, const Budget& budget) {
    if (P.dim() != 2) throw std::invalid_argument("degenerate hull");
    QVec x = P.to_n(seed);
    std::vector<Cone> star;
    for (const auto& S : chambers_containing(P, seed)) {
        Cone C = secondary_cone(P, S);
        for (auto i : min_set(seed)) {
            Cone K = C.intersect(delta_cone(P.m(), {i}));
            if (K.dim() != P.m()) continue;
            for (auto& pc : refine_chamber(P, X, K, budget))
                if (pc.contains(x)) star.push_back(pc);
        }
    }
    if (star.empty()) throw InvariantViolation("seed lies in no cone");
    return with_types(P, X, Fan::from_cones(P.m(), star));
}

namespace {

Rat cross2(const QVec& a, const QVec& b) { return a[0] * b[1] - a[1] * b[0]; }

struct Element {
    QVec p, d;
    bool bounded;  // t in [0,1] when bounded, else [0, inf)
    bool curve, fan;
    std::set<Rat> cuts;
    bool in_range(const Rat& t) const { return t >= 0 && (!bounded || t <= 1); }
    Rat param(const QVec& q) const { return dot(q - p, d) / dot(d, d); }
    bool on_line(const QVec& q) const { return cross2(q - p, d) == 0; }
};

void cut_pair(Element& e, Element& f) {
    Rat det = cross2(e.d, f.d);
    QVec w = f.p - e.p;
    if (det != 0) {
        Rat t = cross2(w, f.d) / det, s = cross2(w, e.d) / det;
        if (e.in_range(t) && f.in_range(s)) {
            e.cuts.insert(t);
            f.cuts.insert(s);
        }
        return;
    }
    if (!e.on_line(f.p)) return;
    auto ends = [](const Element& a) {
        std::vector<QVec> v{a.p};
        if (a.bounded) v.push_back(a.p + a.d);
        return v;
    };
    for (const auto& q : ends(f)) {
        Rat t = e.param(q);
        if (e.in_range(t)) e.cuts.insert(t);
    }
    for (const auto& q : ends(e)) {
        Rat s = f.param(q);
        if (f.in_range(s)) f.cuts.insert(s);
    }
}

IVec primitive_q(const QVec& d) { return primitive(clear_denominators(d)); }

}  // namespace

PreExpansionCurve superimpose(const TropicalCurve& g, const ToricSurfaceFan& X, const QPoint& origin,
                              const LatticePolytope& P, const QVec& phi) {
    PreExpansionCurve G;
    G.dual = g;
    G.origin = origin;
    G.origin_argmin = argmin_set(P, phi, origin);
    std::vector<Element> el;
    auto qp = [](const QPoint& a) { return QVec{a[0], a[1]}; };
    for (const auto& e : g.edges)
        el.push_back({qp(g.vertices[e.a]), qp(g.vertices[e.b]) - qp(g.vertices[e.a]), true, true, false, {}});
    for (const auto& r : g.rays) el.push_back({qp(g.vertices[r.v]), to_q(r.dir), false, true, false, {}});
    for (const auto& r : X.fan.ray_table()) el.push_back({qp(origin), to_q(r), false, false, true, {}});
    for (size_t i = 0; i < el.size(); ++i) {
        el[i].cuts.insert(Rat(0));
        if (el[i].bounded) el[i].cuts.insert(Rat(1));
        for (size_t j = 0; j < i; ++j) cut_pair(el[i], el[j]);
    }
    std::map<QPoint, size_t> vid;
    auto vertex = [&](const QVec& q) {
        QPoint k{q[0], q[1]};
        auto it = vid.find(k);
        if (it != vid.end()) return it->second;
        vid.emplace(k, G.vertices.size());
        G.vertices.push_back(k);
        return G.vertices.size() - 1;
    };
    G.origin_vertex = vertex(qp(origin));
    for (const auto& v : g.vertices) vertex(qp(v));
    std::map<std::pair<size_t, size_t>, size_t> seg;
    std::map<std::pair<size_t, IVec>, size_t> ray;
    for (const auto& e : el) {
        std::vector<Rat> ts(e.cuts.begin(), e.cuts.end());
        for (size_t k = 0; k + 1 < ts.size(); ++k) {
            size_t a = vertex(e.p + scale(e.d, ts[k])), b = vertex(e.p + scale(e.d, ts[k + 1]));
            auto key = std::minmax(a, b);
            auto it = seg.find(key);
            if (it == seg.end()) {
                seg.emplace(key, G.segments.size());
                G.segments.push_back({key.first, key.second, e.curve, e.fan});
            } else {
                G.segments[it->second].curve |= e.curve;
                G.segments[it->second].fan |= e.fan;
            }
        }
        if (!e.bounded) {
            size_t v = vertex(e.p + scale(e.d, ts.back()));
            auto key = std::make_pair(v, primitive_q(e.d));
            auto it = ray.find(key);
            if (it == ray.end()) {
                ray.emplace(key, G.rays.size());
                G.rays.push_back({v, key.second, e.curve, e.fan});
            } else {
                G.rays[it->second].curve |= e.curve;
                G.rays[it->second].fan |= e.fan;
            }
        }
    }
    G.dual_vertex.assign(G.vertices.size(), false);
    for (const auto& v : g.vertices) G.dual_vertex[vid.at(v)] = true;
    if (G.origin_argmin.size() == 1)
        G.origin_kind = PreExpansionCurve::OriginKind::Cell;
    else if (G.dual_vertex[G.origin_vertex])
        G.origin_kind = PreExpansionCurve::OriginKind::Vertex;
    else
        G.origin_kind = PreExpansionCurve::OriginKind::Edge;
    return G;
}

PreExpansionCurve pre_expansion(const LatticePolytope& P, const ToricSurfaceFan& X, const QVec& phi) {
    return superimpose(dual_tropical_curve(P, phi), X, QPoint{Rat(0), Rat(0)}, P, phi);
}

bool ExtendedComponent::contains(const QPoint& p) const {
    if (p[0] == 0 && p[1] == 0) return true;
    QVec q{p[0], p[1]};
    for (const auto& a : arms) {
        QVec d = to_q(a.dir);
        if (cross2(q, d) != 0) continue;
        Rat t = dot(q, d) / dot(d, d);
        if (t > 0 && (!a.reach || t <= *a.reach)) return true;
    }
    return false;
}

ExtendedComponent extended_main_component(const PreExpansionCurve& G) {
    if (G.origin[0] != 0 || G.origin[1] != 0) throw std::invalid_argument("origin must be 0");
    const size_t o = G.origin_vertex;
    std::set<IVec> dirs;
    auto qv = [&](size_t i) { return QVec{G.vertices[i][0], G.vertices[i][1]}; };
    for (const auto& s : G.segments) {
        if (s.a == o) dirs.insert(primitive_q(qv(s.b)));
        if (s.b == o) dirs.insert(primitive_q(qv(s.a)));
    }
    for (const auto& r : G.rays)
        if (r.v == o) dirs.insert(r.dir);
    ExtendedComponent E;
    for (const auto& dir : dirs) {
        QVec d = to_q(dir);
        Rat dd = dot(d, d);
        struct Iv {
            Rat lo;
            std::optional<Rat> hi;
        };
        std::vector<Iv> ivs;
        auto par = [&](const QVec& q) -> Rat { return dot(q, d) / dd; };
        for (const auto& s : G.segments) {
            QVec a = qv(s.a), b = qv(s.b);
            if (cross2(a, d) != 0 || cross2(b, d) != 0) continue;
            Rat ta = par(a), tb = par(b);
            ivs.push_back({std::min(ta, tb), std::max(ta, tb)});
        }
        for (const auto& r : G.rays) {
            QVec v = qv(r.v), rd = to_q(r.dir);
            if (cross2(v, d) != 0 || cross2(rd, d) != 0) continue;
            if (dot(rd, d) > 0) ivs.push_back({par(v), std::nullopt});
        }
        std::optional<Rat> cur = Rat(0);
        bool moved = true;
        while (cur && moved) {
            moved = false;
            for (const auto& iv : ivs)
                if (iv.lo <= *cur && (!iv.hi || *iv.hi > *cur)) {
                    cur = iv.hi;
                    moved = true;
                    break;
                }
        }
        if (cur && *cur == 0) continue;
        E.arms.push_back({dir, cur});
    }
    return E;
}

bool is_fixed_stratum(const PreExpansionCurve& G) {
    auto E = extended_main_component(G);
    for (size_t i = 0; i < G.vertices.size(); ++i)
        if (G.dual_vertex[i] && E.contains(G.vertices[i])) return false;
    return true;
}

LatticeMap ev_map(const LatticePolytope& P, size_t face) {
    if (face >= P.edges().size()) throw std::invalid_argument("no such face");
    const auto& q = P.edges()[face];
    IMat rows;
    for (size_t t = 1; t < q.size(); ++t) {
        IVec c(P.size(), Int(0));
        c[q[t]] += 1;
        c[q[0]] -= 1;
        rows.push_back(P.form_on_n(c));
    }
    return LatticeMap(P.m(), q.size() - 1, rows);
}

Int placement_count(size_t E, size_t V, unsigned n) {
    // edge factor (1-t)/(1-2t), vertex factor 1/(1-t)
    std::vector<Int> s(n + 1, Int(0));
    s[0] = 1;
    auto mul = [&](const std::vector<Int>& f) {
        std::vector<Int> r(n + 1, Int(0));
        for (unsigned i = 0; i <= n; ++i)
            for (unsigned j = 0; i + j <= n; ++j) r[i + j] += s[i] * f[j];
        s = r;
    };
    std::vector<Int> fe(n + 1), fv(n + 1, Int(1));
    fe[0] = 1;
    for (unsigned k = 1; k <= n; ++k) fe[k] = Int(1) << (k - 1);
    for (size_t i = 0; i < E; ++i) mul(fe);
    for (size_t i = 0; i < V; ++i) mul(fv);
    return s[n];
}

std::vector<WeightedCurveType> weighted_types(const LatticePolytope& P, const ToricSurfaceFan& X,
                                              const PT0Fan& pt0, unsigned n, const Budget& budget) {
    std::vector<WeightedCurveType> out;
    for (size_t i = 0; i < pt0.fan.size(); ++i) {
        auto G = pre_expansion(P, X, P.from_n(pt0.fan.cone(i).relint_point()));
        size_t E = G.segments.size() + G.rays.size();
        std::vector<size_t> adm;
        for (size_t v = 0; v < G.vertices.size(); ++v)
            if (G.dual_vertex[v]) adm.push_back(v);
        std::vector<WeightedCurveType::Mark> marks;
        // slots: edges then admissible vertices
        std::function<void(size_t, unsigned)> rec = [&](size_t slot, unsigned left) {
            if (slot == E + adm.size()) {
                if (left != 0) return;
                if (out.size() >= budget.max_cones) throw BudgetExceeded("enumeration budget exceeded");
                out.push_back({i, marks});
                return;
            }
            if (slot >= E) {
                rec(slot + 1, left);
                for (unsigned w = 1; w <= left; ++w) {
                    marks.push_back({true, adm[slot - E], 0, w});
                    rec(slot + 1, left - w);
                    marks.pop_back();
                }
                return;
            }
            // ordered sequence of positive weights on this edge
            std::function<void(size_t, unsigned)> seq = [&](size_t ord, unsigned l) {
                rec(slot + 1, l);
                for (unsigned w = 1; w <= l; ++w) {
                    marks.push_back({false, slot, ord, w});
                    seq(ord + 1, l - w);
                    marks.pop_back();
                }
            };
            seq(0, left);
        };
        rec(0, n);
    }
    return out;
}

}  // namespace troppt
