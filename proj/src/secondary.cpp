#include "troppt/secondary.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace troppt {

Budget Budget::from_env() {
    Budget b;
    if (const char* s = std::getenv("TROPPT_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) b.max_cones = static_cast<size_t>(v);
    }
    return b;
}

namespace {

long cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

long lgcd(long a, long b) { return std::gcd(std::labs(a), std::labs(b)); }

}  // namespace

LatticePolytope::LatticePolytope(std::vector<Point> pts) : pts_(std::move(pts)) {
    if (pts_.empty()) throw std::invalid_argument("empty polytope");
    std::set<Point> seen(pts_.begin(), pts_.end());
    if (seen.size() != pts_.size()) throw std::invalid_argument("points not distinct");
    dim_ = 0;
    for (size_t i = 1; i < pts_.size(); ++i)
        if (pts_[i] != pts_[0]) dim_ = 1;
    for (size_t i = 1; i < pts_.size() && dim_ == 1; ++i)
        for (size_t j = i + 1; j < pts_.size(); ++j)
            if (cross(pts_[0], pts_[i], pts_[j]) != 0) {
                dim_ = 2;
                break;
            }
    if (dim_ == 0) throw std::invalid_argument("degenerate hull");
    if (dim_ == 1) {
        // order along the line
        Point d{pts_[1][0] - pts_[0][0], pts_[1][1] - pts_[0][1]};
        std::vector<size_t> ord(pts_.size());
        std::iota(ord.begin(), ord.end(), 0);
        auto t = [&](size_t i) { return (pts_[i][0] - pts_[0][0]) * d[0] + (pts_[i][1] - pts_[0][1]) * d[1]; };
        std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return t(a) < t(b); });
        hull_ = {ord.front(), ord.back()};
        edges_ = {ord};
        return;
    }
    std::vector<size_t> ord(pts_.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return pts_[a] < pts_[b]; });
    std::vector<size_t> h(2 * ord.size());
    size_t k = 0;
    for (size_t i : ord) {
        while (k >= 2 && cross(pts_[h[k - 2]], pts_[h[k - 1]], pts_[i]) <= 0) --k;
        h[k++] = i;
    }
    for (size_t t = ord.size() - 1, lo = k + 1; t-- > 0;) {
        size_t i = ord[t];
        while (k >= lo && cross(pts_[h[k - 2]], pts_[h[k - 1]], pts_[i]) <= 0) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    hull_ = h;
    area2_ = 0;
    for (size_t i = 0; i < hull_.size(); ++i) {
        const Point& a = pts_[hull_[i]];
        const Point& b = pts_[hull_[(i + 1) % hull_.size()]];
        area2_ += a[0] * b[1] - a[1] * b[0];
        std::vector<std::pair<long, size_t>> on;
        for (size_t j = 0; j < pts_.size(); ++j) {
            const Point& p = pts_[j];
            if (cross(a, b, p) != 0) continue;
            long t = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
            long len = (b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]);
            if (t >= 0 && t <= len) on.emplace_back(t, j);
        }
        std::sort(on.begin(), on.end());
        std::vector<size_t> e;
        for (auto& pr : on) e.push_back(pr.second);
        edges_.push_back(e);
        long ex = b[0] - a[0], ey = b[1] - a[1];
        long g = lgcd(ex, ey);
        normals_.push_back({-ey / g, ex / g});
    }
}

LatticePolytope LatticePolytope::unit_square() { return LatticePolytope({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

LatticePolytope LatticePolytope::rectangle(long a, long b) {
    std::vector<Point> p;
    for (long j = 0; j <= b; ++j)
        for (long i = 0; i <= a; ++i) p.push_back({i, j});
    return LatticePolytope(p);
}

LatticePolytope LatticePolytope::triangle(long d) {
    std::vector<Point> p;
    for (long j = 0; j <= d; ++j)
        for (long i = 0; i + j <= d; ++i) p.push_back({i, j});
    return LatticePolytope(p);
}

LatticePolytope LatticePolytope::segment(long k) {
    std::vector<Point> p;
    for (long i = 0; i <= k; ++i) p.push_back({i, 0});
    return LatticePolytope(p);
}

std::optional<size_t> LatticePolytope::find(const Point& p) const {
    for (size_t i = 0; i < pts_.size(); ++i)
        if (pts_[i] == p) return i;
    return std::nullopt;
}

bool LatticePolytope::in_hull(const std::array<Rat, 2>& q) const {
    if (dim_ != 2) throw std::invalid_argument("degenerate hull");
    for (size_t i = 0; i < hull_.size(); ++i) {
        const Point& a = pts_[hull_[i]];
        const Point& b = pts_[hull_[(i + 1) % hull_.size()]];
        Rat c = Rat(b[0] - a[0]) * (q[1] - a[1]) - Rat(b[1] - a[1]) * (q[0] - a[0]);
        if (c < 0) return false;
    }
    return true;
}

QVec LatticePolytope::to_n(const QVec& v) const {
    if (v.size() != pts_.size()) throw std::invalid_argument("rank mismatch");
    QVec x(m());
    for (size_t k = 1; k < v.size(); ++k) x[k - 1] = v[k] - v[0];
    return x;
}

QVec LatticePolytope::from_n(const QVec& x) const {
    if (x.size() != m()) throw std::invalid_argument("rank mismatch");
    QVec v(pts_.size(), Rat(0));
    for (size_t k = 1; k < v.size(); ++k) v[k] = x[k - 1];
    return v;
}

IVec LatticePolytope::form_on_n(const IVec& c) const {
    return IVec(c.begin() + 1, c.end());
}

IVec LatticePolytope::ex() const {
    IVec r(m());
    for (size_t k = 1; k < pts_.size(); ++k) r[k - 1] = pts_[k][0] - pts_[0][0];
    return r;
}

IVec LatticePolytope::ey() const {
    IVec r(m());
    for (size_t k = 1; k < pts_.size(); ++k) r[k - 1] = pts_[k][1] - pts_[0][1];
    return r;
}

IMat LatticePolytope::nx_basis() const { return saturate({ex(), ey()}, m()); }

IMat LatticePolytope::dagger_projection() const { return integer_kernel(nx_basis(), m()); }

LiftingFunction LiftingFunction::canonical(QVec v) {
    if (!v.empty()) {
        Rat mn = *std::min_element(v.begin(), v.end());
        for (auto& x : v) x -= mn;
    }
    return {v};
}

bool Subdivision::trivial_for(const LatticePolytope& P) const {
    if (cells.size() != 1) return false;
    return cell_corners(P, cells[0]).size() == P.hull_vertices().size() || P.dim() == 1;
}

std::string Subdivision::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < cells.size(); ++i) {
        os << (i ? "," : "") << "{";
        for (size_t j = 0; j < cells[i].size(); ++j) os << (j ? "," : "") << cells[i][j];
        os << "}";
    }
    os << "]";
    return os.str();
}

namespace {

// cells of the lower hull of the lifted points idx
std::vector<std::vector<size_t>> lower_cells(const LatticePolytope& P, const std::vector<size_t>& idx,
                                             const QVec& phi) {
    std::set<std::vector<size_t>> cells;
    const auto& pts = P.points();
    if (P.dim() == 2) {
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = a + 1; b < idx.size(); ++b)
                for (size_t c = b + 1; c < idx.size(); ++c) {
                    const Point& A = pts[idx[a]];
                    const Point& B = pts[idx[b]];
                    const Point& C = pts[idx[c]];
                    long o = cross(A, B, C);
                    if (o == 0) continue;
                    Rat bz = phi[idx[b]] - phi[idx[a]], cz = phi[idx[c]] - phi[idx[a]];
                    long bx = B[0] - A[0], by = B[1] - A[1], cx = C[0] - A[0], cy = C[1] - A[1];
                    std::vector<size_t> on;
                    bool lower = true;
                    for (size_t q : idx) {
                        const Point& Q = pts[q];
                        long px = Q[0] - A[0], py = Q[1] - A[1];
                        Rat pz = phi[q] - phi[idx[a]];
                        Rat D = Rat(bx) * (Rat(cy) * pz - cz * py) - Rat(by) * (Rat(cx) * pz - cz * px) +
                                bz * Rat(cx * py - cy * px);
                        // D = o * (phi(q) - plane(q))
                        int s = sgn(D) * (o > 0 ? 1 : -1);
                        if (s < 0) {
                            lower = false;
                            break;
                        }
                        if (s == 0) on.push_back(q);
                    }
                    if (!lower) continue;
                    std::sort(on.begin(), on.end());
                    cells.insert(on);
                }
    } else {
        const Point& O = pts[P.hull_vertices()[0]];
        Point d{pts[P.hull_vertices()[1]][0] - O[0], pts[P.hull_vertices()[1]][1] - O[1]};
        auto t = [&](size_t i) { return (pts[i][0] - O[0]) * d[0] + (pts[i][1] - O[1]) * d[1]; };
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = a + 1; b < idx.size(); ++b) {
                long ta = t(idx[a]), tb = t(idx[b]);
                std::vector<size_t> on;
                bool lower = true;
                for (size_t q : idx) {
                    // (tb-ta)(phi_q - phi_a) - (tq-ta)(phi_b - phi_a) has the sign of phi_q - line(q) times (tb-ta)
                    Rat D = Rat(tb - ta) * (phi[q] - phi[idx[a]]) - Rat(t(q) - ta) * (phi[idx[b]] - phi[idx[a]]);
                    int s = sgn(D) * (tb > ta ? 1 : -1);
                    if (s < 0) {
                        lower = false;
                        break;
                    }
                    if (s == 0) on.push_back(q);
                }
                if (!lower) continue;
                std::sort(on.begin(), on.end());
                cells.insert(on);
            }
    }
    return {cells.begin(), cells.end()};
}

// integer coefficients of phi(q) - (affine interpolation of phi at q through basis points)
IVec interpolation_form(const LatticePolytope& P, size_t q, const std::vector<size_t>& basis) {
    const auto& pts = P.points();
    size_t k = basis.size();
    // solve sum l_i p_i = q, sum l_i = 1
    QMat A(P.dim() + 1, QVec(k));
    QVec rhs(P.dim() + 1);
    for (size_t i = 0; i < k; ++i) {
        A[0][i] = 1;
        for (int c = 0; c < P.dim(); ++c) A[c + 1][i] = pts[basis[i]][c];
    }
    rhs[0] = 1;
    for (int c = 0; c < P.dim(); ++c) rhs[c + 1] = pts[q][c];
    if (P.dim() == 1) {
        // use the coordinate that varies along the line
        bool xvar = pts[basis[0]][0] != pts[basis[1]][0];
        A.resize(2);
        rhs.resize(2);
        for (size_t i = 0; i < k; ++i) A[1][i] = pts[basis[i]][xvar ? 0 : 1];
        rhs[1] = pts[q][xvar ? 0 : 1];
    }
    auto l = solve(A, rhs);
    if (!l) throw InvariantViolation("interpolation basis is degenerate");
    QVec c(P.size(), Rat(0));
    c[q] += 1;
    for (size_t i = 0; i < k; ++i) c[basis[i]] -= (*l)[i];
    Int den = 1;
    for (const auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IVec r(P.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = c[i].get_num() * (den / c[i].get_den());
    return r;
}

long line_param(const LatticePolytope& P, size_t i) {
    const auto& pts = P.points();
    const Point& O = pts[P.hull_vertices()[0]];
    Point d{pts[P.hull_vertices()[1]][0] - O[0], pts[P.hull_vertices()[1]][1] - O[1]};
    return (pts[i][0] - O[0]) * d[0] + (pts[i][1] - O[1]) * d[1];
}

}  // namespace

Subdivision induced_subdivision(const LatticePolytope& P, const QVec& phi) {
    if (phi.size() != P.size()) throw std::invalid_argument("rank mismatch");
    std::vector<size_t> all(P.size());
    std::iota(all.begin(), all.end(), 0);
    return {lower_cells(P, all, phi)};
}

Subdivision refine(const LatticePolytope& P, const Subdivision& S, const QVec& h) {
    std::set<std::vector<size_t>> out;
    for (const auto& c : S.cells)
        for (auto& sub : lower_cells(P, c, h)) out.insert(sub);
    return {std::vector<std::vector<size_t>>(out.begin(), out.end())};
}

std::vector<size_t> cell_corners(const LatticePolytope& P, const std::vector<size_t>& cell) {
    const auto& pts = P.points();
    if (P.dim() == 1) {
        auto mm = std::minmax_element(cell.begin(), cell.end(),
                                      [&](size_t a, size_t b) { return line_param(P, a) < line_param(P, b); });
        return {*mm.first, *mm.second};
    }
    std::vector<size_t> ord = cell;
    std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return pts[a] < pts[b]; });
    std::vector<size_t> h(2 * ord.size() + 1);
    size_t k = 0;
    for (size_t i : ord) {
        while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
        h[k++] = i;
    }
    for (size_t t = ord.size() - 1, lo = k + 1; t-- > 0;) {
        size_t i = ord[t];
        while (k >= lo && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    return h;
}

std::vector<Wall> walls(const LatticePolytope& P, const Subdivision& S) {
    if (P.dim() != 2) throw std::invalid_argument("walls need a 2-dimensional polytope");
    const auto& pts = P.points();
    std::map<std::pair<size_t, size_t>, std::vector<size_t>> by_edge;
    for (size_t ci = 0; ci < S.cells.size(); ++ci) {
        auto cor = cell_corners(P, S.cells[ci]);
        for (size_t i = 0; i < cor.size(); ++i) {
            size_t a = cor[i], b = cor[(i + 1) % cor.size()];
            by_edge[{std::min(a, b), std::max(a, b)}].push_back(ci);
        }
    }
    std::vector<Wall> out;
    for (auto& [e, cs] : by_edge) {
        if (cs.size() > 2) throw std::invalid_argument("invalid cell complex");
        Wall w;
        w.cell_a = cs[0];
        w.cell_b = cs.size() == 2 ? cs[1] : Wall::npos;
        const Point& a = pts[e.first];
        const Point& b = pts[e.second];
        std::vector<std::pair<long, size_t>> on;
        for (size_t q : S.cells[cs[0]]) {
            if (cross(a, b, pts[q]) != 0) continue;
            long t = (pts[q][0] - a[0]) * (b[0] - a[0]) + (pts[q][1] - a[1]) * (b[1] - a[1]);
            on.emplace_back(t, q);
        }
        std::sort(on.begin(), on.end());
        for (auto& pr : on) w.points.push_back(pr.second);
        w.lattice_length = lgcd(b[0] - a[0], b[1] - a[1]);
        out.push_back(w);
    }
    return out;
}

void validate_subdivision(const LatticePolytope& P, const Subdivision& S) {
    const auto& pts = P.points();
    if (S.cells.empty()) throw std::invalid_argument("invalid cell complex");
    for (const auto& c : S.cells)
        for (size_t q : c)
            if (q >= P.size()) throw std::invalid_argument("invalid cell complex");
    if (P.dim() == 1) {
        std::vector<std::pair<long, long>> iv;
        for (const auto& c : S.cells) {
            auto cor = cell_corners(P, c);
            long a = line_param(P, cor[0]), b = line_param(P, cor[1]);
            if (a == b) throw std::invalid_argument("invalid cell complex");
            iv.emplace_back(a, b);
        }
        std::sort(iv.begin(), iv.end());
        if (iv.front().first != line_param(P, P.hull_vertices()[0]) ||
            iv.back().second != line_param(P, P.hull_vertices()[1]))
            throw std::invalid_argument("invalid cell complex");
        for (size_t i = 1; i < iv.size(); ++i)
            if (iv[i].first != iv[i - 1].second) throw std::invalid_argument("invalid cell complex");
        return;
    }
    long area = 0;
    for (const auto& c : S.cells) {
        auto cor = cell_corners(P, c);
        if (cor.size() < 3) throw std::invalid_argument("invalid cell complex");
        long a2 = 0;
        for (size_t i = 0; i < cor.size(); ++i) {
            const Point& a = pts[cor[i]];
            const Point& b = pts[cor[(i + 1) % cor.size()]];
            a2 += a[0] * b[1] - a[1] * b[0];
        }
        area += a2;
    }
    if (area != P.double_area()) throw std::invalid_argument("invalid cell complex");
    std::vector<Wall> ws;
    try {
        ws = walls(P, S);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid cell complex");
    }
    for (const auto& w : ws) {
        if (w.cell_b != Wall::npos) continue;
        bool on_hull = false;
        for (const auto& e : P.edges())
            if (std::find(e.begin(), e.end(), w.points.front()) != e.end() &&
                std::find(e.begin(), e.end(), w.points.back()) != e.end())
                on_hull = true;
        if (!on_hull) throw std::invalid_argument("invalid cell complex");
    }
}

Cone secondary_cone(const LatticePolytope& P, const Subdivision& S) {
    validate_subdivision(P, S);
    const auto& pts = P.points();
    IMat ineqs, eqs;
    std::vector<bool> marked(P.size(), false);
    for (const auto& c : S.cells)
        for (size_t q : c) marked[q] = true;
    auto add_form = [&](IMat& into, const IVec& form) { into.push_back(P.form_on_n(form)); };
    std::vector<std::vector<size_t>> basis(S.cells.size());
    for (size_t ci = 0; ci < S.cells.size(); ++ci) {
        auto cor = cell_corners(P, S.cells[ci]);
        basis[ci] = P.dim() == 2 ? std::vector<size_t>{cor[0], cor[1], cor[2]} : cor;
        for (size_t q : S.cells[ci])
            if (std::find(basis[ci].begin(), basis[ci].end(), q) == basis[ci].end())
                add_form(eqs, interpolation_form(P, q, basis[ci]));
    }
    if (P.dim() == 2) {
        for (const auto& w : walls(P, S)) {
            if (w.cell_b == Wall::npos) continue;
            size_t a = w.points.front(), b = w.points.back();
            auto off = [&](size_t ci) {
                for (size_t q : cell_corners(P, S.cells[ci]))
                    if (cross(pts[a], pts[b], pts[q]) != 0) return q;
                throw InvariantViolation("cell without off-wall corner");
            };
            size_t c = off(w.cell_a), d = off(w.cell_b);
            add_form(ineqs, interpolation_form(P, d, {a, b, c}));
        }
        for (size_t q = 0; q < P.size(); ++q) {
            if (marked[q]) continue;
            for (size_t ci = 0; ci < S.cells.size(); ++ci) {
                auto cor = cell_corners(P, S.cells[ci]);
                bool inside = true;
                for (size_t i = 0; i < cor.size(); ++i)
                    if (cross(pts[cor[i]], pts[cor[(i + 1) % cor.size()]], pts[q]) < 0) inside = false;
                if (!inside) continue;
                add_form(ineqs, interpolation_form(P, q, basis[ci]));
                break;
            }
        }
    } else {
        std::vector<std::pair<long, size_t>> order;
        for (size_t ci = 0; ci < S.cells.size(); ++ci) order.emplace_back(line_param(P, basis[ci][0]), ci);
        std::sort(order.begin(), order.end());
        for (size_t i = 1; i < order.size(); ++i) {
            const auto& l = basis[order[i - 1].second];
            const auto& r = basis[order[i].second];
            add_form(ineqs, interpolation_form(P, r[1], {l[0], l[1]}));
        }
        for (size_t q = 0; q < P.size(); ++q) {
            if (marked[q]) continue;
            long t = line_param(P, q);
            for (size_t ci = 0; ci < S.cells.size(); ++ci)
                if (line_param(P, basis[ci][0]) <= t && t <= line_param(P, basis[ci][1])) {
                    add_form(ineqs, interpolation_form(P, q, basis[ci]));
                    break;
                }
        }
    }
    return Cone::from_inequalities(P.m(), ineqs, eqs);
}

QVec generic_lift(const LatticePolytope& P, unsigned seed) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        QVec v(P.size());
        for (auto& x : v) x = static_cast<long>(rng() % 1000003);
        Subdivision S = induced_subdivision(P, v);
        size_t need = P.dim() == 2 ? 3 : 2;
        bool tri = true;
        for (const auto& c : S.cells)
            if (c.size() != need) tri = false;
        if (tri) return v;
    }
    throw InvariantViolation("no generic lift found");
}

SecondaryFan enumerate_regular_subdivisions(const LatticePolytope& P, const Budget& budget) {
    if (P.size() > budget.max_points) {
        if (!budget.allow_partial) throw BudgetExceeded("enumeration budget exceeded");
    }
    QVec g = generic_lift(P, 7);
    std::map<Subdivision, Cone> found;
    std::deque<Subdivision> queue;
    Subdivision s0 = induced_subdivision(P, g);
    found.emplace(s0, secondary_cone(P, s0));
    queue.push_back(s0);
    bool partial = false;
    while (!queue.empty()) {
        Subdivision S = queue.front();
        queue.pop_front();
        const Cone& C = found.at(S);
        if (C.dim() != P.m()) throw InvariantViolation("chamber is not full-dimensional");
        auto facet_list = C.facet_cones();
        for (size_t f = 0; f < facet_list.size(); ++f) {
            QVec x = facet_list[f].relint_point();
            Subdivision SF = induced_subdivision(P, P.from_n(x));
            QVec h = P.from_n(to_q(-C.facets()[f]));
            Subdivision N = refine(P, refine(P, SF, h), g);
            if (N == S) throw InvariantViolation("facet crossing returned the same chamber");
            if (found.count(N)) continue;
            if (found.size() >= budget.max_cones) {
                if (!budget.allow_partial) throw BudgetExceeded("enumeration budget exceeded");
                partial = true;
                continue;
            }
            found.emplace(N, secondary_cone(P, N));
            queue.push_back(N);
        }
    }
    std::vector<Cone> maxc;
    for (auto& [s, c] : found) maxc.push_back(c);
    SecondaryFan out;
    out.fan = Fan::from_cones(P.m(), maxc);
    out.partial = partial;
    for (size_t i = 0; i < out.fan.size(); ++i)
        out.subdivision.push_back(induced_subdivision(P, P.from_n(out.fan.cone(i).relint_point())));
    out.maximal = out.fan.maximal();
    return out;
}

std::vector<Subdivision> brute_force_subdivisions(const LatticePolytope& P, long lo, long hi) {
    std::set<Subdivision> out;
    size_t n = P.size();
    std::vector<long> v(n, lo);
    v[0] = 0;
    while (true) {
        QVec q(n);
        for (size_t i = 0; i < n; ++i) q[i] = v[i];
        out.insert(induced_subdivision(P, q));
        size_t i = 1;
        while (i < n && v[i] == hi) v[i++] = lo;
        if (i == n) break;
        ++v[i];
    }
    return {out.begin(), out.end()};
}

std::vector<size_t> argmin_set(const LatticePolytope& P, const QVec& phi, const QPoint& x) {
    std::vector<size_t> out;
    Rat best;
    for (size_t i = 0; i < P.size(); ++i) {
        Rat v = Rat(P.point(i)[0]) * x[0] + Rat(P.point(i)[1]) * x[1] + phi[i];
        if (out.empty() || v < best) {
            best = v;
            out = {i};
        } else if (v == best) {
            out.push_back(i);
        }
    }
    return out;
}

bool TropicalCurve::balanced() const {
    std::vector<IVec> sum(vertices.size(), IVec{Int(0), Int(0)});
    for (const auto& e : edges) {
        sum[e.a] = sum[e.a] + scale(e.dir, e.weight);
        sum[e.b] = sum[e.b] - scale(e.dir, e.weight);
    }
    for (const auto& r : rays) sum[r.v] = sum[r.v] + scale(r.dir, r.weight);
    for (const auto& s : sum)
        if (!is_zero(s)) return false;
    return true;
}

TropicalCurve dual_tropical_curve(const LatticePolytope& P, const QVec& phi) {
    if (P.dim() != 2) throw std::invalid_argument("degenerate hull");
    Subdivision S = induced_subdivision(P, phi);
    const auto& pts = P.points();
    TropicalCurve T;
    for (const auto& c : S.cells) {
        auto cor = cell_corners(P, c);
        // p.x + phi(p) equal on the corners
        QMat A;
        QVec rhs;
        for (size_t i = 1; i < 3; ++i) {
            A.push_back({Rat(pts[cor[0]][0] - pts[cor[i]][0]), Rat(pts[cor[0]][1] - pts[cor[i]][1])});
            rhs.push_back(phi[cor[i]] - phi[cor[0]]);
        }
        auto v = solve(A, rhs);
        if (!v) throw InvariantViolation("degenerate cell");
        T.vertices.push_back({(*v)[0], (*v)[1]});
        T.vertex_cells.push_back(c);
    }
    auto inner_normal = [&](size_t ci, size_t a, size_t b) {
        long ex = pts[b][0] - pts[a][0], ey = pts[b][1] - pts[a][1];
        long g = lgcd(ex, ey);
        IVec n = ivec({-ey / g, ex / g});
        for (size_t q : S.cells[ci]) {
            long s = cross(pts[a], pts[b], pts[q]);
            if (s != 0) return s > 0 ? n : IVec(-n);
        }
        throw InvariantViolation("degenerate cell");
    };
    for (const auto& w : walls(P, S)) {
        size_t a = w.points.front(), b = w.points.back();
        IVec dir = inner_normal(w.cell_a, a, b);
        if (w.cell_b == Wall::npos) {
            T.rays.push_back({w.cell_a, dir, w.lattice_length});
            continue;
        }
        const QPoint& va = T.vertices[w.cell_a];
        const QPoint& vb = T.vertices[w.cell_b];
        QVec diff{vb[0] - va[0], vb[1] - va[1]};
        // the dual edge runs along dir from the vertex of cell_a
        if (dir[0] * diff[1] != dir[1] * diff[0] || dot(dir, diff) <= 0)
            throw InvariantViolation("dual edge direction mismatch");
        T.edges.push_back({w.cell_a, w.cell_b, dir, w.lattice_length});
    }
    return T;
}

Cone delta_cone(size_t m, const std::vector<size_t>& S) {
    if (S.empty()) throw std::invalid_argument("empty minimal set");
    auto coord = [&](size_t p) {
        IVec v(m, Int(0));
        if (p > 0) v[p - 1] = 1;
        return v;
    };
    IMat ineqs, eqs;
    size_t s0 = S[0];
    for (size_t j = 0; j <= m; ++j)
        if (j != s0) ineqs.push_back(coord(j) - coord(s0));
    for (size_t i = 1; i < S.size(); ++i) eqs.push_back(coord(S[i]) - coord(s0));
    return Cone::from_inequalities(m, ineqs, eqs);
}

Fan projective_fan(size_t m) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    std::vector<Cone> c;
    for (size_t i = 0; i <= m; ++i) c.push_back(delta_cone(m, {i}));
    return Fan::from_cones(m, c);
}

std::vector<size_t> min_set(const QVec& v) {
    std::vector<size_t> out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (out.empty() || v[i] < v[out[0]]) out = {i};
        else if (v[i] == v[out[0]]) out.push_back(i);
    }
    return out;
}

}  // namespace troppt
