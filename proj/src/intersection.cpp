#include "troppt/intersection.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace troppt {

Rat MinkowskiWeight::at(size_t cone) const {
    auto it = entries.find(cone);
    return it == entries.end() ? Rat(0) : it->second;
}

bool MinkowskiWeight::operator==(const MinkowskiWeight& o) const {
    if (codim != o.codim || fan.get() != o.fan.get()) return false;
    auto nz = [](const std::map<size_t, Rat>& m) {
        std::map<size_t, Rat> r;
        for (const auto& [k, v] : m)
            if (v != 0) r.emplace(k, v);
        return r;
    };
    return nz(entries) == nz(o.entries);
}

Rat ChowCycle::degree() const {
    if (cone_dim != fan->ambient()) throw std::invalid_argument("degree needs a zero-dimensional cycle");
    Rat s = 0;
    for (const auto& [k, v] : terms) s += v;
    return s;
}

bool ChowCycle::operator==(const ChowCycle& o) const {
    if (cone_dim != o.cone_dim || fan.get() != o.fan.get()) return false;
    auto nz = [](const std::map<size_t, Rat>& m) {
        std::map<size_t, Rat> r;
        for (const auto& [k, v] : m)
            if (v != 0) r.emplace(k, v);
        return r;
    };
    return nz(terms) == nz(o.terms);
}

Displacement generic_displacement(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Displacement d;
    IVec v(n);
    do {
        for (auto& x : v) {
            long a = static_cast<long>(rng() % 1000000000ULL) + 1000;
            x = (rng() & 1) ? a : -a;
        }
    } while (n > 0 && gcd_of(v) != 1);
    d.v = to_q(v);
    return d;
}

bool good_triple(const Cone& rho, const Cone& tau, const Displacement& v) {
    size_t n = rho.ambient();
    IMat gens = rho.rays();
    for (const auto& r : tau.rays()) gens.push_back(-r);
    IMat lin = rho.lineality();
    for (const auto& l : tau.lineality()) lin.push_back(l);
    Cone G = Cone::from_generators(n, gens, lin);
    if (!G.contains(v.v)) return false;
    if (G.dim() < n || !G.in_relint(v.v)) throw NonGenericDisplacement();
    ++*v.verified;
    return true;
}

std::optional<Int> sum_index(const Cone& a, const Cone& b) {
    IMat g = a.lattice_basis();
    for (const auto& r : b.lattice_basis()) g.push_back(r);
    return lattice_index(a.ambient(), g);
}

namespace {

// [N_tgt : f(N_src)] when f(span src) = span tgt, else nullopt
std::optional<Int> image_index(const IMat& f, const Cone& src, const Cone& tgt) {
    IMat tb = tgt.lattice_basis();
    size_t r = tb.size();
    if (r == 0) return Int(1);
    QMat A = to_q(transpose(tb));
    IMat coords;
    for (const auto& b : src.lattice_basis()) {
        auto c = solve(A, to_q(apply(f, b)));
        if (!c) throw InvariantViolation("image leaves the target span");
        IVec ic(r);
        for (size_t i = 0; i < r; ++i) {
            if ((*c)[i].get_den() != 1) throw InvariantViolation("image is not a lattice vector");
            ic[i] = (*c)[i].get_num();
        }
        coords.push_back(ic);
    }
    return lattice_index(r, coords);
}

// x with f.x = 1 for a primitive integer vector f
IVec bezout(const IVec& f) {
    size_t n = f.size();
    IVec x(n, Int(0));
    Int g = 0;
    for (size_t i = 0; i < n; ++i) {
        if (f[i] == 0) continue;
        if (g == 0) {
            g = f[i];
            x[i] = 1;
            continue;
        }
        mpz_class ng, s, t;
        mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), f[i].get_mpz_t());
        for (size_t j = 0; j < i; ++j) x[j] *= s;
        x[i] = t;
        g = ng;
    }
    if (g < 0) {
        for (auto& e : x) e = -e;
        g = -g;
    }
    if (g != 1) throw InvariantViolation("functional is not primitive");
    return x;
}

// lattice vector of N_sigma generating N_sigma / N_nu and pointing into sigma
IVec primitive_generator(const Cone& sigma, const Cone& nu) {
    IMat bs = sigma.lattice_basis();
    size_t r = bs.size();
    QMat A = to_q(transpose(bs));
    IMat nu_c;
    for (const auto& b : nu.lattice_basis()) {
        auto c = solve(A, to_q(b));
        IVec ic(r);
        for (size_t i = 0; i < r; ++i) ic[i] = (*c)[i].get_num();
        nu_c.push_back(ic);
    }
    IMat ker = integer_kernel(nu_c, r);
    if (ker.size() != 1) throw InvariantViolation("cone is not a facet");
    IVec f = ker[0];
    // orient f positively on sigma
    for (const auto& ray : sigma.rays()) {
        auto c = solve(A, to_q(ray));
        Rat s = dot(f, *c);
        if (s < 0) {
            f = -f;
            break;
        }
        if (s > 0) break;
    }
    IVec x = bezout(f);
    IVec u(sigma.ambient(), Int(0));
    for (size_t i = 0; i < r; ++i) u = u + scale(bs[i], x[i]);
    return u;
}

}  // namespace

bool check_balancing(const MinkowskiWeight& w, std::string* why) {
    const Fan& F = *w.fan;
    size_t n = F.ambient();
    if (w.codim >= n) return true;
    for (auto nu : F.of_codim(w.codim + 1)) {
        IVec sum(n, Int(0));
        QVec qs(n, Rat(0));
        for (auto s : F.star_of(nu)) {
            if (F.cone(s).codim() != w.codim) continue;
            Rat c = w.at(s);
            if (c == 0) continue;
            qs = qs + scale(to_q(primitive_generator(F.cone(s), F.cone(nu))), c);
        }
        IMat sg = F.cone(nu).lattice_basis();
        bool ok = sg.empty() ? is_zero(qs) : in_span(to_q(sg), qs);
        if (!ok) {
            if (why) *why = "unbalanced at " + F.cone(nu).key();
            return false;
        }
    }
    return true;
}

MinkowskiWeight fundamental_class(FanPtr fan) {
    MinkowskiWeight w{fan, 0, {}};
    for (auto i : fan->of_codim(0)) w.entries[i] = 1;
    return w;
}

ChowCycle orbit_closure(FanPtr fan, size_t cone) {
    ChowCycle c{fan, fan->cone(cone).dim(), {}};
    c.terms[cone] = 1;
    return c;
}

MinkowskiWeight cup(const MinkowskiWeight& a, const MinkowskiWeight& b, const Displacement& v) {
    if (a.fan.get() != b.fan.get()) throw std::invalid_argument("weights on different fans");
    const Fan& F = *a.fan;
    size_t n = F.ambient();
    if (v.v.size() != n) throw std::invalid_argument("rank mismatch");
    MinkowskiWeight out{a.fan, a.codim + b.codim, {}};
    if (out.codim > n) return out;
    for (auto g : F.of_codim(out.codim)) {
        Rat s = 0;
        for (auto si : F.star_of(g)) {
            const Cone& sg = F.cone(si);
            if (sg.codim() != a.codim) continue;
            Rat av = a.at(si);
            if (av == 0) continue;
            for (auto ti : F.star_of(g)) {
                const Cone& tg = F.cone(ti);
                if (tg.codim() != b.codim) continue;
                Rat bv = b.at(ti);
                if (bv == 0) continue;
                if (!good_triple(sg, tg, v)) continue;
                auto idx = sum_index(sg, tg);
                if (!idx) throw NonGenericDisplacement();
                s += av * bv * Rat(*idx);
            }
        }
        if (s != 0) out.entries[g] = s;
    }
    return out;
}

ChowCycle cap(const MinkowskiWeight& w, const ChowCycle& B, const Displacement& v) {
    if (w.fan.get() != B.fan.get()) throw std::invalid_argument("weight and cycle on different fans");
    const Fan& F = *w.fan;
    size_t p = w.codim;
    ChowCycle out{w.fan, B.cone_dim + p, {}};
    if (out.cone_dim > F.ambient()) return out;
    for (const auto& [si, lam] : B.terms) {
        if (lam == 0) continue;
        for (auto ki : F.star_of(si)) {
            const Cone& kappa = F.cone(ki);
            if (kappa.dim() != out.cone_dim) continue;
            Rat s = 0;
            for (auto ri : F.star_of(si)) {
                const Cone& rho = F.cone(ri);
                if (rho.codim() != p) continue;
                Rat wv = w.at(ri);
                if (wv == 0) continue;
                if (!good_triple(rho, kappa, v)) continue;
                auto idx = sum_index(rho, kappa);
                if (!idx) throw NonGenericDisplacement();
                s += wv * Rat(*idx);
            }
            if (s != 0) out.terms[ki] += lam * s;
        }
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second == 0 ? out.terms.erase(it) : std::next(it);
    return out;
}

MinkowskiWeight pullback_weight(const LatticeMap& f, FanPtr source, const MinkowskiWeight& w) {
    const Fan& T = *w.fan;
    if (f.source != source->ambient() || f.target != T.ambient()) throw std::invalid_argument("lattice mismatch");
    if (rank(f.matrix) != f.target) throw std::runtime_error("pullback undefined: use Künneth route");
    for (auto si : source->maximal())
        if (!T.carrier(source->cone(si).image(f.matrix))) throw std::runtime_error("not a fan morphism");
    MinkowskiWeight out{source, w.codim, {}};
    for (auto si : source->of_codim(w.codim)) {
        const Cone& s = source->cone(si);
        Cone img = s.image(f.matrix);
        auto ti = T.carrier(img);
        if (!ti) throw std::runtime_error("not a fan morphism");
        const Cone& t = T.cone(*ti);
        if (t.codim() != w.codim || img.dim() != t.dim()) continue;
        Rat c = w.at(*ti);
        if (c == 0) continue;
        auto idx = image_index(f.matrix, s, t);
        if (!idx) continue;
        out.entries[si] = c * Rat(*idx);
    }
    return out;
}

MinkowskiWeight projective_hyperplane(FanPtr pm) {
    MinkowskiWeight w{pm, 1, {}};
    for (auto i : pm->of_codim(1)) w.entries[i] = 1;
    return w;
}

MinkowskiWeight projective_hyperplane_power(FanPtr pm, size_t k) {
    if (k == 0) return fundamental_class(pm);
    MinkowskiWeight h = projective_hyperplane(pm);
    MinkowskiWeight acc = h;
    for (size_t i = 1; i < k; ++i)
        acc = with_generic(pm->ambient(), 17 + i, [&](const Displacement& v) { return cup(acc, h, v); });
    return acc;
}

MinkowskiWeight hyperplane_pullback(const LatticePolytope& P, FanPtr pt0) {
    MinkowskiWeight w{pt0, 1, {}};
    for (auto i : pt0->of_codim(1))
        if (min_set(P.from_n(pt0->cone(i).relint_point())).size() == 2) w.entries[i] = 1;
    return w;
}

MinkowskiWeight point_class(FanPtr x) {
    MinkowskiWeight w{x, x->ambient(), {}};
    w.entries[x->require(Cone::zero(x->ambient()))] = 1;
    return w;
}

QVec UniversalFamily::coords(const QVec& first, const QVec& second) const {
    QVec rhs = first;
    rhs.insert(rhs.end(), second.begin(), second.end());
    auto c = solve(to_q(transpose(kernel)), rhs);
    if (!c) throw std::invalid_argument("point is not in the fiber product");
    return *c;
}

UniversalFamily build_universal_family(const LatticePolytope& P, const ToricSurfaceFan& X, FanPtr pt0,
                                       const Budget& budget) {
    size_t m = P.m();
    auto sec = enumerate_regular_subdivisions(P, budget);
    Fan xd = common_refinement(projective_fan(m), sec.fan);
    IMat D = P.dagger_projection();
    size_t md = D.size();
    std::vector<Cone> imgs;
    for (auto i : sec.fan.maximal()) imgs.push_back(sec.fan.cone(i).image(D));
    Fan pdag = Fan::from_cones(md, imgs);
    LatticeMap f(m, md, D);
    auto fp = fiber_product_fans(f, f, *pt0, xd, pdag);
    size_t k = fp.kernel.size();
    IMat B = fiber_basis(P);
    size_t r = B.size();
    QMat BT = to_q(transpose(B));
    IMat H(r, IVec(k));
    for (size_t j = 0; j < k; ++j) {
        QVec w(m);
        for (size_t i = 0; i < m; ++i) w[i] = Rat(fp.to_second.matrix[i][j] - fp.to_first.matrix[i][j]);
        auto c = solve(BT, w);
        if (!c) throw InvariantViolation("fiber difference outside N_X");
        for (size_t i = 0; i < r; ++i) {
            if ((*c)[i].get_den() != 1) throw InvariantViolation("fiber basis is not saturated");
            H[i][j] = (*c)[i].get_num();
        }
    }
    UniversalFamily U;
    U.x_fan = std::make_shared<const Fan>(X.fan);
    U.kernel = fp.kernel;
    U.to_pt0 = fp.to_first;
    U.to_xdagger = fp.to_second;
    U.to_x = LatticeMap(k, r, H);
    U.fan = std::make_shared<const Fan>(pullback_fan_structure(U.to_x, X.fan, fp.fan));
    if (U.fan->size() > budget.max_cones) throw BudgetExceeded("enumeration budget exceeded");
    return U;
}

MinkowskiWeight universal_curve_weight(const LatticePolytope& P, const UniversalFamily& U, FanPtr pt0) {
    const Fan& F = *U.fan;
    MinkowskiWeight w{U.fan, 1, {}};
    for (auto i : F.of_codim(1)) {
        const Cone& c = F.cone(i);
        if (c.image(U.to_pt0.matrix).dim() != pt0->ambient()) continue;
        QVec g = U.to_xdagger(c.relint_point());
        auto ms = min_set(P.from_n(g));
        if (ms.size() != 2) continue;
        const Point& a = P.point(ms[0]);
        const Point& b = P.point(ms[1]);
        w.entries[i] = Rat(static_cast<long>(std::gcd(std::labs(a[0] - b[0]), std::labs(a[1] - b[1]))));
    }
    return w;
}

ChowCycle flat_pullback(const UniversalFamily& U, FanPtr pt0, const ChowCycle& B) {
    const Fan& F = *U.fan;
    ChowCycle out{U.fan, B.cone_dim, {}};
    for (auto ki : F.of_dim(B.cone_dim)) {
        const Cone& k = F.cone(ki);
        auto ti = pt0->locate(U.to_pt0(k.relint_point()));
        if (!ti) throw InvariantViolation("projection leaves the fan");
        auto it = B.terms.find(*ti);
        if (it == B.terms.end()) continue;
        if (k.image(U.to_pt0.matrix).dim() != k.dim()) continue;
        auto idx = image_index(U.to_pt0.matrix, k, pt0->cone(*ti));
        if (!idx) continue;
        out.terms[ki] += it->second * Rat(*idx);
    }
    return out;
}

ChowCycle pushforward(const UniversalFamily& U, FanPtr pt0, const ChowCycle& C) {
    size_t m = pt0->ambient();
    ChowCycle out{pt0, C.cone_dim >= 2 ? C.cone_dim - 2 : 0, {}};
    for (const auto& [ki, a] : C.terms) {
        const Cone& k = U.fan->cone(ki);
        auto ti = pt0->locate(U.to_pt0(k.relint_point()));
        if (!ti) throw InvariantViolation("projection leaves the fan");
        if (k.dim() != pt0->cone(*ti).dim() + 2) continue;
        IMat g = transpose(U.to_pt0.matrix);
        for (const auto& b : pt0->cone(*ti).lattice_basis()) g.push_back(b);
        auto idx = lattice_index(m, g);
        if (!idx) continue;
        out.terms[*ti] += a * Rat(*idx);
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second == 0 ? out.terms.erase(it) : std::next(it);
    return out;
}

Tau0Result tau0_direct(const LatticePolytope& P, const UniversalFamily& U, FanPtr pt0, const ChowCycle& B,
                       const Displacement& v_cup, const Displacement& v_cap) {
    if (B.fan.get() != pt0.get()) throw std::invalid_argument("cycle not on the PT0 fan");
    MinkowskiWeight c1 = universal_curve_weight(P, U, pt0);
    MinkowskiWeight pt = pullback_weight(U.to_x, U.fan, point_class(U.x_fan));
    MinkowskiWeight w = cup(c1, pt, v_cup);
    ChowCycle C = cap(w, flat_pullback(U, pt0, B), v_cap);
    return {pushforward(U, pt0, C), w};
}

Rat point_insertion_power(const LatticePolytope& P, FanPtr pt0, size_t sigma, size_t k, const Displacement& v) {
    if (pt0->cone(sigma).codim() != k) throw std::invalid_argument("codim mismatch");
    size_t m = P.m();
    auto pm = std::make_shared<const Fan>(projective_fan(m));
    MinkowskiWeight hk = projective_hyperplane_power(pm, k);
    MinkowskiWeight ck = pullback_weight(LatticeMap::identity(m), pt0, hk);
    return cap(ck, orbit_closure(pt0, sigma), v).degree();
}

MinkowskiWeight boundary_point_weight(unsigned d, FanPtr pd) {
    if (d < 1) throw std::invalid_argument("invalid d");
    if (pd->ambient() != d) throw std::invalid_argument("rank mismatch");
    IVec u = fiber_basis(LatticePolytope::segment(static_cast<long>(d)))[0];
    MinkowskiWeight w{pd, d - 1, {}};
    for (const IVec& r : {u, IVec(-u)}) {
        auto i = pd->index_of(Cone::from_generators(d, {r}));
        if (!i) throw InvariantViolation("single-point line is not a union of cones");
        w.entries[*i] = Rat(factorial(d));
    }
    return w;
}

Int normalized_volume(const IMat& points, size_t k) {
    if (points.empty()) return 0;
    if (k == 0) return 1;
    IMat diffs;
    for (const auto& p : points) diffs.push_back(p - points[0]);
    if (rank(diffs) < k) return 0;
    if (k == 1) {
        Int lo = points[0][0], hi = points[0][0];
        for (const auto& p : points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    IMat hom;
    for (const auto& p : points) {
        IVec h{Int(1)};
        h.insert(h.end(), p.begin(), p.end());
        hom.push_back(h);
    }
    Cone C = Cone::from_generators(k + 1, hom);
    const IVec& o = hom[0];
    Int total = 0;
    for (const auto& a : C.facets()) {
        IVec c(a.begin() + 1, a.end());
        Int g = gcd_of(c);
        Int h = dot(a, o);
        if (h == 0) continue;
        if (h % g != 0) throw InvariantViolation("facet height is not integral");
        h /= g;
        IMat face;
        for (const auto& p : hom)
            if (dot(a, p) == 0) face.push_back(IVec(p.begin() + 1, p.end()));
        IMat basis = integer_kernel({c}, k);
        QMat A = to_q(transpose(basis));
        IMat coords;
        for (const auto& p : face) {
            auto s = solve(A, to_q(p - face[0]));
            if (!s) throw InvariantViolation("facet point outside the facet lattice");
            IVec ic(k - 1);
            for (size_t i = 0; i < k - 1; ++i) ic[i] = (*s)[i].get_num();
            coords.push_back(ic);
        }
        total += h * normalized_volume(coords, k - 1);
    }
    return total;
}

size_t single_point_exponent(unsigned d) {
    size_t m = static_cast<size_t>((d + 1) * (d + 2) / 2 - 1);
    return m - 3 * (d - 1);
}

namespace {

void check_single_point_degree(unsigned d) {
    // the insertion count (d-4)(d-1)/2 must be a non-negative integer
    if (d < 1 || d == 2 || d == 3) throw std::invalid_argument("invalid d");
}

IMat second_differences(const LatticePolytope& P, size_t face) {
    const auto& q = P.edges()[face];
    IMat rows;
    for (size_t t = 1; t + 1 < q.size(); ++t) {
        IVec c(P.size(), Int(0));
        c[q[t - 1]] += 1;
        c[q[t]] -= 2;
        c[q[t + 1]] += 1;
        rows.push_back(P.form_on_n(c));
    }
    return rows;
}

}  // namespace

SinglePointIntegral integral_single_point(unsigned d, const Budget& budget) {
    check_single_point_degree(d);
    return single_point_lazy(d, budget);
}

SinglePointIntegral single_point_lazy(unsigned d, const Budget& budget) {
    if (d < 1) throw std::invalid_argument("invalid d");
    LatticePolytope P = LatticePolytope::triangle(static_cast<long>(d));
    if (P.size() > 4 * budget.max_points) throw BudgetExceeded("enumeration budget exceeded");
    size_t m = P.m();
    SinglePointIntegral out;
    out.exponent = single_point_exponent(d);
    out.weight_product = 1;
    out.transversality = 1;
    IVec u = fiber_basis(LatticePolytope::segment(static_cast<long>(d)))[0];
    IMat acc_rows;
    for (size_t f = 0; f < P.edges().size(); ++f) {
        IMat rows = second_differences(P, f);
        IMat L = integer_kernel(rows, m);
        // boundary weight d! times [Z u : ev(L ∩ N)]
        LatticeMap ev = ev_map(P, f);
        Int g = 0;
        for (const auto& b : L) {
            IVec img = ev(b);
            Int s = 0;
            for (size_t i = 0; i < img.size(); ++i)
                if (u[i] != 0) {
                    s = img[i] / u[i];
                    break;
                }
            if (img != scale(u, s)) throw InvariantViolation("face restriction leaves the single-point line");
            g = gcd(g, s);
        }
        if (g == 0) throw InvariantViolation("degenerate face restriction");
        out.weight_product *= factorial(d) * abs(g);
        if (!acc_rows.empty()) {
            IMat A = integer_kernel(acc_rows, m);
            IMat both = A;
            for (const auto& b : L) both.push_back(b);
            IMat all = acc_rows;
            all.insert(all.end(), rows.begin(), rows.end());
            if (rank(all) != rank(acc_rows) + rank(rows)) throw InvariantViolation("supports not transverse");
            auto idx = lattice_index(m, both);
            if (!idx) throw InvariantViolation("supports not transverse");
            out.transversality *= *idx;
        }
        acc_rows.insert(acc_rows.end(), rows.begin(), rows.end());
    }
    IMat L = integer_kernel(acc_rows, m);
    size_t k = L.size();
    if (k != out.exponent) throw InvariantViolation("common support has unexpected dimension");
    IMat pts{IVec(k, Int(0))};
    for (size_t i = 0; i < m; ++i) {
        IVec a(k);
        for (size_t j = 0; j < k; ++j) a[j] = L[j][i];
        pts.push_back(a);
    }
    out.linear_degree = normalized_volume(pts, k);
    out.value = Rat(out.weight_product * out.transversality * out.linear_degree);
    Int f = factorial(d);
    out.formula = Rat(f * f * f);
    return out;
}

Rat integral_single_point_global(unsigned d, const Displacement& v_cup, const Displacement& v_cap,
                                 const Budget& budget) {
    LatticePolytope P = LatticePolytope::triangle(static_cast<long>(d));
    ToricSurfaceFan X = normal_fan(P);
    auto pt0 = std::make_shared<const Fan>(build_pt0_fan(P, X, budget));
    size_t m = P.m();
    auto seg = LatticePolytope::segment(static_cast<long>(d));
    auto pd = std::make_shared<const Fan>(build_xdagger_fan(seg, budget));
    MinkowskiWeight a = boundary_point_weight(d, pd);
    MinkowskiWeight W = fundamental_class(pt0);
    for (size_t f = 0; f < P.edges().size(); ++f) {
        MinkowskiWeight e = pullback_weight(ev_map(P, f), pt0, a);
        W = cup(W, e, v_cup);
    }
    ChowCycle C = cap(W, orbit_closure(pt0, pt0->require(Cone::zero(m))), v_cap);
    size_t k = single_point_exponent(d);
    Rat total = 0;
    for (const auto& [ti, lam] : C.terms) total += lam * point_insertion_power(P, pt0, ti, k, v_cap);
    return total;
}

}  // namespace troppt
