#include "troppt/acceptance.hpp"

#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "troppt/euler.hpp"
#include "troppt/intersection.hpp"

namespace troppt {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void emit(const std::function<void(const std::string&)>& log, const std::string& s) {
    if (log) log(s);
}

Rat table_value(unsigned d, unsigned n) {
    static const char* table[4][4] = {{"20", "96", "400", "3656/3"},
                                      {"20", "224", "1155", "23948/3"},
                                      {"456", "9524", "52023", "940933/3"},
                                      {"32", "56576", "-865699", "-28138234/3"}};
    return parse_rat(table[d - 1][n]);
}

CriterionResult table_reproduction(const std::function<void(const std::string&)>& log, const AcceptanceLimits& lim) {
    CriterionResult r{1, "euler-satake-table", true, "", 0, lim.table};
    auto t0 = Clock::now();
    std::ostringstream det;
    for (unsigned d = 1; d <= 2; ++d) {
        auto row = euler_satake_row(d, 3);
        for (unsigned n = 0; n <= 3; ++n) {
            bool ok = row[n] == table_value(d, n);
            if (!ok) {
                r.pass = false;
                det << " (1," << d << ") n=" << n << " got " << to_string(row[n]) << " want " << to_string(table_value(d, n))
                    << ";";
            }
        }
    }
    r.seconds = since(t0);
    for (unsigned d = 3; d <= 4; ++d) {
        auto row = euler_satake_row(d, 3);
        for (unsigned n = 0; n <= 3; ++n)
            if (row[n] != table_value(d, n))
                emit(log, "discrepancy (1," + std::to_string(d) + ") n=" + std::to_string(n) + ": computed " +
                              to_string(row[n]) + ", table " + to_string(table_value(d, n)));
    }
    if (r.seconds > lim.table) {
        r.pass = false;
        det << " over time limit;";
    }
    r.detail = r.pass ? "columns (1,1) and (1,2) reproduced" : "mismatch:" + det.str();
    return r;
}

CriterionResult single_point(const AcceptanceLimits& lim) {
    CriterionResult r{2, "single-point-integral", true, "", 0, lim.single_point_large};
    std::ostringstream det;
    auto t0 = Clock::now();
    auto a = integral_single_point(1);
    double ta = since(t0);
    det << "d=1: " << to_string(a.value) << " (" << ta << "s)";
    if (a.value != 1 || ta > lim.single_point_small) r.pass = false;
    auto t1 = Clock::now();
    auto b = integral_single_point(4);
    double tb = since(t1);
    det << "; d=4: " << to_string(b.value) << " = weights " << to_string(b.weight_product) << " x index "
        << to_string(b.transversality) << " x degree " << to_string(b.linear_degree) << ", target "
        << to_string(b.formula) << " (" << tb << "s)";
    if (b.value != Rat(13824) || tb > lim.single_point_large) r.pass = false;
    r.seconds = since(t0);
    r.detail = det.str();
    return r;
}

// vertex count, sorted valences, and edge directions up to sign
std::string curve_shape(const TropicalCurve& g) {
    std::vector<size_t> val(g.vertices.size(), 0);
    std::multiset<std::string> dirs;
    for (const auto& e : g.edges) {
        ++val[e.a];
        ++val[e.b];
        IVec d = e.dir;
        if (d[0] < 0 || (d[0] == 0 && d[1] < 0)) d = -d;
        dirs.insert(vec_string(d));
    }
    for (const auto& ray : g.rays) ++val[ray.v];
    std::sort(val.begin(), val.end());
    std::ostringstream os;
    os << g.vertices.size() << "v";
    for (auto v : val) os << " " << v;
    for (const auto& d : dirs) os << " " << d;
    os << " rays=" << g.rays.size();
    return os.str();
}

CriterionResult square_example(const AcceptanceLimits& lim) {
    CriterionResult r{3, "unit-square-subdivisions", true, "", 0, lim.square_example};
    auto t0 = Clock::now();
    std::ostringstream det;
    LatticePolytope P = LatticePolytope::unit_square();
    auto sec = enumerate_regular_subdivisions(P);
    det << sec.fan.size() << " subdivisions, " << sec.maximal.size() << " maximal";
    if (sec.fan.size() != 3 || sec.maximal.size() != 2) r.pass = false;
    QVec zero(4, Rat(0));
    auto g0 = dual_tropical_curve(P, zero);
    bool central = g0.vertices.size() == 1 && g0.edges.empty() && g0.rays.size() == 4 && g0.vertices[0][0] == 0 &&
                   g0.vertices[0][1] == 0 && g0.balanced();
    std::set<std::string> dirs;
    for (const auto& ray : g0.rays) {
        dirs.insert(vec_string(ray.dir));
        if (ray.weight != 1) central = false;
    }
    if (dirs != std::set<std::string>{vec_string(ivec({1, 0})), vec_string(ivec({-1, 0})), vec_string(ivec({0, 1})),
                                      vec_string(ivec({0, -1}))})
        central = false;
    det << "; zero lift " << (central ? "one 4-valent vertex at the origin" : "NOT the central diagram");
    if (!central) r.pass = false;
    std::set<std::string> shapes{curve_shape(g0)};
    for (Point corner : {Point{1, 1}, Point{1, 0}}) {
        QVec phi(4, Rat(0));
        phi[*P.find(corner)] = 1;
        auto g = dual_tropical_curve(P, phi);
        if (!g.balanced() || g.vertices.size() != 2 || g.edges.size() != 1) r.pass = false;
        shapes.insert(curve_shape(g));
    }
    det << "; " << shapes.size() << " combinatorial types";
    if (shapes.size() != 3) r.pass = false;
    r.seconds = since(t0);
    if (r.seconds > lim.square_example) r.pass = false;
    r.detail = det.str();
    return r;
}

MinkowskiWeight power(const MinkowskiWeight& c, size_t k, const Displacement& v) {
    if (k == 0) return fundamental_class(c.fan);
    MinkowskiWeight a = c;
    for (size_t i = 1; i < k; ++i) a = cup(a, c, v);
    return a;
}

CriterionResult tau0_equality(const AcceptanceLimits& lim) {
    CriterionResult r{4, "tau0-hyperplane-equality", true, "", 0, lim.tau0};
    auto t0 = Clock::now();
    std::ostringstream det;
    LatticePolytope P = LatticePolytope::unit_square();
    ToricSurfaceFan X = normal_fan(P);
    auto pt0 = std::make_shared<const Fan>(build_pt0_fan(P, X));
    auto U = build_universal_family(P, X, pt0);
    size_t m = P.m(), k = U.fan->ambient();
    ChowCycle B = orbit_closure(pt0, pt0->require(Cone::zero(m)));
    MinkowskiWeight c = hyperplane_pullback(P, pt0);
    size_t agree = 0;
    for (uint64_t s = 1; s <= 5; ++s) {
        bool ok = with_generic(k, 1000 * s, [&](const Displacement& v) {
            return with_generic(k, 1000 * s + 7, [&](const Displacement& vc) {
                auto direct = tau0_direct(P, U, pt0, B, vc, v);
                Displacement u;
                u.v = U.to_pt0(v.v);
                ChowCycle ref = cap(c, B, u);
                Displacement w = generic_displacement(m, 77 * s + 3);
                MinkowskiWeight cm = power(c, m - 1, w);
                ChowCycle a = cap(cm, direct.cycle, w);
                ChowCycle b = cap(cm, ref, w);
                det << (s > 1 ? "; " : "") << "v" << s << ": " << a.terms.size() << " top terms, degrees "
                    << to_string(a.degree()) << "/" << to_string(b.degree());
                return a == b;
            });
        });
        agree += ok;
    }
    r.pass = agree == 5;
    r.seconds = since(t0);
    if (r.seconds > lim.tau0) r.pass = false;
    r.detail = std::to_string(agree) + "/5 displacements agree (" + det.str() + ")";
    return r;
}

CriterionResult boundary_weights(const AcceptanceLimits& lim) {
    CriterionResult r{5, "boundary-point-weight", true, "", 0, lim.boundary_weight};
    auto t0 = Clock::now();
    std::ostringstream det;
    for (unsigned d = 2; d <= 5; ++d) {
        auto pd = std::make_shared<const Fan>(build_xdagger_fan(LatticePolytope::segment(static_cast<long>(d))));
        auto w = boundary_point_weight(d, pd);
        size_t rays = 0;
        bool values = true;
        for (const auto& [i, v] : w.entries) {
            if (v == 0) continue;
            rays += pd->cone(i).dim() == 1;
            if (v != Rat(factorial(d)) || pd->cone(i).dim() != 1) values = false;
        }
        bool bal = check_balancing(w);
        det << (d > 2 ? "; " : "") << "d=" << d << " balanced=" << bal << " rays=" << rays;
        if (!bal || !values || rays != 2) r.pass = false;
    }
    r.seconds = since(t0);
    if (r.seconds > lim.boundary_weight) r.pass = false;
    r.detail = det.str();
    return r;
}

// set partitions of {0..n-1} as block sizes, via restricted growth strings
void block_sizes(size_t n, std::vector<size_t>& blocks, size_t i, std::vector<std::vector<size_t>>& out) {
    if (i == n) {
        out.push_back(blocks);
        return;
    }
    for (size_t b = 0; b <= blocks.size(); ++b) {
        if (b == blocks.size())
            blocks.push_back(1);
        else
            ++blocks[b];
        block_sizes(n, blocks, i + 1, out);
        if (blocks[b] == 1 && b + 1 == blocks.size())
            blocks.pop_back();
        else
            --blocks[b];
    }
}

// Moebius inversion over the lattice of set partitions
Rat config_by_partitions(unsigned n, const Rat& x) {
    std::vector<std::vector<size_t>> parts;
    std::vector<size_t> blocks;
    block_sizes(n, blocks, 0, parts);
    Rat s = 0;
    for (const auto& p : parts) {
        Rat mu = 1, xp = 1;
        for (size_t b : p) {
            mu *= Rat(factorial(static_cast<unsigned>(b - 1))) * ((b - 1) % 2 ? -1 : 1);
            xp *= x;
        }
        s += mu * xp;
    }
    return s;
}

struct Check {
    std::ostringstream det;
    bool pass = true;
    void operator()(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            det << " failed: " << what << ";";
        }
    }
};

void check_weight(Check& chk, const MinkowskiWeight& w, const std::string& name, size_t& count) {
    std::string why;
    chk(check_balancing(w, &why), "balancing of " + name + " " + why);
    ++count;
}

Fan product_p1(size_t k) {
    std::vector<Cone> cs;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        IMat g;
        for (size_t i = 0; i < k; ++i) {
            IVec e(k, Int(0));
            e[i] = (mask >> i) & 1 ? -1 : 1;
            g.push_back(e);
        }
        cs.push_back(Cone::from_generators(k, g));
    }
    return Fan::from_cones(k, cs);
}

Fan hirzebruch(long a) {
    IMat rays{ivec({1, 0}), ivec({0, 1}), ivec({-1, a}), ivec({0, -1})};
    std::vector<Cone> cs;
    for (size_t i = 0; i < 4; ++i) cs.push_back(Cone::from_generators(2, {rays[i], rays[(i + 1) % 4]}));
    return Fan::from_cones(2, cs);
}

// codim-1 generators of a small complete fan: all balanced ray weights in rank two,
// otherwise pullbacks of the P^1 point class along coordinate projections that are fan morphisms
std::vector<MinkowskiWeight> divisor_classes(FanPtr F) {
    std::vector<MinkowskiWeight> out;
    size_t n = F->ambient();
    if (n == 2) {
        auto rays = F->of_dim(1);
        IMat M(2, IVec(rays.size()));
        for (size_t j = 0; j < rays.size(); ++j)
            for (size_t i = 0; i < 2; ++i) M[i][j] = F->cone(rays[j]).rays()[0][i];
        for (const auto& k : integer_kernel(M, rays.size())) {
            MinkowskiWeight w{F, 1, {}};
            for (size_t j = 0; j < rays.size(); ++j)
                if (k[j] != 0) w.entries[rays[j]] = Rat(k[j]);
            out.push_back(w);
        }
        return out;
    }
    auto p1 = std::make_shared<const Fan>(projective_fan(1));
    for (size_t i = 0; i < n; ++i) {
        IMat row(1, IVec(n, Int(0)));
        row[0][i] = 1;
        LatticeMap f(n, 1, row);
        try {
            out.push_back(pullback_weight(f, F, point_class(p1)));
        } catch (const std::runtime_error&) {
        }
    }
    return out;
}

CriterionResult properties(const AcceptanceLimits& lim) {
    CriterionResult r{6, "property-suites", true, "", 0, lim.properties};
    auto t0 = Clock::now();
    Check chk;
    size_t weights = 0;

    // weights produced on the unit square and its universal family
    {
        LatticePolytope P = LatticePolytope::unit_square();
        ToricSurfaceFan X = normal_fan(P);
        auto pt0 = std::make_shared<const Fan>(build_pt0_fan(P, X));
        size_t m = P.m();
        auto c = hyperplane_pullback(P, pt0);
        check_weight(chk, c, "hyperplane pullback", weights);
        std::vector<MinkowskiWeight> cc;
        for (uint64_t s = 1; s <= 5; ++s) {
            auto w = with_generic(m, s, [&](const Displacement& v) { return cup(c, c, v); });
            check_weight(chk, w, "c^2", weights);
            cc.push_back(w);
        }
        for (size_t i = 1; i < cc.size(); ++i) chk(cc[i] == cc[0], "displacement independence of c^2");
        std::set<std::string> degs;
        for (uint64_t s = 1; s <= 5; ++s) {
            Rat d = with_generic(m, 100 + s, [&](const Displacement& v) {
                auto c3 = cup(cup(c, c, v), c, v);
                check_weight(chk, c3, "c^3", weights);
                return cap(c3, orbit_closure(pt0, pt0->require(Cone::zero(m))), v).degree();
            });
            degs.insert(to_string(d));
            chk(d == 1, "degree of c^3 against the projective degree");
        }
        chk(degs.size() == 1, "displacement independence of deg c^3");
        auto pm = std::make_shared<const Fan>(projective_fan(m));
        for (size_t k = 0; k <= m; ++k) {
            auto hk = projective_hyperplane_power(pm, k);
            check_weight(chk, hk, "H^k", weights);
            auto pk = pullback_weight(LatticeMap::identity(m), pt0, hk);
            check_weight(chk, pk, "pullback of H^k", weights);
        }
        auto U = build_universal_family(P, X, pt0);
        auto c1 = universal_curve_weight(P, U, pt0);
        check_weight(chk, c1, "universal curve class", weights);
        auto pt = pullback_weight(U.to_x, U.fan, point_class(U.x_fan));
        check_weight(chk, pt, "point pullback", weights);
        auto cw = with_generic(U.fan->ambient(), 9, [&](const Displacement& v) { return cup(c1, pt, v); });
        check_weight(chk, cw, "c1 cup point", weights);
    }
    // boundary pullbacks on the degree-two triangle
    {
        LatticePolytope P = LatticePolytope::triangle(2);
        ToricSurfaceFan X = normal_fan(P);
        auto pt0 = std::make_shared<const Fan>(build_pt0_fan(P, X));
        auto pd = std::make_shared<const Fan>(build_xdagger_fan(LatticePolytope::segment(2)));
        auto a = boundary_point_weight(2, pd);
        check_weight(chk, a, "boundary point weight", weights);
        MinkowskiWeight W = fundamental_class(pt0);
        for (size_t f = 0; f < P.edges().size(); ++f) {
            auto e = pullback_weight(ev_map(P, f), pt0, a);
            check_weight(chk, e, "ev pullback", weights);
            W = with_generic(P.m(), 40 + f, [&](const Displacement& v) { return cup(W, e, v); });
            check_weight(chk, W, "product of ev pullbacks", weights);
        }
    }
    // ring axioms on small complete fans
    size_t ring_checks = 0;
    {
        std::vector<std::pair<FanPtr, bool>> fans{{std::make_shared<const Fan>(projective_fan(2)), true},
                                                  {std::make_shared<const Fan>(projective_fan(3)), true},
                                                  {std::make_shared<const Fan>(product_p1(2)), false},
                                                  {std::make_shared<const Fan>(product_p1(3)), false},
                                                  {std::make_shared<const Fan>(hirzebruch(1)), false},
                                                  {std::make_shared<const Fan>(hirzebruch(2)), false}};
        for (const auto& [F, projective] : fans) {
            size_t n = F->ambient();
            std::vector<MinkowskiWeight> gens;
            if (projective && n > 2) gens.push_back(projective_hyperplane(F));
            for (auto& w : divisor_classes(F)) gens.push_back(w);
            auto one = fundamental_class(F);
            for (size_t i = 0; i < gens.size(); ++i) {
                check_weight(chk, gens[i], "divisor class", weights);
                for (uint64_t s = 1; s <= 3; ++s) {
                    Displacement v = generic_displacement(n, 500 + s);
                    chk(cup(one, gens[i], v) == gens[i], "unit");
                    for (size_t j = 0; j < gens.size(); ++j) {
                        auto ab = cup(gens[i], gens[j], v);
                        chk(ab == cup(gens[j], gens[i], v), "commutativity");
                        check_weight(chk, ab, "divisor product", weights);
                        for (size_t k = 0; k < gens.size(); ++k)
                            chk(cup(ab, gens[k], v) == cup(gens[i], cup(gens[j], gens[k], v), v), "associativity");
                        ++ring_checks;
                    }
                }
            }
        }
    }
    // tropical balancing and duality round trip
    size_t lifts = 0;
    {
        std::vector<LatticePolytope> polys{LatticePolytope::unit_square(), LatticePolytope::rectangle(1, 2),
                                           LatticePolytope::triangle(2), LatticePolytope::triangle(3),
                                           LatticePolytope({{0, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {1, 0}})};
        std::mt19937_64 rng(20240611);
        for (size_t it = 0; it < 200; ++it) {
            const auto& P = polys[it % polys.size()];
            QVec phi(P.size());
            for (auto& x : phi) x = Rat(static_cast<long>(rng() % 11) - 5);
            auto g = dual_tropical_curve(P, phi);
            chk(g.balanced(), "curve balancing");
            std::set<std::vector<size_t>> cells;
            for (const auto& v : g.vertices) cells.insert(argmin_set(P, phi, v));
            auto S = induced_subdivision(P, phi);
            chk(std::vector<std::vector<size_t>>(cells.begin(), cells.end()) == S.cells, "duality round trip");
            ++lifts;
        }
    }
    // configuration spaces and punctual counts
    for (unsigned n = 1; n <= 6; ++n)
        for (long x = -2; x <= 2; ++x) chk(chi_config(n, Rat(x)) == config_by_partitions(n, Rat(x)), "chi_config");
    for (unsigned k = 0; k <= 6; ++k)
        for (unsigned n = 1; n <= 6; ++n) {
            Rat t = 0;
            for (const auto& l : partitions(k)) {
                Rat term = c_seq(static_cast<unsigned>(l.size())) / Rat(automorphisms(l));
                for (unsigned x : l) term *= Rat(punctual_count(x, n));
                t += term;
            }
            chk(t == h_value(k, n), "h against punctual counts");
        }
    r.seconds = since(t0);
    if (r.seconds > lim.properties) chk(false, "time limit");
    r.pass = chk.pass;
    std::ostringstream det;
    det << weights << " weights balanced, " << ring_checks << " ring checks, " << lifts << " lifts round-tripped"
        << chk.det.str();
    r.detail = det.str();
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& which,
                                            const std::function<void(const std::string&)>& log,
                                            const AcceptanceLimits& limits) {
    std::vector<CriterionResult> out;
    auto want = [&](int i) { return which.empty() || std::find(which.begin(), which.end(), i) != which.end(); };
    auto guarded = [&](int id, const std::string& name, auto&& f) {
        if (!want(id)) return;
        try {
            out.push_back(f());
        } catch (const std::exception& e) {
            out.push_back({id, name, false, std::string("error: ") + e.what(), 0, 0});
        }
    };
    guarded(1, "euler-satake-table", [&] { return table_reproduction(log, limits); });
    guarded(2, "single-point-integral", [&] { return single_point(limits); });
    guarded(3, "unit-square-subdivisions", [&] { return square_example(limits); });
    guarded(4, "tau0-hyperplane-equality", [&] { return tau0_equality(limits); });
    guarded(5, "boundary-point-weight", [&] { return boundary_weights(limits); });
    guarded(6, "property-suites", [&] { return properties(limits); });
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.name << " [" << r.seconds << "s / limit "
       << r.limit_seconds << "s] " << r.detail;
    return os.str();
}

}  // namespace troppt
