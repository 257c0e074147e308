#include "troppt/cone.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace troppt {

DDResult double_description(size_t n, const IMat& ineqs) {
    IMat lin = identity(n);
    IMat rays;
    std::vector<std::vector<char>> tight;  // tight[r][i]: ray r tight on processed ineq i
    size_t processed = 0;
    for (const auto& a : ineqs) {
        if (is_zero(a)) continue;
        size_t l0 = lin.size();
        for (size_t i = 0; i < lin.size(); ++i)
            if (dot(a, lin[i]) != 0) {
                l0 = i;
                break;
            }
        if (l0 < lin.size()) {
            IVec p = lin[l0];
            Int ap = dot(a, p);
            if (ap < 0) {
                p = -p;
                ap = -ap;
            }
            IMat nl;
            for (size_t i = 0; i < lin.size(); ++i) {
                if (i == l0) continue;
                nl.push_back(primitive(scale(lin[i], ap) - scale(p, dot(a, lin[i]))));
            }
            for (auto& r : rays) {
                r = primitive(scale(r, ap) - scale(p, dot(a, r)));
                // r stays nonzero: it is independent of the lineality
            }
            for (auto& t : tight) t.push_back(1);
            rays.push_back(p);
            tight.push_back(std::vector<char>(processed, 1));
            tight.back().push_back(0);
            lin = std::move(nl);
            ++processed;
            continue;
        }
        std::vector<Int> s(rays.size());
        std::vector<size_t> pos, neg;
        for (size_t i = 0; i < rays.size(); ++i) {
            s[i] = dot(a, rays[i]);
            if (s[i] > 0) pos.push_back(i);
            else if (s[i] < 0) neg.push_back(i);
        }
        IMat nr;
        std::vector<std::vector<char>> nt;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (s[i] < 0) continue;
            nr.push_back(rays[i]);
            nt.push_back(tight[i]);
            nt.back().push_back(s[i] == 0 ? 1 : 0);
        }
        for (size_t p : pos)
            for (size_t q : neg) {
                std::vector<char> common(processed);
                size_t cnt = 0;
                for (size_t k = 0; k < processed; ++k) {
                    common[k] = tight[p][k] && tight[q][k];
                    cnt += common[k];
                }
                bool adj = true;
                for (size_t z = 0; z < rays.size() && adj; ++z) {
                    if (z == p || z == q) continue;
                    bool sup = true;
                    for (size_t k = 0; k < processed; ++k)
                        if (common[k] && !tight[z][k]) {
                            sup = false;
                            break;
                        }
                    if (sup) adj = false;
                }
                if (!adj) continue;
                nr.push_back(primitive(scale(rays[q], s[p]) - scale(rays[p], s[q])));
                nt.push_back(common);
                nt.back().push_back(1);
            }
        rays = std::move(nr);
        tight = std::move(nt);
        ++processed;
    }
    return {rays, lin};
}

namespace {

// canonical integer basis of a subspace: RREF rows with denominators cleared
IMat canonical_subspace(const IMat& gens, size_t n, QMat* rr, std::vector<size_t>* piv) {
    QMat r = rref(to_q(gens), piv);
    if (rr) *rr = r;
    IMat out;
    for (const auto& row : r) out.push_back(clear_denominators(row));
    (void)n;
    return out;
}

IMat canonical_rays(const IMat& rays, const QMat& lr, const std::vector<size_t>& lp) {
    std::set<IVec> s;
    for (const auto& r : rays) {
        QVec v = reduce_mod(lr, lp, to_q(r));
        if (is_zero(v)) continue;
        s.insert(clear_denominators(v));
    }
    return IMat(s.begin(), s.end());
}

}  // namespace

Cone::Cone() {
    auto d = std::make_shared<Data>();
    d->key = "0||";
    d_ = d;
}

Cone Cone::build(size_t n, IMat rays, IMat lin, IMat facets, IMat eqs) {
    auto d = std::make_shared<Data>();
    d->n = n;
    QMat lr;
    std::vector<size_t> lp;
    d->lin = canonical_subspace(lin, n, &lr, &lp);
    d->rays = canonical_rays(rays, lr, lp);
    QMat er;
    std::vector<size_t> ep;
    d->eqs = canonical_subspace(eqs, n, &er, &ep);
    d->facets = canonical_rays(facets, er, ep);
    d->dim = n - d->eqs.size();
    std::ostringstream os;
    os << n << "|";
    for (const auto& r : d->rays) os << vec_string(r);
    os << "|";
    for (const auto& l : d->lin) os << vec_string(l);
    d->key = os.str();
    Cone c;
    c.d_ = d;
    return c;
}

Cone Cone::zero(size_t n) {
    auto d = std::make_shared<Data>();
    d->n = n;
    d->dim = 0;
    d->eqs = identity(n);
    d->key = std::to_string(n) + "||";
    Cone c;
    c.d_ = d;
    return c;
}

Cone Cone::whole(size_t n) { return build(n, {}, identity(n), {}, {}); }

Cone Cone::from_generators(size_t n, const IMat& gens, const IMat& lineality) {
    for (const auto& g : gens)
        if (g.size() != n) throw std::invalid_argument("rank mismatch");
    for (const auto& g : lineality)
        if (g.size() != n) throw std::invalid_argument("rank mismatch");
    IMat dual;
    for (const auto& g : gens)
        if (!is_zero(g)) dual.push_back(g);
    for (const auto& l : lineality) {
        if (is_zero(l)) continue;
        dual.push_back(l);
        dual.push_back(-l);
    }
    if (dual.empty()) return zero(n);
    DDResult h = double_description(n, dual);
    IMat ineqs = h.rays;
    DDResult v = double_description(n, [&] {
        IMat all = ineqs;
        for (const auto& e : h.lin) {
            all.push_back(e);
            all.push_back(-e);
        }
        return all;
    }());
    return build(n, v.rays, v.lin, h.rays, h.lin);
}

Cone Cone::from_inequalities(size_t n, const IMat& ineqs, const IMat& eqs) {
    IMat all;
    for (const auto& a : ineqs) {
        if (a.size() != n) throw std::invalid_argument("rank mismatch");
        all.push_back(a);
    }
    for (const auto& e : eqs) {
        if (e.size() != n) throw std::invalid_argument("rank mismatch");
        all.push_back(e);
        all.push_back(-e);
    }
    DDResult v = double_description(n, all);
    if (v.rays.empty() && v.lin.empty()) return zero(n);
    return from_generators(n, v.rays, v.lin);
}

bool Cone::contains(const QVec& v) const {
    for (const auto& e : d_->eqs)
        if (dot(e, v) != 0) return false;
    for (const auto& a : d_->facets)
        if (dot(a, v) < 0) return false;
    return true;
}

bool Cone::contains(const Cone& c) const {
    for (const auto& r : c.rays())
        if (!contains(r)) return false;
    for (const auto& l : c.lineality()) {
        for (const auto& e : d_->eqs)
            if (dot(e, l) != 0) return false;
        for (const auto& a : d_->facets)
            if (dot(a, l) != 0) return false;
    }
    return true;
}

bool Cone::in_relint(const QVec& v) const {
    for (const auto& e : d_->eqs)
        if (dot(e, v) != 0) return false;
    for (const auto& a : d_->facets)
        if (dot(a, v) <= 0) return false;
    return true;
}

QVec Cone::relint_point() const {
    QVec p(d_->n, Rat(0));
    for (const auto& r : d_->rays)
        for (size_t i = 0; i < d_->n; ++i) p[i] += r[i];
    return p;
}

Cone Cone::intersect(const Cone& o) const {
    if (o.ambient() != ambient()) throw std::invalid_argument("lattice mismatch");
    IMat ineqs = facets();
    ineqs.insert(ineqs.end(), o.facets().begin(), o.facets().end());
    IMat eqs = equations();
    eqs.insert(eqs.end(), o.equations().begin(), o.equations().end());
    return from_inequalities(ambient(), ineqs, eqs);
}

Cone Cone::image(const IMat& m) const {
    size_t t = m.size();
    IMat r, l;
    for (const auto& x : rays()) r.push_back(apply(m, x));
    for (const auto& x : lineality()) l.push_back(apply(m, x));
    return from_generators(t, r, l);
}

Cone Cone::preimage(const IMat& m) const {
    size_t s = m.empty() ? 0 : m[0].size();
    IMat mt = transpose(m);
    auto pull = [&](const IVec& a) {
        IVec r(s);
        for (size_t j = 0; j < s; ++j) r[j] = dot(a, mt[j]);
        return r;
    };
    IMat ineqs, eqs;
    for (const auto& a : facets()) ineqs.push_back(pull(a));
    for (const auto& e : equations()) eqs.push_back(pull(e));
    return from_inequalities(s, ineqs, eqs);
}

Cone Cone::product(const Cone& o) const {
    size_t n1 = ambient(), n2 = o.ambient();
    auto embed = [&](const IVec& v, size_t off) {
        IVec r(n1 + n2, Int(0));
        for (size_t i = 0; i < v.size(); ++i) r[off + i] = v[i];
        return r;
    };
    IMat r, l;
    for (const auto& x : rays()) r.push_back(embed(x, 0));
    for (const auto& x : o.rays()) r.push_back(embed(x, n1));
    for (const auto& x : lineality()) l.push_back(embed(x, 0));
    for (const auto& x : o.lineality()) l.push_back(embed(x, n1));
    return from_generators(n1 + n2, r, l);
}

std::vector<Cone> Cone::faces() const {
    const IMat& R = rays();
    std::vector<std::vector<size_t>> on(facets().size());
    for (size_t f = 0; f < facets().size(); ++f)
        for (size_t r = 0; r < R.size(); ++r)
            if (dot(facets()[f], R[r]) == 0) on[f].push_back(r);
    std::set<std::vector<size_t>> seen;
    std::vector<std::vector<size_t>> queue;
    std::vector<size_t> all(R.size());
    for (size_t i = 0; i < R.size(); ++i) all[i] = i;
    seen.insert(all);
    queue.push_back(all);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto cur = queue[qi];
        for (const auto& f : on) {
            std::vector<size_t> t;
            std::set_intersection(cur.begin(), cur.end(), f.begin(), f.end(), std::back_inserter(t));
            if (t.size() == cur.size()) continue;
            if (seen.insert(t).second) queue.push_back(t);
        }
    }
    std::vector<Cone> out;
    for (const auto& s : queue) {
        if (s.size() == R.size()) {
            out.push_back(*this);
            continue;
        }
        IMat g;
        for (auto i : s) g.push_back(R[i]);
        out.push_back(from_generators(ambient(), g, lineality()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cone> Cone::facet_cones() const {
    std::vector<Cone> out;
    for (const auto& a : facets()) {
        IMat g;
        for (const auto& r : rays())
            if (dot(a, r) == 0) g.push_back(r);
        out.push_back(from_generators(ambient(), g, lineality()));
    }
    return out;
}

bool Cone::is_face_of(const Cone& o) const {
    if (!o.contains(*this)) return false;
    // smallest face of o containing this: tight on every facet of o tight on this
    QVec p = relint_point();
    for (const auto& r : o.rays()) {
        bool in_min_face = true;
        for (const auto& a : o.facets())
            if (dot(a, p) == 0 && dot(a, r) != 0) {
                in_min_face = false;
                break;
            }
        if (in_min_face && !contains(r)) return false;
    }
    return true;
}

IMat Cone::span_generators() const {
    IMat g = rays();
    g.insert(g.end(), lineality().begin(), lineality().end());
    return g;
}

IMat Cone::lattice_basis() const { return saturate(span_generators(), ambient()); }

bool Cone::operator<(const Cone& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    return key() < o.key();
}

}  // namespace troppt
