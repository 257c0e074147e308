#include "troppt/fan.hpp"

#include <algorithm>
#include <set>

namespace troppt {

LatticeMap::LatticeMap(size_t s, size_t t, IMat m) : source(s), target(t), matrix(std::move(m)) {
    if (matrix.size() != t) throw std::invalid_argument("rank mismatch");
    for (const auto& r : matrix)
        if (r.size() != s) throw std::invalid_argument("rank mismatch");
}

bool LatticeMap::lattice_surjective() const {
    if (target == 0) return true;
    auto idx = lattice_index(target, transpose(matrix));
    return idx && *idx == 1;
}

LatticeMap LatticeMap::identity(size_t n) { return LatticeMap(n, n, troppt::identity(n)); }

Fan::Fan(size_t ambient) : n_(ambient) {
    cones_.push_back(Cone::zero(ambient));
    finalize();
}

Fan Fan::from_cones(size_t ambient, const std::vector<Cone>& gens) {
    std::map<std::string, Cone> all;
    for (const auto& g : gens) {
        if (g.ambient() != ambient) throw std::invalid_argument("lattice mismatch");
        if (all.count(g.key())) continue;
        for (auto& f : g.faces()) all.emplace(f.key(), f);
    }
    Fan out;
    out.n_ = ambient;
    if (all.empty()) all.emplace(Cone::zero(ambient).key(), Cone::zero(ambient));
    for (auto& [k, c] : all) out.cones_.push_back(c);
    out.finalize();
    return out;
}

void Fan::finalize() {
    std::sort(cones_.begin(), cones_.end());
    index_.clear();
    for (size_t i = 0; i < cones_.size(); ++i) index_[cones_[i].key()] = i;
    const auto& lin0 = cones_.front().lineality();
    for (const auto& c : cones_)
        if (c.lineality() != lin0) throw InvariantViolation("fan cones have different lineality spaces");
    std::map<IVec, size_t> rid;
    ray_table_.clear();
    ray_sets_.assign(cones_.size(), {});
    for (size_t i = 0; i < cones_.size(); ++i) {
        for (const auto& r : cones_[i].rays()) {
            auto it = rid.find(r);
            if (it == rid.end()) {
                it = rid.emplace(r, ray_table_.size()).first;
                ray_table_.push_back(r);
            }
            ray_sets_[i].push_back(it->second);
        }
        std::sort(ray_sets_[i].begin(), ray_sets_[i].end());
    }
    faces_.assign(cones_.size(), {});
    star_.assign(cones_.size(), {});
    for (size_t i = 0; i < cones_.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            if (cones_[j].dim() > cones_[i].dim()) continue;
            if (std::includes(ray_sets_[i].begin(), ray_sets_[i].end(), ray_sets_[j].begin(),
                              ray_sets_[j].end())) {
                faces_[i].push_back(j);
                star_[j].push_back(i);
            }
        }
    for (auto& s : star_) std::sort(s.begin(), s.end());
}

std::optional<size_t> Fan::index_of(const Cone& c) const {
    auto it = index_.find(c.key());
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

size_t Fan::require(const Cone& c) const {
    auto i = index_of(c);
    if (!i) throw std::invalid_argument("cone not in fan");
    return *i;
}

std::vector<Cone> Fan::star(const Cone& c) const {
    std::vector<Cone> out;
    for (auto j : star_of(require(c))) out.push_back(cones_[j]);
    return out;
}

std::vector<size_t> Fan::of_dim(size_t d) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].dim() == d) out.push_back(i);
    return out;
}

std::vector<size_t> Fan::of_codim(size_t k) const {
    if (k > n_) return {};
    return of_dim(n_ - k);
}

std::vector<size_t> Fan::maximal() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < cones_.size(); ++i)
        if (star_[i].size() == 1) out.push_back(i);
    return out;
}

size_t Fan::dim() const { return cones_.empty() ? 0 : cones_.back().dim(); }

bool Fan::pure() const {
    size_t d = dim();
    for (auto i : maximal())
        if (cones_[i].dim() != d) return false;
    return true;
}

size_t Fan::lineality_dim() const { return cones_.front().lineality_dim(); }

std::optional<size_t> Fan::locate(const QVec& p) const {
    for (size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].in_relint(p)) return i;
    return std::nullopt;
}

std::optional<size_t> Fan::carrier(const Cone& c) const {
    auto i = locate(c.relint_point());
    if (!i || !cones_[*i].contains(c)) return std::nullopt;
    return i;
}

bool Fan::check_fan(std::string* why) const {
    auto mx = maximal();
    for (size_t a = 0; a < mx.size(); ++a)
        for (size_t b = a + 1; b < mx.size(); ++b) {
            const Cone& s = cones_[mx[a]];
            const Cone& t = cones_[mx[b]];
            Cone inter = s.intersect(t);
            if (!index_of(inter)) {
                if (why) *why = "intersection of " + s.key() + " and " + t.key() + " is not a cone of the fan";
                return false;
            }
            if (!inter.is_face_of(s) || !inter.is_face_of(t)) {
                if (why) *why = "intersection is not a common face";
                return false;
            }
        }
    return true;
}

bool Fan::is_complete() const {
    if (dim() != n_ || !pure()) return false;
    for (auto i : of_dim(n_ == 0 ? 0 : n_ - 1)) {
        size_t c = 0;
        for (auto j : star_[i])
            if (cones_[j].dim() == n_) ++c;
        if (n_ > 0 && c != 2) return false;
    }
    return true;
}

Fan common_refinement(const Fan& a, const Fan& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("lattice mismatch");
    std::vector<Cone> pieces;
    std::set<std::string> seen;
    for (auto i : a.maximal())
        for (auto j : b.maximal()) {
            Cone c = a.cone(i).intersect(b.cone(j));
            if (seen.insert(c.key()).second) pieces.push_back(c);
        }
    return Fan::from_cones(a.ambient(), pieces);
}

Fan pullback_fan_structure(const LatticeMap& f, const Fan& target, const Fan& source) {
    if (f.source != source.ambient() || f.target != target.ambient())
        throw std::invalid_argument("lattice mismatch");
    std::vector<Cone> pieces;
    std::set<std::string> seen;
    for (auto i : source.maximal()) {
        const Cone& s = source.cone(i);
        std::vector<Cone> full;
        for (auto j : target.maximal()) {
            Cone c = s.intersect(target.cone(j).preimage(f.matrix));
            if (c.dim() == s.dim()) full.push_back(c);
            if (seen.insert(c.key()).second) pieces.push_back(c);
        }
        if (full.empty()) throw std::runtime_error("image escapes target support");
        // every interior wall of a full piece must be shared with another full piece
        for (size_t p = 0; p < full.size(); ++p)
            for (const auto& w : full[p].facet_cones()) {
                QVec x = w.relint_point();
                // walls on the boundary of s need no neighbour
                if (!s.in_relint(x)) continue;
                bool shared = false;
                for (size_t q = 0; q < full.size() && !shared; ++q)
                    if (q != p && full[q].contains(w)) shared = true;
                if (!shared) throw std::runtime_error("image escapes target support");
            }
    }
    return Fan::from_cones(source.ambient(), pieces);
}

FiberProduct fiber_product_fans(const LatticeMap& f, const LatticeMap& g, const Fan& fan1,
                                const Fan& fan2, const Fan& fan0) {
    if (f.target != g.target || f.target != fan0.ambient() || f.source != fan1.ambient() ||
        g.source != fan2.ambient())
        throw std::invalid_argument("lattice mismatch");
    size_t n1 = f.source, n2 = g.source, n0 = f.target;
    for (auto i : fan1.maximal())
        if (!fan0.carrier(fan1.cone(i).image(f.matrix)))
            throw std::runtime_error("not combinatorially compatible");
    for (auto i : fan2.maximal())
        if (!fan0.carrier(fan2.cone(i).image(g.matrix)))
            throw std::runtime_error("not combinatorially compatible");
    IMat fg(n0, IVec(n1 + n2));
    for (size_t r = 0; r < n0; ++r) {
        for (size_t c = 0; c < n1; ++c) fg[r][c] = f.matrix[r][c];
        for (size_t c = 0; c < n2; ++c) fg[r][n1 + c] = -g.matrix[r][c];
    }
    IMat K = integer_kernel(fg, n1 + n2);
    size_t k = K.size();
    IMat KT = transpose(K);
    if (k == 0) KT.assign(n1 + n2, IVec());
    std::vector<Cone> pieces;
    std::set<std::string> seen;
    for (auto i : fan1.maximal())
        for (auto j : fan2.maximal()) {
            Cone prod = fan1.cone(i).product(fan2.cone(j));
            Cone c = prod.preimage(KT);
            if (seen.insert(c.key()).second) pieces.push_back(c);
        }
    FiberProduct out;
    out.fan = Fan::from_cones(k, pieces);
    out.kernel = K;
    IMat p1(KT.begin(), KT.begin() + static_cast<long>(n1));
    IMat p2(KT.begin() + static_cast<long>(n1), KT.end());
    out.to_first = LatticeMap(k, n1, p1);
    out.to_second = LatticeMap(k, n2, p2);
    return out;
}

}  // namespace troppt
