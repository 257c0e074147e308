#pragma once

#include <map>
#include <optional>
#include <unordered_map>

#include "troppt/cone.hpp"

namespace troppt {

struct LatticeMap {
    size_t source = 0, target = 0;
    IMat matrix;  // target x source
    LatticeMap() = default;
    LatticeMap(size_t s, size_t t, IMat m);
    IVec operator()(const IVec& x) const { return apply(matrix, x); }
    QVec operator()(const QVec& x) const { return apply(matrix, x); }
    bool lattice_surjective() const;
    static LatticeMap identity(size_t n);
};

// Fan closed under faces. Cones are sorted by (dim, key) and share one lineality space.
class Fan {
public:
    Fan() = default;
    explicit Fan(size_t ambient);
    static Fan from_cones(size_t ambient, const std::vector<Cone>& gens);

    size_t ambient() const { return n_; }
    size_t size() const { return cones_.size(); }
    const Cone& cone(size_t i) const { return cones_[i]; }
    const std::vector<Cone>& cones() const { return cones_; }
    std::optional<size_t> index_of(const Cone& c) const;
    size_t require(const Cone& c) const;

    const std::vector<size_t>& faces_of(size_t i) const { return faces_[i]; }
    const std::vector<size_t>& star_of(size_t i) const { return star_[i]; }
    std::vector<Cone> star(const Cone& c) const;
    std::vector<size_t> of_dim(size_t d) const;
    std::vector<size_t> of_codim(size_t k) const;
    std::vector<size_t> maximal() const;
    size_t dim() const;
    bool pure() const;
    size_t lineality_dim() const;

    // cone containing p in its relative interior
    std::optional<size_t> locate(const QVec& p) const;
    // smallest cone containing every point of c, if any
    std::optional<size_t> carrier(const Cone& c) const;

    // pairwise intersections of maximal cones are cones of the fan
    bool check_fan(std::string* why = nullptr) const;
    // every codim-one cone of a pure full-dimensional fan lies in exactly two maximal cones
    bool is_complete() const;

    size_t count_dim(size_t d) const { return of_dim(d).size(); }
    const std::vector<IVec>& ray_table() const { return ray_table_; }
    const std::vector<std::vector<size_t>>& ray_sets() const { return ray_sets_; }

private:
    size_t n_ = 0;
    std::vector<Cone> cones_;
    std::vector<std::vector<size_t>> faces_, star_, ray_sets_;
    std::vector<IVec> ray_table_;
    std::unordered_map<std::string, size_t> index_;
    void finalize();
};

// all cones sigma ∩ tau
Fan common_refinement(const Fan& a, const Fan& b);
// coarsest refinement of source so that every cone maps into one cone of target
Fan pullback_fan_structure(const LatticeMap& f, const Fan& target, const Fan& source);

struct FiberProduct {
    Fan fan;
    IMat kernel;  // rows: basis of N1 x_N0 N2 inside N1 + N2 coordinates
    LatticeMap to_first, to_second;
};
FiberProduct fiber_product_fans(const LatticeMap& f, const LatticeMap& g, const Fan& fan1,
                                const Fan& fan2, const Fan& fan0);

}  // namespace troppt
