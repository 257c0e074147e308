#pragma once

#include <memory>

#include "troppt/linalg.hpp"

namespace troppt {

// Polyhedral cone in Q^n kept in both representations:
// generators (primitive extreme rays modulo lineality, plus a lineality basis) and
// inequalities (facet normals a with a.x >= 0, plus equations e.x = 0).
class Cone {
public:
    Cone();
    static Cone zero(size_t n);
    static Cone whole(size_t n);
    static Cone from_generators(size_t n, const IMat& gens, const IMat& lineality = {});
    static Cone from_inequalities(size_t n, const IMat& ineqs, const IMat& eqs = {});

    size_t ambient() const { return d_->n; }
    size_t dim() const { return d_->dim; }
    size_t codim() const { return d_->n - d_->dim; }
    size_t lineality_dim() const { return d_->lin.size(); }
    bool pointed() const { return d_->lin.empty(); }

    const IMat& rays() const { return d_->rays; }
    const IMat& lineality() const { return d_->lin; }
    const IMat& facets() const { return d_->facets; }
    const IMat& equations() const { return d_->eqs; }
    const std::string& key() const { return d_->key; }

    bool contains(const QVec& v) const;
    bool contains(const IVec& v) const { return contains(to_q(v)); }
    bool contains(const Cone& c) const;
    bool in_relint(const QVec& v) const;
    QVec relint_point() const;

    Cone intersect(const Cone& other) const;
    // image under x -> m x
    Cone image(const IMat& m) const;
    // {x : m x in this}
    Cone preimage(const IMat& m) const;
    // product cone in Q^(n1+n2)
    Cone product(const Cone& other) const;

    std::vector<Cone> faces() const;
    std::vector<Cone> facet_cones() const;
    bool is_face_of(const Cone& other) const;
    // saturated basis of the lattice N_sigma = span(sigma) ∩ Z^n
    IMat lattice_basis() const;
    IMat span_generators() const;

    bool operator==(const Cone& o) const { return key() == o.key(); }
    bool operator<(const Cone& o) const;

private:
    struct Data {
        size_t n = 0, dim = 0;
        IMat rays, lin, facets, eqs;
        std::string key;
    };
    std::shared_ptr<const Data> d_;
    static Cone build(size_t n, IMat rays, IMat lin, IMat facets, IMat eqs);
};

struct DDResult {
    IMat rays;
    IMat lin;
};
// extreme rays and lineality of {x in Q^n : a.x >= 0 for every row a}
DDResult double_description(size_t n, const IMat& ineqs);

}  // namespace troppt
