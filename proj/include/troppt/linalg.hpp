#pragma once

#include <optional>

#include "troppt/arith.hpp"

namespace troppt {

QMat to_q(const IMat& m);
IMat transpose(const IMat& m);
IVec apply(const IMat& m, const IVec& x);
QVec apply(const IMat& m, const QVec& x);
IMat compose(const IMat& a, const IMat& b);  // a * b
IMat identity(size_t n);

// reduced row echelon form; zero rows dropped
QMat rref(QMat m, std::vector<size_t>* pivots = nullptr);
size_t rank(const QMat& m);
size_t rank(const IMat& m);

// rational basis of {x : m x = 0}
QMat nullspace(const QMat& m, size_t ncols);
// Z-basis of {x in Z^ncols : m x = 0}; the basis is saturated
IMat integer_kernel(const IMat& m, size_t ncols);
// Z-basis of span_Q(gens) ∩ Z^n
IMat saturate(const IMat& gens, size_t n);
// integer row echelon basis of the Z-span of gens
IMat integer_echelon(IMat gens, size_t ncols);
std::vector<Int> smith_invariants(IMat m);

// [Z^rank : span_Z(gens)], nullopt when the span has lower rank
std::optional<Int> lattice_index(size_t rank, const IMat& gens);
std::string index_string(const std::optional<Int>& idx);

std::optional<QVec> solve(const QMat& rows, const QVec& rhs);
bool in_span(const QMat& gens, const QVec& v);

// reduce v modulo the row space of an RREF basis (pivot entries cleared)
QVec reduce_mod(const QMat& rref_basis, const std::vector<size_t>& pivots, QVec v);

}  // namespace troppt
