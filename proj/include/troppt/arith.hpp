#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace troppt {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;
using IMat = std::vector<IVec>;
using QMat = std::vector<QVec>;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "p/q", or "p" when the denominator is 1
std::string to_string(const Rat& q);
std::string to_string(const Int& z);
Rat parse_rat(const std::string& s);

Rat make_rat(const Int& num, const Int& den);
bool lowest_terms(const Rat& q);

Int gcd_of(const IVec& v);
// divide by the gcd of the entries; zero vector stays zero
IVec primitive(IVec v);
bool is_zero(const IVec& v);
bool is_zero(const QVec& v);

Int dot(const IVec& a, const IVec& b);
Rat dot(const QVec& a, const QVec& b);
Rat dot(const IVec& a, const QVec& b);

QVec to_q(const IVec& v);
// smallest positive multiple with integer entries, made primitive
IVec clear_denominators(const QVec& v);

IVec operator+(const IVec& a, const IVec& b);
IVec operator-(const IVec& a, const IVec& b);
IVec operator-(const IVec& a);
IVec scale(const IVec& a, const Int& s);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec scale(const QVec& a, const Rat& s);

IVec ivec(std::initializer_list<long> xs);
IVec ivec(const std::vector<long>& xs);
QVec qvec(std::initializer_list<long> xs);

std::string vec_string(const IVec& v);
std::string vec_string(const QVec& v);

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);

}  // namespace troppt
