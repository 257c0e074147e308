#include "troppt/linalg.hpp"

#include <algorithm>

namespace troppt {

QMat to_q(const IMat& m) {
    QMat r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_q(row));
    return r;
}

IMat transpose(const IMat& m) {
    if (m.empty()) return {};
    IMat t(m[0].size(), IVec(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

IVec apply(const IMat& m, const IVec& x) {
    IVec r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
    return r;
}

QVec apply(const IMat& m, const QVec& x) {
    QVec r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
    return r;
}

IMat compose(const IMat& a, const IMat& b) {
    IMat bt = transpose(b);
    IMat r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        r[i].resize(bt.size());
        for (size_t j = 0; j < bt.size(); ++j) r[i][j] = dot(a[i], bt[j]);
    }
    return r;
}

IMat identity(size_t n) {
    IMat r(n, IVec(n, Int(0)));
    for (size_t i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

QMat rref(QMat m, std::vector<size_t>* pivots) {
    std::vector<size_t> piv;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rat inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    m.resize(r);
    if (pivots) *pivots = piv;
    return m;
}

size_t rank(const QMat& m) { return rref(m).size(); }
size_t rank(const IMat& m) { return rref(to_q(m)).size(); }

QMat nullspace(const QMat& m, size_t ncols) {
    std::vector<size_t> piv;
    QMat r = rref(m, &piv);
    std::vector<bool> is_piv(ncols, false);
    for (auto p : piv) is_piv[p] = true;
    QMat out;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        QVec v(ncols, Rat(0));
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

IMat integer_kernel(const IMat& m, size_t ncols) {
    // unimodular column operations on m, tracked in u (columns stored as rows)
    IMat a = m;
    IMat u = identity(ncols);
    size_t k = 0;
    for (size_t r = 0; r < a.size() && k < ncols; ++r) {
        for (size_t c = k + 1; c < ncols; ++c) {
            if (a[r][c] == 0) continue;
            if (a[r][k] == 0) {
                for (auto& row : a) std::swap(row[k], row[c]);
                std::swap(u[k], u[c]);
                continue;
            }
            Int g, s, t;
            ext_gcd(a[r][k], a[r][c], g, s, t);
            Int p = a[r][c] / g, q = a[r][k] / g;
            for (auto& row : a) {
                Int x = row[k], y = row[c];
                row[k] = s * x + t * y;
                row[c] = q * y - p * x;
            }
            IVec uk = u[k], uc = u[c];
            for (size_t i = 0; i < ncols; ++i) {
                u[k][i] = s * uk[i] + t * uc[i];
                u[c][i] = q * uc[i] - p * uk[i];
            }
        }
        if (a[r][k] != 0) ++k;
    }
    IMat out(u.begin() + static_cast<long>(k), u.end());
    for (auto& v : out) v = primitive(v);
    return integer_echelon(out, ncols);
}

IMat saturate(const IMat& gens, size_t n) {
    IMat nz;
    for (const auto& g : gens)
        if (!is_zero(g)) nz.push_back(g);
    if (nz.empty()) return {};
    IMat perp = integer_kernel(nz, n);
    if (perp.empty()) return identity(n);
    return integer_kernel(perp, n);
}

IMat integer_echelon(IMat gens, size_t ncols) {
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < gens.size(); ++c) {
        for (size_t i = r + 1; i < gens.size(); ++i) {
            if (gens[i][c] == 0) continue;
            if (gens[r][c] == 0) {
                std::swap(gens[r], gens[i]);
                continue;
            }
            Int g, s, t;
            ext_gcd(gens[r][c], gens[i][c], g, s, t);
            Int p = gens[i][c] / g, q = gens[r][c] / g;
            IVec a = gens[r], b = gens[i];
            for (size_t j = 0; j < ncols; ++j) {
                gens[r][j] = s * a[j] + t * b[j];
                gens[i][j] = q * b[j] - p * a[j];
            }
        }
        if (gens[r][c] == 0) continue;
        if (gens[r][c] < 0)
            for (auto& x : gens[r]) x = -x;
        // reduce entries above the pivot into [0, pivot)
        for (size_t i = 0; i < r; ++i) {
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), gens[i][c].get_mpz_t(), gens[r][c].get_mpz_t());
            if (f != 0)
                for (size_t j = 0; j < ncols; ++j) gens[i][j] -= f * gens[r][j];
        }
        ++r;
    }
    gens.resize(r);
    return gens;
}

std::vector<Int> smith_invariants(IMat m) {
    std::vector<Int> out;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t t = 0;
    while (t < rows && t < cols) {
        // choose the smallest nonzero entry as pivot
        size_t pr = rows, pc = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) pr = i, pc = j;
        if (pr == rows) break;
        std::swap(m[t], m[pr]);
        for (auto& row : m) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
                for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
                for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (auto& row : m) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility of the remaining block
            for (size_t i = t + 1; i < rows && clean; ++i)
                for (size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                        clean = false;
                        break;
                    }
        }
        out.push_back(abs(m[t][t]));
        ++t;
    }
    return out;
}

std::optional<Int> lattice_index(size_t rank_, const IMat& gens) {
    for (const auto& g : gens)
        if (g.size() != rank_) throw std::invalid_argument("rank mismatch");
    if (rank_ == 0) return Int(1);
    IMat e = integer_echelon(gens, rank_);
    if (e.size() < rank_) return std::nullopt;
    Int idx = 1;
    for (size_t i = 0; i < rank_; ++i) {
        size_t c = 0;
        while (e[i][c] == 0) ++c;
        idx *= e[i][c];
    }
    return abs(idx);
}

std::string index_string(const std::optional<Int>& idx) {
    return idx ? idx->get_str() : std::string("infinite");
}

std::optional<QVec> solve(const QMat& rows, const QVec& rhs) {
    size_t n = rows.empty() ? 0 : rows[0].size();
    QMat aug = rows;
    for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
    std::vector<size_t> piv;
    QMat r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    QVec x(n, Rat(0));
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r[i][n];
    return x;
}

bool in_span(const QMat& gens, const QVec& v) {
    if (is_zero(v)) return true;
    if (gens.empty()) return false;
    QMat m = gens;
    size_t r0 = rank(m);
    m.push_back(v);
    return rank(m) == r0;
}

QVec reduce_mod(const QMat& basis, const std::vector<size_t>& pivots, QVec v) {
    for (size_t i = 0; i < pivots.size(); ++i) {
        Rat f = v[pivots[i]];
        if (f == 0) continue;
        for (size_t j = 0; j < v.size(); ++j) v[j] -= f * basis[i][j];
    }
    return v;
}

}  // namespace troppt
