#include "troppt/euler.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace troppt {

namespace {

template <class K, class V>
struct Memo {
    std::mutex mu;
    std::map<K, V> table;
    template <class F>
    V get(const K& k, F&& compute) {
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = table.find(k);
            if (it != table.end()) return it->second;
        }
        V v = compute();
        std::lock_guard<std::mutex> lock(mu);
        table.emplace(k, v);
        return v;
    }
};

Series series_mul(const Series& a, const Series& b, unsigned n) {
    Series r(n + 1, Rat(0));
    for (unsigned i = 0; i <= n && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; i + j <= n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// 1 / (1 - a) for a with zero constant term
Series geometric(const Series& a, unsigned n) {
    Series r(n + 1, Rat(0));
    r[0] = 1;
    for (unsigned k = 1; k <= n; ++k)
        for (unsigned i = 1; i <= k; ++i)
            if (i < a.size()) r[k] += a[i] * r[k - i];
    return r;
}

Series series_pow(const Series& a, size_t e, unsigned n) {
    Series r(n + 1, Rat(0));
    r[0] = 1;
    for (size_t i = 0; i < e; ++i) r = series_mul(r, a, n);
    return r;
}

void partitions_into(unsigned k, unsigned maxp, Partition& cur, std::vector<Partition>& out) {
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned p = std::min(k, maxp); p >= 1; --p) {
        cur.push_back(p);
        partitions_into(k - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Int stirling2(unsigned n, unsigned k) {
    static Memo<std::pair<unsigned, unsigned>, Int> memo;
    if (n == k) return 1;
    if (k == 0 || k > n) return 0;
    return memo.get({n, k}, [&]() -> Int { return Int(k) * stirling2(n - 1, k) + stirling2(n - 1, k - 1); });
}

Rat chi_config(unsigned n, const Rat& chiC) {
    if (n == 0) return 1;
    Rat v = 1;
    for (unsigned i = 0; i < n; ++i) v *= chiC;
    for (unsigned k = 1; k < n; ++k) v -= Rat(stirling2(n, k)) * chi_config(k, chiC);
    return v;
}

Rat c_seq(unsigned n) {
    static Memo<unsigned, Rat> memo;
    if (n == 0) return 1;
    return memo.get(n, [&] {
        Rat v = (n % 2 == 1) ? 1 : -1;
        for (unsigned k = 2; k + 1 <= n; ++k) v -= Rat(stirling2(n - 1, k - 1)) * c_seq(k);
        return v;
    });
}

Int punctual_count(unsigned l, unsigned n) {
    using Ideal = std::set<std::pair<unsigned, unsigned>>;  // cells outside the ideal
    std::set<Ideal> level{Ideal{}};
    for (unsigned s = 0; s < l; ++s) {
        std::set<Ideal> next;
        for (const auto& I : level) {
            for (unsigned a = 0; a < l; ++a)
                for (unsigned b = 0; b < n; ++b) {
                    if (I.count({a, b})) continue;
                    if (a > 0 && !I.count({a - 1, b})) continue;
                    if (b > 0 && !I.count({a, b - 1})) continue;
                    Ideal J = I;
                    J.insert({a, b});
                    next.insert(std::move(J));
                }
        }
        level = std::move(next);
    }
    return Int(static_cast<unsigned long>(level.size()));
}

Int partitions_below(unsigned q, unsigned l) {
    static Memo<std::pair<unsigned, unsigned>, Int> memo;
    if (l == 0) return 1;
    if (q <= 1) return 0;
    return memo.get({q, l}, [&] {
        // largest part at most q-1: either no part q-1 or remove one
        Int v = partitions_below(q - 1, l);
        if (l >= q - 1) v += partitions_below(q, l - (q - 1));
        return v;
    });
}

std::vector<Partition> partitions(unsigned k) {
    std::vector<Partition> out;
    Partition cur;
    partitions_into(k, k, cur, out);
    return out;
}

Int automorphisms(const Partition& p) {
    Int r = 1;
    for (size_t i = 0; i < p.size();) {
        size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        r *= factorial(static_cast<unsigned>(j - i));
        i = j;
    }
    return r;
}

Rat h_value(unsigned k, unsigned n) {
    static Memo<std::pair<unsigned, unsigned>, Rat> memo;
    return memo.get({k, n}, [&] {
        Rat t = 0;
        for (const auto& l : partitions(k)) {
            Rat term = c_seq(static_cast<unsigned>(l.size())) / Rat(automorphisms(l));
            for (unsigned x : l) term *= Rat(partitions_below(n + 1, x));
            t += term;
        }
        return t;
    });
}

size_t AlphaType::b() const {
    size_t r = 2;
    for (const auto& x : roots) r += (x.mg > 0) + (x.mh > 0);
    return r;
}

unsigned AlphaType::deg_f() const {
    unsigned s = 0;
    for (const auto& x : roots) s += x.mf;
    return s;
}

std::vector<AlphaType> enumerate_alpha(unsigned i, unsigned j) {
    std::vector<AlphaType::Root> R;
    for (unsigned mf = 0; mf <= std::min(i, j); ++mf)
        for (unsigned mg = 0; mg + mf <= i; ++mg)
            for (unsigned mh = 0; mh + mf <= j; ++mh) {
                if (mg > 0 && mh > 0) continue;
                if (mf + mg + mh == 0) continue;
                R.push_back({mf, mg, mh});
            }
    std::sort(R.begin(), R.end());
    std::vector<AlphaType> out;
    AlphaType cur;
    std::function<void(size_t, unsigned, unsigned)> rec = [&](size_t idx, unsigned ri, unsigned rj) {
        if (ri == 0 && rj == 0) {
            out.push_back(cur);
            return;
        }
        for (size_t k = idx; k < R.size(); ++k) {
            const auto& r = R[k];
            if (r.mf + r.mg <= ri && r.mf + r.mh <= rj) {
                cur.roots.push_back(r);
                rec(k, ri - r.mf - r.mg, rj - r.mf - r.mh);
                cur.roots.pop_back();
            }
        }
    };
    rec(0, i, j);
    return out;
}

Rat chi_M(size_t b, unsigned k) {
    if (k == 0) return 1;
    static Memo<std::pair<size_t, unsigned>, Rat> memo;
    return memo.get({b, k}, [&] {
        Rat chiC = Rat(2) - Rat(static_cast<long>(b));
        Rat s = 0;
        for (const auto& l : partitions(k))
            s += chi_config(static_cast<unsigned>(l.size()), chiC) / Rat(automorphisms(l));
        return s;
    });
}

namespace {

// labels for points right of v0 range over roots of f*g, left of v0 over roots of f*h,
// with the thickening order the total multiplicity on that side
Rat side_factor(const AlphaType& a, unsigned w, bool right) {
    Rat s = 0;
    for (const auto& x : a.roots) {
        unsigned m = x.mf + (right ? x.mg : x.mh);
        if (m > 0) s += h_value(w, m);
    }
    return s;
}

}  // namespace

Rat chi_block(const BlockInstance& blk) {
    Rat tot = 0;
    for (const auto& a : enumerate_alpha(blk.i, blk.j)) {
        Rat v = c_seq(static_cast<unsigned>(a.t()));
        for (unsigned w : blk.right) v *= side_factor(a, w, true);
        for (unsigned w : blk.left) v *= side_factor(a, w, false);
        v *= chi_M(a.b(), blk.w0);
        tot += v;
    }
    return tot;
}

Series block_series(unsigned i, unsigned j, unsigned n_right, unsigned n_left, unsigned n) {
    static Memo<std::tuple<unsigned, unsigned, unsigned, unsigned, unsigned>, Series> memo;
    return memo.get({i, j, n_right, n_left, n}, [&] {
        Series r(n + 1, Rat(0));
        for (const auto& a : enumerate_alpha(i, j)) {
            Series T(n + 1, Rat(0)), A(n + 1, Rat(0)), M(n + 1, Rat(0));
            for (unsigned w = 1; w <= n; ++w) {
                T[w] = side_factor(a, w, true);
                A[w] = side_factor(a, w, false);
            }
            for (unsigned k = 0; k <= n; ++k) M[k] = chi_M(a.b(), k);
            Series s = series_mul(series_pow(geometric(T, n), n_right, n), series_pow(geometric(A, n), n_left, n), n);
            s = series_mul(s, M, n);
            Rat c = c_seq(static_cast<unsigned>(a.t()));
            for (unsigned k = 0; k <= n; ++k) r[k] += c * s[k];
        }
        return r;
    });
}

bool CaterpillarType::maximal() const {
    for (const auto& [a, b] : breaks)
        if (a > 0 && b > 0) return false;
    return true;
}

std::string CaterpillarType::to_string() const {
    std::ostringstream os;
    os << "breaks=";
    for (const auto& [a, b] : breaks) os << "(" << a << "," << b << ")";
    os << " zero=" << zero_piece << " sides=";
    for (int s : side) os << (s > 0 ? '+' : '-');
    os << " zero_side=" << (zero_side > 0 ? '+' : '-');
    return os.str();
}

namespace {

struct Node {
    bool zero;
    int side;
    long slope;  // slope of the spine piece just below the node
};

void compositions(unsigned d, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
    if (d == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned k = 1; k <= d; ++k) {
        cur.push_back(k);
        compositions(d - k, cur, out);
        cur.pop_back();
    }
}

// interleavings of two break sequences, allowing simultaneous breaks
void merges(const std::vector<unsigned>& A, size_t ia, const std::vector<unsigned>& B, size_t ib,
            std::vector<std::pair<unsigned, unsigned>>& cur, std::vector<std::vector<std::pair<unsigned, unsigned>>>& out) {
    if (ia == A.size() && ib == B.size()) {
        out.push_back(cur);
        return;
    }
    if (ia < A.size()) {
        cur.push_back({A[ia], 0});
        merges(A, ia + 1, B, ib, cur, out);
        cur.pop_back();
    }
    if (ib < B.size()) {
        cur.push_back({0, B[ib]});
        merges(A, ia, B, ib + 1, cur, out);
        cur.pop_back();
    }
    if (ia < A.size() && ib < B.size()) {
        cur.push_back({A[ia], B[ib]});
        merges(A, ia + 1, B, ib + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Node> nodes_of(const CaterpillarType& t, const std::vector<long>& slope) {
    std::vector<Node> nodes;
    size_t m = t.breaks.size();
    for (size_t k = 0; k < m; ++k) {
        if (k == t.zero_piece) nodes.push_back({true, t.zero_side, slope[k]});
        nodes.push_back({false, t.side[k], slope[k]});
    }
    if (t.zero_piece == m) nodes.push_back({true, t.zero_side, slope[m]});
    return nodes;
}

std::vector<long> slopes(unsigned d, const CaterpillarType& t) {
    long ja = d, jb = d;
    std::vector<long> s{ja - jb};
    for (const auto& [a, b] : t.breaks) {
        ja -= a;
        jb -= b;
        s.push_back(ja - jb);
    }
    return s;
}

bool admissible(const std::vector<Node>& nodes) {
    for (size_t k = 0; k + 1 < nodes.size(); ++k) {
        const Node& a = nodes[k];
        const Node& b = nodes[k + 1];
        if (b.slope == 0 && a.side != b.side) return false;
        if (b.slope > 0 && a.side > 0 && b.side < 0) return false;
        if (b.slope < 0 && a.side < 0 && b.side > 0) return false;
    }
    return true;
}

}  // namespace

std::vector<CaterpillarType> caterpillar_types(unsigned d, const Budget& budget) {
    if (d < 1) throw std::invalid_argument("invalid d");
    std::vector<std::vector<unsigned>> comps;
    std::vector<unsigned> cur;
    compositions(d, cur, comps);
    std::vector<CaterpillarType> out;
    for (const auto& A : comps)
        for (const auto& B : comps) {
            std::vector<std::vector<std::pair<unsigned, unsigned>>> ms;
            std::vector<std::pair<unsigned, unsigned>> mc;
            merges(A, 0, B, 0, mc, ms);
            for (const auto& V : ms) {
                size_t m = V.size();
                CaterpillarType t;
                t.breaks = V;
                auto sl = slopes(d, t);
                for (size_t z = 0; z <= m; ++z)
                    for (unsigned mask = 0; mask < (1u << (m + 1)); ++mask) {
                        t.zero_piece = z;
                        t.side.assign(m, 1);
                        for (size_t k = 0; k < m; ++k) t.side[k] = (mask >> k) & 1 ? -1 : 1;
                        t.zero_side = (mask >> m) & 1 ? -1 : 1;
                        if (!admissible(nodes_of(t, sl))) continue;
                        out.push_back(t);
                        if (out.size() > budget.max_cones) throw BudgetExceeded("enumeration budget exceeded");
                    }
            }
        }
    return out;
}

namespace {

Series type_series(unsigned d, const CaterpillarType& t, const Series& seg, unsigned n) {
    auto nodes = nodes_of(t, slopes(d, t));
    size_t crossings = 0;
    for (size_t k = 0; k + 1 < nodes.size(); ++k) crossings += nodes[k].side != nodes[k + 1].side;
    Series s = series_pow(seg, nodes.size() + 1 + crossings, n);
    for (size_t k = 0; k < t.breaks.size(); ++k) {
        auto [a, b] = t.breaks[k];
        unsigned toward = t.side[k] > 0 ? b : a;
        unsigned away = t.side[k] > 0 ? a : b;
        if (toward > 0)
            s = series_mul(s, block_series(toward, away, 1, away > 0 ? 1 : 0, n), n);
        else
            s = series_mul(s, block_series(0, away, 0, 1, n), n);
    }
    return s;
}

Series spine_series(unsigned n, const EulerOptions& opt) {
    Series H(n + 1, Rat(0));
    for (unsigned w = 1; w <= n; ++w) H[w] = opt.spine == SpineOrder::OneW ? h_value(1, w) : h_value(w, 1);
    return geometric(H, n);
}

}  // namespace

namespace {

// per-type series, split over budget.threads workers
std::vector<Series> all_type_series(unsigned d, const std::vector<CaterpillarType>& types, const Series& seg,
                                    unsigned n, unsigned threads) {
    std::vector<Series> out(types.size());
    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) out[i] = type_series(d, types[i], seg, n);
    };
    size_t T = std::max(1u, threads);
    if (T == 1 || types.size() < 2 * T) {
        work(0, types.size());
        return out;
    }
    std::vector<std::thread> pool;
    size_t chunk = (types.size() + T - 1) / T;
    for (size_t t = 0; t < T; ++t) {
        size_t lo = t * chunk, hi = std::min(types.size(), lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace

EulerResult euler_satake(unsigned d, unsigned n, bool audit, const EulerOptions& opt, const Budget& budget) {
    auto types = caterpillar_types(d, budget);
    auto series = all_type_series(d, types, spine_series(n, opt), n, budget.threads);
    EulerResult res;
    res.total = 0;
    res.types = types.size();
    for (size_t i = 0; i < types.size(); ++i) {
        res.total += series[i][n];
        if (audit) res.audit.push_back({types[i], series[i][n]});
    }
    return res;
}

std::vector<Rat> euler_satake_row(unsigned d, unsigned n_max, const EulerOptions& opt, const Budget& budget) {
    auto types = caterpillar_types(d, budget);
    auto series = all_type_series(d, types, spine_series(n_max, opt), n_max, budget.threads);
    Series tot(n_max + 1, Rat(0));
    for (const auto& s : series)
        for (unsigned k = 0; k <= n_max; ++k) tot[k] += s[k];
    return tot;
}

}  // namespace troppt
