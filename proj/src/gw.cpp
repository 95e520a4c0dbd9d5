#include "cresym/gw.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "cresym/cremona.hpp"
#include "cresym/degeneration.hpp"

namespace cresym {

void GWQuery::canonicalize() {
    std::sort(insertions.begin(), insertions.end(), std::greater<int>());
}

namespace {

mpz_class binom(unsigned long a, unsigned long b) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), a, b);
    return out;
}

using LevelKey = std::pair<long, int>;  // (degree, insertion count)

struct Engine {
    int n;
    std::map<std::pair<long, std::vector<int>>, mpz_class> memo;

    explicit Engine(int n_) : n(n_) {}

    long gate_rhs(long d) const { return (n + 1) * d + n - 3; }

    /* A term is either a known value or (multiplier * unknown-of-this-level). */
    struct Term {
        mpz_class value;       // used when !symbolic
        bool symbolic = false;
        mpz_class multiplier;  // used when symbolic
        std::vector<int> key;  // canonical multiset, entries in [2,n]
    };

    /* Apply the evaluation rules to I_d(multiset); entries may be 0..n.
     * Terms at the level currently being solved stay symbolic, everything
     * else recurses. `level` is the (d, r) level under construction, or
     * (-1,-1) when no level is open. */
    Term rules(long d, std::vector<int> ins, LevelKey level) {
        Term t;
        t.value = 0;
        if (d < 0) return t;
        long lhs = 0;
        for (int a : ins) lhs += a - 1;
        if (lhs != gate_rhs(d)) return t;
        if (d == 0) {
            long sum = 0;
            for (int a : ins) sum += a;
            t.value = (ins.size() == 3 && sum == n) ? 1 : 0;
            return t;
        }
        mpz_class mult = 1;
        std::vector<int> core;
        core.reserve(ins.size());
        for (int a : ins) {
            if (a == 0) return t;         // fundamental class, d >= 1
            if (a == 1) mult *= d;        // divisor axiom
            else core.push_back(a);
        }
        std::sort(core.begin(), core.end(), std::greater<int>());
        if (core.size() == 2) {           // forces d = 1, (n, n): the seed
            t.value = mult;
            return t;
        }
        if (core.size() < 2) throw std::logic_error("gate admitted an impossible query");
        auto it = memo.find({d, core});
        if (it != memo.end()) {
            t.value = mult * it->second;
            return t;
        }
        if (level == kProbe || level == LevelKey{d, static_cast<int>(core.size())}) {
            t.symbolic = true;
            t.multiplier = mult;
            t.key = std::move(core);
            return t;
        }
        t.value = mult * eval(d, core);
        return t;
    }

    // In probe mode any unresolved canonical query stays symbolic, so the
    // caller can solve its level first.
    static constexpr LevelKey kProbe{-2, -2};

    mpz_class eval(long d, const std::vector<int>& canonical) {
        Term t = rules(d, canonical, kProbe);
        if (!t.symbolic) return t.value;
        solve_level(d, static_cast<int>(t.key.size()));
        auto it = memo.find({d, t.key});
        if (it == memo.end()) throw std::logic_error("level solve missed a query");
        return t.multiplier * it->second;
    }

    /* All canonical multisets of size r with entries in [2,n] passing the
     * dimension gate for degree d. */
    std::vector<std::vector<int>> level_multisets(long d, int r) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        long target = gate_rhs(d) + r;  // sum of entries
        auto rec = [&](auto&& self, int pos, int maxval, long remaining) -> void {
            if (pos == r) {
                if (remaining == 0) out.push_back(cur);
                return;
            }
            for (int v = std::min<long>(maxval, remaining - 2L * (r - pos - 1)); v >= 2; --v) {
                if (v > remaining) continue;
                cur.push_back(v);
                self(self, pos + 1, v, remaining - v);
                cur.pop_back();
            }
        };
        rec(rec, 0, n, target);
        return out;
    }

    /* One row of the level system: sum(coeff_u * unknown_u) = rhs. */
    struct Row {
        std::map<std::vector<int>, mpq_class> coeff;
        mpq_class rhs;
    };

    /* Accumulate one side of the WDVV instance into the row with the given
     * orientation: F(c1,c2|c3,c4;S) as in rule (iv). */
    void accumulate_side(Row& row, long d, int c1, int c2, int c3, int c4,
                         const std::vector<int>& s, int orient, LevelKey level) {
        // group S by value
        std::vector<std::pair<int, int>> vals;  // (value, count)
        for (int v : s) {
            if (!vals.empty() && vals.back().first == v) vals.back().second++;
            else vals.emplace_back(v, 1);
        }
        const int k = static_cast<int>(vals.size());
        std::vector<int> take(k, 0);
        auto rec = [&](auto&& self, int idx) -> void {
            if (idx < k) {
                for (take[idx] = 0; take[idx] <= vals[idx].second; ++take[idx]) self(self, idx + 1);
                take[idx] = 0;
                return;
            }
            mpz_class ways = 1;
            std::vector<int> s1, s2;
            for (int i = 0; i < k; ++i) {
                ways *= binom(vals[i].second, take[i]);
                for (int c = 0; c < take[i]; ++c) s1.push_back(vals[i].first);
                for (int c = take[i]; c < vals[i].second; ++c) s2.push_back(vals[i].first);
            }
            for (long d1 = 0; d1 <= d; ++d1) {
                for (int e = 0; e <= n; ++e) {
                    std::vector<int> m1 = s1;
                    m1.push_back(c1);
                    m1.push_back(c2);
                    m1.push_back(e);
                    std::vector<int> m2 = s2;
                    m2.push_back(n - e);
                    m2.push_back(c3);
                    m2.push_back(c4);
                    Term t1 = rules(d1, std::move(m1), level);
                    Term t2 = rules(d - d1, std::move(m2), level);
                    if (t1.symbolic && t2.symbolic)
                        throw std::logic_error("two symbolic factors in one WDVV term");
                    if (t1.symbolic) {
                        if (t2.value == 0) continue;
                        row.coeff[t1.key] += mpq_class(orient * ways * t1.multiplier * t2.value);
                    } else if (t2.symbolic) {
                        if (t1.value == 0) continue;
                        row.coeff[t2.key] += mpq_class(orient * ways * t2.multiplier * t1.value);
                    } else {
                        if (t1.value == 0 || t2.value == 0) continue;
                        row.rhs -= mpq_class(orient * ways * t1.value * t2.value);
                    }
                }
            }
        };
        rec(rec, 0);
    }

    void solve_level(long d, int r) {
        LevelKey level{d, r};
        auto multisets = level_multisets(d, r);
        if (multisets.empty()) throw std::logic_error("empty WDVV level");
        std::map<std::vector<int>, int> index;
        for (const auto& ms : multisets) index[ms] = static_cast<int>(index.size());
        const int u = static_cast<int>(index.size());

        std::vector<Row> rows;
        for (const auto& ms : multisets) {
            // distinct value choices for (x = split insertion, u3 = gamma3,
            // v4 = gamma4); S is the rest.
            std::vector<int> distinct = ms;
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            for (int x : distinct) {
                std::vector<int> rest1 = ms;
                rest1.erase(std::find(rest1.begin(), rest1.end(), x));
                std::vector<int> d1v = rest1;
                d1v.erase(std::unique(d1v.begin(), d1v.end()), d1v.end());
                for (int u3 : d1v) {
                    std::vector<int> rest2 = rest1;
                    rest2.erase(std::find(rest2.begin(), rest2.end(), u3));
                    std::vector<int> d2v = rest2;
                    d2v.erase(std::unique(d2v.begin(), d2v.end()), d2v.end());
                    for (int v4 : d2v) {
                        std::vector<int> s = rest2;
                        s.erase(std::find(s.begin(), s.end(), v4));
                        Row row;
                        // F(x-1, 1 | u3, v4; S) - F(x-1, u3 | 1, v4; S) = 0
                        accumulate_side(row, d, x - 1, 1, u3, v4, s, +1, level);
                        accumulate_side(row, d, x - 1, u3, 1, v4, s, -1, level);
                        if (!row.coeff.empty() || row.rhs != 0) rows.push_back(std::move(row));
                    }
                }
            }
        }

        // Exact Gaussian elimination of the level system.
        const int ncols = u;
        std::vector<std::vector<mpq_class>> a;
        for (const auto& row : rows) {
            std::vector<mpq_class> v(ncols + 1, mpq_class(0));
            for (const auto& [key, c] : row.coeff) v[index.at(key)] = c;
            v[ncols] = row.rhs;
            a.push_back(std::move(v));
        }
        std::vector<int> pivot_of_col(ncols, -1);
        int rank = 0;
        for (int col = 0; col < ncols && rank < static_cast<int>(a.size()); ++col) {
            int piv = -1;
            for (int i = rank; i < static_cast<int>(a.size()); ++i)
                if (a[i][col] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(a[rank], a[piv]);
            mpq_class dd = a[rank][col];
            for (auto& x : a[rank]) x /= dd;
            for (int i = 0; i < static_cast<int>(a.size()); ++i) {
                if (i == rank || a[i][col] == 0) continue;
                mpq_class f = a[i][col];
                for (int j = col; j <= ncols; ++j) a[i][j] -= f * a[rank][j];
            }
            pivot_of_col[col] = rank;
            ++rank;
        }
        for (int i = rank; i < static_cast<int>(a.size()); ++i)
            if (a[i][ncols] != 0) throw std::logic_error("inconsistent WDVV system");
        for (int col = 0; col < ncols; ++col)
            if (pivot_of_col[col] < 0) throw std::logic_error("underdetermined WDVV level");

        for (const auto& [ms, idx] : index) {
            mpq_class val = a[pivot_of_col[idx]][ncols];
            val.canonicalize();
            if (val.get_den() != 1) throw std::logic_error("non-integral WDVV solution");
            memo[{d, ms}] = mpz_class(val.get_num());
        }
    }
};

Engine& engine_for(int n) {
    static std::map<int, Engine> engines;
    auto it = engines.find(n);
    if (it == engines.end()) it = engines.emplace(n, Engine(n)).first;
    return it->second;
}

std::mutex gw_mutex;

}  // namespace

mpz_class gw_pn(const GWQuery& q) {
    if (q.n < 2) throw std::invalid_argument("n must be >= 2");
    if (q.d < 0) throw std::invalid_argument("degree must be >= 0");
    for (int a : q.insertions)
        if (a < 2 || a > q.n)
            throw std::invalid_argument("use divisor/fundamental axioms externally");
    GWQuery canon = q;
    canon.canonicalize();
    std::lock_guard<std::mutex> lock(gw_mutex);
    return engine_for(q.n).eval(canon.d, canon.insertions);
}

mpz_class kontsevich_p2(long d) {
    if (d < 1) throw std::invalid_argument("degree must be >= 1");
    static std::map<long, mpz_class> cache = {{1, 1}};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    for (long k = 2; k <= d; ++k) {
        if (cache.count(k)) continue;
        mpz_class nd = 0;
        for (long d1 = 1; d1 < k; ++d1) {
            long d2 = k - d1;
            mpz_class term = cache.at(d1) * cache.at(d2) * d1 * d1 * d2;
            term *= mpz_class(d2) * binom(3 * k - 4, 3 * d1 - 2) -
                    mpz_class(d1) * binom(3 * k - 4, 3 * d1 - 1);
            nd += term;
        }
        cache[k] = nd;
    }
    return cache.at(d);
}

std::optional<Stationary> stationary(int n, long d) {
    if (n < 2 || d < 1) throw std::invalid_argument("need n >= 2, d >= 1");
    long num = (n + 1) * d + n - 3;
    if (num % (n - 1) != 0) return std::nullopt;
    Stationary s;
    s.r = num / (n - 1);
    GWQuery q;
    q.n = n;
    q.d = d;
    q.insertions.assign(s.r, n);
    s.value = gw_pn(q);
    return s;
}

TradeResult trade_points(int n, int m, const mpz_class& d,
                         const std::vector<mpz_class>& a, long r) {
    TradeResult out;
    if (static_cast<int>(a.size()) > m) {
        out.reason = "more multiplicities than points";
        return out;
    }
    long total = 0;
    for (const auto& v : a) {
        if (v != 0 && v != 1) {
            out.reason = "multiplicity >= 2 conditions are not point conditions";
            return out;
        }
        total += (v == 1) ? 1 : 0;
    }
    if (d < 0) {
        out.reason = "negative degree";
        return out;
    }
    out.tradeable = true;
    out.traded = total;
    out.query.n = n;
    out.query.d = mpz_get_si(d.get_mpz_t());
    out.query.insertions.assign(r + total, n);
    return out;
}

namespace {

std::string certificate_status(int n, int m, const mpz_class& d,
                               const std::vector<mpz_class>& a, long bound) {
    try {
        Certificate cert = builtin_certificate(n, m, d, a);
        CertResult res = certify_nonexceptional(n, m, d, a, cert, bound);
        std::string s = res.status == CertStatus::Certified ? "certified" : "inconclusive";
        return s + " (" + cert.provenance + ")";
    } catch (const std::exception& e) {
        return std::string("unavailable: ") + e.what();
    }
}

}  // namespace

SymmetryReport symmetry_check(int n, int m, const mpz_class& d,
                              const std::vector<mpz_class>& a, long r, long bound) {
    if (m < n + 1) throw std::invalid_argument("m must be >= n+1");
    SymmetryReport rep;
    std::vector<mpz_class> af = a;
    af.resize(m, 0);
    TransformedClass prime = cremona_transform_class(n, m, d, af);

    rep.beta.d = d;
    rep.beta.a = af;
    rep.beta_prime.d = prime.d;
    rep.beta_prime.a = prime.a;
    rep.fixed_class = (prime.d == d && prime.a == af);

    long b = bound > 0 ? bound : std::max<long>(1, mpz_get_si(d.get_mpz_t()));
    rep.beta_certificate = certificate_status(n, m, d, af, b);
    rep.beta_prime_certificate =
        prime.d >= 0 ? certificate_status(n, m, prime.d, prime.a, b) : "unavailable: negative degree";

    auto evaluate = [&](SymmetrySide& side) {
        if (side.d <= 0) {
            side.reason = "degree must be positive for point trading";
            return;
        }
        TradeResult tr = trade_points(n, m, side.d, side.a, r);
        if (!tr.tradeable) {
            side.reason = tr.reason;
            return;
        }
        side.computable = true;
        side.value = gw_pn(tr.query);
    };
    evaluate(rep.beta);
    evaluate(rep.beta_prime);
    if (rep.beta.computable && rep.beta_prime.computable)
        rep.equal = (rep.beta.value == rep.beta_prime.value);
    return rep;
}

}  // namespace cresym
