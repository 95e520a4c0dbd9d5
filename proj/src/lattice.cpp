#include "cresym/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace cresym {

int Fan::ray_index(const LatticeVector& v) const {
    for (size_t i = 0; i < rays.size(); ++i)
        if (rays[i] == v) return static_cast<int>(i);
    return -1;
}

bool Fan::is_cone(const Cone& sorted_rays) const {
    for (const Cone& mc : max_cones)
        if (std::includes(mc.begin(), mc.end(), sorted_rays.begin(), sorted_rays.end()))
            return true;
    return false;
}

LatticeVector primitive(const LatticeVector& v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, x);
    if (g == 0) throw std::invalid_argument("not a ray direction");
    LatticeVector out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

Int det_int(const IntMatrix& m) {
    // Bareiss fraction-free elimination; exact for the small matrices here.
    IntMatrix a = m;
    const int n = static_cast<int>(a.size());
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return n == 0 ? 1 : sign * a[n - 1][n - 1];
}

namespace {

// Adjugate of an n x n integer matrix (adj * m = det * I).
IntMatrix adjugate(const IntMatrix& m) {
    const int n = static_cast<int>(m.size());
    IntMatrix adj(n, std::vector<Int>(n, 0));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    IntMatrix minor(n - 1, std::vector<Int>(n - 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor[mr][mc++] = m[r][c];
                }
                ++mr;
            }
            Int cof = det_int(minor);
            if ((i + j) % 2 != 0) cof = -cof;
            adj[j][i] = cof;  // transpose of cofactor matrix
        }
    }
    return adj;
}

// Columns of the basis matrix are the given rays.
IntMatrix basis_matrix(const Fan& f, const Cone& cone) {
    const int n = f.dim;
    IntMatrix b(n, std::vector<Int>(n, 0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) b[i][j] = f.rays[cone[j]][i];
    return b;
}

void check_structure(const Fan& f) {
    if (f.dim <= 0) throw std::invalid_argument("fan dimension must be positive");
    std::set<LatticeVector> seen;
    for (const auto& r : f.rays) {
        if (static_cast<int>(r.size()) != f.dim)
            throw std::invalid_argument("ray has wrong dimension");
        if (primitive(r) != r) throw std::invalid_argument("ray not primitive");
        if (!seen.insert(r).second) throw std::invalid_argument("not a fan: duplicate rays");
    }
    std::vector<bool> used(f.rays.size(), false);
    for (const Cone& mc : f.max_cones) {
        if (mc.empty()) throw std::invalid_argument("empty maximal cone");
        if (!std::is_sorted(mc.begin(), mc.end()) ||
            std::adjacent_find(mc.begin(), mc.end()) != mc.end())
            throw std::invalid_argument("cone ray indices must be sorted and distinct");
        for (int r : mc) {
            if (r < 0 || r >= static_cast<int>(f.rays.size()))
                throw std::invalid_argument("cone references missing ray");
            used[r] = true;
        }
    }
    for (size_t i = 0; i < used.size(); ++i)
        if (!used[i]) throw std::invalid_argument("ray belongs to no maximal cone");
    for (size_t i = 0; i < f.max_cones.size(); ++i)
        for (size_t j = 0; j < f.max_cones.size(); ++j)
            if (i != j && std::includes(f.max_cones[j].begin(), f.max_cones[j].end(),
                                        f.max_cones[i].begin(), f.max_cones[i].end()))
                throw std::invalid_argument("not a fan: maximal cone contained in another");
}

// Facet -> list of maximal cone indices, over full-dimensional cones.
std::map<Cone, std::vector<int>> facet_map(const Fan& f) {
    std::map<Cone, std::vector<int>> facets;
    for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        const Cone& mc = f.max_cones[ci];
        if (static_cast<int>(mc.size()) != f.dim) continue;
        for (size_t drop = 0; drop < mc.size(); ++drop) {
            Cone facet;
            facet.reserve(mc.size() - 1);
            for (size_t k = 0; k < mc.size(); ++k)
                if (k != drop) facet.push_back(mc[k]);
            facets[facet].push_back(static_cast<int>(ci));
        }
    }
    return facets;
}

}  // namespace

FanReport validate_fan(const Fan& f, std::uint64_t seed) {
    check_structure(f);
    FanReport rep;
    rep.ray_count = static_cast<int>(f.rays.size());
    rep.max_cone_count = static_cast<int>(f.max_cones.size());

    rep.smooth = true;
    std::vector<IntMatrix> adj_cache(f.max_cones.size());
    std::vector<Int> det_cache(f.max_cones.size(), 0);
    for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        const Cone& mc = f.max_cones[ci];
        if (static_cast<int>(mc.size()) != f.dim) {
            rep.smooth = false;
            continue;
        }
        IntMatrix b = basis_matrix(f, mc);
        Int d = det_int(b);
        det_cache[ci] = d;
        if (d != 1 && d != -1) rep.smooth = false;
        if (d != 0) adj_cache[ci] = adjugate(b);
    }

    bool two_sided = true;
    for (const auto& [facet, owners] : facet_map(f)) {
        if (owners.size() > 2) throw std::invalid_argument("not a fan: facet in >2 maximal cones");
        if (owners.size() != 2) two_sided = false;
    }

    // Deterministic sample point location. A point strictly interior to two
    // distinct maximal cones means the cones overlap.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Int> dist(-50, 50);
    bool covered_all = true;
    for (int trial = 0; trial < 1000; ++trial) {
        LatticeVector x(f.dim);
        bool zero = true;
        for (int i = 0; i < f.dim; ++i) {
            x[i] = dist(rng);
            if (x[i] != 0) zero = false;
        }
        if (zero) continue;
        int containers = 0, strict = 0;
        for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
            if (det_cache[ci] == 0) continue;
            const IntMatrix& adj = adj_cache[ci];
            Int sgn = det_cache[ci] > 0 ? 1 : -1;
            bool inside = true, interior = true;
            for (int i = 0; i < f.dim && inside; ++i) {
                Int num = 0;
                for (int j = 0; j < f.dim; ++j) num += adj[i][j] * x[j];
                num *= sgn;
                if (num < 0) inside = false;
                if (num <= 0) interior = false;
            }
            if (inside) {
                ++containers;
                if (interior) ++strict;
            }
        }
        if (strict > 1) throw std::invalid_argument("not a fan: overlapping maximal cones");
        if (containers == 0) covered_all = false;
    }
    rep.complete = two_sided && covered_all;
    return rep;
}

Fan star_subdivision(const Fan& f, const Cone& c) {
    if (c.empty()) throw std::invalid_argument("cannot subdivide the zero cone");
    Cone cs = c;
    std::sort(cs.begin(), cs.end());
    for (int r : cs)
        if (r < 0 || r >= static_cast<int>(f.rays.size()))
            throw std::invalid_argument("not a cone of the fan");
    if (!f.is_cone(cs)) throw std::invalid_argument("not a cone of the fan");

    LatticeVector sum(f.dim, 0);
    for (int r : cs)
        for (int i = 0; i < f.dim; ++i) sum[i] += f.rays[r][i];
    LatticeVector nray = primitive(sum);
    if (f.ray_index(nray) >= 0)
        throw std::logic_error("star subdivision would duplicate an existing ray");

    Fan out;
    out.dim = f.dim;
    out.rays = f.rays;
    out.rays.push_back(nray);
    const int nidx = static_cast<int>(out.rays.size()) - 1;

    for (const Cone& mc : f.max_cones) {
        if (!std::includes(mc.begin(), mc.end(), cs.begin(), cs.end())) {
            out.max_cones.push_back(mc);
            continue;
        }
        // Replace by <new ray, facets of mc not containing c>.
        for (int drop : cs) {
            Cone nc;
            nc.reserve(mc.size());
            for (int r : mc)
                if (r != drop) nc.push_back(r);
            nc.push_back(nidx);
            std::sort(nc.begin(), nc.end());
            out.max_cones.push_back(nc);
        }
    }
    return out;
}

std::vector<WallData> enumerate_walls(const Fan& f) {
    std::vector<WallData> walls;
    for (const auto& [facet, owners] : facet_map(f)) {
        if (owners.size() != 2) throw std::invalid_argument("fan not complete");
        const Cone& sigma = f.max_cones[owners[0]];
        const Cone& tau = f.max_cones[owners[1]];
        int u = -1, v = -1;
        for (int r : sigma)
            if (!std::binary_search(facet.begin(), facet.end(), r)) u = r;
        for (int r : tau)
            if (!std::binary_search(facet.begin(), facet.end(), r)) v = r;

        // Express v in the basis of sigma; smoothness forces the u-coordinate
        // to be -1, giving the relation u + v - sum c_w w = 0.
        IntMatrix b = basis_matrix(f, sigma);
        Int d = det_int(b);
        if (d != 1 && d != -1) throw std::invalid_argument("enumerate_walls requires a smooth fan");
        IntMatrix adj = adjugate(b);
        std::vector<Int> coord(f.dim, 0);
        for (int i = 0; i < f.dim; ++i) {
            Int num = 0;
            for (int j = 0; j < f.dim; ++j) num += adj[i][j] * f.rays[v][j];
            coord[i] = num / d;  // exact since |d| = 1
        }

        WallData w;
        w.wall = facet;
        w.adjacent = {owners[0], owners[1]};
        w.relation[u] = 1;
        w.relation[v] = 1;
        for (int j = 0; j < f.dim; ++j) {
            int ray = sigma[j];
            if (ray == u) {
                if (coord[j] != -1) throw std::logic_error("wall relation: expected coefficient -1");
                continue;
            }
            if (coord[j] != 0) w.relation[ray] = -coord[j];
        }
        // Exact check of the relation.
        for (int i = 0; i < f.dim; ++i) {
            Int s = 0;
            for (const auto& [ray, c] : w.relation) s += c * f.rays[ray][i];
            if (s != 0) throw std::logic_error("wall relation does not vanish");
        }
        walls.push_back(std::move(w));
    }
    return walls;
}

LatticeMapResult apply_lattice_map(const Fan& f, const IntMatrix& m) {
    if (static_cast<int>(m.size()) != f.dim) throw std::invalid_argument("matrix dimension mismatch");
    Int d = det_int(m);
    if (d != 1 && d != -1) throw std::invalid_argument("not unimodular");

    LatticeMapResult res;
    res.ray_image.assign(f.rays.size(), -1);
    for (size_t ri = 0; ri < f.rays.size(); ++ri) {
        LatticeVector img(f.dim, 0);
        for (int i = 0; i < f.dim; ++i)
            for (int j = 0; j < f.dim; ++j) img[i] += m[i][j] * f.rays[ri][j];
        int idx = f.ray_index(img);
        if (idx < 0) {
            res.automorphism = false;
            res.witness = {static_cast<int>(ri)};
            return res;
        }
        res.ray_image[ri] = idx;
    }

    std::map<Cone, int> cone_index;
    for (size_t ci = 0; ci < f.max_cones.size(); ++ci) cone_index[f.max_cones[ci]] = static_cast<int>(ci);
    res.cone_image.assign(f.max_cones.size(), -1);
    for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        Cone img;
        img.reserve(f.max_cones[ci].size());
        for (int r : f.max_cones[ci]) img.push_back(res.ray_image[r]);
        std::sort(img.begin(), img.end());
        auto it = cone_index.find(img);
        if (it == cone_index.end()) {
            res.automorphism = false;
            res.witness = f.max_cones[ci];
            return res;
        }
        res.cone_image[ci] = it->second;
    }
    res.automorphism = true;
    return res;
}

}  // namespace cresym
