#include "cresym/cremona.hpp"

#include <random>
#include <stdexcept>

namespace cresym {

CremonaMap build_cremona(int n, int m) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (m < n + 1) throw std::invalid_argument("m must be >= n+1");
    const int extras = m - (n + 1);
    auto ring = get_ring(n, n - 2, extras);
    const StageFan& sf = ring->stage_fan();
    const BasisChange& bc = ring->change();

    CremonaMap cm;
    cm.n = n;
    cm.m = m;
    cm.basis = ring->basis();
    const int dim = cm.basis.dim();
    const int tdim = bc.basis.dim();
    const int nrays = static_cast<int>(sf.fan.rays.size());

    // Ray permutation: label alpha -> complement(alpha).
    std::vector<int> perm(nrays);
    for (int r = 0; r < nrays; ++r) {
        int img = sf.ray_of_label(subset_complement(sf.ray_labels[r], n));
        if (img < 0) throw std::logic_error("final stage must be complement-closed");
        perm[r] = img;
    }

    // Divisor pullback: conjugate the permutation through the basis change;
    // extra points are fixed.
    cm.div_pullback.assign(dim, ZVec(dim, 0));
    for (int j = 0; j < tdim; ++j) {
        // geometric basis j -> toric -> permute -> geometric
        ZVec toric(nrays, 0);
        for (int r = 0; r < nrays; ++r) toric[r] = bc.geom_to_toric[r][j];
        ZVec permuted(nrays, 0);
        for (int r = 0; r < nrays; ++r) permuted[perm[r]] += toric[r];
        for (int i = 0; i < tdim; ++i) {
            mpz_class s = 0;
            for (int r = 0; r < nrays; ++r) s += bc.toric_to_geom[i][r] * permuted[r];
            cm.div_pullback[i][j] = s;
        }
    }
    for (int j = tdim; j < dim; ++j) cm.div_pullback[j][j] = 1;

    // Curve pushforward: the adjoint under the pairing, B = P A^T P with
    // P = diag(1, -1, ..., -1).
    auto sign = [&](int i) { return i == 0 ? 1 : -1; };
    cm.curve_pushforward.assign(dim, ZVec(dim, 0));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            cm.curve_pushforward[i][j] = mpz_class(sign(i) * sign(j)) * cm.div_pullback[j][i];
    return cm;
}

TransformedClass cremona_transform_class(int n, int m, const mpz_class& d,
                                         std::vector<mpz_class> a) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (m < n + 1) throw std::invalid_argument("m must be >= n+1");
    if (static_cast<int>(a.size()) > m) throw std::invalid_argument("more multiplicities than points");
    a.resize(m, 0);
    mpz_class s = 0;
    for (int i = 0; i < n + 1; ++i) s += a[i];
    TransformedClass out;
    out.d = n * d - (n - 1) * s;
    out.a.resize(m);
    for (int i = 0; i < m; ++i)
        out.a[i] = (i < n + 1) ? mpz_class(d - (s - a[i])) : a[i];
    return out;
}

ZVec canonical_class_full(const CremonaMap& cm) {
    const StageFan sf = build_stage(cm.n, cm.n - 2);
    ZVec k = canonical_class(sf);
    k.resize(cm.basis.dim(), mpz_class(cm.n - 1));
    return k;
}

ZVec apply_matrix(const ZMatrix& m, const ZVec& v) {
    const int dim = static_cast<int>(m.size());
    if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("matrix/vector size mismatch");
    ZVec out(dim, 0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) out[i] += m[i][j] * v[j];
    return out;
}

namespace {

bool is_identity(const ZMatrix& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

ZMatrix mat_mul(const ZMatrix& a, const ZMatrix& b) {
    const int dim = static_cast<int>(a.size());
    ZMatrix c(dim, ZVec(dim, 0));
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < dim; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

}  // namespace

ConsistencyReport verify_consistency(int n, int m, long samples, std::uint64_t seed) {
    ConsistencyReport rep;
    auto fail = [&](const std::string& why) {
        rep.ok = false;
        if (rep.failure.empty()) rep.failure = why;
    };

    CremonaMap cm = build_cremona(n, m);
    const int dim = cm.basis.dim();

    if (!is_identity(mat_mul(cm.div_pullback, cm.div_pullback))) fail("divisor action is not an involution");
    if (!is_identity(mat_mul(cm.curve_pushforward, cm.curve_pushforward)))
        fail("curve action is not an involution");

    // Adjunction <tau* D, beta> = <D, tau_* beta> on full bases:
    // A^T P = P B with P the pairing matrix.
    auto ring = get_ring(n, n - 2, m - (n + 1));
    const ZMatrix& p = ring->table().m;
    {
        ZMatrix at(dim, ZVec(dim, 0));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) at[i][j] = cm.div_pullback[j][i];
        if (mat_mul(at, p) != mat_mul(p, cm.curve_pushforward)) fail("adjunction fails on bases");
    }

    // tau* fixes the canonical class.
    ZVec k = canonical_class_full(cm);
    if (apply_matrix(cm.div_pullback, k) != k) fail("canonical class not fixed");

    // Closed form vs matrix pushforward on point classes.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::uniform_int_distribution<long> deg(0, 12);
    ZVec minus_k = k;
    for (auto& v : minus_k) v = -v;

    for (long trial = 0; trial < samples && rep.ok; ++trial) {
        mpz_class d(deg(rng));
        std::vector<mpz_class> a(m);
        for (auto& v : a) v = coeff(rng);

        TransformedClass closed = cremona_transform_class(n, m, d, a);
        ZVec beta = curve_from_point_data(cm.basis, d, a);
        ZVec image = apply_matrix(cm.curve_pushforward, beta);

        for (size_t c = 0; c < cm.basis.centers.size(); ++c)
            if (subset_size(cm.basis.centers[c]) >= 2 && image[c + 1] != 0)
                fail("pushforward left the point-class span");
        ZVec expected = curve_from_point_data(cm.basis, closed.d, closed.a);
        if (image != expected) fail("closed form and fan-derived pushforward disagree");

        mpz_class deg_before = ring->pair(minus_k, beta);
        mpz_class deg_after = ring->pair(minus_k, image);
        if (deg_before != deg_after) fail("anticanonical degree not preserved");
        // Same number by the explicit formula.
        mpz_class formula = (n + 1) * d;
        for (int i = 0; i < m; ++i) formula -= (n - 1) * a[i];
        if (formula != deg_before) fail("anticanonical degree formula mismatch");

        if (apply_matrix(cm.curve_pushforward, image) != beta) fail("pushforward not involutive on class");
        ++rep.classes_checked;
    }
    return rep;
}

}  // namespace cresym
