#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/localder.hpp"
#include "leibniz/sampler.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace leibniz {

// ---------------------------------------------------------------------------
// Pair interpolation and separating elements
// ---------------------------------------------------------------------------

/// Coefficients c with (sum c_i D_i)(x) = fx and (sum c_i D_i)(y) = fy, jointly.
inline std::optional<Vec> pair_interpolate(const Vec& x, const Vec& fx, const Vec& y,
                                           const Vec& fy, const OperatorSubspace& der)
{
    const std::size_t n = der.operator_dim();
    if (x.size() != n || fx.size() != n || y.size() != n || fy.size() != n)
        throw std::invalid_argument("dimension mismatch");
    const auto basis = der.basis();
    Matrix sys(2 * n, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const Vec ix = basis[c].apply(x);
        const Vec iy = basis[c].apply(y);
        for (std::size_t r = 0; r < n; ++r) {
            sys.at(r, c) = ix[r];
            sys.at(n + r, c) = iy[r];
        }
    }
    Vec rhs = fx;
    rhs.insert(rhs.end(), fy.begin(), fy.end());
    return solve(sys, rhs);
}

/// q separates Der when evaluation at q is injective: {D in Der : D(q)=0} = {0}.
/// A separating element forces every 2-local derivation to be a derivation
/// (subtract an interpolant at (q, xi) and use injectivity at q).
struct SeparationCertificate {
    Vec q;
    std::size_t der_dim = 0;
    std::size_t eval_dim = 0;
    bool separating = false;
};

inline SeparationCertificate is_separating(const OperatorSubspace& der, const Vec& q)
{
    SeparationCertificate cert;
    cert.q = q;
    cert.der_dim = der.dim();
    cert.eval_dim = evaluation_subspace(der, q).dim();
    cert.separating = cert.eval_dim == cert.der_dim;
    return cert;
}

/// Scans basis vectors, the all-chain sums the certification argument uses,
/// and seeded random small-integer vectors. Returns the first separating
/// element found; nullopt after pool exhaustion proves nothing.
inline std::optional<SeparationCertificate> find_separating_element(const LeibnizAlgebra& a,
                                                                    const OperatorSubspace& der,
                                                                    std::size_t random_pool = 1000,
                                                                    std::uint64_t seed = 1)
{
    std::vector<Vec> pool;
    for (std::size_t i = 0; i < a.dim(); ++i)
        pool.push_back(a.basis_vector(i));
    // prefix sums of the basis: for RModel this includes q = sum of all e^t_i
    Vec acc = zero_vec(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc[i] = 1;
        pool.push_back(acc);
    }
    for (std::size_t i = 0; i < random_pool; ++i) {
        SmallIntSampler rng(seed, 0x5e9aULL + i);
        Vec v = rng.vector(a.dim());
        if (!is_zero_vec(v))
            pool.push_back(std::move(v));
    }
    for (const Vec& q : pool) {
        SeparationCertificate cert = is_separating(der, q);
        if (cert.separating)
            return cert;
    }
    return std::nullopt;
}

struct TwoLocalVerdict {
    bool certified = false;
    std::optional<SeparationCertificate> certificate;
};

/// Certified iff a separating element exists in the scanned pool.
inline TwoLocalVerdict certify_twolocal_equals_der(const LeibnizAlgebra& a,
                                                   const OperatorSubspace& der,
                                                   std::size_t random_pool = 1000,
                                                   std::uint64_t seed = 1)
{
    TwoLocalVerdict v;
    auto found = find_separating_element(a, der, random_pool, seed);
    if (found) {
        v.certified = true;
        v.certificate = std::move(found);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Rank-one derivation pencils
// ---------------------------------------------------------------------------

/// Basis of { l : (v -> l(v) w) is a derivation }. A 2-dimensional pencil is
/// exactly what the non-additive 2-local counterexample needs.
inline SubspaceBasis rank_one_derivation_pencil(const OperatorSubspace& der, const Vec& w)
{
    const std::size_t n = der.operator_dim();
    if (w.size() != n)
        throw std::invalid_argument("dimension mismatch");
    if (is_zero_vec(w))
        throw std::invalid_argument("image vector must be nonzero");
    const auto basis = der.basis();
    const std::size_t d = basis.size();
    // unknowns: l_0..l_{n-1}, c_1..c_d with vec(w l^T) = sum c_i vec(D_i)
    Matrix sys(n * n, n + d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t row = r * n + c;
            sys.at(row, c) = w[r];
            for (std::size_t i = 0; i < d; ++i)
                sys.at(row, n + i) = -basis[i].matrix().at(r, c);
        }
    std::vector<Vec> functionals;
    for (const Vec& sol : nullspace(sys))
        functionals.push_back(Vec(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(n)));
    return SubspaceBasis::from_spanning(n, functionals);
}

// ---------------------------------------------------------------------------
// The non-additive 2-local operator
// ---------------------------------------------------------------------------

/// nabla(xi) = f(l1(xi), l2(xi)) w with f(z1,z2) = z1^2/z2 and f(z1,0) = 0.
/// f is homogeneous of degree 1 but not additive, and both rank-one maps
/// v -> l_i(v) w must be derivations (checked at construction), which makes
/// nabla a 2-local derivation that is not a derivation.
class NablaSpec {
public:
    NablaSpec(Vec l1, Vec l2, Vec w, const OperatorSubspace& der)
        : l1_(std::move(l1)), l2_(std::move(l2)), w_(std::move(w))
    {
        const std::size_t n = der.operator_dim();
        if (l1_.size() != n || l2_.size() != n || w_.size() != n)
            throw std::invalid_argument("dimension mismatch");
        const SubspaceBasis pair = SubspaceBasis::from_spanning(n, {l1_, l2_});
        if (pair.dim() != 2)
            throw std::invalid_argument("l1 and l2 must be linearly independent");
        if (!der.contains(rank_one(w_, l1_)) || !der.contains(rank_one(w_, l2_)))
            throw std::invalid_argument("rank-one factors are not derivations");
    }

    const Vec& l1() const { return l1_; }
    const Vec& l2() const { return l2_; }
    const Vec& w() const { return w_; }
    std::size_t dim() const { return w_.size(); }

private:
    Vec l1_, l2_, w_;
};

inline Vec evaluate_nabla(const NablaSpec& spec, const Vec& xi)
{
    if (xi.size() != spec.dim())
        throw std::invalid_argument("dimension mismatch");
    const Rational z1 = dot(spec.l1(), xi);
    const Rational z2 = dot(spec.l2(), xi);
    if (is_zero(z2))
        return zero_vec(spec.dim());
    return scale(z1 * z1 / z2, spec.w());
}

// ---------------------------------------------------------------------------
// 2-local verification and additivity refutation
// ---------------------------------------------------------------------------

struct TwoLocalPairResult {
    bool all_pairs_witnessed = true;
    std::optional<std::pair<Vec, Vec>> failed_pair;
    std::size_t trials = 0;
};

/// Solves the 2x2 system
///   l1(xi) a + l2(xi) b = f(xi),  l1(eta) a + l2(eta) b = f(eta)
/// for the pencil coefficients of a derivation D = a (l1 w) + b (l2 w)
/// interpolating nabla at both points. Proportional rows stay consistent
/// because f is homogeneous of degree one.
inline std::optional<Vec> interpolate_nabla_pair(const NablaSpec& spec, const Vec& xi,
                                                 const Vec& eta)
{
    const auto rhs_of = [&](const Vec& v) {
        const Rational z1 = dot(spec.l1(), v);
        const Rational z2 = dot(spec.l2(), v);
        return is_zero(z2) ? Rational(0) : z1 * z1 / z2;
    };
    Matrix sys(2, 2);
    sys.at(0, 0) = dot(spec.l1(), xi);
    sys.at(0, 1) = dot(spec.l2(), xi);
    sys.at(1, 0) = dot(spec.l1(), eta);
    sys.at(1, 1) = dot(spec.l2(), eta);
    return solve(sys, Vec{rhs_of(xi), rhs_of(eta)});
}

/// Runs interpolate_nabla_pair on seeded random pairs; a failed pair would
/// refute the 2-local property of nabla.
inline TwoLocalPairResult verify_twolocal_property(const NablaSpec& spec, std::size_t trials,
                                                   std::uint64_t seed)
{
    TwoLocalPairResult result;
    result.trials = trials;
    const std::size_t n = spec.dim();
    for (std::size_t i = 0; i < trials; ++i) {
        SmallIntSampler rng(seed, 2 * i);
        SmallIntSampler rng2(seed, 2 * i + 1);
        const Vec xi = rng.vector(n);
        const Vec eta = rng2.vector(n);
        if (!interpolate_nabla_pair(spec, xi, eta)) {
            result.all_pairs_witnessed = false;
            result.failed_pair = {xi, eta};
            return result;
        }
    }
    return result;
}

/// A pair (u, v) with nabla(u+v) != nabla(u) + nabla(v), searched over the
/// small-integer grid in dual coordinates of (l1, l2). Such a pair always
/// exists for the ratio rule: (l1,l2) = (1,0) and (0,1) is one.
inline std::pair<Vec, Vec> refute_additivity(const NablaSpec& spec)
{
    const std::size_t n = spec.dim();
    const Matrix functionals = Matrix::from_rows({spec.l1(), spec.l2()}, n);
    const auto u1 = solve(functionals, Vec{Rational(1), Rational(0)});
    const auto u2 = solve(functionals, Vec{Rational(0), Rational(1)});
    if (!u1 || !u2)
        throw std::logic_error("independent functionals must admit dual vectors");
    for (long long a1 = -3; a1 <= 3; ++a1)
        for (long long a2 = -3; a2 <= 3; ++a2)
            for (long long b1 = -3; b1 <= 3; ++b1)
                for (long long b2 = -3; b2 <= 3; ++b2) {
                    const Vec u = add(scale(Rational(a1), *u1), scale(Rational(a2), *u2));
                    const Vec v = add(scale(Rational(b1), *u1), scale(Rational(b2), *u2));
                    if (evaluate_nabla(spec, add(u, v)) !=
                        add(evaluate_nabla(spec, u), evaluate_nabla(spec, v)))
                        return {u, v};
                }
    throw std::logic_error("no additivity witness in the search grid");
}

// ---------------------------------------------------------------------------
// NablaSpec construction from the pencil
// ---------------------------------------------------------------------------

struct NablaBuildResult {
    std::optional<NablaSpec> spec;
    Vec image;                   // best image vector tried
    std::size_t pencil_dim = 0;  // its pencil dimension
};

/// Picks the image vector by family: the f_j of the first alpha_j = -1 for an
/// Lt tag, f_n for an R2 tag, otherwise the first basis vector whose pencil is
/// at least 2-dimensional. Construction is refused (empty spec) when every
/// pencil is too small, e.g. Lt with all alphas zero or any R1.
inline NablaBuildResult build_nabla_spec(const LeibnizAlgebra& a, const OperatorSubspace& der)
{
    std::vector<std::size_t> candidates;
    if (a.family()) {
        if (const auto* lt = std::get_if<LtTag>(&*a.family())) {
            for (std::size_t j = 0; j < lt->n; ++j)
                if (lt->alphas[j] == -1) {
                    candidates.push_back(j);
                    break;
                }
        } else if (const auto* r2 = std::get_if<R2Tag>(&*a.family())) {
            candidates.push_back(r2->n - 1);  // f_n
        }
    }
    if (candidates.empty())
        for (std::size_t i = 0; i < a.dim(); ++i)
            candidates.push_back(i);

    NablaBuildResult result;
    for (std::size_t idx : candidates) {
        const Vec w = a.basis_vector(idx);
        const SubspaceBasis pencil = rank_one_derivation_pencil(der, w);
        if (result.image.empty() || pencil.dim() > result.pencil_dim) {
            result.image = w;
            result.pencil_dim = pencil.dim();
        }
        if (pencil.dim() >= 2) {
            result.spec.emplace(pencil.vectors()[0], pencil.vectors()[1], w, der);
            return result;
        }
    }
    return result;
}

} // namespace leibniz
