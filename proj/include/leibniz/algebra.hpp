#pragma once

#include "leibniz/matrix.hpp"
#include "leibniz/subspace.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace leibniz {

// ---------------------------------------------------------------------------
// Family tags carried by the built-in algebras (metadata only; nothing in the
// kernels depends on them, but schedules and the CLI use them for defaults).
// ---------------------------------------------------------------------------

struct LtTag {
    std::size_t n = 0;
    std::vector<int> alphas;  // each -1 or 0
    bool operator==(const LtTag&) const = default;
};
struct R1Tag {
    std::size_t n = 0;
    bool operator==(const R1Tag&) const = default;
};
struct R2Tag {
    std::size_t n = 0;
    bool operator==(const R2Tag&) const = default;
};
struct ModelNTag {
    std::vector<std::size_t> m;
    bool operator==(const ModelNTag&) const = default;
};
struct RModelTag {
    std::vector<std::size_t> m;
    bool operator==(const RModelTag&) const = default;
};

using FamilyTag = std::variant<LtTag, R1Tag, R2Tag, ModelNTag, RModelTag>;

// ---------------------------------------------------------------------------
// LeibnizAlgebra
// ---------------------------------------------------------------------------

/// Finite-dimensional algebra given by structure constants:
/// [e_i, e_j] = sum_k c_ijk e_k. Immutable once built.
class LeibnizAlgebra {
public:
    using Terms = std::vector<std::pair<std::size_t, Rational>>;
    using StructureMap = std::map<std::pair<std::size_t, std::size_t>, Terms>;

    LeibnizAlgebra(std::size_t dim, std::vector<std::string> basis_names, StructureMap structure,
                   std::optional<FamilyTag> family = std::nullopt)
        : dim_(dim),
          basis_names_(std::move(basis_names)),
          structure_(std::move(structure)),
          family_(std::move(family))
    {
        if (basis_names_.size() != dim_)
            throw std::invalid_argument("basis name count does not match dimension");
        for (const auto& [ij, terms] : structure_) {
            if (ij.first >= dim_ || ij.second >= dim_)
                throw std::invalid_argument("structure constant index out of range");
            std::vector<bool> seen(dim_, false);
            for (const auto& [k, c] : terms) {
                if (k >= dim_)
                    throw std::invalid_argument("structure constant target index out of range");
                if (seen[k])
                    throw std::invalid_argument("duplicate target index in structure constants");
                seen[k] = true;
                if (is_zero(c))
                    throw std::invalid_argument("zero structure constant must be omitted");
            }
        }
    }

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return basis_names_; }
    const StructureMap& structure() const { return structure_; }
    const std::optional<FamilyTag>& family() const { return family_; }

    Vec basis_vector(std::size_t i) const
    {
        Vec v = zero_vec(dim_);
        v.at(i) = 1;
        return v;
    }

    /// [e_i, e_j] in coordinates.
    Vec basis_bracket(std::size_t i, std::size_t j) const
    {
        Vec v = zero_vec(dim_);
        const auto it = structure_.find({i, j});
        if (it != structure_.end())
            for (const auto& [k, c] : it->second)
                v[k] = c;
        return v;
    }

    /// Bilinear extension of the structure constants.
    Vec bracket(const Vec& x, const Vec& y) const
    {
        if (x.size() != dim_ || y.size() != dim_)
            throw std::invalid_argument("bracket operand dimension mismatch");
        Vec v = zero_vec(dim_);
        for (const auto& [ij, terms] : structure_) {
            const Rational coeff = x[ij.first] * y[ij.second];
            if (is_zero(coeff))
                continue;
            for (const auto& [k, c] : terms)
                v[k] += coeff * c;
        }
        return v;
    }

    /// Matrix of right multiplication z -> [z, x]; column j holds [e_j, x].
    Matrix right_multiplication(const Vec& x) const
    {
        if (x.size() != dim_)
            throw std::invalid_argument("operand dimension mismatch");
        Matrix m(dim_, dim_);
        for (const auto& [ij, terms] : structure_) {
            const Rational& coeff = x[ij.second];
            if (is_zero(coeff))
                continue;
            for (const auto& [k, c] : terms)
                m.at(k, ij.first) += coeff * c;
        }
        return m;
    }

private:
    std::size_t dim_;
    std::vector<std::string> basis_names_;
    StructureMap structure_;
    std::optional<FamilyTag> family_;
};

// ---------------------------------------------------------------------------
// Leibniz identity
// ---------------------------------------------------------------------------

struct IdentityViolation {
    std::size_t i, j, k;
    Vec residual;  // [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]
};

/// Checks [x,[y,z]] = [[x,y],z] - [[x,z],y] on every basis triple.
/// Empty result iff the structure constants define a Leibniz algebra.
inline std::vector<IdentityViolation> check_leibniz_identity(const LeibnizAlgebra& a)
{
    const std::size_t n = a.dim();
    std::vector<IdentityViolation> out;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec ei = a.basis_vector(i);
        for (std::size_t j = 0; j < n; ++j) {
            const Vec ej = a.basis_vector(j);
            const Vec bij = a.basis_bracket(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                const Vec ek = a.basis_vector(k);
                Vec res = a.bracket(ei, a.basis_bracket(j, k));
                res = sub(res, a.bracket(bij, ek));
                res = add(res, a.bracket(a.basis_bracket(i, k), ej));
                if (!is_zero_vec(res))
                    out.push_back({i, j, k, std::move(res)});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Series and nilpotency / solvability
// ---------------------------------------------------------------------------

/// Span of all [u, w] over basis vectors of U and W.
inline SubspaceBasis product_subspace(const LeibnizAlgebra& a, const SubspaceBasis& u,
                                      const SubspaceBasis& w)
{
    if (u.ambient_dim() != a.dim() || w.ambient_dim() != a.dim())
        throw std::invalid_argument("ambient dimension mismatch");
    std::vector<Vec> spanning;
    for (const Vec& x : u.vectors())
        for (const Vec& y : w.vectors())
            spanning.push_back(a.bracket(x, y));
    return SubspaceBasis::from_spanning(a.dim(), spanning);
}

enum class SeriesKind { LowerCentral, Derived };

struct SeriesReport {
    SeriesKind kind;
    std::vector<std::size_t> dims;  // dim of the 1st, 2nd, ... term until stabilization
    bool terminates = false;        // reached 0
    std::size_t index = 0;          // 1-based position of the first zero term, when it terminates
};

/// Iterates the lower central series L^{k+1} = [L^k, L] or the derived series
/// L^{[s+1]} = [L^{[s]}, L^{[s]}] until the dimension stabilizes. A terminating
/// series ends in 0 and its 1-based zero position is the nilpotency
/// (solvability) index.
inline SeriesReport series(const LeibnizAlgebra& a, SeriesKind kind)
{
    SeriesReport rep;
    rep.kind = kind;
    const SubspaceBasis whole = SubspaceBasis::full(a.dim());
    SubspaceBasis current = whole;
    rep.dims.push_back(current.dim());
    if (current.dim() == 0) {
        rep.terminates = true;
        rep.index = 1;
        return rep;
    }
    while (true) {
        const SubspaceBasis next = kind == SeriesKind::LowerCentral
                                       ? product_subspace(a, current, whole)
                                       : product_subspace(a, current, current);
        rep.dims.push_back(next.dim());
        if (next.dim() == 0) {
            rep.terminates = true;
            rep.index = rep.dims.size();
            break;
        }
        if (next.dim() == current.dim())
            break;
        current = next;
    }
    return rep;
}

inline bool is_nilpotent(const LeibnizAlgebra& a)
{
    return series(a, SeriesKind::LowerCentral).terminates;
}

inline bool is_solvable(const LeibnizAlgebra& a)
{
    return series(a, SeriesKind::Derived).terminates;
}

// ---------------------------------------------------------------------------
// Jordan profiles and the characteristic sequence
// ---------------------------------------------------------------------------

/// Descending Jordan block sizes of the right multiplication by x, from the
/// rank sequence of its powers: #(blocks of size >= k) = rank(M^{k-1}) - rank(M^k).
/// Throws when the operator is not nilpotent.
inline std::vector<std::size_t> jordan_profile(const LeibnizAlgebra& a, const Vec& x)
{
    const std::size_t n = a.dim();
    const Matrix m = a.right_multiplication(x);
    std::vector<std::size_t> ranks;  // ranks[k] = rank(m^k)
    ranks.push_back(n);
    Matrix power = Matrix::identity(n);
    for (std::size_t k = 1; k <= n && ranks.back() > 0; ++k) {
        power = power.mul(m);
        ranks.push_back(rank(power));
    }
    if (ranks.back() != 0)
        throw std::invalid_argument("right multiplication operator is not nilpotent");
    std::vector<std::size_t> blocks;
    for (std::size_t k = 1; k < ranks.size(); ++k) {
        const std::size_t ge_k = ranks[k - 1] - ranks[k];
        const std::size_t ge_k1 = k < ranks.size() - 1 ? ranks[k] - ranks[k + 1] : 0;
        for (std::size_t b = ge_k1; b < ge_k; ++b)
            blocks.push_back(k);
    }
    std::sort(blocks.rbegin(), blocks.rend());
    return blocks;
}

/// Lexicographic maximum of the Jordan profile over the candidate set. This is
/// a lower bound for the true characteristic sequence: the defining maximum
/// ranges over all of N \ N^2 and is only sampled here. Candidates inside N^2
/// are rejected (the definition excludes them).
inline std::vector<std::size_t> characteristic_sequence(const LeibnizAlgebra& n,
                                                        const std::vector<Vec>& candidates)
{
    if (candidates.empty())
        throw std::invalid_argument("candidate set must be nonempty");
    if (!is_nilpotent(n))
        throw std::invalid_argument("algebra is not nilpotent");
    const SubspaceBasis whole = SubspaceBasis::full(n.dim());
    const SubspaceBasis n2 = product_subspace(n, whole, whole);
    std::vector<std::size_t> best;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        if (n2.contains(candidates[idx]))
            throw std::invalid_argument("candidate " + std::to_string(idx) + " lies in N^2");
        std::vector<std::size_t> profile = jordan_profile(n, candidates[idx]);
        if (profile > best)
            best = std::move(profile);
    }
    return best;
}

} // namespace leibniz
