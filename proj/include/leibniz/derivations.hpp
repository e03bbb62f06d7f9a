#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/operators.hpp"

#include <utility>
#include <vector>

namespace leibniz {

// The derivation space of an algebra is the nullspace of the linear system
//   D([e_i,e_j]) - [D e_i, e_j] - [e_i, D e_j] = 0   for all ordered pairs (i,j),
// with D an unknown n x n matrix flattened row-major (unknown (r,c) at r*n+c).
// Every ordered pair is constrained, including pairs with zero bracket: the
// rule constrains D there too.

struct DerivationResidual {
    std::size_t i, j;
    Vec residual;  // T([e_i,e_j]) - [T e_i, e_j] - [e_i, T e_j]
};

/// Residuals of the derivation rule on all basis pairs; empty iff T in Der(A).
inline std::vector<DerivationResidual> is_derivation(const LeibnizAlgebra& a,
                                                     const LinearOperator& t)
{
    if (t.dim() != a.dim())
        throw std::invalid_argument("operator dimension mismatch");
    const std::size_t n = a.dim();
    std::vector<DerivationResidual> out;
    std::vector<Vec> image(n);
    for (std::size_t c = 0; c < n; ++c)
        image[c] = t.matrix().col(c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec res = t.apply(a.basis_bracket(i, j));
            res = sub(res, a.bracket(image[i], a.basis_vector(j)));
            res = sub(res, a.bracket(a.basis_vector(i), image[j]));
            if (!is_zero_vec(res))
                out.push_back({i, j, std::move(res)});
        }
    return out;
}

/// Der(A) as the nullspace of the n^3 x n^2 constraint system, RREF-canonical.
/// Rows are assembled from the sparse structure map; identically zero rows are
/// dropped before elimination.
inline OperatorSubspace derivation_space(const LeibnizAlgebra& a)
{
    const std::size_t n = a.dim();
    std::vector<Vec> rows(n * n * n);
    std::vector<bool> touched(n * n * n, false);
    const auto row_at = [&](std::size_t i, std::size_t j, std::size_t r) -> Vec& {
        const std::size_t idx = (i * n + j) * n + r;
        if (!touched[idx]) {
            touched[idx] = true;
            rows[idx] = zero_vec(n * n);
        }
        return rows[idx];
    };
    for (const auto& [ab, terms] : a.structure()) {
        const auto [p, q] = ab;
        for (const auto& [k, c] : terms) {
            // D([e_p,e_q]) contributes c * D[r][k] to constraint (p,q,r)
            for (std::size_t r = 0; r < n; ++r)
                row_at(p, q, r)[r * n + k] += c;
            // -[D e_i, e_q]: c_{pq}^k multiplies D[p][i] in constraint (i,q,k)
            for (std::size_t i = 0; i < n; ++i)
                row_at(i, q, k)[p * n + i] -= c;
            // -[e_p, D e_j]: c_{pq}^k multiplies D[q][j] in constraint (p,j,k)
            for (std::size_t j = 0; j < n; ++j)
                row_at(p, j, k)[q * n + j] -= c;
        }
    }
    std::vector<Vec> nonzero;
    for (std::size_t idx = 0; idx < rows.size(); ++idx)
        if (touched[idx] && !is_zero_vec(rows[idx]))
            nonzero.push_back(std::move(rows[idx]));
    std::vector<LinearOperator> ops;
    for (const Vec& v : nullspace(Matrix::from_rows(nonzero, n * n)))
        ops.push_back(LinearOperator::from_flat(n, v));
    return OperatorSubspace::from_spanning(n, ops);
}

/// Span of the right multiplications ad_{e_i}.
inline OperatorSubspace inner_derivation_space(const LeibnizAlgebra& a)
{
    std::vector<LinearOperator> ops;
    for (std::size_t i = 0; i < a.dim(); ++i)
        ops.emplace_back(a.right_multiplication(a.basis_vector(i)));
    return OperatorSubspace::from_spanning(a.dim(), ops);
}

/// True iff the commutator of every basis pair lies back in the space.
inline bool lie_closure_check(const OperatorSubspace& s)
{
    const auto ops = s.basis();
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = i + 1; j < ops.size(); ++j)
            if (!s.contains(ops[i].commutator(ops[j])))
                return false;
    return true;
}

} // namespace leibniz
