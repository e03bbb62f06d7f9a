#pragma once

#include "leibniz/algebra.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace leibniz {

// Builders for the solvable families the tool certifies. Basis orders are
// fixed and every schedule / report refers to these positions:
//   Lt      : f1..fn, x1..xn
//   R1, R2  : f1..fn, x
//   ModelN  : e1_1..e1_m1, e2_1..e2_m2, ...
//   RModel  : the ModelN chain basis followed by x1..xs

namespace detail {

inline void add_term(LeibnizAlgebra::StructureMap& s, std::size_t i, std::size_t j, std::size_t k,
                     const Rational& c)
{
    if (!is_zero(c))
        s[{i, j}].emplace_back(k, c);
}

} // namespace detail

/// L_t, dimension 2n: [f_j, x_j] = f_j and [x_j, f_j] = alpha_j f_j with
/// alpha_j in {-1, 0}; t is the number of zero parameters.
inline LeibnizAlgebra build_Lt(std::size_t n, const std::vector<int>& alphas)
{
    if (n == 0)
        throw std::invalid_argument("Lt requires n >= 1");
    if (alphas.size() != n)
        throw std::invalid_argument("Lt requires exactly n alpha parameters");
    for (int a : alphas)
        if (a != 0 && a != -1)
            throw std::invalid_argument("Lt alpha parameters must be -1 or 0");
    std::vector<std::string> names;
    for (std::size_t j = 1; j <= n; ++j)
        names.push_back("f" + std::to_string(j));
    for (std::size_t j = 1; j <= n; ++j)
        names.push_back("x" + std::to_string(j));
    LeibnizAlgebra::StructureMap s;
    for (std::size_t j = 0; j < n; ++j) {
        detail::add_term(s, j, n + j, j, 1);
        detail::add_term(s, n + j, j, j, alphas[j]);
    }
    return LeibnizAlgebra(2 * n, std::move(names), std::move(s), LtTag{n, alphas});
}

namespace detail {

inline LeibnizAlgebra build_R(std::size_t n, bool with_left_action)
{
    if (n < 2)
        throw std::invalid_argument("R1/R2 require n >= 2");
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i)
        names.push_back("f" + std::to_string(i));
    names.push_back("x");
    const std::size_t x = n;
    LeibnizAlgebra::StructureMap s;
    for (std::size_t i = 0; i < n; ++i) {
        add_term(s, i, x, i, 1);
        if (i + 1 < n)
            add_term(s, i, x, i + 1, 1);
        if (with_left_action) {
            add_term(s, x, i, i, -1);
            if (i + 1 < n)
                add_term(s, x, i, i + 1, -1);
        }
    }
    if (with_left_action)
        return LeibnizAlgebra(n + 1, std::move(names), std::move(s), R2Tag{n});
    return LeibnizAlgebra(n + 1, std::move(names), std::move(s), R1Tag{n});
}

inline void validate_m_list(const std::vector<std::size_t>& m)
{
    if (m.empty())
        throw std::invalid_argument("m-list must be nonempty");
    if (m[0] < 2)
        throw std::invalid_argument("m1 must be at least 2");
    for (std::size_t mt : m)
        if (mt < 1)
            throw std::invalid_argument("every m_t must be at least 1");
}

/// Start offset of chain t (0-based) in the chain part of the basis.
inline std::vector<std::size_t> chain_offsets(const std::vector<std::size_t>& m)
{
    std::vector<std::size_t> off(m.size());
    std::size_t acc = 0;
    for (std::size_t t = 0; t < m.size(); ++t) {
        off[t] = acc;
        acc += m[t];
    }
    return off;
}

inline std::vector<std::string> chain_names(const std::vector<std::size_t>& m)
{
    std::vector<std::string> names;
    for (std::size_t t = 0; t < m.size(); ++t)
        for (std::size_t i = 1; i <= m[t]; ++i)
            names.push_back("e" + std::to_string(t + 1) + "_" + std::to_string(i));
    return names;
}

} // namespace detail

/// R1, dimension n+1: [f_i, x] = f_i + f_{i+1}, [f_n, x] = f_n.
inline LeibnizAlgebra build_R1(std::size_t n) { return detail::build_R(n, false); }

/// R2 = R1 plus the left action [x, f_i] = -f_i - f_{i+1}, [x, f_n] = -f_n.
inline LeibnizAlgebra build_R2(std::size_t n) { return detail::build_R(n, true); }

/// Model nilpotent algebra N_{m1..ms}: s chains driven by right multiplication
/// with the first chain generator, [e^t_i, e^1_1] = e^t_{i+1}.
inline LeibnizAlgebra build_model_nilradical(const std::vector<std::size_t>& m)
{
    detail::validate_m_list(m);
    const auto off = detail::chain_offsets(m);
    const std::size_t dim = off.back() + m.back();
    LeibnizAlgebra::StructureMap s;
    for (std::size_t t = 0; t < m.size(); ++t)
        for (std::size_t i = 0; i + 1 < m[t]; ++i)
            detail::add_term(s, off[t] + i, off[0], off[t] + i + 1, 1);
    return LeibnizAlgebra(dim, detail::chain_names(m), std::move(s), ModelNTag{m});
}

/// Solvable extension R(N_{m1..ms}, s) of the model nilradical by s chain
/// weights: [e^1_i, x_1] = i e^1_i; [e^t_i, x_1] = (i-1) e^t_i and
/// [e^t_i, x_t] = e^t_i for t >= 2; [x_1, e^1_1] = -e^1_1.
inline LeibnizAlgebra build_R_model(const std::vector<std::size_t>& m)
{
    detail::validate_m_list(m);
    const std::size_t s_count = m.size();
    const auto off = detail::chain_offsets(m);
    const std::size_t chain_dim = off.back() + m.back();
    const std::size_t dim = chain_dim + s_count;
    std::vector<std::string> names = detail::chain_names(m);
    for (std::size_t t = 1; t <= s_count; ++t)
        names.push_back("x" + std::to_string(t));
    const auto x_index = [&](std::size_t t) { return chain_dim + t; };  // t is 0-based

    LeibnizAlgebra::StructureMap s;
    for (std::size_t t = 0; t < s_count; ++t)
        for (std::size_t i = 0; i + 1 < m[t]; ++i)
            detail::add_term(s, off[t] + i, off[0], off[t] + i + 1, 1);
    for (std::size_t i = 0; i < m[0]; ++i)
        detail::add_term(s, off[0] + i, x_index(0), off[0] + i, Rational(static_cast<long long>(i + 1)));
    for (std::size_t t = 1; t < s_count; ++t)
        for (std::size_t i = 0; i < m[t]; ++i) {
            detail::add_term(s, off[t] + i, x_index(0), off[t] + i, Rational(static_cast<long long>(i)));
            detail::add_term(s, off[t] + i, x_index(t), off[t] + i, 1);
        }
    detail::add_term(s, x_index(0), off[0], off[0], -1);
    return LeibnizAlgebra(dim, std::move(names), std::move(s), RModelTag{m});
}

/// The n-dimensional abelian algebra (all brackets zero).
inline LeibnizAlgebra build_abelian(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i)
        names.push_back("a" + std::to_string(i));
    return LeibnizAlgebra(n, std::move(names), {});
}

} // namespace leibniz
