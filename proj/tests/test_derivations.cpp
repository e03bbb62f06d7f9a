#include <doctest.h>

#include "leibniz/catalog.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/sampler.hpp"

#include <algorithm>

using namespace leibniz;

namespace {

LinearOperator single_entry(std::size_t dim, std::size_t r, std::size_t c, long long value)
{
    LinearOperator op(dim);
    op.matrix().at(r, c) = value;
    return op;
}

// Expected derivation bases, straight from the closed forms.

std::vector<LinearOperator> expected_der_Lt(std::size_t n, const std::vector<int>& alphas)
{
    std::vector<LinearOperator> ops;
    for (std::size_t j = 0; j < n; ++j)
        ops.push_back(single_entry(2 * n, j, j, 1));  // D(f_j) = a_j f_j
    for (std::size_t j = 0; j < n; ++j)
        if (alphas[j] != 0)
            ops.push_back(single_entry(2 * n, j, n + j, alphas[j]));  // D(x_j) = alpha_j b_j f_j
    return ops;
}

// D_k shifts the chain by k-1 steps: f_i -> f_{i+k-1}; the x column is zero.
std::vector<LinearOperator> expected_der_R1(std::size_t n)
{
    std::vector<LinearOperator> ops;
    for (std::size_t k = 1; k <= n; ++k) {
        LinearOperator op(n + 1);
        for (std::size_t i = 0; i + k - 1 < n; ++i)
            op.matrix().at(i + k - 1, i) = 1;
        ops.push_back(std::move(op));
    }
    return ops;
}

std::vector<LinearOperator> expected_der_R2(std::size_t n)
{
    std::vector<LinearOperator> ops = expected_der_R1(n);
    for (std::size_t j = 0; j < n; ++j)
        ops.push_back(single_entry(n + 1, j, n, 1));  // D(x) = beta_j f_j
    return ops;
}

std::vector<LinearOperator> expected_der_rmodel(const std::vector<std::size_t>& m)
{
    const std::size_t s = m.size();
    std::vector<std::size_t> off(s);
    std::size_t acc = 0;
    for (std::size_t t = 0; t < s; ++t) {
        off[t] = acc;
        acc += m[t];
    }
    const std::size_t dim = acc + s;
    std::vector<LinearOperator> ops;

    LinearOperator alpha1(dim);  // weights i on chain 1, i-1 on the others
    for (std::size_t i = 0; i < m[0]; ++i)
        alpha1.matrix().at(off[0] + i, off[0] + i) = Rational(static_cast<long long>(i + 1));
    for (std::size_t t = 1; t < s; ++t)
        for (std::size_t i = 0; i < m[t]; ++i)
            alpha1.matrix().at(off[t] + i, off[t] + i) = Rational(static_cast<long long>(i));
    ops.push_back(std::move(alpha1));

    LinearOperator alpha2(dim);  // chain shift, and x_1 -> -e1_1
    for (std::size_t t = 0; t < s; ++t)
        for (std::size_t i = 0; i + 1 < m[t]; ++i)
            alpha2.matrix().at(off[t] + i + 1, off[t] + i) = 1;
    alpha2.matrix().at(off[0], acc) = -1;
    ops.push_back(std::move(alpha2));

    for (std::size_t t = 1; t < s; ++t) {  // beta_t: identity on chain t
        LinearOperator beta(dim);
        for (std::size_t i = 0; i < m[t]; ++i)
            beta.matrix().at(off[t] + i, off[t] + i) = 1;
        ops.push_back(std::move(beta));
    }
    return ops;
}

} // namespace

TEST_CASE("derivation space of Lt")
{
    const LeibnizAlgebra a = build_Lt(2, {-1, 0});
    const OperatorSubspace der = derivation_space(a);
    CHECK(der.dim() == 3);  // 2n - t = 4 - 1
    CHECK(der == OperatorSubspace::from_spanning(4, expected_der_Lt(2, {-1, 0})));
}

TEST_CASE("derivation space of R1 is the shift algebra with zero x column")
{
    const LeibnizAlgebra a = build_R1(3);
    const OperatorSubspace der = derivation_space(a);
    CHECK(der.dim() == 3);
    CHECK(der == OperatorSubspace::from_spanning(4, expected_der_R1(3)));
    // in particular D(x) = 0 for every derivation
    for (const auto& d : der.basis())
        CHECK(is_zero_vec(d.matrix().col(3)));
}

TEST_CASE("derivation space of R2 adds the x-image parameters")
{
    const OperatorSubspace der = derivation_space(build_R2(3));
    CHECK(der.dim() == 6);
    CHECK(der == OperatorSubspace::from_spanning(4, expected_der_R2(3)));
}

TEST_CASE("derivation space of the solvable model extension")
{
    const LeibnizAlgebra a = build_R_model({3, 2});
    const OperatorSubspace der = derivation_space(a);
    CHECK(der.dim() == 3);  // s + 1
    CHECK(der == OperatorSubspace::from_spanning(7, expected_der_rmodel({3, 2})));
}

TEST_CASE("abelian algebras admit every operator")
{
    CHECK(derivation_space(build_abelian(3)).dim() == 9);
}

TEST_CASE("derivation space of the 2-dimensional model nilradical")
{
    // [e1,e1] = e2 forces D(e2) = 2a e2 for D(e1) = a e1 + b e2, hand-checked
    // from the four pair constraints.
    const LeibnizAlgebra n2 = build_model_nilradical({2});
    const OperatorSubspace der = derivation_space(n2);
    CHECK(der.dim() == 2);
    LinearOperator da(2), db(2);
    da.matrix().at(0, 0) = 1;  // e1 -> e1
    da.matrix().at(1, 1) = 2;  // e2 -> 2 e2
    db.matrix().at(1, 0) = 1;  // e1 -> e2
    CHECK(der == OperatorSubspace::from_spanning(2, {da, db}));
}

TEST_CASE("is_derivation residuals")
{
    const LeibnizAlgebra r1 = build_R1(3);
    const OperatorSubspace der = derivation_space(r1);

    SUBCASE("derivation basis elements have no residuals")
    {
        for (const auto& d : der.basis())
            CHECK(is_derivation(r1, d).empty());
        CHECK(is_derivation(r1, LinearOperator(4)).empty());
    }

    SUBCASE("the f1 -> 2 f2, f2 -> f3 operator fails exactly at (f1, x)")
    {
        LinearOperator delta(4);
        delta.matrix().at(1, 0) = 2;
        delta.matrix().at(2, 1) = 1;
        const auto residuals = is_derivation(r1, delta);
        REQUIRE(residuals.size() == 1);
        CHECK(residuals[0].i == 0);
        CHECK(residuals[0].j == 3);
        CHECK(residuals[0].residual ==
              Vec{Rational(0), Rational(0), Rational(-1), Rational(0)});
    }
}

TEST_CASE("inner derivations")
{
    SUBCASE("inner equals Der for the model extension")
    {
        const LeibnizAlgebra a = build_R_model({3, 2});
        const OperatorSubspace inner = inner_derivation_space(a);
        const OperatorSubspace der = derivation_space(a);
        CHECK(inner.dim() == 3);
        CHECK(inner == der);
    }
    SUBCASE("abelian algebras have no inner derivations")
    {
        CHECK(inner_derivation_space(build_abelian(4)).dim() == 0);
    }
    SUBCASE("R1 has a one-dimensional inner space inside Der")
    {
        const LeibnizAlgebra r1 = build_R1(3);
        const OperatorSubspace inner = inner_derivation_space(r1);
        const OperatorSubspace der = derivation_space(r1);
        CHECK(inner.dim() == 1);
        CHECK(subspace_contains(der.flat(), inner.flat()));
    }
    SUBCASE("right multiplications are derivations at sampled points")
    {
        const LeibnizAlgebra a = build_R_model({2, 2});
        for (std::size_t trial = 0; trial < 20; ++trial) {
            SmallIntSampler rng(3, trial);
            const LinearOperator ad(a.right_multiplication(rng.vector(a.dim())));
            CHECK(is_derivation(a, ad).empty());
        }
    }
}

TEST_CASE("commutator of a derivation with a right multiplication")
{
    // [D, ad_x] = ad_{D(x)} follows from the derivation rule; checked exactly
    // on every Der basis element and sampled x.
    for (const LeibnizAlgebra& a : {build_R2(3), build_R_model({3, 2}), build_Lt(2, {-1, 0})}) {
        const OperatorSubspace der = derivation_space(a);
        for (std::size_t trial = 0; trial < 5; ++trial) {
            SmallIntSampler rng(13, trial);
            const Vec x = rng.vector(a.dim());
            const LinearOperator ad_x(a.right_multiplication(x));
            for (const auto& d : der.basis()) {
                const LinearOperator lhs = d.commutator(ad_x);
                const LinearOperator rhs(a.right_multiplication(d.apply(x)));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("Lie closure")
{
    CHECK(lie_closure_check(derivation_space(build_R1(3))));
    CHECK(lie_closure_check(derivation_space(build_R_model({3, 2}))));
    CHECK(lie_closure_check(derivation_space(build_Lt(2, {-1, 0}))));

    SUBCASE("a single nilpotent operator is closed")
    {
        CHECK(lie_closure_check(OperatorSubspace::from_spanning(2, {single_entry(2, 0, 1, 1)})));
    }
    SUBCASE("E12 and E21 do not close")
    {
        CHECK(!lie_closure_check(OperatorSubspace::from_spanning(
            2, {single_entry(2, 0, 1, 1), single_entry(2, 1, 0, 1)})));
    }
}

TEST_CASE("derivation space is invariant under basis reordering")
{
    // R1(3) with basis listed as x, f3, f2, f1: permute the structure map and
    // compare Der as spans after mapping back.
    const LeibnizAlgebra r1 = build_R1(3);
    const std::vector<std::size_t> perm{3, 2, 1, 0};  // new index of old basis vector
    LeibnizAlgebra::StructureMap s;
    for (const auto& [ij, terms] : r1.structure()) {
        LeibnizAlgebra::Terms mapped;
        for (const auto& [k, c] : terms)
            mapped.emplace_back(perm[k], c);
        std::sort(mapped.begin(), mapped.end());
        s[{perm[ij.first], perm[ij.second]}] = std::move(mapped);
    }
    const LeibnizAlgebra reordered(4, {"x", "f3", "f2", "f1"}, std::move(s));
    const OperatorSubspace der_re = derivation_space(reordered);

    std::vector<LinearOperator> mapped_back;
    for (const auto& op : der_re.basis()) {
        LinearOperator back(4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                back.matrix().at(r, c) = op.matrix().at(perm[r], perm[c]);
        mapped_back.push_back(std::move(back));
    }
    CHECK(OperatorSubspace::from_spanning(4, mapped_back) == derivation_space(r1));
}
