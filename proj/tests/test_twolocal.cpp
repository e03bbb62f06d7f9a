#include <doctest.h>

#include "leibniz/catalog.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/twolocal.hpp"

using namespace leibniz;

namespace {

Vec combine(const OperatorSubspace& der, const Vec& coeffs, const Vec& at)
{
    Vec out = zero_vec(der.operator_dim());
    const auto basis = der.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
        out = add(out, scale(coeffs[i], basis[i].apply(at)));
    return out;
}

} // namespace

TEST_CASE("pair interpolation")
{
    const LeibnizAlgebra lt = build_Lt(2, {-1, 0});
    const OperatorSubspace der = derivation_space(lt);
    const Vec f1 = lt.basis_vector(0);
    const Vec x1 = lt.basis_vector(2);

    SUBCASE("joint system through two points")
    {
        const Vec fx = scale(Rational(3), f1);
        const Vec fy = scale(Rational(-2), f1);
        const auto coeffs = pair_interpolate(f1, fx, x1, fy, der);
        REQUIRE(coeffs);
        CHECK(combine(der, *coeffs, f1) == fx);
        CHECK(combine(der, *coeffs, x1) == fy);
    }
    SUBCASE("degenerate pair reduces to pointwise membership")
    {
        const Vec fx = scale(Rational(5), f1);
        const auto coeffs = pair_interpolate(f1, fx, f1, fx, der);
        REQUIRE(coeffs);
        CHECK(combine(der, *coeffs, f1) == fx);
    }
    SUBCASE("unreachable target is rejected")
    {
        // D(f1) = a f1, so f2 is outside the evaluation subspace at f1
        CHECK(!pair_interpolate(f1, lt.basis_vector(1), x1, zero_vec(4), der));
    }
}

TEST_CASE("separating elements")
{
    SUBCASE("the all-chains sum separates the model extension")
    {
        const LeibnizAlgebra a = build_R_model({3, 2});
        const OperatorSubspace der = derivation_space(a);
        Vec q = zero_vec(7);
        for (std::size_t i = 0; i < 5; ++i)
            q[i] = 1;
        const auto cert = is_separating(der, q);
        CHECK(cert.separating);
        CHECK(cert.der_dim == 3);
        CHECK(cert.eval_dim == 3);
    }
    SUBCASE("f1 separates R1")
    {
        const LeibnizAlgebra a = build_R1(3);
        const OperatorSubspace der = derivation_space(a);
        CHECK(is_separating(der, a.basis_vector(0)).separating);
    }
    SUBCASE("no single basis vector separates Lt(2,(-1,0))")
    {
        const LeibnizAlgebra a = build_Lt(2, {-1, 0});
        const OperatorSubspace der = derivation_space(a);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(!is_separating(der, a.basis_vector(i)).separating);
    }
    SUBCASE("injectivity: interpolation through a separating point is unique")
    {
        const LeibnizAlgebra a = build_R1(3);
        const OperatorSubspace der = derivation_space(a);
        const Vec q = a.basis_vector(0);
        // two derivations that agree at q agree everywhere
        const auto basis = der.basis();
        const Vec img = basis[0].apply(q);
        const auto coeffs = pointwise_membership(basis[0], q, der);
        REQUIRE(coeffs);
        // the evaluation map has a trivial kernel, so the witness is unique
        Matrix images(4, basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const Vec col = basis[c].apply(q);
            for (std::size_t r = 0; r < 4; ++r)
                images.at(r, c) = col[r];
        }
        CHECK(nullspace(images).empty());
    }
}

TEST_CASE("separating element search and certification")
{
    SUBCASE("model extension certifies")
    {
        const LeibnizAlgebra a = build_R_model({3, 2});
        const OperatorSubspace der = derivation_space(a);
        const auto v = certify_twolocal_equals_der(a, der, 100, 1);
        CHECK(v.certified);
        REQUIRE(v.certificate);
        CHECK(v.certificate->separating);
        // the all-chains sum itself is in the scanned pool and separates
        Vec q = zero_vec(7);
        for (std::size_t i = 0; i < 5; ++i)
            q[i] = 1;
        CHECK(is_separating(der, q).separating);
    }
    SUBCASE("R1 certifies via f1")
    {
        const LeibnizAlgebra a = build_R1(3);
        const OperatorSubspace der = derivation_space(a);
        const auto v = certify_twolocal_equals_der(a, der, 100, 1);
        CHECK(v.certified);
        CHECK(v.certificate->q == a.basis_vector(0));
    }
    SUBCASE("Lt with a -1 parameter does not certify")
    {
        const LeibnizAlgebra a = build_Lt(2, {-1, 0});
        const OperatorSubspace der = derivation_space(a);
        CHECK(!certify_twolocal_equals_der(a, der, 2000, 1).certified);
    }
    SUBCASE("R2 exhausts the pool: evaluation dimension is capped by n")
    {
        const LeibnizAlgebra a = build_R2(3);
        const OperatorSubspace der = derivation_space(a);
        CHECK(der.dim() == 6);
        CHECK(!certify_twolocal_equals_der(a, der, 10000, 1).certified);
    }
    SUBCASE("Lt with all alphas zero is rigid and certifies")
    {
        const LeibnizAlgebra a = build_Lt(2, {0, 0});
        const OperatorSubspace der = derivation_space(a);
        const auto v = certify_twolocal_equals_der(a, der, 100, 1);
        CHECK(v.certified);
    }
}

TEST_CASE("rank-one derivation pencils")
{
    SUBCASE("Lt(2,(-1,0)) at f1: the f1- and x1-coordinates")
    {
        const LeibnizAlgebra a = build_Lt(2, {-1, 0});
        const OperatorSubspace der = derivation_space(a);
        const SubspaceBasis pencil = rank_one_derivation_pencil(der, a.basis_vector(0));
        REQUIRE(pencil.dim() == 2);
        CHECK(pencil.vectors()[0] == Vec{Rational(1), Rational(0), Rational(0), Rational(0)});
        CHECK(pencil.vectors()[1] == Vec{Rational(0), Rational(0), Rational(1), Rational(0)});
        CHECK(rank_one_derivation_pencil(der, a.basis_vector(1)).dim() == 1);
    }
    SUBCASE("R2(3) at f_n: the f1- and x-coordinates")
    {
        const LeibnizAlgebra a = build_R2(3);
        const OperatorSubspace der = derivation_space(a);
        const SubspaceBasis pencil = rank_one_derivation_pencil(der, a.basis_vector(2));
        REQUIRE(pencil.dim() == 2);
        CHECK(pencil.vectors()[0] == Vec{Rational(1), Rational(0), Rational(0), Rational(0)});
        CHECK(pencil.vectors()[1] == Vec{Rational(0), Rational(0), Rational(0), Rational(1)});
    }
    SUBCASE("R1 pencils stay below 2, consistent with rigidity")
    {
        const LeibnizAlgebra a = build_R1(3);
        const OperatorSubspace der = derivation_space(a);
        CHECK(rank_one_derivation_pencil(der, a.basis_vector(0)).dim() == 0);
        CHECK(rank_one_derivation_pencil(der, a.basis_vector(2)).dim() == 1);
    }
    SUBCASE("pencil members really are derivations")
    {
        const LeibnizAlgebra a = build_Lt(3, {-1, -1, 0});
        const OperatorSubspace der = derivation_space(a);
        const Vec w = a.basis_vector(1);
        const SubspaceBasis pencil = rank_one_derivation_pencil(der, w);
        for (const Vec& l : pencil.vectors())
            CHECK(is_derivation(a, rank_one(w, l)).empty());
    }
}

TEST_CASE("nabla evaluation")
{
    const LeibnizAlgebra a = build_Lt(2, {-1, 0});
    const OperatorSubspace der = derivation_space(a);
    const auto build = build_nabla_spec(a, der);
    REQUIRE(build.spec);
    const NablaSpec& spec = *build.spec;
    CHECK(spec.w() == a.basis_vector(0));

    const auto point = [&](long long z1, long long z2) {
        // l1 = f1-coordinate, l2 = x1-coordinate
        Vec v = zero_vec(4);
        v[0] = z1;
        v[2] = z2;
        return v;
    };

    CHECK(evaluate_nabla(spec, point(1, 2)) == scale(Rational(1, 2), spec.w()));
    CHECK(evaluate_nabla(spec, point(3, 0)) == zero_vec(4));
    CHECK(evaluate_nabla(spec, point(0, 5)) == zero_vec(4));

    SUBCASE("homogeneous of degree one")
    {
        for (long long z1 = -3; z1 <= 3; ++z1)
            for (long long z2 = -3; z2 <= 3; ++z2)
                for (long long lam = -2; lam <= 2; ++lam) {
                    if (lam == 0)
                        continue;
                    const Vec v = point(z1, z2);
                    CHECK(evaluate_nabla(spec, scale(Rational(lam), v)) ==
                          scale(Rational(lam), evaluate_nabla(spec, v)));
                }
    }

    SUBCASE("construction validates its invariants")
    {
        const Vec l_f2{Rational(0), Rational(1), Rational(0), Rational(0)};
        CHECK_THROWS_AS(NablaSpec(spec.l1(), scale(Rational(2), spec.l1()), spec.w(), der),
                        std::invalid_argument);
        CHECK_THROWS_AS(NablaSpec(spec.l1(), l_f2, spec.w(), der), std::invalid_argument);
    }
}

TEST_CASE("2-local property of nabla")
{
    const LeibnizAlgebra a = build_Lt(2, {-1, 0});
    const OperatorSubspace der = derivation_space(a);
    const NablaSpec spec = *build_nabla_spec(a, der).spec;

    SUBCASE("sampled pairs are all witnessed")
    {
        const auto result = verify_twolocal_property(spec, 1000, 11);
        CHECK(result.all_pairs_witnessed);
        CHECK(result.trials == 1000);
    }
    SUBCASE("interpolants agree with nabla at both points")
    {
        const Vec xi{Rational(2), Rational(-1), Rational(3), Rational(4)};
        const Vec eta{Rational(-1), Rational(0), Rational(1), Rational(2)};
        const auto ab = interpolate_nabla_pair(spec, xi, eta);
        REQUIRE(ab);
        const LinearOperator d1 = rank_one(spec.w(), spec.l1());
        const LinearOperator d2 = rank_one(spec.w(), spec.l2());
        for (const Vec& v : {xi, eta}) {
            const Vec image = add(scale((*ab)[0], d1.apply(v)), scale((*ab)[1], d2.apply(v)));
            CHECK(image == evaluate_nabla(spec, v));
        }
    }
    SUBCASE("degenerate and proportional pairs are consistent by homogeneity")
    {
        const auto point = [&](long long z1, long long z2) {
            Vec v = zero_vec(4);
            v[0] = z1;
            v[2] = z2;
            return v;
        };
        CHECK(interpolate_nabla_pair(spec, point(1, 2), point(1, 2)));
        CHECK(interpolate_nabla_pair(spec, point(1, 2), point(2, 4)));
        CHECK(interpolate_nabla_pair(spec, point(1, 0), point(2, 0)));
        CHECK(interpolate_nabla_pair(spec, zero_vec(4), point(1, 2)));
    }
}

TEST_CASE("additivity refutation")
{
    const LeibnizAlgebra a = build_Lt(2, {-1, 0});
    const OperatorSubspace der = derivation_space(a);
    const NablaSpec spec = *build_nabla_spec(a, der).spec;

    const auto [u, v] = refute_additivity(spec);
    CHECK(evaluate_nabla(spec, add(u, v)) !=
          add(evaluate_nabla(spec, u), evaluate_nabla(spec, v)));

    SUBCASE("the canonical dual pair is a witness")
    {
        Vec u0 = zero_vec(4);
        u0[0] = 1;  // (l1, l2) = (1, 0)
        Vec v0 = zero_vec(4);
        v0[2] = 1;  // (l1, l2) = (0, 1)
        CHECK(is_zero_vec(evaluate_nabla(spec, u0)));
        CHECK(is_zero_vec(evaluate_nabla(spec, v0)));
        CHECK(evaluate_nabla(spec, add(u0, v0)) == spec.w());
    }
}

TEST_CASE("nabla construction by family")
{
    SUBCASE("Lt picks the first chain with alpha = -1")
    {
        const LeibnizAlgebra a = build_Lt(3, {0, -1, 0});
        const auto build = build_nabla_spec(a, derivation_space(a));
        REQUIRE(build.spec);
        CHECK(build.spec->w() == a.basis_vector(1));  // f_2
        CHECK(build.pencil_dim == 2);
    }
    SUBCASE("R2 uses f_n")
    {
        const LeibnizAlgebra a = build_R2(3);
        const auto build = build_nabla_spec(a, derivation_space(a));
        REQUIRE(build.spec);
        CHECK(build.spec->w() == a.basis_vector(2));
        const auto result = verify_twolocal_property(*build.spec, 500, 5);
        CHECK(result.all_pairs_witnessed);
    }
    SUBCASE("construction is refused when every pencil is thin")
    {
        const LeibnizAlgebra a = build_Lt(2, {0, 0});
        const auto build = build_nabla_spec(a, derivation_space(a));
        CHECK(!build.spec);
        CHECK(build.pencil_dim <= 1);

        const LeibnizAlgebra r1 = build_R1(3);
        CHECK(!build_nabla_spec(r1, derivation_space(r1)).spec);
    }
}
