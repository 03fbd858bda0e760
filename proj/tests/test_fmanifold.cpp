#include <doctest.h>

#include "regfm/fmanifold.hpp"
#include "support.hpp"

using namespace regfm;
using namespace regfm::testing;

TEST_SUITE_BEGIN("fmanifold");

TEST_CASE("structure constants") {
    JordanSpec s2({2}), s21({2, 1}), s3({3});
    // spec [2]: i=2, j=1, k=2 (1-based in-block) -> 1
    CHECK(structure_constant(s2, 1, 0, 1) == 1);
    // cross-block always 0
    for (int i = 0; i < 3; ++i) CHECK(structure_constant(s21, i, 0, 2) == 0);
    // spec [3]: i=2,j=2,k=2 -> j+k-1 = 3 != 2
    CHECK(structure_constant(s3, 1, 1, 1) == 0);
    CHECK(structure_constant(s3, 2, 1, 1) == 1);
}

TEST_CASE("circ examples and unit") {
    JordanSpec s3({3});
    VField<Poly> d2{{Poly::zero(3), Poly::constant(3, 1), Poly::zero(3)}};
    VField<Poly> d3{{Poly::zero(3), Poly::zero(3), Poly::constant(3, 1)}};
    CHECK(circ(s3, d2, d2) == d3);
    CHECK(circ(s3, d2, d3).is_zero());

    Rng rng(31);
    for (const auto& spec : {JordanSpec({2}), JordanSpec({2, 1}), JordanSpec({1, 1, 1})}) {
        VField<Poly> X = random_vfield(rng, spec.n(), 3, 4);
        CHECK(circ(spec, unit_field(spec), X) == X);
        CHECK(circ(spec, X, unit_field(spec)) == X);
    }
}

TEST_CASE("circ matches the structure-constant oracle and is commutative/associative") {
    Rng rng(37);
    for (const auto& spec :
         {JordanSpec({3}), JordanSpec({2, 2}), JordanSpec({3, 1, 2}), JordanSpec({1, 1})}) {
        VField<Poly> X = random_vfield(rng, spec.n(), 2, 3);
        VField<Poly> Y = random_vfield(rng, spec.n(), 2, 3);
        VField<Poly> Z = random_vfield(rng, spec.n(), 2, 3);
        CHECK(circ(spec, X, Y) == circ_oracle(spec, X, Y));
        CHECK(circ(spec, X, Y) == circ(spec, Y, X));
        CHECK(circ(spec, circ(spec, X, Y), Z) == circ(spec, X, circ(spec, Y, Z)));
    }
}

TEST_CASE("mult_operator block form") {
    JordanSpec s21({2, 1});
    OpMatrix<Poly> L = mult_operator(s21, euler_field(s21));
    CHECK(L.at(0, 0) == P(3, "r1"));
    CHECK(L.at(1, 0) == P(3, "r2"));
    CHECK(L.at(1, 1) == P(3, "r1"));
    CHECK(L.at(2, 2) == P(3, "r3"));
    CHECK(L.at(0, 1).is_zero());
    CHECK(L.at(0, 2).is_zero());
    CHECK(L.at(2, 0).is_zero());
    CHECK(L.block_toeplitz);

    CHECK(mult_operator(s21, unit_field(s21)) == identity_matrix_poly(3));

    JordanSpec s2({2});
    Rng rng(41);
    VField<Poly> mu = random_vfield(rng, 2, 2, 3);
    OpMatrix<Poly> M = mult_operator(s2, mu);
    CHECK(M.at(0, 0) == mu.comps[0]);
    CHECK(M.at(1, 1) == mu.comps[0]);
    CHECK(M.at(1, 0) == mu.comps[1]);
    CHECK(M.at(0, 1).is_zero());
}

TEST_CASE("mult_operator applied equals circ, and is a ring homomorphism") {
    Rng rng(43);
    for (const auto& spec : {JordanSpec({3}), JordanSpec({2, 1}), JordanSpec({1, 1, 2})}) {
        VField<Poly> X = random_vfield(rng, spec.n(), 2, 3);
        VField<Poly> Y = random_vfield(rng, spec.n(), 2, 3);
        CHECK(mult_operator(spec, X).apply(Y) == circ(spec, X, Y));
        CHECK(mult_operator(spec, circ(spec, X, Y)) ==
              mult_operator(spec, X) * mult_operator(spec, Y));
    }
}

TEST_CASE("circ_power") {
    JordanSpec s3({3});
    VField<Poly> d2{{Poly::zero(3), Poly::constant(3, 1), Poly::zero(3)}};
    CHECK(circ_power(s3, d2, 0) == unit_field(s3));
    CHECK(circ_power(s3, d2, 1) == d2);
    VField<Poly> d3{{Poly::zero(3), Poly::zero(3), Poly::constant(3, 1)}};
    CHECK(circ_power(s3, d2, 2) == d3);
    CHECK(circ_power(s3, d2, 3).is_zero());

    JordanSpec s2({2});
    VField<Poly> E2 = circ_power(s2, euler_field(s2), 2);
    CHECK(E2.comps[0] == P(2, "r1^2"));
    CHECK(E2.comps[1] == P(2, "2*r1*r2"));
}

TEST_CASE("spanning_check") {
    JordanSpec s3({3});
    VField<Poly> f{{Poly::zero(3), Poly::constant(3, 1), Poly::zero(3)}};
    SpanningResult r = spanning_check(s3, 0, f);
    CHECK(r.spans);
    CHECK(r.det == Poly::constant(3, 1));

    VField<Poly> g{{Poly::constant(3, 5), Poly::zero(3), Poly::constant(3, 1)}};
    CHECK_FALSE(spanning_check(s3, 0, g).spans);

    JordanSpec s2({2});
    CHECK(spanning_check(s2, 0, euler_field(s2)).det == P(2, "r2"));
}

TEST_CASE("spanning determinant equals (E^2)^(m(m-1)/2) for m <= 6") {
    Rng rng(47);
    for (int m = 1; m <= 6; ++m) {
        JordanSpec spec({m});
        VField<Poly> E = random_vfield(rng, m, 1, 2);
        SpanningResult r = spanning_check(spec, 0, E);
        Poly expect = Poly::constant(m, 1);
        if (m >= 2)
            for (int k = 0; k < m * (m - 1) / 2; ++k) expect = expect * E.comps[1];
        CHECK(r.det == expect);
    }
}

TEST_CASE("toeplitz_inverse") {
    JordanSpec s2({2});
    std::vector<Rational> base{Rational(1), Rational(0)};

    SUBCASE("identity field inverts to identity") {
        OpMatrix<TruncSeries> R = toeplitz_inverse(s2, unit_field(s2), base, 4);
        CHECK(R.at(0, 0).equal_to_order(TruncSeries::constant(base, 4, 1), 4));
        CHECK(R.at(1, 0).is_zero());
    }

    SUBCASE("Euler field at (1,0), order 4") {
        OpMatrix<TruncSeries> R = toeplitz_inverse(s2, euler_field(s2), base, 4);
        // pivot series s = 1/r1 at 1; entry (2,1) = -r2 * s^2
        TruncSeries s = TruncSeries::from_poly(P(2, "r1"), base, 4).inverse();
        CHECK(R.at(0, 0) == s);
        CHECK(R.at(1, 1) == s);
        CHECK(R.at(0, 1).is_zero());
        TruncSeries r2s = TruncSeries::from_poly(P(2, "r2"), base, 4);
        CHECK(R.at(1, 0).equal_to_order(-(r2s * s * s), 4));
    }

    SUBCASE("singular pivot at the origin") {
        std::vector<Rational> origin{Rational(0), Rational(0)};
        CHECK_THROWS_AS(toeplitz_inverse(s2, euler_field(s2), origin, 4), SingularPivotError);
    }
}

TEST_CASE("toeplitz_inverse satisfies L*Linv = I for 20 random admissible mu") {
    Rng rng(53);
    int done = 0;
    while (done < 20) {
        JordanSpec spec = done % 2 ? JordanSpec({2, 1}) : JordanSpec({3});
        int n = spec.n();
        VField<Poly> mu = random_vfield(rng, n, 2, 3);
        std::vector<Rational> base = random_point(rng, n);
        bool admissible = true;
        for (int a = 0; a < spec.blocks(); ++a)
            if (mu.comps[spec.flat(a, 1)].eval(base) == 0) admissible = false;
        if (!admissible) continue;
        // the constructor itself verifies L*Linv = I and throws otherwise
        OpMatrix<TruncSeries> R = toeplitz_inverse(spec, mu, base, 5);
        CHECK(R.n == n);
        ++done;
    }
}

TEST_CASE("regularity checklist") {
    JordanSpec s22({2, 2});
    VField<Poly> mu = euler_field(s22);
    RegularityReport rep =
        regularity_check(s22, mu, {Rational(1), Rational(1), Rational(2), Rational(1)});
    CHECK(rep.symbolic_ok());
    CHECK(rep.pointwise_ok());
    RegularityReport bad =
        regularity_check(s22, mu, {Rational(1), Rational(0), Rational(1), Rational(1)});
    CHECK_FALSE(bad.pointwise_ok());
    CHECK_FALSE(bad.pointwise_distinct);
    CHECK_FALSE(bad.pointwise_second_nonzero);
}

TEST_SUITE_END();
