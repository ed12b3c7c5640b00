#include <doctest.h>

#include "test_support.hpp"
#include "twodof/format.hpp"
#include "twodof/polymat.hpp"
#include "twodof/ratmat.hpp"

using namespace twodof;
using namespace twodof::testing;

TEST_SUITE("poly") {
    TEST_CASE("divmod examples") {
        auto [q1, r1] = poly_divmod(s * s - 4 * s + 4, s - 2);
        CHECK(q1 == s - 2);
        CHECK(r1.is_zero());

        auto [q2, r2] = poly_divmod(s + 1, Poly(1));
        CHECK(q2 == s + 1);
        CHECK(r2.is_zero());

        // s^3+1 = s*(s^2+1) + (-s+1)
        const Poly a = s.pow(3) + 1;
        const Poly b = s * s + 1;
        auto [q3, r3] = poly_divmod(a, b);
        CHECK(q3 == s);
        CHECK(r3 == -s + 1);
        CHECK(s * (s * s + 1) + (-s + 1) == a);
    }

    TEST_CASE("divmod by zero throws") { CHECK_THROWS_AS(poly_divmod(s, Poly{}), std::domain_error); }

    TEST_CASE("zero polynomial has no numeric degree") {
        CHECK(Poly{}.is_zero());
        CHECK(Poly{Rational(0)}.is_zero());
        CHECK_THROWS_AS((void)Poly{}.degree(), std::domain_error);
    }

    TEST_CASE("gcd examples") {
        CHECK(poly_gcd(s * s - 1, s - 1) == s - 1);
        CHECK(poly_gcd((s - 1) * sp(2), (s - 2).pow(2)) == Poly(1));
        // Root multisets {-3,-3,5} and {-3,-7} share exactly {-3}.
        CHECK(poly_gcd(sp(3).pow(2) * (s - 5), sp(3) * sp(7)) == sp(3));
        CHECK_THROWS_AS(poly_gcd(Poly{}, Poly{}), std::domain_error);
        CHECK(poly_gcd(Poly{}, 2 * s + 4) == sp(2));
    }

    TEST_CASE("gcd agrees with root-multiset intersection") {
        Random rnd(11);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<long> ra, rb;
            for (int k = 0, n = static_cast<int>(rnd.integer(1, 4)); k < n; ++k) ra.push_back(rnd.integer(-4, 4));
            for (int k = 0, n = static_cast<int>(rnd.integer(1, 4)); k < n; ++k) rb.push_back(rnd.integer(-4, 4));
            Poly a = Poly(rnd.integer(1, 3)), b = Poly(rnd.integer(-3, -1));
            for (long r : ra) a *= s - r;
            for (long r : rb) b *= s - r;
            Poly expected(1);
            std::vector<long> rest = rb;
            for (long r : ra) {
                auto it = std::find(rest.begin(), rest.end(), r);
                if (it != rest.end()) {
                    expected *= s - r;
                    rest.erase(it);
                }
            }
            CHECK(poly_gcd(a, b) == expected);
        }
    }

    TEST_CASE("divmod reconstruction holds on random inputs") {
        Random rnd(3);
        for (int trial = 0; trial < 200; ++trial) {
            const Poly a = rnd.poly(7);
            Poly b = rnd.poly(4);
            if (b.is_zero()) continue;
            auto [q, r] = poly_divmod(a, b);
            CHECK(b * q + r == a);
            if (!r.is_zero()) CHECK(r.degree() < b.degree());
        }
    }

    TEST_CASE("square-free decomposition") {
        const Poly p = (s - 1).pow(3) * sp(2) * (s * s + 1).pow(2);
        auto sf = square_free_decomposition(3 * p);
        REQUIRE(sf.size() == 3);
        CHECK(sf[0].first == sp(2));
        CHECK(sf[0].second == 1);
        CHECK(sf[1].first == s * s + 1);
        CHECK(sf[2].first == s - 1);
        CHECK(sf[2].second == 3);
    }
}

TEST_SUITE("ratfn") {
    TEST_CASE("canonical form") {
        const RatFn f(2 * (s - 1) * sp(2), 4 * (s - 1) * (s - 2));
        CHECK(f.num() == sp(2).scaled(q(1, 2)));
        CHECK(f.den() == s - 2);
        CHECK(RatFn(f.num(), f.den()) == f);
        CHECK(RatFn(Poly{}, s + 5).den() == Poly(1));
        CHECK_THROWS_AS(RatFn(s, Poly{}), std::domain_error);
    }

    TEST_CASE("relative degree") {
        CHECK(RatFn((s - 1) * sp(2), (s - 2).pow(2)).relative_degree() == 0);
        CHECK(RatFn(Poly(1), sp(1).pow(2)).relative_degree() == 2);
        const RatFn improper(s * s + 1, sp(1));
        CHECK(improper.relative_degree() == -1);
        CHECK_FALSE(improper.is_proper());
        CHECK(RatFn().relative_degree() == kInfiniteRelativeDegree);
    }

    TEST_CASE("evaluation and poles") {
        CHECK(*RatFn(s - 1, sp(2)).eval(0) == q(-1, 2));
        CHECK_FALSE(RatFn(Poly(1), s - 2).eval(2).has_value());
        CHECK(*RatFn((s - 1) * sp(2), (s - 2).pow(2)).eval(1) == 0);
    }

    TEST_CASE("canonical form is idempotent on random fractions") {
        Random rnd(5);
        for (int trial = 0; trial < 100; ++trial) {
            const RatFn f = rnd.ratfn(4);
            CHECK(RatFn(f.num(), f.den()) == f);
            if (!f.is_zero()) CHECK(f.den().lead() == 1);
        }
    }
}

TEST_SUITE("polymat") {
    TEST_CASE("determinant examples") {
        CHECK(polymat_det(PolyMat{{s, Poly(1)}, {Poly{}, s}}) == s * s);
        CHECK(polymat_det(PolyMat{{(s - 2).pow(2)}}) == (s - 2).pow(2));
        CHECK_THROWS_AS(polymat_det(PolyMat(2, 3)), std::invalid_argument);
    }

    TEST_CASE("Bareiss matches cofactor expansion") {
        Random rnd(17);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = static_cast<std::size_t>(rnd.integer(1, 4));
            PolyMat a = rnd.polymat(n, n, 2);
            if (trial % 5 == 0 && n > 1)  // force a zero leading pivot
                a(0, 0) = Poly{};
            CHECK(polymat_det(a) == cofactor_det(a));
        }
    }

    TEST_CASE("Hermite examples") {
        auto id = polymat_hermite(PolyMat::identity(2));
        CHECK(id.h == PolyMat::identity(2));
        CHECK(id.u == PolyMat::identity(2));

        const PolyMat col{{s - 1}, {s + 1}};
        auto hf = polymat_hermite(col);
        CHECK(hf.h == PolyMat{{Poly(1)}, {Poly{}}});
        CHECK(hf.u * col == hf.h);
        CHECK(polymat_det(hf.u).degree() == 0);

        const PolyMat diag{{s, Poly{}}, {Poly{}, s}};
        auto hd = polymat_hermite(diag);
        CHECK(hd.h == diag);
        CHECK(hd.u == PolyMat::identity(2));
    }

    TEST_CASE("Hermite invariants on random matrices") {
        Random rnd(23);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t r = static_cast<std::size_t>(rnd.integer(1, 4));
            const std::size_t c = static_cast<std::size_t>(rnd.integer(1, 3));
            const PolyMat a = rnd.polymat(r, c, 2, 3);
            const HermiteForm hf = polymat_hermite(a);
            CHECK(hf.u * a == hf.h);
            const Poly du = polymat_det(hf.u);
            REQUIRE_FALSE(du.is_zero());
            CHECK(du.degree() == 0);
            // Echelon: strictly increasing pivot columns, zeros below and
            // left of pivots, monic pivots, reduced entries above.
            for (std::size_t k = 0; k < hf.pivot_cols.size(); ++k) {
                const std::size_t pc = hf.pivot_cols[k];
                if (k) CHECK(pc > hf.pivot_cols[k - 1]);
                CHECK(hf.h(k, pc).lead() == 1);
                for (std::size_t j = 0; j < pc; ++j) CHECK(hf.h(k, j).is_zero());
                for (std::size_t i = k + 1; i < r; ++i) CHECK(hf.h(i, pc).is_zero());
                for (std::size_t i = 0; i < k; ++i)
                    if (!hf.h(i, pc).is_zero()) CHECK(hf.h(i, pc).degree() < hf.h(k, pc).degree());
            }
            for (std::size_t i = hf.pivot_cols.size(); i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) CHECK(hf.h(i, j).is_zero());
        }
    }

    TEST_CASE("column reduction") {
        // [[s^2, s], [s, 1]] + I is not column reduced: leading matrix [[1,1],[0,0]].
        const PolyMat d{{s * s + 1, s}, {s, Poly(2)}};
        CHECK_FALSE(is_column_reduced(d));
        const ColumnReduction cr = column_reduce(d);
        CHECK(is_column_reduced(cr.reduced));
        CHECK(d * cr.v == cr.reduced);
        CHECK(is_unimodular(cr.v));
    }
}

TEST_SUITE("ratmat") {
    TEST_CASE("product with inverse is identity") {
        const RatMat p{{RatFn(Poly(1), sp(1)), RatFn()}, {RatFn(), RatFn(Poly(1), sp(2))}};
        CHECK(ratmat_mul(p, ratmat_inv(p)) == RatMat::identity(2));
    }

    TEST_CASE("N' X' product") {
        const RatMat n{{RatFn(s - 1, sp(2))}};
        const RatMat x{{RatFn(sp(2), sp(1).pow(2))}};
        CHECK(ratmat_mul(n, x) == RatMat{{RatFn(s - 1, sp(1).pow(2))}});
    }

    TEST_CASE("nilpotent Neumann series") {
        const RatFn a(s * s + 1, sp(3));
        const RatMat lower{{RatFn(), RatFn()}, {a, RatFn()}};
        const RatMat id = RatMat::identity(2);
        CHECK(ratmat_inv(ratmat_sub(id, lower)) == ratmat_add(id, lower));
    }

    TEST_CASE("inverse errors") {
        CHECK_THROWS_AS(ratmat_inv(RatMat(2, 3)), std::invalid_argument);
        const RatFn f(Poly(1), sp(1));
        CHECK_THROWS_AS(ratmat_inv(RatMat{{f, f}, {f, f}}), std::domain_error);
        CHECK_THROWS_AS(ratmat_mul(RatMat(2, 3), RatMat(2, 3)), std::invalid_argument);
    }

    TEST_CASE("evaluation flags poles") {
        const RatMat plant{{RatFn((s - 1) * sp(2), (s - 2).pow(2))}};
        auto at1 = ratmat_eval(plant, 1);
        REQUIRE(at1.value);
        CHECK((*at1.value)(0, 0) == 0);
        auto at2 = ratmat_eval(plant, 2);
        CHECK(at2.has_pole());
        CHECK_FALSE(at2.value);
    }

    TEST_CASE("properness of matrices") {
        CHECK(ratmat_is_proper(RatMat{{RatFn(Poly(1), sp(1).pow(2)), RatFn(s, sp(1))}}));
        CHECK_FALSE(ratmat_is_proper(RatMat{{RatFn(s * s + 1, sp(1))}}));
    }

    TEST_CASE("ring laws and evaluation homomorphism on random samples") {
        Random rnd(29);
        for (int trial = 0; trial < 30; ++trial) {
            const RatMat a = rnd.ratmat(2, 2, 2), b = rnd.ratmat(2, 2, 2), c = rnd.ratmat(2, 2, 2);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) * c == a * c + b * c);
            const Rational s0 = rnd.rational(7, 5);
            auto ea = ratmat_eval(a, s0), eb = ratmat_eval(b, s0), eab = ratmat_eval(a * b, s0);
            if (ea.value && eb.value) {
                REQUIRE(eab.value);
                CHECK(*eab.value == *ea.value * *eb.value);
            }
        }
    }

    TEST_CASE("determinant over Q(s) matches polynomial determinant") {
        Random rnd(31);
        for (int trial = 0; trial < 20; ++trial) {
            const PolyMat a = rnd.polymat(3, 3, 2);
            CHECK(ratmat_det(to_ratmat(a)) == RatFn(polymat_det(a)));
        }
    }
}

TEST_SUITE("format") {
    TEST_CASE("factored printing") {
        CHECK(format(RatFn((s - 1) * sp(2), (s - 2).pow(2))) == "(s-1)*(s+2)/(s-2)^2");
        CHECK(format(RatFn(sp(2), sp(1).pow(2))) == "(s+2)/(s+1)^2");
        CHECK(format(RatFn(Poly(-4), sp(2))) == "-4/(s+2)");
        CHECK(format(RatFn(3 * s - 42, sp(11) * sp(2))) == "3*(s-14)/((s+2)*(s+11))");
        CHECK(format(Poly(q(-1, 2))) == "-1/2");
        CHECK(format(s * s + 1) == "s^2+1");
        CHECK(format_decimal(0.1) == "0.1");
        CHECK(format_decimal(1.0 - 1e-13) == "1");
        CHECK(format_decimal(-2.5e-7) == "-0.00000025");
    }
}
