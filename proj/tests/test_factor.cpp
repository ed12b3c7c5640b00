#include <doctest.h>

#include "test_support.hpp"
#include "twodof/errors.hpp"
#include "twodof/factor.hpp"
#include "twodof/stability.hpp"

using namespace twodof;
using namespace twodof::testing;

namespace {

RatMat scalar(const RatFn& f) { return RatMat(1, 1, {f}); }

const RatFn example_plant = RatFn(sp(-1) * sp(2), sp(-2).pow(2));

bool is_identity(const RatMat& a) { return a == to_ratmat(PolyMat::identity(a.rows())); }

// Independent coprimeness oracle for the scalar case: no common root.
bool scalar_coprime(const Poly& a, const Poly& b) { return poly_gcd(a, b).degree() == 0; }

}  // namespace

TEST_SUITE("factor") {
    TEST_CASE("right MFD of the example plant") {
        const RightMFD mfd = right_coprime_mfd(scalar(example_plant));
        CHECK(mfd.n(0, 0) == sp(-1) * sp(2));
        CHECK(mfd.d(0, 0) == sp(-2).pow(2));
        CHECK(is_right_coprime(mfd.n, mfd.d));
    }

    TEST_CASE("identity plant") {
        const RightMFD mfd = right_coprime_mfd(to_ratmat(PolyMat::identity(2)));
        CHECK(mfd.n == PolyMat::identity(2));
        CHECK(mfd.d == PolyMat::identity(2));
    }

    TEST_CASE("upper triangular plant reconstructs") {
        RatMat p(2, 2);
        p(0, 0) = RatFn(Poly(1), sp(1));
        p(0, 1) = RatFn(Poly(1), sp(2));
        p(1, 1) = RatFn(Poly(1), sp(3));
        const RightMFD mfd = right_coprime_mfd(p);
        CHECK(plant_of(mfd) == p);
        CHECK(is_right_coprime(mfd.n, mfd.d));
        CHECK(is_column_reduced(mfd.d));
        // Degree of det D equals the McMillan degree, 3 here.
        CHECK(polymat_det(mfd.d).degree() == 3);
    }

    TEST_CASE("improper plant is rejected") {
        CHECK_THROWS_AS(right_coprime_mfd(scalar(RatFn(s * s, sp(1)))), ImproperError);
        CHECK_THROWS_AS(left_coprime_mfd(scalar(RatFn(s))), ImproperError);
    }

    TEST_CASE("left MFD") {
        const LeftMFD l = left_coprime_mfd(scalar(example_plant));
        CHECK(l.dl(0, 0) == sp(-2).pow(2));
        CHECK(l.nl(0, 0) == sp(-1) * sp(2));

        const LeftMFD zero = left_coprime_mfd(RatMat(2, 3));
        CHECK(zero.dl == PolyMat::identity(2));
        CHECK(zero.nl.is_zero());

        RatMat c(1, 2);
        c(0, 0) = RatFn(3 * sp(-14), sp(11) * sp(2));
        c(0, 1) = RatFn(Poly(5), sp(11));
        const LeftMFD lc = left_coprime_mfd(c);
        CHECK(plant_of(lc) == c);
        CHECK(is_left_coprime(lc.dl, lc.nl));
        CHECK(is_row_reduced(lc.dl));
    }

    TEST_CASE("coprimeness") {
        CHECK(is_right_coprime(PolyMat(1, 1, {sp(-1) * sp(2)}), PolyMat(1, 1, {sp(-2).pow(2)})));
        CHECK_FALSE(is_right_coprime(PolyMat(1, 1, {sp(-1)}), PolyMat(1, 1, {sp(-1) * sp(1)})));
        CHECK_THROWS_AS(is_right_coprime(PolyMat(2, 1), PolyMat(2, 2)), std::invalid_argument);

        Random rng(11);
        int checked = 0;
        for (int trial = 0; trial < 60; ++trial) {
            const PolyMat d = rng.polymat(2, 2, 2);
            const PolyMat n = rng.polymat(2, 2, 2);
            if (polymat_det(d).is_zero()) continue;
            const PolyMat common = sp(4) * PolyMat::identity(2);
            CHECK_FALSE(is_right_coprime(n * common, d * common));
            ++checked;
        }
        CHECK(checked > 30);

        // Scalar pairs against the gcd oracle.
        for (int trial = 0; trial < 100; ++trial) {
            const Poly a = rng.poly(3), b = rng.poly(3);
            if (b.is_zero()) continue;
            CHECK(is_right_coprime(PolyMat(1, 1, {a}), PolyMat(1, 1, {b})) ==
                  (!a.is_zero() ? scalar_coprime(a, b) : b.degree() == 0));
        }
    }

    TEST_CASE("stable MFD of the example plant") {
        const StableMFD st = stable_mfd(right_coprime_mfd(scalar(example_plant)), 2);
        CHECK(st.nprime(0, 0) == RatFn(sp(-1), sp(2)));
        CHECK(st.dprime(0, 0) == RatFn(sp(-2).pow(2), sp(2).pow(2)));
        CHECK(is_identity(st.u * st.nprime + st.v * st.dprime));
        CHECK(is_rh_inf(st.u));
        CHECK(is_rh_inf(st.v));
        CHECK(plant_of(st) == scalar(example_plant));
        // A = 9s+18, B = -8s+32 solves A*D + B*N = (s+2)^3.
        CHECK(st.v(0, 0) == RatFn(Poly(9)));
        CHECK(st.u(0, 0) == RatFn(-8 * sp(-4), sp(2)));
    }

    TEST_CASE("stable MFD cancels to a constant") {
        const StableMFD st = stable_mfd(right_coprime_mfd(scalar(RatFn(Poly(1), sp(1)))), 1);
        CHECK(st.nprime(0, 0) == RatFn(Poly(1), sp(1)));
        CHECK(st.dprime(0, 0) == RatFn(Poly(1)));
    }

    TEST_CASE("stable MFD preconditions") {
        const RightMFD mfd = right_coprime_mfd(scalar(example_plant));
        CHECK_THROWS_AS(stable_mfd(mfd, 0), std::invalid_argument);
        CHECK_THROWS_AS(stable_mfd(mfd, -1), std::invalid_argument);
        // [[s^2, s], [s, 1]] has singular leading coefficient matrix.
        RightMFD bad{PolyMat::identity(2), PolyMat{{s * s + 1, s}, {s, Poly(1)}}};
        CHECK_THROWS_AS(stable_mfd(bad, 1), std::domain_error);
    }

    TEST_CASE("diagonal plant: per-column division") {
        RatMat p(2, 2);
        p(0, 0) = RatFn(sp(-1), sp(-2) * sp(3));
        p(1, 1) = RatFn(Poly(2), sp(-5));
        const StableMFD st = stable_mfd(right_coprime_mfd(p), 3);
        CHECK(plant_of(st) == p);
        CHECK(is_rh_inf(st.nprime));
        CHECK(is_rh_inf(st.dprime));
        CHECK(is_identity(st.u * st.nprime + st.v * st.dprime));
    }

    TEST_CASE("zeros and poles of the example plant") {
        const ZeroReport rep = zeros_and_poles(right_coprime_mfd(scalar(example_plant)));
        CHECK(rep.zero_polynomial == sp(-1) * sp(2));
        REQUIRE(rep.zeros.size() == 2);
        CHECK(*rep.zeros[0].exact == 1);
        CHECK(*rep.zeros[1].exact == -2);
        const auto uz = rep.unstable_zeros();
        REQUIRE(uz.size() == 1);
        CHECK(*uz[0].exact == 1);
        REQUIRE(rep.poles.size() == 1);
        CHECK(*rep.poles[0].exact == 2);
        CHECK(rep.poles[0].multiplicity == 2);
        CHECK(rep.unstable_poles().size() == 1);
    }

    TEST_CASE("zero directions") {
        const ZeroReport none = zeros_and_poles({PolyMat::identity(2), PolyMat::identity(2)});
        CHECK(none.zeros.empty());
        CHECK(none.poles.empty());

        const RightMFD mfd{PolyMat{{sp(-3), Poly()}, {Poly(), Poly(1)}}, PolyMat::identity(2)};
        const ZeroReport rep = zeros_and_poles(mfd);
        REQUIRE(rep.zeros.size() == 1);
        CHECK(*rep.zeros[0].exact == 3);
        CHECK(rep.zeros[0].unstable);
        REQUIRE(rep.zeros[0].exact_directions.size() == 1);
        const auto& w = rep.zeros[0].exact_directions[0];
        // Oracle: w^T N(3) = 0 with w proportional to e1.
        CHECK(w[1] == 0);
        CHECK(w[0] != 0);
        const QMatrix n3 = polymat_eval(mfd.n, 3);
        for (std::size_t j = 0; j < 2; ++j) CHECK(w[0] * n3(0, j) + w[1] * n3(1, j) == 0);
    }

    TEST_CASE("irrational zeros keep their exact factor") {
        // N = s^2 - 2: zeros at +-sqrt(2).
        const ZeroReport rep = zeros_and_poles({PolyMat(1, 1, {s * s - 2}), PolyMat(1, 1, {sp(1).pow(2)})});
        REQUIRE(rep.zeros.size() == 2);
        for (const auto& z : rep.zeros) {
            CHECK(z.factor == s * s - 2);
            CHECK(!z.exact);
            CHECK(std::abs(std::abs(z.location.real()) - std::sqrt(2.0)) < 1e-12);
            CHECK(z.directions.size() == 1);
        }
        CHECK(rep.unstable_zeros().size() == 1);
    }

    TEST_CASE("randomized reconstruction, coprimeness and witness") {
        Random rng(2024);
        for (int trial = 0; trial < 25; ++trial) {
            const std::size_t rows = static_cast<std::size_t>(rng.integer(1, 2));
            const std::size_t cols = static_cast<std::size_t>(rng.integer(1, 2));
            RatMat p(rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    const Poly den = rng.poly(2) * sp(rng.integer(-3, 3)) + Poly(rng.integer(1, 3)) * s.pow(3);
                    p(i, j) = RatFn(rng.poly(2), den);
                }
            const RightMFD mfd = right_coprime_mfd(p);
            CHECK(plant_of(mfd) == p);
            CHECK(is_right_coprime(mfd.n, mfd.d));
            CHECK(is_column_reduced(mfd.d));

            const LeftMFD l = left_coprime_mfd(p);
            CHECK(plant_of(l) == p);
            CHECK(is_left_coprime(l.dl, l.nl));

            const Rational shift = rng.integer(1, 3);
            const StableMFD st = stable_mfd(mfd, shift);
            CHECK(plant_of(st) == p);
            CHECK(is_rh_inf(st.nprime));
            CHECK(is_rh_inf(st.dprime));
            CHECK(is_rh_inf(st.u));
            CHECK(is_rh_inf(st.v));
            CHECK(is_identity(st.u * st.nprime + st.v * st.dprime));

            // Unstable zeros do not depend on the shift.
            const ZeroReport rep = zeros_and_poles(mfd);
            const StableMFD other = stable_mfd(mfd, shift + 5);
            const RightMFD numerators{to_polymat(other.nprime * to_ratmat(other.divisor)), mfd.d};
            CHECK(zeros_and_poles(numerators).unstable_zeros().size() == rep.unstable_zeros().size());
        }
    }
}
