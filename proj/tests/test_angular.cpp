#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>

#include "spinrus/angular.hpp"

using namespace spinrus;

namespace {

HalfInt h2(int twice) { return HalfInt::from_twice(twice); }

// Independent oracle for the spin-1 x spin-1 singlet: diagonalize the total
// S^2 operator on the m = 0 subspace and fix the Condon-Shortley phase by
// making the m1 = +1 component positive.
Eigen::Vector3d singlet_of_two_spin_ones() {
    Eigen::Matrix3d s_squared;  // basis m1 = +1, 0, -1 with m2 = -m1
    s_squared << 2, 2, 0,
                 2, 4, 2,
                 0, 2, 2;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(s_squared);
    int col = 0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(es.eigenvalues()(i)) < 1e-9) col = i;
    }
    Eigen::Vector3d v = es.eigenvectors().col(col);
    if (v(0) < 0.0) v = -v;
    return v;
}

}  // namespace

TEST_CASE("coupling with spin zero is the identity") {
    for (int tj = 0; tj <= 6; ++tj) {
        for (int tm = -tj; tm <= tj; tm += 2) {
            const ExactRadical r = cg(h2(tj), h2(tm), h2(0), h2(0), h2(tj), h2(tm));
            CHECK(r.sign() == 1);
            CHECK(r.radicand() == 1);
        }
    }
}

TEST_CASE("two spin-1/2 triplet component") {
    const ExactRadical r = cg(h2(1), h2(1), h2(1), h2(-1), h2(2), h2(0));
    CHECK(r.sign() == 1);
    CHECK(r.radicand() == mpq_class(1, 2));
    CHECK(r.value() == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("spin-1 pair singlet matches the diagonalization oracle") {
    const Eigen::Vector3d v = singlet_of_two_spin_ones();
    const double c_p1 = cg(h2(2), h2(2), h2(2), h2(-2), h2(0), h2(0)).value();
    const double c_0 = cg(h2(2), h2(0), h2(2), h2(0), h2(0), h2(0)).value();
    const double c_m1 = cg(h2(2), h2(-2), h2(2), h2(2), h2(0), h2(0)).value();
    CHECK(c_p1 == Catch::Approx(v(0)).margin(1e-12));
    CHECK(c_0 == Catch::Approx(v(1)).margin(1e-12));
    CHECK(c_m1 == Catch::Approx(v(2)).margin(1e-12));

    const ExactRadical r = cg(h2(2), h2(-2), h2(2), h2(2), h2(0), h2(0));
    CHECK(r.sign() == 1);
    CHECK(r.radicand() == mpq_class(1, 3));
}

TEST_CASE("cg vanishes unless magnetization adds up") {
    CHECK(cg(h2(2), h2(2), h2(2), h2(2), h2(4), h2(0)).sign() == 0);
    CHECK(cg(h2(1), h2(1), h2(1), h2(1), h2(2), h2(0)).sign() == 0);
}

TEST_CASE("cg rejects invalid quantum numbers") {
    CHECK_THROWS_AS(cg(h2(2), h2(0), h2(2), h2(0), h2(6), h2(0)), std::domain_error);  // triangle
    CHECK_THROWS_AS(cg(h2(2), h2(0), h2(1), h2(1), h2(2), h2(1)), std::domain_error);  // parity
    CHECK_THROWS_AS(cg(h2(2), h2(4), h2(2), h2(-2), h2(2), h2(2)), std::domain_error);  // |m|>j
    CHECK_THROWS_AS(cg(h2(-2), h2(0), h2(2), h2(0), h2(2), h2(0)), std::domain_error);  // j<0
}

TEST_CASE("cg orthogonality is exact") {
    for (int tj1 = 0; tj1 <= 5; ++tj1) {
        for (int tj2 = 0; tj2 <= 5; ++tj2) {
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                    mpq_class sum = 0;
                    for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
                        if (tJ < std::abs(tm1 + tm2)) continue;  // no such |J, Mz>
                        sum += cg(h2(tj1), h2(tm1), h2(tj2), h2(tm2), h2(tJ), h2(tm1 + tm2))
                                   .squared();
                    }
                    REQUIRE(sum == 1);
                }
            }
        }
    }
}

TEST_CASE("cg exchange symmetry is exact") {
    for (int tj1 = 0; tj1 <= 4; ++tj1) {
        for (int tj2 = 0; tj2 <= 4; ++tj2) {
            for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
                for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                    for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                        if (tJ < std::abs(tm1 + tm2)) continue;
                        const ExactRadical lhs =
                            cg(h2(tj1), h2(tm1), h2(tj2), h2(tm2), h2(tJ), h2(tm1 + tm2));
                        ExactRadical rhs =
                            cg(h2(tj2), h2(tm2), h2(tj1), h2(tm1), h2(tJ), h2(tm1 + tm2));
                        if (((tj1 + tj2 - tJ) / 2) % 2 != 0) rhs = -rhs;
                        REQUIRE(lhs == rhs);
                    }
                }
            }
        }
    }
}

TEST_CASE("lowering elements") {
    CHECK(lowering_element(h2(1), h2(1)) == Catch::Approx(1.0));
    CHECK(lowering_element(h2(2), h2(0)) == Catch::Approx(std::sqrt(2.0)));
    CHECK(lowering_element(h2(9), h2(9)) == Catch::Approx(3.0));  // sqrt(2j) at the top
    CHECK(lowering_element(h2(4), h2(-4)) == 0.0);
    CHECK_THROWS_AS(lowering_element(h2(2), h2(4)), std::domain_error);
}

TEST_CASE("ladder consistency: S- then S+ scales by (j+m)(j-m+1)") {
    for (int tj = 0; tj <= 9; ++tj) {
        for (int tm = -tj; tm <= tj; tm += 2) {
            const double le = lowering_element(h2(tj), h2(tm));
            const double expected = 0.25 * (tj + tm) * (tj - tm + 2);
            REQUIRE(le * le == Catch::Approx(expected).margin(1e-12));
        }
    }
}
