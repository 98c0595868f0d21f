#include <doctest.h>

#include "ballcomp/boundary.hpp"
#include "oracle_helpers.hpp"

using namespace ballcomp;
using namespace ballcomp::testing;

TEST_CASE("construction normalizes the scale and guards the denominator") {
    const auto psi13 = LinearFractionalMap::axis_automorphism(2, 1.0 / 3.0);
    CHECK(psi13.d() == doctest::Approx(1.0));

    // Complex scale is rotated away at construction; evaluation is unchanged.
    const LinearFractionalMap rotated =
        LinearFractionalMap::from_matrix(Complex(0.0, 2.0) * psi13.matrix());
    CHECK(rotated.d() > 0.0);
    auto rng = fixed_rng();
    for (int i = 0; i < 10; ++i) {
        const CVector z = random_interior_point(rng, 2);
        CHECK((rotated(z) - psi13(z)).norm() < 1e-13);
    }

    try {
        LinearFractionalMap(CMatrix::Identity(2, 2), CVector::Zero(2),
                            2.0 * e1(2), 1.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateDenominator);
    }
    try {
        LinearFractionalMap(CMatrix::Zero(2, 2), CVector::Zero(2),
                            CVector::Zero(2), 0.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroScale);
    }
}

TEST_CASE("evaluation matches the defining formula") {
    const auto id = LinearFractionalMap::identity(2);
    const CVector z = make_point({0.3, Complex(0.0, 0.4)});
    CHECK((id(z) - z).norm() == 0.0);

    const auto psi13 = LinearFractionalMap::axis_automorphism(2, 1.0 / 3.0);
    CHECK((psi13(CVector::Zero(2)) - make_point({1.0 / 3.0, 0.0})).norm() < 1e-15);
    CHECK((psi13(e1(2)) - e1(2)).norm() < 1e-15);

    // Matrix evaluation against the component formula at random points.
    auto rng = fixed_rng(7);
    for (int i = 0; i < 20; ++i) {
        const CVector w = random_interior_point(rng, 2);
        CHECK((psi13(w) - axis_automorphism_reference(1.0 / 3.0, w)).norm() < 1e-12);
    }
}

TEST_CASE("composition is the matrix product") {
    const auto id = LinearFractionalMap::identity(2);
    const auto psi13 = LinearFractionalMap::axis_automorphism(2, 1.0 / 3.0);
    CHECK(projectively_equal(compose(id, psi13), psi13, 1e-14));

    const auto half = LinearFractionalMap::dilation(2, 0.5);
    CHECK(projectively_equal(compose(half, half),
                             LinearFractionalMap::dilation(2, 0.25), 1e-14));

    const auto round_trip = compose(psi13, adjoint_map(psi13));
    auto rng = fixed_rng(11);
    for (int i = 0; i < 20; ++i) {
        const CVector z = random_interior_point(rng, 2);
        CHECK((round_trip(z) - psi13(adjoint_map(psi13)(z))).norm() < 1e-12);
    }
}

TEST_CASE("composition homomorphism over random self-maps") {
    auto rng = fixed_rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 3;
        const auto phi = random_self_map(rng, n);
        const auto psi = random_self_map(rng, n);
        const auto both = compose(phi, psi);
        for (int i = 0; i < 50; ++i) {
            const CVector z = random_interior_point(rng, n);
            CHECK((both(z) - phi(psi(z))).norm() < 1e-10);
        }
    }
}

TEST_CASE("adjoint symbol") {
    const auto id = LinearFractionalMap::identity(2);
    CHECK(projectively_equal(adjoint_map(id), id, 1e-14));

    const auto half = LinearFractionalMap::dilation(2, 0.5);
    CHECK(projectively_equal(adjoint_map(half), half, 1e-14));

    // The adjoint formula applied entrywise: A* unchanged for psi_a, the
    // B and C columns swap with a sign, leaving psi_{-a}.
    const auto psi13 = LinearFractionalMap::axis_automorphism(2, 1.0 / 3.0);
    const auto sigma = adjoint_map(psi13);
    CHECK(projectively_equal(
        sigma, LinearFractionalMap::axis_automorphism(2, -1.0 / 3.0), 1e-13));

    auto rng = fixed_rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto phi = random_self_map(rng, 1 + trial % 3);
        CHECK(projectively_equal(adjoint_map(adjoint_map(phi)), phi, 1e-10));
    }
}

TEST_CASE("unitary conjugation moves boundary data to e1") {
    const auto id = LinearFractionalMap::identity(2);
    CVector e2 = CVector::Zero(2);
    e2(1) = 1.0;
    CHECK(projectively_equal(unitary_conjugate(id, e2, e2), id, 1e-13));

    const auto psi13 = LinearFractionalMap::axis_automorphism(2, 1.0 / 3.0);
    CHECK(projectively_equal(unitary_conjugate(psi13, e1(2), e1(2)), psi13, 1e-13));

    // Swap-conjugated copy fixes e2; conjugating back recovers a map fixing
    // e1 whose boundary dilation there is d_psi13(e1) = 1/2.
    CMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    const LinearFractionalMap uswap(swap, CVector::Zero(2), CVector::Zero(2), 1.0);
    const auto swapped = compose(uswap, compose(psi13, uswap));
    CHECK((swapped(e2) - e2).norm() < 1e-14);
    const auto back = unitary_conjugate(swapped, e2, e2);
    CHECK((back(e1(2)) - e1(2)).norm() < 1e-14);
    CHECK(angular_derivative(back, e1(2)).d_val == doctest::Approx(0.5).epsilon(1e-8));

    try {
        unitary_conjugate(psi13, 0.5 * e1(2), e1(2));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotUnitVector);
    }
}

TEST_CASE("projective equality") {
    const auto psi13 = LinearFractionalMap::axis_automorphism(2, 1.0 / 3.0);
    CHECK(projectively_equal(psi13, psi13, 1e-15));
    CHECK(projectively_equal(
        psi13, LinearFractionalMap::from_matrix(2.0 * psi13.matrix()), 1e-13));
    // Distinct automorphisms: images of 0 are (1/3, 0) vs (1/2, 0).
    CHECK_FALSE(projectively_equal(
        psi13, LinearFractionalMap::axis_automorphism(2, 0.5), 1e-9));
}

TEST_CASE("T-form extraction") {
    const auto id = LinearFractionalMap::identity(3);
    const TForm f_id = normalize_t_form(id);
    CHECK(f_id.t == doctest::Approx(1.0));
    CHECK(std::abs(f_id.K) < 1e-14);
    CHECK(f_id.beta.norm() < 1e-14);
    CHECK(f_id.gamma.norm() < 1e-14);
    CHECK((f_id.alpha - CMatrix::Identity(2, 2)).norm() < 1e-14);

    const auto psi13 = LinearFractionalMap::axis_automorphism(2, 1.0 / 3.0);
    const TForm f13 = normalize_t_form(psi13);
    CHECK(f13.t == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f13.K.real() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(f13.K.imag()) < 1e-14);
    CHECK(f13.beta.norm() < 1e-14);
    CHECK(f13.gamma.norm() < 1e-14);
    CHECK(f13.alpha(0, 0).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    // Partial-derivative oracle: t = D1 phi_1(e1), alpha_22 = D2 phi_2(e1).
    const CMatrix jac = psi13.jacobian(e1(2));
    CHECK(f13.t == doctest::Approx(jac(0, 0).real()).epsilon(1e-12));
    CHECK(std::abs(f13.alpha(0, 0) - jac(1, 1)) < 1e-12);

    const TForm f12 =
        normalize_t_form(LinearFractionalMap::axis_automorphism(2, 0.5));
    CHECK(f12.t == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(f12.K.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(f12.alpha(0, 0).real() ==
          doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));

    try {
        normalize_t_form(LinearFractionalMap::dilation(2, 0.5));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFixingE1);
    }
}

TEST_CASE("T-form round trip over maps fixing e1") {
    std::vector<LinearFractionalMap> corpus = {
        LinearFractionalMap::identity(2),
        LinearFractionalMap::axis_automorphism(2, 1.0 / 3.0),
        LinearFractionalMap::axis_automorphism(2, -0.7),
        half_shift_map(2),
        parabolic_variant(0.05, 0.5),
        parabolic_variant(Complex(0.02, 0.03), Complex(0.4, 0.1)),
        LinearFractionalMap::axis_automorphism(3, 0.25),
    };
    corpus.push_back(compose(corpus[1], corpus[3]));
    corpus.push_back(compose(corpus[3], corpus[4]));
    for (const auto& phi : corpus) {
        const TForm f = normalize_t_form(phi);
        CHECK(projectively_equal(f.to_map(), phi, 1e-10));
    }
}

TEST_CASE("denominator stays away from zero on the sphere") {
    auto rng = fixed_rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const auto phi = random_contractive_map(rng, 2);
        const double floor = phi.d() - phi.C().norm();
        double min_seen = 1e300;
        for (int i = 0; i < 10000; ++i) {
            const CVector z = random_unit_vector(rng, 2);
            min_seen = std::min(min_seen, std::abs(phi.denominator(z)));
        }
        CHECK(min_seen >= floor - 1e-12);
    }
}
