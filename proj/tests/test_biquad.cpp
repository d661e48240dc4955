#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "witnesskit/biquad.hpp"
#include "witnesskit/rng.hpp"
#include "witnesskit/witness_maps.hpp"

using namespace witnesskit;

namespace {

// Random PSD form as a sum of squares of bilinear forms (X^T B Y)^2.
BiQuadraticForm random_psd_form(Rng& rng, std::size_t terms = 3) {
    BiQuadraticForm f(3, 3);
    for (std::size_t t = 0; t < terms; ++t) {
        double b[3][3];
        for (auto& row : b)
            for (double& v : row) v = rng.uniform(-1.0, 1.0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < 3; ++k)
                    for (std::size_t l = 0; l < 3; ++l)
                        f.add_term(i, k, j, l, b[i][j] * b[k][l]);
    }
    return f;
}

// Agreement of two maps on the 6-dimensional real symmetric basis.
double symmetric_basis_distance(const Superoperator& a, const Superoperator& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) {
            ComplexMatrix e = (i == j)
                                  ? ComplexMatrix::unit(3, i, i)
                                  : ComplexMatrix::unit(3, i, j) + ComplexMatrix::unit(3, j, i);
            worst = std::max(worst, (a.apply(e) - b.apply(e)).max_abs());
        }
    return worst;
}

}  // namespace

TEST_CASE("form evaluation on pinned points") {
    for (double mu : {1.0, 1.5, 2.0}) {
        const BiQuadraticForm f = choi_form(mu);
        CHECK(f.evaluate({1, 0, 0}, {0, 1, 0}) == Catch::Approx(mu).margin(1e-15));
    }
    CHECK(choi_form(1.0).evaluate({1, 1, 1}, {1, 1, 1}) == Catch::Approx(0.0).margin(1e-14));
    CHECK(choi_form(2.0).evaluate({1, 1, 1}, {1, 1, 1}) == Catch::Approx(3.0).margin(1e-14));
    CHECK_THROWS_AS(choi_form(1.0).evaluate({1, 0}, {0, 1, 0}), std::invalid_argument);
}

TEST_CASE("form domain") {
    CHECK_THROWS_AS(choi_form(0.99), std::invalid_argument);
}

TEST_CASE("form extracted from the map equals the closed-form coefficients") {
    for (double mu : {1.0, 1.5, 2.0}) {
        const BiQuadraticForm extracted = form_from_map(build_map(MapParams::choi_i(mu)));
        CHECK(extracted.max_coeff_difference(choi_form(mu)) <= 1e-14);
    }
}

TEST_CASE("identity and transpose maps give the inner-product-squared form") {
    Rng rng(31);
    const BiQuadraticForm f_id = form_from_map(Superoperator::identity_map(2));
    const BiQuadraticForm f_tr = form_from_map(Superoperator::transpose_map(2));
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const std::vector<double> y{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double dot = x[0] * y[0] + x[1] * y[1];
        CHECK(f_id.evaluate(x, y) == Catch::Approx(dot * dot).margin(1e-13));
        CHECK(f_tr.evaluate(x, y) == Catch::Approx(dot * dot).margin(1e-13));
    }
}

TEST_CASE("map reconstructed from the form agrees on symmetric inputs") {
    for (double mu : {1.0, 2.0}) {
        const Superoperator direct = build_map(MapParams::choi_i(mu));
        const Superoperator rebuilt = map_from_form(choi_form(mu));
        CHECK(symmetric_basis_distance(direct, rebuilt) <= 1e-13);
        // the pinned skew extension reproduces the map exactly
        CHECK((direct.matrix() - rebuilt.matrix()).max_abs() <= 1e-13);
    }

    const Superoperator id2 = Superoperator::identity_map(2);
    const Superoperator round = map_from_form(form_from_map(id2));
    ComplexMatrix sym(2, 2);
    sym(0, 0) = 0.3;
    sym(0, 1) = -0.4;
    sym(1, 0) = -0.4;
    sym(1, 1) = 1.1;
    CHECK((round.apply(sym) - sym).max_abs() <= 1e-13);
    CHECK((map_from_form(form_from_map(id2)).apply(ComplexMatrix::identity(2)) -
           ComplexMatrix::identity(2))
              .max_abs() <= 1e-13);
}

TEST_CASE("form-map roundtrip is the identity on coefficients") {
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const BiQuadraticForm f = random_psd_form(rng);
        const BiQuadraticForm back = form_from_map(map_from_form(f));
        CHECK(back.max_coeff_difference(f) <= 1e-13);
    }
}

TEST_CASE("variable scaling") {
    const BiQuadraticForm f = choi_form(1.0);
    const BiQuadraticForm same = scale_variables(f, {1.0, 1.0, 1.0}, ScaleSide::x);
    CHECK(same.max_coeff_difference(f) == 0.0);

    CHECK_THROWS_AS(scale_variables(f, {1.0, 0.0, 1.0}, ScaleSide::x),
                    std::invalid_argument);

    Rng rng(33);
    const BiQuadraticForm doubled = scale_variables(f, {2.0, 1.0, 1.0}, ScaleSide::x);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        std::vector<double> y{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        std::vector<double> xs{2.0 * x[0], x[1], x[2]};
        CHECK(doubled.evaluate(x, y) == Catch::Approx(f.evaluate(xs, y)).margin(1e-12));
    }
}

TEST_CASE("x and y scaling commute") {
    Rng rng(34);
    const BiQuadraticForm f = random_psd_form(rng);
    const std::vector<double> sx{1.4, 0.6, -2.0};
    const std::vector<double> sy{0.3, 2.5, 1.0};
    const BiQuadraticForm a =
        scale_variables(scale_variables(f, sx, ScaleSide::x), sy, ScaleSide::y);
    const BiQuadraticForm b =
        scale_variables(scale_variables(f, sy, ScaleSide::y), sx, ScaleSide::x);
    CHECK(a.max_coeff_difference(b) <= 1e-15);
}

TEST_CASE("scaled form reconstructs the generalized map on symmetric inputs") {
    const BiQuadraticForm g = scale_variables(choi_form(1.0), {1.6, 1.0, 1.0}, ScaleSide::x);
    const Superoperator from_form = map_from_form(g);
    const Superoperator direct = build_map(MapParams::generalized(1.6, 1.0, 1.0));
    CHECK(symmetric_basis_distance(from_form, direct) <= 1e-13);
}

TEST_CASE("numeric minimum of positive forms") {
    const FormMinimum m1 = numeric_min(choi_form(1.0), 32, 7);
    CHECK(m1.value >= -1e-9);
    CHECK(m1.value == Catch::Approx(oracles::grid_min_form(choi_form(1.0))).margin(1e-3));
    // the minimum touches zero at matching sign-symmetric copies of
    // (1,1,1)/sqrt(3)
    CHECK(m1.value < 1e-6);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(m1.x[i]) == Catch::Approx(1.0 / std::sqrt(3.0)).margin(0.02));
        CHECK(std::abs(m1.y[i]) == Catch::Approx(1.0 / std::sqrt(3.0)).margin(0.02));
    }

    const BiQuadraticForm g = scale_variables(choi_form(1.0), {1.6, 1.0, 1.0}, ScaleSide::x);
    const FormMinimum m2 = numeric_min(g, 32, 7);
    CHECK(m2.value >= -1e-9);
    CHECK(oracles::grid_min_form(g) >= -1e-9);
}

TEST_CASE("numeric minimum flags an indefinite control form") {
    // transpose form minus twice the identity form is -(X.Y)^2 in 2
    // variables: strictly negative away from orthogonal pairs
    const BiQuadraticForm f_id = form_from_map(Superoperator::identity_map(2));
    BiQuadraticForm control(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    control.set_coeff(
                        i, j, k, l,
                        form_from_map(Superoperator::transpose_map(2)).coeff(i, j, k, l) -
                            2.0 * f_id.coeff(i, j, k, l));
    const FormMinimum m = numeric_min(control, 16, 3);
    CHECK(m.value < 0.0);
    CHECK(m.value == Catch::Approx(-1.0).margin(1e-6));
}

TEST_CASE("numeric minimum is deterministic for a fixed seed") {
    const FormMinimum a = numeric_min(choi_form(1.5), 8, 42);
    const FormMinimum b = numeric_min(choi_form(1.5), 8, 42);
    CHECK(a.value == b.value);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
}

TEST_CASE("osaka-derived forms are positive") {
    const BiQuadraticForm f = form_from_map(build_map(MapParams::osaka(1.0, 6.0, 1.0 / 6.0)));
    CHECK(numeric_min(f, 32, 9).value >= -1e-9);
}
