#include <doctest.h>

#include "q28/forms.hpp"
#include "test_util.hpp"

using namespace q28;
using q28::testutil::random_form;
using q28::testutil::random_vec3;

TEST_CASE("monomial indexing is graded-lex with first exponent descending") {
    // degree 2: e1^2, e1e2, e1e3, e2^2, e2e3, e3^2
    CHECK(TernaryForm::index_of(2, 2, 0) == 0);
    CHECK(TernaryForm::index_of(2, 1, 1) == 1);
    CHECK(TernaryForm::index_of(2, 1, 0) == 2);
    CHECK(TernaryForm::index_of(2, 0, 2) == 3);
    CHECK(TernaryForm::index_of(2, 0, 1) == 4);
    CHECK(TernaryForm::index_of(2, 0, 0) == 5);
    CHECK(TernaryForm::size_for(4) == 15);
    CHECK(TernaryForm::size_for(12) == 91);
}

TEST_CASE("mul: monomial and binomial products") {
    TernaryForm e1 = TernaryForm::monomial(1, 1, 0);
    TernaryForm e2 = TernaryForm::monomial(1, 0, 1);
    TernaryForm p = mul(e1, e2);
    CHECK(p.degree == 2);
    CHECK(p.at(1, 1) == Complex(1, 0));

    TernaryForm s = e1 + e2;
    TernaryForm sq = mul(s, s);
    CHECK(sq.at(2, 0) == Complex(1, 0));
    CHECK(sq.at(1, 1) == Complex(2, 0));
    CHECK(sq.at(0, 2) == Complex(1, 0));
    CHECK(std::abs(sq.at(0, 0)) == 0.0);
}

TEST_CASE("mul agrees with pointwise evaluation") {
    Rng rng(7);
    TernaryForm f = random_form(3, rng);
    TernaryForm g = random_form(3, rng);
    TernaryForm fg = mul(f, g);
    for (int k = 0; k < 20; ++k) {
        Vec3 p = random_vec3(rng);
        Complex lhs = fg.eval(p);
        Complex rhs = f.eval(p) * g.eval(p);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("diff: basic formal derivatives") {
    TernaryForm f = TernaryForm::monomial(3, 3, 0);  // e1^3
    TernaryForm d = diff(f, 0);
    CHECK(d.degree == 2);
    CHECK(d.at(2, 0) == Complex(3, 0));

    TernaryForm g = TernaryForm::monomial(3, 1, 1);  // e1 e2 e3
    TernaryForm dg = diff(g, 1);
    CHECK(dg.at(1, 0) == Complex(1, 0));  // e1 e3

    TernaryForm c(0);
    c.coeffs[0] = Complex(5, 2);
    CHECK(diff(c, 0).is_zero());
    CHECK(diff(c, 0).degree == 0);
}

TEST_CASE("diff matches central differences") {
    Rng rng(11);
    TernaryForm f = random_form(4, rng);
    const double h = 1e-5;
    for (int var = 0; var < 3; ++var) {
        TernaryForm d = diff(f, var);
        for (int k = 0; k < 5; ++k) {
            Vec3 p = random_vec3(rng);
            Vec3 hi = p, lo = p;
            hi[var] += h;
            lo[var] -= h;
            Complex fd = (f.eval(hi) - f.eval(lo)) / (2 * h);
            CHECK(std::abs(fd - d.eval(p)) < 1e-7);
        }
    }
}

TEST_CASE("eval basics and homogeneity") {
    TernaryForm f(2);
    f.at(2, 0) = Complex(1, 0);
    f.at(0, 2) = Complex(1, 0);  // e1^2 + e2^2
    CHECK(f.eval(Vec3(1, 2, 5)) == Complex(5, 0));

    TernaryForm z(3);
    CHECK(z.eval(Vec3(2, -1, 4)) == Complex(0, 0));

    Rng rng(3);
    TernaryForm g = random_form(5, rng);
    Vec3 p = random_vec3(rng);
    Complex lhs = g.eval(2.0 * p);
    Complex rhs = 32.0 * g.eval(p);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
}

TEST_CASE("pullback: coordinate maps and monomials") {
    Rng rng(5);
    std::array<TernaryForm, 3> map = {random_form(3, rng), random_form(3, rng),
                                      random_form(3, rng)};
    TernaryForm x1 = TernaryForm::monomial(1, 1, 0);
    TernaryForm back = pullback(x1, map);
    for (size_t i = 0; i < back.coeffs.size(); ++i)
        CHECK(std::abs(back.coeffs[i] - map[0].coeffs[i]) < 1e-14);

    TernaryForm x1x2 = TernaryForm::monomial(2, 1, 1);
    std::array<TernaryForm, 3> squares = {TernaryForm::monomial(2, 2, 0),
                                          TernaryForm::monomial(2, 0, 2),
                                          TernaryForm::monomial(2, 0, 0)};
    TernaryForm r = pullback(x1x2, squares);
    CHECK(r.degree == 4);
    CHECK(r.at(2, 2) == Complex(1, 0));
}

TEST_CASE("pullback agrees with evaluation") {
    Rng rng(13);
    TernaryForm f = random_form(4, rng);
    std::array<TernaryForm, 3> map = {random_form(3, rng), random_form(3, rng),
                                      random_form(3, rng)};
    TernaryForm fg = pullback(f, map);
    for (int k = 0; k < 20; ++k) {
        Vec3 p = random_vec3(rng);
        Vec3 gp(map[0].eval(p), map[1].eval(p), map[2].eval(p));
        Complex rhs = f.eval(gp);
        CHECK(std::abs(fg.eval(p) - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("pullback rejects mismatched component degrees") {
    TernaryForm f = TernaryForm::monomial(2, 1, 1);
    std::array<TernaryForm, 3> bad = {TernaryForm(2), TernaryForm(3), TernaryForm(2)};
    CHECK_THROWS_AS(pullback(f, bad), InputError);
}

TEST_CASE("jacobian_det: diagonal and degenerate cases") {
    std::array<TernaryForm, 3> cubes = {TernaryForm::monomial(3, 3, 0),
                                        TernaryForm::monomial(3, 0, 3),
                                        TernaryForm::monomial(3, 0, 0)};
    TernaryForm j = jacobian_det(cubes);
    CHECK(j.degree == 6);
    CHECK(std::abs(j.at(2, 2) - Complex(27, 0)) < 1e-14);
    int nonzero = 0;
    for (const auto& c : j.coeffs)
        if (std::abs(c) > 0) ++nonzero;
    CHECK(nonzero == 1);

    Rng rng(17);
    TernaryForm a = random_form(3, rng);
    std::array<TernaryForm, 3> repeated = {a, a, random_form(3, rng)};
    CHECK(jacobian_det(repeated).is_zero(1e-12));
}

TEST_CASE("jacobian_det matches finite-difference determinant") {
    Rng rng(19);
    std::array<TernaryForm, 3> g = {random_form(3, rng), random_form(3, rng),
                                    random_form(3, rng)};
    TernaryForm j = jacobian_det(g);
    const double h = 1e-6;
    for (int k = 0; k < 10; ++k) {
        Vec3 p = random_vec3(rng);
        Mat3 numeric;
        for (int i = 0; i < 3; ++i)
            for (int c = 0; c < 3; ++c) {
                Vec3 hi = p, lo = p;
                hi[c] += h;
                lo[c] -= h;
                numeric(i, c) = (g[i].eval(hi) - g[i].eval(lo)) / (2 * h);
            }
        Complex expect = numeric.determinant();
        CHECK(std::abs(j.eval(p) - expect) < 1e-6 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("restrict_to_line: axis cases and evaluation") {
    TernaryForm x3 = TernaryForm::monomial(1, 0, 0);
    BinaryForm q = restrict_to_line(x3, Vec3(1, 0, 0), Vec3(0, 1, 0));
    CHECK(q.is_zero(1e-15));

    TernaryForm f(2);
    f.at(2, 0) = Complex(1, 0);
    f.at(0, 2) = Complex(1, 0);
    BinaryForm q2 = restrict_to_line(f, Vec3(1, 0, 0), Vec3(0, 1, 0));
    CHECK(std::abs(q2.coeffs[2] - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(q2.coeffs[0] - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(q2.coeffs[1]) < 1e-15);

    Rng rng(23);
    TernaryForm g = testutil::random_form(4, rng);
    Vec3 u = random_vec3(rng), v = random_vec3(rng);
    BinaryForm r = restrict_to_line(g, u, v);
    for (int k = 0; k < 10; ++k) {
        Complex s = rng.cgaussian(), t = rng.cgaussian();
        Complex rhs = g.eval(s * u + t * v);
        CHECK(std::abs(r.eval(s, t) - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("restrict_to_line rejects parallel directions") {
    TernaryForm f = TernaryForm::monomial(2, 2, 0);
    Vec3 u(1, 2, 3);
    CHECK_THROWS_WITH_AS(restrict_to_line(f, u, Complex(2, 1) * u), "degenerate parametrization",
                         ComputationError);
}

TEST_CASE("divide_by_linear splits exactly") {
    Rng rng(29);
    TernaryForm f = random_form(3, rng);
    Vec3 ell = random_vec3(rng);
    auto [quot, rem] = divide_by_linear(f, ell);
    CHECK(quot.degree == 2);
    CHECK(rem.degree == 3);
    // f == ell * quot + rem at random points
    TernaryForm lin(1);
    lin.at(1, 0) = ell[0];
    lin.at(0, 1) = ell[1];
    lin.at(0, 0) = ell[2];
    TernaryForm recomposed = mul(lin, quot) + rem;
    for (size_t i = 0; i < f.coeffs.size(); ++i)
        CHECK(std::abs(recomposed.coeffs[i] - f.coeffs[i]) < 1e-12);
    // remainder agrees with f on the line ell = 0
    Vec3 u = algebraic_cross(ell, Vec3(1, 0, 0));
    if (u.norm() < 1e-8) u = algebraic_cross(ell, Vec3(0, 1, 0));
    Complex fval = f.eval(u);
    Complex rval = rem.eval(u);
    CHECK(std::abs(fval - rval) < 1e-10 * std::max(1.0, std::abs(fval)));
}

TEST_CASE("projective points normalize with unit pivot") {
    ProjPoint p = ProjPoint::from(Vec3(Complex(0, 2), Complex(1, 0), Complex(0.5, 0.5)));
    int pivot = argmax_modulus(p.v.data(), 3);
    CHECK(p.v[pivot] == Complex(1, 0));
    CHECK(std::abs(p.v[0] - Complex(1, 0)) < 1e-15);  // 2i is the largest entry

    ProjPoint q = ProjPoint::from(Vec3(Complex(0, 4), Complex(2, 0), Complex(1, 1)));
    CHECK(p.distance(q) < 1e-15);
    CHECK(p.distance(ProjPoint::from(Vec3(1, 0, 0))) > 0.1);
}

TEST_CASE("projective distance is symmetric and scale-invariant") {
    Rng rng(31);
    for (int k = 0; k < 20; ++k) {
        Vec3 a = random_vec3(rng), b = random_vec3(rng);
        double d1 = proj_distance(a, b);
        double d2 = proj_distance(b, a);
        CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
        Complex s = rng.cgaussian();
        if (std::abs(s) < 1e-6) continue;
        CHECK(proj_distance((s * a).eval(), b) == doctest::Approx(d1).epsilon(1e-9));
        CHECK(proj_distance(a, a) < 1e-12);
    }
}
