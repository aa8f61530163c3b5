#ifndef Q28_FORMS_HPP
#define Q28_FORMS_HPP

#include <array>
#include <vector>

#include "q28/numeric.hpp"

namespace q28 {

/// Point of P^2, stored with the largest-modulus coordinate equal to 1.
struct ProjPoint {
    Vec3 v;

    static ProjPoint from(const Vec3& raw);
    double distance(const ProjPoint& other) const { return proj_distance(v, other.v); }
};

/// Dense homogeneous polynomial in three variables. Monomials x1^a x2^b x3^g,
/// a+b+g = degree, ordered graded-lex with a descending, then b descending.
struct TernaryForm {
    int degree = 0;
    std::vector<Complex> coeffs;

    TernaryForm() : coeffs(1, Complex(0, 0)) {}
    explicit TernaryForm(int deg) : degree(deg), coeffs(size_for(deg), Complex(0, 0)) {}

    static int size_for(int degree) { return (degree + 1) * (degree + 2) / 2; }
    static int index_of(int degree, int a, int b) {
        int k = degree - a;
        return k * (k + 1) / 2 + (k - b);
    }

    Complex& at(int a, int b) { return coeffs[index_of(degree, a, b)]; }
    const Complex& at(int a, int b) const { return coeffs[index_of(degree, a, b)]; }

    Complex eval(const Vec3& p) const;
    bool is_zero(double tol = 0.0) const;
    double max_coeff() const { return max_abs(coeffs); }

    /// Monomial x1^a x2^b x3^(deg-a-b) with coefficient c.
    static TernaryForm monomial(int degree, int a, int b, Complex c = Complex(1, 0));

    TernaryForm operator+(const TernaryForm& o) const;
    TernaryForm operator-(const TernaryForm& o) const;
    TernaryForm operator*(Complex s) const;
};

/// Dense homogeneous polynomial in two variables; coeffs[k] is the
/// coefficient of s^k t^(degree-k).
struct BinaryForm {
    int degree = 0;
    std::vector<Complex> coeffs;

    BinaryForm() : coeffs(1, Complex(0, 0)) {}
    explicit BinaryForm(int deg) : degree(deg), coeffs(deg + 1, Complex(0, 0)) {}

    Complex eval(Complex s, Complex t) const;
    bool is_zero(double tol = 0.0) const;
    double max_coeff() const { return max_abs(coeffs); }

    BinaryForm operator*(const BinaryForm& o) const;
    BinaryForm operator*(Complex s) const;
    BinaryForm operator-(const BinaryForm& o) const;
};

TernaryForm mul(const TernaryForm& f, const TernaryForm& g);

/// Formal partial derivative with respect to variable var (0, 1 or 2).
/// The derivative of a degree-0 form is the zero form of degree 0.
TernaryForm diff(const TernaryForm& f, int var);

/// Composition f(G1, G2, G3); the map components must share one degree.
TernaryForm pullback(const TernaryForm& f, const std::array<TernaryForm, 3>& map);

/// f(M x) for a linear change of variables.
TernaryForm linear_change(const TernaryForm& f, const Mat3& m);

/// Determinant of the matrix of partials d(G_i)/d(x_j).
TernaryForm jacobian_det(const std::array<TernaryForm, 3>& g);

/// q(s,t) = f(s u + t v). Throws for a degenerate (parallel) frame.
BinaryForm restrict_to_line(const TernaryForm& f, const Vec3& u, const Vec3& v);

/// Splits f = linear * quotient + remainder, where the remainder is the
/// unique form not involving the pivot variable of the linear form.
struct LinearDivision {
    TernaryForm quotient;
    TernaryForm remainder;
};
LinearDivision divide_by_linear(const TernaryForm& f, const Vec3& linear);

}  // namespace q28

#endif  // Q28_FORMS_HPP
