#include "q28/forms.hpp"

namespace q28 {

ProjPoint ProjPoint::from(const Vec3& raw) {
    ProjPoint p{raw};
    normalize_projective(p.v.data(), 3);
    return p;
}

Complex TernaryForm::eval(const Vec3& p) const {
    // power tables per variable
    std::vector<Complex> p1(degree + 1), p2(degree + 1), p3(degree + 1);
    p1[0] = p2[0] = p3[0] = Complex(1, 0);
    for (int k = 1; k <= degree; ++k) {
        p1[k] = p1[k - 1] * p[0];
        p2[k] = p2[k - 1] * p[1];
        p3[k] = p3[k - 1] * p[2];
    }
    Complex acc(0, 0);
    int idx = 0;
    for (int a = degree; a >= 0; --a)
        for (int b = degree - a; b >= 0; --b, ++idx)
            acc += coeffs[idx] * p1[a] * p2[b] * p3[degree - a - b];
    return acc;
}

bool TernaryForm::is_zero(double tol) const {
    for (const auto& c : coeffs)
        if (std::abs(c) > tol) return false;
    return true;
}

TernaryForm TernaryForm::monomial(int degree, int a, int b, Complex c) {
    TernaryForm f(degree);
    f.at(a, b) = c;
    return f;
}

TernaryForm TernaryForm::operator+(const TernaryForm& o) const {
    if (degree != o.degree) throw InputError("form degree mismatch in +");
    TernaryForm r(degree);
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] = coeffs[i] + o.coeffs[i];
    return r;
}

TernaryForm TernaryForm::operator-(const TernaryForm& o) const {
    if (degree != o.degree) throw InputError("form degree mismatch in -");
    TernaryForm r(degree);
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] = coeffs[i] - o.coeffs[i];
    return r;
}

TernaryForm TernaryForm::operator*(Complex s) const {
    TernaryForm r(degree);
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] = coeffs[i] * s;
    return r;
}

Complex BinaryForm::eval(Complex s, Complex t) const {
    Complex acc(0, 0);
    Complex sp(1, 0);
    for (int k = 0; k <= degree; ++k) {
        acc += coeffs[k] * sp * cpow(t, degree - k);
        sp *= s;
    }
    return acc;
}

bool BinaryForm::is_zero(double tol) const {
    for (const auto& c : coeffs)
        if (std::abs(c) > tol) return false;
    return true;
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
    BinaryForm r(degree + o.degree);
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; j <= o.degree; ++j) r.coeffs[i + j] += coeffs[i] * o.coeffs[j];
    return r;
}

BinaryForm BinaryForm::operator*(Complex s) const {
    BinaryForm r(degree);
    for (int i = 0; i <= degree; ++i) r.coeffs[i] = coeffs[i] * s;
    return r;
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const {
    if (degree != o.degree) throw InputError("binary form degree mismatch in -");
    BinaryForm r(degree);
    for (int i = 0; i <= degree; ++i) r.coeffs[i] = coeffs[i] - o.coeffs[i];
    return r;
}

TernaryForm mul(const TernaryForm& f, const TernaryForm& g) {
    TernaryForm r(f.degree + g.degree);
    int fi = 0;
    for (int a = f.degree; a >= 0; --a)
        for (int b = f.degree - a; b >= 0; --b, ++fi) {
            const Complex cf = f.coeffs[fi];
            if (cf == Complex(0, 0)) continue;
            int gi = 0;
            for (int c = g.degree; c >= 0; --c)
                for (int d = g.degree - c; d >= 0; --d, ++gi)
                    r.at(a + c, b + d) += cf * g.coeffs[gi];
        }
    return r;
}

TernaryForm diff(const TernaryForm& f, int var) {
    if (var < 0 || var > 2) throw InputError("diff: variable index out of range");
    if (f.degree == 0) return TernaryForm(0);
    TernaryForm r(f.degree - 1);
    int idx = 0;
    for (int a = f.degree; a >= 0; --a)
        for (int b = f.degree - a; b >= 0; --b, ++idx) {
            int g = f.degree - a - b;
            int e[3] = {a, b, g};
            if (e[var] == 0) continue;
            Complex c = f.coeffs[idx] * static_cast<double>(e[var]);
            e[var] -= 1;
            r.at(e[0], e[1]) += c;
        }
    return r;
}

TernaryForm pullback(const TernaryForm& f, const std::array<TernaryForm, 3>& map) {
    const int e = map[0].degree;
    if (map[1].degree != e || map[2].degree != e)
        throw InputError("pullback: map components must have equal degree");
    const int d = f.degree;

    // cache powers of each component up to d
    std::array<std::vector<TernaryForm>, 3> pw;
    for (int i = 0; i < 3; ++i) {
        pw[i].resize(d + 1);
        pw[i][0] = TernaryForm(0);
        pw[i][0].coeffs[0] = Complex(1, 0);
        for (int k = 1; k <= d; ++k) pw[i][k] = mul(pw[i][k - 1], map[i]);
    }

    TernaryForm r(d * e);
    int idx = 0;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b, ++idx) {
            const Complex cf = f.coeffs[idx];
            if (cf == Complex(0, 0)) continue;
            TernaryForm term = mul(mul(pw[0][a], pw[1][b]), pw[2][d - a - b]);
            for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += cf * term.coeffs[i];
        }
    return r;
}

TernaryForm linear_change(const TernaryForm& f, const Mat3& m) {
    std::array<TernaryForm, 3> rows;
    for (int i = 0; i < 3; ++i) {
        rows[i] = TernaryForm(1);
        rows[i].at(1, 0) = m(i, 0);
        rows[i].at(0, 1) = m(i, 1);
        rows[i].at(0, 0) = m(i, 2);
    }
    return pullback(f, rows);
}

TernaryForm jacobian_det(const std::array<TernaryForm, 3>& g) {
    TernaryForm d[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d[i][j] = diff(g[i], j);
    TernaryForm r =
        mul(d[0][0], mul(d[1][1], d[2][2]) - mul(d[1][2], d[2][1])) -
        mul(d[0][1], mul(d[1][0], d[2][2]) - mul(d[1][2], d[2][0])) +
        mul(d[0][2], mul(d[1][0], d[2][1]) - mul(d[1][1], d[2][0]));
    return r;
}

BinaryForm restrict_to_line(const TernaryForm& f, const Vec3& u, const Vec3& v) {
    Vec3 cr = algebraic_cross(u, v);
    double scale = u.norm() * v.norm();
    if (scale == 0.0 || cr.norm() < 1e-12 * scale)
        throw ComputationError("degenerate parametrization");

    const int d = f.degree;
    // binary linear forms s*u_i + t*v_i, one per coordinate, raised to powers
    std::array<std::vector<BinaryForm>, 3> pw;
    for (int i = 0; i < 3; ++i) {
        BinaryForm lin(1);
        lin.coeffs[1] = u[i];  // s
        lin.coeffs[0] = v[i];  // t
        pw[i].resize(d + 1);
        pw[i][0] = BinaryForm(0);
        pw[i][0].coeffs[0] = Complex(1, 0);
        for (int k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * lin;
    }

    BinaryForm q(d);
    int idx = 0;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b, ++idx) {
            const Complex cf = f.coeffs[idx];
            if (cf == Complex(0, 0)) continue;
            BinaryForm term = pw[0][a] * pw[1][b] * pw[2][d - a - b];
            for (int k = 0; k <= d; ++k) q.coeffs[k] += cf * term.coeffs[k];
        }
    return q;
}

LinearDivision divide_by_linear(const TernaryForm& f, const Vec3& linear) {
    const int p = argmax_modulus(linear.data(), 3);
    if (linear[p] == Complex(0, 0)) throw ComputationError("division by the zero linear form");
    const int d = f.degree;

    // Substitute x_p = -(sum of the other terms)/linear[p] to get the
    // remainder: the unique representative of f mod (linear) with no x_p.
    int o1 = (p == 0) ? 1 : 0;
    int o2 = (p == 2) ? 1 : 2;
    Complex r1 = -linear[o1] / linear[p];
    Complex r2 = -linear[o2] / linear[p];

    TernaryForm rem(d);
    int idx = 0;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b, ++idx) {
            const Complex cf = f.coeffs[idx];
            if (cf == Complex(0, 0)) continue;
            int e[3] = {a, b, d - a - b};
            int kp = e[p], k1 = e[o1], k2 = e[o2];
            // (r1*x_{o1} + r2*x_{o2})^{kp} expanded binomially
            for (int j = 0; j <= kp; ++j) {
                double binom = 1.0;
                for (int t = 0; t < j; ++t) binom = binom * double(kp - t) / double(t + 1);
                Complex c = cf * binom * cpow(r1, kp - j) * cpow(r2, j);
                int e2[3] = {0, 0, 0};
                e2[o1] = k1 + kp - j;
                e2[o2] = k2 + j;
                rem.at(e2[0], e2[1]) += c;
            }
        }

    // f - rem is exactly divisible by the linear form; peel off powers of x_p.
    TernaryForm num = f - rem;
    TernaryForm quot(d - 1);
    // iterate monomials of the quotient in decreasing x_p power
    for (int kp = d - 1; kp >= 0; --kp) {
        for (int k1 = d - 1 - kp; k1 >= 0; --k1) {
            int k2 = d - 1 - kp - k1;
            int eq[3] = {0, 0, 0};
            eq[p] = kp;
            eq[o1] = k1;
            eq[o2] = k2;
            // coefficient of x_p^{kp+1} x_{o1}^{k1} x_{o2}^{k2} in num comes only
            // from linear[p]*quot(this monomial) plus already-known higher terms
            int en[3] = {eq[0], eq[1], eq[2]};
            en[p] += 1;
            Complex target = num.at(en[0], en[1]);
            Complex acc(0, 0);
            // contributions from linear[o1] * quot(kp+1 ...), linear[o2] * ...
            if (eq[o1] >= 1) {
                int eh[3] = {eq[0], eq[1], eq[2]};
                eh[p] += 1;
                eh[o1] -= 1;
                acc += linear[o1] * quot.at(eh[0], eh[1]);
            }
            if (eq[o2] >= 1) {
                int eh[3] = {eq[0], eq[1], eq[2]};
                eh[p] += 1;
                eh[o2] -= 1;
                acc += linear[o2] * quot.at(eh[0], eh[1]);
            }
            quot.at(eq[0], eq[1]) = (target - acc) / linear[p];
        }
    }
    return LinearDivision{quot, rem};
}

}  // namespace q28
