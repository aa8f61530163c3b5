#include "q28/numeric.hpp"

namespace q28 {

Mat3 random_special_unitary(Rng& rng) {
    Mat3 ginibre;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ginibre(i, j) = rng.cgaussian();

    Eigen::HouseholderQR<Mat3> qr(ginibre);
    Mat3 q = qr.householderQ();
    Mat3 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 3; ++j) {
        Complex d = r(j, j);
        double m = std::abs(d);
        Complex phase = (m > 0.0) ? d / m : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    // det(q) is now a unit-modulus scalar; cancel it on the first column.
    Complex det = q.determinant();
    q.col(0) *= std::conj(det);
    return q;
}

double proj_distance(const Complex* a, const Complex* b, int n) {
    double na = 0.0, nb = 0.0;
    Complex dot(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        na += std::norm(a[i]);
        nb += std::norm(b[i]);
        dot += a[i] * std::conj(b[i]);
    }
    if (na == 0.0 || nb == 0.0)
        throw ComputationError("projective distance of zero vector");
    double c2 = std::norm(dot) / (na * nb);
    return std::sqrt(std::max(0.0, 1.0 - c2));
}

double proj_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (a.size() != b.size())
        throw InputError("projective distance: size mismatch");
    return proj_distance(a.data(), b.data(), static_cast<int>(a.size()));
}

int argmax_modulus(const Complex* v, int n) {
    int best = 0;
    double bm = std::abs(v[0]);
    for (int i = 1; i < n; ++i) {
        double m = std::abs(v[i]);
        if (m > bm) {
            bm = m;
            best = i;
        }
    }
    return best;
}

int normalize_projective(Complex* v, int n) {
    int p = argmax_modulus(v, n);
    if (v[p] == Complex(0.0, 0.0))
        throw ComputationError("cannot normalize the zero vector");
    Complex pivot = v[p];
    for (int i = 0; i < n; ++i) v[i] /= pivot;
    v[p] = Complex(1.0, 0.0);
    return p;
}

void normalize_phase_convention(Complex* v, int n, double rel_cut) {
    int p = argmax_modulus(v, n);
    double m = std::abs(v[p]);
    if (m == 0.0)
        throw ComputationError("cannot normalize the zero vector");
    for (int i = 0; i < n; ++i) v[i] /= m;
    for (int i = 0; i < n; ++i) {
        double a = std::abs(v[i]);
        if (a > rel_cut) {
            Complex phase = v[i] / a;
            Complex rot = std::conj(phase);
            for (int k = 0; k < n; ++k) v[k] *= rot;
            v[i] = Complex(a, 0.0);
            break;
        }
    }
}

}  // namespace q28
