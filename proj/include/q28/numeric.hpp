#ifndef Q28_NUMERIC_HPP
#define Q28_NUMERIC_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace q28 {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

/// Degenerate input, solver breakdown, out-of-general-position data.
struct ComputationError : std::runtime_error {
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed files, bad schemas, violated call contracts.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// splitmix64 finalizer; used to derive independent streams from (seed, salt).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic RNG. mt19937_64 is fully specified by the standard; the
// distributions below are hand-rolled so that output is identical across
// platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {  // in (0,1]
        return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Complex cgaussian() {
        double re = gaussian();
        double im = gaussian();
        return Complex(re, im);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-ish random element of SU(3): QR of a complex Ginibre matrix with the
/// R-diagonal phases absorbed, then the residual determinant phase pushed
/// into the first column.
Mat3 random_special_unitary(Rng& rng);

/// Chordal (Fubini-Study) distance between lines spanned by a and b:
/// sqrt(1 - |<a, conj(b)>|^2 / (|a|^2 |b|^2)). Zero iff equal projectively.
double proj_distance(const Complex* a, const Complex* b, int n);

inline double proj_distance(const Vec3& a, const Vec3& b) {
    return proj_distance(a.data(), b.data(), 3);
}
inline double proj_distance(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
    return proj_distance(a.data(), b.data(), 2);
}
double proj_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// Index of the first maximal-modulus entry.
int argmax_modulus(const Complex* v, int n);

/// Divide by the largest-modulus entry so that it becomes exactly 1.
/// Returns the pivot index. Throws ComputationError on the zero vector.
int normalize_projective(Complex* v, int n);

/// Scale a coefficient vector to the convention used for reported forms:
/// max-modulus entry has modulus 1, and the first entry with modulus above
/// rel_cut (relative to the max) is real and positive.
void normalize_phase_convention(Complex* v, int n, double rel_cut = 1e-10);

inline double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

/// Integer power by repeated multiplication; cpow(0, 0) == 1.
inline Complex cpow(Complex base, int e) {
    Complex r(1.0, 0.0);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

/// Bilinear cross product. Eigen's cross() conjugates the result for complex
/// scalars; the determinant identities here need the plain algebraic one.
inline Vec3 algebraic_cross(const Vec3& a, const Vec3& b) {
    return Vec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0]);
}

}  // namespace q28

#endif  // Q28_NUMERIC_HPP
