#ifndef Q28_SOLVER_HPP
#define Q28_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "q28/forms.hpp"

namespace q28 {

struct SolveOptions {
    double tol_zero = 1e-8;    // residual acceptance, relative to unit-max-coeff forms
    double tol_merge = 1e-6;   // projective distance below which roots always merge
    int chart_retries = 5;     // random coordinate charts tried before giving up
    std::uint64_t seed = 0;    // run seed; chart rotations derive from it
};

/// Root on P^1, largest-modulus coordinate normalized to 1.
struct RootP1 {
    std::array<Complex, 2> v;
    int multiplicity = 1;
};

struct PlanePoint {
    ProjPoint point;
    int multiplicity = 1;
};

/// All projective roots of a nonzero binary form, with multiplicity summing
/// to the degree. Companion-matrix eigenvalues of the dehomogenization, plus
/// the root at infinity for dropped leading coefficients; Newton-polished;
/// clusters merged (multiplicity-aware beyond tol_merge).
std::vector<RootP1> univariate_roots(const BinaryForm& p, const SolveOptions& opts = {});

/// Intersection of two coprime plane curves: deg(f)*deg(g) points with
/// multiplicity. Random special-unitary chart, Sylvester resultant by
/// evaluation/interpolation, back-substitution, Newton polish, clustering.
/// Throws ComputationError("common component") / ("solver failure").
std::vector<PlanePoint> common_zeros(const TernaryForm& f, const TernaryForm& g,
                                     const SolveOptions& opts = {});

namespace detail {
/// Univariate complex polynomial, ascending coefficients.
struct UniPoly {
    std::vector<Complex> c;
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Complex eval(Complex z) const;
    UniPoly derivative() const;
};

/// Newton iteration keeping the best iterate by |p|; returns the refined z.
Complex polish_simple(const UniPoly& p, Complex z, int max_iter = 30);

/// Resultant of two univariate polynomials via the Sylvester determinant.
Complex sylvester_resultant(const UniPoly& a, const UniPoly& b);

/// Eliminate the third variable: Res_z(f(x,y,z), g(x,y,z)) as a binary form
/// of degree deg(f)*deg(g), computed by sampling at roots of unity and
/// interpolating with the inverse DFT.
BinaryForm resultant_eliminate_z(const TernaryForm& f, const TernaryForm& g);
}  // namespace detail

}  // namespace q28

#endif  // Q28_SOLVER_HPP
