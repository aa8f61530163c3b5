#include "q28/solver.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>

namespace q28 {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kStripTol = 1e-13;        // relative cut for numerically-zero leading coeffs
constexpr double kMultMergeScale = 12.0;   // adaptive cluster width ~ kMultMergeScale*eps^(1/m)
constexpr double kMergeResidual = 1e-10;   // residual gate for merges beyond tol_merge
constexpr double kZeroResultant = 1e-9;    // below this (unit-max inputs) the resultant counts as zero

double merge_tolerance(int mult, double tol_merge) {
    return std::max(tol_merge, kMultMergeScale * std::pow(kEps, 1.0 / mult));
}

bool lex_less(const Complex* a, const Complex* b, int n) {
    for (int i = 0; i < n; ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

}  // namespace

namespace detail {

Complex UniPoly::eval(Complex z) const {
    Complex acc(0, 0);
    for (int k = degree(); k >= 0; --k) acc = acc * z + c[k];
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c.size() <= 1) return UniPoly{{Complex(0, 0)}};
    UniPoly d;
    d.c.resize(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d.c[k - 1] = c[k] * static_cast<double>(k);
    return d;
}

Complex polish_simple(const UniPoly& p, Complex z, int max_iter) {
    UniPoly dp = p.derivative();
    Complex best = z;
    double best_res = std::abs(p.eval(z));
    int stale = 0;
    for (int it = 0; it < max_iter; ++it) {
        Complex f = p.eval(z);
        Complex df = dp.eval(z);
        if (std::abs(df) == 0.0) break;
        z -= f / df;
        double res = std::abs(p.eval(z));
        if (res < best_res) {
            best_res = res;
            best = z;
            stale = 0;
        } else if (++stale >= 3) {
            break;
        }
        if (best_res == 0.0) break;
    }
    return best;
}

Complex sylvester_resultant(const UniPoly& a, const UniPoly& b) {
    const int m = a.degree();
    const int n = b.degree();
    if (m < 0 || n < 0) return Complex(0, 0);
    if (m == 0) return cpow(a.c[0], n);
    if (n == 0) return cpow(b.c[0], m);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m + n, m + n);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) s(r, r + j) = a.c[m - j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) s(n + r, r + j) = b.c[n - j];
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(s).determinant();
}

namespace {

// coefficients in z of f(x0, y0, z)
UniPoly slice_z(const TernaryForm& f, Complex x0, Complex y0) {
    UniPoly p;
    p.c.assign(f.degree + 1, Complex(0, 0));
    int idx = 0;
    for (int a = f.degree; a >= 0; --a)
        for (int b = f.degree - a; b >= 0; --b, ++idx)
            p.c[f.degree - a - b] += f.coeffs[idx] * cpow(x0, a) * cpow(y0, b);
    return p;
}

}  // namespace

BinaryForm resultant_eliminate_z(const TernaryForm& f, const TernaryForm& g) {
    const int n_coeff = f.degree * g.degree + 1;
    std::vector<Complex> samples(n_coeff);
    for (int k = 0; k < n_coeff; ++k) {
        double ang = 2.0 * M_PI * k / n_coeff;
        Complex t(std::cos(ang), std::sin(ang));
        samples[k] = sylvester_resultant(slice_z(f, t, Complex(1, 0)),
                                         slice_z(g, t, Complex(1, 0)));
    }
    // inverse DFT recovers the coefficients of R(t, 1), degree <= deg(f)*deg(g)
    BinaryForm r(n_coeff - 1);
    for (int j = 0; j < n_coeff; ++j) {
        Complex acc(0, 0);
        for (int k = 0; k < n_coeff; ++k) {
            double ang = -2.0 * M_PI * j * k / n_coeff;
            acc += samples[k] * Complex(std::cos(ang), std::sin(ang));
        }
        r.coeffs[j] = acc / static_cast<double>(n_coeff);
    }
    return r;
}

}  // namespace detail

namespace {

using detail::UniPoly;

struct P1Cluster {
    std::vector<std::pair<std::array<Complex, 2>, int>> members;  // normalized point, multiplicity
    std::array<Complex, 2> center;
    int mult = 0;
};

std::array<Complex, 2> p1_center(const std::vector<const P1Cluster*>& parts) {
    // chart-average around the first member's largest coordinate
    const auto& ref = parts[0]->members[0].first;
    int pivot = std::abs(ref[0]) >= std::abs(ref[1]) ? 0 : 1;
    Complex acc(0, 0);
    int total = 0;
    for (const auto* cl : parts)
        for (const auto& [pt, mu] : cl->members) {
            acc += (pt[1 - pivot] / pt[pivot]) * static_cast<double>(mu);
            total += mu;
        }
    acc /= static_cast<double>(total);
    std::array<Complex, 2> c;
    c[pivot] = Complex(1, 0);
    c[1 - pivot] = acc;
    normalize_projective(c.data(), 2);
    return c;
}

double p1_radius(const std::array<Complex, 2>& center, const std::vector<const P1Cluster*>& parts) {
    double r = 0.0;
    for (const auto* cl : parts)
        for (const auto& [pt, mu] : cl->members)
            r = std::max(r, proj_distance(center, pt));
    return r;
}

// Refine an m-fold root: an m-fold root of p is a simple root of p^(m-1).
// Works in the chart where the center is best conditioned.
std::array<Complex, 2> polish_p1(const BinaryForm& p, std::array<Complex, 2> z, int mult) {
    const int d = p.degree;
    bool s_chart = std::abs(z[0]) <= std::abs(z[1]);
    UniPoly q;
    q.c.resize(d + 1);
    for (int k = 0; k <= d; ++k) q.c[k] = s_chart ? p.coeffs[k] : p.coeffs[d - k];
    for (int j = 1; j < mult; ++j) q = q.derivative();
    Complex w = s_chart ? z[0] / z[1] : z[1] / z[0];
    w = detail::polish_simple(q, w);
    std::array<Complex, 2> out;
    if (s_chart) {
        out[0] = w;
        out[1] = Complex(1, 0);
    } else {
        out[0] = Complex(1, 0);
        out[1] = w;
    }
    normalize_projective(out.data(), 2);
    return out;
}

// Staged agglomerative merge. Eigenvalues of an m-fold root scatter at
// radius ~eps^(1/m), so pairs of them are far apart by the pair tolerance;
// the stage loop widens the link radius as the hypothesized multiplicity
// grows. A merge beyond tol_merge must survive the residual gate: polishing
// the candidate center as a multiple root (Newton on the (m-1)-st
// derivative) lands on a critical point, which is a near-zero of p only for
// genuine multiple roots.
void agglomerate_p1(std::vector<P1Cluster>& clusters, const BinaryForm& p, double tol_merge) {
    const double maxc = p.max_coeff();
    for (int stage = 2; stage <= p.degree; ++stage) {
        const double tau = merge_tolerance(stage, tol_merge);
        bool merged = true;
        while (merged && clusters.size() > 1) {
            merged = false;
            struct Cand {
                size_t i, j;
                double radius;
                std::array<Complex, 2> center;
            };
            std::vector<Cand> cands;
            for (size_t i = 0; i < clusters.size(); ++i)
                for (size_t j = i + 1; j < clusters.size(); ++j) {
                    int m = clusters[i].mult + clusters[j].mult;
                    if (m > stage) continue;
                    std::vector<const P1Cluster*> parts{&clusters[i], &clusters[j]};
                    auto center = p1_center(parts);
                    double r = p1_radius(center, parts);
                    if (r <= tau) cands.push_back({i, j, r, center});
                }
            std::sort(cands.begin(), cands.end(),
                      [](const Cand& a, const Cand& b) { return a.radius < b.radius; });
            for (const auto& cand : cands) {
                int m = clusters[cand.i].mult + clusters[cand.j].mult;
                auto polished = polish_p1(p, cand.center, m);
                if (proj_distance(polished, cand.center) > 2.0 * tau + tol_merge)
                    continue;  // polish wandered off; not a believable multiple root
                if (cand.radius > tol_merge) {
                    double res = std::abs(p.eval(polished[0], polished[1])) / maxc;
                    if (res > kMergeResidual) continue;
                }
                P1Cluster joined;
                joined.mult = m;
                joined.center = polished;
                auto& a = clusters[cand.i].members;
                auto& b = clusters[cand.j].members;
                joined.members.reserve(a.size() + b.size());
                joined.members.insert(joined.members.end(), a.begin(), a.end());
                joined.members.insert(joined.members.end(), b.begin(), b.end());
                clusters.erase(clusters.begin() + cand.j);
                clusters.erase(clusters.begin() + cand.i);
                clusters.push_back(std::move(joined));
                merged = true;
                break;
            }
        }
    }
}

}  // namespace

std::vector<RootP1> univariate_roots(const BinaryForm& p, const SolveOptions& opts) {
    const double maxc = p.max_coeff();
    if (maxc == 0.0) throw ComputationError("identically zero");
    const int d = p.degree;
    if (d == 0) return {};

    int top = d;
    while (top > 0 && std::abs(p.coeffs[top]) <= kStripTol * maxc) --top;

    std::vector<P1Cluster> clusters;
    if (d - top > 0) {
        P1Cluster inf;
        inf.mult = d - top;
        inf.center = {Complex(1, 0), Complex(0, 0)};
        inf.members.push_back({inf.center, inf.mult});
        clusters.push_back(std::move(inf));
    }

    if (top > 0) {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(top, top);
        for (int i = 0; i < top - 1; ++i) comp(i + 1, i) = Complex(1, 0);
        for (int i = 0; i < top; ++i) comp(i, top - 1) = -p.coeffs[i] / p.coeffs[top];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        if (es.info() != Eigen::Success) throw ComputationError("eigenvalue solver failed");

        UniPoly ps, pt;  // p(s,1) and p(1,t)
        ps.c.assign(p.coeffs.begin(), p.coeffs.end());
        pt.c.assign(p.coeffs.rbegin(), p.coeffs.rend());
        for (int k = 0; k < top; ++k) {
            Complex z = es.eigenvalues()(k);
            std::array<Complex, 2> pr;
            if (std::abs(z) <= 1.0) {
                pr = {detail::polish_simple(ps, z), Complex(1, 0)};
            } else {
                pr = {Complex(1, 0), detail::polish_simple(pt, Complex(1, 0) / z)};
            }
            normalize_projective(pr.data(), 2);
            P1Cluster cl;
            cl.mult = 1;
            cl.center = pr;
            cl.members.push_back({pr, 1});
            clusters.push_back(std::move(cl));
        }
    }

    agglomerate_p1(clusters, p, opts.tol_merge);

    std::vector<RootP1> out;
    out.reserve(clusters.size());
    for (auto& cl : clusters) {
        std::array<Complex, 2> c = cl.center;
        if (cl.mult > 1 && cl.members.size() > 1) c = polish_p1(p, c, cl.mult);
        out.push_back(RootP1{c, cl.mult});
    }
    std::sort(out.begin(), out.end(), [](const RootP1& a, const RootP1& b) {
        return lex_less(a.v.data(), b.v.data(), 2);
    });
    return out;
}

namespace {

struct Candidate {
    Vec3 p;  // normalized, rotated coordinates
    int mult;
};

// Gauss-Newton on (f, g) in the chart fixing the largest coordinate; keeps
// the best iterate by residual.
Vec3 polish_2d(const TernaryForm& f, const TernaryForm& g,
               const std::array<TernaryForm, 3>& df, const std::array<TernaryForm, 3>& dg,
               Vec3 p, int max_iter = 40) {
    normalize_projective(p.data(), 3);
    int pivot = argmax_modulus(p.data(), 3);
    int u = (pivot == 0) ? 1 : 0;
    int v = (pivot == 2) ? 1 : 2;
    Vec3 best = p;
    double best_res = std::max(std::abs(f.eval(p)), std::abs(g.eval(p)));
    int stale = 0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::Matrix2cd jac;
        jac(0, 0) = df[u].eval(p);
        jac(0, 1) = df[v].eval(p);
        jac(1, 0) = dg[u].eval(p);
        jac(1, 1) = dg[v].eval(p);
        Eigen::Vector2cd rhs(-f.eval(p), -g.eval(p));
        Complex det = jac(0, 0) * jac(1, 1) - jac(0, 1) * jac(1, 0);
        if (std::abs(det) < 1e-300) break;
        Eigen::Vector2cd step = jac.partialPivLu().solve(rhs);
        p[u] += step(0);
        p[v] += step(1);
        double res = std::max(std::abs(f.eval(p)), std::abs(g.eval(p)));
        if (res < best_res) {
            best_res = res;
            best = p;
            stale = 0;
        } else if (++stale >= 3) {
            break;
        }
        if (best_res == 0.0) break;
    }
    normalize_projective(best.data(), 3);
    return best;
}

struct P2Cluster {
    std::vector<std::pair<Vec3, int>> members;
    Vec3 center;
    int mult = 0;
};

Vec3 p2_center(const std::vector<const P2Cluster*>& parts) {
    const Vec3& ref = parts[0]->members[0].first;
    int pivot = argmax_modulus(ref.data(), 3);
    Vec3 acc = Vec3::Zero();
    int total = 0;
    for (const auto* cl : parts)
        for (const auto& [pt, mu] : cl->members) {
            acc += (pt / pt[pivot]) * static_cast<double>(mu);
            total += mu;
        }
    acc /= static_cast<double>(total);
    normalize_projective(acc.data(), 3);
    return acc;
}

void agglomerate_p2(std::vector<P2Cluster>& clusters, const TernaryForm& f, const TernaryForm& g,
                    const std::array<TernaryForm, 3>& df, const std::array<TernaryForm, 3>& dg,
                    int bezout, double tol_merge) {
    bool merged = true;
    while (merged && clusters.size() > 1) {
        merged = false;
        struct Cand {
            size_t i, j;
            double radius;
            Vec3 center;
        };
        std::vector<Cand> cands;
        for (size_t i = 0; i < clusters.size(); ++i)
            for (size_t j = i + 1; j < clusters.size(); ++j) {
                int m = clusters[i].mult + clusters[j].mult;
                if (m > bezout) continue;
                std::vector<const P2Cluster*> parts{&clusters[i], &clusters[j]};
                Vec3 center = p2_center(parts);
                double r = 0.0;
                for (const auto* cl : parts)
                    for (const auto& [pt, mu] : cl->members)
                        r = std::max(r, proj_distance(center, pt));
                if (r <= merge_tolerance(m, tol_merge)) cands.push_back({i, j, r, center});
            }
        std::sort(cands.begin(), cands.end(),
                  [](const Cand& a, const Cand& b) { return a.radius < b.radius; });
        for (const auto& cand : cands) {
            // Gate on the unpolished center: polishing would slide the
            // midpoint of two distinct simple zeros onto one of them and
            // defeat the test.
            if (cand.radius > tol_merge) {
                double res =
                    std::max(std::abs(f.eval(cand.center)), std::abs(g.eval(cand.center)));
                if (res > kMergeResidual) continue;
            }
            Vec3 polished = polish_2d(f, g, df, dg, cand.center);
            if (proj_distance(polished, cand.center) >
                std::max(3.0 * cand.radius, tol_merge))
                continue;
            P2Cluster joined;
            joined.mult = clusters[cand.i].mult + clusters[cand.j].mult;
            joined.center = polished;
            auto& a = clusters[cand.i].members;
            auto& b = clusters[cand.j].members;
            joined.members.insert(joined.members.end(), a.begin(), a.end());
            joined.members.insert(joined.members.end(), b.begin(), b.end());
            clusters.erase(clusters.begin() + cand.j);
            clusters.erase(clusters.begin() + cand.i);
            clusters.push_back(std::move(joined));
            merged = true;
            break;
        }
    }
}

TernaryForm unit_scale(const TernaryForm& f) {
    double m = f.max_coeff();
    if (m == 0.0) return f;
    return f * Complex(1.0 / m, 0.0);
}

}  // namespace

std::vector<PlanePoint> common_zeros(const TernaryForm& f_in, const TernaryForm& g_in,
                                     const SolveOptions& opts) {
    const int m = f_in.degree;
    const int n = g_in.degree;
    const int bezout = m * n;
    if (f_in.is_zero(1e-14 * std::max(1.0, f_in.max_coeff())) ||
        g_in.is_zero(1e-14 * std::max(1.0, g_in.max_coeff())))
        throw ComputationError("common component");
    if (bezout == 0) return {};

    const TernaryForm f = unit_scale(f_in);
    const TernaryForm g = unit_scale(g_in);

    bool resultant_always_zero = true;
    for (int attempt = 0; attempt < std::max(1, opts.chart_retries); ++attempt) {
        Rng rng(mix_seed(opts.seed, 0xC0DE5EED ^ static_cast<std::uint64_t>(attempt)));
        Mat3 u = random_special_unitary(rng);
        TernaryForm fu = linear_change(f, u);
        TernaryForm gu = linear_change(g, u);
        // the z^deg coefficients must be solid or the chart is unusable
        if (std::abs(fu.at(0, 0)) < 1e-6 || std::abs(gu.at(0, 0)) < 1e-6) continue;

        BinaryForm res = detail::resultant_eliminate_z(fu, gu);
        if (res.max_coeff() < kZeroResultant) continue;
        resultant_always_zero = false;

        std::vector<RootP1> fibers;
        try {
            fibers = univariate_roots(res, opts);
        } catch (const ComputationError&) {
            continue;
        }

        std::array<TernaryForm, 3> df, dg;
        for (int i = 0; i < 3; ++i) {
            df[i] = diff(fu, i);
            dg[i] = diff(gu, i);
        }

        bool ok = true;
        std::vector<Candidate> cands;
        for (const auto& fiber : fibers) {
            Complex x0 = fiber.v[0], y0 = fiber.v[1];
            UniPoly fz = detail::slice_z(fu, x0, y0);
            UniPoly gz = detail::slice_z(gu, x0, y0);
            BinaryForm fzb(m), gzb(n);
            fzb.coeffs = fz.c;
            gzb.coeffs = gz.c;
            std::vector<RootP1> zf, zg;
            try {
                zf = univariate_roots(fzb, opts);
                zg = univariate_roots(gzb, opts);
            } catch (const ComputationError&) {
                ok = false;
                break;
            }
            std::vector<Complex> matched;
            for (const auto& rf : zf) {
                if (std::abs(rf.v[1]) == 0.0) continue;  // solid leading coeff: no z at infinity
                Complex zrf = rf.v[0] / rf.v[1];
                for (const auto& rg : zg) {
                    if (std::abs(rg.v[1]) == 0.0) continue;
                    double dist = proj_distance(rf.v, rg.v);
                    if (dist < std::max(opts.tol_merge, 1e-6)) {
                        matched.push_back(zrf);
                        break;
                    }
                }
            }
            if (matched.empty()) {
                ok = false;
                break;
            }
            if (matched.size() == 1) {
                cands.push_back({Vec3(x0, y0, matched[0]), fiber.multiplicity});
            } else if (static_cast<int>(matched.size()) == fiber.multiplicity) {
                for (const auto& z : matched) cands.push_back({Vec3(x0, y0, z), 1});
            } else {
                ok = false;  // ambiguous multiplicity split on this fiber
                break;
            }
        }
        if (!ok) continue;

        int total = 0;
        std::vector<P2Cluster> clusters;
        for (const auto& c : cands) {
            Vec3 p = polish_2d(fu, gu, df, dg, c.p);
            P2Cluster cl;
            cl.mult = c.mult;
            cl.center = p;
            cl.members.push_back({p, c.mult});
            clusters.push_back(std::move(cl));
            total += c.mult;
        }
        if (total != bezout) continue;

        agglomerate_p2(clusters, fu, gu, df, dg, bezout, opts.tol_merge);

        bool valid = true;
        for (const auto& cl : clusters) {
            double res_pt = std::max(std::abs(fu.eval(cl.center)), std::abs(gu.eval(cl.center)));
            if (res_pt > opts.tol_zero) {
                valid = false;
                break;
            }
        }
        if (!valid) continue;

        std::vector<PlanePoint> out;
        out.reserve(clusters.size());
        for (const auto& cl : clusters) {
            Vec3 orig = u * cl.center;
            out.push_back(PlanePoint{ProjPoint::from(orig), cl.mult});
        }
        std::sort(out.begin(), out.end(), [](const PlanePoint& a, const PlanePoint& b) {
            return lex_less(a.point.v.data(), b.point.v.data(), 3);
        });
        return out;
    }

    if (resultant_always_zero) throw ComputationError("common component");
    throw ComputationError("solver failure");
}

}  // namespace q28
