#pragma once

#include "gsp4.hpp"

#include <complex>
#include <random>
#include <vector>

namespace spv::arch {

using cplx = std::complex<double>;

// Gaussian-rational scalars for the exact w-vector identities.
struct GaussRat {
    Rat re, im;
    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Rat norm2() const { return re * re + im * im; }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
};

using GV5 = std::array<GaussRat, 5>;

// w = -(e1 - i f1) ^ (e2 - i f2): coordinates (-1, i, 0, -i, 1).
GV5 w_vector();
GaussRat gv5_pair(const GV5& v, const GV5& w);
// (w, v) for real v: (A - C) + i (B3 - B1).
GaussRat w_pair(const gsp4::V5Vector& v);

// Exact two-sided evaluation of |(w,v)|^2 = ||v||^2 - (v,v).
std::pair<Rat, Rat> w_pairing_identity(const gsp4::V5Vector& v);

// double 4x4 matrices for the archimedean computations
struct DMat4 {
    std::array<std::array<double, 4>, 4> a{};
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const double& operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    DMat4 operator*(const DMat4& o) const;
    DMat4 transpose() const;
};

DMat4 to_dmat(const gsp4::GSpElement& g);
double similitude(const DMat4& g); // via g J tg

struct SiegelPoint {
    cplx z11, z12, z22;
    cplx det() const { return z11 * z22 - z12 * z12; }
};

// Z = i 1_2 and validity helpers.
SiegelPoint siegel_i();
bool is_siegel_point(const SiegelPoint& z); // Im part positive definite

struct H2Result {
    SiegelPoint Z;
    cplx j; // det(C Z + D)
};

// (A Z + B)(C Z + D)^{-1} for positive similitude; throws on singular CZ + D.
H2Result act_h2(const DMat4& g, const SiegelPoint& Z);

// complex-double V5 action (for K_infty tests); nu computed from the matrix
std::array<cplx, 5> act_v5_cd(const std::array<cplx, 5>& v, const DMat4& g);

// Lanczos approximation; throws at non-positive integers.
cplx gamma_fn(cplx z);

// Deterministic adaptive Gauss-Kronrod 15(7) quadrature.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol);
cplx integrate_c(const std::function<cplx(double)>& f, double a, double b, double abs_tol);
// Composite fixed-width Gauss-Kronrod panels for oscillatory ranges.
cplx integrate_osc(const std::function<cplx(double)>& f, double a, double b, double width);

struct ContourResult {
    cplx numeric, closed;
    double rel_err;
    double tail_bound;
    double cutoff;
};
// int_{Im z = y} e^{-2 pi i z} z^{-r} dz against e^{-2 pi y} (-2 pi i)^r / (r-1)!.
ContourResult contour_integral_check(int r, double y, double cutoff = 0, double tol = 1e-8);

struct FInftyResult {
    double numeric, closed, rel_err;
};
// f_infty section by quadrature against pi^{-2s} Gamma(2s) |y11|^{-2s} |det Y|^{2s}.
FInftyResult f_infty_check(const gsp4::GSpElement& g, double s);

struct IInftyResult {
    std::vector<double> ratios;     // numeric / ((4 pi)^{-(2s+r-2)} Gamma(2s+r-2))
    double max_ratio_dev;           // max relative deviation from the mean
    double t_factor_rel_err;        // 1-d Gamma cross-check at the first s
};
IInftyResult i_infty_gamma_check(int r, const std::vector<double>& s_values, long D,
                                 int grid_level = 1);

struct GvPairingResult {
    cplx lhs, rhs;
};
// j(g,i)^{-1} nu(g) (w, v g) against -A det Z - B1 z11 + 2 B2 z12 + B3 z22 - C.
GvPairingResult gv_pairing_check(const gsp4::GSpElement& g, const gsp4::V5Vector& v);

// Seeded samples.
DMat4 random_k_infty(std::mt19937_64& rng);
gsp4::GSpElement random_siegel_parabolic(std::mt19937_64& rng);
gsp4::V5Vector random_v5(std::mt19937_64& rng, long den_bound = 5);

} // namespace spv::arch
