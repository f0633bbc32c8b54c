#pragma once

#include "padic.hpp"
#include "rational.hpp"

#include <array>
#include <complex>
#include <optional>
#include <random>
#include <vector>

namespace spv::gsp4 {

struct Mat4 {
    std::array<std::array<Rat, 4>, 4> a{};

    static Mat4 identity();
    Rat& operator()(int i, int j) { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const Rat& operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    Mat4 operator*(const Mat4& o) const;
    Mat4 transpose() const;
    Rat det() const;
    Mat4 inverse() const; // throws on singular input
    bool operator==(const Mat4& o) const { return a == o.a; }
};

Mat4 j4();

// g J4 tg = nu(g) J4 with nu != 0.  Row vectors act on the right.
struct GSpElement {
    Mat4 mat;
    Rat nu;
};

GSpElement make_gsp(const Mat4& m); // throws, naming the offending entry
GSpElement gsp_mul(const GSpElement& a, const GSpElement& b);
GSpElement gsp_inverse(const GSpElement& g);

// Coordinates (A, B1, B2, B3, C) in the ordered wedge basis
// (e1^e2, e1^f2, e1^f1 - e2^f2, e2^f1, f1^f2) of V5 = wedge^2_0(W4) (x) nu^{-1}.
struct V5Vector {
    std::array<Rat, 5> c{};
    Rat& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    const Rat& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    bool operator==(const V5Vector& o) const { return c == o.c; }
};

// (v,w) from v ^ w = (v,w) e1^e2^f1^f2; q(v) = (v,v)/2 = AC + B1 B3 + B2^2.
Rat v5_pair(const V5Vector& v, const V5Vector& w);
Rat v5_q(const V5Vector& v);
// Norm of the K_infty-invariant inner product: A^2 + B1^2 + 2 B2^2 + B3^2 + C^2.
Rat v5_norm2(const V5Vector& v);

V5Vector act_v5(const V5Vector& v, const GSpElement& g);

// Generic wedge action used by both the exact and the complex-double paths.
template <class Scalar, class Mat>
std::array<Scalar, 5> act_v5_generic(const std::array<Scalar, 5>& v, const Mat& g,
                                     const Scalar& nu_inv) {
    // Lambda^2 W4 coordinates in the order e12, e1f1, e1f2, e2f1, e2f2, f1f2.
    static constexpr int P[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::array<Scalar, 6> x{v[0], v[2], v[1], v[3], Scalar(0) - v[2], v[4]};
    std::array<Scalar, 6> y{};
    for (int idx = 0; idx < 6; ++idx) {
        if (x[static_cast<std::size_t>(idx)] == Scalar(0)) continue;
        const int i = P[idx][0], j = P[idx][1];
        for (int t = 0; t < 6; ++t) {
            const int a = P[t][0], b = P[t][1];
            Scalar coef = g(i, a) * g(j, b) - g(i, b) * g(j, a);
            y[static_cast<std::size_t>(t)] += x[static_cast<std::size_t>(idx)] * coef;
        }
    }
    for (auto& e : y) e = e * nu_inv;
    return {y[0], y[2], y[1], y[3], y[5]};
}

enum class Branch { d_not_1_mod4, d_1_mod4 };

struct QuadExtData {
    long D;
    Branch branch;
};

QuadExtData make_quadext(long D); // D squarefree and nonzero

V5Vector make_v_D(const QuadExtData& ext);

// D-dependent integral structure: all coordinates in Z_p, except that for
// D = 1 mod 4 the third basis vector is halved, so B2 only needs 2*B2 in Z_p.
bool v5_integral(const V5Vector& v, const QuadExtData& ext, long p);
bool v5_integral_global(const V5Vector& v, const QuadExtData& ext);

// Elements of L = Q[x]/(x^2 - D) (or x^2 + x + (1-D)/4 when D = 1 mod 4)
// in (eps, eta) coordinates: value = eps + eta * alpha.
struct LNum {
    Rat e, h;
    bool operator==(const LNum& o) const { return e == o.e && h == o.h; }
};

LNum lmul(const LNum& x, const LNum& y, const QuadExtData& ext);
LNum lconj(const LNum& x, const QuadExtData& ext);
Rat lnorm(const LNum& x, const QuadExtData& ext); // x * conj(x), rational
LNum ladd(const LNum& x, const LNum& y);
LNum lneg(const LNum& x);
bool lis_rational(const LNum& x);

struct GL2L {
    LNum a, b, c, d; // [[a, b], [c, d]], row action on row vectors of L^2
};

GL2L gl2l_mul(const GL2L& x, const GL2L& y, const QuadExtData& ext);
LNum gl2l_det(const GL2L& g, const QuadExtData& ext);

// The raw matrix of the embedding GL*_{2,L} -> GSp4 (branch-dependent
// explicit 4x4 form); rows are the images of e1, e2, f1, f2.
Mat4 embed_gl2l_matrix(const GL2L& g, const QuadExtData& ext);
// Validated embedding: requires rational nonzero determinant; nu = det.
GSpElement embed_gl2l(const GL2L& g, const QuadExtData& ext);

// T matrix associated to chi: chi(u(X)) = psi(tr(T X)).
// Returns (T11, T12, T22).
std::array<Rat, 3> chi_T(const QuadExtData& ext);

// chi on the Siegel unipotent radical; ctx == nullptr means the archimedean
// place (psi_inf).  Throws if u is not block-unipotent of the displayed shape.
std::complex<double> chi_value(const GSpElement& u, const QuadExtData& ext,
                               const padic::PrimeCtx* ctx);

// Modulus characters at a finite prime p, or the archimedean place if p == 0.
// Each throws if g is outside the corresponding subgroup.
Rat delta_P(const GSpElement& g, long p); // Siegel Levi
Rat delta_B(const GSpElement& g, long p); // diagonal torus
Rat delta_Q(const GSpElement& g, long p); // Klingen parabolic

struct ModulusChars {
    std::optional<Rat> dP, dB, dQ;
};
ModulusChars modulus_chars(const GSpElement& g, long p);

struct OrbitInfo {
    int count = 0;
    std::vector<long> sizes;
};

// Orbits of the embedded GL*_{2,L}(F_p) on the p^3+p^2+p+1 lines of F_p^4,
// by breadth-first closure over a generating set.  Requires p odd, p not
// dividing D (good reduction).
OrbitInfo line_orbits_mod_p(const QuadExtData& ext, const padic::PrimeCtx& ctx);

// Seeded generators for property tests: words in J4-type Weyl elements,
// elementary unipotents and GL2-block embeddings (all similitude 1).
Mat4 random_sp4z_word(std::mt19937_64& rng, int max_len = 12);
// Random element of GL*_{2,L} with rational nonzero determinant.
GL2L random_gl2lstar(std::mt19937_64& rng, const QuadExtData& ext);

} // namespace spv::gsp4
