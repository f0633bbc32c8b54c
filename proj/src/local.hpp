#pragma once

#include "gsp4.hpp"
#include "padic.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace spv::local {

using gsp4::GSpElement;
using gsp4::LNum;
using gsp4::QuadExtData;
using padic::PrimeCtx;

struct Mat2 {
    std::array<std::array<Rat, 2>, 2> a{};
    Rat& operator()(int i, int j) { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const Rat& operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    static Mat2 identity();
    Mat2 operator*(const Mat2& o) const;
    Rat det() const;
    Mat2 transpose() const;
    Mat2 adj() const; // adjugate
    bool integral(long p) const;
};

// Upper-triangularization by right GL2(Z_p) column operations: the pivot is
// the valuation-minimal bottom-row entry, ties broken left.
Mat2 hermite_upper(const Mat2& m, long p);

// Support functions Delta_0' / Delta_0 on Levi elements.
int delta0_prime(const Mat2& m2, const QuadExtData& ext, const PrimeCtx& ctx);
Rat delta0(const GSpElement& m, const QuadExtData& ext, const PrimeCtx& ctx);

// Splits a Siegel-Levi element into its two diagonal blocks.
std::pair<Mat2, Mat2> levi_blocks(const GSpElement& m);

struct LocalValue {
    std::complex<double> value;
    bool stability_checked = false;
    bool stable = true;
};

// alpha_{chi,p}(m) with alpha_p the characteristic function of the D-integral
// lattice: the one-variable character sum over z of psi_p(z) alpha_p(v_D n24(z) m).
LocalValue alpha_chi_p(const GSpElement& m, const QuadExtData& ext, const PrimeCtx& ctx);

// int_U chi(u) char(u g) du over the 3-dimensional unipotent radical of the
// Siegel parabolic, for g in the Levi.
LocalValue unipotent_integral(const GSpElement& g, const QuadExtData& ext, const PrimeCtx& ctx);

struct SymHalfInt {
    Rat x11, x12, x22;
    bool half_integral(long p) const; // diagonal in Z_p, off-diagonal in (1/2) Z_p
    bool in_p_dual(long p) const;     // member of p Sym_2(Z_p)^vee
};

// The branch-dependent matrix Y of the half-integrality lemma, at x = d/a,
// y = c/a.  Requires x != 0.
SymHalfInt y_matrix(const Rat& x, const Rat& y, const QuadExtData& ext);

// m_b^{-1} T m_t for a Levi element (equals lambda * Y in normal form).
SymHalfInt lambda_y_matrix(const GSpElement& m, const QuadExtData& ext);

// Congruence orientation for the D = 1 mod 4 branch: the source states the
// condition once as b^2 - b and once as b^2 + b against (D-1)/4; both are
// supported and the bijection check reports which one holds.
enum class CongOrientation { minus, plus };

struct LeviCoset {
    int alpha_exp = 0;
    long long b = 0; // residue mod p^alpha
    int lambda_exp = 0;
    auto operator<=>(const LeviCoset&) const = default;
};

bool coset_congruence_holds(long long b, int alpha_exp, const QuadExtData& ext,
                            const PrimeCtx& ctx, CongOrientation orient);

std::vector<LeviCoset> enumerate_levi_cosets(const QuadExtData& ext, const PrimeCtx& ctx,
                                             int val_bound,
                                             CongOrientation orient = CongOrientation::minus);

// The Levi representative diag(lambda det(m_b) t(m_b)^{-1}, m_b) with
// m_b = [[p^alpha, b], [0, 1]] and lambda = p^{lambda_exp}.
GSpElement levi_from_coset(const LeviCoset& c, const PrimeCtx& ctx);

enum class SplitType { split, inert, ramified };
SplitType splitting_type(const QuadExtData& ext, long p);

// Integer x with f(x) = 0 mod p^k for the branch minimal polynomial
// (x^2 - D, or x^2 + x + (1-D)/4); requires a simple root mod p.
Int hensel_root(const QuadExtData& ext, long p, int k);

struct TorusCosetWitness {
    LeviCoset coset;
    LNum u, v; // torus element diag(u, v) realizing the coset, u v in Q
};

// Enumerates T*_L(Q_p)/T*_L(Z_p)Z(Q_p) representatives with nonzero
// integrand, embeds them and reduces to Levi normal form.
std::vector<TorusCosetWitness> enumerate_torus_L_cosets(const QuadExtData& ext,
                                                        const PrimeCtx& ctx, int val_bound);

// Modulus character of the Borel of GL*_{2,L}: |N(u)/N(v)|_p.
Rat delta_BL(const LNum& u, const LNum& v, const QuadExtData& ext, const PrimeCtx& ctx);

// Seeded random Levi elements (integral m_b, lambda = p^j, optional negative
// j for vanishing cases), composed with a random K_M element.
GSpElement random_levi(std::mt19937_64& rng, const PrimeCtx& ctx, bool allow_nonintegral = true);

} // namespace spv::local
