#pragma once

#include "local.hpp"
#include "series.hpp"

#include <optional>
#include <vector>

namespace spv::satake {

using local::Mat2;
using padic::PrimeCtx;

// Diagonal torus element diag(p^{u1}, p^{u2}, p^{u3}, p^{u4}) in the
// reordered symplectic basis (e1, e2, f2, f1) used for the Borel; the
// similitude condition is u1 + u4 = u2 + u3.
struct TorusElt {
    std::array<int, 4> u{};
    auto operator<=>(const TorusElt&) const = default;
};

TorusElt make_torus(int u1, int u2, int u3, int u4); // validates similitude
int ord_nu(const TorusElt& t);                       // u1 + u4
int val_t(const TorusElt& t);                        // min exponent
bool is_integral(const TorusElt& t);

// alpha(t) as the invariant monomial X_A^{u1-u3} X_B^{u1-u2} W^{u4}.
alg::LaurentPoly satake_monomial(const TorusElt& t);

// Adapter between the Borel ordering (e1,e2,f2,f1) and the symplectic
// ordering (e1,e2,f1,f2) used everywhere else.
gsp4::Mat4 to_gsp4_matrix(const TorusElt& t, long p);
TorusElt from_gsp4_diag(const gsp4::GSpElement& g, long p);

std::vector<TorusElt> integral_torus_elts(int max_ord_nu);

// I_P(m) = |det m_2|^{-1} Delta_1(m_2)^{-1} for integral invertible m_2.
Rat ip_formula(const Mat2& m2, const PrimeCtx& ctx);
// Measure of {X : x11 = x22, X m_2 integral} by lattice enumeration.
padic::MeasureResult ip_by_counting(const Mat2& m2, const PrimeCtx& ctx);

// I_B(t) closed form: delta_B(t)^{1/2} |nu(t)|^{-3/2} (val_p(pt) - |p| val_p(t));
// the prefactor collapses to the integer power p^{u3 + 2 u4}.
Rat ib_formula(const TorusElt& t, const PrimeCtx& ctx);
// The same integral as a measure over the 4-dimensional unipotent radical.
padic::MeasureResult ib_by_counting(const TorusElt& t, const PrimeCtx& ctx);

// Number of ways t = t_A^a t_B^b t_C^c t_D^d with nonnegative exponents.
long factorization_count(const TorusElt& t);

enum class SumKind { plain, weighted };

struct SatakeAssignment {
    std::optional<std::array<Rat, 3>> numeric; // (X_A, X_B, W); symbolic if absent
};

// Sum over integral torus elements with ord nu <= K of
// alpha(t) * coeff * Q^{ord nu}; coeff is val_p(pt) for the plain kind and
// val_p(pt) - |p| val_p(t) for the weighted kind.
alg::TruncatedSeries torus_sum(SumKind kind, const PrimeCtx& ctx, int K,
                               const SatakeAssignment& assign = {});

// Product of the four truncated geometric series (1 - X Q)^{-1}.
alg::TruncatedSeries spin_l_factor(int K, const SatakeAssignment& assign = {});

struct MacdonaldResult {
    bool weighted_ok = false; // torus_sum(weighted) == (1 - p^{-1} W Q^2) spin
    bool plain_ok = false;    // torus_sum(plain) == spin
    std::optional<std::pair<int, alg::LaurentPoly>> first_mismatch;
};

MacdonaldResult verify_macdonald(const PrimeCtx& ctx, int K,
                                 const SatakeAssignment& assign = {});

} // namespace spv::satake
