#pragma once

#include "arch.hpp"

#include <vector>

namespace spv::siegel {

using arch::cplx;
using arch::SiegelPoint;

// Integer shell vector; B2 is stored doubled so the D = 1 mod 4 half-integral
// structure stays in integers.
struct ShellVec {
    long long A, B1, twoB2, B3, C;
    auto operator<=>(const ShellVec&) const = default;
};

struct LatticeShell {
    long D = 0;
    double radius = 0;
    bool half_b2 = false;      // B2 runs over (1/2) Z
    bool quarter_target = false; // shell condition q(v) = D/4 instead of D
    std::vector<ShellVec> vecs;
};

// All D-integral v with q(v) equal to the branch target and ||v|| <= radius.
// The default conventions follow the branch of D; the flags can be forced for
// the convention diagnostics.
LatticeShell enumerate_shell(long D, double radius);
LatticeShell enumerate_shell(long D, double radius, bool half_b2, bool quarter_target);

double shell_norm(const ShellVec& v);
Rat shell_q(const ShellVec& v);
gsp4::V5Vector to_v5(const ShellVec& v);

// Q_v(Z) = -A det Z - B1 z11 + 2 B2 z12 + B3 z22 - C.
cplx q_v_eval(const ShellVec& v, const SiegelPoint& Z);
cplx q_v_eval(const gsp4::V5Vector& v, const SiegelPoint& Z);

struct PdResult {
    cplx value;
    double tail_bound;
    std::size_t terms;
};

// Truncated P_D(Z) = sum over the shell of Q_v(Z)^{-r}, with a rigorous bound
// on the dropped tail (see docs/tail_bound.md).  If tail_tol > 0 and the
// bound exceeds tail_tol in absolute value, throws with a suggested radius.
PdResult pd_eval(long D, int r, const SiegelPoint& Z, double radius, double tail_tol = 0);

double shell_tail_bound(long D, int r, const SiegelPoint& Z, double radius);

// Largest/smallest singular value of the V5 action of g in the norm metric.
struct SingularRange {
    double smin, smax;
};
SingularRange v5_singular_range(const arch::DMat4& g);

struct ModularityResult {
    double defect;       // |P_D(gZ) j^{-r} - P_D(Z)| / |P_D(Z)|
    double bound;        // tail-derived bound on the defect
    cplx lhs, rhs;
};

ModularityResult modularity_check(long D, int r, const SiegelPoint& Z,
                                  const gsp4::GSpElement& gamma, double radius);

} // namespace spv::siegel
