#include "siegel.hpp"

#include <algorithm>
#include <cmath>

namespace spv::siegel {

LatticeShell enumerate_shell(long D, double radius) {
    long dm = ((D % 4) + 4) % 4;
    bool half = dm == 1;
    return enumerate_shell(D, radius, half, half);
}

LatticeShell enumerate_shell(long D, double radius, bool half_b2, bool quarter_target) {
    if (D >= 0) throw MathError("enumerate_shell: D must be negative");
    if (radius <= 0) throw MathError("enumerate_shell: radius must be positive");
    LatticeShell shell;
    shell.D = D;
    shell.radius = radius;
    shell.half_b2 = half_b2;
    shell.quarter_target = quarter_target;
    const double r2 = radius * radius;
    const long long R = static_cast<long long>(std::floor(radius));
    // 2 B2^2 <= radius^2  =>  |twoB2| <= radius * sqrt(2)
    const long long R2 = static_cast<long long>(std::floor(radius * std::sqrt(2.0)));
    // 4 q(v) = 4 A C + 4 B1 B3 + twoB2^2 = 4 D (or D on the quarter branch)
    const long long target4 = quarter_target ? D : 4 * D;
    for (long long A = -R; A <= R; ++A)
        for (long long C = -R; C <= R; ++C)
            for (long long B1 = -R; B1 <= R; ++B1)
                for (long long B3 = -R; B3 <= R; ++B3) {
                    long long base = 4 * (A * C + B1 * B3);
                    long long need = target4 - base; // = twoB2^2
                    if (need < 0) continue;
                    long long s = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(need))));
                    while (s * s > need) --s;
                    while ((s + 1) * (s + 1) <= need) ++s;
                    if (s * s != need) continue;
                    for (long long twoB2 : (s == 0 ? std::vector<long long>{0}
                                                   : std::vector<long long>{-s, s})) {
                        if (!half_b2 && (twoB2 % 2 != 0)) continue;
                        if (twoB2 > R2 || twoB2 < -R2) continue;
                        double n2 = static_cast<double>(A * A + B1 * B1 + B3 * B3 + C * C) +
                                    static_cast<double>(twoB2 * twoB2) / 2.0;
                        if (n2 > r2 + 1e-9) continue;
                        shell.vecs.push_back(ShellVec{A, B1, twoB2, B3, C});
                    }
                }
    std::sort(shell.vecs.begin(), shell.vecs.end());
    return shell;
}

double shell_norm(const ShellVec& v) {
    return std::sqrt(static_cast<double>(v.A * v.A + v.B1 * v.B1 + v.B3 * v.B3 + v.C * v.C) +
                     static_cast<double>(v.twoB2 * v.twoB2) / 2.0);
}

Rat shell_q(const ShellVec& v) {
    return Rat(v.A) * v.C + Rat(v.B1) * v.B3 + Rat(v.twoB2 * v.twoB2, 4);
}

gsp4::V5Vector to_v5(const ShellVec& v) {
    gsp4::V5Vector out;
    out[0] = v.A;
    out[1] = v.B1;
    out[2] = Rat(v.twoB2, 2);
    out[3] = v.B3;
    out[4] = v.C;
    return out;
}

cplx q_v_eval(const ShellVec& v, const SiegelPoint& Z) {
    return -static_cast<double>(v.A) * Z.det() - static_cast<double>(v.B1) * Z.z11 +
           static_cast<double>(v.twoB2) * Z.z12 + static_cast<double>(v.B3) * Z.z22 -
           static_cast<double>(v.C);
}

cplx q_v_eval(const gsp4::V5Vector& v, const SiegelPoint& Z) {
    return -static_cast<double>(v[0]) * Z.det() - static_cast<double>(v[1]) * Z.z11 +
           2.0 * static_cast<double>(v[2]) * Z.z12 + static_cast<double>(v[3]) * Z.z22 -
           static_cast<double>(v[4]);
}

namespace {

// Jacobi eigenvalues of a symmetric 5x5 matrix.
std::array<double, 5> sym5_eigenvalues(std::array<std::array<double, 5>, 5> m) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-24) break;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                if (std::abs(m[i][j]) < 1e-300) continue;
                double theta = (m[j][j] - m[i][i]) / (2 * m[i][j]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < 5; ++k) {
                    double mik = m[i][k], mjk = m[j][k];
                    m[i][k] = c * mik - s * mjk;
                    m[j][k] = s * mik + c * mjk;
                }
                for (int k = 0; k < 5; ++k) {
                    double mki = m[k][i], mkj = m[k][j];
                    m[k][i] = c * mki - s * mkj;
                    m[k][j] = s * mki + c * mkj;
                }
            }
    }
    return {m[0][0], m[1][1], m[2][2], m[3][3], m[4][4]};
}

// 5x5 matrix of the V5 action of g in the norm-orthonormal coordinates
// (B2 scaled by sqrt 2).
std::array<std::array<double, 5>, 5> v5_action_matrix(const arch::DMat4& g) {
    std::array<std::array<double, 5>, 5> M{};
    const double w[5] = {1, 1, std::sqrt(2.0), 1, 1};
    for (int j = 0; j < 5; ++j) {
        std::array<cplx, 5> e{};
        e[static_cast<std::size_t>(j)] = 1.0;
        auto img = arch::act_v5_cd(e, g);
        for (int i = 0; i < 5; ++i)
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                img[static_cast<std::size_t>(i)].real() * w[i] / w[j];
    }
    return M;
}

} // namespace

SingularRange v5_singular_range(const arch::DMat4& g) {
    auto M = v5_action_matrix(g);
    std::array<std::array<double, 5>, 5> mtm{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double acc = 0;
            for (int k = 0; k < 5; ++k) acc += M[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                                               M[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            mtm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
        }
    auto ev = sym5_eigenvalues(mtm);
    double lo = ev[0], hi = ev[0];
    for (double e : ev) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    if (lo < 0) lo = 0;
    return SingularRange{std::sqrt(lo), std::sqrt(hi)};
}

double shell_tail_bound(long D, int r, const SiegelPoint& Z, double radius) {
    // |Q_v(Z)| >= c(Z) sqrt(||v||^2 + 2|D|) with c(Z) = |nu/j| min(smin, 1)
    // for any g in the Siegel parabolic with g(i) = Z; see docs/tail_bound.md.
    double x11 = Z.z11.real(), x12 = Z.z12.real(), x22 = Z.z22.real();
    double y11 = Z.z11.imag(), y12 = Z.z12.imag(), y22 = Z.z22.imag();
    if (!(y11 > 0) || !(y11 * y22 - y12 * y12 > 0))
        throw MathError("shell_tail_bound: point is not in the upper half space");
    // lower Cholesky Y = L L^T, block m = diag(delta L, delta t(L)^{-1} delta ... )
    double l11 = std::sqrt(y11);
    double l21 = y12 / l11;
    double l22 = std::sqrt(y22 - l21 * l21);
    double delta = l11 * l22; // det L = sqrt(det Y)
    arch::DMat4 g{};
    // g = u(X) * diag(delta * L, delta * t(L)^{-1}); then g(i) = X + iY and
    // |nu / j(g, i)| = delta.
    double A[2][2] = {{delta * l11, 0}, {delta * l21, delta * l22}};
    // t(L)^{-1} for the lower factor L
    double Ainvt[2][2] = {{1 / l11, -l21 / (l11 * l22)}, {0.0, 1 / l22}};
    double X[2][2] = {{x11, x12}, {x12, x22}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            g(i, j) = A[i][j];
            g(2 + i, 2 + j) = delta * Ainvt[i][j];
            double acc = 0;
            for (int k = 0; k < 2; ++k) acc += X[i][k] * delta * Ainvt[k][j];
            g(i, 2 + j) = acc;
        }
    auto sing = v5_singular_range(g);
    double c = delta * std::min(sing.smin, 1.0);

    long dm = ((D % 4) + 4) % 4;
    double step2 = dm == 1 ? 0.5 : 1.0; // B2 lattice step
    double cell_vol = std::sqrt(2.0) * step2;
    double rho0 = 0.5 * std::sqrt(4.0 + 2.0 * step2 * step2);
    double twoD = 2.0 * static_cast<double>(-D);

    auto f = [&](double s) {
        double t = std::max(radius, s - rho0);
        return std::pow(s, 4) * std::pow(t * t + twoD, -0.5 * r);
    };
    double lo = std::max(radius - rho0, 0.0);
    // quadrature up to S, then the analytic closure
    // int_S^inf s^4 (s/2)^{-r} ds = 2^r S^{5-r} / (r-5), valid once s - rho0 >= s/2
    double S = std::max({lo, 2 * rho0, radius}) + 40.0;
    double integral = arch::integrate(f, lo, S, 1e-12) +
                      std::pow(2.0, r) * std::pow(S, 5 - r) / (r - 5);
    double surface = 8 * M_PI * M_PI / 3.0; // vol(S^4)
    return std::pow(c, -r) * surface / cell_vol * integral;
}

PdResult pd_eval(long D, int r, const SiegelPoint& Z, double radius, double tail_tol) {
    if (r < 6) throw MathError("pd_eval: need r >= 6 for convergence");
    LatticeShell shell = enumerate_shell(D, radius);
    PdResult out{};
    out.terms = shell.vecs.size();
    // deterministic Kahan accumulation over the sorted shell
    long double re = 0, im = 0, cre = 0, cim = 0;
    for (const auto& v : shell.vecs) {
        cplx q = q_v_eval(v, Z);
        cplx term = std::pow(q, -r);
        long double yr = static_cast<long double>(term.real()) - cre;
        long double tr = re + yr;
        cre = (tr - re) - yr;
        re = tr;
        long double yi = static_cast<long double>(term.imag()) - cim;
        long double ti = im + yi;
        cim = (ti - im) - yi;
        im = ti;
    }
    out.value = cplx(static_cast<double>(re), static_cast<double>(im));
    out.tail_bound = shell_tail_bound(D, r, Z, radius);
    if (tail_tol > 0 && out.tail_bound > tail_tol) {
        throw MathError("pd_eval: radius " + std::to_string(radius) +
                        " too small for requested tail tolerance; try radius >= " +
                        std::to_string(radius * 2));
    }
    return out;
}

ModularityResult modularity_check(long D, int r, const SiegelPoint& Z,
                                  const gsp4::GSpElement& gamma, double radius) {
    if (gamma.nu != 1) throw MathError("modularity_check: gamma must have similitude 1");
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (rat_den(gamma.mat(i, j)) != 1)
                throw MathError("modularity_check: gamma must be integral");
    LatticeShell shell = enumerate_shell(D, radius);
    arch::DMat4 dg = arch::to_dmat(gamma);
    auto h2 = arch::act_h2(dg, Z);
    cplx jfac = std::pow(h2.j, -r);
    long double re_l = 0, im_l = 0, re_r = 0, im_r = 0;
    for (const auto& v : shell.vecs) {
        cplx tl = std::pow(q_v_eval(v, h2.Z), -r) * jfac;
        cplx tr = std::pow(q_v_eval(v, Z), -r);
        re_l += tl.real();
        im_l += tl.imag();
        re_r += tr.real();
        im_r += tr.imag();
    }
    ModularityResult out{};
    out.lhs = cplx(static_cast<double>(re_l), static_cast<double>(im_l));
    out.rhs = cplx(static_cast<double>(re_r), static_cast<double>(im_r));
    double denom = std::abs(out.rhs);
    out.defect = std::abs(out.lhs - out.rhs) / denom;
    auto sing = v5_singular_range(dg);
    double shrink = std::max({sing.smax, 1.0 / std::max(sing.smin, 1e-12), 1.0});
    double r1 = radius / shrink;
    out.bound = (shell_tail_bound(D, r, Z, radius) + shell_tail_bound(D, r, Z, r1)) / denom;
    return out;
}

} // namespace spv::siegel
