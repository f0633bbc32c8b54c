#include "satake.hpp"

#include <algorithm>

namespace spv::satake {

using padic::val_p;

TorusElt make_torus(int u1, int u2, int u3, int u4) {
    if (u1 + u4 != u2 + u3) throw MathError("make_torus: u1 + u4 != u2 + u3");
    return TorusElt{{u1, u2, u3, u4}};
}

int ord_nu(const TorusElt& t) { return t.u[0] + t.u[3]; }

int val_t(const TorusElt& t) { return *std::min_element(t.u.begin(), t.u.end()); }

bool is_integral(const TorusElt& t) { return val_t(t) >= 0; }

alg::LaurentPoly satake_monomial(const TorusElt& t) {
    return alg::LaurentPoly::monomial(1, t.u[0] - t.u[2], t.u[0] - t.u[1], t.u[3]);
}

gsp4::Mat4 to_gsp4_matrix(const TorusElt& t, long p) {
    gsp4::Mat4 m;
    // (e1, e2, f2, f1) -> (e1, e2, f1, f2): the f1 slot carries u4, f2 carries u3
    m(0, 0) = rat_pow(Rat(p), t.u[0]);
    m(1, 1) = rat_pow(Rat(p), t.u[1]);
    m(2, 2) = rat_pow(Rat(p), t.u[3]);
    m(3, 3) = rat_pow(Rat(p), t.u[2]);
    return m;
}

TorusElt from_gsp4_diag(const gsp4::GSpElement& g, long p) {
    const auto& m = g.mat;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && m(i, j) != 0) throw MathError("from_gsp4_diag: not diagonal");
    auto expo = [&](int i) {
        long v = val_p(m(i, i), p);
        if (rat_abs(m(i, i)) != rat_pow(Rat(p), v))
            throw MathError("from_gsp4_diag: entry is not a p-power");
        return static_cast<int>(v);
    };
    return make_torus(expo(0), expo(1), expo(3), expo(2));
}

std::vector<TorusElt> integral_torus_elts(int max_ord_nu) {
    std::vector<TorusElt> out;
    for (int n = 0; n <= max_ord_nu; ++n)
        for (int u1 = 0; u1 <= n; ++u1)
            for (int u2 = 0; u2 <= n; ++u2) out.push_back(make_torus(u1, u2, n - u2, n - u1));
    return out;
}

Rat ip_formula(const Mat2& m2, const PrimeCtx& ctx) {
    if (!m2.integral(ctx.p)) throw MathError("ip_formula: matrix is not integral");
    Rat det = m2.det();
    if (det == 0) throw MathError("ip_formula: singular matrix");
    long vdet = val_p(det, ctx.p);
    long vmin = padic::VAL_INF;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (m2(i, j) != 0) vmin = std::min(vmin, val_p(m2(i, j), ctx.p));
    // |det|^{-1} Delta_1^{-1} = p^{vdet} p^{vmin}
    return Rat(ipow(ctx.p, static_cast<unsigned long>(vdet + vmin)));
}

namespace {

// Integer approximation of a p-integral rational mod p^e.
long long approx_mod(const Rat& x, long long mod) {
    Int pm(mod);
    Int num = rat_num(x) % pm;
    if (num < 0) num += pm;
    Int den = rat_den(x) % pm;
    Int a0 = den, b0 = pm, x0 = 1, x1 = 0;
    while (b0 != 0) {
        Int q = a0 / b0, t = a0 - q * b0;
        a0 = b0;
        b0 = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    Int inv = x0 % pm;
    if (inv < 0) inv += pm;
    return static_cast<long long>((num * inv) % pm);
}

} // namespace

padic::MeasureResult ip_by_counting(const Mat2& m2, const PrimeCtx& ctx) {
    const long p = ctx.p;
    if (!m2.integral(p)) throw MathError("ip_by_counting: matrix is not integral");
    Rat det = m2.det();
    if (det == 0) throw MathError("ip_by_counting: singular matrix");
    Mat2 adj = m2.adj();
    long vdet = val_p(det, p);
    long c0 = vdet - std::min(val_p(adj(0, 0), p), val_p(adj(1, 0), p));
    long c1 = vdet - std::min(val_p(adj(0, 1), p), val_p(adj(1, 1), p));
    c0 = std::max(c0, 0L);
    c1 = std::max(c1, 0L);
    // dims: u = x11 = x22 (both columns), x12 (column 1), x21 (column 0)
    std::vector<int> N = {static_cast<int>(std::min(c0, c1)), static_cast<int>(c1),
                          static_cast<int>(c0)};
    std::vector<int> M = {0, 0, 0};
    padic::LatticeQuotient lq(ctx, N, M);

    const int NN = std::max({N[0], N[1], N[2]});
    long long modNN = 1;
    for (int i = 0; i < NN; ++i) modNN *= p;
    long long b[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b[i][j] = modNN == 1 ? 0 : approx_mod(m2(i, j), modNN);
    long long scale[3];
    for (int i = 0; i < 3; ++i) {
        scale[i] = 1;
        for (int j = 0; j < NN - N[static_cast<std::size_t>(i)]; ++j) scale[i] *= p;
    }
    auto pred = [&](const padic::RepView& v) -> bool {
        if (modNN == 1) return true;
        const long long u = v.num(0) * scale[0];
        const long long x12 = v.num(1) * scale[1];
        const long long x21 = v.num(2) * scale[2];
        // X = [[u, x12], [x21, u]]; conditions (X m2)_{ik} = 0 mod p^{NN}
        if ((u % modNN * b[0][0] + x12 % modNN * b[1][0]) % modNN != 0) return false;
        if ((u % modNN * b[0][1] + x12 % modNN * b[1][1]) % modNN != 0) return false;
        if ((x21 % modNN * b[0][0] + u % modNN * b[1][0]) % modNN != 0) return false;
        return (x21 % modNN * b[0][1] + u % modNN * b[1][1]) % modNN == 0;
    };
    return padic::measure(pred, lq);
}

Rat ib_formula(const TorusElt& t, const PrimeCtx& ctx) {
    if (!is_integral(t)) throw MathError("ib_formula: torus element is not integral");
    // delta_B^{1/2} |nu|^{-3/2} as exponents: the doubled exponent must be even.
    int doubled = 2 * t.u[0] - 2 * t.u[1] + 6 * t.u[3];
    if (doubled % 2 != 0) throw MathError("ib_formula: half-integral power of p");
    int e = doubled / 2;
    if (e != t.u[2] + 2 * t.u[3])
        throw MathError("ib_formula: exponent bookkeeping violates the similitude relation");
    int k = val_t(t);
    Rat factor = Rat(k + 1) - Rat(k, ctx.p);
    return rat_pow(Rat(ctx.p), e) * factor;
}

padic::MeasureResult ib_by_counting(const TorusElt& t, const PrimeCtx& ctx) {
    if (!is_integral(t)) throw MathError("ib_by_counting: torus element is not integral");
    const long p = ctx.p;
    const int u2 = t.u[1], u3 = t.u[2], u4 = t.u[3];
    const int n12 = std::min(u2, u4);
    // The unipotent radical of the Borel is cut out by n24 = n13 - n12 n23 and
    // n34 = -n12; either of n13, n24 can serve as the dependent entry.  The
    // conditions for n t integral are n12 p^{u2}, n13 p^{u3}, n23 p^{u3},
    // n14 p^{u4}, n24 p^{u4}, n34 p^{u4} all integral.  Pick the cheaper box.
    const int boxB = n12 + std::max(0, u3 - u4) + 2 * u3 + u4;           // dep n24
    const int boxA = n12 + u3 + std::max(0, n12 - u3) + 2 * u4;          // dep n13
    if (boxB <= boxA) {
        // coordinates (n12, n13, n23, n14), dependent n24 = n13 - n12 n23
        std::vector<int> N = {n12, u3, u3, u4};
        std::vector<int> M = {std::max(0, u3 - u4), 0, 0, 0};
        padic::LatticeQuotient lq(ctx, N, M);
        // (n13 - n12 n23) p^{u4} integral: k13 p^{N12} - k12 k23 = 0
        // mod p^{max(0, N12 + u3 - u4)}
        long long pn12 = 1;
        for (int i = 0; i < N[0]; ++i) pn12 *= p;
        long long cmod = 1;
        for (int i = 0; i < std::max(0, N[0] + u3 - u4); ++i) cmod *= p;
        auto pred = [&](const padic::RepView& v) -> bool {
            if (cmod == 1) return true;
            long long k12 = v.num(0), k13 = v.num(1), k23 = v.num(2);
            return ((k13 % cmod) * pn12 - (k12 % cmod) * (k23 % cmod)) % cmod == 0;
        };
        return padic::measure(pred, lq);
    }
    // coordinates (n12, n23, n24, n14), dependent n13 = n24 + n12 n23
    std::vector<int> N = {n12, u3, u4, u4};
    std::vector<int> M = {0, std::max(0, n12 - u3), 0, 0};
    padic::LatticeQuotient lq(ctx, N, M);
    // n13 = k24 / p^{u4} + k12 k23 / p^{N12 + u3} must lie in p^{-u3} Z_p:
    // with common denominator p^{D0}, D0 = max(u4, N12 + u3), the numerator
    // k24 p^{D0 - u4} + k12 k23 p^{D0 - N12 - u3} must vanish mod p^{D0 - u3}.
    const int D0 = std::max(u4, n12 + u3);
    long long s24 = 1, s1223 = 1, cmod = 1;
    for (int i = 0; i < D0 - u4; ++i) s24 *= p;
    for (int i = 0; i < D0 - n12 - u3; ++i) s1223 *= p;
    for (int i = 0; i < std::max(0, D0 - u3); ++i) cmod *= p;
    auto pred = [&](const padic::RepView& v) -> bool {
        if (cmod == 1) return true;
        long long k12 = v.num(0), k23 = v.num(1), k24 = v.num(2);
        return ((k24 % cmod) * (s24 % cmod) + (k12 % cmod) * (k23 % cmod) % cmod * (s1223 % cmod)) %
                   cmod ==
               0;
    };
    return padic::measure(pred, lq);
}

long factorization_count(const TorusElt& t) {
    if (!is_integral(t)) return 0;
    long count = 0;
    const int u1 = t.u[0], u2 = t.u[1], u3 = t.u[2], u4 = t.u[3];
    for (int a = 0; a <= std::min(u1, u2); ++a) {
        int b = u1 - a, c = u2 - a, d = u3 - b;
        if (d < 0) continue;
        if (c + d == u4) ++count;
    }
    return count;
}

namespace {

alg::LaurentPoly apply_assign(const alg::LaurentPoly& m, const SatakeAssignment& assign) {
    if (!assign.numeric) return m;
    const auto& [xa, xb, w] = *assign.numeric;
    return alg::LaurentPoly::constant(m.eval(xa, xb, w));
}

} // namespace

alg::TruncatedSeries torus_sum(SumKind kind, const PrimeCtx& ctx, int K,
                               const SatakeAssignment& assign) {
    alg::TruncatedSeries s(K);
    for (const auto& t : integral_torus_elts(K)) {
        int k = val_t(t);
        Rat coeff = kind == SumKind::plain ? Rat(k + 1) : Rat(k + 1) - Rat(k, ctx.p);
        s.add_coeff(ord_nu(t), apply_assign(satake_monomial(t), assign) * coeff);
    }
    return s;
}

alg::TruncatedSeries spin_l_factor(int K, const SatakeAssignment& assign) {
    using alg::LaurentPoly;
    using alg::TruncatedSeries;
    TorusElt tA = make_torus(1, 1, 0, 0), tB = make_torus(1, 0, 1, 0),
             tC = make_torus(0, 1, 0, 1), tD = make_torus(0, 0, 1, 1);
    TruncatedSeries s = TruncatedSeries::one(K);
    for (const auto& t : {tA, tB, tC, tD})
        s = s * TruncatedSeries::geo_inverse(apply_assign(satake_monomial(t), assign), K);
    return s;
}

MacdonaldResult verify_macdonald(const PrimeCtx& ctx, int K, const SatakeAssignment& assign) {
    using alg::LaurentPoly;
    using alg::TruncatedSeries;
    MacdonaldResult res;
    TruncatedSeries spin = spin_l_factor(K, assign);
    TruncatedSeries plain = torus_sum(SumKind::plain, ctx, K, assign);
    res.plain_ok = plain == spin;

    TruncatedSeries weighted = torus_sum(SumKind::weighted, ctx, K, assign);
    TruncatedSeries euler(K);
    euler.set_coeff(0, LaurentPoly::one());
    if (K >= 2)
        euler.set_coeff(2, apply_assign(LaurentPoly::w(), assign) * Rat(-1, ctx.p));
    TruncatedSeries rhs = euler * spin;
    res.weighted_ok = weighted == rhs;
    if (!res.weighted_ok)
        res.first_mismatch = TruncatedSeries::first_mismatch(weighted, rhs);
    else if (!res.plain_ok)
        res.first_mismatch = TruncatedSeries::first_mismatch(plain, spin);
    return res;
}

} // namespace spv::satake
