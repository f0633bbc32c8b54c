#include "local.hpp"

#include <algorithm>

namespace spv::local {

using padic::is_integral;
using padic::val_p;
using padic::VAL_INF;

Mat2 Mat2::identity() {
    Mat2 m;
    m(0, 0) = 1;
    m(1, 1) = 1;
    return m;
}

Mat2 Mat2::operator*(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
    return r;
}

Rat Mat2::det() const { return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0); }

Mat2 Mat2::transpose() const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = (*this)(j, i);
    return r;
}

Mat2 Mat2::adj() const {
    Mat2 r;
    r(0, 0) = (*this)(1, 1);
    r(0, 1) = -(*this)(0, 1);
    r(1, 0) = -(*this)(1, 0);
    r(1, 1) = (*this)(0, 0);
    return r;
}

bool Mat2::integral(long p) const {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!is_integral((*this)(i, j), p)) return false;
    return true;
}

Mat2 hermite_upper(const Mat2& m, long p) {
    if (m.det() == 0) throw MathError("hermite_upper: singular matrix");
    Mat2 r = m;
    long v0 = val_p(r(1, 0), p), v1 = val_p(r(1, 1), p);
    if (r(1, 0) == 0) return r;
    // valuation-minimal pivot in the bottom row, prefer the left column
    bool pivot_left = (r(1, 1) == 0) || v0 <= v1;
    if (pivot_left) {
        std::swap(r(0, 0), r(0, 1));
        std::swap(r(1, 0), r(1, 1));
    }
    // clear the bottom-left entry: col0 -= (m10/m11) col1, m10/m11 in Z_p
    Rat f = r(1, 0) / r(1, 1);
    r(0, 0) -= f * r(0, 1);
    r(1, 0) = 0;
    return r;
}

int delta0_prime(const Mat2& m2, const QuadExtData& ext, const PrimeCtx& ctx) {
    long p = ctx.p;
    Mat2 h = hermite_upper(m2, p);
    const Rat &m11 = h(0, 0), &m12 = h(0, 1), &m22 = h(1, 1);
    long v22 = val_p(m22, p);
    if (val_p(m11, p) < v22) return 0;
    if (ext.branch == gsp4::Branch::d_not_1_mod4) {
        if (val_p(m12, p) < v22) return 0;
        Rat x = m12 / m22;
        Rat q = m11 / m22;
        return is_integral((x * x - ext.D) / q, p) ? 1 : 0;
    }
    if (val_p(Rat(2 * m12), p) < v22) return 0;
    Rat x = m12 / m22;
    Rat q = m11 / m22;
    return is_integral((x * x - x - Rat(ext.D - 1, 4)) / q, p) ? 1 : 0;
}

std::pair<Mat2, Mat2> levi_blocks(const GSpElement& m) {
    const auto& g = m.mat;
    if (g(0, 2) != 0 || g(0, 3) != 0 || g(1, 2) != 0 || g(1, 3) != 0 || g(2, 0) != 0 ||
        g(2, 1) != 0 || g(3, 0) != 0 || g(3, 1) != 0)
        throw MathError("levi_blocks: element is not block diagonal");
    Mat2 t, b;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            t(i, j) = g(i, j);
            b(i, j) = g(2 + i, 2 + j);
        }
    return {t, b};
}

Rat delta0(const GSpElement& m, const QuadExtData& ext, const PrimeCtx& ctx) {
    auto [mt, mb] = levi_blocks(m);
    Rat ratio = mt.det() / mb.det();
    long v = val_p(ratio, ctx.p);
    if (v < 0) return 0; // |det(m_t)/det(m_b)| > 1
    if (v % 2 != 0) throw MathError("delta0: odd p-power under the square root");
    int dp = delta0_prime(mb, ext, ctx);
    if (dp == 0) return 0;
    return Rat(1, ipow(ctx.p, static_cast<unsigned long>(v / 2)));
}

LocalValue alpha_chi_p(const GSpElement& m, const QuadExtData& ext, const PrimeCtx& ctx) {
    const long p = ctx.p;
    gsp4::V5Vector vD = gsp4::make_v_D(ext);
    gsp4::V5Vector w0 = gsp4::act_v5(vD, m);
    gsp4::V5Vector f2f1; // f2 ^ f1 = -(f1 ^ f2)
    f2f1[4] = -1;
    gsp4::V5Vector w1 = gsp4::act_v5(f2f1, m);

    // Scale the B2 coordinate so every support condition reads "in Z_p".
    Rat scale2 = ext.branch == gsp4::Branch::d_1_mod4 ? Rat(2) : Rat(1);
    std::array<Rat, 5> a, b;
    for (int i = 0; i < 5; ++i) {
        Rat s = i == 2 ? scale2 : Rat(1);
        a[static_cast<std::size_t>(i)] = w0[i] * s;
        b[static_cast<std::size_t>(i)] = w1[i] * s;
    }

    long n_req = VAL_INF, m_req = 0;
    for (int i = 0; i < 5; ++i) {
        const Rat& bi = b[static_cast<std::size_t>(i)];
        const Rat& ai = a[static_cast<std::size_t>(i)];
        if (bi == 0) {
            if (!is_integral(ai, p)) return LocalValue{0.0, true, true}; // empty support
            continue;
        }
        long vb = val_p(bi, p);
        long ni = ai == 0 ? vb : std::max(vb - std::min(val_p(ai, p), 0L), vb);
        n_req = std::min(n_req, ni);
        m_req = std::max(m_req, -vb);
    }
    if (n_req == VAL_INF) throw MathError("alpha_chi_p: translate direction vanishes");
    int N = static_cast<int>(std::max(0L, n_req)) + 1;
    int M = static_cast<int>(std::max(0L, m_req)) + 1;

    padic::LatticeQuotient lq(ctx, 1, N, M);
    auto f = [&](const padic::RepView& view) -> std::complex<double> {
        Rat z = view.rat(0);
        for (int i = 0; i < 5; ++i)
            if (!is_integral(a[static_cast<std::size_t>(i)] + z * b[static_cast<std::size_t>(i)], p))
                return 0.0;
        return padic::psi_p(z, ctx);
    };
    auto res = padic::char_sum(f, lq);
    return LocalValue{res.value, res.stability_checked, res.stable};
}

LocalValue unipotent_integral(const GSpElement& g, const QuadExtData& ext, const PrimeCtx& ctx) {
    const long p = ctx.p;
    auto [mt, mb] = levi_blocks(g);
    if (!mt.integral(p) || !mb.integral(p)) return LocalValue{0.0, true, true};

    // Support bounds from the columns of mb^{-1} = adj(mb)/det(mb).
    Mat2 adj = mb.adj();
    Rat det = mb.det();
    long vdet = val_p(det, p);
    long c0 = vdet - std::min(val_p(adj(0, 0), p), val_p(adj(1, 0), p));
    long c1 = vdet - std::min(val_p(adj(0, 1), p), val_p(adj(1, 1), p));
    c0 = std::max(c0, 0L);
    c1 = std::max(c1, 0L);
    // dims: x11 (column 0), x12 (both columns), x22 (column 1)
    std::vector<int> N = {static_cast<int>(c0), static_cast<int>(std::min(c0, c1)),
                          static_cast<int>(c1)};
    std::vector<int> M = {0, 0, 0};
    padic::LatticeQuotient lq(ctx, N, M);

    const int NN = std::max({N[0], N[1], N[2]});
    // integer approximations of mb mod p^{NN+1}
    long long mod_b = 1;
    for (int i = 0; i < NN + 1; ++i) mod_b *= p;
    long long bint[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Int pm = Int(mod_b);
            Int num = rat_num(mb(i, j)) % pm;
            if (num < 0) num += pm;
            Int den = rat_den(mb(i, j)) % pm;
            // den is a p-unit; invert by extended Euclid
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
            bint[i][j] = static_cast<long long>((num * inv) % pm);
        }
    long long scale[3]; // p^{NN - N_i}
    for (int i = 0; i < 3; ++i) {
        scale[i] = 1;
        for (int j = 0; j < NN - N[static_cast<std::size_t>(i)]; ++j) scale[i] *= p;
    }
    long long modNN = 1;
    for (int i = 0; i < NN; ++i) modNN *= p;

    auto T = gsp4::chi_T(ext);
    // tr(T X) = T11 x11 + (2 T12) x12 + T22 x22, all integer coefficients
    long long t11 = static_cast<long long>(rat_num(T[0]));
    if (rat_den(T[0]) != 1) throw MathError("unipotent_integral: non-integral T11");
    long long t12x2 = static_cast<long long>(rat_num(Rat(2 * T[1])));
    long long t22 = static_cast<long long>(rat_num(T[2]));

    auto pred = [&](const padic::RepView& v) -> bool {
        // X mb integral: four entry conditions scaled by p^{NN}
        const long long x11 = v.num(0) * scale[0];
        const long long x12 = v.num(1) * scale[1];
        const long long x22 = v.num(2) * scale[2];
        if (modNN == 1) return true;
        long long e00 = (x11 % modNN) * (bint[0][0] % modNN) + (x12 % modNN) * (bint[1][0] % modNN);
        if (e00 % modNN != 0) return false;
        long long e01 = (x11 % modNN) * (bint[0][1] % modNN) + (x12 % modNN) * (bint[1][1] % modNN);
        if (e01 % modNN != 0) return false;
        long long e10 = (x12 % modNN) * (bint[0][0] % modNN) + (x22 % modNN) * (bint[1][0] % modNN);
        if (e10 % modNN != 0) return false;
        long long e11 = (x12 % modNN) * (bint[0][1] % modNN) + (x22 % modNN) * (bint[1][1] % modNN);
        return e11 % modNN == 0;
    };
    auto phase = [&](const padic::RepView& v) -> long long {
        return t11 * (v.num(0) * scale[0]) + t12x2 * (v.num(1) * scale[1]) +
               t22 * (v.num(2) * scale[2]);
    };
    auto res = padic::char_sum_psi(pred, phase, NN, lq);
    return LocalValue{res.value, res.stability_checked, res.stable};
}

bool SymHalfInt::half_integral(long p) const {
    return is_integral(x11, p) && is_integral(x22, p) && is_integral(Rat(2 * x12), p);
}

bool SymHalfInt::in_p_dual(long p) const {
    return val_p(x11, p) >= 1 && val_p(x22, p) >= 1 && val_p(Rat(2 * x12), p) >= 1;
}

SymHalfInt y_matrix(const Rat& x, const Rat& y, const QuadExtData& ext) {
    if (x == 0) throw MathError("y_matrix: x must be nonzero");
    if (ext.branch == gsp4::Branch::d_not_1_mod4)
        return SymHalfInt{(y * y - ext.D) / x, y, x};
    return SymHalfInt{(y * y + y + Rat(1 - ext.D, 4)) / x, Rat(1, 2) + y, x};
}

SymHalfInt lambda_y_matrix(const GSpElement& m, const QuadExtData& ext) {
    auto [mt, mb] = levi_blocks(m);
    auto T = gsp4::chi_T(ext);
    Mat2 X;
    X(0, 0) = T[0];
    X(0, 1) = T[1];
    X(1, 0) = T[1];
    X(1, 1) = T[2];
    Rat det = mb.det();
    if (det == 0) throw MathError("lambda_y_matrix: singular m_b");
    Mat2 inv = mb.adj();
    Mat2 prod = inv * X * mt;
    SymHalfInt r{prod(0, 0) / det, prod(0, 1) / det, prod(1, 1) / det};
    if (prod(0, 1) != prod(1, 0)) throw MathError("lambda_y_matrix: result not symmetric");
    return r;
}

bool coset_congruence_holds(long long b, int alpha_exp, const QuadExtData& ext,
                            const PrimeCtx& ctx, CongOrientation orient) {
    if (alpha_exp == 0) return b == 0;
    Int mod = ipow(ctx.p, static_cast<unsigned long>(alpha_exp));
    Int bb(b);
    Int val;
    if (ext.branch == gsp4::Branch::d_not_1_mod4) {
        val = bb * bb - ext.D;
    } else {
        Int c((ext.D - 1) / 4);
        val = orient == CongOrientation::minus ? Int(bb * bb - bb - c) : Int(bb * bb + bb - c);
    }
    return val % mod == 0;
}

std::vector<LeviCoset> enumerate_levi_cosets(const QuadExtData& ext, const PrimeCtx& ctx,
                                             int val_bound, CongOrientation orient) {
    if (val_bound < 0) throw MathError("enumerate_levi_cosets: negative bound");
    std::vector<LeviCoset> out;
    for (int alpha = 0; alpha <= val_bound; ++alpha) {
        long long pa = 1;
        for (int i = 0; i < alpha; ++i) pa *= ctx.p;
        for (long long b = 0; b < pa; ++b) {
            if (!coset_congruence_holds(b, alpha, ext, ctx, orient)) continue;
            for (int l = 0; alpha + l <= val_bound; ++l) out.push_back(LeviCoset{alpha, b, l});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GSpElement levi_from_coset(const LeviCoset& c, const PrimeCtx& ctx) {
    Rat pa = ipow(ctx.p, static_cast<unsigned long>(c.alpha_exp));
    Rat lam = ipow(ctx.p, static_cast<unsigned long>(c.lambda_exp));
    gsp4::Mat4 m;
    // m_t = lambda det(m_b) t(m_b)^{-1} = lambda [[1, 0], [-b, p^alpha]]
    m(0, 0) = lam;
    m(1, 0) = -lam * c.b;
    m(1, 1) = lam * pa;
    m(2, 2) = pa;
    m(2, 3) = c.b;
    m(3, 3) = 1;
    return gsp4::make_gsp(m);
}

SplitType splitting_type(const QuadExtData& ext, long p) {
    long D = ext.D;
    if (p == 2) {
        long m = ((D % 8) + 8) % 8;
        if (m == 1) return SplitType::split;
        if (m == 5) return SplitType::inert;
        return SplitType::ramified;
    }
    long Dm = ((D % p) + p) % p;
    if (Dm == 0) return SplitType::ramified;
    // Euler criterion
    long acc = 1, base = Dm % p, e = (p - 1) / 2;
    while (e) {
        if (e & 1) acc = (acc * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return acc == 1 ? SplitType::split : SplitType::inert;
}

Int hensel_root(const QuadExtData& ext, long p, int k) {
    auto f = [&](const Int& x) -> Int {
        if (ext.branch == gsp4::Branch::d_not_1_mod4) return x * x - ext.D;
        return x * x + x + Int((1 - ext.D) / 4);
    };
    auto fp = [&](const Int& x) -> Int {
        if (ext.branch == gsp4::Branch::d_not_1_mod4) return 2 * x;
        return 2 * x + 1;
    };
    Int root = -1;
    for (long x = 0; x < p; ++x) {
        if (f(x) % p == 0 && fp(x) % p != 0) {
            root = x;
            break;
        }
    }
    if (root < 0) throw MathError("hensel_root: no simple root mod p");
    Int mod = p;
    Int target = ipow(p, static_cast<unsigned long>(k));
    while (mod < target) {
        mod = mod * mod;
        if (mod > target) mod = target;
        // Newton step: x <- x - f(x) * fp(x)^{-1} mod `mod`
        Int fx = f(root) % mod;
        Int dfx = fp(root) % mod;
        if (dfx < 0) dfx += mod;
        // inverse of dfx mod `mod`
        Int a0 = dfx, b0 = mod, x0 = 1, x1 = 0;
        while (b0 != 0) {
            Int q = a0 / b0, t = a0 - q * b0;
            a0 = b0;
            b0 = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        Int inv = x0 % mod;
        if (inv < 0) inv += mod;
        root = (root - fx * inv) % mod;
        if (root < 0) root += mod;
    }
    return root % target;
}

namespace {

long min_entry_val(const gsp4::Mat4& m, long p) {
    long v = VAL_INF;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (m(i, j) != 0) v = std::min(v, val_p(m(i, j), p));
    return v;
}

// The second root of the branch minimal polynomial given one root.
Int other_root(const QuadExtData& ext, const Int& r) {
    return ext.branch == gsp4::Branch::d_not_1_mod4 ? Int(-r) : Int(-1 - r);
}

} // namespace

std::vector<TorusCosetWitness> enumerate_torus_L_cosets(const QuadExtData& ext,
                                                        const PrimeCtx& ctx, int val_bound) {
    const long p = ctx.p;
    const int B = val_bound + 3;
    SplitType st = splitting_type(ext, p);

    std::vector<LNum> u_cands;
    u_cands.push_back(LNum{1, 0});
    if (st == SplitType::split) {
        Int r = hensel_root(ext, p, B + 2);
        for (int e = 1; e <= B; ++e) {
            Int pe = ipow(p, static_cast<unsigned long>(e));
            Int pe1 = pe * p;
            for (Int rho : {r, other_root(ext, r)}) {
                // x = -rho mod p^e, adjusted so val(f-component) is exactly e
                Int x = (-rho) % pe;
                if (x < 0) x += pe;
                // component value x + rho has val >= e; bump if deeper
                Int comp = (x + rho) % pe1;
                if (comp < 0) comp += pe1;
                if (comp % pe1 == 0) x += pe;
                u_cands.push_back(LNum{Rat(x), 1});
            }
        }
    } else if (st == SplitType::inert) {
        for (int a = 1; a <= B; ++a) u_cands.push_back(LNum{ipow(p, static_cast<unsigned long>(a)), 0});
    } else {
        LNum pi{0, 1};
        if (ext.branch == gsp4::Branch::d_1_mod4) {
            pi = LNum{1, 2}; // 2 alpha + 1 = sqrt(D), a uniformizer when p | D
        } else if (p == 2) {
            long dm = ((ext.D % 4) + 4) % 4;
            if (dm == 3) pi = LNum{1, 1}; // 1 + alpha, norm 1 - D has val 1
        }
        LNum acc{1, 0};
        for (int a = 1; a <= 2 * B; ++a) {
            acc = gsp4::lmul(acc, pi, ext);
            u_cands.push_back(acc);
        }
    }

    std::map<LeviCoset, TorusCosetWitness> found;
    for (const auto& u : u_cands) {
        Rat nu = gsp4::lnorm(u, ext);
        if (nu == 0) continue;
        LNum ubar = gsp4::lconj(u, ext);
        for (int j = -2 * B; j <= 2 * B; ++j) {
            Rat q = rat_pow(Rat(p), j);
            Rat s = q / nu;
            LNum v{ubar.e * s, ubar.h * s};
            gsp4::GL2L torus{u, LNum{0, 0}, LNum{0, 0}, v};
            GSpElement g;
            try {
                g = gsp4::embed_gl2l(torus, ext);
            } catch (const MathError&) {
                continue;
            }
            // central normalization to val_p(g) = 0
            long k = min_entry_val(g.mat, p);
            Rat scale = rat_pow(Rat(p), -k);
            gsp4::Mat4 gm = g.mat;
            for (int i = 0; i < 4; ++i)
                for (int jj = 0; jj < 4; ++jj) gm(i, jj) = gm(i, jj) * scale;
            GSpElement gn = gsp4::make_gsp(gm);
            LNum un{u.e * scale, u.h * scale}, vn{v.e * scale, v.h * scale};

            auto [mt, mb] = levi_blocks(gn);
            if (!mb.integral(p) || !mt.integral(p)) continue;
            long vt = val_p(mt.det(), p), vb = val_p(mb.det(), p);
            if (vt < vb) continue; // |det m_t / det m_b| > 1
            Mat2 h = hermite_upper(mb, p);
            if (val_p(h(1, 1), p) != 0) continue; // delta > 0: integrand vanishes
            long alpha = val_p(h(0, 0), p);
            if (alpha < 0) throw MathError("enumerate_torus_L_cosets: reduction failure");
            Rat x = h(0, 1) / h(1, 1);
            if (!is_integral(x, p)) throw MathError("enumerate_torus_L_cosets: reduction failure");
            // b = x mod p^alpha as an integer
            Int pa = ipow(p, static_cast<unsigned long>(alpha));
            Int num = rat_num(x) % pa;
            if (num < 0) num += pa;
            Int den = rat_den(x) % pa;
            Int a0 = den, b0 = pa, x0 = 1, x1 = 0;
            while (b0 != 0) {
                Int qq = a0 / b0, t = a0 - qq * b0;
                a0 = b0;
                b0 = t;
                t = x0 - qq * x1;
                x0 = x1;
                x1 = t;
            }
            Int inv = alpha == 0 ? Int(0) : x0 % pa;
            if (inv < 0) inv += pa;
            long long bres = alpha == 0 ? 0 : static_cast<long long>((num * inv) % pa);
            long nuval = val_p(gn.nu, p);
            int lam = static_cast<int>(nuval - alpha);
            if (lam < 0) continue;
            LeviCoset key{static_cast<int>(alpha), bres, lam};
            if (key.alpha_exp + key.lambda_exp > val_bound) continue;
            found.emplace(key, TorusCosetWitness{key, un, vn});
        }
    }
    std::vector<TorusCosetWitness> out;
    for (auto& [k, w] : found) out.push_back(w);
    return out;
}

Rat delta_BL(const LNum& u, const LNum& v, const QuadExtData& ext, const PrimeCtx& ctx) {
    Rat nu_u = gsp4::lnorm(u, ext);
    Rat nu_v = gsp4::lnorm(v, ext);
    if (nu_u == 0 || nu_v == 0) throw MathError("delta_BL: degenerate torus element");
    return padic::abs_p(nu_u / nu_v, ctx.p);
}

GSpElement random_levi(std::mt19937_64& rng, const PrimeCtx& ctx, bool allow_nonintegral) {
    std::uniform_int_distribution<long> entry(-static_cast<long>(ctx.p * ctx.p),
                                              static_cast<long>(ctx.p * ctx.p));
    std::uniform_int_distribution<int> lam_exp(allow_nonintegral ? -1 : 0, 2);
    Mat2 mb;
    do {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) mb(i, j) = entry(rng);
    } while (mb.det() == 0);
    Rat lam = rat_pow(Rat(ctx.p), lam_exp(rng));
    Mat2 mt = mb.adj().transpose();
    gsp4::Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            m(i, j) = lam * mt(i, j);
            m(2 + i, 2 + j) = mb(i, j);
        }
    GSpElement g = gsp4::make_gsp(m);
    // compose with a random K_M element diag(k, nu0 t(k)^{-1})
    std::uniform_int_distribution<int> coin(0, 1);
    std::array<std::array<long, 2>, 2> k{{{1, 0}, {0, 1}}};
    std::uniform_int_distribution<int> shear(-2, 2);
    for (int step = 0; step < 4; ++step) {
        long s = shear(rng);
        if (coin(rng)) {
            k[0][0] += s * k[1][0];
            k[0][1] += s * k[1][1];
        } else {
            k[1][0] += s * k[0][0];
            k[1][1] += s * k[0][1];
        }
    }
    long nu0 = coin(rng) ? 1 : -1;
    long detk = k[0][0] * k[1][1] - k[0][1] * k[1][0]; // = 1
    gsp4::Mat4 km;
    km(0, 0) = k[0][0];
    km(0, 1) = k[0][1];
    km(1, 0) = k[1][0];
    km(1, 1) = k[1][1];
    // nu0 * t(k)^{-1} = nu0/det * [[k11, -k10], [-k01, k00]]^T
    km(2, 2) = Rat(nu0 * k[1][1], detk);
    km(2, 3) = Rat(-nu0 * k[1][0], detk);
    km(3, 2) = Rat(-nu0 * k[0][1], detk);
    km(3, 3) = Rat(nu0 * k[0][0], detk);
    return gsp_mul(g, gsp4::make_gsp(km));
}

} // namespace spv::local
