#include "gsp4.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace spv::gsp4 {

Mat4 Mat4::identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1;
    return m;
}

Mat4 Mat4::operator*(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if ((*this)(i, k) == 0) continue;
            for (int j = 0; j < 4; ++j) r(i, j) += (*this)(i, k) * o(k, j);
        }
    return r;
}

Mat4 Mat4::transpose() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
    return r;
}

Rat Mat4::det() const {
    // Laplace along the first row with 3x3 cofactors.
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return (*this)(r0, c0) * ((*this)(r1, c1) * (*this)(r2, c2) - (*this)(r1, c2) * (*this)(r2, c1)) -
               (*this)(r0, c1) * ((*this)(r1, c0) * (*this)(r2, c2) - (*this)(r1, c2) * (*this)(r2, c0)) +
               (*this)(r0, c2) * ((*this)(r1, c0) * (*this)(r2, c1) - (*this)(r1, c1) * (*this)(r2, c0));
    };
    return (*this)(0, 0) * det3(1, 2, 3, 1, 2, 3) - (*this)(0, 1) * det3(1, 2, 3, 0, 2, 3) +
           (*this)(0, 2) * det3(1, 2, 3, 0, 1, 3) - (*this)(0, 3) * det3(1, 2, 3, 0, 1, 2);
}

Mat4 Mat4::inverse() const {
    // Gauss-Jordan with exact pivoting.
    std::array<std::array<Rat, 8>, 4> w{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) w[i][j] = (*this)(i, j);
        w[i][static_cast<std::size_t>(4 + i)] = 1;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (w[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw MathError("Mat4::inverse: singular matrix");
        std::swap(w[static_cast<std::size_t>(col)], w[static_cast<std::size_t>(piv)]);
        Rat inv = rat_inv(w[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)]);
        for (int j = 0; j < 8; ++j) w[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            Rat f = w[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int j = 0; j < 8; ++j)
                w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
                    f * w[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
        }
    }
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(4 + j)];
    return r;
}

Mat4 j4() {
    Mat4 m;
    m(0, 2) = 1;
    m(1, 3) = 1;
    m(2, 0) = -1;
    m(3, 1) = -1;
    return m;
}

GSpElement make_gsp(const Mat4& m) {
    Mat4 s = m * j4() * m.transpose();
    Rat nu = s(0, 2);
    Mat4 expected = j4();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (s(i, j) != nu * expected(i, j)) {
                std::ostringstream os;
                os << "make_gsp: symplectic identity fails at entry (" << i << "," << j
                   << "): got " << rat_str(s(i, j)) << ", want " << rat_str(Rat(nu * expected(i, j)));
                throw MathError(os.str());
            }
        }
    if (nu == 0) throw MathError("make_gsp: zero similitude");
    return GSpElement{m, nu};
}

GSpElement gsp_mul(const GSpElement& a, const GSpElement& b) {
    return GSpElement{a.mat * b.mat, a.nu * b.nu};
}

GSpElement gsp_inverse(const GSpElement& g) {
    return GSpElement{g.mat.inverse(), rat_inv(g.nu)};
}

Rat v5_pair(const V5Vector& v, const V5Vector& w) {
    return v[0] * w[4] + w[0] * v[4] + v[1] * w[3] + w[1] * v[3] + 2 * v[2] * w[2];
}

Rat v5_q(const V5Vector& v) {
    return v[0] * v[4] + v[1] * v[3] + v[2] * v[2];
}

Rat v5_norm2(const V5Vector& v) {
    return v[0] * v[0] + v[1] * v[1] + 2 * v[2] * v[2] + v[3] * v[3] + v[4] * v[4];
}

V5Vector act_v5(const V5Vector& v, const GSpElement& g) {
    auto out = act_v5_generic<Rat>(v.c, g.mat, rat_inv(g.nu));
    return V5Vector{out};
}

QuadExtData make_quadext(long D) {
    if (D == 0) throw MathError("make_quadext: D must be nonzero");
    long n = D < 0 ? -D : D;
    for (long d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) throw MathError("make_quadext: D must be squarefree");
    long dm = D % 4;
    if (dm < 0) dm += 4;
    return QuadExtData{D, dm == 1 ? Branch::d_1_mod4 : Branch::d_not_1_mod4};
}

V5Vector make_v_D(const QuadExtData& ext) {
    V5Vector v;
    if (ext.branch == Branch::d_not_1_mod4) {
        v[1] = ext.D;
        v[3] = 1;
    } else {
        v[1] = Rat(ext.D - 1, 4);
        v[2] = Rat(1, 2);
        v[3] = 1;
    }
    return v;
}

bool v5_integral(const V5Vector& v, const QuadExtData& ext, long p) {
    using padic::is_integral;
    if (!is_integral(v[0], p) || !is_integral(v[1], p) || !is_integral(v[3], p) ||
        !is_integral(v[4], p))
        return false;
    Rat b2 = ext.branch == Branch::d_1_mod4 ? Rat(2 * v[2]) : v[2];
    return is_integral(b2, p);
}

bool v5_integral_global(const V5Vector& v, const QuadExtData& ext) {
    auto is_int = [](const Rat& x) { return rat_den(x) == 1; };
    Rat b2 = ext.branch == Branch::d_1_mod4 ? Rat(2 * v[2]) : v[2];
    return is_int(v[0]) && is_int(v[1]) && is_int(v[3]) && is_int(v[4]) && is_int(b2);
}

LNum lmul(const LNum& x, const LNum& y, const QuadExtData& ext) {
    if (ext.branch == Branch::d_not_1_mod4) {
        // alpha^2 = D
        return LNum{x.e * y.e + ext.D * x.h * y.h, x.e * y.h + x.h * y.e};
    }
    // alpha^2 = -alpha + (D-1)/4
    Rat c = Rat(ext.D - 1, 4);
    return LNum{x.e * y.e + c * x.h * y.h, x.e * y.h + x.h * y.e - x.h * y.h};
}

LNum lconj(const LNum& x, const QuadExtData& ext) {
    if (ext.branch == Branch::d_not_1_mod4) return LNum{x.e, -x.h};
    // conjugate root is -1 - alpha
    return LNum{x.e - x.h, -x.h};
}

Rat lnorm(const LNum& x, const QuadExtData& ext) {
    LNum n = lmul(x, lconj(x, ext), ext);
    if (n.h != 0) throw MathError("lnorm: norm not rational");
    return n.e;
}

LNum ladd(const LNum& x, const LNum& y) { return LNum{x.e + y.e, x.h + y.h}; }
LNum lneg(const LNum& x) { return LNum{-x.e, -x.h}; }
bool lis_rational(const LNum& x) { return x.h == 0; }

GL2L gl2l_mul(const GL2L& x, const GL2L& y, const QuadExtData& ext) {
    return GL2L{
        ladd(lmul(x.a, y.a, ext), lmul(x.b, y.c, ext)),
        ladd(lmul(x.a, y.b, ext), lmul(x.b, y.d, ext)),
        ladd(lmul(x.c, y.a, ext), lmul(x.d, y.c, ext)),
        ladd(lmul(x.c, y.b, ext), lmul(x.d, y.d, ext)),
    };
}

LNum gl2l_det(const GL2L& g, const QuadExtData& ext) {
    return ladd(lmul(g.a, g.d, ext), lneg(lmul(g.b, g.c, ext)));
}

Mat4 embed_gl2l_matrix(const GL2L& g, const QuadExtData& ext) {
    const Rat&e1 = g.a.e, &h1 = g.a.h, &e2 = g.b.e, &h2 = g.b.h;
    const Rat&e3 = g.c.e, &h3 = g.c.h, &e4 = g.d.e, &h4 = g.d.h;
    Mat4 m;
    if (ext.branch == Branch::d_not_1_mod4) {
        Rat D = ext.D;
        m(0, 0) = e1;        m(0, 1) = h1;  m(0, 2) = h2;      m(0, 3) = e2;
        m(1, 0) = D * h1;    m(1, 1) = e1;  m(1, 2) = e2;      m(1, 3) = D * h2;
        m(2, 0) = D * h3;    m(2, 1) = e3;  m(2, 2) = e4;      m(2, 3) = D * h4;
        m(3, 0) = e3;        m(3, 1) = h3;  m(3, 2) = h4;      m(3, 3) = e4;
    } else {
        Rat c = Rat(ext.D - 1, 4);
        m(0, 0) = e1;            m(0, 1) = h1;       m(0, 2) = h2;       m(0, 3) = e2 - h2;
        m(1, 0) = c * h1;        m(1, 1) = e1 - h1;  m(1, 2) = e2 - h2;  m(1, 3) = -e2 + h2 * Rat(ext.D + 3, 4);
        m(2, 0) = e3 + c * h3;   m(2, 1) = e3;       m(2, 2) = e4;       m(2, 3) = c * h4;
        m(3, 0) = e3;            m(3, 1) = h3;       m(3, 2) = h4;       m(3, 3) = e4 - h4;
    }
    return m;
}

GSpElement embed_gl2l(const GL2L& g, const QuadExtData& ext) {
    LNum det = gl2l_det(g, ext);
    if (!lis_rational(det) || det.e == 0)
        throw MathError("embed_gl2l: determinant must be rational and nonzero");
    GSpElement el = make_gsp(embed_gl2l_matrix(g, ext));
    if (el.nu != det.e) throw MathError("embed_gl2l: similitude does not match determinant");
    return el;
}

std::array<Rat, 3> chi_T(const QuadExtData& ext) {
    if (ext.branch == Branch::d_not_1_mod4) return {Rat(-ext.D), Rat(0), Rat(1)};
    return {Rat(1 - ext.D, 4), Rat(1, 2), Rat(1)};
}

std::complex<double> chi_value(const GSpElement& u, const QuadExtData& ext,
                               const padic::PrimeCtx* ctx) {
    const Mat4& m = u.mat;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            bool diag = i == j;
            bool upper_right = i < 2 && j >= 2;
            if (diag) {
                if (m(i, j) != 1) throw MathError("chi_value: element is not unipotent");
            } else if (!upper_right) {
                if (m(i, j) != 0) throw MathError("chi_value: element is not block upper unipotent");
            }
        }
    if (m(0, 3) != m(1, 2)) throw MathError("chi_value: upper right block is not symmetric");
    auto T = chi_T(ext);
    Rat arg = T[0] * m(0, 2) + 2 * T[1] * m(0, 3) + T[2] * m(1, 3);
    return ctx ? padic::psi_p(arg, *ctx) : padic::psi_inf(arg);
}

namespace {

Rat abs_at(const Rat& x, long p) {
    return p == 0 ? rat_abs(x) : padic::abs_p(x, p);
}

bool is_siegel_levi(const Mat4& m) {
    return m(0, 2) == 0 && m(0, 3) == 0 && m(1, 2) == 0 && m(1, 3) == 0 && m(2, 0) == 0 &&
           m(2, 1) == 0 && m(3, 0) == 0 && m(3, 1) == 0;
}

} // namespace

Rat delta_P(const GSpElement& g, long p) {
    if (!is_siegel_levi(g.mat)) throw MathError("delta_P: element is not in the Siegel Levi");
    Rat det_t = g.mat(0, 0) * g.mat(1, 1) - g.mat(0, 1) * g.mat(1, 0);
    Rat det_b = g.mat(2, 2) * g.mat(3, 3) - g.mat(2, 3) * g.mat(3, 2);
    Rat r = abs_at(det_t / det_b, p);
    // |det m_t / det m_b|^{3/2}; the ratio nu^2/det(m_b)^2 is a perfect square.
    Rat root = abs_at(g.nu / det_b, p);
    if (root * root != r) throw MathError("delta_P: ratio is not an even power");
    return r * root;
}

Rat delta_B(const GSpElement& g, long p) {
    const Mat4& m = g.mat;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && m(i, j) != 0) throw MathError("delta_B: element is not diagonal");
    // product of the positive roots: |a1^4 a2^2 nu^-3| with a1, a2 the
    // e1-, e2-entries.
    Rat a1 = m(0, 0), a2 = m(1, 1);
    return abs_at(a1, p) * abs_at(a1, p) * abs_at(a1, p) * abs_at(a1, p) * abs_at(a2, p) *
           abs_at(a2, p) / (abs_at(g.nu, p) * abs_at(g.nu, p) * abs_at(g.nu, p));
}

Rat delta_Q(const GSpElement& g, long p) {
    const Mat4& m = g.mat;
    // stabilizer of the line Q f2: last row (0,0,0,d), column 2 zero except a.
    if (m(3, 0) != 0 || m(3, 1) != 0 || m(3, 2) != 0 || m(0, 1) != 0 || m(2, 1) != 0)
        throw MathError("delta_Q: element is not in the Klingen parabolic");
    Rat a = m(1, 1), d = m(3, 3);
    if (a == 0 || d == 0) throw MathError("delta_Q: degenerate Klingen element");
    Rat r = abs_at(a / d, p);
    return r * r;
}

ModulusChars modulus_chars(const GSpElement& g, long p) {
    ModulusChars out;
    try {
        out.dP = delta_P(g, p);
    } catch (const MathError&) {}
    try {
        out.dB = delta_B(g, p);
    } catch (const MathError&) {}
    try {
        out.dQ = delta_Q(g, p);
    } catch (const MathError&) {}
    return out;
}

namespace {

// Dense F_p 4x4 matrices for the orbit enumeration.
struct FpMat {
    long a[4][4];
};

FpMat reduce_mat(const Mat4& m, long p) {
    FpMat r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat x = m(i, j);
            Int den = rat_den(x);
            if (den % p == 0) throw MathError("line_orbits_mod_p: matrix has p in denominator");
            Int pi = Int(p);
            Int num = rat_num(x) % pi;
            if (num < 0) num += pi;
            // inverse of den mod p by Fermat
            long base = static_cast<long>(den % pi), inv = 1, ex = p - 2;
            base %= p;
            while (ex) {
                if (ex & 1) inv = (inv * base) % p;
                base = (base * base) % p;
                ex >>= 1;
            }
            r.a[i][j] = (static_cast<long>(num) % p) * inv % p;
        }
    return r;
}

long line_index(const std::array<long, 4>& v, long p) {
    // normalize: first nonzero coordinate = 1; index lines lexicographically
    std::array<long, 4> w = v;
    int lead = -1;
    for (int i = 0; i < 4; ++i)
        if (w[static_cast<std::size_t>(i)] % p != 0) {
            lead = i;
            break;
        }
    if (lead < 0) return -1;
    long inv = 1, base = w[static_cast<std::size_t>(lead)] % p, ex = p - 2;
    while (ex) {
        if (ex & 1) inv = (inv * base) % p;
        base = (base * base) % p;
        ex >>= 1;
    }
    long idx = 0;
    for (int i = 0; i < 4; ++i) {
        long c = (w[static_cast<std::size_t>(i)] * inv) % p;
        if (c < 0) c += p;
        idx = idx * p + c;
    }
    return idx;
}

} // namespace

OrbitInfo line_orbits_mod_p(const QuadExtData& ext, const padic::PrimeCtx& ctx) {
    long p = ctx.p;
    if (p == 2 || (ext.D % p == 0)) throw MathError("line_orbits_mod_p: bad reduction prime");

    // Generators of GL*_{2,L}(F_p): elementary matrices over R = F_p[x]/(f_D)
    // generated by 1 and alpha (these give SL_2(R) over the semilocal ring R),
    // plus diag(c, 1) for a primitive root c mod p to reach every rational
    // determinant.
    auto one = LNum{1, 0};
    auto zero = LNum{0, 0};
    auto al = LNum{0, 1};
    std::vector<GL2L> gens;
    gens.push_back(GL2L{one, one, zero, one});
    gens.push_back(GL2L{one, al, zero, one});
    gens.push_back(GL2L{one, zero, one, one});
    gens.push_back(GL2L{one, zero, al, one});
    // primitive root mod p
    long c = 2;
    for (; c < p; ++c) {
        long ord = 1, acc = c % p;
        while (acc != 1) {
            acc = (acc * c) % p;
            ++ord;
        }
        if (ord == p - 1) break;
    }
    gens.push_back(GL2L{LNum{Rat(c), 0}, zero, zero, one});

    std::vector<FpMat> gmats;
    for (const auto& g : gens) gmats.push_back(reduce_mat(embed_gl2l_matrix(g, ext), p));

    // canonical line representatives: leading coordinate 1
    std::map<long, int> line_ids;
    std::vector<std::array<long, 4>> lines;
    for (int lead = 0; lead < 4; ++lead) {
        std::array<long, 4> v{};
        v[static_cast<std::size_t>(lead)] = 1;
        std::vector<int> rest;
        for (int i = lead + 1; i < 4; ++i) rest.push_back(i);
        long total = 1;
        for (std::size_t i = 0; i < rest.size(); ++i) total *= p;
        for (long code = 0; code < total; ++code) {
            std::array<long, 4> w = v;
            long cdown = code;
            for (int ri : rest) {
                w[static_cast<std::size_t>(ri)] = cdown % p;
                cdown /= p;
            }
            lines.push_back(w);
        }
    }
    for (std::size_t i = 0; i < lines.size(); ++i) line_ids[line_index(lines[i], p)] = static_cast<int>(i);

    std::vector<int> orbit(lines.size(), -1);
    OrbitInfo info;
    for (std::size_t seed = 0; seed < lines.size(); ++seed) {
        if (orbit[seed] >= 0) continue;
        int id = info.count++;
        long size = 0;
        std::vector<std::size_t> stack{seed};
        orbit[seed] = id;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            ++size;
            for (const auto& g : gmats) {
                std::array<long, 4> img{};
                for (int j = 0; j < 4; ++j) {
                    long acc = 0;
                    for (int i = 0; i < 4; ++i)
                        acc += lines[cur][static_cast<std::size_t>(i)] * g.a[i][j];
                    img[static_cast<std::size_t>(j)] = acc % p;
                }
                auto it = line_ids.find(line_index(img, p));
                if (it == line_ids.end()) throw MathError("line_orbits_mod_p: degenerate image");
                std::size_t tgt = static_cast<std::size_t>(it->second);
                if (orbit[tgt] < 0) {
                    orbit[tgt] = id;
                    stack.push_back(tgt);
                }
            }
        }
        info.sizes.push_back(size);
    }
    std::sort(info.sizes.begin(), info.sizes.end());
    return info;
}

Mat4 random_sp4z_word(std::mt19937_64& rng, int max_len) {
    // generator pool: J4, u(X) for X in {E11, E12+E21, E22} and transposes,
    // GL2 block embeddings diag(A, tA^{-1}) for elementary A.
    std::vector<Mat4> gens;
    gens.push_back(j4());
    auto uX = [](int i, int j) {
        Mat4 m = Mat4::identity();
        m(i, 2 + j) = 1;
        if (i != j) m(j, 2 + i) = 1;
        return m;
    };
    auto lX = [](int i, int j) {
        Mat4 m = Mat4::identity();
        m(2 + i, j) = 1;
        if (i != j) m(2 + j, i) = 1;
        return m;
    };
    gens.push_back(uX(0, 0));
    gens.push_back(uX(0, 1));
    gens.push_back(uX(1, 1));
    gens.push_back(lX(0, 0));
    gens.push_back(lX(0, 1));
    gens.push_back(lX(1, 1));
    auto blockA = [](std::array<std::array<long, 2>, 2> A) {
        // diag(A, tA^{-1}) for det A = 1
        Mat4 m;
        m(0, 0) = A[0][0];
        m(0, 1) = A[0][1];
        m(1, 0) = A[1][0];
        m(1, 1) = A[1][1];
        m(2, 2) = A[1][1];
        m(2, 3) = -A[1][0];
        m(3, 2) = -A[0][1];
        m(3, 3) = A[0][0];
        return m;
    };
    gens.push_back(blockA({{{1, 1}, {0, 1}}}));
    gens.push_back(blockA({{{1, 0}, {1, 1}}}));

    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> len(1, max_len);
    Mat4 acc = Mat4::identity();
    int n = len(rng);
    for (int i = 0; i < n; ++i) acc = acc * gens[pick(rng)];
    return acc;
}

GL2L random_gl2lstar(std::mt19937_64& rng, const QuadExtData& ext) {
    std::uniform_int_distribution<long> coef(-3, 3);
    for (int tries = 0; tries < 1000; ++tries) {
        GL2L g{LNum{Rat(coef(rng)), Rat(coef(rng))}, LNum{Rat(coef(rng)), Rat(coef(rng))},
               LNum{Rat(coef(rng)), Rat(coef(rng))}, LNum{Rat(coef(rng)), Rat(coef(rng))}};
        LNum det = gl2l_det(g, ext);
        if (lis_rational(det) && det.e != 0) return g;
        // force rationality by taking second row = conjugate-scaled first row
        // pattern diag(u, conj(u)) when random search stalls
        if (tries > 500) {
            LNum u{Rat(coef(rng)), Rat(coef(rng))};
            if (lnorm(u, ext) != 0)
                return GL2L{u, LNum{0, 0}, LNum{0, 0}, lconj(u, ext)};
        }
    }
    throw MathError("random_gl2lstar: failed to draw an element");
}

} // namespace spv::gsp4
