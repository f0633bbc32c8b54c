#include "arch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace spv::arch {

GV5 w_vector() {
    return GV5{GaussRat{-1, 0}, GaussRat{0, 1}, GaussRat{0, 0}, GaussRat{0, -1}, GaussRat{1, 0}};
}

GaussRat gv5_pair(const GV5& v, const GV5& w) {
    GaussRat two{2, 0};
    return v[0] * w[4] + w[0] * v[4] + v[1] * w[3] + w[1] * v[3] + two * (v[2] * w[2]);
}

GaussRat w_pair(const gsp4::V5Vector& v) {
    return GaussRat{v[0] - v[4], v[3] - v[1]};
}

std::pair<Rat, Rat> w_pairing_identity(const gsp4::V5Vector& v) {
    Rat lhs = w_pair(v).norm2();
    Rat rhs = gsp4::v5_norm2(v) - gsp4::v5_pair(v, v);
    return {lhs, rhs};
}

DMat4 DMat4::operator*(const DMat4& o) const {
    DMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0;
            for (int k = 0; k < 4; ++k) acc += (*this)(i, k) * o(k, j);
            r(i, j) = acc;
        }
    return r;
}

DMat4 DMat4::transpose() const {
    DMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
    return r;
}

DMat4 to_dmat(const gsp4::GSpElement& g) {
    DMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = static_cast<double>(g.mat(i, j));
    return r;
}

double similitude(const DMat4& g) {
    // entry (0,2) of g J tg
    double acc = 0;
    // (g J)_{0k} = sum_m g(0,m) J(m,k); J: e1->f1 slot etc.
    double gJ[4];
    gJ[0] = -g(0, 2);
    gJ[1] = -g(0, 3);
    gJ[2] = g(0, 0);
    gJ[3] = g(0, 1);
    for (int k = 0; k < 4; ++k) acc += gJ[k] * g(2, k);
    return acc;
}

SiegelPoint siegel_i() { return SiegelPoint{{0, 1}, {0, 0}, {0, 1}}; }

bool is_siegel_point(const SiegelPoint& z) {
    double y11 = z.z11.imag(), y12 = z.z12.imag(), y22 = z.z22.imag();
    return y11 > 0 && y11 * y22 - y12 * y12 > 0;
}

H2Result act_h2(const DMat4& g, const SiegelPoint& Z) {
    if (similitude(g) <= 0) throw MathError("act_h2: similitude must be positive");
    cplx z[2][2] = {{Z.z11, Z.z12}, {Z.z12, Z.z22}};
    cplx num[2][2], den[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            num[i][j] = g(i, 2 + j);
            den[i][j] = g(2 + i, 2 + j);
            for (int k = 0; k < 2; ++k) {
                num[i][j] += g(i, k) * z[k][j];
                den[i][j] += g(2 + i, k) * z[k][j];
            }
        }
    cplx detden = den[0][0] * den[1][1] - den[0][1] * den[1][0];
    if (std::abs(detden) < 1e-300) throw MathError("act_h2: singular C Z + D");
    cplx inv[2][2] = {{den[1][1] / detden, -den[0][1] / detden},
                      {-den[1][0] / detden, den[0][0] / detden}};
    cplx out[2][2] = {{0, 0}, {0, 0}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) out[i][j] += num[i][k] * inv[k][j];
    SiegelPoint W{out[0][0], (out[0][1] + out[1][0]) / 2.0, out[1][1]};
    return H2Result{W, detden};
}

namespace {
struct CMatAdapter {
    const DMat4* g;
    cplx operator()(int i, int j) const { return cplx((*g)(i, j), 0.0); }
};
} // namespace

std::array<cplx, 5> act_v5_cd(const std::array<cplx, 5>& v, const DMat4& g) {
    double nu = similitude(g);
    if (nu == 0) throw MathError("act_v5_cd: zero similitude");
    CMatAdapter a{&g};
    return gsp4::act_v5_generic<cplx>(v, a, cplx(1.0 / nu, 0.0));
}

cplx gamma_fn(cplx z) {
    // Lanczos, g = 7, 9 coefficients.
    static const double c[9] = {0.99999999999980993,   676.5203681218851,   -1259.1392167224028,
                                771.32342877765313,    -176.61502916214059, 12.507343278686905,
                                -0.13857109526572012,  9.9843695780195716e-6,
                                1.5056327351493116e-7};
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw MathError("gamma_fn: pole at non-positive integer");
    if (z.real() < 0.5) {
        // reflection
        cplx pi(M_PI, 0);
        return pi / (std::sin(pi * z) * gamma_fn(cplx(1, 0) - z));
    }
    z -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + cplx(i, 0));
    cplx t = z + 7.5;
    return std::sqrt(2 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

namespace {

// Gauss-Kronrod 15(7) nodes and weights on [-1, 1].
const double kGK_X[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                         0.741531185599394, 0.586087235467691, 0.405845151377397,
                         0.207784955007898, 0.0};
const double kGK_WK[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                          0.140653259715525, 0.169004726639267, 0.190350578064785,
                          0.204432940075298, 0.209482141084728};
const double kGK_WG[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                          0.417959183673469};

template <class T>
void gk15(const std::function<T(double)>& f, double a, double b, T& kron, double& err) {
    const double h = (b - a) / 2, c = (a + b) / 2;
    T fc = f(c);
    T resk = kGK_WK[7] * fc;
    T resg = kGK_WG[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = h * kGK_X[i];
        T f1 = f(c - dx), f2 = f(c + dx);
        resk += kGK_WK[i] * (f1 + f2);
        if (i % 2 == 1) resg += kGK_WG[i / 2] * (f1 + f2);
    }
    kron = resk * h;
    err = std::abs(resk - resg) * std::abs(h);
}

template <class T>
T adaptive_gk(const std::function<T(double)>& f, double a, double b, double abs_tol) {
    struct Seg {
        double a, b, err;
        T val;
    };
    T total;
    double err0;
    gk15(f, a, b, total, err0);
    std::vector<Seg> segs{{a, b, err0, total}};
    double total_err = err0;
    int iter = 0;
    while (total_err > abs_tol && iter < 20000) {
        // split the segment with the largest error (deterministic)
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        Seg s = segs[worst];
        double m = (s.a + s.b) / 2;
        Seg l{s.a, m, 0, T{}}, r{m, s.b, 0, T{}};
        gk15(f, l.a, l.b, l.val, l.err);
        gk15(f, r.a, r.b, r.val, r.err);
        segs[worst] = l;
        segs.push_back(r);
        total_err += l.err + r.err - s.err;
        ++iter;
    }
    // deterministic pairwise accumulation in position order
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
    T acc{};
    for (const auto& s : segs) acc += s.val;
    return acc;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    return adaptive_gk<double>(f, a, b, abs_tol);
}

cplx integrate_c(const std::function<cplx(double)>& f, double a, double b, double abs_tol) {
    return adaptive_gk<cplx>(f, a, b, abs_tol);
}

// Fixed-width composite panels: reliable for long oscillatory ranges where
// an error-driven splitter would need millions of subdivisions.
cplx integrate_osc(const std::function<cplx(double)>& f, double a, double b, double width) {
    const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / width)));
    const double h = (b - a) / static_cast<double>(n);
    long double re = 0, im = 0, cre = 0, cim = 0;
    for (long i = 0; i < n; ++i) {
        cplx val;
        double err;
        gk15<cplx>(f, a + static_cast<double>(i) * h, a + static_cast<double>(i + 1) * h, val, err);
        long double yr = static_cast<long double>(val.real()) - cre;
        long double tr = re + yr;
        cre = (tr - re) - yr;
        re = tr;
        long double yi = static_cast<long double>(val.imag()) - cim;
        long double ti = im + yi;
        cim = (ti - im) - yi;
        im = ti;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

ContourResult contour_integral_check(int r, double y, double cutoff, double tol) {
    if (r < 2) throw MathError("contour_integral_check: need r >= 2 for absolute convergence");
    ContourResult res{};
    // closed form e^{-2 pi y} (-2 pi i)^r / (r-1)!
    double fact = 1;
    for (int i = 2; i < r; ++i) fact *= i;
    res.closed = std::exp(-2 * M_PI * y) * std::pow(cplx(0, -2 * M_PI), r) / fact;
    double target = tol * std::abs(res.closed) / 4;
    // one integration by parts bounds each one-sided tail by X^{-r} / pi
    double auto_cut = std::pow(2.0 / (M_PI * target), 1.0 / r);
    res.cutoff = std::min(std::max(cutoff, auto_cut), 1e7);
    res.tail_bound = 2.0 * std::pow(res.cutoff, -r) / M_PI;
    // symmetrized integrand on [0, X]; panel width resolves the period-1
    // oscillation of e^{-2 pi i x}
    auto f = [&](double x) -> cplx {
        cplx e = std::exp(cplx(0, -2 * M_PI * x));
        return e * std::pow(cplx(x, y), -r) + std::conj(e) * std::pow(cplx(-x, y), -r);
    };
    res.numeric = integrate_osc(f, 0, res.cutoff, 0.25);
    res.rel_err = std::abs(res.numeric - res.closed) / std::abs(res.closed);
    return res;
}

FInftyResult f_infty_check(const gsp4::GSpElement& g, double s) {
    if (s <= 0) throw MathError("f_infty_check: s must be positive");
    if (g.nu <= 0) throw MathError("f_infty_check: similitude must be positive");
    FInftyResult out{};
    // || f2 g ||^2, exactly then to double
    Rat c2 = 0;
    for (int j = 0; j < 4; ++j) c2 += g.mat(3, j) * g.mat(3, j);
    double cc = static_cast<double>(c2);
    double nu = static_cast<double>(g.nu);
    // |nu|^{2s} * 2 int_0^T t^{4s-1} e^{-pi c^2 t^2} dt
    double T = std::sqrt(60.0 / (M_PI * cc)) + 1.0;
    auto f = [&](double t) { return std::pow(t, 4 * s - 1) * std::exp(-M_PI * cc * t * t); };
    double integral = integrate(f, 0, T, 1e-14);
    out.numeric = std::pow(nu, 2 * s) * 2 * integral;
    auto h2 = act_h2(to_dmat(g), siegel_i());
    double y11 = h2.Z.z11.imag();
    double detY = h2.Z.z11.imag() * h2.Z.z22.imag() - h2.Z.z12.imag() * h2.Z.z12.imag();
    out.closed = std::pow(M_PI, -2 * s) * gamma_fn(cplx(2 * s, 0)).real() *
                 std::pow(std::abs(y11), -2 * s) * std::pow(std::abs(detY), 2 * s);
    out.rel_err = std::abs(out.numeric - out.closed) / std::abs(out.closed);
    return out;
}

IInftyResult i_infty_gamma_check(int r, const std::vector<double>& s_values, long D,
                                 int grid_level) {
    if (D >= 0) throw MathError("i_infty_gamma_check: D must be negative");
    long dm = ((D % 4) + 4) % 4;
    bool shifted = dm == 1;
    double aD = static_cast<double>(-D);
    IInftyResult out{};
    // grid_level tightens every inner quadrature by a decade per level
    const double qtol = 1e-11 * std::pow(10.0, 1 - grid_level);

    auto triple = [&](double s) {
        // innermost: y12; middle: y11 (substituted y11 = w^2); outer: t
        double expo = 2 * s + r - 2;
        auto inner12 = [&](double y11) {
            double R = std::sqrt(50.0 * y11 / (4 * M_PI)) + (shifted ? y11 / 2 : 0.0) + 1.0;
            auto f12 = [&](double y12) {
                double e = y12 * y12 / y11 + (shifted ? y12 : 0.0);
                return std::exp(-4 * M_PI * e);
            };
            return integrate(f12, -R, R, qtol / 10);
        };
        auto f11 = [&](double w) {
            double y11 = w * w;
            if (y11 < 1e-12) return 0.0;
            return 2 * w * std::exp(-4 * M_PI * aD * y11) * inner12(y11);
        };
        double Wmax = std::sqrt(50.0 / (4 * M_PI * aD)) + 1.0;
        double ydouble = integrate(f11, 0, Wmax, qtol);
        auto ft = [&](double t) { return std::pow(t, expo - 1) * std::exp(-4 * M_PI * t); };
        double Tmax = (expo + 60.0) / (4 * M_PI);
        double tint = integrate(ft, 0, Tmax, qtol / 10);
        return tint * ydouble;
    };

    double mean = 0;
    for (double s : s_values) {
        double expo = 2 * s + r - 2;
        double closed = std::pow(4 * M_PI, -expo) * gamma_fn(cplx(expo, 0)).real();
        out.ratios.push_back(triple(s) / closed);
        mean += out.ratios.back();
    }
    mean /= static_cast<double>(out.ratios.size());
    out.max_ratio_dev = 0;
    for (double rt : out.ratios)
        out.max_ratio_dev = std::max(out.max_ratio_dev, std::abs(rt - mean) / std::abs(mean));

    // t-factor cross-check at the first s value
    double s0 = s_values.at(0);
    double expo = 2 * s0 + r - 2;
    auto ft = [&](double t) { return std::pow(t, expo - 1) * std::exp(-4 * M_PI * t); };
    double tint = integrate(ft, 0, (expo + 60.0) / (4 * M_PI), 1e-13);
    double closed = std::pow(4 * M_PI, -expo) * gamma_fn(cplx(expo, 0)).real();
    out.t_factor_rel_err = std::abs(tint - closed) / closed;
    return out;
}

GvPairingResult gv_pairing_check(const gsp4::GSpElement& g, const gsp4::V5Vector& v) {
    GvPairingResult out{};
    gsp4::V5Vector vg = gsp4::act_v5(v, g);
    GaussRat wp = w_pair(vg);
    cplx wv(static_cast<double>(wp.re), static_cast<double>(wp.im));
    auto h2 = act_h2(to_dmat(g), siegel_i());
    out.lhs = static_cast<double>(g.nu) / h2.j * wv;
    const auto& Z = h2.Z;
    out.rhs = -static_cast<double>(v[0]) * Z.det() - static_cast<double>(v[1]) * Z.z11 +
              2.0 * static_cast<double>(v[2]) * Z.z12 + static_cast<double>(v[3]) * Z.z22 -
              static_cast<double>(v[4]);
    return out;
}

DMat4 random_k_infty(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0, 1);
    // random complex 2x2, Gram-Schmidt to unitary A + iB
    cplx m[2][2];
    for (auto& row : m)
        for (auto& e : row) e = cplx(gauss(rng), gauss(rng));
    double n0 = std::sqrt(std::norm(m[0][0]) + std::norm(m[0][1]));
    m[0][0] /= n0;
    m[0][1] /= n0;
    cplx proj = std::conj(m[0][0]) * m[1][0] + std::conj(m[0][1]) * m[1][1];
    m[1][0] -= proj * m[0][0];
    m[1][1] -= proj * m[0][1];
    double n1 = std::sqrt(std::norm(m[1][0]) + std::norm(m[1][1]));
    m[1][0] /= n1;
    m[1][1] /= n1;
    DMat4 k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            k(i, j) = m[i][j].real();
            k(i, 2 + j) = m[i][j].imag();
            k(2 + i, j) = -m[i][j].imag();
            k(2 + i, 2 + j) = m[i][j].real();
        }
    return k;
}

gsp4::GSpElement random_siegel_parabolic(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> entry(-3, 3);
    std::uniform_int_distribution<long> den(1, 3);
    for (;;) {
        Rat a(entry(rng)), b(entry(rng)), c(entry(rng)), d(entry(rng));
        Rat det = a * d - b * c;
        if (det == 0) continue;
        // m_b integral-ish random; nu positive rational
        Rat nu = Rat(den(rng), den(rng));
        // m = u(X) diag(A, nu tA^{-1})
        Rat x11(entry(rng), den(rng)), x12(entry(rng), den(rng)), x22(entry(rng), den(rng));
        gsp4::Mat4 mm;
        mm(0, 0) = a;
        mm(0, 1) = b;
        mm(1, 0) = c;
        mm(1, 1) = d;
        // nu tA^{-1} = nu adj(A)^T / det
        mm(2, 2) = nu * d / det;
        mm(2, 3) = -nu * c / det;
        mm(3, 2) = -nu * b / det;
        mm(3, 3) = nu * a / det;
        gsp4::Mat4 u;
        u = gsp4::Mat4::identity();
        u(0, 2) = x11;
        u(0, 3) = x12;
        u(1, 2) = x12;
        u(1, 3) = x22;
        gsp4::Mat4 g = u * mm;
        try {
            auto el = gsp4::make_gsp(g);
            if (el.nu > 0) return el;
        } catch (const MathError&) {
        }
    }
}

gsp4::V5Vector random_v5(std::mt19937_64& rng, long den_bound) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, den_bound);
    gsp4::V5Vector v;
    for (int i = 0; i < 5; ++i) v[i] = Rat(num(rng), den(rng));
    return v;
}

} // namespace spv::arch
