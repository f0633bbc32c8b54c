#include <doctest.h>

#include "local.hpp"

#include <random>

using namespace spv;
using namespace spv::local;
using gsp4::make_quadext;
using padic::PrimeCtx;

TEST_SUITE_BEGIN("local");

namespace {

Mat2 mat2(long a, long b, long c, long d) {
    Mat2 m;
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

} // namespace

TEST_CASE("hermite reduction and delta0_prime") {
    PrimeCtx p5(5);
    auto e1 = make_quadext(-1);
    CHECK(delta0_prime(Mat2::identity(), e1, p5) == 1);
    CHECK(delta0_prime(mat2(5, 2, 0, 1), e1, p5) == 1); // 2^2 = -1 mod 5
    auto e2 = make_quadext(2);
    for (long b = 0; b < 5; ++b) CHECK(delta0_prime(mat2(5, b, 0, 1), e2, p5) == 0);

    // invariance under right GL2(Z)-multiplication
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> sh(-2, 2);
    for (int i = 0; i < 40; ++i) {
        Mat2 m = mat2(25, 7, 0, 1);
        Mat2 k = Mat2::identity();
        for (int s = 0; s < 3; ++s) {
            Rat t(sh(rng));
            if (i % 2) {
                k(0, 0) += t * k(1, 0);
                k(0, 1) += t * k(1, 1);
            } else {
                k(1, 0) += t * k(0, 0);
                k(1, 1) += t * k(0, 1);
            }
        }
        CHECK(delta0_prime(m * k, e1, p5) == delta0_prime(m, e1, p5));
    }
}

TEST_CASE("delta0 on Levi elements") {
    PrimeCtx p5(5);
    auto e1 = make_quadext(-1);
    auto id = gsp4::make_gsp(gsp4::Mat4::identity());
    CHECK(delta0(id, e1, p5) == 1);

    // m_t = p 1_2, m_b = 1_2: |det ratio|^{1/2} = |p^2|^{1/2} = 1/p
    gsp4::Mat4 m;
    m(0, 0) = 5;
    m(1, 1) = 5;
    m(2, 2) = 1;
    m(3, 3) = 1;
    CHECK(delta0(gsp4::make_gsp(m), e1, p5) == Rat(1, 5));

    // Delta_0'(m_b) = 0 annihilates
    auto e2 = make_quadext(2);
    auto c = levi_from_coset(LeviCoset{1, 2, 0}, p5);
    CHECK(delta0(c, e2, p5) == 0);
}

TEST_CASE("alpha_chi_p equals Delta_0 on sample cosets") {
    PrimeCtx p5(5);
    auto e1 = make_quadext(-1);
    auto id = gsp4::make_gsp(gsp4::Mat4::identity());
    auto r = alpha_chi_p(id, e1, p5);
    CHECK(std::abs(r.value - std::complex<double>(1, 0)) < 1e-12);

    // embedded t_A-type element: lambda = p, unit block
    auto tA = levi_from_coset(LeviCoset{0, 0, 1}, p5);
    auto rA = alpha_chi_p(tA, e1, p5);
    CHECK(std::abs(rA.value - std::complex<double>(0.2, 0)) < 1e-9);

    // Delta_0' = 0 forces vanishing
    auto e2 = make_quadext(2);
    auto z = alpha_chi_p(levi_from_coset(LeviCoset{1, 2, 0}, p5), e2, p5);
    CHECK(std::abs(z.value) < 1e-9);
}

TEST_CASE("unipotent integral: lemma values") {
    PrimeCtx p5(5);
    auto e1 = make_quadext(-1);
    auto id = gsp4::make_gsp(gsp4::Mat4::identity());
    CHECK(std::abs(unipotent_integral(id, e1, p5).value - std::complex<double>(1, 0)) < 1e-12);

    auto c = levi_from_coset(LeviCoset{1, 2, 0}, p5); // b^2 = D mod p
    CHECK(std::abs(unipotent_integral(c, e1, p5).value - std::complex<double>(5, 0)) < 1e-9);

    // delta > 0 vanishes: m_b = diag(1, p)
    gsp4::Mat4 m;
    m(0, 0) = 5;
    m(1, 1) = 1;
    m(2, 2) = 1;
    m(3, 3) = 5;
    CHECK(std::abs(unipotent_integral(gsp4::make_gsp(m), e1, p5).value) < 1e-9);
}

TEST_CASE("y_matrix branches and half-integrality") {
    auto e1 = make_quadext(-1);
    auto y0 = y_matrix(1, 0, e1);
    CHECK(y0.x11 == 1);
    CHECK(y0.x12 == 0);
    CHECK(y0.x22 == 1);
    CHECK(y0.half_integral(3));

    auto e5 = make_quadext(5);
    auto y5 = y_matrix(1, 0, e5);
    CHECK(y5.x11 == -1);
    CHECK(y5.x12 == Rat(1, 2));
    CHECK(y5.x22 == 1);
    CHECK(y5.half_integral(3));

    // D=-1, x=9, y=3 (p=3): Y not in p Sym^vee
    auto yp = y_matrix(9, 3, e1);
    CHECK_FALSE(yp.in_p_dual(3));
    CHECK_THROWS_AS(y_matrix(0, 1, e1), MathError);
}

TEST_CASE("levi coset enumeration") {
    PrimeCtx p5(5);
    auto e1 = make_quadext(-1);
    auto cosets = enumerate_levi_cosets(e1, p5, 1);
    std::vector<LeviCoset> want = {
        {0, 0, 0}, {0, 0, 1}, {1, 2, 0}, {1, 3, 0}};
    CHECK(cosets == want);

    CHECK(enumerate_levi_cosets(e1, p5, 0) == std::vector<LeviCoset>{{0, 0, 0}});

    PrimeCtx p3(3);
    auto inert = enumerate_levi_cosets(e1, p3, 1);
    CHECK(inert == std::vector<LeviCoset>{{0, 0, 0}, {0, 0, 1}});
}

TEST_CASE("torus coset enumeration hits the expected normal forms") {
    PrimeCtx p5(5);
    auto e1 = make_quadext(-1); // split at 5
    auto ws = enumerate_torus_L_cosets(e1, p5, 1);
    std::vector<LeviCoset> got;
    for (const auto& w : ws) got.push_back(w.coset);
    std::vector<LeviCoset> want = {{0, 0, 0}, {0, 0, 1}, {1, 2, 0}, {1, 3, 0}};
    CHECK(got == want);

    // trivial element maps to the identity coset
    CHECK(ws.front().coset == LeviCoset{0, 0, 0});

    // ramified: uniformizer lands on (alpha=1, b=0)
    PrimeCtx p3(3);
    auto e3 = make_quadext(3);
    auto wr = enumerate_torus_L_cosets(e3, p3, 1);
    bool has_alpha1 = false;
    for (const auto& w : wr) has_alpha1 |= (w.coset == LeviCoset{1, 0, 0});
    CHECK(has_alpha1);

    // inert: only (0, 0, l)
    auto wi = enumerate_torus_L_cosets(e1, p3, 2);
    for (const auto& w : wi) CHECK(w.coset.alpha_exp == 0);
    CHECK(wi.size() == 3);
}

TEST_CASE("alpha_chi and delta0 are right K_M-invariant") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> sh(-2, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    auto random_km = [&]() {
        // diag(k, nu0 t(k)^{-1}) with k in GL2(Z), nu0 = +-1
        std::array<std::array<long, 2>, 2> k{{{1, 0}, {0, 1}}};
        for (int s2 = 0; s2 < 4; ++s2) {
            long t = sh(rng);
            if (coin(rng)) {
                k[0][0] += t * k[1][0];
                k[0][1] += t * k[1][1];
            } else {
                k[1][0] += t * k[0][0];
                k[1][1] += t * k[0][1];
            }
        }
        long nu0 = coin(rng) ? 1 : -1;
        gsp4::Mat4 km;
        km(0, 0) = k[0][0];
        km(0, 1) = k[0][1];
        km(1, 0) = k[1][0];
        km(1, 1) = k[1][1];
        km(2, 2) = Rat(nu0 * k[1][1]);
        km(2, 3) = Rat(-nu0 * k[1][0]);
        km(3, 2) = Rat(-nu0 * k[0][1]);
        km(3, 3) = Rat(nu0 * k[0][0]);
        return gsp4::make_gsp(km);
    };
    for (auto [p, D] : {std::pair<long, long>{5, -1}, {2, 5}, {3, 3}}) {
        PrimeCtx ctx(p);
        auto ext = make_quadext(D);
        for (const auto& c : enumerate_levi_cosets(ext, ctx, 2)) {
            auto m = levi_from_coset(c, ctx);
            auto mk = gsp4::gsp_mul(m, random_km());
            CHECK(delta0(mk, ext, ctx) == delta0(m, ext, ctx));
            auto a = alpha_chi_p(m, ext, ctx), b = alpha_chi_p(mk, ext, ctx);
            CHECK(std::abs(a.value - b.value) < 1e-12);
        }
    }
}

TEST_CASE("the gamma-adjustment construction is an oracle for split torus cosets") {
    // For p = 5, D = -1 the element with lower-right block [[b + p gamma, D], [1, b + p gamma]]
    // must reduce to the Levi normal form [[p, b], [0, 1]] whenever the
    // shifted diagonal keeps the determinant at valuation 1.
    PrimeCtx p5(5);
    auto e1 = make_quadext(-1);
    for (long long b : {2LL, 3LL}) {
        gsp4::LNum v{Rat(b), 1}; // eps4 = b + 0*p*gamma, eta4 = 1
        Mat2 mb;
        mb(0, 0) = v.e;
        mb(0, 1) = Rat(-1); // D
        mb(1, 0) = 1;
        mb(1, 1) = v.e;
        REQUIRE(padic::val_p(mb.det(), 5) == 1);
        Mat2 h = hermite_upper(mb, 5);
        CHECK(padic::val_p(h(1, 1), 5) == 0);
        CHECK(padic::val_p(h(0, 0), 5) == 1);
        Rat x = h(0, 1) / h(1, 1);
        // residue mod 5 recovers b
        Rat diff = x - b;
        CHECK(padic::val_p(diff, 5) >= 1);
    }
    // and the two degree-one classes give exactly the two (alpha = 1, b) cosets
    auto ws = enumerate_torus_L_cosets(e1, p5, 1);
    int alpha1 = 0;
    for (const auto& w : ws) alpha1 += (w.coset.alpha_exp == 1);
    CHECK(alpha1 == 2);
}

TEST_CASE("bijection and integrand match across a small grid") {
    for (long p : {2L, 3L, 5L}) {
        PrimeCtx ctx(p);
        for (long D : {-1L, 5L, -7L}) {
            auto ext = make_quadext(D);
            auto ws = enumerate_torus_L_cosets(ext, ctx, 2);
            std::vector<LeviCoset> torus;
            for (const auto& w : ws) torus.push_back(w.coset);
            auto minus = enumerate_levi_cosets(ext, ctx, 2, CongOrientation::minus);
            auto plus = enumerate_levi_cosets(ext, ctx, 2, CongOrientation::plus);
            bool ok = (torus == minus) || (torus == plus);
            CAPTURE(p);
            CAPTURE(D);
            CHECK(ok);
            for (const auto& w : ws) {
                auto m = gsp4::embed_gl2l(
                    gsp4::GL2L{w.u, gsp4::LNum{0, 0}, gsp4::LNum{0, 0}, w.v}, ext);
                auto [mt, mb] = levi_blocks(m);
                CHECK(lambda_y_matrix(m, ext).half_integral(p));
                Rat lhs = rat_inv(gsp4::delta_P(m, p)) * padic::abs_p(m.nu / mb.det(), p);
                CHECK(lhs == rat_inv(delta_BL(w.u, w.v, ext, ctx)));
            }
        }
    }
}

TEST_SUITE_END();
