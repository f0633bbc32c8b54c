#include <doctest.h>

#include "gsp4.hpp"

#include <random>

using namespace spv;
using namespace spv::gsp4;

TEST_SUITE_BEGIN("gsp4");

TEST_CASE("make_gsp validates the symplectic identity") {
    CHECK(make_gsp(Mat4::identity()).nu == 1);
    CHECK(make_gsp(j4()).nu == 1);
    Mat4 tA;
    tA(0, 0) = 5;
    tA(1, 1) = 5;
    tA(2, 2) = 1;
    tA(3, 3) = 1;
    CHECK(make_gsp(tA).nu == 5); // diag(p,p,1,1) has similitude p

    Mat4 bad = Mat4::identity();
    bad(0, 1) = 1;
    bad(1, 0) = 1; // symmetric corruption, not symplectic
    CHECK_THROWS_WITH_AS(make_gsp(bad), doctest::Contains("entry"), MathError);
}

TEST_CASE("similitude is multiplicative") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        auto ext = make_quadext(-2);
        auto g = embed_gl2l(random_gl2lstar(rng, ext), ext);
        auto h = make_gsp(random_sp4z_word(rng));
        CHECK(gsp_mul(g, h).nu == g.nu * h.nu);
    }
}

TEST_CASE("v_D and the quadratic form") {
    auto e2 = make_quadext(-2);
    CHECK(v5_q(make_v_D(e2)) == -2);
    auto e7 = make_quadext(-7);
    CHECK(v5_q(make_v_D(e7)) == Rat(-7, 4));
    auto e5 = make_quadext(5);
    CHECK(v5_q(make_v_D(e5)) == Rat(5, 4));
    CHECK_THROWS_AS(make_quadext(12), MathError); // not squarefree
    CHECK_THROWS_AS(make_quadext(0), MathError);
}

TEST_CASE("act_v5: identity, q-invariance, similitude twist") {
    std::mt19937_64 rng(23);
    auto ext = make_quadext(-1);
    auto vD = make_v_D(ext);
    CHECK(act_v5(vD, make_gsp(Mat4::identity())) == vD);
    for (int i = 0; i < 30; ++i) {
        auto g = embed_gl2l(random_gl2lstar(rng, ext), ext);
        V5Vector v;
        std::uniform_int_distribution<long> c(-5, 5);
        for (int k = 0; k < 5; ++k) v[k] = Rat(c(rng), 1 + (i % 3));
        CHECK(v5_q(act_v5(v, g)) == v5_q(v));
    }
}

TEST_CASE("embedding formula patterns") {
    // identity of GL_2(L) embeds to the identity of GSp4
    for (long D : {-1L, 5L}) {
        auto e = make_quadext(D);
        GL2L one{LNum{1, 0}, LNum{0, 0}, LNum{0, 0}, LNum{1, 0}};
        CHECK(embed_gl2l(one, e).mat == Mat4::identity());
    }

    // D = -1, diag(alpha, 1): raw matrix has top-left block (0,1;-1,0)
    auto ext = make_quadext(-1);
    GL2L g{LNum{0, 1}, LNum{0, 0}, LNum{0, 0}, LNum{1, 0}};
    Mat4 raw = embed_gl2l_matrix(g, ext);
    CHECK(raw(0, 0) == 0);
    CHECK(raw(0, 1) == 1);
    CHECK(raw(1, 0) == -1);
    CHECK(raw(1, 1) == 0);
    CHECK(raw(2, 2) == 1);
    CHECK(raw(3, 3) == 1);
    // determinant alpha is not rational: the validated embedding rejects it
    CHECK_THROWS_AS(embed_gl2l(g, ext), MathError);

    // D = 5 upper-triangular unipotent lands in the Siegel unipotent radical
    auto e5 = make_quadext(5);
    GL2L n{LNum{1, 0}, LNum{1, 0}, LNum{0, 0}, LNum{1, 0}};
    auto el = embed_gl2l(n, e5);
    for (int i = 0; i < 4; ++i) CHECK(el.mat(i, i) == 1);
    CHECK(el.mat(1, 0) == 0);
    CHECK(el.mat(2, 0) == 0);
    CHECK(el.mat(0, 3) == el.mat(1, 2)); // symmetric upper-right block
}

TEST_CASE("embedding is a homomorphism and stabilizes v_D") {
    std::mt19937_64 rng(31);
    for (long D : {-2L, 5L}) {
        auto ext = make_quadext(D);
        auto vD = make_v_D(ext);
        for (int i = 0; i < 50; ++i) {
            auto a = random_gl2lstar(rng, ext);
            auto b = random_gl2lstar(rng, ext);
            auto ga = embed_gl2l(a, ext), gb = embed_gl2l(b, ext);
            auto gab = embed_gl2l(gl2l_mul(a, b, ext), ext);
            CHECK(gsp_mul(ga, gb).mat == gab.mat);
            CHECK(act_v5(vD, ga) == vD);
        }
    }
}

TEST_CASE("commutation with the epsilon_D matrix (centralizer direction)") {
    // the embedded image commutes with diag(eps_D, t(eps_D))
    for (long D : {-2L, 5L}) {
        auto ext = make_quadext(D);
        Mat4 eps;
        if (ext.branch == Branch::d_not_1_mod4) {
            eps(0, 1) = 1;
            eps(1, 0) = D;
            eps(2, 3) = D;
            eps(3, 2) = 1;
        } else {
            eps(0, 1) = 1;
            eps(1, 0) = Rat(D - 1, 4);
            eps(1, 1) = -1;
            eps(2, 3) = Rat(D - 1, 4);
            eps(3, 2) = 1;
            eps(3, 3) = -1;
        }
        std::mt19937_64 rng(41);
        for (int i = 0; i < 20; ++i) {
            auto g = embed_gl2l(random_gl2lstar(rng, ext), ext).mat;
            CHECK(g * eps == eps * g);
        }
    }
}

TEST_CASE("integral structure is Sp4(Z)-stable, both branches") {
    std::mt19937_64 rng(43);
    for (long D : {-2L, 5L}) {
        auto ext = make_quadext(D);
        for (int i = 0; i < 100; ++i) {
            auto g = make_gsp(random_sp4z_word(rng));
            V5Vector v;
            std::uniform_int_distribution<long> c(-6, 6);
            for (int k = 0; k < 5; ++k) v[k] = c(rng);
            if (ext.branch == Branch::d_1_mod4 && i % 2) v[2] += Rat(1, 2);
            REQUIRE(v5_integral_global(v, ext));
            CHECK(v5_integral_global(act_v5(v, g), ext));
        }
    }
}

TEST_CASE("chi is trivial on the embedded N and matches tr(TX)") {
    std::mt19937_64 rng(47);
    padic::PrimeCtx p5(5);
    for (long D : {-1L, 5L}) {
        auto ext = make_quadext(D);
        std::uniform_int_distribution<long> c(-8, 8);
        for (int i = 0; i < 25; ++i) {
            // unipotent in N: [[1, u2], [0, 1]]
            GL2L n{LNum{1, 0}, LNum{Rat(c(rng)), Rat(c(rng))}, LNum{0, 0}, LNum{1, 0}};
            auto u = embed_gl2l(n, ext);
            CHECK(std::abs(chi_value(u, ext, &p5) - std::complex<double>(1, 0)) < 1e-14);
        }
        // chi(u(X)) = psi(tr(TX)) for random symmetric X
        auto T = chi_T(ext);
        for (int i = 0; i < 25; ++i) {
            Rat x11(c(rng), 5), x12(c(rng), 5), x22(c(rng), 5);
            Mat4 u = Mat4::identity();
            u(0, 2) = x11;
            u(0, 3) = x12;
            u(1, 2) = x12;
            u(1, 3) = x22;
            Rat tr = T[0] * x11 + 2 * T[1] * x12 + T[2] * x22;
            auto lhs = chi_value(make_gsp(u), ext, &p5);
            auto rhs = padic::psi_p(tr, p5);
            CHECK(std::abs(lhs - rhs) < 1e-14);
        }
    }
    CHECK_THROWS_AS(chi_value(make_gsp(j4()), make_quadext(-1), &p5), MathError);
}

TEST_CASE("modulus characters") {
    auto id = make_gsp(Mat4::identity());
    CHECK(delta_P(id, 3) == 1);
    CHECK(delta_B(id, 3) == 1);
    CHECK(delta_Q(id, 3) == 1);

    Mat4 t;
    t(0, 0) = 3;
    t(1, 1) = 3;
    t(2, 2) = 1;
    t(3, 3) = 1;
    CHECK(delta_B(make_gsp(t), 3) == Rat(1, 27)); // |lambda|^3 |t1/t2|

    // Klingen element with a = p, d = 1
    Mat4 q;
    q(0, 0) = 1;
    q(1, 1) = 3;
    q(2, 2) = 3;
    q(3, 3) = 3;
    // nu = a d with the Klingen reading: need gJ tg = nu J; use diag(1,3,3,1)
    Mat4 q2;
    q2(0, 0) = 1;
    q2(1, 1) = 3;
    q2(2, 2) = 3;
    q2(3, 3) = 1;
    auto el = make_gsp(q2);
    CHECK(delta_Q(el, 3) == Rat(1, 9)); // |a/d|^2 = |3|^2

    CHECK_THROWS_AS(delta_Q(make_gsp(j4()), 3), MathError);
    CHECK_THROWS_AS(delta_P(make_gsp(j4()), 3), MathError);

    // archimedean values at p = 0
    CHECK(delta_B(make_gsp(t), 0) == 27);
}

TEST_CASE("line orbits over F_p") {
    padic::PrimeCtx p3(3), p5(5);
    auto inert = line_orbits_mod_p(make_quadext(-1), p3);
    CHECK(inert.count == 1);
    CHECK(inert.sizes == std::vector<long>{40});

    auto split = line_orbits_mod_p(make_quadext(-1), p5); // -1 is a QR mod 5
    CHECK(split.count == 3);
    CHECK(split.sizes == std::vector<long>{6, 6, 144});

    auto d1 = line_orbits_mod_p(make_quadext(1), p3);
    CHECK(d1.count == 3);
    CHECK(d1.sizes == std::vector<long>{4, 4, 32});

    CHECK_THROWS_AS(line_orbits_mod_p(make_quadext(3), p3), MathError); // bad reduction
}

TEST_SUITE_END();
