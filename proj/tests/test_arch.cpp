#include <doctest.h>

#include "arch.hpp"

#include <random>

using namespace spv;
using namespace spv::arch;

TEST_SUITE_BEGIN("arch");

TEST_CASE("gamma function special values and functional equation") {
    CHECK(std::abs(gamma_fn({1, 0}) - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(gamma_fn({0.5, 0}) - cplx(std::sqrt(M_PI), 0)) < 1e-12);
    CHECK(std::abs(gamma_fn({6, 0}) - cplx(120, 0)) < 1e-9);
    CHECK_THROWS_AS(gamma_fn({-2, 0}), MathError);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> re(0.3, 4.0), im(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        cplx z(re(rng), im(rng));
        cplx lhs = gamma_fn(z + cplx(1, 0));
        cplx rhs = z * gamma_fn(z);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-12);
    }
}

TEST_CASE("w vector: isotropy and the exact pairing identity") {
    auto w = w_vector();
    auto ww = gv5_pair(w, w);
    CHECK(ww.re == 0);
    CHECK(ww.im == 0);

    gsp4::V5Vector v;
    v[0] = 1; // e1 ^ e2
    auto [l1, r1] = w_pairing_identity(v);
    CHECK(l1 == 1);
    CHECK(r1 == 1);

    gsp4::V5Vector b2;
    b2[2] = 1; // e1^f1 - e2^f2
    auto [l2, r2] = w_pairing_identity(b2);
    CHECK(l2 == 0);
    CHECK(r2 == 0);

    std::mt19937_64 rng(4);
    for (int i = 0; i < 1000; ++i) {
        auto vr = random_v5(rng);
        auto [lhs, rhs] = w_pairing_identity(vr);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("H2 action: fixed point, translations, cocycle") {
    auto id = gsp4::make_gsp(gsp4::Mat4::identity());
    auto r = act_h2(to_dmat(id), siegel_i());
    CHECK(std::abs(r.j - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(r.Z.z11 - cplx(0, 1)) < 1e-14);

    // inversion fixes i with j = det(i 1_2)... = -1
    auto inv = act_h2(to_dmat(gsp4::make_gsp(gsp4::j4())), siegel_i());
    CHECK(std::abs(inv.Z.z11 - cplx(0, 1)) < 1e-12);
    CHECK(std::abs(inv.Z.z12) < 1e-12);
    CHECK(std::abs(inv.j - cplx(-1, 0)) < 1e-12);

    // translations: Z -> Z + X0 with j = 1
    gsp4::Mat4 tr = gsp4::Mat4::identity();
    tr(0, 2) = 2;
    tr(0, 3) = 1;
    tr(1, 2) = 1;
    tr(1, 3) = -3;
    auto t = act_h2(to_dmat(gsp4::make_gsp(tr)), siegel_i());
    CHECK(std::abs(t.Z.z11 - cplx(2, 1)) < 1e-14);
    CHECK(std::abs(t.Z.z12 - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(t.j - cplx(1, 0)) < 1e-14);

    // cocycle j(gh, Z) = j(g, hZ) j(h, Z)
    std::mt19937_64 rng(8);
    for (int i = 0; i < 25; ++i) {
        auto g = random_siegel_parabolic(rng);
        auto h = random_siegel_parabolic(rng);
        auto hz = act_h2(to_dmat(h), siegel_i());
        auto ghz = act_h2(to_dmat(gsp4::gsp_mul(g, h)), siegel_i());
        auto g_at = act_h2(to_dmat(g), hz.Z);
        CHECK(std::abs(ghz.j - g_at.j * hz.j) < 1e-9 * std::abs(ghz.j));
    }
}

TEST_CASE("w transforms by j(k, i)^{-1} under K_infty") {
    std::mt19937_64 rng(12);
    std::array<cplx, 5> w{cplx(-1, 0), cplx(0, 1), cplx(0, 0), cplx(0, -1), cplx(1, 0)};
    for (int i = 0; i < 50; ++i) {
        auto k = random_k_infty(rng);
        auto moved = act_v5_cd(w, k);
        auto h = act_h2(k, siegel_i());
        for (int c = 0; c < 5; ++c)
            CHECK(std::abs(moved[static_cast<std::size_t>(c)] -
                           w[static_cast<std::size_t>(c)] / h.j) < 1e-10);
    }
}

TEST_CASE("gv pairing identity against the Q_v formula") {
    std::mt19937_64 rng(16);
    auto id = gsp4::make_gsp(gsp4::Mat4::identity());
    gsp4::V5Vector vc;
    vc[4] = 1; // f1 ^ f2: both sides -1
    auto rc = gv_pairing_check(id, vc);
    CHECK(std::abs(rc.lhs - cplx(-1, 0)) < 1e-14);
    CHECK(std::abs(rc.rhs - cplx(-1, 0)) < 1e-14);

    gsp4::V5Vector va;
    va[0] = 1; // e1 ^ e2: both sides -det(i) = 1
    auto ra = gv_pairing_check(id, va);
    CHECK(std::abs(ra.lhs - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(ra.rhs - cplx(1, 0)) < 1e-14);

    for (int i = 0; i < 200; ++i) {
        auto g = random_siegel_parabolic(rng);
        auto v = random_v5(rng);
        auto r = gv_pairing_check(g, v);
        CHECK(std::abs(r.lhs - r.rhs) < 1e-10 * std::max(1.0, std::abs(r.rhs)));
    }
}

TEST_CASE("the r-star vector has the (det Z, z-entries) coordinates") {
    // nu(g) j(g,i)^{-1} w g^{-1} = (-1, z22, z12, -z11, -det Z) in the wedge
    // coordinates (A, B1, B2, B3, C), for Siegel-parabolic g.
    std::mt19937_64 rng(21);
    std::array<cplx, 5> w{cplx(-1, 0), cplx(0, 1), cplx(0, 0), cplx(0, -1), cplx(1, 0)};
    for (int i = 0; i < 50; ++i) {
        auto g = random_siegel_parabolic(rng);
        auto gi = gsp4::gsp_inverse(g);
        auto moved = act_v5_cd(w, to_dmat(gi));
        auto h = act_h2(to_dmat(g), siegel_i());
        cplx scale = static_cast<double>(g.nu) / h.j;
        for (auto& e : moved) e *= scale;
        CHECK(std::abs(moved[0] - cplx(-1, 0)) < 1e-9);
        CHECK(std::abs(moved[1] - h.Z.z22) < 1e-9);
        CHECK(std::abs(moved[2] - h.Z.z12) < 1e-9);
        CHECK(std::abs(moved[3] - (-h.Z.z11)) < 1e-9);
        CHECK(std::abs(moved[4] - (-h.Z.det())) < 1e-9);
        // isotropy-derived last coefficient: -2W + 2 z12^2 - 2 z11 z22 = 0
        cplx W = moved[4];
        CHECK(std::abs(-2.0 * W + 2.0 * h.Z.z12 * h.Z.z12 - 2.0 * h.Z.z11 * h.Z.z22) < 1e-8);
    }
}

TEST_CASE("contour integral against the residue evaluation") {
    auto r6 = contour_integral_check(6, 1.0, 200);
    CHECK(r6.rel_err < 1e-6);
    auto r2 = contour_integral_check(2, 0.5);
    CHECK(r2.rel_err < 1e-6);

    // y-independence of numeric * e^{2 pi y}
    auto a = contour_integral_check(6, 0.5);
    auto b = contour_integral_check(6, 2.0);
    auto na = a.numeric * std::exp(2 * M_PI * 0.5);
    auto nb = b.numeric * std::exp(2 * M_PI * 2.0);
    CHECK(std::abs(na - nb) / std::abs(na) < 1e-5);
    CHECK_THROWS_AS(contour_integral_check(1, 1.0), MathError);
}

TEST_CASE("f_infty quadrature matches the Gamma formula") {
    auto id = gsp4::make_gsp(gsp4::Mat4::identity());
    for (double s : {0.75, 1.0, 1.5}) {
        auto r = f_infty_check(id, s);
        // closed = pi^{-2s} Gamma(2s) at the identity
        double want = std::pow(M_PI, -2 * s) * gamma_fn(cplx(2 * s, 0)).real();
        CHECK(std::abs(r.closed - want) < 1e-12 * want);
        CHECK(r.rel_err < 1e-8);
    }
    // diagonal with Y = diag(4, 1)
    gsp4::Mat4 m;
    m(0, 0) = 2;
    m(1, 1) = 1;
    m(2, 2) = Rat(1, 2);
    m(3, 3) = 1;
    auto r = f_infty_check(gsp4::make_gsp(m), 1.0);
    CHECK(r.rel_err < 1e-8);
    CHECK_THROWS_AS(f_infty_check(id, -1.0), MathError);
}

TEST_CASE("f_infty data is K_infty-invariant") {
    // both sides of the f_infty identity only see ||f2 g|| and g(i), and both
    // are unchanged under right multiplication by K_infty
    std::mt19937_64 rng(33);
    for (int i = 0; i < 20; ++i) {
        auto g = random_siegel_parabolic(rng);
        auto k = random_k_infty(rng);
        DMat4 gk = to_dmat(g) * k;
        double n_g = 0, n_gk = 0;
        for (int j = 0; j < 4; ++j) {
            n_g += static_cast<double>(g.mat(3, j)) * static_cast<double>(g.mat(3, j));
            n_gk += gk(3, j) * gk(3, j);
        }
        CHECK(std::abs(n_g - n_gk) < 1e-10 * n_g);
        auto z1 = act_h2(to_dmat(g), siegel_i());
        auto z2 = act_h2(gk, siegel_i());
        CHECK(std::abs(z1.Z.z11 - z2.Z.z11) < 1e-9);
        CHECK(std::abs(z1.Z.det() - z2.Z.det()) < 1e-9);
    }
}

TEST_CASE("quadrature values are stable under halving the panel width") {
    auto f = [](double x) -> cplx {
        return std::exp(cplx(0, -2 * M_PI * x)) * std::pow(cplx(x, 1.0), -6);
    };
    cplx coarse = integrate_osc(f, -200, 200, 0.25);
    cplx fine = integrate_osc(f, -200, 200, 0.125);
    CHECK(std::abs(coarse - fine) < 1e-10 * std::abs(coarse));
    // doubling the cutoff moves the value by less than the r=6 tail bound
    cplx wide = integrate_osc(f, -400, 400, 0.25);
    CHECK(std::abs(wide - coarse) < 2 * std::pow(200.0, -6) / M_PI + 1e-12);
}

TEST_CASE("integer Gamma values multiply as expected") {
    // Gamma(2) Gamma(6) = 120, the closed prefactor at s = 1, r = 6
    auto v = gamma_fn({2, 0}) * gamma_fn({6, 0});
    CHECK(std::abs(v - cplx(120, 0)) < 1e-9);
}

TEST_CASE("i_infty gamma profile is s-independent") {
    auto res = i_infty_gamma_check(6, {0.75, 1.0, 1.25}, -1);
    CHECK(res.max_ratio_dev < 1e-4);
    CHECK(res.t_factor_rel_err < 1e-8);
}

TEST_SUITE_END();
