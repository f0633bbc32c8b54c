#include <doctest.h>

#include "satake.hpp"

#include <random>

using namespace spv;
using namespace spv::satake;
using padic::PrimeCtx;

TEST_SUITE_BEGIN("satake");

TEST_CASE("torus element basics and the basis adapter") {
    CHECK_THROWS_AS(make_torus(1, 0, 0, 0), MathError);
    auto t = make_torus(2, 1, 1, 0);
    CHECK(ord_nu(t) == 2);
    CHECK(val_t(t) == 0);

    PrimeCtx p3(3);
    for (const auto& te : integral_torus_elts(3)) {
        auto g = gsp4::make_gsp(to_gsp4_matrix(te, 3));
        CHECK(from_gsp4_diag(g, 3) == te); // round trip through the reordering
        CHECK(padic::val_p(g.nu, 3) == ord_nu(te));
    }
}

TEST_CASE("satake monomial matches the four cocharacters") {
    using alg::LaurentPoly;
    CHECK(satake_monomial(make_torus(1, 1, 0, 0)) == LaurentPoly::xa());
    CHECK(satake_monomial(make_torus(1, 0, 1, 0)) == LaurentPoly::xb());
    CHECK(satake_monomial(make_torus(0, 1, 0, 1)) == LaurentPoly::xc());
    CHECK(satake_monomial(make_torus(0, 0, 1, 1)) == LaurentPoly::xd());
}

TEST_CASE("ip formula vs counting on elementary shapes") {
    PrimeCtx p3(3);
    local::Mat2 id = local::Mat2::identity();
    CHECK(ip_formula(id, p3) == 1);
    local::Mat2 d;
    d(0, 0) = 9;
    d(1, 1) = 3;
    CHECK(ip_formula(d, p3) == 81); // p^{a + 2b}
    local::Mat2 u;
    u(0, 0) = 3;
    u(0, 1) = 1;
    u(1, 1) = 1;
    CHECK(ip_formula(u, p3) == 3);
    CHECK(ip_by_counting(u, p3).value == 3);
    CHECK(ip_by_counting(d, p3).value == 81);

    local::Mat2 bad;
    bad(0, 0) = Rat(1, 3);
    bad(1, 1) = 1;
    CHECK_THROWS_AS(ip_formula(bad, p3), MathError);
}

TEST_CASE("ib formula vs counting for small orders") {
    for (long p : {2L, 3L}) {
        PrimeCtx ctx(p);
        CHECK(ib_formula(make_torus(0, 0, 0, 0), ctx) == 1);
        // t = p * identity: prefactor p^3, factor (2 - 1/p)
        CHECK(ib_formula(make_torus(1, 1, 1, 1), ctx) ==
              rat_pow(Rat(p), 3) * (Rat(2) - Rat(1, p)));
        for (const auto& te : integral_torus_elts(3)) {
            auto counted = ib_by_counting(te, ctx);
            CAPTURE(te.u);
            CHECK(counted.value == ib_formula(te, ctx));
            CHECK(counted.stable);
        }
    }
}

TEST_CASE("ip handles the reversed divisor shape") {
    PrimeCtx p3(3);
    local::Mat2 m;
    m(0, 0) = 1;
    m(1, 1) = 27; // diag(1, p^3)
    CHECK(ip_formula(m, p3) == 27); // |det|^{-1} Delta_1^{-1} = p^3 * p^0
    CHECK(ip_by_counting(m, p3).value == 27);
}

TEST_CASE("factorization counts") {
    CHECK(factorization_count(make_torus(0, 0, 0, 0)) == 1);
    CHECK(factorization_count(make_torus(1, 1, 1, 1)) == 2); // tA tD and tB tC
    CHECK(factorization_count(make_torus(2, 2, 2, 2)) == 3);
    for (const auto& te : integral_torus_elts(6))
        CHECK(factorization_count(te) == val_t(te) + 1);
}

TEST_CASE("torus sums and the spin factor") {
    using alg::LaurentPoly;
    PrimeCtx p3(3);
    auto plain = torus_sum(SumKind::plain, p3, 1);
    CHECK(plain.coeff(0) == LaurentPoly::one());
    CHECK(plain.coeff(1) ==
          LaurentPoly::xa() + LaurentPoly::xb() + LaurentPoly::xc() + LaurentPoly::xd());

    auto spin = spin_l_factor(1);
    CHECK(spin.coeff(1) ==
          LaurentPoly::xa() + LaurentPoly::xb() + LaurentPoly::xc() + LaurentPoly::xd());

    // Weyl symmetry: swapping X_A and X_B permutes {t_A..t_D}, so the product
    // of geometric series is invariant: check on the evaluation side
    auto s6 = spin_l_factor(6);
    auto v1 = s6.eval(Rat(2), Rat(3), Rat(5));
    auto v2 = s6.eval(Rat(3), Rat(2), Rat(5));
    CHECK(v1 == v2);
}

TEST_CASE("macdonald identity, symbolic and numeric") {
    for (long p : {2L, 3L}) {
        PrimeCtx ctx(p);
        auto res = verify_macdonald(ctx, 6);
        CHECK(res.weighted_ok);
        CHECK(res.plain_ok);
    }
    PrimeCtx p5(5);
    SatakeAssignment num;
    num.numeric = {{Rat(2), Rat(1, 2), Rat(3)}};
    auto res = verify_macdonald(p5, 8, num);
    CHECK(res.weighted_ok);
    CHECK(res.plain_ok);

    // K = 0 is trivially equal
    auto res0 = verify_macdonald(p5, 0);
    CHECK(res0.weighted_ok);
}

TEST_CASE("macdonald identity at a complex Satake point") {
    // the identity also holds after substituting arbitrary complex values,
    // since W is independent of X_A, X_B
    PrimeCtx p3(3);
    int K = 6;
    auto weighted = torus_sum(SumKind::weighted, p3, K);
    auto spin = spin_l_factor(K);
    alg::TruncatedSeries euler(K);
    euler.set_coeff(0, alg::LaurentPoly::one());
    euler.set_coeff(2, alg::LaurentPoly::w() * Rat(-1, 3));
    auto rhs = euler * spin;
    std::complex<double> xa(0.3, 1.1), xb(-0.7, 0.2), w(2.0, -0.5);
    auto lv = weighted.eval(xa, xb, w);
    auto rv = rhs.eval(xa, xb, w);
    for (int k = 0; k <= K; ++k)
        CHECK(std::abs(lv[static_cast<std::size_t>(k)] - rv[static_cast<std::size_t>(k)]) <
              1e-10 * (1 + std::abs(rv[static_cast<std::size_t>(k)])));
}

TEST_CASE("delta_B agrees with the Ad-determinant on the Borel nilradical") {
    // conjugation by a diagonal torus element scales the four unipotent
    // coordinates (n12, n13, n23, n14); the product of the |scalings| is
    // delta_B
    PrimeCtx p5(5);
    auto coords = [](const gsp4::Mat4& n) {
        return std::array<Rat, 4>{n(0, 1), n(0, 2), n(1, 2), n(0, 3)};
    };
    for (const auto& te : integral_torus_elts(4)) {
        auto tmat = to_gsp4_matrix(te, 5);
        // move to the appendix ordering where the Borel is upper triangular
        gsp4::Mat4 ta;
        for (int i = 0; i < 4; ++i) ta(i, i) = rat_pow(Rat(5), te.u[static_cast<std::size_t>(i)]);
        Rat det_ad = 1;
        for (int which = 0; which < 4; ++which) {
            gsp4::Mat4 n = gsp4::Mat4::identity();
            // elementary unipotent in coordinate `which`
            if (which == 0) {
                n(0, 1) = 1;
                n(2, 3) = -1;
            } else if (which == 1) {
                n(0, 2) = 1;
                n(1, 3) = 1; // n24 = n13 when n12 = n23 = 0
            } else if (which == 2) {
                n(1, 2) = 1;
            } else {
                n(0, 3) = 1;
            }
            gsp4::Mat4 tinv;
            for (int i = 0; i < 4; ++i) tinv(i, i) = rat_inv(ta(i, i));
            auto conj = ta * n * tinv;
            det_ad *= coords(conj)[static_cast<std::size_t>(which)];
        }
        Rat lhs = padic::abs_p(det_ad, 5);
        Rat rhs = gsp4::delta_B(gsp4::make_gsp(tmat), 5);
        CAPTURE(te.u);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("unipotent radical parametrization closes under multiplication") {
    // N-coordinates (n12, n13, n23, n14) with n24 = n13 - n12 n23, n34 = -n12:
    // products of two such matrices keep the constraints.
    auto build = [](Rat n12, Rat n13, Rat n23, Rat n14) {
        gsp4::Mat4 m = gsp4::Mat4::identity();
        m(0, 1) = n12;
        m(0, 2) = n13;
        m(0, 3) = n14;
        m(1, 2) = n23;
        m(1, 3) = n13 - n12 * n23;
        m(2, 3) = -n12;
        return m;
    };
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> c(-5, 5);
    for (int i = 0; i < 40; ++i) {
        auto a = build(Rat(c(rng), 3), Rat(c(rng), 3), Rat(c(rng), 3), Rat(c(rng), 3));
        auto b = build(Rat(c(rng), 3), Rat(c(rng), 3), Rat(c(rng), 3), Rat(c(rng), 3));
        auto ab = a * b;
        // still in the appendix Borel's unipotent radical
        CHECK(ab(1, 3) == ab(0, 2) - ab(0, 1) * ab(1, 2));
        CHECK(ab(2, 3) == -ab(0, 1));
        CHECK(ab(1, 0) == 0);
        // and symplectic for the reordered pairing, i.e. gsp4-valid after the
        // basis adapter: check via the J' relation directly
        // J' = [[0, s], [-s, 0]] with s the 2x2 flip
        gsp4::Mat4 Jp;
        Jp(0, 3) = 1;
        Jp(1, 2) = 1;
        Jp(2, 1) = -1;
        Jp(3, 0) = -1;
        CHECK(ab * Jp * ab.transpose() == Jp);
    }
}

TEST_SUITE_END();
