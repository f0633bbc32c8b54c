// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Tolerances and parameter grids are pinned here; the checks are the same
// registry entries the CLI runs.

#include "checks.hpp"

#include <chrono>
#include <cstdio>
#include <string>

using spv::checks::json;
using spv::checks::run_check;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::string& check_id,
               const json& params) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = run_check(check_id, params);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = report.status == "pass";
    if (!ok) ++failures;
    std::printf("[%s] criterion %2d: %-58s (%.1fs, max_disc=%.3g)\n", ok ? "PASS" : "FAIL",
                number, name.c_str(), secs, report.max_discrepancy);
    if (!ok) {
        std::printf("       status=%s %s\n", report.status.c_str(), report.message.c_str());
        if (!report.witness.is_null())
            std::printf("       witness=%s\n", report.witness.dump().c_str());
    }
    std::fflush(stdout);
}

} // namespace

int main() {
    // 1. Macdonald/Shimura identity, coefficient-wise to Q^8, p in {2,3,5,7}.
    criterion(1, "macdonald identity, exact to Q^8, p in {2,3,5,7}", "macdonald",
              json{{"p", {2, 3, 5, 7}}, {"order", 8}});

    // 2. I_B and I_P counting vs closed forms (ord nu <= 4, shapes a,b <= 3).
    criterion(2, "I_B and I_P by counting vs closed forms, exact", "ib-ip",
              json{{"p", {2, 3, 5}}, {"ord_bound", 4}, {"shape_bound", 3}, {"random", 25}});

    // 3. Factorization count = val_p(t) + 1 up to ord nu = 12.
    criterion(3, "factorization count = val_p(t)+1, ord nu <= 12", "factorization",
              json{{"ord_bound", 12}});

    // 4. alpha_{chi,p} = Delta_0, |diff| < 1e-9, full (p, D) grid.
    criterion(4, "alpha_chi = Delta_0 on Levi cosets and random elements", "alpha-chi",
              json{{"p", {2, 3, 5}}, {"disc", {-1, -2, 2, 3, 5, -7}}, {"val_bound", 3},
                   {"random", 50}, {"tol", 1e-9}});

    // 5. Unipotent character sums equal p^alpha or vanish.
    criterion(5, "unipotent character sums equal p^alpha or 0", "unipotent-lemma",
              json{{"p", {2, 3, 5}}, {"disc", {-1, -2, 2, 3, 5, -7}}, {"val_bound", 3},
                   {"tol", 1e-9}});

    // 6. Coset bijection with exact integrand match, val bound 3.
    criterion(6, "torus/Levi coset bijection + integrand match, exact", "bijection",
              json{{"p", {2, 3, 5}}, {"disc", {-1, -2, 2, 3, 5, -7}}, {"val_bound", 3}});

    // 7. Exact w-identity on 1000 seeded vectors.
    criterion(7, "|(w,v)|^2 = ||v||^2 - (v,v), 1000 exact samples", "w-identity",
              json{{"samples", 1000}});

    // 8. Contour integral, rel err < 1e-6, r in {2,6,8,10}, y in {0.5,1,2}.
    criterion(8, "contour integral vs residue value, rel err < 1e-6", "contour",
              json{{"weight", {2, 6, 8, 10}}, {"y", {0.5, 1.0, 2.0}}, {"tol", 1e-6}});

    // 9. f_infty quadrature < 1e-8 on 20 seeded parabolics.
    criterion(9, "f_infty quadrature vs Gamma formula, rel err < 1e-8", "f-infty",
              json{{"samples", 20}, {"s", {0.75, 1.0, 1.5}}, {"tol", 1e-8}});

    // 10. I_infty Gamma structure: s-constant ratio to 1e-4.
    criterion(10, "triple-integral Gamma profile constant in s to 1e-4", "i-infty-gamma",
              json{{"weight", 6}, {"disc", {-1, -7}}, {"s", {0.75, 1.0, 1.25}}, {"tol", 1e-4}});

    // 11. Orbit counts over F_p.
    criterion(11, "line orbit counts over F_p (1 inert / 3 split)", "orbits",
              json{{"p", {3, 5}}, {"disc", {-1, 1}}});

    // 12. P_D modularity defect < 1e-3, bounded by the computed tail bound.
    criterion(12, "P_D modularity defect < 1e-3 and within tail bound", "pd-modularity",
              json{{"disc", -1}, {"weight", 10}, {"radius", 12.0}, {"tol", 1e-3},
                   {"y_scale", 2.0}});

    // 13. Stabilizer and integral-structure stability.
    criterion(13, "v_D stabilizer and V5(Z) stability, exact", "stabilizer",
              json{{"disc", {-2, 5}}, {"embedded", 50}, {"words", 100}});

    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all 13 acceptance criteria passed\n");
    return 0;
}
