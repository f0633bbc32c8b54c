#pragma once

#include "rational.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace spv::padic {

inline constexpr long VAL_INF = std::numeric_limits<long>::max();

struct PrimeCtx {
    long p;
    explicit PrimeCtx(long prime);
};

long val_p(const Int& n, long p); // VAL_INF for 0
long val_p(const Rat& x, long p);
bool is_integral(const Rat& x, long p);
// |x|_p as an exact rational (0 for x = 0).
Rat abs_p(const Rat& x, long p);

// p-adic fractional part: the unique element of Z[1/p] in [0,1) with
// x - frac_p(x) in Z_p.
Rat frac_p(const Rat& x, long p);

// psi_p(x) = e^{-2 pi i frac_p(x)}; trivial on Z_p.  The sign pairs with
// psi_inf(x) = e^{2 pi i x} so the global character is trivial on Q.
std::complex<double> psi_p(const Rat& x, const PrimeCtx& ctx);
std::complex<double> psi_inf(const Rat& x);
std::complex<double> psi_inf(double x);

// Representatives of prod_i p^{-N_i} Z_p / p^{M_i} Z_p: coordinate i runs over
// k_i / p^{N_i} with 0 <= k_i < p^{N_i + M_i}; one representative tuple stands
// for a coset of measure p^{-sum M_i} (Z_p^dim has measure 1).
class LatticeQuotient {
public:
    LatticeQuotient(const PrimeCtx& ctx, int dim, int N, int M);
    LatticeQuotient(const PrimeCtx& ctx, std::vector<int> N, std::vector<int> M);

    int dim() const { return static_cast<int>(N_.size()); }
    long p() const { return p_; }
    const std::vector<int>& lower() const { return N_; }
    const std::vector<int>& upper() const { return M_; }
    long long range(int i) const { return range_[i]; } // p^{N_i+M_i}
    double total_reps() const;

    LatticeQuotient with_upper_bump(int dim_index) const;

private:
    long p_;
    std::vector<int> N_, M_;
    std::vector<long long> range_;
};

// One representative: coordinate i is num[i] / p^{den_exp(i)}.
class RepView {
public:
    RepView(const LatticeQuotient& lq, const long long* nums) : lq_(&lq), k_(nums) {}
    int dim() const { return lq_->dim(); }
    long p() const { return lq_->p(); }
    long long num(int i) const { return k_[i]; }
    int den_exp(int i) const { return lq_->lower()[static_cast<std::size_t>(i)]; }
    Rat rat(int i) const;

private:
    const LatticeQuotient* lq_;
    const long long* k_;
};

enum class Stability { off, automatic, full_bump, directional };

struct MeasureResult {
    Rat value;
    bool stability_checked = false;
    bool stable = true;
};

struct CharSumResult {
    std::complex<double> value;
    bool stability_checked = false;
    bool stable = true;
};

namespace detail {

// Odometer enumeration of all representative tuples.
template <class Visit>
void for_each_rep(const LatticeQuotient& lq, Visit&& visit) {
    const int d = lq.dim();
    std::vector<long long> k(static_cast<std::size_t>(d), 0);
    for (;;) {
        visit(static_cast<const long long*>(k.data()));
        int i = 0;
        while (i < d) {
            if (++k[static_cast<std::size_t>(i)] < lq.range(i)) break;
            k[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == d) return;
    }
}

// Pointwise check that f is unchanged by one step of p^{M_i} along each axis.
// Used when the full upper-exponent re-run would be too expensive.
template <class F, class Eq>
bool directional_stable(const LatticeQuotient& lq, F&& f, Eq&& eq) {
    const int d = lq.dim();
    bool ok = true;
    std::vector<long long> shifted(static_cast<std::size_t>(d));
    for_each_rep(lq, [&](const long long* k) {
        if (!ok) return;
        auto base = f(RepView(lq, k));
        for (int i = 0; i < d && ok; ++i) {
            for (int j = 0; j < d; ++j) shifted[static_cast<std::size_t>(j)] = k[j];
            shifted[static_cast<std::size_t>(i)] += lq.range(i);
            if (!eq(base, f(RepView(lq, shifted.data())))) ok = false;
        }
    });
    return ok;
}

double stability_full_cost(const LatticeQuotient& lq);

} // namespace detail

inline constexpr double kStabilityFullCostCap = 2.5e8;

template <class Pred>
MeasureResult measure(Pred&& pred, const LatticeQuotient& lq,
                      Stability mode = Stability::automatic) {
    auto run = [&](const LatticeQuotient& q) {
        unsigned long long count = 0;
        detail::for_each_rep(q, [&](const long long* k) {
            if (pred(RepView(q, k))) ++count;
        });
        Rat weight = 1;
        Int den = 1;
        for (int i = 0; i < q.dim(); ++i) den *= ipow(q.p(), static_cast<unsigned long>(q.upper()[static_cast<std::size_t>(i)]));
        return Rat(Int(count), den);
    };
    MeasureResult res;
    res.value = run(lq);
    if (mode == Stability::off) return res;
    res.stability_checked = true;
    if (mode == Stability::automatic)
        mode = detail::stability_full_cost(lq) <= kStabilityFullCostCap ? Stability::full_bump
                                                                        : Stability::directional;
    if (mode == Stability::full_bump) {
        for (int i = 0; i < lq.dim() && res.stable; ++i)
            if (run(lq.with_upper_bump(i)) != res.value) res.stable = false;
    } else {
        res.stable = detail::directional_stable(
            lq, [&](const RepView& v) { return pred(v) ? 1 : 0; },
            [](int a, int b) { return a == b; });
    }
    return res;
}

template <class F>
CharSumResult char_sum(F&& f, const LatticeQuotient& lq,
                       Stability mode = Stability::automatic) {
    auto run = [&](const LatticeQuotient& q) {
        // Kahan accumulation in long double keeps the sum error well below
        // the 1e-12 tolerances used by the identity checks.
        long double re = 0, im = 0, cre = 0, cim = 0;
        detail::for_each_rep(q, [&](const long long* k) {
            std::complex<double> v = f(RepView(q, k));
            long double yr = static_cast<long double>(v.real()) - cre;
            long double tr = re + yr;
            cre = (tr - re) - yr;
            re = tr;
            long double yi = static_cast<long double>(v.imag()) - cim;
            long double ti = im + yi;
            cim = (ti - im) - yi;
            im = ti;
        });
        double w = 1.0;
        for (int i = 0; i < q.dim(); ++i)
            for (int j = 0; j < q.upper()[static_cast<std::size_t>(i)]; ++j) w /= static_cast<double>(q.p());
        return std::complex<double>(static_cast<double>(re) * w, static_cast<double>(im) * w);
    };
    CharSumResult res;
    res.value = run(lq);
    if (mode == Stability::off) return res;
    res.stability_checked = true;
    if (mode == Stability::automatic)
        mode = detail::stability_full_cost(lq) <= kStabilityFullCostCap ? Stability::full_bump
                                                                        : Stability::directional;
    if (mode == Stability::full_bump) {
        for (int i = 0; i < lq.dim() && res.stable; ++i)
            if (std::abs(run(lq.with_upper_bump(i)) - res.value) > 1e-10 * (1.0 + std::abs(res.value)))
                res.stable = false;
    } else {
        res.stable = detail::directional_stable(
            lq, [&](const RepView& v) { return f(v); },
            [](std::complex<double> a, std::complex<double> b) {
                return std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a));
            });
    }
    return res;
}

// Character sum whose phase is psi_p(n / p^h) with an integer numerator n
// supplied by `phase`.  Representatives are binned by n mod p^h and the root
// of unity weights are applied once per residue, so the enumeration loop is
// pure integer arithmetic.
template <class Pred, class Phase>
CharSumResult char_sum_psi(Pred&& pred, Phase&& phase, int phase_den_exp,
                           const LatticeQuotient& lq,
                           Stability mode = Stability::automatic) {
    const long long ph = [&] {
        long long r = 1;
        for (int i = 0; i < phase_den_exp; ++i) r *= lq.p();
        return r;
    }();
    auto run = [&](const LatticeQuotient& q) {
        std::vector<unsigned long long> hist(static_cast<std::size_t>(ph), 0);
        detail::for_each_rep(q, [&](const long long* k) {
            RepView v(q, k);
            if (!pred(v)) return;
            long long n = phase(v) % ph;
            if (n < 0) n += ph;
            ++hist[static_cast<std::size_t>(n)];
        });
        std::complex<double> acc = 0;
        for (long long n = 0; n < ph; ++n) {
            if (!hist[static_cast<std::size_t>(n)]) continue;
            double a = -2.0 * 3.14159265358979323846 * static_cast<double>(n) / static_cast<double>(ph);
            acc += static_cast<double>(hist[static_cast<std::size_t>(n)]) *
                   std::complex<double>(std::cos(a), std::sin(a));
        }
        double w = 1.0;
        for (int i = 0; i < q.dim(); ++i)
            for (int j = 0; j < q.upper()[static_cast<std::size_t>(i)]; ++j) w /= static_cast<double>(q.p());
        return acc * w;
    };
    CharSumResult res;
    res.value = run(lq);
    if (mode == Stability::off) return res;
    res.stability_checked = true;
    if (mode == Stability::automatic)
        mode = detail::stability_full_cost(lq) <= kStabilityFullCostCap ? Stability::full_bump
                                                                        : Stability::directional;
    if (mode == Stability::full_bump) {
        for (int i = 0; i < lq.dim() && res.stable; ++i)
            if (std::abs(run(lq.with_upper_bump(i)) - res.value) > 1e-10 * (1.0 + std::abs(res.value)))
                res.stable = false;
    } else {
        struct PV { bool in; long long n; };
        res.stable = detail::directional_stable(
            lq,
            [&](const RepView& v) -> PV {
                if (!pred(v)) return {false, 0};
                long long n = phase(v) % ph;
                if (n < 0) n += ph;
                return {true, n};
            },
            [](const PV& a, const PV& b) { return a.in == b.in && (!a.in || a.n == b.n); });
    }
    return res;
}

enum class CongVariant { plain, shifted };

// Number of residues b mod p^alpha with b^2 = D (plain) or b^2 - b = (D-1)/4
// (shifted, requires D = 1 mod 4).  alpha = 0 counts the empty congruence.
long count_sqrt_cong(long D, int alpha, CongVariant variant, const PrimeCtx& ctx);

} // namespace spv::padic
