#include "padic.hpp"

#include <cmath>

namespace spv::padic {

namespace {
bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
} // namespace

PrimeCtx::PrimeCtx(long prime) : p(prime) {
    if (!is_prime_long(prime)) throw MathError("PrimeCtx: " + std::to_string(prime) + " is not prime");
}

long val_p(const Int& n, long p) {
    if (n == 0) return VAL_INF;
    Int m = n;
    long v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

long val_p(const Rat& x, long p) {
    if (x == 0) return VAL_INF;
    return val_p(rat_num(x), p) - val_p(rat_den(x), p);
}

bool is_integral(const Rat& x, long p) { return val_p(x, p) >= 0; }

Rat abs_p(const Rat& x, long p) {
    if (x == 0) return Rat(0);
    long v = val_p(x, p);
    return v >= 0 ? Rat(1, ipow(p, static_cast<unsigned long>(v)))
                  : Rat(ipow(p, static_cast<unsigned long>(-v)));
}

Rat frac_p(const Rat& x, long p) {
    long v = val_p(x, p);
    if (v >= 0 || x == 0) return Rat(0);
    unsigned long k = static_cast<unsigned long>(-v);
    Int pk = ipow(p, k);
    // x = n / (d0 p^k) with p coprime to d0; frac = (n d0^{-1} mod p^k) / p^k.
    Int n = rat_num(x);
    Int d = rat_den(x);
    Int d0 = d;
    while (d0 % p == 0) d0 /= p;
    Int n_mod = n % pk;
    if (n_mod < 0) n_mod += pk;
    // modular inverse of d0 mod p^k by extended Euclid
    Int a = d0 % pk, b = pk, x0 = 1, x1 = 0;
    if (a < 0) a += pk;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    Int inv = x0 % pk;
    if (inv < 0) inv += pk;
    Int num = (n_mod * inv) % pk;
    return Rat(num, pk);
}

std::complex<double> psi_p(const Rat& x, const PrimeCtx& ctx) {
    Rat f = frac_p(x, ctx.p);
    double a = -2.0 * M_PI * static_cast<double>(f);
    return {std::cos(a), std::sin(a)};
}

std::complex<double> psi_inf(const Rat& x) { return psi_inf(static_cast<double>(x)); }

std::complex<double> psi_inf(double x) {
    double a = 2.0 * M_PI * x;
    return {std::cos(a), std::sin(a)};
}

LatticeQuotient::LatticeQuotient(const PrimeCtx& ctx, int dim, int N, int M)
    : LatticeQuotient(ctx, std::vector<int>(static_cast<std::size_t>(dim), N),
                      std::vector<int>(static_cast<std::size_t>(dim), M)) {}

LatticeQuotient::LatticeQuotient(const PrimeCtx& ctx, std::vector<int> N, std::vector<int> M)
    : p_(ctx.p), N_(std::move(N)), M_(std::move(M)) {
    if (N_.size() != M_.size() || N_.empty())
        throw MathError("LatticeQuotient: dimension mismatch");
    for (std::size_t i = 0; i < N_.size(); ++i) {
        if (N_[i] < 0 || M_[i] < 0) throw MathError("LatticeQuotient: negative exponent");
        long long r = 1;
        for (int j = 0; j < N_[i] + M_[i]; ++j) {
            r *= p_;
            if (r > (1LL << 61)) throw MathError("LatticeQuotient: range overflow");
        }
        range_.push_back(r);
    }
}

double LatticeQuotient::total_reps() const {
    double t = 1;
    for (auto r : range_) t *= static_cast<double>(r);
    return t;
}

LatticeQuotient LatticeQuotient::with_upper_bump(int dim_index) const {
    LatticeQuotient q = *this;
    q.M_[static_cast<std::size_t>(dim_index)] += 1;
    q.range_[static_cast<std::size_t>(dim_index)] *= p_;
    return q;
}

Rat RepView::rat(int i) const {
    return Rat(Int(k_[i]), ipow(lq_->p(), static_cast<unsigned long>(den_exp(i))));
}

double detail::stability_full_cost(const LatticeQuotient& lq) {
    return lq.total_reps() * static_cast<double>(lq.dim()) * static_cast<double>(lq.p());
}

long count_sqrt_cong(long D, int alpha, CongVariant variant, const PrimeCtx& ctx) {
    if (alpha < 0) throw MathError("count_sqrt_cong: negative exponent");
    if (alpha == 0) return 1;
    if (variant == CongVariant::shifted) {
        long dm = D % 4;
        if (dm < 0) dm += 4;
        if (dm != 1) throw MathError("count_sqrt_cong: shifted variant requires D = 1 mod 4");
    }
    Int mod = ipow(ctx.p, static_cast<unsigned long>(alpha));
    long count = 0;
    for (Int b = 0; b < mod; ++b) {
        Int val = (variant == CongVariant::plain) ? Int(b * b - D) : Int(b * b - b - (D - 1) / 4);
        Int r = val % mod;
        if (r == 0) ++count;
    }
    return count;
}

} // namespace spv::padic
