#pragma once

#include "laurent.hpp"

#include <optional>
#include <vector>

namespace spv::alg {

// Power series in the formal variable Q = p^{3/2-s}, truncated at order K,
// with LaurentPoly coefficients.  For an integral torus element t,
// |nu(t)|^{s-3/2} = Q^{ord_p nu(t)}, so Euler factors live here as truncated
// geometric-series products.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order);

    static TruncatedSeries one(int order);
    // (1 - m Q)^{-1} truncated: sum_{k<=K} m^k Q^k.  m must be a monomial.
    static TruncatedSeries geo_inverse(const LaurentPoly& m, int order);

    int order() const { return order_; }
    const LaurentPoly& coeff(int k) const;
    void set_coeff(int k, const LaurentPoly& c);
    void add_coeff(int k, const LaurentPoly& c);

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    bool operator==(const TruncatedSeries& o) const;

    // Lowest Q-degree where the two series differ, with the difference.
    static std::optional<std::pair<int, LaurentPoly>>
    first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b);

    std::vector<Rat> eval(const Rat& xa, const Rat& xb, const Rat& w) const;
    std::vector<std::complex<double>> eval(std::complex<double> xa, std::complex<double> xb,
                                           std::complex<double> w) const;

    std::string str() const;

private:
    void require_same_order(const TruncatedSeries& o) const;
    int order_;
    std::vector<LaurentPoly> c_; // c_[k] = coefficient of Q^k
};

} // namespace spv::alg
