#pragma once

#include "rational.hpp"

#include <array>
#include <complex>
#include <map>
#include <string>

namespace spv::alg {

// Laurent polynomials over Q in the three independent Satake variables
// X_A = alpha(t_A), X_B = alpha(t_B) and W = alpha(p*1_4).  The remaining
// Satake values are derived: X_C = W X_B^{-1}, X_D = W X_A^{-1}, which keeps
// the relation X_A X_D = X_B X_C = W out of the data model.
class LaurentPoly {
public:
    using Exp = std::array<int, 3>; // (e_A, e_B, e_W)

    LaurentPoly() = default;

    static LaurentPoly constant(const Rat& c);
    static LaurentPoly monomial(const Rat& c, int ea, int eb, int ew);
    static LaurentPoly one() { return constant(1); }
    static LaurentPoly xa() { return monomial(1, 1, 0, 0); }
    static LaurentPoly xb() { return monomial(1, 0, 1, 0); }
    static LaurentPoly w() { return monomial(1, 0, 0, 1); }
    static LaurentPoly xc() { return monomial(1, 0, -1, 1); } // W X_B^{-1}
    static LaurentPoly xd() { return monomial(1, -1, 0, 1); } // W X_A^{-1}

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exp, Rat>& terms() const { return terms_; }

    void add_term(const Exp& e, const Rat& c);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator*(const Rat& c) const;
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

    // Exact evaluation at X_A = xa, X_B = xb, W = w (all nonzero if inverted).
    Rat eval(const Rat& xa, const Rat& xb, const Rat& w) const;
    std::complex<double> eval(std::complex<double> xa, std::complex<double> xb,
                              std::complex<double> w) const;

    std::string str() const;

private:
    std::map<Exp, Rat> terms_; // no zero coefficients stored
};

} // namespace spv::alg
