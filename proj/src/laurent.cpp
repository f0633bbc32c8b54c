#include "laurent.hpp"

#include <sstream>

namespace spv::alg {

LaurentPoly LaurentPoly::constant(const Rat& c) {
    LaurentPoly p;
    p.add_term({0, 0, 0}, c);
    return p;
}

LaurentPoly LaurentPoly::monomial(const Rat& c, int ea, int eb, int ew) {
    LaurentPoly p;
    p.add_term({ea, eb, ew}, c);
    return p;
}

void LaurentPoly::add_term(const Exp& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, Rat(-c));
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, Rat(-c));
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, Rat(c1 * c2));
    return r;
}

LaurentPoly LaurentPoly::operator*(const Rat& c) const {
    LaurentPoly r;
    if (c == 0) return r;
    for (const auto& [e, co] : terms_) r.terms_.emplace(e, Rat(co * c));
    return r;
}

Rat LaurentPoly::eval(const Rat& xa, const Rat& xb, const Rat& w) const {
    Rat acc = 0;
    for (const auto& [e, c] : terms_)
        acc += c * rat_pow(xa, e[0]) * rat_pow(xb, e[1]) * rat_pow(w, e[2]);
    return acc;
}

std::complex<double> LaurentPoly::eval(std::complex<double> xa, std::complex<double> xb,
                                       std::complex<double> w) const {
    std::complex<double> acc = 0;
    auto cpow = [](std::complex<double> b, int e) {
        std::complex<double> r = 1;
        bool neg = e < 0;
        for (int i = 0; i < (neg ? -e : e); ++i) r *= b;
        return neg ? 1.0 / r : r;
    };
    for (const auto& [e, c] : terms_)
        acc += static_cast<double>(c) * cpow(xa, e[0]) * cpow(xb, e[1]) * cpow(w, e[2]);
    return acc;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        const char* names[3] = {"XA", "XB", "W"};
        for (int i = 0; i < 3; ++i)
            if (e[i] != 0) os << "*" << names[i] << "^" << e[i];
    }
    return os.str();
}

} // namespace spv::alg
