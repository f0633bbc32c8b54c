#include "series.hpp"

#include <sstream>

namespace spv::alg {

TruncatedSeries::TruncatedSeries(int order) : order_(order) {
    if (order < 0) throw MathError("TruncatedSeries: negative order");
    c_.resize(static_cast<std::size_t>(order) + 1);
}

TruncatedSeries TruncatedSeries::one(int order) {
    TruncatedSeries s(order);
    s.c_[0] = LaurentPoly::one();
    return s;
}

TruncatedSeries TruncatedSeries::geo_inverse(const LaurentPoly& m, int order) {
    if (!m.is_monomial()) throw MathError("geo_inverse: input is not a monomial");
    TruncatedSeries s(order);
    LaurentPoly pow = LaurentPoly::one();
    for (int k = 0; k <= order; ++k) {
        s.c_[static_cast<std::size_t>(k)] = pow;
        pow = pow * m;
    }
    return s;
}

const LaurentPoly& TruncatedSeries::coeff(int k) const {
    if (k < 0 || k > order_) throw MathError("TruncatedSeries: coefficient out of range");
    return c_[static_cast<std::size_t>(k)];
}

void TruncatedSeries::set_coeff(int k, const LaurentPoly& c) {
    if (k < 0 || k > order_) throw MathError("TruncatedSeries: coefficient out of range");
    c_[static_cast<std::size_t>(k)] = c;
}

void TruncatedSeries::add_coeff(int k, const LaurentPoly& c) {
    if (k < 0 || k > order_) throw MathError("TruncatedSeries: coefficient out of range");
    c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)] + c;
}

void TruncatedSeries::require_same_order(const TruncatedSeries& o) const {
    if (order_ != o.order_) throw MathError("TruncatedSeries: order mismatch");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    require_same_order(o);
    TruncatedSeries r(order_);
    for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    require_same_order(o);
    TruncatedSeries r(order_);
    for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    require_same_order(o);
    TruncatedSeries r(order_);
    for (int i = 0; i <= order_; ++i) {
        if (c_[i].is_zero()) continue;
        for (int j = 0; i + j <= order_; ++j) {
            if (o.c_[j].is_zero()) continue;
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
        }
    }
    return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
    if (order_ != o.order_) return false;
    for (int k = 0; k <= order_; ++k)
        if (!(c_[k] == o.c_[k])) return false;
    return true;
}

std::optional<std::pair<int, LaurentPoly>>
TruncatedSeries::first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_same_order(b);
    for (int k = 0; k <= a.order_; ++k) {
        LaurentPoly d = a.c_[k] - b.c_[k];
        if (!d.is_zero()) return std::make_pair(k, d);
    }
    return std::nullopt;
}

std::vector<Rat> TruncatedSeries::eval(const Rat& xa, const Rat& xb, const Rat& w) const {
    std::vector<Rat> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c.eval(xa, xb, w));
    return out;
}

std::vector<std::complex<double>> TruncatedSeries::eval(std::complex<double> xa,
                                                        std::complex<double> xb,
                                                        std::complex<double> w) const {
    std::vector<std::complex<double>> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c.eval(xa, xb, w));
    return out;
}

std::string TruncatedSeries::str() const {
    std::ostringstream os;
    for (int k = 0; k <= order_; ++k) {
        if (c_[k].is_zero()) continue;
        if (os.tellp() > 0) os << " + ";
        os << "(" << c_[k].str() << ")Q^" << k;
    }
    if (os.tellp() == 0) return "0";
    return os.str();
}

} // namespace spv::alg
