#include "robbalab/fp_laurent.hpp"

#include <algorithm>
#include <sstream>

namespace robbalab {

void FpLaurent::normalize() {
    // Drop stored coefficients at or beyond the truncation point.
    if (trunc_ < kInfTrunc && hi() > trunc_) {
        long long keep = std::max<long long>(0, trunc_ - lo_);
        coeffs_.resize(static_cast<size_t>(keep));
    }
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        lo_ += static_cast<long long>(lead);
    }
    if (coeffs_.empty()) lo_ = 0;
}

FpLaurent FpLaurent::monomial(long p, long long exp, long coeff) {
    FpLaurent r(p);
    coeff %= p;
    if (coeff < 0) coeff += p;
    if (coeff != 0) {
        r.lo_ = exp;
        r.coeffs_ = {coeff};
    }
    return r;
}

FpLaurent FpLaurent::from_coeffs(long p, long long lo, std::vector<long> coeffs, long long trunc) {
    FpLaurent r(p, trunc);
    r.lo_ = lo;
    r.coeffs_ = std::move(coeffs);
    for (auto& c : r.coeffs_) {
        c %= p;
        if (c < 0) c += p;
    }
    r.normalize();
    return r;
}

long long FpLaurent::v_t() const {
    if (coeffs_.empty()) {
        if (trunc_ >= kInfTrunc) return kInfTrunc;
        throw PreconditionError("v_t undetermined at this truncation");
    }
    return lo_;
}

long FpLaurent::coeff(long long exp) const {
    if (exp >= trunc_) throw PreconditionError("coefficient beyond truncation");
    if (exp < lo_ || exp >= hi()) return 0;
    return coeffs_[static_cast<size_t>(exp - lo_)];
}

FpLaurent FpLaurent::operator+(const FpLaurent& o) const {
    if (p_ != o.p_) throw PreconditionError("prime mismatch");
    FpLaurent r(p_, std::min(trunc_, o.trunc_));
    if (coeffs_.empty() && o.coeffs_.empty()) return r;
    long long lo = std::min(coeffs_.empty() ? o.lo_ : lo_, o.coeffs_.empty() ? lo_ : o.lo_);
    long long hi2 = std::max(hi(), o.hi());
    r.lo_ = lo;
    r.coeffs_.assign(static_cast<size_t>(hi2 - lo), 0);
    for (size_t k = 0; k < coeffs_.size(); ++k) r.coeffs_[static_cast<size_t>(lo_ - lo) + k] += coeffs_[k];
    for (size_t k = 0; k < o.coeffs_.size(); ++k)
        r.coeffs_[static_cast<size_t>(o.lo_ - lo) + k] += o.coeffs_[k];
    for (auto& c : r.coeffs_) c %= p_;
    r.normalize();
    return r;
}

FpLaurent FpLaurent::neg() const {
    FpLaurent r = *this;
    for (auto& c : r.coeffs_) c = (p_ - c) % p_;
    r.normalize();
    return r;
}

FpLaurent FpLaurent::operator*(const FpLaurent& o) const {
    if (p_ != o.p_) throw PreconditionError("prime mismatch");
    // Unknown content at exponent >= trunc feeds products from trunc + v_t(other) on.
    auto sat = [](long long a, long long b) {
        return (a >= kInfTrunc || b >= kInfTrunc) ? kInfTrunc : a + b;
    };
    long long trunc = kInfTrunc;
    if (trunc_ < kInfTrunc) {
        if (!o.coeffs_.empty()) trunc = std::min(trunc, trunc_ + o.lo_);
        trunc = std::min(trunc, sat(trunc_, o.trunc_));
    }
    if (o.trunc_ < kInfTrunc) {
        if (!coeffs_.empty()) trunc = std::min(trunc, o.trunc_ + lo_);
        trunc = std::min(trunc, sat(trunc_, o.trunc_));
    }
    FpLaurent r(p_, trunc);
    if (coeffs_.empty() || o.coeffs_.empty()) return r;
    r.lo_ = lo_ + o.lo_;
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            r.coeffs_[i + j] = (r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j]) % p_;
    }
    r.normalize();
    return r;
}

FpLaurent FpLaurent::shift(long long k) const {
    FpLaurent r = *this;
    r.lo_ += k;
    if (r.trunc_ < kInfTrunc) r.trunc_ += k;
    if (r.coeffs_.empty()) r.lo_ = 0;
    return r;
}

FpLaurent FpLaurent::scalar(long c) const {
    c %= p_;
    if (c < 0) c += p_;
    FpLaurent r = *this;
    for (auto& x : r.coeffs_) x = (x * c) % p_;
    r.normalize();
    return r;
}

FpLaurent FpLaurent::inverse(long long to_trunc) const {
    if (coeffs_.empty()) throw PreconditionError("inverse of series with no known leading term");
    long lead = coeffs_[0];
    long lead_inv = 0;
    for (long x = 1; x < p_; ++x)
        if ((lead * x) % p_ == 1) {
            lead_inv = x;
            break;
        }
    // f = lead*t^lo*(1 - h), h with positive valuation; sum the geometric series.
    long long rel = to_trunc + lo_;  // truncation for the unit-part inverse
    if (rel < 1) throw PreconditionError("inverse truncation leaves no known coefficients");
    FpLaurent unitpart = shift(-lo_).scalar(lead_inv).truncated(rel);
    FpLaurent h = FpLaurent::one(p_) - unitpart;  // v_t(h) >= 1
    FpLaurent acc = FpLaurent::one(p_).truncated(rel);
    FpLaurent term = FpLaurent::one(p_).truncated(rel);
    while (true) {
        term = (term * h).truncated(rel);
        if (term.known_zero()) break;
        acc = acc + term;
    }
    return acc.scalar(lead_inv).shift(-lo_);
}

FpLaurent FpLaurent::truncated(long long new_trunc) const {
    FpLaurent r = *this;
    r.trunc_ = std::min(trunc_, new_trunc);
    r.normalize();
    return r;
}

bool FpLaurent::same(const FpLaurent& o) const {
    long long t = std::min(trunc_, o.trunc_);
    FpLaurent d = (*this - o).truncated(t);
    return d.known_zero();
}

std::string FpLaurent::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        if (!first) os << " + ";
        os << coeffs_[k] << "*t^" << (lo_ + static_cast<long long>(k));
        first = false;
    }
    if (first) os << "0";
    if (trunc_ < kInfTrunc) os << " + O(t^" << trunc_ << ")";
    return os.str();
}

}  // namespace robbalab
