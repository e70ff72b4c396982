#pragma once

#include <string>
#include <vector>

#include "robbalab/padic.hpp"

namespace robbalab {

inline constexpr long long kInfTrunc = std::numeric_limits<long long>::max() / 4;

// Truncated Laurent series over F_p in t. Coefficients are known exactly for
// exponents < trunc and unknown from trunc on (trunc = kInfTrunc means the
// series is exact: zero beyond the stored window).
class FpLaurent {
public:
    FpLaurent() : p_(2), lo_(0), trunc_(kInfTrunc) {}
    explicit FpLaurent(long p, long long trunc = kInfTrunc) : p_(p), lo_(0), trunc_(trunc) {}

    static FpLaurent zero(long p, long long trunc = kInfTrunc) { return FpLaurent(p, trunc); }
    static FpLaurent one(long p) { return monomial(p, 0, 1); }
    static FpLaurent monomial(long p, long long exp, long coeff);
    static FpLaurent from_coeffs(long p, long long lo, std::vector<long> coeffs,
                                 long long trunc = kInfTrunc);

    long prime() const { return p_; }
    long long trunc() const { return trunc_; }
    bool known_zero() const { return coeffs_.empty(); }
    // Exactly the zero series (no unknown part).
    bool is_exact_zero() const { return coeffs_.empty() && trunc_ >= kInfTrunc; }

    // t-adic valuation. Requires a known leading term (or exact zero -> +inf,
    // reported via the is_exact_zero/known_zero accessors).
    long long v_t() const;
    bool v_t_known() const { return !coeffs_.empty() || is_exact_zero(); }

    long coeff(long long exp) const;
    long long lo() const { return lo_; }
    long long hi() const { return lo_ + static_cast<long long>(coeffs_.size()); }

    FpLaurent operator+(const FpLaurent& o) const;
    FpLaurent operator-(const FpLaurent& o) const { return *this + o.neg(); }
    FpLaurent operator*(const FpLaurent& o) const;
    FpLaurent neg() const;
    FpLaurent shift(long long k) const;  // times t^k
    FpLaurent scalar(long c) const;

    // Inverse of a series with known nonzero leading coefficient, computed to
    // the requested truncation by geometric series.
    FpLaurent inverse(long long to_trunc) const;

    FpLaurent truncated(long long new_trunc) const;

    bool same(const FpLaurent& o) const;  // equality on the jointly known range

    std::string str() const;

    const std::vector<long>& raw_coeffs() const { return coeffs_; }

private:
    void normalize();
    long p_;
    long long lo_;
    std::vector<long> coeffs_;  // coeffs_[k] is the coefficient of t^{lo_+k}, in [0,p)
    long long trunc_;
};

}  // namespace robbalab
