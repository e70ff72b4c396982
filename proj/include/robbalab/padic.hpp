#pragma once

#include <limits>
#include <string>

#include "robbalab/rational.hpp"

namespace robbalab {

// Sentinel for "known to be exactly zero" / unbounded precision.
inline constexpr long long kInfPrec = std::numeric_limits<long long>::max() / 4;

// Precisions at or beyond this threshold count as exact knowledge.
inline constexpr long long kPrecExactThreshold = 1LL << 20;

// Capped-precision element of Q_p: unit * p^val known modulo p^{val+prec},
// with unit in [1, p^prec) coprime to p. The certified zero is a distinguished
// state (val = +inf); it still carries the absolute precision to which the
// vanishing is known (prec = kInfPrec for the exact zero), so that arithmetic
// never reports more than it can certify.
class PadicScalar {
public:
    PadicScalar() : p_(2), zero_(true), val_(0), prec_(kInfPrec) {}

    static PadicScalar zero(long p, long long abs_prec = kInfPrec);
    static PadicScalar from_integer(long p, const Int& n, long long prec);
    static PadicScalar from_rational(long p, const Rat& q, long long prec);
    // unit*p^val + O(p^{val+prec}); unit is reduced mod p^prec and must stay a unit.
    static PadicScalar make(long p, long long val, const Int& unit, long long prec);

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    long long valuation() const;  // throws on certified zero
    const Int& unit() const { return unit_; }
    long long precision() const { return prec_; }
    bool is_exact_zero() const { return zero_ && prec_ >= kInfPrec; }

    // Absolute precision: the element is known modulo p^{abs_prec()}.
    long long abs_prec() const { return zero_ ? prec_ : sat_add(val_, prec_); }

    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-() const;
    PadicScalar operator-(const PadicScalar& o) const { return *this + (-o); }
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar inv() const;
    PadicScalar mul_small(long long n) const;  // exact integer multiple
    PadicScalar shift(long long k) const;      // times p^k

    // Reduce a p-adic integer mod p; errors when the residue is not certified.
    long residue() const;

    LogNorm lognorm() const { return zero_ ? LogNorm::bot() : LogNorm(rl(val_)); }

    // Agreement to the shared precision.
    bool same(const PadicScalar& o) const;

    std::string str() const;

    // Teichmueller lift of a in F_p^* to precision prec: the unique (p-1)-st
    // root of unity congruent to a mod p.
    static PadicScalar teichmueller(long p, long a, long long prec);

    // Saturating precision arithmetic: anything at or beyond kInfPrec/4 is
    // treated as exact knowledge.
    static long long norm_prec(long long x) { return x >= kPrecExactThreshold ? kInfPrec : x; }
    static long long sat_add(long long a, long long b) {
        if (a >= kPrecExactThreshold || b >= kPrecExactThreshold) return kInfPrec;
        return a + b;
    }

private:
    void check_same_prime(const PadicScalar& o) const;
    static Int pow_p(long p, long long e);

    long p_;
    bool zero_;
    long long val_;
    Int unit_;
    long long prec_;
};

LogNorm lognorm_of(const PadicScalar& a);

}  // namespace robbalab
