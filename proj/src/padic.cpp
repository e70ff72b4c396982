#include "robbalab/padic.hpp"

#include <sstream>

namespace robbalab {

Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw SchemaError("rational with zero denominator: " + s);
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw SchemaError("not a rational: '" + s + "'");
    }
}

std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << q.get_num();
    if (q.get_den() != 1) os << "/" << q.get_den();
    return os.str();
}

Int PadicScalar::pow_p(long p, long long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

void PadicScalar::check_same_prime(const PadicScalar& o) const {
    if (p_ != o.p_) throw PreconditionError("prime mismatch");
}

PadicScalar PadicScalar::zero(long p, long long abs_prec) {
    PadicScalar z;
    z.p_ = p;
    z.zero_ = true;
    z.prec_ = norm_prec(abs_prec);
    return z;
}

PadicScalar PadicScalar::make(long p, long long val, const Int& unit, long long prec) {
    if (prec <= 0) return zero(p, val);
    PadicScalar r;
    r.p_ = p;
    r.zero_ = false;
    r.val_ = val;
    if (prec >= kPrecExactThreshold) {
        // Effectively exact: keep the integer unreduced (it may be negative).
        r.prec_ = kInfPrec;
        r.unit_ = unit;
    } else {
        r.prec_ = prec;
        Int m = pow_p(p, prec);
        r.unit_ = unit % m;
        if (r.unit_ < 0) r.unit_ += m;
    }
    if (r.unit_ == 0 || r.unit_ % p == 0)
        throw PreconditionError("PadicScalar: unit part divisible by p");
    return r;
}

PadicScalar PadicScalar::from_integer(long p, const Int& n, long long prec) {
    if (n == 0) return zero(p);
    Int u = n;
    long long v = 0;
    while (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return make(p, v, u, prec);
}

PadicScalar PadicScalar::from_rational(long p, const Rat& q, long long prec) {
    if (q == 0) return zero(p);
    PadicScalar num = from_integer(p, q.get_num(), prec);
    PadicScalar den = from_integer(p, q.get_den(), prec);
    return num * den.inv();
}

long long PadicScalar::valuation() const {
    if (zero_) throw PreconditionError("valuation of certified zero");
    return val_;
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    check_same_prime(o);
    if (is_exact_zero()) return o;
    if (o.is_exact_zero()) return *this;
    long long m = std::min(abs_prec(), o.abs_prec());
    if (zero_ && o.zero_) return zero(p_, m);
    long long base = zero_ ? o.val_ : (o.zero_ ? val_ : std::min(val_, o.val_));
    if (base >= m) return zero(p_, m);
    Int s = 0;
    if (!zero_) s += unit_ * pow_p(p_, val_ - base);
    if (!o.zero_) s += o.unit_ * pow_p(p_, o.val_ - base);
    if (m < kPrecExactThreshold) {
        Int mod = pow_p(p_, m - base);
        s %= mod;
        if (s < 0) s += mod;
    }
    if (s == 0) return zero(p_, m);
    long long k = static_cast<long long>(
        mpz_remove(s.get_mpz_t(), s.get_mpz_t(), Int(p_).get_mpz_t()));
    return make(p_, base + k, s, PadicScalar::sat_add(m, -(base + k)));
}

PadicScalar PadicScalar::operator-() const {
    if (zero_) return *this;
    if (prec_ >= kPrecExactThreshold) return make(p_, val_, -unit_, prec_);
    Int m = pow_p(p_, prec_);
    return make(p_, val_, m - unit_, prec_);
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    check_same_prime(o);
    if (zero_ || o.zero_) {
        long long bound = zero_ ? (o.zero_ ? sat_add(prec_, o.prec_) : sat_add(prec_, o.val_))
                                : sat_add(o.prec_, val_);
        return zero(p_, bound);
    }
    long long n = std::min(prec_, o.prec_);
    return make(p_, val_ + o.val_, unit_ * o.unit_, n);
}

PadicScalar PadicScalar::inv() const {
    if (zero_) throw PreconditionError("inversion of certified zero");
    if (prec_ >= kPrecExactThreshold) {
        if (unit_ == 1 || unit_ == -1) return make(p_, -val_, unit_, prec_);
        throw PreconditionError("inversion of an exact non-unit integer needs a finite precision");
    }
    Int m = pow_p(p_, prec_);
    Int r;
    if (!mpz_invert(r.get_mpz_t(), unit_.get_mpz_t(), m.get_mpz_t()))
        throw CertificateViolation("unit not invertible mod p^N");
    return make(p_, -val_, r, prec_);
}

PadicScalar PadicScalar::mul_small(long long n) const {
    return *this * from_integer(p_, il(n), zero_ ? kInfPrec : prec_ + 64);
}

PadicScalar PadicScalar::shift(long long k) const {
    if (zero_) return zero(p_, sat_add(prec_, k));
    return make(p_, val_ + k, unit_, prec_);
}

long PadicScalar::residue() const {
    if (zero_) {
        if (prec_ < 1) throw PreconditionError("residue unknown at this precision");
        return 0;
    }
    if (val_ > 0) return 0;
    if (val_ < 0) throw PreconditionError("residue of non-integral element");
    return static_cast<long>(mpz_fdiv_ui(unit_.get_mpz_t(), static_cast<unsigned long>(p_)));
}

bool PadicScalar::same(const PadicScalar& o) const {
    check_same_prime(o);
    PadicScalar d = *this - o;
    return d.is_zero();
}

std::string PadicScalar::str() const {
    std::ostringstream os;
    if (zero_) {
        if (is_exact_zero())
            os << "0";
        else
            os << "O(" << p_ << "^" << prec_ << ")";
        return os.str();
    }
    os << unit_ << "*" << p_ << "^" << val_ << " + O(" << p_ << "^" << (val_ + prec_) << ")";
    return os.str();
}

PadicScalar PadicScalar::teichmueller(long p, long a, long long prec) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw PreconditionError("teichmueller lift of 0");
    Int m = pow_p(p, prec);
    Int x = a;
    // x -> x^p converges to the (p-1)-st root of unity congruent to a.
    for (long long i = 0; i < prec + 1; ++i) {
        Int y;
        mpz_powm(y.get_mpz_t(), x.get_mpz_t(), Int(p).get_mpz_t(), m.get_mpz_t());
        if (y == x) break;
        x = y;
    }
    return make(p, 0, x, prec);
}

LogNorm lognorm_of(const PadicScalar& a) { return a.lognorm(); }

}  // namespace robbalab
