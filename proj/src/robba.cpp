#include "robbalab/robba.hpp"

#include <algorithm>
#include <sstream>

namespace robbalab {

namespace {

std::optional<Rat> opt_min(std::optional<Rat> a, std::optional<Rat> b) {
    if (!a) return b;
    if (!b) return a;
    return *a <= *b ? a : b;
}

// Positive-side slope sigma = s - delta and negative-side slope nu = s + delta
// of the tail profile C + s*j - delta*|j|.
Rat slope_pos(const RobbaCert& c) { return c.s - c.delta; }
Rat slope_neg(const RobbaCert& c) { return c.s + c.delta; }

RobbaCert join_certs(const RobbaElement& f, const RobbaElement& g, Rat* Cf, Rat* Cg) {
    // Restate both certificates with a common (alpha, sigma, nu); sigma can
    // only grow (weaker on +inf) and nu only shrink (weaker on -inf), both
    // free of charge.
    const bool fe = f.tail_exact(), ge = g.tail_exact();
    RobbaCert a = f.cert(), b = g.cert();
    RobbaCert r;
    if (fe && ge) {
        r = RobbaCert{1, 1, 0, 2};
    } else if (fe) {
        r = b;
    } else if (ge) {
        r = a;
    } else {
        if (a.alpha != b.alpha)
            throw PreconditionError("growth certificates at different eta exponents");
        Rat sig = std::max(slope_pos(a), slope_pos(b));
        Rat nu = std::min(slope_neg(a), slope_neg(b));
        if (!(nu > sig))
            throw PreconditionError("growth certificates do not close at this truncation");
        r = RobbaCert{a.alpha, (sig + nu) / 2, std::max(a.C, b.C), (nu - sig) / 2};
    }
    if (Cf) *Cf = fe ? Rat(0) : a.C;
    if (Cg) *Cg = ge ? Rat(0) : b.C;
    return r;
}

// Upper bound on log_p||f_j||_eta over the whole line: the tail certificate
// extended across the window.
std::optional<Rat> global_profile_C(const RobbaElement& f, const RobbaCert& at) {
    std::optional<Rat> C;
    if (!f.tail_exact()) C = f.cert().C;
    for (const auto& [j, c] : f.coeffs()) {
        auto w = c.eta_w_bound(at.alpha);
        if (!w) continue;
        Rat L = -*w;
        Rat lin = at.s * rl(j) - at.delta * rl(j < 0 ? -j : j);
        C = C ? std::max(*C, L - lin) : L - lin;
    }
    return C;
}

}  // namespace

// --- RobbaElement -------------------------------------------------------------

RobbaElement RobbaElement::zero(long p, char var, OCTag base) {
    RobbaElement r;
    r.p_ = p;
    r.var_ = var;
    r.base_ = base;
    return r;
}

RobbaElement RobbaElement::monomial(long long j, const OCLaurent& c, char var) {
    RobbaElement r = zero(c.prime(), var, c.tag() == OCTag::E ? OCTag::E : OCTag::Edagger);
    if (!c.is_exact_zero()) {
        r.jmin_ = r.jmax_ = j;
        r.f_.emplace(j, c);
    }
    return r;
}

RobbaElement RobbaElement::constant(const OCLaurent& c, char var) { return monomial(0, c, var); }

RobbaElement RobbaElement::one(long p, long long prec, char var) {
    return monomial(0, OCLaurent::one(p, prec), var);
}

void RobbaElement::set_cert(const RobbaCert& c, bool tail_exact) {
    if (c.alpha <= 0 || c.s <= 0 || c.delta <= 0) throw SchemaError("growth certificate needs alpha, s, delta > 0");
    cert_ = c;
    tail_exact_ = tail_exact;
}

OCLaurent RobbaElement::coeff(long long j) const {
    auto it = f_.find(j);
    if (it != f_.end()) return it->second;
    if (j >= jmin_ && j <= jmax_) return OCLaurent::zero(p_, base_);
    if (tail_exact_) return OCLaurent::zero(p_, base_);
    // Unknown tail coefficient: an envelope with log norm <= C + s*j - delta*|j|.
    Rat L = cert_.C + cert_.s * rl(j) - cert_.delta * rl(j < 0 ? -j : j);
    OCLaurent env = OCLaurent::zero(p_, base_);
    env.set_cert({cert_.alpha, L}, false);
    env.set_upper_floor(rat_ceil(-L));
    return env;
}

void RobbaElement::set_coeff(long long j, const OCLaurent& c) {
    if (c.prime() != p_) throw PreconditionError("prime mismatch");
    if (window_empty()) {
        jmin_ = jmax_ = j;
    } else {
        jmin_ = std::min(jmin_, j);
        jmax_ = std::max(jmax_, j);
    }
    if (c.is_exact_zero())
        f_.erase(j);
    else
        f_[j] = c;
}

bool RobbaElement::is_integral() const {
    for (const auto& [j, c] : f_) {
        (void)j;
        auto pf = c.pi_floor();
        if (pf && *pf < 0) return false;
    }
    if (!tail_exact_) {
        // tail coefficients obey ||f_j|| <= p^{C + s j - delta|j|}: integral
        // only when that bound stays <= 1 on both sides.
        if (slope_pos(cert_) > 0 || slope_neg(cert_) < 0) return false;
        Rat top1 = cert_.C + cert_.s * rl(jmax_ + 1) - cert_.delta * rl(std::llabs(jmax_ + 1));
        Rat top2 = cert_.C + cert_.s * rl(jmin_ - 1) - cert_.delta * rl(std::llabs(jmin_ - 1));
        if (top1 > 0 || top2 > 0) return false;
    }
    return true;
}

bool RobbaElement::is_exact_zero() const {
    if (!tail_exact_) return false;
    for (const auto& [j, c] : f_) {
        (void)j;
        if (!c.is_exact_zero()) return false;
    }
    return true;
}

RobbaElement RobbaElement::operator+(const RobbaElement& o) const {
    if (p_ != o.p_) throw PreconditionError("prime mismatch");
    if (var_ != o.var_) throw PreconditionError("series variable mismatch");
    RobbaElement r = zero(p_, var_, tag_join(base_, o.base_));
    long long lo, hi;
    if (window_empty() && o.window_empty()) {
        lo = 0;
        hi = -1;
    } else if (window_empty()) {
        lo = o.jmin_;
        hi = o.jmax_;
    } else if (o.window_empty()) {
        lo = jmin_;
        hi = jmax_;
    } else {
        lo = std::min(jmin_, o.jmin_);
        hi = std::max(jmax_, o.jmax_);
    }
    r.jmin_ = lo;
    r.jmax_ = hi;
    for (long long j = lo; j <= hi; ++j) {
        OCLaurent c = coeff(j) + o.coeff(j);
        if (!c.is_exact_zero()) r.f_.emplace(j, c);
    }
    r.tail_exact_ = tail_exact_ && o.tail_exact_;
    if (!r.tail_exact_) {
        RobbaCert jc = join_certs(*this, o, nullptr, nullptr);
        // For addition both tails obey their own profile; at the joint slopes
        // the max of the C's dominates.
        Rat C = 0;
        bool first = true;
        for (const RobbaElement* e : {this, &o}) {
            if (e->tail_exact()) continue;
            C = first ? e->cert().C : std::max(C, e->cert().C);
            first = false;
        }
        jc.C = C;
        r.cert_ = jc;
    }
    return r;
}

RobbaElement RobbaElement::operator-() const {
    RobbaElement r = *this;
    for (auto& [j, c] : r.f_) {
        (void)j;
        c = -c;
    }
    return r;
}

RobbaElement RobbaElement::operator-(const RobbaElement& o) const { return *this + (-o); }

RobbaElement RobbaElement::operator*(const RobbaElement& o) const {
    if (p_ != o.p_) throw PreconditionError("prime mismatch");
    if (var_ != o.var_) throw PreconditionError("series variable mismatch");
    RobbaElement r = zero(p_, var_, tag_join(base_, o.base_));
    if (is_exact_zero() || o.is_exact_zero()) return r;
    long long lo = 0, hi = -1;
    if (!window_empty() && !o.window_empty()) {
        lo = jmin_ + o.jmin_;
        hi = jmax_ + o.jmax_;
    }
    r.jmin_ = lo;
    r.jmax_ = hi;
    r.tail_exact_ = tail_exact_ && o.tail_exact_;
    std::optional<Rat> prodC;
    RobbaCert jc{1, 1, 0, 2};
    if (!r.tail_exact_) {
        jc = join_certs(*this, o, nullptr, nullptr);
        auto Cf = global_profile_C(*this, jc);
        auto Cg = global_profile_C(o, jc);
        if (!Cf || !Cg) {
            r.tail_exact_ = true;  // one side certified zero everywhere
        } else {
            prodC = *Cf + *Cg;
            jc.C = *prodC;
            r.cert_ = jc;
        }
    }
    for (long long n = lo; n <= hi; ++n) {
        OCLaurent acc = OCLaurent::zero(p_, r.base_);
        for (const auto& [i, ci] : f_) {
            auto it = o.f_.find(n - i);
            if (it == o.f_.end()) continue;
            acc = acc + ci * it->second;
        }
        if (prodC) {
            // Envelope for the splits involving an unknown tail coefficient.
            Rat L = *prodC + jc.s * rl(n) - jc.delta * rl(n < 0 ? -n : n);
            OCLaurent env = OCLaurent::zero(p_, r.base_);
            env.set_cert({jc.alpha, L}, false);
            env.set_upper_floor(rat_ceil(-L));
            acc = acc + env;
        }
        if (!acc.is_exact_zero()) r.f_.emplace(n, acc);
    }
    return r;
}

RobbaElement RobbaElement::scalar_mul(const OCLaurent& c) const {
    return *this * constant(c, var_);
}

RobbaElement RobbaElement::mul_y_power(long long k) const {
    RobbaElement r = zero(p_, var_, base_);
    if (!window_empty()) {
        r.jmin_ = jmin_ + k;
        r.jmax_ = jmax_ + k;
    }
    for (const auto& [j, c] : f_) r.f_.emplace(j + k, c);
    r.tail_exact_ = tail_exact_;
    // L_{j} <= C + s(j-k) - delta|j-k| <= (C - s k + delta |k|) + s j - delta|j|
    r.cert_ = {cert_.alpha, cert_.s, cert_.C - cert_.s * rl(k) + cert_.delta * rl(std::llabs(k)),
               cert_.delta};
    return r;
}

RobbaElement RobbaElement::mul_small(long long n) const {
    return scalar_mul(OCLaurent::constant(PadicScalar::from_integer(p_, il(n), kInfPrec)));
}

RobbaElement RobbaElement::derivative() const {
    RobbaElement r = zero(p_, var_, base_);
    for (const auto& [j, c] : f_) {
        if (j == 0) continue;
        r.set_coeff(j - 1, c.mul_small(j));
    }
    if (!tail_exact_) {
        // |j*f_j| <= |f_j|; index shift costs s + delta as usual.
        r.tail_exact_ = false;
        r.cert_ = {cert_.alpha, cert_.s, cert_.C + cert_.s + cert_.delta, cert_.delta};
    }
    return r;
}

RobbaElement RobbaElement::clamped(long long new_jmin, long long new_jmax,
                                   std::optional<Rat> at_alpha) const {
    if (window_empty()) return *this;
    long long lo = std::max(new_jmin, jmin_);
    long long hi = std::min(new_jmax, jmax_);
    RobbaElement r = zero(p_, var_, base_);
    r.jmin_ = lo;
    r.jmax_ = hi;
    RobbaCert c = tail_exact_ ? RobbaCert{at_alpha ? *at_alpha : Rat(1), 1, 0, 2} : cert_;
    if (at_alpha && !tail_exact_ && *at_alpha != cert_.alpha)
        throw PreconditionError("clamp at a different alpha than the existing certificate");
    bool dropped = false;
    std::optional<Rat> C = tail_exact_ ? std::nullopt : std::optional<Rat>(cert_.C);
    for (const auto& [j, co] : f_) {
        if (j >= lo && j <= hi) {
            r.f_.emplace(j, co);
            continue;
        }
        dropped = true;
        auto w = co.eta_w_bound(c.alpha);
        if (!w) continue;
        Rat L = -*w;
        Rat need = L - c.s * rl(j) + c.delta * rl(j < 0 ? -j : j);
        C = C ? std::max(*C, need) : need;
    }
    r.tail_exact_ = tail_exact_ && !dropped;
    if (!r.tail_exact_) {
        c.C = C ? *C : Rat(0);
        r.cert_ = c;
    }
    if (r.jmin_ > r.jmax_) {
        r.jmin_ = 0;
        r.jmax_ = -1;
    }
    return r;
}

RobbaElement RobbaElement::coeff_clamped(long long t_lo, long long t_hi, long long abs_cap) const {
    RobbaElement r = *this;
    for (auto& [j, c] : r.f_) {
        (void)j;
        c = c.clamped(t_lo, t_hi).prec_clamped(abs_cap);
    }
    std::erase_if(r.f_, [](const auto& kv) { return kv.second.is_exact_zero(); });
    return r;
}

std::optional<Rat> RobbaElement::eta_s_w_bound(const Rat& alpha, const Rat& s_prime) const {
    std::optional<Rat> m;
    for (const auto& [j, c] : f_) {
        auto w = c.eta_w_bound(alpha);
        if (!w) continue;
        m = opt_min(m, *w + s_prime * rl(j));
    }
    if (!tail_exact_) {
        if (alpha != cert_.alpha)
            throw PreconditionError("tail certified only at its own alpha");
        // term w >= -(C + s j - delta|j|) + j s'; linear on each side, growing
        // toward infinity under admissibility, so the window edges carry the min.
        Rat su = s_prime - slope_pos(cert_);  // must be > 0 for j -> +inf
        Rat sl = slope_neg(cert_) - s_prime;  // must be > 0 for j -> -inf
        if (!(su > 0) || !(sl > 0))
            throw PreconditionError("(alpha, s') outside the certified growth range");
        long long jt = jmax_ + 1, jb = jmin_ - 1;
        m = opt_min(m, -(cert_.C + cert_.s * rl(jt) - cert_.delta * rl(std::llabs(jt))) + s_prime * rl(jt));
        m = opt_min(m, -(cert_.C + cert_.s * rl(jb) - cert_.delta * rl(std::llabs(jb))) + s_prime * rl(jb));
    }
    return m;
}

std::optional<Rat> RobbaElement::pi_floor() const {
    std::optional<Rat> m;
    for (const auto& [j, c] : f_) {
        (void)j;
        auto pf = c.pi_floor();
        if (pf) m = opt_min(m, *pf);
    }
    if (!tail_exact_) {
        // ||.||_pi <= ||.||_eta, so w_pi >= -(C + s j - delta |j|).
        if (slope_pos(cert_) > 0) return Rat(-kPrecExactThreshold);
        if (slope_neg(cert_) < 0) return Rat(-kPrecExactThreshold);
        long long jt = jmax_ + 1, jb = jmin_ - 1;
        m = opt_min(m, -(cert_.C + cert_.s * rl(jt) - cert_.delta * rl(std::llabs(jt))));
        m = opt_min(m, -(cert_.C + cert_.s * rl(jb) - cert_.delta * rl(std::llabs(jb))));
    }
    return m;
}

bool RobbaElement::below_floor(const Rat& floor) const {
    auto f = pi_floor();
    return !f || *f >= floor;
}

std::string RobbaElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, c] : f_) {
        if (!first) os << " + ";
        os << "[" << c.str() << "]*" << var_ << "^" << j;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

void RobbaElement::validate() const {
    for (const auto& [j, c] : f_) {
        if (j < jmin_ || j > jmax_) throw SchemaError("coefficient outside window");
        c.validate();
        if (c.prime() != p_) throw SchemaError("coefficient prime mismatch");
    }
    if (cert_.alpha <= 0 || cert_.s <= 0 || cert_.delta <= 0)
        throw SchemaError("invalid growth certificate");
}

RobbaElement robba_add(const RobbaElement& f, const RobbaElement& g) { return f + g; }
RobbaElement robba_mul(const RobbaElement& f, const RobbaElement& g) { return f * g; }

LogNorm eta_s_norm(const RobbaElement& f, const Rat& alpha, const Rat& s_prime) {
    if (alpha <= 0 || s_prime <= 0) throw PreconditionError("eta_s_norm needs alpha, s' > 0");
    for (const auto& [j, c] : f.coeffs()) {
        (void)j;
        if (!c.lower_exact() && alpha > c.cert().alpha)
            throw PreconditionError("alpha exceeds a coefficient certificate");
    }
    auto b = f.eta_s_w_bound(alpha, s_prime);
    if (!b) return LogNorm::bot();
    return LogNorm(*b);
}

LogNorm aux_norm_Rs(const RobbaElement& f, const Rat& alpha, const Rat& s, const Rat& c_shift) {
    if (c_shift <= 0) throw PreconditionError("aux norm needs c_shift > 0");
    if (alpha <= 0 || s <= 0) throw PreconditionError("aux norm needs alpha, s > 0");
    std::optional<Rat> m;
    for (const auto& [j, c] : f.coeffs()) {
        auto w = c.eta_w_bound(alpha);
        if (!w) continue;
        Rat term = *w + s * rl(j) + c_shift * rl(j < 0 ? -j : j);
        m = opt_min(m, term);
    }
    if (!f.tail_exact()) {
        if (alpha != f.cert().alpha)
            throw PreconditionError("tail certified only at its own alpha");
        const RobbaCert& ct = f.cert();
        // w-term >= -(C + s0 j - delta|j|) + s j + c_shift |j|.
        Rat su = s + c_shift - slope_pos(ct);
        Rat sl = slope_neg(ct) - s + c_shift;
        if (!(su > 0) || !(sl > 0)) throw PreconditionError("(alpha, s, c) outside the certified range");
        long long jt = f.jmax() + 1, jb = f.jmin() - 1;
        m = opt_min(m, -(ct.C + ct.s * rl(jt) - ct.delta * rl(std::llabs(jt))) + s * rl(jt) + c_shift * rl(std::llabs(jt)));
        m = opt_min(m, -(ct.C + ct.s * rl(jb) - ct.delta * rl(std::llabs(jb))) + s * rl(jb) + c_shift * rl(std::llabs(jb)));
    }
    if (!m) return LogNorm::bot();
    return LogNorm(*m);
}

RobbaElement robba_frobenius(const RobbaElement& f) {
    RobbaElement r = RobbaElement::zero(f.prime(), f.var(), f.base());
    for (const auto& [j, c] : f.coeffs()) r.set_coeff(j * f.prime(), frobenius_sigma(c));
    if (!f.window_empty()) {
        r.set_coeff(f.jmin() * f.prime(), r.coeff(f.jmin() * f.prime()));
        r.set_coeff(f.jmax() * f.prime(), r.coeff(f.jmax() * f.prime()));
    }
    if (!f.tail_exact()) {
        const RobbaCert& c = f.cert();
        long p = f.prime();
        r.set_cert({c.alpha / p, c.s / p, c.C, c.delta / p}, false);
    }
    return r;
}

// --- ResidueDoubleSeries ------------------------------------------------------

ResidueDoubleSeries ResidueDoubleSeries::monomial(long p, long long j, const FpLaurent& c) {
    ResidueDoubleSeries r(p);
    if (!c.known_zero()) {
        r.jmin_ = r.jmax_ = j;
        r.f_.emplace(j, c);
    }
    return r;
}

ResidueDoubleSeries ResidueDoubleSeries::one(long p) {
    return monomial(p, 0, FpLaurent::one(p));
}

FpLaurent ResidueDoubleSeries::coeff(long long j) const {
    auto it = f_.find(j);
    if (it != f_.end()) return it->second;
    return FpLaurent::zero(p_);
}

void ResidueDoubleSeries::set_coeff(long long j, const FpLaurent& c) {
    if (window_empty()) {
        jmin_ = jmax_ = j;
    } else {
        jmin_ = std::min(jmin_, j);
        jmax_ = std::max(jmax_, j);
    }
    if (c.is_exact_zero())
        f_.erase(j);
    else
        f_[j] = c;
}

ResidueDoubleSeries ResidueDoubleSeries::operator+(const ResidueDoubleSeries& o) const {
    if (p_ != o.p_) throw PreconditionError("prime mismatch");
    ResidueDoubleSeries r(p_, std::max(c_, o.c_), std::max(d_, o.d_));
    for (const auto& [j, c] : f_) r.set_coeff(j, c);
    for (const auto& [j, c] : o.f_) r.set_coeff(j, r.coeff(j) + c);
    return r;
}

ResidueDoubleSeries ResidueDoubleSeries::operator-(const ResidueDoubleSeries& o) const {
    return *this + o.neg();
}

ResidueDoubleSeries ResidueDoubleSeries::neg() const {
    ResidueDoubleSeries r = *this;
    for (auto& [j, c] : r.f_) {
        (void)j;
        c = c.neg();
    }
    return r;
}

ResidueDoubleSeries ResidueDoubleSeries::operator*(const ResidueDoubleSeries& o) const {
    if (p_ != o.p_) throw PreconditionError("prime mismatch");
    ResidueDoubleSeries r(p_, c_ + o.c_ + std::max(d_, o.d_), d_ + o.d_);
    if (window_empty() || o.window_empty()) return r;
    for (const auto& [i, ci] : f_)
        for (const auto& [j, cj] : o.f_) r.set_coeff(i + j, r.coeff(i + j) + ci * cj);
    std::erase_if(r.f_, [](const auto& kv) { return kv.second.is_exact_zero(); });
    return r;
}

ResidueDoubleSeries ResidueDoubleSeries::shift_y(long long k) const {
    ResidueDoubleSeries r(p_, c_, d_ + static_cast<long>(std::llabs(k)) * std::max(c_, 0L));
    for (const auto& [j, c] : f_) r.set_coeff(j + k, c);
    return r;
}

ResidueDoubleSeries ResidueDoubleSeries::scalar(const FpLaurent& c) const {
    ResidueDoubleSeries r(p_, c_, d_);
    for (const auto& [j, co] : f_) r.set_coeff(j, co * c);
    r.fit_growth();
    return r;
}

ResidueDoubleSeries ResidueDoubleSeries::truncated_y(long long y_trunc) const {
    ResidueDoubleSeries r(p_, c_, d_);
    for (const auto& [j, c] : f_)
        if (j < y_trunc) r.set_coeff(j, c);
    return r;
}

ResidueDoubleSeries ResidueDoubleSeries::truncated_t(long long t_trunc) const {
    ResidueDoubleSeries r(p_, c_, d_);
    for (const auto& [j, c] : f_) r.set_coeff(j, c.truncated(t_trunc));
    std::erase_if(r.f_, [](const auto& kv) { return kv.second.is_exact_zero(); });
    return r;
}

bool ResidueDoubleSeries::known_zero() const {
    for (const auto& [j, c] : f_) {
        (void)j;
        if (!c.known_zero()) return false;
    }
    return true;
}

bool ResidueDoubleSeries::same(const ResidueDoubleSeries& o) const {
    return (*this - o).known_zero();
}

void ResidueDoubleSeries::fit_growth() {
    long c = 0, d = 0;
    for (const auto& [j, co] : f_) {
        if (co.known_zero()) continue;
        long long mv = -co.v_t();
        if (j <= 0) {
            d = std::max(d, static_cast<long>(mv - c * j));
        }
    }
    for (const auto& [j, co] : f_) {
        if (co.known_zero() || j <= 0) continue;
        long long need = -co.v_t() - d;
        if (need > 0) c = std::max(c, static_cast<long>((need + j - 1) / j));
    }
    // settle d once more with the final c
    for (const auto& [j, co] : f_) {
        if (co.known_zero()) continue;
        long long mv = -co.v_t();
        d = std::max(d, static_cast<long>(mv - c * j));
    }
    c_ = std::max(c, 0L);
    d_ = std::max(d, 0L);
}

std::string ResidueDoubleSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, c] : f_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")*y^" << j;
        first = false;
    }
    if (first) os << "0";
    os << "  {c=" << c_ << ", d=" << d_ << "}";
    return os.str();
}

// --- residue-field operations -------------------------------------------------

ResidueDoubleSeries robba_reduce_mod_pi(const RobbaElement& f) {
    if (!f.is_integral()) throw PreconditionError("reduction of a non-integral element");
    if (!f.tail_exact()) {
        // the tail must vanish mod pi: bound < -0 needed, i.e. C + s j - delta|j| <= -1
        const RobbaCert& c = f.cert();
        Rat t1 = c.C + c.s * rl(f.jmax() + 1) - c.delta * rl(std::llabs(f.jmax() + 1));
        Rat t2 = c.C + c.s * rl(f.jmin() - 1) - c.delta * rl(std::llabs(f.jmin() - 1));
        if (t1 > -1 || t2 > -1 || slope_pos(c) > 0 || slope_neg(c) < 0)
            throw PreconditionError("tail not certified to vanish mod pi");
    }
    ResidueDoubleSeries r(f.prime());
    for (const auto& [j, c] : f.coeffs()) {
        FpLaurent red = reduce_mod_pi(c);
        if (!red.is_exact_zero()) r.set_coeff(j, red);
    }
    r.fit_growth();
    return r;
}

MembershipResult residue_membership(const ResidueDoubleSeries& fbar, long c, long d) {
    for (const auto& [j, co] : fbar.coeffs()) {
        if (co.known_zero()) continue;
        long long mv = -co.v_t();
        if (mv > c * j + d) return {false, j};
    }
    return {true, 0};
}

RobbaElement lift_residue(const ResidueDoubleSeries& fbar, long long prec) {
    long p = fbar.prime();
    RobbaElement r = RobbaElement::zero(p);
    for (const auto& [j, c] : fbar.coeffs()) {
        if (c.trunc() < kInfTrunc)
            throw PreconditionError("lift of a t-truncated residue series is not exact");
        r.set_coeff(j, lift_residue_series(c, prec));
    }
    // Derived certificate per the (c,d) growth: with alpha <= s/(2c) the lifted
    // tail norms p^{alpha(cj+d)} decay against r^{-js}. The window is exact, so
    // the certificate is informational; keep it consistent anyway.
    return r;
}

long long partial_valuation(const ResidueDoubleSeries& fbar, long long n) {
    if (n < fbar.jmin() || n > fbar.jmax())
        throw PreconditionError("partial valuation index outside the window");
    FpLaurent c = fbar.coeff(n);
    if (c.known_zero()) {
        if (c.trunc() >= kInfTrunc && c.is_exact_zero()) return kInfTrunc;
        if (!c.is_exact_zero()) throw PreconditionError("v_t undetermined at this truncation");
        return kInfTrunc;
    }
    return c.v_t();
}

ResidueDoubleSeries residue_invert(const ResidueDoubleSeries& fbar, const ResidueInvertOpts& opts) {
    if (fbar.window_empty() || fbar.known_zero())
        throw PreconditionError("inversion of zero residue series");
    long p = fbar.prime();
    long long m = fbar.jmin();
    FpLaurent lead = fbar.coeff(m);
    if (lead.known_zero())
        throw PreconditionError("leading coefficient not invertible at this truncation");
    ResidueInvertOpts o = opts;
    long long span = fbar.jmax() - fbar.jmin();
    if (o.y_prec < 0) o.y_prec = span + 5;
    if (o.t_trunc < 0) {
        long long reach = 8;
        for (const auto& [j, c] : fbar.coeffs()) {
            (void)j;
            if (!c.known_zero()) reach = std::max(reach, std::llabs(c.v_t()) + 8);
        }
        o.t_trunc = reach * (o.y_prec + 1);
    }
    FpLaurent lead_inv = lead.inverse(o.t_trunc);
    // a = 1 + sum_{k>=1} a_k y^k
    ResidueDoubleSeries a(p);
    for (const auto& [j, c] : fbar.coeffs()) a.set_coeff(j - m, (c * lead_inv).truncated(o.t_trunc));
    ResidueDoubleSeries one = ResidueDoubleSeries::one(p);
    ResidueDoubleSeries h = one - a;  // supported on y^1..
    ResidueDoubleSeries acc = one;
    ResidueDoubleSeries term = one;
    for (long long k = 1; k <= o.y_prec; ++k) {
        term = (term * h).truncated_y(o.y_prec + 1).truncated_t(o.t_trunc);
        if (term.known_zero()) break;
        acc = acc + term;
    }
    ResidueDoubleSeries inv = acc.scalar(lead_inv).shift_y(-m).truncated_t(o.t_trunc);
    // Proof bound on the normalized part: -v_t(b_j) <= (c+d)*j.
    long cd = fbar.growth_c() + fbar.growth_d();
    bool normalized = (m == 0) && lead.same(FpLaurent::one(p));
    if (normalized) {
        for (const auto& [j, b] : acc.coeffs()) {
            if (j == 0 || b.known_zero()) continue;
            if (-b.v_t() > cd * j)
                throw CertificateViolation("residue inverse violates the (c+d)i growth bound");
        }
    }
    inv.fit_growth();
    if (normalized) inv.set_growth(cd, inv.growth_d());
    // multiply-back check on the joint data
    ResidueDoubleSeries back = (fbar * inv).truncated_y(fbar.jmax() + inv.jmax() + 1);
    ResidueDoubleSeries diff = back - ResidueDoubleSeries::one(p);
    for (const auto& [j, c] : diff.coeffs()) {
        if (j <= o.y_prec + m + fbar.jmin() - 1 && !c.known_zero())
            throw CertificateViolation("residue inverse multiply-back failed");
    }
    return inv;
}

// --- y-adic Hensel over the residue field --------------------------------------

namespace {

ResidueDoubleSeries eval_poly_residue(const std::vector<ResidueDoubleSeries>& poly,
                                      const ResidueDoubleSeries& x, long long y_trunc,
                                      long long t_trunc) {
    long p = x.prime();
    ResidueDoubleSeries acc(p);
    for (size_t k = poly.size(); k-- > 0;) {
        acc = (acc * x).truncated_y(y_trunc).truncated_t(t_trunc);
        acc = acc + poly[k];
    }
    return acc.truncated_y(y_trunc).truncated_t(t_trunc);
}

}  // namespace

HenselResidueResult hensel_root_residue(const std::vector<ResidueDoubleSeries>& poly_in,
                                        const ResidueDoubleSeries& x0, long long y_prec,
                                        long long t_trunc) {
    if (poly_in.size() < 2) throw PreconditionError("polynomial of degree < 1");
    long p = poly_in.empty() ? 2 : poly_in[0].prime();
    size_t deg = poly_in.size() - 1;

    // Shift to x0 = 0: binomial expansion of P(X + x0).
    std::vector<ResidueDoubleSeries> poly(poly_in.size(), ResidueDoubleSeries(p));
    {
        std::vector<std::vector<long>> binom(deg + 1, std::vector<long>(deg + 1, 0));
        for (size_t n = 0; n <= deg; ++n) {
            binom[n][0] = 1;
            for (size_t k = 1; k <= n; ++k)
                binom[n][k] = (binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0)) % p;
        }
        std::vector<ResidueDoubleSeries> x0pow(deg + 1, ResidueDoubleSeries::one(p));
        for (size_t e = 1; e <= deg; ++e) x0pow[e] = (x0pow[e - 1] * x0).truncated_t(t_trunc);
        for (size_t l = 0; l <= deg; ++l)
            for (size_t k = 0; k <= l; ++k) {
                long b = binom[l][k];
                if (b == 0) continue;
                poly[k] = poly[k] + poly_in[l].scalar(FpLaurent::monomial(p, 0, b)) * x0pow[l - k];
            }
        for (auto& q : poly) q = q.truncated_t(t_trunc);
    }

    // Preconditions at x0: P(0) = a_0 divisible by y, P'(0) = a_1 a unit mod y.
    if (!poly[0].coeff(0).known_zero())
        throw PreconditionError("P(x0) not divisible by y");
    FpLaurent beta = poly[1].coeff(0);
    if (beta.known_zero()) throw PreconditionError("P'(x0) vanishes mod y");

    // Scale by t^d so that v(a_{ki}) >= -c*i with d = 0, then enlarge c so
    // that v_0(P'(0)) <= c.
    long d = 0;
    for (const auto& q : poly)
        for (const auto& [i, co] : q.coeffs()) {
            (void)i;
            if (!co.known_zero()) d = std::max(d, static_cast<long>(-co.v_t()));
        }
    if (d > 0) {
        FpLaurent td = FpLaurent::monomial(p, d, 1);
        for (auto& q : poly) q = q.scalar(td);
        beta = poly[1].coeff(0);
    }
    long c = 1;
    for (const auto& q : poly)
        for (const auto& [i, co] : q.coeffs()) {
            if (i < 1 || co.known_zero()) continue;
            long long need = -co.v_t();
            if (need > 0) c = std::max(c, static_cast<long>((need + i - 1) / i));
        }
    c = std::max<long>(c, static_cast<long>(beta.v_t()));

    FpLaurent beta_inv = beta.inverse(t_trunc);

    HenselResidueResult out;
    out.c_used = c;
    ResidueDoubleSeries cur(p);
    for (long long n = 1; n <= y_prec; ++n) {
        ResidueDoubleSeries val = eval_poly_residue(poly, cur, n + 1, t_trunc);
        FpLaurent alpha_n = val.coeff(n);
        FpLaurent xn = (alpha_n * beta_inv).neg().truncated(t_trunc);
        long long vx = xn.known_zero() ? kInfTrunc : xn.v_t();
        long long bound = -3LL * c * n + c;
        if (vx < bound)
            throw CertificateViolation("hensel_root_residue: v(x_n) >= -3cn + c failed");
        out.log.push_back({n, vx, bound});
        if (!xn.known_zero()) cur.set_coeff(n, xn);
    }
    // Final substitution check: P(x) = 0 mod y^{y_prec+1}.
    ResidueDoubleSeries final = eval_poly_residue(poly, cur, y_prec + 1, t_trunc);
    for (const auto& [j, co] : final.coeffs()) {
        if (j <= y_prec && !co.known_zero())
            throw CertificateViolation("hensel_root_residue: P(x) != 0 mod y^{n+1}");
    }
    cur.fit_growth();
    out.root = x0 + cur;
    out.root.fit_growth();
    return out;
}

// --- integral Hensel / inversion over R^int ------------------------------------

std::optional<EtaSParams> find_eta_s(const std::vector<const RobbaElement*>& elems, int budget) {
    Rat alpha = 1;
    for (int i = 0; i < budget; ++i, alpha /= 2) {
        Rat s = 1;
        for (int k = 0; k < budget; ++k, s /= 2) {
            bool ok = true;
            for (const RobbaElement* e : elems) {
                if (e->is_exact_zero()) continue;
                try {
                    auto w = e->eta_s_w_bound(alpha, s);
                    if (!w || !(*w > 0)) {
                        ok = false;
                        break;
                    }
                } catch (const PreconditionError&) {
                    ok = false;
                    break;
                }
            }
            if (ok) return EtaSParams{alpha, s};
        }
    }
    return std::nullopt;
}

namespace {

RobbaElement eval_poly_robba(const std::vector<RobbaElement>& coeffs, const RobbaElement& x,
                             const WorkingCaps& caps) {
    long p = x.prime();
    RobbaElement acc = RobbaElement::zero(p, x.var());
    for (size_t k = coeffs.size(); k-- > 0;) {
        acc = (acc * x).clamped(-caps.y_radius, caps.y_radius);
        acc = (acc + coeffs[k]).coeff_clamped(caps.t_lo, caps.t_hi, caps.pi_prec);
    }
    return acc;
}

}  // namespace

RobbaElement int_unit_invert(const RobbaElement& a, long long floor, const WorkingCaps& caps) {
    if (!a.is_integral()) throw PreconditionError("int_unit_invert: element not integral");
    ResidueDoubleSeries abar = robba_reduce_mod_pi(a);
    ResidueDoubleSeries ubar = residue_invert(abar, {.y_prec = 2 * caps.y_radius + 1,
                                                     .t_trunc = caps.t_hi});
    RobbaElement u = lift_residue(ubar, caps.pi_prec).clamped(-caps.y_radius, caps.y_radius);
    u.set_var(a.var());
    RobbaElement one = RobbaElement::one(a.prime(), kInfPrec, a.var());
    // x = 1 - a*u is pi-small; Newton doubles its valuation.
    int budget = 64;
    for (int it = 0;; ++it) {
        RobbaElement res = one - (a * u).clamped(-2 * caps.y_radius, 2 * caps.y_radius)
                                      .coeff_clamped(caps.t_lo, caps.t_hi, caps.pi_prec);
        if (res.below_floor(rl(floor))) break;
        if (it >= budget) throw PreconditionError("int_unit_invert: did not settle within budget");
        RobbaElement upd = (u * (one + res)).clamped(-caps.y_radius, caps.y_radius)
                               .coeff_clamped(caps.t_lo, caps.t_hi, caps.pi_prec);
        u = upd;
    }
    return u;
}

HenselIntResult hensel_lift_int(const std::vector<RobbaElement>& a, long long stop_floor,
                                const WorkingCaps& caps) {
    if (a.empty()) throw PreconditionError("need at least one perturbation coefficient");
    long p = a[0].prime();
    long m = static_cast<long>(a.size()) + 1;
    for (const auto& ak : a) {
        auto pf = ak.pi_floor();
        if (!ak.is_integral() || (pf && *pf < 1))
            throw PreconditionError("coefficients must lie in pi*R^int");
    }
    // P(X) = X^m - X^{m-1} + a_2 X^{m-2} + ... + a_m; coeffs[k] multiplies X^k.
    std::vector<RobbaElement> coeffs(static_cast<size_t>(m) + 1, RobbaElement::zero(p));
    coeffs[static_cast<size_t>(m)] = RobbaElement::one(p, kInfPrec);
    coeffs[static_cast<size_t>(m - 1)] = -RobbaElement::one(p, kInfPrec);
    for (long k = 2; k <= m; ++k) coeffs[static_cast<size_t>(m - k)] = a[static_cast<size_t>(k - 2)];
    std::vector<RobbaElement> dcoeffs(static_cast<size_t>(m), RobbaElement::zero(p));
    for (long k = 1; k <= m; ++k) dcoeffs[static_cast<size_t>(k - 1)] = coeffs[static_cast<size_t>(k)].mul_small(k);

    RobbaElement y = RobbaElement::one(p, kInfPrec);
    RobbaElement p1 = eval_poly_robba(coeffs, y, caps);
    std::vector<const RobbaElement*> search;
    for (const auto& ak : a) search.push_back(&ak);
    search.push_back(&p1);
    auto params = find_eta_s(search);
    if (!params)
        throw PreconditionError("hensel_lift_int: no admissible (eta, s') at this truncation");

    HenselIntResult out;
    out.params = *params;
    out.envelope_ok = true;
    int budget = 40;
    for (int n = 0;; ++n) {
        RobbaElement pn = eval_poly_robba(coeffs, y, caps);
        RobbaElement pdn = eval_poly_robba(dcoeffs, y, caps);
        RobbaElement un = int_unit_invert(pdn, stop_floor + 4, caps);
        RobbaElement step = (pn * un).clamped(-caps.y_radius, caps.y_radius)
                                .coeff_clamped(caps.t_lo, caps.t_hi, caps.pi_prec);
        LogNorm w = eta_s_norm(step, params->alpha, params->s);
        Rat wn = w.is_bottom() ? rl(stop_floor) + 1 : w.w();
        out.log.push_back({n, wn});
        if (n == 0) out.w0 = wn;
        if (wn < (Int(1) << n) * out.w0) out.envelope_ok = false;
        y = (y - step).clamped(-caps.y_radius, caps.y_radius)
                .coeff_clamped(caps.t_lo, caps.t_hi, caps.pi_prec);
        if (w.is_bottom() || wn >= rl(stop_floor)) break;
        if (n >= budget) throw PreconditionError("hensel_lift_int: no convergence within budget");
    }
    // Root congruent to 1 mod pi.
    RobbaElement diff = y - RobbaElement::one(p, kInfPrec);
    auto pf = diff.pi_floor();
    if (pf && *pf < 1) throw CertificateViolation("hensel root not congruent to 1 mod pi");
    out.root = y;
    return out;
}

// --- substitution and Kummer machinery ------------------------------------------

RobbaElement substitute(const RobbaElement& f, const RobbaElement& g, long long floor,
                        const WorkingCaps& caps) {
    if (f.prime() != g.prime()) throw PreconditionError("prime mismatch");
    long p = f.prime();
    if (g.window_empty() || g.jmin() < 1)
        throw PreconditionError("substitution target must be u^n*(unit + ...) with n >= 1");
    long long n = g.jmin();
    if (!g.is_integral()) throw PreconditionError("substitution target must be integral");
    OCLaurent g0 = g.coeff(n);
    {
        auto pf = g0.pi_floor();
        if (!pf || *pf != 0)
            throw PreconditionError("substitution target needs a unit leading coefficient");
    }
    // The convergence estimate of the construction: some (alpha, s) with
    // ||g||_{eta,s} <= r^{-s}, i.e. w >= s.
    bool closes = false;
    Rat alpha = 1, s_used = 1;
    for (int i = 0; i < 8 && !closes; ++i, alpha /= 2) {
        Rat s = 1;
        for (int k = 0; k < 8; ++k, s /= 2) {
            try {
                auto w = g.eta_s_w_bound(alpha, s);
                if (w && *w >= s) {
                    closes = true;
                    s_used = s;
                    break;
                }
            } catch (const PreconditionError&) {
            }
        }
    }
    if (!closes)
        throw PreconditionError("substitute: the ||g||_{eta,s} <= r^{-ns} estimate does not close");
    (void)s_used;

    // Positive part by Horner in g; negative part by Horner in g^{-1}.
    RobbaElement pos = RobbaElement::zero(p, g.var());
    for (long long j = f.jmax(); j >= std::max<long long>(f.jmin(), 0); --j) {
        pos = (pos * g).clamped(-caps.y_radius * std::max<long long>(n, 1) - 4,
                                caps.y_radius * std::max<long long>(n, 1) + 4)
                  .coeff_clamped(caps.t_lo, caps.t_hi, caps.pi_prec);
        OCLaurent fj = f.coeff(j);
        if (!fj.is_exact_zero()) pos = pos + RobbaElement::constant(fj, g.var());
    }
    RobbaElement out = pos;
    if (f.jmin() < 0) {
        RobbaElement h = g.mul_y_power(-n);  // integral with unit residue
        RobbaElement hinv = int_unit_invert(h, floor + 4, caps);
        RobbaElement ginv = hinv.mul_y_power(-n);
        RobbaElement neg = RobbaElement::zero(p, g.var());
        for (long long j = f.jmin(); j <= -1; ++j) {
            OCLaurent fj = f.coeff(j);
            neg = (neg * ginv).clamped(-caps.y_radius * std::max<long long>(n, 1) - 4,
                                       caps.y_radius * std::max<long long>(n, 1) + 4)
                      .coeff_clamped(caps.t_lo, caps.t_hi, caps.pi_prec);
            if (!fj.is_exact_zero()) neg = neg + RobbaElement::constant(fj, g.var()) * ginv;
        }
        out = out + neg;
    }
    return out;
}

EisensteinResult eisenstein_relation(const RobbaElement& g, long m, long long y_prec,
                                     long long floor, const WorkingCaps& caps) {
    long p = g.prime();
    if (g.window_empty() || g.jmin() != m)
        throw PreconditionError("eisenstein_relation needs g = u^m*(g0 + ...)");
    OCLaurent g0 = g.coeff(m);
    auto pf0 = g0.pi_floor();
    if (!pf0 || *pf0 != 0) throw PreconditionError("degenerate leading coefficient g0");
    OCLaurent g0inv = oc_invert(g0);

    // Unit part powers: G[j] = (g0 + g1 u + ...)^j, G[j].coeff(l) = G_{j,l}.
    long long Nmax = m * (y_prec + 1) + m - 1;
    RobbaElement unitpart = g.mul_y_power(-m);
    std::vector<RobbaElement> G(static_cast<size_t>(y_prec) + 2, RobbaElement::one(p, kInfPrec, g.var()));
    for (size_t j = 1; j < G.size(); ++j)
        G[j] = (G[j - 1] * unitpart).clamped(0, Nmax).coeff_clamped(caps.t_lo, caps.t_hi, caps.pi_prec);
    std::vector<OCLaurent> g0inv_pow(G.size(), OCLaurent::one(p, kInfPrec));
    for (size_t j = 1; j < G.size(); ++j)
        g0inv_pow[j] = (g0inv_pow[j - 1] * g0inv).clamped(caps.t_lo, caps.t_hi).prec_clamped(caps.pi_prec);

    // c[k] as y-power series; c[k].coeff(j) = c_{kj}.
    EisensteinResult out;
    out.c.assign(static_cast<size_t>(m), RobbaElement::zero(p, 'y'));
    for (long long N = m; N <= Nmax; ++N) {
        // known part: coefficient of u^N in u^m + sum over solved c_{kj} g^j u^k
        OCLaurent acc = OCLaurent::zero(p);
        if (N == m) acc = OCLaurent::one(p, kInfPrec);
        long long j_lead = N / m;
        long long k_lead = N % m;
        for (long k = 0; k < m; ++k) {
            for (long long j = 1; j <= y_prec; ++j) {
                if (m * j + k > N) break;
                if (j == j_lead && k == k_lead) continue;
                OCLaurent ckj = out.c[static_cast<size_t>(k)].coeff(j);
                if (ckj.is_exact_zero()) continue;
                long long l = N - m * j - k;
                OCLaurent Gjl = G[static_cast<size_t>(j)].coeff(l);
                if (Gjl.is_exact_zero()) continue;
                acc = acc + ckj * Gjl;
            }
        }
        if (j_lead < 1 || j_lead > y_prec) continue;
        // c_{k_lead, j_lead} * g0^{j_lead} + acc = 0
        OCLaurent val = (-acc) * g0inv_pow[static_cast<size_t>(j_lead)];
        val = val.clamped(caps.t_lo, caps.t_hi).prec_clamped(caps.pi_prec);
        out.c[static_cast<size_t>(k_lead)].set_coeff(j_lead, val);
    }
    // Verify the relation by substitution to the requested precision:
    // u^m + sum_k c_k(g) u^k = 0 mod (floor, u^{m(y_prec+1)}).
    RobbaElement check = RobbaElement::monomial(m, OCLaurent::one(p, kInfPrec), g.var());
    for (long k = 0; k < m; ++k) {
        RobbaElement ck_at_g = substitute(out.c[static_cast<size_t>(k)], g, floor, caps);
        check = check + ck_at_g.mul_y_power(k);
    }
    for (const auto& [j, co] : check.coeffs()) {
        if (j >= m * (y_prec + 1)) continue;
        auto pf = co.pi_floor();
        if (pf && *pf < floor)
            throw CertificateViolation("eisenstein relation fails the substitution check");
    }
    // Log the construction's norm bound ||c_{ki}|| <= (C r^s)^{m(i-1)+k} * ||g0^{-1}||^{m(i-1)+k+i}.
    for (long k = 0; k < m; ++k)
        for (const auto& [i, co] : out.c[static_cast<size_t>(k)].coeffs()) {
            auto w = co.eta_w_bound(Rat(1, 4));
            std::ostringstream os;
            os << "c[" << k << "," << i << "] w=" << (w ? rat_str(*w) : "bottom");
            out.norm_log.push_back(os.str());
        }
    return out;
}

RobbaElement trace_map(long m, const RobbaElement& f) {
    long p = f.prime();
    if (m < 1 || (p - 1) % m != 0)
        throw PreconditionError("trace needs m | p-1 so that mu_m lies in F_p");
    RobbaElement r = RobbaElement::zero(p, 'y', f.base());
    for (const auto& [j, c] : f.coeffs()) {
        if (j % m != 0) continue;  // the character sum kills these exactly
        r.set_coeff(j / m, c.mul_small(m));
    }
    if (!f.tail_exact()) {
        const RobbaCert& c = f.cert();
        r.set_cert({c.alpha, c.s * m, c.C, c.delta * m}, false);
    }
    return r;
}

RobbaElement kummer_inclusion(long m, const RobbaElement& f) {
    RobbaElement r = RobbaElement::zero(f.prime(), 'u', f.base());
    for (const auto& [j, c] : f.coeffs()) r.set_coeff(j * m, c);
    if (!f.window_empty()) {
        r.set_coeff(f.jmin() * m, r.coeff(f.jmin() * m));
        r.set_coeff(f.jmax() * m, r.coeff(f.jmax() * m));
    }
    if (!f.tail_exact()) {
        const RobbaCert& c = f.cert();
        r.set_cert({c.alpha, c.s / m, c.C, c.delta / m}, false);
    }
    return r;
}

std::vector<RobbaElement> kummer_decompose(const RobbaElement& f, long m) {
    std::vector<RobbaElement> parts;
    for (long k = 0; k < m; ++k) parts.push_back(RobbaElement::zero(f.prime(), 'y', f.base()));
    for (const auto& [j, c] : f.coeffs()) {
        long long k = ((j % m) + m) % m;
        parts[static_cast<size_t>(k)].set_coeff((j - k) / m, c);
    }
    if (!f.tail_exact()) throw PreconditionError("decomposition requires an exact window");
    return parts;
}

RobbaElement kummer_recompose(const std::vector<RobbaElement>& parts, long m, char var) {
    if (parts.empty()) throw PreconditionError("no components");
    RobbaElement r = RobbaElement::zero(parts[0].prime(), var, parts[0].base());
    for (long k = 0; k < static_cast<long>(parts.size()); ++k)
        for (const auto& [j, c] : parts[static_cast<size_t>(k)].coeffs()) r.set_coeff(j * m + k, c);
    return r;
}

}  // namespace robbalab
