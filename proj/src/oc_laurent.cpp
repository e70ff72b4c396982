#include "robbalab/oc_laurent.hpp"

#include <algorithm>
#include <sstream>

namespace robbalab {

std::string tag_name(OCTag t) {
    switch (t) {
        case OCTag::SK: return "SK";
        case OCTag::Eeta: return "Eeta";
        case OCTag::Edagger: return "Edagger";
        case OCTag::E: return "E";
    }
    return "?";
}

OCTag tag_join(OCTag a, OCTag b) { return a < b ? b : a; }

static std::optional<Rat> opt_min(std::optional<Rat> a, std::optional<Rat> b) {
    if (!a) return b;
    if (!b) return a;
    return *a <= *b ? a : b;
}

// Valid beta for restating a certificate (alpha_old, beta) at a smaller
// alpha_new, for tail indices i < imin: the gap (alpha_old-alpha_new)*(-i)
// is only nonnegative for i < 0, so positive tail indices need absorbing.
static Rat beta_at(const TailCert& c, const Rat& alpha_new, long long imin) {
    Rat b = c.beta;
    if (imin >= 2) b += (c.alpha - alpha_new) * rl(imin - 1);
    return b;
}

OCLaurent OCLaurent::zero(long p, OCTag tag) {
    OCLaurent r;
    r.p_ = p;
    r.tag_ = tag;
    return r;
}

OCLaurent OCLaurent::monomial(long p, long long exp, const PadicScalar& c, OCTag tag) {
    OCLaurent r = zero(p, tag);
    if (!c.is_exact_zero()) {
        r.imin_ = r.imax_ = exp;
        r.a_.emplace(exp, c);
    }
    return r;
}

OCLaurent OCLaurent::constant(const PadicScalar& c, OCTag tag) {
    return monomial(c.prime(), 0, c, tag);
}

OCLaurent OCLaurent::one(long p, long long prec, OCTag tag) {
    return monomial(p, 0, PadicScalar::from_integer(p, 1, prec), tag);
}

OCLaurent OCLaurent::from_window(long p, long long imin, const std::vector<PadicScalar>& coeffs,
                                 OCTag tag) {
    OCLaurent r = zero(p, tag);
    if (coeffs.empty()) return r;
    r.imin_ = imin;
    r.imax_ = imin + static_cast<long long>(coeffs.size()) - 1;
    for (size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_exact_zero()) r.a_.emplace(imin + static_cast<long long>(k), coeffs[k]);
    return r;
}

void OCLaurent::set_tag(OCTag t, Rat alpha0) {
    tag_ = t;
    alpha0_ = std::move(alpha0);
}

void OCLaurent::set_cert(const TailCert& c, bool lower_exact) {
    if (c.alpha <= 0) throw SchemaError("tail certificate needs alpha > 0");
    cert_ = c;
    lower_exact_ = lower_exact;
}

bool OCLaurent::is_exact_zero() const {
    if (!lower_exact_ || upper_floor_ < kInfPrec) return false;
    for (const auto& [i, c] : a_) {
        (void)i;
        if (!c.is_exact_zero()) return false;
    }
    return true;
}

PadicScalar OCLaurent::coeff(long long i) const {
    auto it = a_.find(i);
    if (it != a_.end()) return it->second;
    if (i >= imin_ && i <= imax_) return PadicScalar::zero(p_);
    if (i < imin_) {
        if (lower_exact_) return PadicScalar::zero(p_);
        return PadicScalar::zero(p_, rat_ceil(lower_tail_bound(i)));
    }
    return PadicScalar::zero(p_, upper_floor_);
}

void OCLaurent::set_coeff(long long i, const PadicScalar& c) {
    if (window_empty()) {
        imin_ = imax_ = i;
    } else {
        imin_ = std::min(imin_, i);
        imax_ = std::max(imax_, i);
    }
    if (c.is_exact_zero())
        a_.erase(i);
    else
        a_[i] = c;
}

Rat OCLaurent::lower_tail_bound(long long i) const {
    return cert_.alpha * rl(-i) - cert_.beta;
}

std::optional<Rat> OCLaurent::coeff_bound(long long i) const {
    if (i >= imin_ && i <= imax_) {
        auto it = a_.find(i);
        if (it == a_.end()) return std::nullopt;
        const PadicScalar& c = it->second;
        if (c.is_exact_zero()) return std::nullopt;
        if (c.is_zero()) return rl(c.precision());
        return rl(c.valuation());
    }
    if (i < imin_) {
        if (lower_exact_) return std::nullopt;
        return lower_tail_bound(i);
    }
    if (upper_floor_ >= kInfPrec) return std::nullopt;
    return rl(upper_floor_);
}

bool OCLaurent::known_at(long long i) const {
    auto it = a_.find(i);
    return it != a_.end() && !it->second.is_zero();
}

std::optional<Rat> OCLaurent::pi_floor() const {
    std::optional<Rat> m;
    for (const auto& [i, c] : a_) {
        (void)i;
        if (c.is_exact_zero()) continue;
        m = opt_min(m, c.is_zero() ? rl(c.precision()) : rl(c.valuation()));
    }
    if (!lower_exact_) m = opt_min(m, lower_tail_bound(imin_ - 1));
    if (upper_floor_ < kInfPrec) m = opt_min(m, rl(upper_floor_));
    return m;
}

std::optional<Rat> OCLaurent::eta_w_bound(const Rat& alpha) const {
    std::optional<Rat> m;
    auto negw = [&](long long i) { return i < 0 ? alpha * rl(i) : Rat(0); };
    for (const auto& [i, c] : a_) {
        if (c.is_exact_zero()) continue;
        Rat v = c.is_zero() ? rl(c.precision()) : rl(c.valuation());
        m = opt_min(m, v + negw(i));
    }
    if (!lower_exact_) {
        // Two linear segments: i <= min(imin-1,-1) carries the eta weight,
        // 0 <= i < imin does not; each is monotone so endpoints suffice.
        long long b = imin_ - 1;
        m = opt_min(m, lower_tail_bound(b) + negw(b));
        if (b > -1) m = opt_min(m, lower_tail_bound(-1) - alpha);
    }
    if (upper_floor_ < kInfPrec) {
        long long b = imax_ + 1;
        m = opt_min(m, rl(upper_floor_) + negw(b));
    }
    return m;
}

bool OCLaurent::below_floor(const Rat& floor) const {
    auto f = pi_floor();
    return !f || *f >= floor;
}

void OCLaurent::validate() const {
    if (cert_.alpha <= 0) throw SchemaError("certificate alpha must be positive");
    if (tag_ == OCTag::SK && !window_empty() && imin_ < 0)
        throw SchemaError("S_K element with negative exponents");
    for (const auto& [i, c] : a_) {
        if (i < imin_ || i > imax_) throw SchemaError("coefficient outside window");
        if (c.prime() != p_) throw SchemaError("coefficient prime mismatch");
    }
}

// --- arithmetic -------------------------------------------------------------

namespace {

struct Combined {
    long p;
    OCTag tag;
    Rat alpha0;
};

Combined combine_tags(const OCLaurent& f, const OCLaurent& g) {
    if (f.prime() != g.prime()) throw PreconditionError("prime mismatch");
    OCTag t = tag_join(f.tag(), g.tag());
    Rat a0 = 1;
    if (t == OCTag::Eeta) {
        if (f.tag() == OCTag::Eeta && g.tag() == OCTag::Eeta)
            a0 = std::min(f.alpha0(), g.alpha0());
        else
            a0 = f.tag() == OCTag::Eeta ? f.alpha0() : g.alpha0();
    }
    return {f.prime(), t, a0};
}

}  // namespace

OCLaurent OCLaurent::operator+(const OCLaurent& o) const {
    Combined cb = combine_tags(*this, o);
    OCLaurent r = zero(cb.p, cb.tag);
    r.alpha0_ = cb.alpha0;
    long long lo, hi;
    if (window_empty() && o.window_empty()) {
        lo = 0;
        hi = -1;
    } else if (window_empty()) {
        lo = o.imin_;
        hi = o.imax_;
    } else if (o.window_empty()) {
        lo = imin_;
        hi = imax_;
    } else {
        lo = std::min(imin_, o.imin_);
        hi = std::max(imax_, o.imax_);
    }
    r.imin_ = lo;
    r.imax_ = hi;
    for (long long i = lo; i <= hi; ++i) {
        PadicScalar c = coeff(i) + o.coeff(i);
        if (!c.is_exact_zero()) r.a_.emplace(i, c);
    }
    r.lower_exact_ = lower_exact_ && o.lower_exact_;
    if (!r.lower_exact_) {
        Rat alpha;
        if (lower_exact_)
            alpha = o.cert_.alpha;
        else if (o.lower_exact_)
            alpha = cert_.alpha;
        else
            alpha = std::min(cert_.alpha, o.cert_.alpha);
        Rat beta;
        bool first = true;
        for (const OCLaurent* e : {this, &o}) {
            if (e->lower_exact_) continue;
            Rat b = beta_at(e->cert_, alpha, lo);
            beta = first ? b : std::max(beta, b);
            first = false;
        }
        r.cert_ = {alpha, beta};
    }
    r.upper_floor_ = std::min(upper_floor_, o.upper_floor_);
    return r;
}

OCLaurent OCLaurent::operator-() const {
    OCLaurent r = *this;
    for (auto& [i, c] : r.a_) {
        (void)i;
        c = -c;
    }
    return r;
}

OCLaurent OCLaurent::operator-(const OCLaurent& o) const { return *this + (-o); }

namespace {

// Certified bound for the unknown part of the product coefficient n: the min
// over all index splits i + j = n in which at least one factor is not a known
// window coefficient. Known*known splits are handled exactly by the
// convolution; splits with an exactly-zero side contribute nothing.
std::optional<Rat> product_unknown_bound(const OCLaurent& f, const OCLaurent& g, long long n) {
    std::optional<Rat> m;
    enum class St { Known, Bounded, Zero };
    auto state = [](const OCLaurent& h, long long i, Rat& bound) {
        if (i >= h.imin() && i <= h.imax()) {
            auto it = h.coeffs().find(i);
            if (it == h.coeffs().end() || it->second.is_exact_zero()) return St::Zero;
            const PadicScalar& c = it->second;
            if (c.is_zero()) {
                bound = rl(c.precision());
                return St::Bounded;
            }
            bound = rl(c.valuation());
            return St::Known;
        }
        auto b = h.coeff_bound(i);
        if (!b) return St::Zero;
        bound = *b;
        return St::Bounded;
    };
    for (long long i = f.imin(); i <= f.imax(); ++i) {
        Rat bf, bg;
        St sf = state(f, i, bf);
        if (sf == St::Zero) continue;
        St sg = state(g, n - i, bg);
        if (sg == St::Zero) continue;
        if (sf == St::Known && sg == St::Known) continue;
        m = opt_min(m, bf + bg);
    }
    for (long long j = g.imin(); j <= g.imax(); ++j) {
        long long i = n - j;
        if (i >= f.imin() && i <= f.imax()) continue;
        Rat bf, bg;
        if (state(f, i, bf) == St::Zero) continue;
        if (state(g, j, bg) == St::Zero) continue;
        m = opt_min(m, bf + bg);
    }
    // Tail x tail splits. Each side's bound is linear in the split point and
    // grows toward the unbounded direction, so finite interval endpoints
    // carry the minimum.
    struct Seg {
        bool lower;      // lower tail (i < imin) vs upper tail (i > imax)
    };
    auto has_lower = [](const OCLaurent& h) { return !h.lower_exact(); };
    auto has_upper = [](const OCLaurent& h) { return h.upper_floor() < kInfPrec; };
    auto bound_at = [](const OCLaurent& h, bool lower, long long i) {
        return lower ? h.cert().alpha * rl(-i) - h.cert().beta : rl(h.upper_floor());
    };
    for (bool flow : {true, false}) {
        if (flow ? !has_lower(f) : !has_upper(f)) continue;
        for (bool glow : {true, false}) {
            if (glow ? !has_lower(g) : !has_upper(g)) continue;
            bool has_lo = false, has_hi = false;
            long long lo = 0, hi = 0;
            if (flow) {
                has_hi = true;
                hi = f.imin() - 1;
            } else {
                has_lo = true;
                lo = f.imax() + 1;
            }
            if (glow) {
                long long b = n - (g.imin() - 1);
                if (has_lo) lo = std::max(lo, b);
                else {
                    has_lo = true;
                    lo = b;
                }
            } else {
                long long b = n - (g.imax() + 1);
                if (has_hi) hi = std::min(hi, b);
                else {
                    has_hi = true;
                    hi = b;
                }
            }
            if (has_lo && has_hi && lo > hi) continue;
            for (long long i : {has_lo ? lo : hi, has_hi ? hi : lo}) {
                bool in_f = flow ? (i < f.imin()) : (i > f.imax());
                bool in_g = glow ? (n - i < g.imin()) : (n - i > g.imax());
                if (!in_f || !in_g) continue;
                m = opt_min(m, bound_at(f, flow, i) + bound_at(g, glow, n - i));
            }
        }
    }
    return m;
}

}  // namespace

OCLaurent OCLaurent::operator*(const OCLaurent& o) const {
    Combined cb = combine_tags(*this, o);
    OCLaurent r = zero(cb.p, cb.tag);
    r.alpha0_ = cb.alpha0;
    if (is_exact_zero() || o.is_exact_zero()) return r;
    long long lo = 0, hi = -1;
    if (!window_empty() && !o.window_empty()) {
        lo = imin_ + o.imin_;
        hi = imax_ + o.imax_;
    }
    r.imin_ = lo;
    r.imax_ = hi;
    auto fully_known = [](const OCLaurent& h) {
        if (!h.lower_exact() || h.upper_floor() < kInfPrec) return false;
        for (const auto& [i, c] : h.coeffs()) {
            (void)i;
            if (c.is_zero()) return false;
        }
        return true;
    };
    bool need_bounds = !(fully_known(*this) && fully_known(o));
    for (long long n = lo; n <= hi; ++n) {
        PadicScalar acc = PadicScalar::zero(p_);
        for (const auto& [i, c] : a_) {
            if (c.is_zero()) continue;
            auto it = o.a_.find(n - i);
            if (it == o.a_.end() || it->second.is_zero()) continue;
            acc = acc + c * it->second;
        }
        if (need_bounds) {
            auto tb = product_unknown_bound(*this, o, n);
            if (tb) acc = acc + PadicScalar::zero(p_, rat_ceil(*tb));
        }
        if (!acc.is_exact_zero()) r.a_.emplace(n, acc);
    }
    // Tail certificate via the mass rule: v((fg)_n) >= m_f + m_g + alpha*(-n)
    // where m_h = min_i (v_h(i) + alpha*min(i,0)).
    r.lower_exact_ = lower_exact_ && o.lower_exact_;
    if (!r.lower_exact_) {
        Rat alpha;
        if (lower_exact_)
            alpha = o.cert_.alpha;
        else if (o.lower_exact_)
            alpha = cert_.alpha;
        else
            alpha = std::min(cert_.alpha, o.cert_.alpha);
        auto mf = eta_w_bound(alpha);
        auto mg = o.eta_w_bound(alpha);
        if (!mf || !mg)
            r.lower_exact_ = true;  // a certified-zero factor
        else
            r.cert_ = {alpha, -(*mf + *mg)};
    }
    auto pf = pi_floor();
    auto pg = o.pi_floor();
    long long fl = kInfPrec;
    if (upper_floor_ < kInfPrec && pg) fl = std::min(fl, PadicScalar::sat_add(upper_floor_, rat_ceil(*pg)));
    if (o.upper_floor_ < kInfPrec && pf)
        fl = std::min(fl, PadicScalar::sat_add(o.upper_floor_, rat_ceil(*pf)));
    r.upper_floor_ = fl;
    return r;
}

OCLaurent OCLaurent::scalar_mul(const PadicScalar& c) const {
    if (c.prime() != p_) throw PreconditionError("prime mismatch");
    return *this * constant(c, OCTag::SK);
}

OCLaurent OCLaurent::mul_t_power(long long k) const {
    OCLaurent r = zero(p_, tag_);
    r.alpha0_ = alpha0_;
    if (!window_empty()) {
        r.imin_ = imin_ + k;
        r.imax_ = imax_ + k;
    }
    for (const auto& [i, c] : a_) r.a_.emplace(i + k, c);
    r.lower_exact_ = lower_exact_;
    r.cert_ = {cert_.alpha, cert_.beta - cert_.alpha * rl(k)};
    r.upper_floor_ = upper_floor_;
    if (tag_ == OCTag::SK && r.imin_ < 0) r.tag_ = OCTag::Edagger;
    return r;
}

OCLaurent OCLaurent::mul_small(long long n) const {
    return scalar_mul(PadicScalar::from_integer(p_, il(n), kInfPrec));
}

OCLaurent OCLaurent::clamped(long long new_imin, long long new_imax) const {
    if (window_empty()) return *this;
    new_imin = std::max(new_imin, imin_);
    new_imax = std::min(new_imax, imax_);
    OCLaurent r = zero(p_, tag_);
    r.alpha0_ = alpha0_;
    r.imin_ = new_imin;
    r.imax_ = new_imax;
    Rat beta = cert_.beta;
    long long fl = upper_floor_;
    bool dropped_low = false;
    for (const auto& [i, c] : a_) {
        if (c.is_exact_zero()) continue;
        if (i < new_imin) {
            Rat v = c.is_zero() ? rl(c.precision()) : rl(c.valuation());
            beta = std::max(beta, Rat(cert_.alpha * rl(-i) - v));
            dropped_low = true;
        } else if (i > new_imax) {
            long long v = c.is_zero() ? c.precision() : c.valuation();
            fl = std::min(fl, v);
        } else {
            r.a_.emplace(i, c);
        }
    }
    r.lower_exact_ = lower_exact_ && !dropped_low;
    r.cert_ = {cert_.alpha, beta};
    r.upper_floor_ = fl;
    if (r.imin_ > r.imax_) {
        r.imin_ = 0;
        r.imax_ = -1;
    }
    return r;
}

OCLaurent OCLaurent::prec_clamped(long long abs_cap) const {
    OCLaurent r = *this;
    for (auto& [i, c] : r.a_) {
        (void)i;
        c = c + PadicScalar::zero(p_, abs_cap);
    }
    std::erase_if(r.a_, [](const auto& kv) { return kv.second.is_exact_zero(); });
    r.upper_floor_ = std::min(r.upper_floor_, abs_cap);
    return r;
}

std::string OCLaurent::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : a_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")*t^" << i;
        first = false;
    }
    if (first) os << "0";
    os << " [window " << imin_ << ".." << imax_ << ", tag " << tag_name(tag_) << "]";
    return os.str();
}

// --- spec operations --------------------------------------------------------

OCLaurent oc_add(const OCLaurent& f, const OCLaurent& g) { return f + g; }
OCLaurent oc_mul(const OCLaurent& f, const OCLaurent& g) { return f * g; }

static void check_alpha_admissible(const OCLaurent& f, const Rat& alpha) {
    if (alpha <= 0) throw PreconditionError("eta exponent alpha must be positive");
    if (f.tag() == OCTag::E && !f.lower_exact())
        throw PreconditionError("eta norm undefined on E-tagged element with uncertified tail");
    if (!f.lower_exact() && alpha > f.cert().alpha)
        throw PreconditionError("alpha exceeds the tail certificate: tail not controlled");
}

LogNorm eta_norm(const OCLaurent& f, const Rat& alpha) {
    check_alpha_admissible(f, alpha);
    auto b = f.eta_w_bound(alpha);
    if (!b) return LogNorm::bot();
    return LogNorm(*b);
}

LogNorm pi_norm(const OCLaurent& f) {
    auto b = f.pi_floor();
    if (!b) return LogNorm::bot();
    return LogNorm(*b);
}

FpLaurent reduce_mod_pi(const OCLaurent& f) {
    auto pf = f.pi_floor();
    if (pf && *pf < 0) throw PreconditionError("reduce_mod_pi: element is not integral");
    long p = f.prime();
    if (!f.lower_exact()) {
        Rat b = f.cert().alpha * rl(-(f.imin() - 1)) - f.cert().beta;
        if (b < 1)
            throw PreconditionError("reduce_mod_pi: lower tail not certified integral mod pi");
    }
    long long trunc = kInfTrunc;
    if (f.upper_floor() < 1) trunc = f.imax() + 1;
    FpLaurent r = FpLaurent::zero(p, trunc);
    for (const auto& [i, c] : f.coeffs()) {
        long res = c.residue();  // throws if unknown mod p
        if (res != 0) r = r + FpLaurent::monomial(p, i, res);
    }
    return r.truncated(trunc);
}

OCLaurent lift_residue_series(const FpLaurent& fbar, long long prec) {
    long p = fbar.prime();
    if (fbar.trunc() < kInfTrunc)
        throw PreconditionError("lift of a truncated residue series is not exact");
    OCLaurent r = OCLaurent::zero(p, OCTag::Edagger);
    for (long long i = fbar.lo(); i < fbar.hi(); ++i) {
        long c = fbar.coeff(i);
        if (c != 0) r.set_coeff(i, PadicScalar::from_integer(p, c, prec));
    }
    return r;
}

OCLaurent frobenius_sigma(const OCLaurent& f) {
    long p = f.prime();
    OCLaurent r = OCLaurent::zero(p, f.tag());
    if (f.tag() == OCTag::Eeta) r.set_tag(OCTag::Eeta, f.alpha0() / p);
    if (!f.window_empty()) {
        for (const auto& [i, c] : f.coeffs()) r.set_coeff(i * p, c);
        // the in-between indices are exact zeros: widen the window to cover them
        r.set_coeff(f.imin() * p, r.coeff(f.imin() * p));
        r.set_coeff(f.imax() * p, r.coeff(f.imax() * p));
    }
    r.set_cert({f.cert().alpha / p, f.cert().beta}, f.lower_exact());
    r.set_upper_floor(f.upper_floor());
    return r;
}

// Residual acceptance for truncated inverses: inside the window and down the
// lower tail everything must sit at or above the floor; unknown content past
// the upper window edge is declared truncation (the O(t^{imax+1}) envelope),
// not an error.
bool residual_below_floor(const OCLaurent& r, const Rat& floor, long long hi_check) {
    for (const auto& [i, c] : r.coeffs()) {
        if (i > hi_check) continue;
        if (c.is_exact_zero()) continue;
        Rat b = c.is_zero() ? rl(c.precision()) : rl(c.valuation());
        if (b < floor) return false;
    }
    if (!r.lower_exact()) {
        Rat b = r.cert().alpha * rl(-(r.imin() - 1)) - r.cert().beta;
        if (b < floor) return false;
    }
    if (r.upper_floor() < kInfPrec && r.imax() < hi_check && rl(r.upper_floor()) < floor)
        return false;
    return true;
}

OCLaurent oc_invert(const OCLaurent& f, const InvertOpts& opts) {
    long p = f.prime();
    if (f.is_exact_zero()) throw PreconditionError("inversion of zero");
    InvertOpts o = opts;
    long long span = f.window_empty() ? 0 : f.imax() - f.imin();
    long long reach = f.window_empty() ? 0 : std::max(std::llabs(f.imin()), std::llabs(f.imax()));
    if (o.floor < 0) {
        // The inverse cannot be known past the least-known input coefficient.
        long long m = kInfPrec;
        for (const auto& [i, c] : f.coeffs()) {
            (void)i;
            if (c.abs_prec() < m) m = c.abs_prec();
        }
        o.floor = m >= kPrecExactThreshold ? 16 : std::max<long long>(4, m);
    }
    if (o.window_radius < 0)
        o.window_radius = std::max<long long>(8, std::max(2 * (span + reach) + 4, 2 * o.floor + span + 8));

    // Pivot search: f = c*t^n*(1+h) where every term of h with nonpositive
    // t-offset has strictly positive eta-weight (norm < 1, geometric decay in
    // mass) and every term with positive offset has valuation at least the
    // pivot's (t-adic decay into the truncation envelope without p-blowup).
    Rat alpha = f.lower_exact() ? Rat(1) : f.cert().alpha;
    long long pivot = 0;
    bool found = false;
    for (int k = 0; k < o.alpha_budget && !found; ++k, alpha /= 2) {
        for (const auto& [n, cn] : f.coeffs()) {
            if (cn.is_zero()) continue;
            Rat wn = rl(cn.valuation()) + (n < 0 ? alpha * rl(n) : Rat(0));
            bool ok = true;
            for (const auto& [j, cj] : f.coeffs()) {
                if (j == n || cj.is_exact_zero()) continue;
                Rat v = cj.is_zero() ? rl(cj.precision()) : rl(cj.valuation());
                if (j > n) {
                    if (v < rl(cn.valuation())) {
                        ok = false;
                        break;
                    }
                    continue;
                }
                Rat wj = v + (j < 0 ? alpha * rl(j) : Rat(0));
                if (!(wj > wn)) {
                    ok = false;
                    break;
                }
            }
            if (ok && f.upper_floor() < kInfPrec && f.upper_floor() < cn.valuation()) ok = false;
            if (ok && !f.lower_exact()) {
                long long b = f.imin() - 1;
                Rat t1 = f.cert().alpha * rl(-b) - f.cert().beta + (b < 0 ? alpha * rl(b) : Rat(0));
                if (!(t1 > wn)) ok = false;
                if (b > -1 && !(f.cert().alpha - f.cert().beta - alpha > wn)) ok = false;
            }
            if (ok) {
                pivot = n;
                found = true;
                break;
            }
        }
    }
    if (!found)
        throw PreconditionError(
            "oc_invert: no admissible decomposition (scalar)*t^n*(1+h) with ||h||_eta < 1 "
            "found at this truncation");

    PadicScalar c = f.coeff(pivot);
    PadicScalar cinv = c.inv();
    OCLaurent lead_inv = OCLaurent::monomial(p, -pivot, cinv, f.tag());
    // Newton updates x <- x(2 - fx) square the residual 1 - fx, which gains
    // either eta-mass or t-degree every step; both run into the envelope.
    long long lo = -pivot - o.window_radius, hi = -pivot + o.window_radius;
    long long hi_check = hi + f.imin();
    OCLaurent x = lead_inv;
    OCLaurent one_exact = OCLaurent::one(p, kInfPrec, f.tag());
    Rat target = rl(o.floor);
    auto fp = f.pi_floor();
    Rat slack = fp && *fp < 0 ? -*fp : Rat(0);
    int budget = 2 * o.alpha_budget + 64;
    for (int it = 0;; ++it) {
        OCLaurent res = one_exact - f * x;
        if (residual_below_floor(res, target - slack, hi_check)) break;
        if (it >= budget)
            throw PreconditionError("oc_invert: iteration did not settle within budget");
        OCLaurent two_minus = OCLaurent::constant(PadicScalar::from_integer(p, 2, kInfPrec)) - f * x;
        x = (x * two_minus).clamped(lo, hi).prec_clamped(o.floor + 8);
    }
    return x;
}

EpsNormSelection epsnorm_select(const OCLaurent& f, const Rat& alpha0, const Rat& eps) {
    if (eps <= 0 || eps > 1) throw PreconditionError("eps must lie in (0,1]");
    check_alpha_admissible(f, alpha0);
    Rat alpha = eps * alpha0;
    LogNorm wpi = pi_norm(f);
    LogNorm wa0 = eta_norm(f, alpha0);
    LogNorm wa = eta_norm(f, alpha);
    if (wpi.is_bottom() || wa0.is_bottom() || wa.is_bottom())
        return {alpha, 0, 0, 0};  // zero element: equality of bottoms
    Rat lhs = wa.w();
    Rat rhs = (1 - eps) * wpi.w() + eps * wa0.w();
    if (lhs < rhs)
        throw CertificateViolation("epsnorm: interpolation inequality failed on the window");
    return {alpha, lhs, wpi.w(), wa0.w()};
}

}  // namespace robbalab
