#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "robbalab/fp_laurent.hpp"
#include "robbalab/padic.hpp"

namespace robbalab {

// Ring membership tags, ordered by inclusion: SK < Eeta(alpha0) < Edagger < E.
enum class OCTag { SK, Eeta, Edagger, E };

std::string tag_name(OCTag t);
OCTag tag_join(OCTag a, OCTag b);

// Lower-tail certificate: v_p(a_i) >= alpha*(-i) - beta for every i < imin.
struct TailCert {
    Rat alpha = 1;  // > 0
    Rat beta = 0;
};

// Windowed Laurent series over Q_p in t.
//
// Coefficients are stored exactly for window indices (absent entry = exact
// zero); below the window the tail is either exactly zero (lower_exact) or
// certified by `cert`; above the window coefficients are unknown modulo the
// integral envelope v_p >= upper_floor (kInfPrec = exactly zero).
//
// Norm values returned by eta_norm/pi_norm are the largest certified w with
// ||f|| <= p^{-w}; they equal the norm whenever the minimum is attained by a
// known coefficient, which the callers arrange.
class OCLaurent {
public:
    OCLaurent() = default;

    static OCLaurent zero(long p, OCTag tag = OCTag::Edagger);
    static OCLaurent monomial(long p, long long exp, const PadicScalar& c,
                              OCTag tag = OCTag::Edagger);
    static OCLaurent constant(const PadicScalar& c, OCTag tag = OCTag::Edagger);
    static OCLaurent one(long p, long long prec, OCTag tag = OCTag::Edagger);
    static OCLaurent from_window(long p, long long imin,
                                 const std::vector<PadicScalar>& coeffs,
                                 OCTag tag = OCTag::Edagger);

    long prime() const { return p_; }
    OCTag tag() const { return tag_; }
    const Rat& alpha0() const { return alpha0_; }
    long long imin() const { return imin_; }
    long long imax() const { return imax_; }
    bool window_empty() const { return imin_ > imax_; }
    const TailCert& cert() const { return cert_; }
    bool lower_exact() const { return lower_exact_; }
    long long upper_floor() const { return upper_floor_; }
    const std::map<long long, PadicScalar>& coeffs() const { return a_; }

    void set_tag(OCTag t, Rat alpha0 = 1);
    void set_cert(const TailCert& c, bool lower_exact);
    void set_upper_floor(long long f) { upper_floor_ = f; }

    // True when the element is certified to be exactly 0.
    bool is_exact_zero() const;

    PadicScalar coeff(long long i) const;  // window coefficient (exact zero if absent)
    void set_coeff(long long i, const PadicScalar& c);  // grows the window as needed

    // Certified lower bound on v_p(a_i), any index; nullopt = +infinity.
    std::optional<Rat> coeff_bound(long long i) const;
    bool known_at(long long i) const;  // window index holding a known nonzero value

    OCLaurent operator+(const OCLaurent& o) const;
    OCLaurent operator-(const OCLaurent& o) const;
    OCLaurent operator-() const;
    OCLaurent operator*(const OCLaurent& o) const;
    OCLaurent scalar_mul(const PadicScalar& c) const;
    OCLaurent mul_t_power(long long k) const;
    OCLaurent mul_small(long long n) const;

    // min over all i of certified v_p(a_i); nullopt when exactly zero.
    std::optional<Rat> pi_floor() const;
    // Certified min over all i of v_p(a_i) + alpha*min(i,0); nullopt when zero.
    std::optional<Rat> eta_w_bound(const Rat& alpha) const;

    // Window clamp: dropped known content is folded into the tail certificate
    // and the upper floor, so the result still certifies the same element.
    OCLaurent clamped(long long new_imin, long long new_imax) const;
    // Forget everything below p^{abs_cap}: coefficients are weakened to
    // absolute precision abs_cap.
    OCLaurent prec_clamped(long long abs_cap) const;

    bool below_floor(const Rat& floor) const;  // certified ||f||_pi <= p^{-floor}

    std::string str() const;
    void validate() const;

private:
    // Certified bound of the lower-tail coefficient at index i (i < imin).
    Rat lower_tail_bound(long long i) const;
    friend struct OCDetail;

    long p_ = 2;
    OCTag tag_ = OCTag::Edagger;
    Rat alpha0_ = 1;  // only meaningful for Eeta
    long long imin_ = 0, imax_ = -1;
    std::map<long long, PadicScalar> a_;
    TailCert cert_;
    bool lower_exact_ = true;
    long long upper_floor_ = kInfPrec;
};

// --- spec operations -------------------------------------------------------

OCLaurent oc_add(const OCLaurent& f, const OCLaurent& g);
OCLaurent oc_mul(const OCLaurent& f, const OCLaurent& g);

// ||f||_eta for eta = p^{-alpha}, exact rational in log domain.
LogNorm eta_norm(const OCLaurent& f, const Rat& alpha);

// pi-adic (Gauss) norm on E / E^dagger.
LogNorm pi_norm(const OCLaurent& f);

// Reduction modulo pi; requires an integral element whose tail is certified
// to vanish mod pi.
FpLaurent reduce_mod_pi(const OCLaurent& f);

// Norm-1 coefficientwise lift (1 -> 1) of a residue series, with exact window.
OCLaurent lift_residue_series(const FpLaurent& fbar, long long prec);

struct InvertOpts {
    long long window_radius = -1;  // -1: derived from the input window
    long long floor = -1;          // -1: derived from coefficient precision
    int alpha_budget = 12;
    int max_terms = 4096;
};

// Inverse via t^n-pivot extraction and geometric series; requires a window
// decomposition f = c*t^n*(1+h) with ||h||_eta < 1 for an admissible eta.
OCLaurent oc_invert(const OCLaurent& f, const InvertOpts& opts = {});

// Certified "zero at this floor and truncation": every known or bounded
// coefficient at index <= hi_check sits at or above the floor, the lower tail
// certificate clears it, and content past hi_check counts as the declared
// O(t^{hi_check+1}) truncation envelope.
bool residual_below_floor(const OCLaurent& r, const Rat& floor, long long hi_check);

// Reference Frobenius lift: t -> t^p, trivial on Q_p. (Alternative Frobenii
// would slot in here; only the reference lift is built.)
OCLaurent frobenius_sigma(const OCLaurent& f);

struct EpsNormSelection {
    Rat alpha;    // selected eta exponent
    Rat w_alpha;  // certified log norm at alpha
    Rat w_pi;     // pi-adic log norm
    Rat w_alpha0; // log norm at alpha0
};

// Interpolation inequality ||f||_eta <= ||f||^{1-eps} * ||f||_{eta0}^{eps}
// with eta = eta0^eps; verified on the window before returning.
EpsNormSelection epsnorm_select(const OCLaurent& f, const Rat& alpha0, const Rat& eps);

}  // namespace robbalab
