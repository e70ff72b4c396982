#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "robbalab/oc_laurent.hpp"

namespace robbalab {

// Growth certificate for a Robba-ring element: for every index j outside the
// window, log_p ||f_j||_{p^{-alpha}} <= C + s*j - delta*|j|.
struct RobbaCert {
    Rat alpha = 1;  // > 0
    Rat s = 1;      // > 0
    Rat C = 0;
    Rat delta = 1;  // > 0
};

// Windowed series in y (or u) with OCLaurent coefficients. Desk-scale
// elements are finitely constructed, so the window usually carries the whole
// series (tail_exact); window clamps fold dropped content into the growth
// certificate.
class RobbaElement {
public:
    RobbaElement() = default;

    static RobbaElement zero(long p, char var = 'y', OCTag base = OCTag::Edagger);
    static RobbaElement monomial(long long j, const OCLaurent& c, char var = 'y');
    static RobbaElement constant(const OCLaurent& c, char var = 'y');
    static RobbaElement one(long p, long long prec, char var = 'y');

    long prime() const { return p_; }
    char var() const { return var_; }
    OCTag base() const { return base_; }
    long long jmin() const { return jmin_; }
    long long jmax() const { return jmax_; }
    bool window_empty() const { return jmin_ > jmax_; }
    const std::map<long long, OCLaurent>& coeffs() const { return f_; }
    const RobbaCert& cert() const { return cert_; }
    bool tail_exact() const { return tail_exact_; }

    void set_cert(const RobbaCert& c, bool tail_exact);
    void set_base(OCTag b) { base_ = b; }
    void set_var(char v) { var_ = v; }

    OCLaurent coeff(long long j) const;
    void set_coeff(long long j, const OCLaurent& c);

    // All window coefficients integral (pi_floor >= 0), certified.
    bool is_integral() const;
    bool is_exact_zero() const;

    RobbaElement operator+(const RobbaElement& o) const;
    RobbaElement operator-(const RobbaElement& o) const;
    RobbaElement operator-() const;
    RobbaElement operator*(const RobbaElement& o) const;
    RobbaElement scalar_mul(const OCLaurent& c) const;
    RobbaElement mul_y_power(long long k) const;
    RobbaElement mul_small(long long n) const;

    // d/dy: j*f_j at index j-1.
    RobbaElement derivative() const;

    RobbaElement clamped(long long new_jmin, long long new_jmax,
                         std::optional<Rat> at_alpha = std::nullopt) const;
    RobbaElement coeff_clamped(long long t_lo, long long t_hi, long long abs_cap) const;

    // Certified min over the window (and tails) of w_{eta,s'}(f_j) + j*s'.
    std::optional<Rat> eta_s_w_bound(const Rat& alpha, const Rat& s_prime) const;
    std::optional<Rat> pi_floor() const;
    bool below_floor(const Rat& floor) const;

    std::string str() const;
    void validate() const;

private:
    long p_ = 2;
    char var_ = 'y';
    OCTag base_ = OCTag::Edagger;
    long long jmin_ = 0, jmax_ = -1;
    std::map<long long, OCLaurent> f_;
    RobbaCert cert_;
    bool tail_exact_ = true;
};

// Element of the residue field k((t))^dagger((y)): windowed series in y with
// truncated F_p((t)) coefficients and the linear growth bound
// -v_t(f_j) <= c*j + d.
class ResidueDoubleSeries {
public:
    ResidueDoubleSeries() = default;
    explicit ResidueDoubleSeries(long p, long c = 0, long d = 0) : p_(p), c_(c), d_(d) {}

    static ResidueDoubleSeries monomial(long p, long long j, const FpLaurent& c);
    static ResidueDoubleSeries one(long p);

    long prime() const { return p_; }
    long long jmin() const { return jmin_; }
    long long jmax() const { return jmax_; }
    bool window_empty() const { return jmin_ > jmax_; }
    long growth_c() const { return c_; }
    long growth_d() const { return d_; }
    void set_growth(long c, long d) {
        c_ = c;
        d_ = d;
    }
    const std::map<long long, FpLaurent>& coeffs() const { return f_; }

    FpLaurent coeff(long long j) const;
    void set_coeff(long long j, const FpLaurent& c);

    ResidueDoubleSeries operator+(const ResidueDoubleSeries& o) const;
    ResidueDoubleSeries operator-(const ResidueDoubleSeries& o) const;
    ResidueDoubleSeries operator*(const ResidueDoubleSeries& o) const;
    ResidueDoubleSeries neg() const;
    ResidueDoubleSeries shift_y(long long k) const;
    ResidueDoubleSeries scalar(const FpLaurent& c) const;
    ResidueDoubleSeries truncated_y(long long y_trunc) const;       // drop j >= y_trunc
    ResidueDoubleSeries truncated_t(long long t_trunc) const;       // truncate coefficients

    bool known_zero() const;
    bool same(const ResidueDoubleSeries& o) const;

    // Fits a valid (c,d) from the window and installs it.
    void fit_growth();

    std::string str() const;

private:
    long p_ = 2;
    long long jmin_ = 0, jmax_ = -1;
    std::map<long long, FpLaurent> f_;
    long c_ = 0, d_ = 0;
};

// --- ring operations ---------------------------------------------------------

RobbaElement robba_add(const RobbaElement& f, const RobbaElement& g);
RobbaElement robba_mul(const RobbaElement& f, const RobbaElement& g);

// || . ||_{eta,s'} on A_{eta,s'}: sup_j ||f_j||_eta r^{-j s'}, exact rational
// in log domain. Errors when (alpha, s') is inadmissible for the certificate.
LogNorm eta_s_norm(const RobbaElement& f, const Rat& alpha, const Rat& s_prime);

// Norm functional of the auxiliary rings R_{E_eta,s}: the eta_s sup with the
// extra +|j|*c_shift log term.
LogNorm aux_norm_Rs(const RobbaElement& f, const Rat& alpha, const Rat& s, const Rat& c_shift);

// Reference Frobenius on the Robba ring: y -> y^p, sigma on coefficients.
RobbaElement robba_frobenius(const RobbaElement& f);

// Reduction mod pi of an integral element; fits a growth certificate.
ResidueDoubleSeries robba_reduce_mod_pi(const RobbaElement& f);

struct MembershipResult {
    bool accept;
    long long witness_j = 0;  // violating index when rejected
};

// Lemma-style membership: every window coefficient obeys -v_t(f_j) <= c*j + d.
MembershipResult residue_membership(const ResidueDoubleSeries& fbar, long c, long d);

// Coefficientwise norm-1 lift (1 -> 1); the growth certificate is derived
// from (c,d): alpha small enough that eta^{-(cj+d)} r^{-js} decays.
RobbaElement lift_residue(const ResidueDoubleSeries& fbar, long long prec);

// v_n(sum f_j y^j) = v_t(f_n). Errors outside the window.
long long partial_valuation(const ResidueDoubleSeries& fbar, long long n);

struct ResidueInvertOpts {
    long long y_prec = -1;   // number of output y-coefficients; -1: window span + 4
    long long t_trunc = -1;  // coefficient truncation; -1: derived
};

// Inverse of (unit)*y^m*(1 + higher) by geometric series; the output carries
// the proof bound (c+d, d') as its growth data.
ResidueDoubleSeries residue_invert(const ResidueDoubleSeries& fbar, const ResidueInvertOpts& opts = {});

struct HenselResidueStep {
    long long n;
    long long v_xn;        // t-valuation of x_n (kInfTrunc when zero)
    long long bound;       // the certified bound -3cn + c
};

struct HenselResidueResult {
    ResidueDoubleSeries root;   // sum x_i y^i, i = 1..y_prec
    long c_used = 0;            // the c after normalization
    std::vector<HenselResidueStep> log;
};

// y-adic Hensel recursion in F_p((t))((y)): P(x0) = 0 mod y, P'(x0) a unit
// mod y; normalizes (shift to x0 = 0, scale so d = 0, enlarge c so that
// v_0(P'(0)) <= c), runs the Taylor step x_n = -alpha/beta, and certifies
// v(x_n) >= -3cn + c at every step.
HenselResidueResult hensel_root_residue(const std::vector<ResidueDoubleSeries>& poly,
                                        const ResidueDoubleSeries& x0, long long y_prec,
                                        long long t_trunc = 64);

struct WorkingCaps {
    long long y_radius = 16;
    long long t_lo = -24;
    long long t_hi = 24;
    long long pi_prec = 24;
};

struct EtaSParams {
    Rat alpha;
    Rat s;
};

// Bounded grid search for (alpha, s') with ||a||_{eta,s'} < 1 given the
// pi-adic bound ||a|| < 1; reports failure rather than fabricating.
std::optional<EtaSParams> find_eta_s(const std::vector<const RobbaElement*>& elems,
                                     int budget = 8);

struct HenselIntStep {
    int n;
    Rat w;  // log norm of P(y_n)/P'(y_n) at the chosen (eta, s')
};

struct HenselIntResult {
    RobbaElement root;
    EtaSParams params;
    Rat w0;
    std::vector<HenselIntStep> log;
    bool envelope_ok;  // w_n >= 2^n * w0 along the whole run
};

// Newton lift for P(X) = X^m - X^{m-1} + a_2 X^{m-2} + ... + a_m with all
// a_k in pi*R^int, from y_0 = 1, logging the ||P(y_n)P'(y_n)^{-1}||_{eta,s'}
// sequence against the quadratic envelope.
HenselIntResult hensel_lift_int(const std::vector<RobbaElement>& a, long long stop_floor,
                                const WorkingCaps& caps = {});

// Inverse of an integral element with unit residue: residue inverse, lift,
// then geometric correction of x = 1 - a*u.
RobbaElement int_unit_invert(const RobbaElement& a, long long floor, const WorkingCaps& caps = {});

// Substitution y -> g(u) for integral g = u^n*(g0 + g1 u + ...) with unit g0;
// refuses when the convergence estimates do not close at this truncation.
RobbaElement substitute(const RobbaElement& f, const RobbaElement& g, long long floor,
                        const WorkingCaps& caps = {});

struct EisensteinResult {
    std::vector<RobbaElement> c;  // c_0..c_{m-1}, power series in y over O_{E^dagger}
    std::vector<std::string> norm_log;
};

// The minimal relation u^m + c_{m-1} u^{m-1} + ... + c_0 = 0 over
// O_{E^dagger}[[y]] for the Kummer-type g, solved by the triangular
// recursion and verified by substitution to the requested y-precision.
EisensteinResult eisenstein_relation(const RobbaElement& g, long m, long long y_prec,
                                     long long floor, const WorkingCaps& caps = {});

// Trace of the Kummer extension y = u^m (p not dividing m, mu_m in F_p):
// kills u-powers not divisible by m, multiplies the rest by m, re-expressed
// in y.
RobbaElement trace_map(long m, const RobbaElement& f);

// Inclusion along y = u^m: f(y) -> f(u^m).
RobbaElement kummer_inclusion(long m, const RobbaElement& f);

// Basis decomposition of R^u over R in y along {1, u, ..., u^{m-1}}:
// component k collects the coefficients at u-indices congruent to k mod m.
std::vector<RobbaElement> kummer_decompose(const RobbaElement& f, long m);
RobbaElement kummer_recompose(const std::vector<RobbaElement>& parts, long m, char var = 'u');

}  // namespace robbalab
