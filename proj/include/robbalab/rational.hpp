#pragma once

#include <gmpxx.h>

#include <string>

#include "robbalab/errors.hpp"

namespace robbalab {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// gmpxx has no long long constructor; indices and precisions are long long.
static_assert(sizeof(long) == sizeof(long long), "LP64 layout expected");
inline Rat rl(long long v) { return Rat(static_cast<long>(v)); }
inline Int il(long long v) { return Int(static_cast<long>(v)); }

// Parses "a/b" or "a". All norm parameters travel as exact rationals.
Rat rat_parse(const std::string& s);
std::string rat_str(const Rat& q);

inline long long rat_ceil(const Rat& q) {
    Int z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return z.get_si();
}

inline long long rat_floor(const Rat& q) {
    Int z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return z.get_si();
}

// Log-domain norm value: a non-archimedean norm p^{-w} is stored as the exact
// rational w; BOTTOM encodes norm 0. Larger w = smaller norm.
class LogNorm {
public:
    LogNorm() : bottom_(true) {}
    explicit LogNorm(Rat w) : bottom_(false), w_(std::move(w)) {}

    static LogNorm bot() { return LogNorm(); }

    bool is_bottom() const { return bottom_; }
    const Rat& w() const {
        if (bottom_) throw PreconditionError("LogNorm: bottom has no finite log value");
        return w_;
    }

    // Multiplicativity: |ab| = |a||b| adds log values; bottom absorbs.
    LogNorm operator+(const LogNorm& o) const {
        if (bottom_ || o.bottom_) return bot();
        return LogNorm(w_ + o.w_);
    }

    // Ultrametric rule for |a+b|: min of log values (max of norms).
    static LogNorm min(const LogNorm& a, const LogNorm& b) {
        if (a.bottom_) return b;
        if (b.bottom_) return a;
        return LogNorm(a.w_ <= b.w_ ? a.w_ : b.w_);
    }

    // "Below the precision floor": the value is indistinguishable from 0 at
    // floor, i.e. norm <= p^{-floor}.
    bool below_floor(const Rat& floor) const { return bottom_ || w_ >= floor; }
    bool below_floor(long long floor) const { return below_floor(rl(floor)); }

    bool operator==(const LogNorm& o) const {
        if (bottom_ != o.bottom_) return false;
        return bottom_ || w_ == o.w_;
    }

    std::string str() const { return bottom_ ? "bottom" : rat_str(w_); }

private:
    bool bottom_;
    Rat w_;
};

}  // namespace robbalab
