#include "cycrank/bounds.hpp"

#include <mpfr.h>

#include <stdexcept>
#include <utility>

namespace cycrank {
namespace {

// [lo, hi] with lo rounded down and hi rounded up at every step.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec) : prec_(prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Interval& o) : Interval(o.prec_) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval& operator=(const Interval&) = delete;
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval from_string(const std::string& decimal, mpfr_prec_t prec) {
        Interval out(prec);
        mpfr_set_str(out.lo_, decimal.c_str(), 10, MPFR_RNDD);
        mpfr_set_str(out.hi_, decimal.c_str(), 10, MPFR_RNDU);
        return out;
    }
    static Interval from_ld(long double v, mpfr_prec_t prec) {
        Interval out(prec);
        mpfr_set_ld(out.lo_, v, MPFR_RNDD);
        mpfr_set_ld(out.hi_, v, MPFR_RNDU);
        return out;
    }
    static Interval pi(mpfr_prec_t prec) {
        Interval out(prec);
        mpfr_const_pi(out.lo_, MPFR_RNDD);
        mpfr_const_pi(out.hi_, MPFR_RNDU);
        return out;
    }

    Interval operator+(const Interval& o) const {
        Interval out(prec_);
        mpfr_add(out.lo_, lo_, o.lo_, MPFR_RNDD);
        mpfr_add(out.hi_, hi_, o.hi_, MPFR_RNDU);
        return out;
    }
    Interval operator-(const Interval& o) const {
        Interval out(prec_);
        mpfr_sub(out.lo_, lo_, o.hi_, MPFR_RNDD);
        mpfr_sub(out.hi_, hi_, o.lo_, MPFR_RNDU);
        return out;
    }
    Interval operator*(const Interval& o) const {
        Interval out(prec_);
        mpfr_t t;
        mpfr_init2(t, prec_);
        const mpfr_srcptr a[2] = {lo_, hi_};
        const mpfr_srcptr b[2] = {o.lo_, o.hi_};
        bool first = true;
        for (auto x : a) {
            for (auto y : b) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(t);
        return out;
    }
    // Divisor must be strictly positive.
    Interval operator/(const Interval& o) const {
        if (mpfr_sgn(o.lo_) <= 0) throw std::domain_error("interval division by a non-positive interval");
        Interval out(prec_);
        mpfr_div(out.lo_, lo_, mpfr_sgn(lo_) >= 0 ? o.hi_ : o.lo_, MPFR_RNDD);
        mpfr_div(out.hi_, hi_, mpfr_sgn(hi_) >= 0 ? o.lo_ : o.hi_, MPFR_RNDU);
        return out;
    }
    Interval sqrt() const {
        Interval out(prec_);
        mpfr_sqrt(out.lo_, lo_, MPFR_RNDD);
        mpfr_sqrt(out.hi_, hi_, MPFR_RNDU);
        return out;
    }
    Interval log() const {
        Interval out(prec_);
        mpfr_log(out.lo_, lo_, MPFR_RNDD);
        mpfr_log(out.hi_, hi_, MPFR_RNDU);
        return out;
    }
    Interval exp() const {
        Interval out(prec_);
        mpfr_exp(out.lo_, lo_, MPFR_RNDD);
        mpfr_exp(out.hi_, hi_, MPFR_RNDU);
        return out;
    }

    bool positive() const { return mpfr_sgn(lo_) > 0; }

    Enclosure enclosure() const {
        Enclosure e;
        e.lo = mpfr_get_ld(lo_, MPFR_RNDD);
        e.hi = mpfr_get_ld(hi_, MPFR_RNDU);
        e.precision_bits = static_cast<int>(prec_);
        return e;
    }

private:
    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

Interval h_interval(const Interval& x, mpfr_prec_t prec) {
    if (!x.positive()) throw std::domain_error("h_bound: argument must be positive");
    const Interval s = x.sqrt();
    const Interval c = Interval::from_ld(5, prec);
    const Interval four = Interval::from_ld(4, prec);
    const Interval twenty_four = Interval::from_ld(24, prec);
    const Interval sixteen = Interval::from_ld(16, prec);
    const Interval two = Interval::from_ld(2, prec);
    const Interval head = (x - c * s + four) / twenty_four;
    const Interval tail = (s / Interval::pi(prec)) * ((sixteen * x).log() + two);
    return head - tail;
}

}  // namespace

Enclosure h_enclosure(const BigInt& x, int precision_bits) {
    if (x <= 0) throw std::domain_error("h_bound: argument must be positive");
    // x may exceed the working precision, so load it with directed rounding.
    const auto prec = static_cast<mpfr_prec_t>(precision_bits);
    return h_interval(Interval::from_string(x.str(), prec), prec).enclosure();
}

Enclosure h_enclosure(long double x, int precision_bits) {
    if (!(x > 0)) throw std::domain_error("h_bound: argument must be positive");
    const auto prec = static_cast<mpfr_prec_t>(precision_bits);
    return h_interval(Interval::from_ld(x, prec), prec).enclosure();
}

Enclosure f_enclosure(long double r, int precision_bits) {
    if (!(r >= 2)) throw std::domain_error("f_bound: argument must be at least 2");
    const auto prec = static_cast<mpfr_prec_t>(precision_bits);
    const Interval rr = Interval::from_ld(r, prec);
    const Interval power = (rr * Interval::from_ld(180, prec).log()).exp();
    return (h_interval(power, prec) - rr).enclosure();
}

BoundValue h_bound(long double x) { return {x, h_enclosure(x).mid()}; }

long double f_bound(long double r) { return f_enclosure(r).mid(); }

int certified_sign(const std::function<Enclosure(int)>& eval) {
    for (int bits = 64; bits <= kMaxPrecisionBits; bits *= 2) {
        const int s = eval(bits).sign();
        if (s != 0) return s;
    }
    return 0;
}

BigInt h_cutoff(long double r, const BigInt& lower_start) {
    auto above = [&](const BigInt& x) {
        return certified_sign([&](int bits) {
                   const auto prec = static_cast<mpfr_prec_t>(bits);
                   const Interval xi = Interval::from_string(x.str(), prec);
                   return (h_interval(xi, prec) - Interval::from_ld(r, prec)).enclosure();
               }) > 0;
    };
    if (above(lower_start)) return lower_start;
    BigInt lo = lower_start;
    BigInt hi = lower_start * 2;
    while (!above(hi)) {
        lo = hi;
        hi *= 2;
    }
    // invariant: !above(lo), above(hi)
    while (hi - lo > 1) {
        BigInt m = (lo + hi) / 2;
        if (above(m)) {
            hi = m;
        } else {
            lo = m;
        }
    }
    return hi;
}

}  // namespace cycrank
