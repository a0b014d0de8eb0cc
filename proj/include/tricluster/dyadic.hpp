#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace tricluster {

/// Exact binary rational m * 2^e with arbitrary-size mantissa.
/// Canonical form: mantissa odd, or zero with exponent 0.
/// Addition, subtraction and multiplication never round.
class Dyadic {
public:
    Dyadic() : man_(0), exp_(0) {}
    Dyadic(long v) : man_(v), exp_(0) { normalize(); }
    Dyadic(const mpz_class& mantissa, long exponent) : man_(mantissa), exp_(exponent) { normalize(); }

    static Dyadic pow2(long e) { return Dyadic(1, e); }

    const mpz_class& mantissa() const { return man_; }
    long exponent() const { return exp_; }

    bool is_zero() const { return man_ == 0; }
    int sign() const { return sgn(man_); }

    Dyadic operator-() const { return Dyadic(-man_, exp_, nocheck{}); }
    Dyadic abs() const { return man_ < 0 ? -*this : *this; }

    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
    Dyadic operator*(const Dyadic& o) const {
        if (is_zero() || o.is_zero()) return Dyadic();
        return Dyadic(man_ * o.man_, exp_ + o.exp_, nocheck{});
    }
    Dyadic& operator+=(const Dyadic& o) { *this = *this + o; return *this; }
    Dyadic& operator-=(const Dyadic& o) { *this = *this - o; return *this; }
    Dyadic& operator*=(const Dyadic& o) { *this = *this * o; return *this; }

    /// Exact scaling by 2^k.
    Dyadic mul_pow2(long k) const {
        if (is_zero()) return Dyadic();
        return Dyadic(man_, exp_ + k, nocheck{});
    }

    int cmp(const Dyadic& o) const;
    bool operator==(const Dyadic& o) const { return man_ == o.man_ && exp_ == o.exp_; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const { return cmp(o) < 0; }
    bool operator<=(const Dyadic& o) const { return cmp(o) <= 0; }
    bool operator>(const Dyadic& o) const { return cmp(o) > 0; }
    bool operator>=(const Dyadic& o) const { return cmp(o) >= 0; }

    /// floor(log2 |x|); requires x != 0.
    long floor_log2() const;
    /// Largest e with x an integer multiple of 2^e (the canonical exponent); x != 0.
    long val2() const { return exp_; }
    /// Number of bits in the mantissa (0 for zero).
    size_t mantissa_bits() const { return man_ == 0 ? 0 : mpz_sizeinbase(man_.get_mpz_t(), 2); }

    /// Round down / up to an integer multiple of 2^e.
    Dyadic floor_pow2(long e) const;
    Dyadic ceil_pow2(long e) const { return -((-*this).floor_pow2(e)); }

    /// Exact rational value.
    mpq_class to_mpq() const;
    /// Nearest double, for display only.
    double to_double() const;
    /// Serialized form "m*2^e".
    std::string str() const;
    /// Parses "m*2^e", a plain integer, or a decimal literal that is exactly
    /// representable (e.g. "0.25"); throws std::invalid_argument otherwise.
    static Dyadic parse(const std::string& s);

    /// Round a rational down / up to an integer multiple of 2^e.
    static Dyadic floor_to(const mpq_class& x, long e);
    static Dyadic ceil_to(const mpq_class& x, long e);

    /// Upper / lower bound on sqrt(x) at roughly `bits` fractional bits; x >= 0.
    static Dyadic sqrt_upper(const Dyadic& x, long bits);
    static Dyadic sqrt_lower(const Dyadic& x, long bits);

private:
    struct nocheck {};
    Dyadic(const mpz_class& m, long e, nocheck) : man_(m), exp_(e) { normalize(); }
    void normalize();

    mpz_class man_;
    long exp_;
};

/// Grid interval (n, m)_1 = [(n-1/2)*2^m, (n+1/2)*2^m]; width is exactly 2^m.
/// "L-bit" means m <= -L. This is the shape oracle queries return; working
/// interval arithmetic uses exact endpoints (ExactInterval) instead.
struct DyadicInterval {
    mpz_class n;
    long m = 0;

    DyadicInterval() : n(0), m(0) {}
    DyadicInterval(const mpz_class& n_, long m_) : n(n_), m(m_) {}

    Dyadic center() const { return Dyadic(n, m); }
    Dyadic halfwidth() const { return Dyadic::pow2(m - 1); }
    Dyadic lo() const { return Dyadic(2 * n - 1, m - 1); }
    Dyadic hi() const { return Dyadic(2 * n + 1, m - 1); }

    bool is_lbit(long L) const { return m <= -L; }

    bool contains(const Dyadic& x) const { return lo() <= x && x <= hi(); }
    bool contains(const DyadicInterval& o) const { return lo() <= o.lo() && o.hi() <= hi(); }

    /// Smallest-width grid enclosure of [lo, hi] (largest constrained by
    /// m_floor when given). For a nonzero point the canonical exponent is used.
    static DyadicInterval hull(const Dyadic& lo, const Dyadic& hi);
    static DyadicInterval hull_at_least(const Dyadic& lo, const Dyadic& hi, long m_floor);

    std::string str() const;
};

/// Closed interval with exact dyadic endpoints; arithmetic is exact and
/// never rounds. Outward rounding happens only in explicit coarsen calls.
struct ExactInterval {
    Dyadic lo, hi;

    ExactInterval() = default;
    ExactInterval(const Dyadic& l, const Dyadic& h) : lo(l), hi(h) {}

    static ExactInterval point(const Dyadic& x) { return {x, x}; }
    static ExactInterval from_grid(const DyadicInterval& g) { return {g.lo(), g.hi()}; }

    Dyadic width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }

    ExactInterval operator+(const ExactInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    ExactInterval operator-(const ExactInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    ExactInterval operator-() const { return {-hi, -lo}; }
    ExactInterval operator*(const ExactInterval& o) const;
    /// Exact scaling by a dyadic constant.
    ExactInterval scale(const Dyadic& c) const {
        Dyadic a = lo * c, b = hi * c;
        return c.sign() >= 0 ? ExactInterval{a, b} : ExactInterval{b, a};
    }

    bool contains(const Dyadic& x) const { return lo <= x && x <= hi; }
    bool contains(const ExactInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }

    /// Outward rounding of both endpoints to about `bits` significant bits.
    ExactInterval coarsen(size_t bits) const;

    Dyadic abs_lower() const;
    Dyadic abs_upper() const { Dyadic a = lo.abs(), b = hi.abs(); return a > b ? a : b; }

    size_t mantissa_bits() const {
        size_t a = lo.mantissa_bits(), b = hi.mantissa_bits();
        return a > b ? a : b;
    }

    std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }
};

/// Rectangle in C with exact endpoints; width = max component width.
struct ComplexInterval {
    ExactInterval re, im;

    ComplexInterval() = default;
    ComplexInterval(const ExactInterval& r, const ExactInterval& i) : re(r), im(i) {}

    static ComplexInterval point(const Dyadic& x, const Dyadic& y = Dyadic()) {
        return {ExactInterval::point(x), ExactInterval::point(y)};
    }

    Dyadic width() const {
        Dyadic a = re.width(), b = im.width();
        return a > b ? a : b;
    }
    bool is_lbit(long L) const { return width() <= Dyadic::pow2(-L); }

    ComplexInterval operator+(const ComplexInterval& o) const { return {re + o.re, im + o.im}; }
    ComplexInterval operator-(const ComplexInterval& o) const { return {re - o.re, im - o.im}; }
    ComplexInterval operator-() const { return {-re, -im}; }
    ComplexInterval operator*(const ComplexInterval& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexInterval scale(const Dyadic& c) const { return {re.scale(c), im.scale(c)}; }
    ComplexInterval coarsen(size_t bits) const { return {re.coarsen(bits), im.coarsen(bits)}; }

    bool contains(const Dyadic& x, const Dyadic& y) const {
        return re.contains(x) && im.contains(y);
    }
    bool contains(const ComplexInterval& o) const {
        return re.contains(o.re) && im.contains(o.im);
    }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

    /// Bounds on |z| over the rectangle.
    Dyadic abs_lower() const;
    Dyadic abs_upper() const;

    size_t mantissa_bits() const {
        size_t a = re.mantissa_bits(), b = im.mantissa_bits();
        return a > b ? a : b;
    }

    std::string str() const { return re.str() + " + i*" + im.str(); }
};

/// L-bit grid rectangle, the return shape of oracle queries:
/// query(L) = (x)_L + i (y)_L with both components L-bit grid intervals.
struct ComplexGrid {
    DyadicInterval re, im;

    bool is_lbit(long L) const { return re.is_lbit(L) && im.is_lbit(L); }
    bool contains(const ComplexGrid& o) const { return re.contains(o.re) && im.contains(o.im); }
    ComplexInterval to_interval() const {
        return {ExactInterval::from_grid(re), ExactInterval::from_grid(im)};
    }
};

/// Square complex box: center (cx, cy), side length w > 0.
struct Box {
    Dyadic cx, cy, w;

    Box() = default;
    Box(const Dyadic& cx_, const Dyadic& cy_, const Dyadic& w_) : cx(cx_), cy(cy_), w(w_) {}

    Box scaled(const Dyadic& d) const { return Box(cx, cy, w * d); }
    Dyadic half() const { return w.mul_pow2(-1); }

    ComplexInterval enclosure() const {
        Dyadic h = half();
        return {ExactInterval{cx - h, cx + h}, ExactInterval{cy - h, cy + h}};
    }

    std::vector<Box> quadrisect() const {
        Dyadic q = w.mul_pow2(-2), h = w.mul_pow2(-1);
        return {Box(cx - q, cy - q, h), Box(cx + q, cy - q, h),
                Box(cx - q, cy + q, h), Box(cx + q, cy + q, h)};
    }
};

/// Complex disc: center (cx, cy), radius r > 0.
struct Disc {
    Dyadic cx, cy, r;

    Disc() = default;
    Disc(const Dyadic& cx_, const Dyadic& cy_, const Dyadic& r_) : cx(cx_), cy(cy_), r(r_) {}

    Disc scaled(const Dyadic& d) const { return Disc(cx, cy, r * d); }

    /// Square enclosure of the disc.
    ComplexInterval enclosure() const {
        return {ExactInterval{cx - r, cx + r}, ExactInterval{cy - r, cy + r}};
    }
    /// Smallest box containing the disc (width 2r).
    Box bounding_box() const { return Box(cx, cy, r.mul_pow2(1)); }

    bool intersects(const Disc& o) const;
    bool contains_box(const Box& b) const;
    bool intersects_box(const Box& b) const;
};

using PolyBox = std::vector<Box>;
using PolyDisc = std::vector<Disc>;

/// Disc with the box's center and radius (3/4) * width; contains the box.
Disc containing_disc(const Box& b);
PolyDisc containing_disc(const PolyBox& b);

Dyadic polybox_width(const PolyBox& b);

}  // namespace tricluster
