#include "tricluster/dyadic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tricluster {

void Dyadic::normalize() {
    if (man_ == 0) {
        exp_ = 0;
        return;
    }
    unsigned long tz = mpz_scan1(man_.get_mpz_t(), 0);
    if (tz > 0) {
        man_ >>= tz;
        exp_ += static_cast<long>(tz);
    }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long e = exp_ < o.exp_ ? exp_ : o.exp_;
    mpz_class a = man_ << static_cast<unsigned long>(exp_ - e);
    mpz_class b = o.man_ << static_cast<unsigned long>(o.exp_ - e);
    return Dyadic(a + b, e, nocheck{});
}

int Dyadic::cmp(const Dyadic& o) const {
    int sa = sign(), sb = o.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // Same nonzero sign: compare magnitude ranges before aligning mantissas.
    long ha = floor_log2(), hb = o.floor_log2();
    if (ha != hb) return (ha < hb) == (sa > 0) ? -1 : 1;
    long e = exp_ < o.exp_ ? exp_ : o.exp_;
    mpz_class a = man_ << static_cast<unsigned long>(exp_ - e);
    mpz_class b = o.man_ << static_cast<unsigned long>(o.exp_ - e);
    return ::cmp(a, b);
}

long Dyadic::floor_log2() const {
    if (man_ == 0) throw std::domain_error("floor_log2 of zero");
    return exp_ + static_cast<long>(mpz_sizeinbase(man_.get_mpz_t(), 2)) - 1;
}

Dyadic Dyadic::floor_pow2(long e) const {
    if (is_zero() || exp_ >= e) return *this;
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), man_.get_mpz_t(), static_cast<unsigned long>(e - exp_));
    return Dyadic(q, e);
}

mpq_class Dyadic::to_mpq() const {
    mpq_class q(man_);
    if (exp_ >= 0) {
        mpz_class p = 1;
        p <<= static_cast<unsigned long>(exp_);
        q *= mpq_class(p);
    } else {
        mpz_class p = 1;
        p <<= static_cast<unsigned long>(-exp_);
        q /= mpq_class(p);
    }
    return q;
}

double Dyadic::to_double() const {
    if (man_ == 0) return 0.0;
    // Clamp the shift so huge exponents degrade to +-inf instead of UB.
    long e = exp_;
    double m = man_.get_d();
    if (e > 4000) e = 4000;
    if (e < -4000) e = -4000;
    return std::ldexp(m, static_cast<int>(e));
}

std::string Dyadic::str() const {
    std::ostringstream os;
    os << man_ << "*2^" << exp_;
    return os.str();
}

Dyadic Dyadic::parse(const std::string& s) {
    auto star = s.find("*2^");
    if (star != std::string::npos) {
        mpz_class m(s.substr(0, star), 10);
        long e = std::stol(s.substr(star + 3));
        return Dyadic(m, e);
    }
    auto dot = s.find('.');
    std::string digits = s;
    long frac = 0;
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        frac = static_cast<long>(s.size() - dot - 1);
    }
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    if (frac == 0) return Dyadic(num, 0);
    // num / 10^frac must be a binary rational: strip factors of 5 exactly.
    mpz_class den = 1;
    for (long i = 0; i < frac; ++i) den *= 10;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    num /= g;
    den /= g;
    if (den == 0) throw std::invalid_argument("bad literal: " + s);
    unsigned long tz = mpz_scan1(den.get_mpz_t(), 0);
    mpz_class odd = den >> tz;
    if (odd != 1) throw std::invalid_argument("decimal literal is not a dyadic rational: " + s);
    return Dyadic(num, -static_cast<long>(tz));
}

Dyadic Dyadic::floor_to(const mpq_class& x, long e) {
    mpq_class scaled = x;
    if (e >= 0) {
        mpz_class p = 1;
        p <<= static_cast<unsigned long>(e);
        scaled /= mpq_class(p);
    } else {
        mpz_class p = 1;
        p <<= static_cast<unsigned long>(-e);
        scaled *= mpq_class(p);
    }
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    return Dyadic(fl, e);
}

Dyadic Dyadic::ceil_to(const mpq_class& x, long e) { return -floor_to(-x, e); }

Dyadic Dyadic::sqrt_upper(const Dyadic& x, long bits) {
    if (x.sign() < 0) throw std::domain_error("sqrt of negative value");
    if (x.is_zero()) return Dyadic();
    // Scale to an integer with even exponent 2t, t <= -bits.
    long t = x.exponent() / 2 - (bits / 2) - 2;
    mpz_class scaled = x.mantissa() << static_cast<unsigned long>(x.exponent() - 2 * t);
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    if (r * r < scaled) r += 1;
    return Dyadic(r, t);
}

Dyadic Dyadic::sqrt_lower(const Dyadic& x, long bits) {
    if (x.sign() < 0) throw std::domain_error("sqrt of negative value");
    if (x.is_zero()) return Dyadic();
    long t = x.exponent() / 2 - (bits / 2) - 2;
    mpz_class scaled = x.mantissa() << static_cast<unsigned long>(x.exponent() - 2 * t);
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    return Dyadic(r, t);
}

// ---------------------------------------------------------------------------
// DyadicInterval

DyadicInterval DyadicInterval::hull(const Dyadic& lo, const Dyadic& hi) {
    if (hi < lo) throw std::invalid_argument("hull: hi < lo");
    if (lo == hi) {
        if (lo.is_zero()) return DyadicInterval(0, 0);
        return DyadicInterval(lo.mantissa(), lo.exponent());
    }
    Dyadic w = hi - lo;
    return hull_at_least(lo, hi, w.floor_log2());
}

namespace {
// ceil / floor of m * 2^e as exact integers
mpz_class ceil_shift(const mpz_class& man, long e) {
    mpz_class r;
    if (e >= 0) {
        r = man << static_cast<unsigned long>(e);
        return r;
    }
    mpz_cdiv_q_2exp(r.get_mpz_t(), man.get_mpz_t(), static_cast<unsigned long>(-e));
    return r;
}
mpz_class floor_shift(const mpz_class& man, long e) {
    mpz_class r;
    if (e >= 0) {
        r = man << static_cast<unsigned long>(e);
        return r;
    }
    mpz_fdiv_q_2exp(r.get_mpz_t(), man.get_mpz_t(), static_cast<unsigned long>(-e));
    return r;
}
}

DyadicInterval DyadicInterval::hull_at_least(const Dyadic& lo, const Dyadic& hi, long m_floor) {
    if (hi < lo) throw std::invalid_argument("hull: hi < lo");
    if (lo == hi && !lo.is_zero() && lo.val2() >= m_floor)
        return DyadicInterval(lo.mantissa() << static_cast<unsigned long>(lo.val2() - m_floor),
                              m_floor);
    if (lo == hi && lo.is_zero()) return DyadicInterval(0, m_floor);
    for (long m = m_floor;; ++m) {
        // Valid n satisfy (n - 1/2) 2^m <= lo and hi <= (n + 1/2) 2^m, i.e.
        // hi*2^(1-m) - 1 <= 2n <= lo*2^(1-m) + 1.
        Dyadic lo_bound = hi.mul_pow2(1) - Dyadic::pow2(m);
        Dyadic hi_bound = lo.mul_pow2(1) + Dyadic::pow2(m);
        mpz_class two_n_min = ceil_shift(lo_bound.mantissa(), lo_bound.exponent() - m);
        mpz_class two_n_max = floor_shift(hi_bound.mantissa(), hi_bound.exponent() - m);
        if (two_n_min % 2 != 0) two_n_min += 1;
        if (two_n_min <= two_n_max) {
            DyadicInterval r(two_n_min / 2, m);
            if (r.lo() <= lo && hi <= r.hi()) return r;
        }
    }
}

std::string DyadicInterval::str() const {
    std::ostringstream os;
    os << "(" << n << ", " << m << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// ExactInterval / ComplexInterval

ExactInterval ExactInterval::operator*(const ExactInterval& o) const {
    Dyadic p1 = lo * o.lo, p2 = lo * o.hi, p3 = hi * o.lo, p4 = hi * o.hi;
    Dyadic mn = p1, mx = p1;
    for (const Dyadic* p : {&p2, &p3, &p4}) {
        if (*p < mn) mn = *p;
        if (*p > mx) mx = *p;
    }
    return {mn, mx};
}

ExactInterval ExactInterval::coarsen(size_t bits) const {
    if (bits < 4) bits = 4;
    if (mantissa_bits() <= bits) return *this;
    long scale;
    Dyadic w = width();
    if (!w.is_zero())
        scale = w.floor_log2();
    else
        scale = lo.is_zero() ? 0 : lo.floor_log2();
    Dyadic mhi = abs_upper();
    if (!mhi.is_zero() && mhi.floor_log2() > scale) scale = mhi.floor_log2();
    long e = scale - static_cast<long>(bits);
    return {lo.floor_pow2(e), hi.ceil_pow2(e)};
}

Dyadic ExactInterval::abs_lower() const {
    if (contains_zero()) return Dyadic();
    Dyadic a = lo.abs(), b = hi.abs();
    return a < b ? a : b;
}

namespace {
constexpr long kAbsBoundBits = 96;
}

Dyadic ComplexInterval::abs_lower() const {
    Dyadic dx = re.abs_lower(), dy = im.abs_lower();
    if (dx.is_zero() && dy.is_zero()) return Dyadic();
    return Dyadic::sqrt_lower(dx * dx + dy * dy, kAbsBoundBits);
}

Dyadic ComplexInterval::abs_upper() const {
    Dyadic dx = re.abs_upper(), dy = im.abs_upper();
    Dyadic s = dx * dx + dy * dy;
    if (s.is_zero()) return Dyadic();
    return Dyadic::sqrt_upper(s, kAbsBoundBits);
}

// ---------------------------------------------------------------------------
// Discs and boxes

namespace {
Dyadic sq_dist(const Dyadic& ax, const Dyadic& ay, const Dyadic& bx, const Dyadic& by) {
    Dyadic dx = ax - bx, dy = ay - by;
    return dx * dx + dy * dy;
}
}

bool Disc::intersects(const Disc& o) const {
    Dyadic s = r + o.r;
    return sq_dist(cx, cy, o.cx, o.cy) <= s * s;
}

bool Disc::contains_box(const Box& b) const {
    Dyadic h = b.half();
    Dyadic r2 = r * r;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1}) {
            Dyadic px = b.cx + (sx < 0 ? -h : h);
            Dyadic py = b.cy + (sy < 0 ? -h : h);
            if (sq_dist(px, py, cx, cy) > r2) return false;
        }
    return true;
}

bool Disc::intersects_box(const Box& b) const {
    // Distance from the disc center to the box, axis by axis.
    Dyadic h = b.half();
    Dyadic dx, dy;
    Dyadic lx = b.cx - h, ux = b.cx + h, ly = b.cy - h, uy = b.cy + h;
    if (cx < lx) dx = lx - cx;
    else if (cx > ux) dx = cx - ux;
    if (cy < ly) dy = ly - cy;
    else if (cy > uy) dy = cy - uy;
    return dx * dx + dy * dy <= r * r;
}

Disc containing_disc(const Box& b) {
    return Disc(b.cx, b.cy, (b.w * Dyadic(3)).mul_pow2(-2));
}

PolyDisc containing_disc(const PolyBox& b) {
    PolyDisc d;
    d.reserve(b.size());
    for (const Box& box : b) d.push_back(containing_disc(box));
    return d;
}

Dyadic polybox_width(const PolyBox& b) {
    Dyadic w;
    for (const Box& box : b)
        if (box.w > w) w = box.w;
    return w;
}

}  // namespace tricluster
