#include "tricluster/oracle.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace tricluster {
namespace detail {

namespace {

// Rectangle holding the value strictly in its interior.
struct ExactRect {
    Dyadic xlo, xhi, ylo, yhi;

    Dyadic width() const {
        Dyadic wx = xhi - xlo, wy = yhi - ylo;
        return wx > wy ? wx : wy;
    }
    ExactRect intersect(const ExactRect& o) const {
        ExactRect r;
        r.xlo = xlo > o.xlo ? xlo : o.xlo;
        r.xhi = xhi < o.xhi ? xhi : o.xhi;
        r.ylo = ylo > o.ylo ? ylo : o.ylo;
        r.yhi = yhi < o.yhi ? yhi : o.yhi;
        if (r.xhi < r.xlo || r.yhi < r.ylo)
            throw std::logic_error("oracle enclosures drifted apart");
        return r;
    }
};

mpz_class ceil_shift(const Dyadic& x, long m) {
    // ceil(x * 2^-m)
    mpz_class r;
    long e = x.exponent() - m;
    if (e >= 0) return x.mantissa() << static_cast<unsigned long>(e);
    mpz_cdiv_q_2exp(r.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<unsigned long>(-e));
    return r;
}
mpz_class floor_shift(const Dyadic& x, long m) {
    mpz_class r;
    long e = x.exponent() - m;
    if (e >= 0) return x.mantissa() << static_cast<unsigned long>(e);
    mpz_fdiv_q_2exp(r.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<unsigned long>(-e));
    return r;
}

// Grid interval R with [lo, hi] inside R, width(R) <= 2^-L and, when `within`
// is given, R contained in it. Returns nullopt if no exponent down to m_stop
// admits one (caller then refines [lo, hi] and retries).
std::optional<DyadicInterval> grid_fit(const Dyadic& lo, const Dyadic& hi, long L,
                                       const DyadicInterval* within, long m_stop) {
    for (long m = -L; m >= m_stop; --m) {
        // Containment of [lo, hi]: hi*2^(1-m) - 1 <= 2n <= lo*2^(1-m) + 1.
        mpz_class two_n_min = ceil_shift(hi.mul_pow2(1) - Dyadic::pow2(m), m);
        mpz_class two_n_max = floor_shift(lo.mul_pow2(1) + Dyadic::pow2(m), m);
        if (within) {
            // R inside `within`: within.lo*2^(1-m) + 1 <= 2n <= within.hi*2^(1-m) - 1.
            mpz_class wmin = ceil_shift(within->lo().mul_pow2(1), m) + 1;
            mpz_class wmax = floor_shift(within->hi().mul_pow2(1), m) - 1;
            if (wmin > two_n_min) two_n_min = wmin;
            if (wmax < two_n_max) two_n_max = wmax;
        }
        if (two_n_min % 2 != 0) two_n_min += 1;
        if (two_n_min > two_n_max) continue;
        DyadicInterval r(two_n_min / 2, m);
        if (r.lo() <= lo && hi <= r.hi() && (!within || within->contains(r))) return r;
    }
    return std::nullopt;
}

long ladder_step(long L) {
    long s = 64;
    while (s < L + 8) s *= 2;
    return s;
}

}  // namespace

class OracleImpl {
public:
    virtual ~OracleImpl() = default;

    ComplexGrid query(long L) {
        std::lock_guard<std::mutex> lock(mu_);
        long step = ladder_step(L);
        auto it = ladder_.find(step);
        if (it != ladder_.end()) return it->second;
        ComplexGrid result;
        for (long s = 64; s <= step; s *= 2) {
            auto found = ladder_.find(s);
            if (found != ladder_.end()) {
                result = found->second;
                continue;
            }
            result = compute_link(s, ladder_.empty() ? nullptr : &ladder_.rbegin()->second);
            ladder_.emplace(s, result);
        }
        return result;
    }

    virtual bool exact_rational(mpq_class&, mpq_class&) const { return false; }
    virtual std::string describe() const = 0;

protected:
    /// Strict enclosure of the value with width <= 2^(-bits).
    virtual ExactRect refine(long bits) = 0;

private:
    ComplexGrid compute_link(long s, const ComplexGrid* prev) {
        long bits = s + 4;
        for (int round = 0; round < 64; ++round) {
            ExactRect e = refine(bits);
            cur_ = cur_ ? cur_->intersect(e) : e;
            if (cur_->width() <= Dyadic::pow2(-s - 4)) {
                long m_stop = -s - 512;
                auto re = grid_fit(cur_->xlo, cur_->xhi, s, prev ? &prev->re : nullptr, m_stop);
                auto im = grid_fit(cur_->ylo, cur_->yhi, s, prev ? &prev->im : nullptr, m_stop);
                if (re && im) return ComplexGrid{*re, *im};
            }
            bits = bits * 2 + 16;
        }
        throw std::logic_error("oracle refinement failed to converge: " + describe());
    }

    std::mutex mu_;
    std::map<long, ComplexGrid> ladder_;
    std::optional<ExactRect> cur_;
};

namespace {

class RationalImpl final : public OracleImpl {
public:
    RationalImpl(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    bool exact_rational(mpq_class& re, mpq_class& im) const override {
        re = re_;
        im = im_;
        return true;
    }

    std::string describe() const override {
        std::ostringstream os;
        os << re_;
        if (im_ != 0) os << (im_ > 0 ? "+" : "") << im_ << "*i";
        return os.str();
    }

protected:
    ExactRect refine(long bits) override {
        long e = -bits - 2;
        ExactRect r;
        r.xlo = Dyadic::floor_to(re_, e) - Dyadic::pow2(e);
        r.xhi = Dyadic::ceil_to(re_, e) + Dyadic::pow2(e);
        r.ylo = Dyadic::floor_to(im_, e) - Dyadic::pow2(e);
        r.yhi = Dyadic::ceil_to(im_, e) + Dyadic::pow2(e);
        return r;
    }

private:
    mpq_class re_, im_;
};

class AlgebraicImpl final : public OracleImpl {
public:
    AlgebraicImpl(std::vector<mpz_class> poly, mpq_class a, mpq_class b)
        : poly_(std::move(poly)), a_(std::move(a)), b_(std::move(b)) {
        int sa = eval_sign(a_), sb = eval_sign(b_);
        if (sa == 0) { exact_ = a_; return; }
        if (sb == 0) { exact_ = b_; return; }
        if (sa == sb) throw std::invalid_argument("isolating interval has no sign change");
        sign_lo_ = sa;
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "algebraic(deg " << poly_.size() - 1 << ", (" << a_ << ", " << b_ << "))";
        return os.str();
    }

protected:
    ExactRect refine(long bits) override {
        long e = -bits - 2;
        ExactRect r;
        r.ylo = -Dyadic::pow2(e);
        r.yhi = Dyadic::pow2(e);
        if (exact_) {
            r.xlo = Dyadic::floor_to(*exact_, e) - Dyadic::pow2(e);
            r.xhi = Dyadic::ceil_to(*exact_, e) + Dyadic::pow2(e);
            return r;
        }
        mpq_class w = b_ - a_;
        mpq_class target = Dyadic::pow2(-bits - 2).to_mpq();
        while (w > target) {
            mpq_class mid = (a_ + b_) / 2;
            int s = eval_sign(mid);
            if (s == 0) {
                exact_ = mid;
                return refine(bits);
            }
            if (s == sign_lo_) a_ = mid; else b_ = mid;
            w = b_ - a_;
        }
        // Root lies strictly inside (a, b); dyadic outward rounding keeps it so.
        r.xlo = Dyadic::floor_to(a_, e);
        r.xhi = Dyadic::ceil_to(b_, e);
        return r;
    }

private:
    int eval_sign(const mpq_class& x) const {
        mpq_class acc = 0;
        for (size_t i = poly_.size(); i-- > 0;) acc = acc * x + poly_[i];
        return sgn(acc);
    }

    std::vector<mpz_class> poly_;
    mpq_class a_, b_;
    int sign_lo_ = 0;
    std::optional<mpq_class> exact_;
};

enum class BinOp { add, sub, mul };

class BinaryImpl final : public OracleImpl {
public:
    BinaryImpl(BinOp op, std::shared_ptr<OracleImpl> lhs, std::shared_ptr<OracleImpl> rhs)
        : op_(op), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

    bool exact_rational(mpq_class& re, mpq_class& im) const override {
        mpq_class ar, ai, br, bi;
        if (!lhs_->exact_rational(ar, ai) || !rhs_->exact_rational(br, bi)) return false;
        switch (op_) {
            case BinOp::add: re = ar + br; im = ai + bi; break;
            case BinOp::sub: re = ar - br; im = ai - bi; break;
            case BinOp::mul: re = ar * br - ai * bi; im = ar * bi + ai * br; break;
        }
        return true;
    }

    std::string describe() const override {
        const char* sym = op_ == BinOp::add ? " + " : op_ == BinOp::sub ? " - " : " * ";
        return "(" + lhs_->describe() + sym + rhs_->describe() + ")";
    }

protected:
    ExactRect refine(long bits) override {
        long q = bits + 8;
        for (int round = 0; round < 64; ++round) {
            ComplexInterval a = lhs_->query(q).to_interval();
            ComplexInterval b = rhs_->query(q).to_interval();
            ComplexInterval c = op_ == BinOp::add ? a + b : op_ == BinOp::sub ? a - b : a * b;
            // Pad one grid ulp so the value stays strictly interior.
            Dyadic ulp = Dyadic::pow2(-q - 8);
            ExactRect r{c.re.lo - ulp, c.re.hi + ulp, c.im.lo - ulp, c.im.hi + ulp};
            if (r.width() <= Dyadic::pow2(-bits)) return r;
            q = q * 2 + 16;
        }
        throw std::logic_error("composite oracle failed to converge: " + describe());
    }

private:
    BinOp op_;
    std::shared_ptr<OracleImpl> lhs_, rhs_;
};

class NegImpl final : public OracleImpl {
public:
    explicit NegImpl(std::shared_ptr<OracleImpl> a) : a_(std::move(a)) {}

    bool exact_rational(mpq_class& re, mpq_class& im) const override {
        if (!a_->exact_rational(re, im)) return false;
        re = -re;
        im = -im;
        return true;
    }

    std::string describe() const override { return "-" + a_->describe(); }

protected:
    ExactRect refine(long bits) override {
        ComplexInterval a = a_->query(bits + 4).to_interval();
        return ExactRect{-a.re.hi, -a.re.lo, -a.im.hi, -a.im.lo};
    }

private:
    std::shared_ptr<OracleImpl> a_;
};

}  // namespace
}  // namespace detail

using detail::OracleImpl;

OracleNumber::OracleNumber()
    : impl_(std::make_shared<detail::RationalImpl>(mpq_class(0), mpq_class(0))) {}
OracleNumber::OracleNumber(std::shared_ptr<OracleImpl> impl) : impl_(std::move(impl)) {}

ComplexGrid OracleNumber::query(long L) const { return impl_->query(L); }

OracleNumber OracleNumber::integer(const mpz_class& v) {
    return OracleNumber(std::make_shared<detail::RationalImpl>(mpq_class(v), mpq_class(0)));
}

OracleNumber OracleNumber::rational(const mpq_class& re, const mpq_class& im) {
    return OracleNumber(std::make_shared<detail::RationalImpl>(re, im));
}

OracleNumber OracleNumber::dyadic(const Dyadic& re, const Dyadic& im) {
    return OracleNumber(std::make_shared<detail::RationalImpl>(re.to_mpq(), im.to_mpq()));
}

OracleNumber OracleNumber::decimal(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class q(s, 10);
        q.canonicalize();
        return rational(q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return rational(mpq_class(s, 10));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    mpq_class num(digits, 10);
    mpq_class den = 1;
    for (size_t i = 0; i < frac; ++i) den *= 10;
    mpq_class q = num / den;
    q.canonicalize();
    return rational(q);
}

OracleNumber OracleNumber::algebraic(const std::vector<mpz_class>& poly, const mpq_class& a,
                                     const mpq_class& b) {
    return OracleNumber(std::make_shared<detail::AlgebraicImpl>(poly, a, b));
}

OracleNumber OracleNumber::sqrt_of(unsigned long k) {
    if (k == 0) return integer(0);
    mpz_class kk(static_cast<long>(k));
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), kk.get_mpz_t());
    if (root * root == kk) return integer(root);
    return algebraic({-kk, 0, 1}, mpq_class(0), mpq_class(kk + 1));
}

OracleNumber OracleNumber::operator+(const OracleNumber& o) const {
    return OracleNumber(std::make_shared<detail::BinaryImpl>(detail::BinOp::add, impl_, o.impl_));
}
OracleNumber OracleNumber::operator-(const OracleNumber& o) const {
    return OracleNumber(std::make_shared<detail::BinaryImpl>(detail::BinOp::sub, impl_, o.impl_));
}
OracleNumber OracleNumber::operator*(const OracleNumber& o) const {
    return OracleNumber(std::make_shared<detail::BinaryImpl>(detail::BinOp::mul, impl_, o.impl_));
}
OracleNumber OracleNumber::operator-() const {
    return OracleNumber(std::make_shared<detail::NegImpl>(impl_));
}

bool OracleNumber::is_exact_rational() const {
    mpq_class re, im;
    return impl_->exact_rational(re, im);
}

std::pair<mpq_class, mpq_class> OracleNumber::exact_value() const {
    mpq_class re, im;
    if (!impl_->exact_rational(re, im))
        throw std::logic_error("oracle has no exact rational value");
    return {re, im};
}

std::string OracleNumber::describe() const { return impl_->describe(); }

}  // namespace tricluster
