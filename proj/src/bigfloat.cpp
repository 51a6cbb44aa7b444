#include "hpe/bigfloat.hpp"

#include <algorithm>
#include <climits>

namespace hpe {

namespace {

long joint(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

BigFloat::BigFloat(long prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long prec, double x)
{
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
}

BigFloat::BigFloat(long prec, const Rat& q)
{
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(long prec, const mpz_class& z)
{
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(long prec, const std::string& decimal)
{
    mpfr_init2(v_, prec);
    mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::with_prec(long prec) const
{
    BigFloat r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string BigFloat::str(int digits) const
{
    char* buf = nullptr;
    if (digits <= 0)
        digits = static_cast<int>(prec() * 0.30103) + 1;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Rat BigFloat::to_rat() const
{
    if (!is_finite())
        return Rat(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rat q(m);
    if (e >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    q.canonicalize();
    return q;
}

long BigFloat::exponent() const
{
    if (!mpfr_regular_p(v_))
        return LONG_MIN / 2;
    return static_cast<long>(mpfr_get_exp(v_));
}

BigFloat& BigFloat::operator+=(const BigFloat& o) { return *this = *this + o; }
BigFloat& BigFloat::operator-=(const BigFloat& o) { return *this = *this - o; }
BigFloat& BigFloat::operator*=(const BigFloat& o) { return *this = *this * o; }
BigFloat& BigFloat::operator/=(const BigFloat& o) { return *this = *this / o; }

BigFloat BigFloat::pi(long prec)
{
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow2(long prec, long e)
{
    BigFloat r(prec, 1.0);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::inf(long prec, int sign)
{
    BigFloat r(prec);
    mpfr_set_inf(r.v_, sign);
    return r;
}

#define HPE_BINOP(OP, FN)                                         \
    BigFloat operator OP(const BigFloat& a, const BigFloat& b)    \
    {                                                             \
        BigFloat r(joint(a, b));                                  \
        FN(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                 \
        return r;                                                 \
    }

HPE_BINOP(+, mpfr_add)
HPE_BINOP(-, mpfr_sub)
HPE_BINOP(*, mpfr_mul)
HPE_BINOP(/, mpfr_div)
#undef HPE_BINOP

BigFloat operator-(const BigFloat& a)
{
    BigFloat r(a.prec());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, long k)
{
    BigFloat r(a.prec());
    mpfr_mul_si(r.raw(), a.raw(), k, MPFR_RNDN);
    return r;
}

bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

#define HPE_UNARY(NAME, FN)                  \
    BigFloat NAME(const BigFloat& a)         \
    {                                        \
        BigFloat r(a.prec());                \
        FN(r.raw(), a.raw(), MPFR_RNDN);     \
        return r;                            \
    }

HPE_UNARY(abs, mpfr_abs)
HPE_UNARY(sqrt, mpfr_sqrt)
HPE_UNARY(exp, mpfr_exp)
HPE_UNARY(log, mpfr_log)
HPE_UNARY(sin, mpfr_sin)
HPE_UNARY(cos, mpfr_cos)
HPE_UNARY(sinh, mpfr_sinh)
HPE_UNARY(cosh, mpfr_cosh)
HPE_UNARY(gamma, mpfr_gamma)
#undef HPE_UNARY

BigFloat pow(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(joint(a, b));
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x)
{
    BigFloat r(joint(x, y));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat hypot(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(joint(a, b));
    mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

std::string BigComplex::str(int digits) const
{
    std::string s = re.str(digits);
    if (im.sign() >= 0)
        s += "+";
    return s + im.str(digits) + "i";
}

BigComplex& BigComplex::operator+=(const BigComplex& o) { return *this = *this + o; }
BigComplex& BigComplex::operator-=(const BigComplex& o) { return *this = *this - o; }
BigComplex& BigComplex::operator*=(const BigComplex& o) { return *this = *this * o; }
BigComplex& BigComplex::operator/=(const BigComplex& o) { return *this = *this / o; }

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

BigComplex operator*(const BigComplex& a, const BigComplex& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator*(const BigComplex& a, const BigFloat& s) { return {a.re * s, a.im * s}; }

BigComplex operator/(const BigComplex& a, const BigComplex& b)
{
    // Smith's algorithm keeps intermediate magnitudes bounded
    if (abs(b.re) >= abs(b.im)) {
        BigFloat t = b.im / b.re;
        BigFloat d = b.re + b.im * t;
        return {(a.re + a.im * t) / d, (a.im - a.re * t) / d};
    }
    BigFloat t = b.re / b.im;
    BigFloat d = b.re * t + b.im;
    return {(a.re * t + a.im) / d, (a.im * t - a.re) / d};
}

BigFloat abs(const BigComplex& z) { return hypot(z.re, z.im); }
BigFloat arg(const BigComplex& z) { return atan2(z.im, z.re); }
BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigComplex polar(const BigFloat& r, const BigFloat& theta) { return {r * cos(theta), r * sin(theta)}; }

BigComplex exp(const BigComplex& z) { return polar(exp(z.re), z.im); }

BigComplex log(const BigComplex& z) { return {log(abs(z)), arg(z)}; }

BigComplex pow(const BigComplex& z, const BigComplex& w)
{
    if (z.is_zero())
        return BigComplex(z.prec());
    return exp(w * log(z));
}

BigComplex pow(const BigComplex& z, const BigFloat& w)
{
    if (z.is_zero())
        return BigComplex(z.prec());
    return polar(exp(w * log(abs(z))), w * arg(z));
}

}  // namespace hpe
