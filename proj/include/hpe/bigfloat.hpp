#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace hpe {

using Rat = mpq_class;

constexpr long kDefaultPrecision = 256;

// Binary float with an explicit precision in bits. Binary operations round
// to the larger of the operand precisions.
class BigFloat {
public:
    explicit BigFloat(long prec = kDefaultPrecision);
    BigFloat(long prec, double x);
    BigFloat(long prec, const Rat& q);
    BigFloat(long prec, const mpz_class& z);
    BigFloat(long prec, const std::string& decimal);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }
    BigFloat with_prec(long prec) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(int digits = 0) const;
    Rat to_rat() const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // base-2 exponent e with |x| in [2^(e-1), 2^e); very negative for zero
    long exponent() const;

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);

    static BigFloat pi(long prec);
    static BigFloat pow2(long prec, long e);
    static BigFloat inf(long prec, int sign = 1);

private:
    mpfr_t v_;
};

BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a);
BigFloat operator*(const BigFloat& a, long k);

bool operator<(const BigFloat& a, const BigFloat& b);
bool operator>(const BigFloat& a, const BigFloat& b);
bool operator<=(const BigFloat& a, const BigFloat& b);
bool operator>=(const BigFloat& a, const BigFloat& b);
bool operator==(const BigFloat& a, const BigFloat& b);

BigFloat abs(const BigFloat& a);
BigFloat sqrt(const BigFloat& a);
BigFloat exp(const BigFloat& a);
BigFloat log(const BigFloat& a);
BigFloat pow(const BigFloat& a, const BigFloat& b);
BigFloat sin(const BigFloat& a);
BigFloat cos(const BigFloat& a);
BigFloat sinh(const BigFloat& a);
BigFloat cosh(const BigFloat& a);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat gamma(const BigFloat& a);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat hypot(const BigFloat& a, const BigFloat& b);

class BigComplex {
public:
    explicit BigComplex(long prec = kDefaultPrecision) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(const BigFloat& r) : re(r), im(r.prec()) {}
    BigComplex(long prec, double r, double i = 0.0) : re(prec, r), im(prec, i) {}
    BigComplex(long prec, const Rat& r) : re(prec, r), im(prec) {}

    long prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
    BigComplex with_prec(long prec) const { return {re.with_prec(prec), im.with_prec(prec)}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    std::string str(int digits = 0) const;

    BigComplex& operator+=(const BigComplex& o);
    BigComplex& operator-=(const BigComplex& o);
    BigComplex& operator*=(const BigComplex& o);
    BigComplex& operator/=(const BigComplex& o);

    BigFloat re;
    BigFloat im;
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a);
BigComplex operator*(const BigComplex& a, const BigFloat& s);

BigFloat abs(const BigComplex& z);
BigFloat arg(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex exp(const BigComplex& z);
// principal branch
BigComplex log(const BigComplex& z);
BigComplex pow(const BigComplex& z, const BigComplex& w);
BigComplex pow(const BigComplex& z, const BigFloat& w);
BigComplex polar(const BigFloat& r, const BigFloat& theta);

}  // namespace hpe
