#pragma once

#include "hpe/bigfloat.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hpe {

// "p/q" or "p" (an optional leading sign is allowed); throws InvalidInput
Rat parse_rat(const std::string& s);
std::string format_rat(const Rat& q);

// Dense polynomial with rational coefficients in ascending degree. The
// coefficient vector never has a trailing zero; the zero polynomial is empty.
class ExactPoly {
public:
    ExactPoly() = default;
    explicit ExactPoly(std::vector<Rat> coeffs);
    ExactPoly(std::initializer_list<Rat> coeffs);

    static ExactPoly constant(const Rat& c);
    static ExactPoly x();
    static ExactPoly monomial(const Rat& c, int degree);
    // product of (x - r) over the given roots
    static ExactPoly from_roots(const std::vector<Rat>& roots);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    // coefficient of x^k, zero outside the stored range
    Rat operator[](int k) const;
    Rat lc() const;

    ExactPoly derivative() const;
    ExactPoly monic() const;
    // p(-x)
    ExactPoly reflect() const;
    Rat eval(const Rat& x) const;
    BigComplex eval(const BigComplex& z) const;
    // value and derivative in one Horner pass
    std::pair<BigComplex, BigComplex> eval_with_derivative(const BigComplex& z) const;
    BigFloat eval(const BigFloat& x) const;

    ExactPoly& operator+=(const ExactPoly& o);
    ExactPoly& operator-=(const ExactPoly& o);
    ExactPoly& operator*=(const ExactPoly& o);
    ExactPoly& operator*=(const Rat& s);

    bool operator==(const ExactPoly& o) const { return c_ == o.c_; }
    bool operator!=(const ExactPoly& o) const { return c_ != o.c_; }

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rat> c_;
};

ExactPoly operator+(ExactPoly a, const ExactPoly& b);
ExactPoly operator-(ExactPoly a, const ExactPoly& b);
ExactPoly operator-(const ExactPoly& a);
ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
ExactPoly operator*(ExactPoly a, const Rat& s);
ExactPoly operator*(const Rat& s, ExactPoly a);
ExactPoly pow(const ExactPoly& p, int k);

// Euclidean division: num = q*den + r with deg r < deg den
std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& num, const ExactPoly& den);
// throws InexactDivision on nonzero remainder
ExactPoly poly_div_exact(const ExactPoly& num, const ExactPoly& den);
// monic gcd; gcd(0,0) = 0
ExactPoly gcd(const ExactPoly& a, const ExactPoly& b);
// p q' - p' q
ExactPoly wronskian(const ExactPoly& p, const ExactPoly& q);
// largest k with (x - r)^k dividing p (p nonzero)
int root_multiplicity(const ExactPoly& p, const Rat& r);
// true when p is a rational multiple of q (both nonzero)
bool proportional(const ExactPoly& p, const ExactPoly& q);

// Square-free decomposition p = lc * prod f_k^k; returns (f_k, k) with f_k monic, nonconstant
std::vector<std::pair<ExactPoly, int>> squarefree_factors(const ExactPoly& p);
// fast probabilistic-free check: a modular gcd of degree 0 proves square-freeness;
// falls back to the exact gcd otherwise
bool is_squarefree(const ExactPoly& p);

// Truncated Laurent expansion at infinity:
//   poly_part(z) + sum_{k < order} coeffs[k] z^{-k-1} + O(z^{-order-1}).
// Only the first `order` tail coefficients are trusted.
class LaurentTail {
public:
    LaurentTail() = default;
    LaurentTail(std::vector<Rat> coeffs, ExactPoly poly_part = {});

    int order() const { return static_cast<int>(c_.size()); }
    const std::vector<Rat>& coeffs() const { return c_; }
    const ExactPoly& poly_part() const { return poly_; }
    Rat coeff(int k) const;  // throws PrecisionExhausted past the order
    // index of the first nonzero tail coefficient, or -1 if none within order
    int valuation() const;
    LaurentTail truncated(int order) const;

    LaurentTail derivative() const;
    LaurentTail operator-() const;
    bool operator==(const LaurentTail& o) const { return c_ == o.c_ && poly_ == o.poly_; }

private:
    std::vector<Rat> c_;
    ExactPoly poly_;
};

LaurentTail operator+(const LaurentTail& a, const LaurentTail& b);
LaurentTail operator-(const LaurentTail& a, const LaurentTail& b);
LaurentTail operator*(const ExactPoly& p, const LaurentTail& t);
LaurentTail operator*(const LaurentTail& t, const Rat& s);
LaurentTail series_mul(const LaurentTail& a, const LaurentTail& b);

}  // namespace hpe
