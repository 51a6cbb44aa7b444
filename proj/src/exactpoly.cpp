#include "hpe/exactpoly.hpp"

#include "hpe/error.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <sstream>

namespace hpe {

Rat parse_rat(const std::string& s)
{
    std::string t;
    for (char ch : s)
        if (ch != ' ')
            t += ch;
    if (!t.empty() && t[0] == '+')
        t.erase(0, 1);
    if (t.empty())
        throw Error(ErrorKind::InvalidInput, "empty rational literal");
    auto slash = t.find('/');
    auto digits_ok = [](const std::string& u, bool allow_sign) {
        size_t i = 0;
        if (allow_sign && !u.empty() && u[0] == '-')
            i = 1;
        if (i >= u.size())
            return false;
        return std::all_of(u.begin() + static_cast<long>(i), u.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw Error(ErrorKind::InvalidInput, "not a rational literal: '" + s + "'");
    mpz_class d(den);
    if (d == 0)
        throw Error(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
    Rat q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

std::string format_rat(const Rat& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ExactPoly::ExactPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

ExactPoly::ExactPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

ExactPoly ExactPoly::constant(const Rat& c) { return ExactPoly(std::vector<Rat>{c}); }

ExactPoly ExactPoly::x() { return ExactPoly({Rat(0), Rat(1)}); }

ExactPoly ExactPoly::monomial(const Rat& c, int degree)
{
    std::vector<Rat> v(static_cast<size_t>(degree) + 1);
    v.back() = c;
    return ExactPoly(std::move(v));
}

ExactPoly ExactPoly::from_roots(const std::vector<Rat>& roots)
{
    ExactPoly p = constant(1);
    for (const Rat& r : roots)
        p *= ExactPoly({-r, Rat(1)});
    return p;
}

void ExactPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Rat ExactPoly::operator[](int k) const
{
    if (k < 0 || k >= static_cast<int>(c_.size()))
        return Rat(0);
    return c_[static_cast<size_t>(k)];
}

Rat ExactPoly::lc() const { return c_.empty() ? Rat(0) : c_.back(); }

ExactPoly ExactPoly::derivative() const
{
    if (c_.size() <= 1)
        return {};
    std::vector<Rat> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k)
        d[k - 1] = c_[k] * static_cast<long>(k);
    return ExactPoly(std::move(d));
}

ExactPoly ExactPoly::monic() const
{
    if (is_zero())
        return {};
    return *this * Rat(1 / lc());
}

ExactPoly ExactPoly::reflect() const
{
    std::vector<Rat> d = c_;
    for (size_t k = 1; k < d.size(); k += 2)
        d[k] = -d[k];
    return ExactPoly(std::move(d));
}

Rat ExactPoly::eval(const Rat& x) const
{
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

BigComplex ExactPoly::eval(const BigComplex& z) const
{
    long prec = z.prec();
    BigComplex acc(prec);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * z;
        acc.re += BigFloat(prec, *it);
    }
    return acc;
}

std::pair<BigComplex, BigComplex> ExactPoly::eval_with_derivative(const BigComplex& z) const
{
    long prec = z.prec();
    BigComplex p(prec), dp(prec);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z;
        p.re += BigFloat(prec, *it);
    }
    return {p, dp};
}

BigFloat ExactPoly::eval(const BigFloat& x) const
{
    BigFloat acc(x.prec());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + BigFloat(x.prec(), *it);
    return acc;
}

ExactPoly& ExactPoly::operator+=(const ExactPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k)
        c_[k] += o.c_[k];
    trim();
    return *this;
}

ExactPoly& ExactPoly::operator-=(const ExactPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k)
        c_[k] -= o.c_[k];
    trim();
    return *this;
}

ExactPoly& ExactPoly::operator*=(const ExactPoly& o) { return *this = *this * o; }

ExactPoly& ExactPoly::operator*=(const Rat& s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_)
        v *= s;
    return *this;
}

std::string ExactPoly::str(const std::string& var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rat& a = c_[static_cast<size_t>(k)];
        if (a == 0)
            continue;
        Rat mag = abs(a);
        if (!first)
            os << (a < 0 ? " - " : " + ");
        else if (a < 0)
            os << "-";
        first = false;
        bool unit = mag == 1 && k > 0;
        if (!unit)
            os << mag.get_str();
        if (k > 0) {
            if (!unit)
                os << "*";
            os << var;
            if (k > 1)
                os << "^" << k;
        }
    }
    return os.str();
}

ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
ExactPoly operator-(const ExactPoly& a) { return a * Rat(-1); }

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    std::vector<Rat> r(ca.size() + cb.size() - 1);
    for (size_t i = 0; i < ca.size(); ++i) {
        if (ca[i] == 0)
            continue;
        for (size_t j = 0; j < cb.size(); ++j)
            r[i + j] += ca[i] * cb[j];
    }
    return ExactPoly(std::move(r));
}

ExactPoly operator*(ExactPoly a, const Rat& s) { return a *= s; }
ExactPoly operator*(const Rat& s, ExactPoly a) { return a *= s; }

ExactPoly pow(const ExactPoly& p, int k)
{
    ExactPoly r = ExactPoly::constant(1);
    for (int i = 0; i < k; ++i)
        r *= p;
    return r;
}

std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& num, const ExactPoly& den)
{
    if (den.is_zero())
        throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
    int dn = num.degree(), dd = den.degree();
    if (dn < dd)
        return {ExactPoly(), num};
    std::vector<Rat> r = num.coeffs();
    std::vector<Rat> q(static_cast<size_t>(dn - dd + 1));
    Rat inv = 1 / den.lc();
    const auto& d = den.coeffs();
    for (int k = dn - dd; k >= 0; --k) {
        Rat t = r[static_cast<size_t>(k + dd)] * inv;
        q[static_cast<size_t>(k)] = t;
        if (t == 0)
            continue;
        for (int j = 0; j <= dd; ++j)
            r[static_cast<size_t>(k + j)] -= t * d[static_cast<size_t>(j)];
    }
    r.resize(static_cast<size_t>(dd));
    return {ExactPoly(std::move(q)), ExactPoly(std::move(r))};
}

ExactPoly poly_div_exact(const ExactPoly& num, const ExactPoly& den)
{
    auto [q, r] = divmod(num, den);
    if (!r.is_zero())
        throw Error(ErrorKind::InexactDivision,
                    "remainder of degree " + std::to_string(r.degree()) + " dividing by a degree " +
                        std::to_string(den.degree()) + " polynomial");
    return q;
}

ExactPoly gcd(const ExactPoly& a, const ExactPoly& b)
{
    ExactPoly u = a.monic(), v = b.monic();
    while (!v.is_zero()) {
        ExactPoly r = divmod(u, v).second;
        u = std::move(v);
        v = r.monic();
    }
    return u.monic();
}

ExactPoly wronskian(const ExactPoly& p, const ExactPoly& q) { return p * q.derivative() - p.derivative() * q; }

int root_multiplicity(const ExactPoly& p, const Rat& r)
{
    if (p.is_zero())
        throw Error(ErrorKind::InvalidInput, "multiplicity of a root of the zero polynomial");
    int k = 0;
    std::vector<Rat> c = p.coeffs();
    while (c.size() > 1) {
        // synthetic division by (x - r)
        std::vector<Rat> q(c.size() - 1);
        Rat acc = 0;
        for (size_t i = c.size(); i-- > 0;) {
            acc = acc * r + c[i];
            if (i > 0)
                q[i - 1] = acc;
        }
        if (acc != 0)
            break;
        c = std::move(q);
        ++k;
    }
    return k;
}

bool proportional(const ExactPoly& p, const ExactPoly& q)
{
    if (p.is_zero() || q.is_zero())
        return p.is_zero() && q.is_zero();
    return p.monic() == q.monic();
}

std::vector<std::pair<ExactPoly, int>> squarefree_factors(const ExactPoly& p)
{
    std::vector<std::pair<ExactPoly, int>> out;
    if (p.degree() < 1)
        return out;
    // Yun's algorithm
    ExactPoly f = p.monic();
    ExactPoly a = gcd(f, f.derivative());
    ExactPoly b = poly_div_exact(f, a);
    ExactPoly c = poly_div_exact(f.derivative(), a);
    ExactPoly d = c - b.derivative();
    int k = 1;
    while (b.degree() >= 1) {
        ExactPoly g = gcd(b, d);
        if (g.degree() >= 1)
            out.emplace_back(g, k);
        b = poly_div_exact(b, g);
        c = poly_div_exact(d, g);
        d = c - b.derivative();
        ++k;
    }
    return out;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m)
{
    u64 r = 1;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::vector<u64> reduce_mod(const std::vector<mpz_class>& c, u64 m)
{
    std::vector<u64> r(c.size());
    mpz_class mm;
    mpz_set_ui(mm.get_mpz_t(), m);
    for (size_t i = 0; i < c.size(); ++i) {
        mpz_class t;
        mpz_mod(t.get_mpz_t(), c[i].get_mpz_t(), mm.get_mpz_t());
        r[i] = mpz_get_ui(t.get_mpz_t());
    }
    while (!r.empty() && r.back() == 0)
        r.pop_back();
    return r;
}

int gcd_degree_mod(std::vector<u64> a, std::vector<u64> b, u64 m)
{
    while (!b.empty()) {
        u64 inv = powmod(b.back(), m - 2, m);
        while (a.size() >= b.size()) {
            u64 t = mulmod(a.back(), inv, m);
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                a[off + j] = (a[off + j] + m - mulmod(t, b[j], m)) % m;
            while (!a.empty() && a.back() == 0)
                a.pop_back();
            if (a.empty())
                break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

}  // namespace

bool is_squarefree(const ExactPoly& p)
{
    if (p.degree() < 2)
        return !p.is_zero();
    mpz_class l = 1;
    for (const auto& c : p.coeffs())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : p.coeffs())
        ic.emplace_back(mpz_class(c * l));
    std::vector<mpz_class> dc;
    for (size_t k = 1; k < ic.size(); ++k)
        dc.emplace_back(ic[k] * static_cast<unsigned long>(k));
    // primes below 2^62 chosen away from the small degrees involved
    const u64 primes[] = {4611686018427387847ULL, 4611686018427387817ULL, 4611686018427387787ULL};
    for (u64 m : primes) {
        auto a = reduce_mod(ic, m);
        auto b = reduce_mod(dc, m);
        if (static_cast<int>(a.size()) - 1 != p.degree() || static_cast<int>(b.size()) != p.degree())
            continue;
        if (gcd_degree_mod(a, b, m) == 0)
            return true;
    }
    return gcd(p, p.derivative()).degree() == 0;
}

LaurentTail::LaurentTail(std::vector<Rat> coeffs, ExactPoly poly_part)
    : c_(std::move(coeffs)), poly_(std::move(poly_part))
{
}

Rat LaurentTail::coeff(int k) const
{
    if (k < 0 || k >= order())
        throw Error(ErrorKind::PrecisionExhausted,
                    "tail coefficient " + std::to_string(k) + " requested from a series of order " +
                        std::to_string(order()));
    return c_[static_cast<size_t>(k)];
}

int LaurentTail::valuation() const
{
    for (int k = 0; k < order(); ++k)
        if (c_[static_cast<size_t>(k)] != 0)
            return k;
    return -1;
}

LaurentTail LaurentTail::truncated(int order) const
{
    if (order > this->order())
        throw Error(ErrorKind::PrecisionExhausted, "cannot extend a series by truncation");
    return LaurentTail(std::vector<Rat>(c_.begin(), c_.begin() + order), poly_);
}

LaurentTail LaurentTail::derivative() const
{
    std::vector<Rat> d(c_.size() + 1);
    for (size_t k = 0; k < c_.size(); ++k)
        d[k + 1] = -c_[k] * static_cast<long>(k + 1);
    return LaurentTail(std::move(d), poly_.derivative());
}

LaurentTail LaurentTail::operator-() const { return *this * Rat(-1); }

LaurentTail operator+(const LaurentTail& a, const LaurentTail& b)
{
    int n = std::min(a.order(), b.order());
    std::vector<Rat> c(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        c[static_cast<size_t>(k)] = a.coeffs()[static_cast<size_t>(k)] + b.coeffs()[static_cast<size_t>(k)];
    return LaurentTail(std::move(c), a.poly_part() + b.poly_part());
}

LaurentTail operator-(const LaurentTail& a, const LaurentTail& b) { return a + (-b); }

LaurentTail operator*(const LaurentTail& t, const Rat& s)
{
    std::vector<Rat> c = t.coeffs();
    for (auto& v : c)
        v *= s;
    return LaurentTail(std::move(c), t.poly_part() * s);
}

namespace {

// p times the pure tail of t; the returned order is INT_MAX when p = 0
std::pair<ExactPoly, std::vector<Rat>> poly_times_tail(const ExactPoly& p, const std::vector<Rat>& c, int& order)
{
    int K = static_cast<int>(c.size());
    if (p.is_zero()) {
        order = INT_MAX;
        return {};
    }
    int d = p.degree();
    if (K < d)
        throw Error(ErrorKind::PrecisionExhausted,
                    "series of order " + std::to_string(K) + " times a degree " + std::to_string(d) +
                        " polynomial leaves the polynomial part undetermined");
    std::vector<Rat> poly(static_cast<size_t>(std::max(d, 0)));
    for (int j = 1; j <= d; ++j)
        for (int k = 0; k <= j - 1; ++k)
            poly[static_cast<size_t>(j - k - 1)] += p[j] * c[static_cast<size_t>(k)];
    order = K - d;
    std::vector<Rat> out(static_cast<size_t>(order));
    for (int m = 0; m < order; ++m) {
        Rat s = 0;
        for (int j = 0; j <= d; ++j)
            s += p[j] * c[static_cast<size_t>(m + j)];
        out[static_cast<size_t>(m)] = s;
    }
    return {ExactPoly(std::move(poly)), std::move(out)};
}

}  // namespace

LaurentTail operator*(const ExactPoly& p, const LaurentTail& t)
{
    int order = 0;
    auto [poly, tail] = poly_times_tail(p, t.coeffs(), order);
    if (order == INT_MAX)
        return LaurentTail(std::vector<Rat>(t.coeffs().size()), p * t.poly_part());
    return LaurentTail(std::move(tail), poly + p * t.poly_part());
}

LaurentTail series_mul(const LaurentTail& a, const LaurentTail& b)
{
    if (a.order() < 1 || b.order() < 1)
        throw Error(ErrorKind::PrecisionExhausted, "series_mul needs at least one stored coefficient per factor");
    int oab = 0, oba = 0;
    auto [p1, t1] = poly_times_tail(a.poly_part(), b.coeffs(), oab);
    auto [p2, t2] = poly_times_tail(b.poly_part(), a.coeffs(), oba);
    int ott = std::min(a.order(), b.order()) + 1;
    int order = std::min({oab, oba, ott});
    std::vector<Rat> c(static_cast<size_t>(order));
    for (int m = 1; m < order; ++m) {
        Rat s = 0;
        for (int i = 0; i <= m - 1; ++i)
            s += a.coeffs()[static_cast<size_t>(i)] * b.coeffs()[static_cast<size_t>(m - 1 - i)];
        c[static_cast<size_t>(m)] = s;
    }
    for (int m = 0; m < order; ++m) {
        if (oab != INT_MAX)
            c[static_cast<size_t>(m)] += t1[static_cast<size_t>(m)];
        if (oba != INT_MAX)
            c[static_cast<size_t>(m)] += t2[static_cast<size_t>(m)];
    }
    return LaurentTail(std::move(c), a.poly_part() * b.poly_part() + p1 + p2);
}

}  // namespace hpe
