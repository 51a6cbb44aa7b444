#include "hpe/zeros.hpp"

#include "hpe/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hpe {

int ZeroSet::count() const
{
    int c = 0;
    for (int m : multiplicity)
        c += m;
    return c;
}

std::vector<BigFloat> ZeroSet::real_points() const
{
    std::vector<BigFloat> r;
    for (size_t i = 0; i < points.size(); ++i)
        if (real[i])
            r.push_back(points[i].re);
    std::sort(r.begin(), r.end(), [](const BigFloat& a, const BigFloat& b) { return a < b; });
    return r;
}

namespace {

double log2_abs(const Rat& q)
{
    BigFloat f(64, q);
    long e = 0;
    double m = mpfr_get_d_2exp(&e, f.raw(), MPFR_RNDN);
    return static_cast<double>(e) + std::log2(std::fabs(m));
}

// Starting points on circles whose radii come from the upper convex hull of (k, log|a_k|).
std::vector<BigComplex> initial_points(const ExactPoly& f, long wp)
{
    const int n = f.degree();
    std::vector<int> idx;
    std::vector<double> lg;
    for (int k = 0; k <= n; ++k)
        if (f[k] != 0) {
            idx.push_back(k);
            lg.push_back(log2_abs(f[k]));
        }
    std::vector<size_t> hull;
    for (size_t i = 0; i < idx.size(); ++i) {
        while (hull.size() >= 2) {
            size_t a = hull[hull.size() - 2], b = hull.back();
            double cross = (idx[b] - idx[a]) * (lg[i] - lg[a]) - (lg[b] - lg[a]) * (idx[i] - idx[a]);
            if (cross >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    std::vector<BigComplex> z;
    // a root at zero of multiplicity idx[0] is impossible here: callers strip x^k first
    const BigFloat two_pi = BigFloat::pi(wp) * 2;
    for (size_t h = 0; h + 1 < hull.size(); ++h) {
        int k0 = idx[hull[h]], k1 = idx[hull[h + 1]];
        int m = k1 - k0;
        double lr = (lg[hull[h]] - lg[hull[h + 1]]) / m;
        BigFloat r(wp, lr);
        mpfr_exp2(r.raw(), r.raw(), MPFR_RNDN);
        for (int j = 0; j < m; ++j) {
            BigFloat t = two_pi * BigFloat(wp, (j + 0.37 + 0.61 * static_cast<double>(h)) / m);
            z.push_back(polar(r, t));
        }
    }
    return z;
}

struct Eval {
    BigComplex v, d;
    BigFloat bound;  // sum |a_k| |z|^k
};

class Evaluator {
public:
    Evaluator(const ExactPoly& f, long wp) : wp_(wp)
    {
        for (const auto& c : f.coeffs()) {
            a_.emplace_back(wp, c);
            abs_a_.push_back(abs(a_.back()).with_prec(64));
        }
    }
    Eval operator()(const BigComplex& z) const
    {
        const int n = static_cast<int>(a_.size()) - 1;
        BigComplex v{BigFloat(a_[static_cast<size_t>(n)])};
        BigComplex d(wp_);
        BigFloat az = abs(z).with_prec(64);
        BigFloat s = abs_a_[static_cast<size_t>(n)];
        for (int k = n - 1; k >= 0; --k) {
            d = d * z + v;
            v = v * z;
            v.re += a_[static_cast<size_t>(k)];
            s = s * az + abs_a_[static_cast<size_t>(k)];
        }
        return {v, d, s};
    }
    long wp() const { return wp_; }
    size_t degree() const { return a_.size() - 1; }

private:
    long wp_;
    std::vector<BigFloat> a_, abs_a_;
};

// rounding bound for the Horner value at precision wp
BigFloat horner_error(const Eval& e, size_t n, long wp)
{
    return e.bound * BigFloat::pow2(64, -wp) * static_cast<long>(8 * n + 16);
}

void aberth(const Evaluator& ev, std::vector<BigComplex>& z)
{
    const size_t n = z.size();
    const long wp = ev.wp();
    std::vector<bool> done(n, false);
    const int max_iter = 300 + 20 * static_cast<int>(n);
    const BigFloat one(wp, 1.0);
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (size_t i = 0; i < n; ++i) {
            if (done[i])
                continue;
            Eval e = ev(z[i]);
            if (abs(e.v) <= horner_error(e, n, wp) || e.d.is_zero()) {
                done[i] = true;
                continue;
            }
            BigComplex ratio = e.v / e.d;
            BigComplex s(wp);
            for (size_t j = 0; j < n; ++j)
                if (j != i)
                    s += BigComplex(one, BigFloat(wp)) / (z[i] - z[j]);
            BigComplex w = ratio / (BigComplex(one, BigFloat(wp)) - ratio * s);
            z[i] -= w;
            BigFloat tol = abs(z[i]) * BigFloat::pow2(64, -wp + 4);
            if (abs(w) <= tol)
                done[i] = true;
            else
                all = false;
        }
        if (all)
            return;
    }
}

struct Disks {
    std::vector<BigFloat> r;
    bool separated = true;
    bool residual_ok = true;
};

Disks certify(const Evaluator& ev, const ExactPoly& f, const std::vector<BigComplex>& z, long target)
{
    const size_t n = z.size();
    const long wp = ev.wp();
    Disks d;
    const BigFloat lc = abs(BigFloat(wp, f.lc()));
    const BigFloat thr = BigFloat::pow2(64, -target / 2);
    for (size_t i = 0; i < n; ++i) {
        Eval e = ev(z[i]);
        BigFloat prod = lc;
        BigFloat nearest = BigFloat::inf(wp);
        for (size_t j = 0; j < n; ++j)
            if (j != i) {
                BigFloat dist = abs(z[i] - z[j]);
                prod *= dist;
                nearest = min(nearest, dist);
            }
        BigFloat num = abs(e.v) + horner_error(e, n, wp);
        BigFloat ri = num / prod * static_cast<long>(n);
        // slack for the rounding in the product itself
        ri *= BigFloat(64, 1.0) + BigFloat::pow2(64, -wp / 2);
        d.r.push_back(ri.with_prec(64));
        if (n > 1) {
            BigFloat ad = abs(e.d);
            if (ad.is_zero() || abs(e.v) / (ad * nearest) > thr)
                d.residual_ok = false;
        }
    }
    for (size_t i = 0; i < n && d.separated; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (abs(z[i] - z[j]) <= d.r[i] + d.r[j]) {
                d.separated = false;
                break;
            }
    return d;
}

// continued fraction convergents of x, stopping once the denominator passes max_den
std::vector<Rat> convergents(const Rat& x, const mpz_class& max_den)
{
    std::vector<Rat> out;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rat r = x;
    for (int it = 0; it < 200; ++it) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den)
            break;
        out.emplace_back(p2, q2);
        out.back().canonicalize();
        Rat frac = r - Rat(a);
        if (frac == 0)
            break;
        r = 1 / frac;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return out;
}

struct FactorRoots {
    std::vector<BigComplex> z;
    std::vector<BigFloat> r;
    std::vector<bool> exact;
};

FactorRoots roots_of_squarefree(const ExactPoly& f, long target, long cap, std::vector<BigComplex>* seed)
{
    FactorRoots out;
    const int n = f.degree();
    if (n == 1) {
        Rat root = -f[0] / f[1];
        out.z.emplace_back(target, root);
        out.r.emplace_back(64);
        out.exact.push_back(true);
        return out;
    }
    std::vector<BigComplex> z = seed ? *seed : initial_points(f, target + 32);
    for (long wp = target + 32; wp <= cap + 32; wp *= 2) {
        for (auto& p : z)
            p = p.with_prec(wp);
        Evaluator ev(f, wp);
        aberth(ev, z);
        Disks d = certify(ev, f, z, target);
        if (d.separated && d.residual_ok) {
            out.z = z;
            out.r = d.r;
            out.exact.assign(z.size(), false);
            return out;
        }
    }
    throw Error(ErrorKind::PrecisionCapExceeded,
                "roots of a degree " + std::to_string(n) + " factor not separated at " + std::to_string(cap) + " bits");
}

}  // namespace

ZeroSet find_zeros(const ExactPoly& p, long precision)
{
    ZeroOptions o;
    o.precision = precision;
    return find_zeros(p, o);
}

ZeroSet find_zeros(const ExactPoly& p, const ZeroOptions& opts)
{
    if (p.degree() < 1)
        throw Error(ErrorKind::InvalidInput, "find_zeros needs a polynomial of degree >= 1");
    ZeroSet zs;
    zs.precision = opts.precision;
    zs.source = opts.source;
    const long prec = opts.precision;

    auto push_exact = [&](const Rat& r, int mult) {
        zs.points.emplace_back(prec, r);
        zs.radius.emplace_back(64);
        zs.multiplicity.push_back(mult);
        zs.real.push_back(true);
        zs.exact.push_back(true);
    };

    ExactPoly rest = p.monic();
    int z0 = 0;
    while (rest[z0] == 0)
        ++z0;
    if (z0 > 0) {
        rest = poly_div_exact(rest, ExactPoly::monomial(1, z0));
        push_exact(0, z0);
    }
    for (const Rat& h : opts.hints) {
        if (h == 0 || rest.degree() < 1)
            continue;
        int m = root_multiplicity(rest, h);
        if (m > 0) {
            rest = poly_div_exact(rest, pow(ExactPoly({-h, Rat(1)}), m));
            push_exact(h, m);
        }
    }

    std::vector<std::pair<ExactPoly, int>> parts;
    if (rest.degree() >= 1) {
        if (is_squarefree(rest))
            parts.emplace_back(rest, 1);
        else
            parts = squarefree_factors(rest);
    }

    const size_t first_numeric = zs.points.size();
    for (const auto& [f, mult] : parts) {
        FactorRoots fr = roots_of_squarefree(f, prec, opts.precision_cap, nullptr);
        for (size_t i = 0; i < fr.z.size(); ++i) {
            zs.points.push_back(fr.z[i]);
            zs.radius.push_back(fr.r[i]);
            zs.multiplicity.push_back(mult);
            zs.real.push_back(fr.exact[i] && fr.z[i].im.is_zero());
            zs.exact.push_back(fr.exact[i]);
        }
    }

    const size_t n = zs.points.size();
    // disks of different factors must not meet either
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (abs(zs.points[i] - zs.points[j]) <= zs.radius[i] + zs.radius[j])
                throw Error(ErrorKind::PrecisionCapExceeded, "inclusion disks of distinct roots overlap");

    // a disk meeting the real axis whose mirror image meets no other disk holds a real root
    for (size_t i = first_numeric; i < n; ++i) {
        if (zs.real[i] || abs(zs.points[i].im) > zs.radius[i])
            continue;
        BigComplex mirror = conj(zs.points[i]);
        bool alone = true;
        for (size_t j = 0; j < n && alone; ++j)
            if (j != i && abs(mirror - zs.points[j]) <= zs.radius[i] + zs.radius[j])
                alone = false;
        if (alone) {
            zs.points[i].im = BigFloat(zs.points[i].im.prec());
            zs.real[i] = true;
        }
    }

    // recognise small rational roots and make them exact
    const mpz_class max_den = mpz_class(1) << 32;
    for (size_t i = first_numeric; i < n; ++i) {
        if (!zs.real[i] || zs.exact[i])
            continue;
        Rat approx = zs.points[i].re.to_rat();
        for (const Rat& q : convergents(approx, max_den)) {
            if (abs(BigFloat(zs.points[i].re.prec(), q) - zs.points[i].re) > zs.radius[i])
                continue;
            if (p.eval(q) == 0) {
                zs.points[i] = BigComplex(zs.points[i].re.prec(), q);
                zs.radius[i] = BigFloat(64);
                zs.exact[i] = true;
            }
            break;
        }
    }
    zs.certified = true;
    return zs;
}

bool RealInterval::contains(const BigFloat& x) const
{
    BigFloat a(x.prec(), lo), b(x.prec(), hi);
    bool left = lo_closed ? x >= a : x > a;
    bool right = hi_closed ? x <= b : x < b;
    return left && right;
}

namespace {

struct RealPt {
    BigFloat x;
    BigFloat r;
    int mult;
};

std::vector<RealPt> real_inside(const ZeroSet& z, const RealInterval& iv, const char* which)
{
    std::vector<RealPt> out;
    for (size_t i = 0; i < z.size(); ++i) {
        const BigFloat& x = z.points[i].re;
        const BigFloat& r = z.radius[i];
        BigFloat a(x.prec(), iv.lo), b(x.prec(), iv.hi);
        if (!z.real[i]) {
            if (abs(z.points[i].im) <= r && x + r >= a && x - r <= b)
                throw Error(ErrorKind::AmbiguousAtPrecision,
                            std::string(which) + ": a root near the real axis is not separated from it");
            continue;
        }
        if (!r.is_zero() && (abs(x - a) <= r || abs(x - b) <= r))
            throw Error(ErrorKind::AmbiguousAtPrecision,
                        std::string(which) + ": a root lies within its radius of an interval endpoint");
        if (iv.contains(x))
            out.push_back({x, r, z.multiplicity[i]});
    }
    std::sort(out.begin(), out.end(), [](const RealPt& u, const RealPt& v) { return u.x < v.x; });
    return out;
}

}  // namespace

InterlaceReport interlacing_report(const ZeroSet& zp, const ZeroSet& zs, const RealInterval& interval)
{
    if (zp.precision != zs.precision)
        throw Error(ErrorKind::InvalidInput, "zero sets computed at different precisions");
    InterlaceReport rep;
    rep.interval = interval;
    auto a = real_inside(zp, interval, "first set");
    auto b = real_inside(zs, interval, "second set");
    for (const auto& p : a)
        rep.count_inside_a += p.mult;
    for (const auto& p : b)
        rep.count_inside_b += p.mult;
    for (const auto& u : a)
        for (const auto& v : b)
            if (abs(u.x - v.x) <= u.r + v.r && !(u.r.is_zero() && v.r.is_zero()))
                throw Error(ErrorKind::AmbiguousAtPrecision, "roots of the two sets are not separated");
    size_t j = 0;
    while (j < b.size() && !a.empty() && b[j].x < a.front().x) {
        rep.outside_hull_b += b[j].mult;
        ++j;
    }
    for (size_t g = 0; g + 1 < a.size(); ++g) {
        int inside = 0;
        while (j < b.size() && b[j].x <= a[g].x)
            ++j;
        while (j < b.size() && b[j].x < a[g + 1].x) {
            inside += b[j].mult;
            ++j;
        }
        if (inside == 1)
            ++rep.interlaced_pairs;
        else
            rep.violations.push_back(static_cast<int>(g));
    }
    for (; j < b.size(); ++j)
        if (a.empty() || b[j].x > a.back().x)
            rep.outside_hull_b += b[j].mult;
    return rep;
}

int sign_changes(const std::function<BigFloat(const BigFloat&)>& f, const BigFloat& a, const BigFloat& b, int grid,
                 int refine_depth)
{
    if (grid < 2)
        grid = 2;
    struct S {
        BigFloat x, y;
    };
    std::vector<S> s;
    const BigFloat h = (b - a) / BigFloat(a.prec(), static_cast<double>(grid));
    for (int k = 1; k < grid; ++k) {
        BigFloat x = a + h * k;
        s.push_back({x, f(x)});
    }
    // search the neighbourhood of each local minimum of |f| between same-sign samples
    std::vector<S> extra;
    for (size_t k = 0; k < s.size(); ++k) {
        int sg = s[k].y.sign();
        bool first = k == 0, last = k + 1 == s.size();
        if (sg == 0 || (!first && s[k - 1].y.sign() != sg) || (!last && s[k + 1].y.sign() != sg))
            continue;
        if ((!first && !(abs(s[k].y) < abs(s[k - 1].y))) || (!last && !(abs(s[k].y) <= abs(s[k + 1].y))))
            continue;
        BigFloat lo = first ? a : s[k - 1].x, hi = last ? b : s[k + 1].x;
        const BigFloat g(a.prec(), 0.3819660112501051);
        for (int it = 0; it < refine_depth; ++it) {
            BigFloat m1 = lo + (hi - lo) * g;
            BigFloat m2 = hi - (hi - lo) * g;
            BigFloat y1 = f(m1), y2 = f(m2);
            if (y1.sign() != sg) {
                extra.push_back({m1, y1});
                break;
            }
            if (y2.sign() != sg) {
                extra.push_back({m2, y2});
                break;
            }
            if (abs(y1) < abs(y2))
                hi = m2;
            else
                lo = m1;
        }
    }
    for (auto& e : extra)
        s.push_back(std::move(e));
    std::sort(s.begin(), s.end(), [](const S& u, const S& v) { return u.x < v.x; });
    int changes = 0, last = 0;
    for (const auto& p : s) {
        int sg = p.y.sign();
        if (sg == 0)
            continue;
        if (last != 0 && sg != last)
            ++changes;
        last = sg;
    }
    return changes;
}

ClusterInfo cluster_gap(const ZeroSet& zs, std::pair<double, double> window, double gap_factor)
{
    std::vector<double> x;
    for (size_t i = 0; i < zs.size(); ++i) {
        if (!zs.real[i])
            continue;
        double v = zs.points[i].re.to_double();
        if (v >= window.first && v <= window.second)
            x.push_back(v);
    }
    ClusterInfo info;
    if (x.empty())
        return info;
    std::sort(x.begin(), x.end());
    std::vector<double> gaps;
    for (size_t i = 1; i < x.size(); ++i)
        gaps.push_back(x[i] - x[i - 1]);
    info.clusters = 1;
    if (gaps.empty()) {
        info.spans.emplace_back(x.front(), x.front());
        return info;
    }
    std::vector<double> sorted = gaps;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    double left = x.front();
    for (size_t i = 0; i < gaps.size(); ++i) {
        info.max_gap = std::max(info.max_gap, gaps[i]);
        if (gaps[i] > gap_factor * median) {
            info.spans.emplace_back(left, x[i]);
            left = x[i + 1];
            ++info.clusters;
        }
    }
    info.spans.emplace_back(left, x.back());
    return info;
}

std::string zeros_csv(const ZeroSet& z, int digits)
{
    std::ostringstream os;
    os << "re,im,radius,multiplicity\n";
    for (size_t i = 0; i < z.size(); ++i)
        os << z.points[i].re.str(digits) << ',' << z.points[i].im.str(digits) << ',' << z.radius[i].str(6) << ','
           << z.multiplicity[i] << '\n';
    return os.str();
}

}  // namespace hpe
