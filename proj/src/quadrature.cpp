#include "hpe/error.hpp"
#include "hpe/weights.hpp"

#include <algorithm>

namespace hpe {

namespace {

enum class Map { finite, right_half, left_half, line, ray };

struct Piece {
    Map map;
    std::optional<Rat> left, right;
    BigFloat a, b;  // finite ends where meaningful
    BigComplex origin, dir;
    BigFloat sign;
};

struct Sample {
    QuadNode node;
    BigComplex jac;
};

Sample sample(const Piece& p, const BigFloat& t, long wp)
{
    BigFloat half_pi = BigFloat::pi(wp) / BigFloat(wp, 2.0);
    BigFloat u = half_pi * sinh(t);
    BigFloat du = half_pi * cosh(t);
    Sample s{QuadNode{BigComplex(wp), p.left, p.right, std::nullopt, std::nullopt, std::nullopt}, BigComplex(wp)};
    switch (p.map) {
    case Map::finite: {
        BigFloat len = p.b - p.a;
        BigFloat e2 = exp(u * 2L);
        BigFloat one(wp, 1.0);
        // distances to both ends without cancellation
        BigFloat da = len * e2 / (one + e2);
        BigFloat db = len / (one + e2);
        BigFloat x = da < db ? p.a + da : p.b - db;
        BigFloat ch = cosh(u);
        s.node.z = BigComplex(x);
        s.node.dist_left = da;
        s.node.dist_right = db;
        s.jac = BigComplex(len / BigFloat(wp, 2.0) * du / (ch * ch));
        break;
    }
    case Map::right_half: {
        BigFloat e = exp(u);
        s.node.z = BigComplex(p.a + e);
        s.node.dist_left = e;
        s.jac = BigComplex(e * du);
        break;
    }
    case Map::left_half: {
        BigFloat e = exp(u);
        s.node.z = BigComplex(p.b - e);
        s.node.dist_right = e;
        s.jac = BigComplex(e * du);
        break;
    }
    case Map::line: {
        s.node.z = BigComplex(sinh(u));
        s.jac = BigComplex(cosh(u) * du);
        break;
    }
    case Map::ray: {
        BigFloat e = exp(u);
        s.node.z = p.origin + p.dir * e;
        s.node.dist_left = e;
        s.node.direction = p.dir;
        s.jac = p.dir * (e * du);
        break;
    }
    }
    s.jac = s.jac * p.sign;
    return s;
}

std::vector<Piece> pieces_of(const SupportComponent& c, long wp)
{
    std::vector<Piece> out;
    BigFloat sign(wp, static_cast<double>(c.orientation >= 0 ? 1 : -1));
    auto base = [&](Map m) {
        Piece p{m, std::nullopt, std::nullopt, BigFloat(wp), BigFloat(wp), BigComplex(wp), BigComplex(wp, 1.0), sign};
        return p;
    };
    if (c.kind == SupportComponent::Kind::contour_tag) {
        if (c.rays.empty())
            throw Error(ErrorKind::QuadratureNotConverged, "contour '" + c.contour_id + "' has no parametrization table");
        for (const auto& r : c.rays) {
            Piece p = base(Map::ray);
            p.origin = BigComplex(wp, r.origin);
            p.left = r.origin;
            BigFloat th = BigFloat::pi(wp) * BigFloat(wp, r.angle);
            p.dir = polar(BigFloat(wp, 1.0), th);
            p.sign = sign * BigFloat(wp, static_cast<double>(r.orientation));
            out.push_back(p);
        }
        return out;
    }
    const auto& L = c.left;
    const auto& R = c.right;
    if (L.is_finite() && R.is_finite()) {
        Piece p = base(Map::finite);
        p.a = BigFloat(wp, L.value);
        p.b = BigFloat(wp, R.value);
        p.left = L.value;
        p.right = R.value;
        out.push_back(p);
    } else if (L.is_finite()) {
        Piece p = base(Map::right_half);
        p.a = BigFloat(wp, L.value);
        p.left = L.value;
        out.push_back(p);
    } else if (R.is_finite()) {
        Piece p = base(Map::left_half);
        p.b = BigFloat(wp, R.value);
        p.right = R.value;
        out.push_back(p);
    } else {
        out.push_back(base(Map::line));
    }
    return out;
}

}  // namespace

QuadResult integrate(const SupportComponent& c, const VectorIntegrand& f, size_t width, long precision)
{
    const long wp = precision + 40;
    const double tmax = 8.0;
    const int max_level = 12;
    auto pieces = pieces_of(c, wp);

    std::vector<BigComplex> sum(width, BigComplex(wp));  // running sum of f*jac over all nodes so far
    std::vector<BigComplex> prev;
    std::vector<BigComplex> vals(width, BigComplex(wp));
    BigFloat tiny = BigFloat::pow2(wp, -wp);

    std::vector<BigFloat> peaks(width, BigFloat(wp));
    // true when every component of the node is negligible against its own peak so far
    auto add_node = [&](const Piece& p, const BigFloat& t) -> bool {
        Sample s = sample(p, t, wp);
        for (auto& v : vals)
            v = BigComplex(wp);
        f(s.node, vals);
        bool small = true;
        for (size_t i = 0; i < width; ++i) {
            BigComplex term = vals[i] * s.jac;
            if (!term.re.is_finite() || !term.im.is_finite())
                continue;
            sum[i] += term;
            BigFloat m = abs(term);
            peaks[i] = max(peaks[i], m);
            if (m > tiny * peaks[i])
                small = false;
        }
        return small;
    };

    QuadResult res;
    for (int level = 0; level <= max_level; ++level) {
        BigFloat h = BigFloat::pow2(wp, -level);
        for (const auto& p : pieces) {
            for (int dir : {1, -1}) {
                int small_run = 0;
                for (long j = (dir == 1 ? 0 : 1);; ++j) {
                    if (level > 0 && j % 2 == 0)
                        continue;
                    if (level == 0 && dir == 1 && j == 0) {
                        add_node(p, BigFloat(wp));
                        continue;
                    }
                    BigFloat t = h * BigFloat(wp, static_cast<double>(j * dir));
                    if (abs(t).to_double() > tmax)
                        break;
                    if (add_node(p, t)) {
                        if (++small_run >= 3)
                            break;
                    } else {
                        small_run = 0;
                    }
                }
            }
        }
        std::vector<BigComplex> cur(width, BigComplex(wp));
        for (size_t i = 0; i < width; ++i)
            cur[i] = sum[i] * h;
        res.levels = level;
        if (level >= 3) {
            bool done = true;
            std::vector<BigFloat> err(width, BigFloat(wp));
            for (size_t i = 0; i < width; ++i) {
                err[i] = abs(cur[i] - prev[i]);
                // rounding noise of the sum sets a floor when the integral cancels
                BigFloat floor = peaks[i] * BigFloat::pow2(wp, -wp + 24);
                if (err[i] > max(abs(cur[i]) * BigFloat::pow2(wp, -precision - 4), floor))
                    done = false;
                err[i] = max(err[i], floor);
            }
            if (done) {
                for (auto& v : cur)
                    v = v.with_prec(precision);
                res.values = std::move(cur);
                for (size_t i = 0; i < width; ++i)
                    err[i] = max(err[i], abs(res.values[i]).with_prec(wp) * BigFloat::pow2(wp, -precision - 2))
                                 .with_prec(precision);
                res.error = std::move(err);
                return res;
            }
        }
        prev = std::move(cur);
    }
    throw Error(ErrorKind::QuadratureNotConverged,
                "double exponential quadrature did not settle within " + std::to_string(max_level) + " levels");
}

BigComplex eval_density(const LogDensity& d, const QuadNode& node)
{
    long wp = node.z.prec();
    const BigComplex& z = node.z;
    BigComplex e = exp(d.exp_poly.eval(z));
    for (const auto& [r, ex] : d.factors) {
        BigFloat ef(wp, ex);
        if (node.direction) {
            BigComplex zr = (node.left && *node.left == r) ? *node.direction * *node.dist_left : z - BigComplex(wp, r);
            if (zr.is_zero())
                return BigComplex(wp);
            e = e * pow(zr, ef);
            continue;
        }
        BigFloat dist(wp);
        if (node.left && *node.left == r)
            dist = *node.dist_left;
        else if (node.right && *node.right == r)
            dist = *node.dist_right;
        else
            dist = abs(z.re - BigFloat(wp, r));
        if (dist.is_zero())
            return BigComplex(wp);
        e = e * pow(dist, ef);
    }
    return e;
}

}  // namespace hpe
