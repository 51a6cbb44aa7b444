#include "doctest.h"

#include "hpe/error.hpp"
#include "hpe/partner.hpp"
#include "hpe/zeros.hpp"

#include <cmath>

using namespace hpe;

namespace {

using Params = std::map<std::string, Rat>;

struct Solved {
    MopRecord rec;
    std::vector<SemiclassicalWeight> ws;
};

Solved solve(const std::string& fam, const Params& p, int n1, int n2)
{
    auto ws = family(fam, p);
    auto rec = solve_mop(ws[0], ws[1], {n1, n2});
    complete_record(rec, ws);
    return {std::move(rec), std::move(ws)};
}

int real_count(const ZeroSet& z)
{
    int c = 0;
    for (size_t i = 0; i < z.size(); ++i)
        c += z.real[i] ? z.multiplicity[i] : 0;
    return c;
}

int count_in(const ZeroSet& z, double lo, double hi)
{
    int c = 0;
    for (const auto& x : z.real_points())
        c += x.to_double() > lo && x.to_double() < hi;
    return c;
}

}  // namespace

TEST_CASE("square roots")
{
    auto z = find_zeros(ExactPoly{-2, 0, 1}, 256);
    auto r = z.real_points();
    REQUIRE(r.size() == 2);
    BigFloat s2 = sqrt(BigFloat(256, 2.0));
    CHECK(abs(r[1] - s2) < BigFloat::pow2(256, -240));
    CHECK(abs(r[0] + s2) < BigFloat::pow2(256, -240));
    CHECK(z.certified);

    auto h = find_zeros(ExactPoly{Rat(-1, 2), 0, 1}, 256).real_points();
    REQUIRE(h.size() == 2);
    CHECK(abs(h[1] - sqrt(BigFloat(256, 0.5))) < BigFloat::pow2(256, -240));
}

TEST_CASE("multiple Hermite partner: one real zero and two conjugate pairs")
{
    auto s = solve("multiple_hermite", {{"c1", 1}, {"c2", -1}}, 5, 5);
    auto z = find_zeros(s.rec.partners[0], 256);
    CHECK(z.count() == 5);
    CHECK(real_count(z) == 1);
    int upper = 0;
    for (size_t i = 0; i < z.size(); ++i)
        upper += !z.real[i] && z.points[i].im.sign() > 0;
    CHECK(upper == 2);
    // the real zero lies left of every zero of P
    auto zp = find_zeros(s.rec.P, 256).real_points();
    CHECK(z.real_points()[0] < zp.front());
}

TEST_CASE("interlacing of simple sets")
{
    auto a = find_zeros(ExactPoly::from_roots({1, 3}), 128);
    auto b = find_zeros(ExactPoly::from_roots({2}), 128);
    RealInterval iv{Rat(0), Rat(4), false, false};
    auto r = interlacing_report(a, b, iv);
    CHECK(r.interlaced_pairs == 1);
    CHECK(r.count_inside_a == 2);
    CHECK(r.count_inside_b == 1);
    CHECK(r.violations.empty());

    auto c = find_zeros(ExactPoly::from_roots({Rat(5, 2), Rat(11, 4)}), 128);
    auto bad = interlacing_report(a, c, iv);
    CHECK(bad.violations.size() == 1);
}

TEST_CASE("Angelesco (15,15): S1 interlaces on [0,1) and vanishes at 1")
{
    auto s = solve("appell", {}, 15, 15);
    ZeroOptions o;
    o.precision = 256;
    o.hints = {-1, 0, 1};
    auto zp = find_zeros(s.rec.P, o);
    auto zs = find_zeros(s.rec.partners[0], o);
    CHECK(real_count(zp) == 30);
    CHECK(real_count(zs) == 16);
    RealInterval half_open{Rat(0), Rat(1), true, false};
    auto r = interlacing_report(zp, zs, half_open);
    CHECK(r.count_inside_a == 15);
    CHECK(r.count_inside_b == 15);
    CHECK(r.interlaced_pairs == 14);
    CHECK(r.outside_hull_b == 1);
    bool at_one = false;
    for (size_t i = 0; i < zs.size(); ++i)
        if (zs.exact[i] && zs.points[i].re.to_rat() == 1)
            at_one = zs.radius[i].is_zero();
    CHECK(at_one);
    auto left = interlacing_report(zp, zs, {Rat(-1), Rat(0), true, true});
    CHECK(left.count_inside_a == 15);
    CHECK(left.count_inside_b == 0);
}

TEST_CASE("Angelesco zero counts per interval")
{
    for (int n = 2; n <= 15; ++n) {
        CAPTURE(n);
        auto s = solve("angelesco_jacobi", {{"a", -1}, {"alpha", 0}, {"beta", Rat(1, 2)}, {"gamma", 0}}, n, n);
        auto z = find_zeros(s.rec.P, 256);
        CHECK(real_count(z) == 2 * n);
        CHECK(count_in(z, -1, 0) == n);
        CHECK(count_in(z, 0, 1) == n);
    }
    auto s = solve("angelesco_jacobi", {{"a", Rat(-1, 2)}, {"alpha", 0}, {"beta", 0}, {"gamma", 0}}, 6, 4);
    auto z = find_zeros(s.rec.P, 256);
    CHECK(count_in(z, -0.5, 0) == 6);
    CHECK(count_in(z, 0, 1) == 4);
}

TEST_CASE("Nikishin families keep every zero in the support")
{
    auto l = solve("mlaguerre1", {{"alpha1", Rat(1, 2)}, {"alpha2", 1}}, 8, 7);
    auto zl = find_zeros(l.rec.P, 256);
    CHECK(count_in(zl, 0, 1e9) == 15);
    auto j = solve("jacobi_pineiro", {{"alpha", 0}, {"beta1", 0}, {"beta2", Rat(-1, 2)}}, 8, 8);
    auto zj = find_zeros(j.rec.P, 256);
    CHECK(count_in(zj, 0, 1) == 16);
}

TEST_CASE("Laguerre I (35,35): P positive, real zeros of S negative")
{
    auto s = solve("mlaguerre1", {{"alpha1", Rat(1, 2)}, {"alpha2", 1}}, 35, 35);
    auto zp = find_zeros(s.rec.P, 512);
    CHECK(count_in(zp, 0, 1e9) == 70);
    double top = zp.real_points().back().to_double();
    CHECK(std::abs(top - 217.597) / 217.597 < 5e-4);
    for (int i = 0; i < 2; ++i) {
        auto zs = find_zeros(s.rec.partners[static_cast<size_t>(i)], 512);
        for (const auto& x : zs.real_points())
            CHECK(x.sign() < 0);
    }
}

TEST_CASE("sign changes")
{
    ExactPoly p = ExactPoly::from_roots({1, 2, 3});
    auto f = [&](const BigFloat& x) { return p.eval(x); };
    CHECK(sign_changes(f, BigFloat(128, 0.0), BigFloat(128, 4.0), 16) == 3);
    // a close pair hidden between grid points
    ExactPoly q = ExactPoly::from_roots({Rat(7, 10), Rat(1401, 2000), Rat(33, 10)});
    auto g = [&](const BigFloat& x) { return q.eval(x); };
    CHECK(sign_changes(g, BigFloat(128, 0.0), BigFloat(128, 4.0), 8) == 3);

    // Cauchy transform of the Jacobi-Pineiro polynomial changes sign n2 times left of the support
    auto s = solve("jacobi_pineiro", {{"alpha", 0}, {"beta1", 0}, {"beta2", Rat(-1, 2)}}, 5, 5);
    // x = -e^t; the changes crowd towards the origin
    auto c = [&](const BigFloat& t) { return cauchy_numeric(s.ws[0], s.rec.P, BigComplex(-exp(t)), 128).re; };
    CHECK(sign_changes(c, BigFloat(128, -16.0), BigFloat(128, 4.0), 40) >= 5);
}

TEST_CASE("cluster count")
{
    std::vector<Rat> grid;
    for (int k = 0; k <= 20; ++k)
        grid.push_back(Rat(k, 20));
    auto u = find_zeros(ExactPoly::from_roots(grid), 128);
    CHECK(cluster_gap(u, {-1, 2}).clusters == 1);

    std::vector<Rat> two;
    for (int k = 0; k < 10; ++k) {
        two.push_back(Rat(k, 10));
        two.push_back(5 + Rat(k, 10));
    }
    auto t = find_zeros(ExactPoly::from_roots(two), 128);
    auto ci = cluster_gap(t, {-10, 10});
    CHECK(ci.clusters == 2);
    CHECK(ci.max_gap == doctest::Approx(4.1));

    for (auto [c, expect] : std::vector<std::pair<int, int>>{{1, 1}, {16, 2}}) {
        auto s = solve("multiple_hermite", {{"c1", c}, {"c2", -c}}, 35, 35);
        CHECK(cluster_gap(find_zeros(s.rec.P, 256), {-100, 100}).clusters == expect);
    }
}

TEST_CASE("sum of roots and radius shrinking")
{
    auto s = solve("jacobi_pineiro", {{"alpha", Rat(1, 3)}, {"beta1", Rat(1, 2)}, {"beta2", 0}}, 6, 5);
    const ExactPoly& P = s.rec.P;
    for (long prec : {128L, 256L, 512L}) {
        auto z = find_zeros(P, prec);
        BigComplex sum(prec);
        for (size_t i = 0; i < z.size(); ++i)
            for (int k = 0; k < z.multiplicity[i]; ++k)
                sum += z.points[i];
        BigFloat expect(prec, -P[P.degree() - 1] / P.lc());
        CHECK(abs(sum - BigComplex(expect)) < BigFloat::pow2(prec, -prec + 8));
    }
    auto lo = find_zeros(P, 128), hi = find_zeros(P, 256);
    REQUIRE(lo.size() == hi.size());
    for (size_t i = 0; i < lo.size(); ++i)
        CHECK(hi.radius[i] < lo.radius[i]);
}

TEST_CASE("Appell reflection maps zeros of S1 to negated zeros of S2")
{
    auto s = solve("appell", {}, 7, 7);
    auto z1 = find_zeros(s.rec.partners[0], 256), z2 = find_zeros(s.rec.partners[1], 256);
    REQUIRE(z1.size() == z2.size());
    for (size_t i = 0; i < z1.size(); ++i) {
        BigFloat best = BigFloat::inf(256);
        for (size_t j = 0; j < z2.size(); ++j)
            best = min(best, abs(z1.points[i] + z2.points[j]));
        CHECK(best < BigFloat::pow2(256, -200));
    }
}

TEST_CASE("multiple roots, exact roots and conjugate symmetry")
{
    ExactPoly p = pow(ExactPoly{-1, 1}, 3) * ExactPoly{2, 0, 1} * ExactPoly{Rat(-1, 3), 1};
    ZeroOptions o;
    o.precision = 128;
    auto z = find_zeros(p, o);
    CHECK(z.count() == 6);
    bool triple = false;
    for (size_t i = 0; i < z.size(); ++i)
        if (z.multiplicity[i] == 3)
            triple = z.exact[i] && z.points[i].re.to_rat() == 1;
    CHECK(triple);
    int nonreal = 0;
    for (size_t i = 0; i < z.size(); ++i)
        if (!z.real[i]) {
            ++nonreal;
            bool has_conj = false;
            for (size_t j = 0; j < z.size(); ++j)
                has_conj = has_conj || abs(z.points[j] - conj(z.points[i])) < BigFloat::pow2(128, -100);
            CHECK(has_conj);
        }
    CHECK(nonreal == 2);
    CHECK(find_zeros(ExactPoly{0, 0, 1}, 64).count() == 2);
}

TEST_CASE("decisions closer than the radii are refused")
{
    // a root 2^-300 to the right of the interval end
    Rat eps = Rat(1) / Rat(mpz_class(1) << 300);
    auto a = find_zeros(ExactPoly::from_roots({1 + eps, 5}), 64);
    auto b = find_zeros(ExactPoly::from_roots({Rat(1, 2)}), 64);
    try {
        interlacing_report(a, b, {Rat(0), Rat(1), true, true});
        FAIL("ambiguous decision accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AmbiguousAtPrecision);
    }

    ZeroOptions o;
    o.precision = 64;
    o.precision_cap = 128;
    try {
        find_zeros(ExactPoly::from_roots({Rat(1, 3) + eps, Rat(1, 3) + 2 * eps, 7}), o);
        FAIL("separated roots below the cap");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PrecisionCapExceeded);
    }
}

TEST_CASE("csv export")
{
    auto z = find_zeros(ExactPoly::from_roots({1, 2}), 64);
    auto csv = zeros_csv(z, 10);
    CHECK(csv.rfind("re,im,radius,multiplicity", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
