#include "doctest.h"

#include "hpe/error.hpp"
#include "hpe/weights.hpp"

using namespace hpe;

namespace {

using Params = std::map<std::string, Rat>;

struct Fixture {
    std::string name;
    Params params;
    int sigma;
};

const std::vector<Fixture>& fixtures()
{
    static const std::vector<Fixture> f = {
        {"multiple_hermite", {{"c1", 1}, {"c2", -1}}, 0},
        {"mlaguerre1", {{"alpha1", Rat(1, 2)}, {"alpha2", 1}}, 0},
        {"mlaguerre2", {{"alpha", 1}, {"c1", 1}, {"c2", 2}}, 0},
        {"jacobi_pineiro", {{"alpha", 0}, {"beta1", 0}, {"beta2", Rat(-1, 2)}}, 0},
        {"angelesco_jacobi", {{"a", -1}, {"alpha", 0}, {"beta", Rat(1, 2)}, {"gamma", 0}}, 1},
        {"appell", {}, 1},
        {"hermite", {{"c", Rat(1, 3)}}, 0},
        {"laguerre", {{"alpha", Rat(-1, 3)}, {"c", 2}}, 0},
        {"jacobi", {{"alpha", Rat(1, 2)}, {"beta", Rat(-1, 4)}}, 0},
    };
    return f;
}

Rat double_factorial_odd(int m)  // (2m-1)!!
{
    Rat r = 1;
    for (int j = 1; j <= m; ++j)
        r *= 2 * j - 1;
    return r;
}

Rat binom(int n, int k)
{
    Rat r = 1;
    for (int j = 1; j <= k; ++j)
        r = r * (n - k + j) / j;
    return r;
}

}  // namespace

TEST_CASE("Hermite moments against Gaussian integrals")
{
    auto w = family("hermite", {{"c", 1}})[0];
    auto u = pearson_moments(w, 12).values;
    CHECK(u[1] == Rat(1, 2));
    CHECK(u[2] == Rat(3, 4));
    CHECK(u[3] == Rat(7, 8));
    // e^{-x^2 + x} / (sqrt(pi) e^{1/4}) is the N(1/2, 1/2) density
    for (int k = 0; k < 12; ++k) {
        Rat s = 0;
        for (int j = 0; j <= k; j += 2)
            s += binom(k, j) * double_factorial_odd(j / 2) / Rat(mpz_class(1) << (j / 2)) /
                 Rat(mpz_class(1) << (k - j));
        CHECK(u[static_cast<size_t>(k)] == s);
    }
}

TEST_CASE("Laguerre and uniform moments")
{
    auto w = family("laguerre", {{"alpha", Rat(1, 2)}, {"c", 1}})[0];
    auto u = pearson_moments(w, 8).values;
    CHECK(u[1] / u[0] == Rat(3, 2));
    CHECK(u[2] / u[0] == Rat(15, 4));
    Rat g = 1;  // Gamma(k + 3/2) / Gamma(3/2)
    for (int k = 0; k < 8; ++k) {
        CHECK(u[static_cast<size_t>(k)] / u[0] == g);
        g *= Rat(2 * k + 3, 2);
    }

    auto ws = family("appell", {});
    auto v = pearson_moments(ws[1], 10).values;
    for (int k = 0; k < 10; ++k)
        CHECK(v[static_cast<size_t>(k)] == Rat(1, k + 1));
    auto v1 = pearson_moments(ws[0], 10).values;
    for (int k = 0; k < 10; ++k)
        CHECK(v1[static_cast<size_t>(k)] == Rat(k % 2 ? -1 : 1, k + 1));
}

TEST_CASE("catalog Pearson data")
{
    auto h = family("multiple_hermite", {{"c1", 1}, {"c2", -1}});
    REQUIRE(h.size() == 2);
    CHECK(h[0].A == ExactPoly{1});
    CHECK(h[0].B == ExactPoly{1, -2});
    CHECK(h[1].B == ExactPoly{-1, -2});
    CHECK(h[0].sigma == 0);

    auto l = family("mlaguerre1", {{"alpha1", Rat(1, 2)}, {"alpha2", 1}});
    CHECK(l[0].A == ExactPoly::x());
    CHECK(l[0].B == ExactPoly{Rat(1, 2), -1});
    CHECK(l[1].B == ExactPoly{1, -1});

    auto a = family("angelesco_jacobi", {{"a", -1}, {"alpha", 0}, {"beta", 0}, {"gamma", 0}});
    CHECK(a[0].A == ExactPoly::from_roots({-1, 0, 1}));
    CHECK(a[0].B.is_zero());
    CHECK(a[0].sigma == 1);
    REQUIRE(a[0].support.size() == 1);
    CHECK(a[0].support[0].left == Endpoint::finite(-1));
    CHECK(a[0].support[0].right == Endpoint::finite(0));
    CHECK(a[1].support[0].left == Endpoint::finite(0));
    CHECK(a[1].support[0].right == Endpoint::finite(1));

    for (const auto& f : fixtures())
        for (const auto& w : family(f.name, f.params)) {
            CHECK(w.sigma == f.sigma);
            CHECK(weight_class(w.A, w.B) == f.sigma);
            CHECK(w.A.lc() == 1);
        }
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(family("mlaguerre1", {{"alpha1", 1}, {"alpha2", 2}}), Error);
    CHECK_THROWS_AS(family("mlaguerre1", {{"alpha1", -2}, {"alpha2", Rat(1, 2)}}), Error);
    CHECK_THROWS_AS(family("multiple_hermite", {{"c1", 1}, {"c2", 1}}), Error);
    CHECK_THROWS_AS(family("jacobi_pineiro", {{"alpha", 0}, {"beta1", 0}}), Error);
    CHECK_THROWS_AS(family("no_such_family", {}), Error);
    try {
        family("mlaguerre2", {{"alpha", 1}, {"c1", -1}, {"c2", 2}});
        FAIL("accepted c1 < 0");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidParameters);
    }
}

TEST_CASE("Pearson recurrence residual vanishes on every exact sequence")
{
    for (const auto& f : fixtures())
        for (const auto& w : family(f.name, f.params)) {
            auto u = pearson_moments(w, 40).values;
            REQUIRE(u.size() == 40);
            int span = std::max(w.A.degree(), w.B.degree() + 1);
            for (int k = 0; k + span < 40; ++k)
                CHECK(pearson_residual(w.A, w.B, u, k) == 0);
        }
}

TEST_CASE("numeric moments of simple weights")
{
    auto ws = family("appell", {});
    auto m = numeric_moments(ws[1], 4, 128);
    CHECK(abs(m.numeric[3].re - BigFloat(128, Rat(1, 4))) <= max(m.error[3], BigFloat::pow2(128, -110)));

    auto arc = family("jacobi", {{"alpha", Rat(-1, 2)}, {"beta", Rat(-1, 2)}})[0];
    auto ma = numeric_moments(arc, 1, 128);
    CHECK(abs(ma.numeric[0].re - BigFloat::pi(128)) < BigFloat::pow2(128, -100));

    // e^{-z^3} on [0, inf): the substitution t = z^3 gives Gamma(4/3)
    SemiclassicalWeight ray;
    ray.name = "cubic_ray";
    ray.A = ExactPoly{1};
    ray.B = ExactPoly{0, 0, -3};
    ray.sigma = 1;
    ray.support = {SupportComponent::contour("ray", {{Rat(0), Rat(0), 1}})};
    ray.backend.kind = MomentBackend::Kind::numeric_quadrature;
    ray.density = LogDensity{ExactPoly{0, 0, 0, -1}, {}};
    auto mr = numeric_moments(ray, 1, 128);
    CHECK(abs(mr.numeric[0].re - gamma(BigFloat(128, Rat(4, 3)))) < BigFloat::pow2(128, -100));
    CHECK(abs(mr.numeric[0].im) < BigFloat::pow2(128, -100));

    // two rays of the catalog contour: Gamma(4/3) (1 - e^{-2 pi i / 3})
    auto cu = family("cubic", {})[0];
    auto mc = numeric_moments(cu, 1, 128);
    BigFloat g = gamma(BigFloat(128, Rat(4, 3)));
    BigFloat th = BigFloat::pi(128) * BigFloat(128, Rat(-2, 3));
    BigComplex expect(g - g * cos(th), -(g * sin(th)));
    CHECK(abs(mc.numeric[0] - expect) < BigFloat::pow2(128, -100));
    CHECK_THROWS_AS(pearson_moments(cu, 4), Error);
}

TEST_CASE("numeric moments reproduce exact moments up to the scale factor")
{
    for (const auto& f : fixtures())
        for (const auto& w : family(f.name, f.params)) {
            if (w.support.size() != 1)
                continue;
            CAPTURE(w.name);
            const int K = 41;
            auto ex = pearson_moments(w, K).values;
            auto nu = numeric_moments(w, K, 128);
            BigFloat scale = nu.numeric[0].re / BigFloat(128, ex[0]);
            for (int k = 0; k < K; ++k) {
                BigFloat e = BigFloat(128, ex[static_cast<size_t>(k)]) * scale;
                BigFloat rel = abs(nu.numeric[static_cast<size_t>(k)].re - e) / abs(e);
                CHECK(rel < BigFloat::pow2(128, -100));
            }
        }
}

TEST_CASE("support endpoints are ordered and density matches Pearson data")
{
    SemiclassicalWeight w = family("jacobi", {{"alpha", 1}, {"beta", 2}})[0];
    w.B = ExactPoly{1, 1};
    CHECK_THROWS_AS(validate(w), Error);
    SemiclassicalWeight v = family("laguerre", {{"alpha", Rat(1, 2)}, {"c", 1}})[0];
    v.A = ExactPoly{0, 2};
    CHECK_THROWS_AS(validate(v), Error);
}
