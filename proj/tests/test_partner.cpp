#include "doctest.h"

#include "hpe/error.hpp"
#include "hpe/partner.hpp"

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

Solved solve1(const std::string& fam, const Params& p, int N)
{
    auto ws = family(fam, p);
    auto rec = solve_quasi(ws[0], N, N);
    complete_record(rec, ws);
    return {std::move(rec), std::move(ws)};
}

Rat factorial(int n)
{
    Rat r = 1;
    for (int j = 2; j <= n; ++j)
        r *= j;
    return r;
}

Rat poch(const Rat& a, int k)
{
    Rat r = 1;
    for (int j = 0; j < k; ++j)
        r *= a + j;
    return r;
}

// monic Jacobi P_N^{(a,b)} from the 2F1 sum in powers of (1-x)/2
ExactPoly monic_jacobi(int N, const Rat& a, const Rat& b)
{
    ExactPoly half_one_minus_x{Rat(1, 2), Rat(-1, 2)}, out;
    for (int k = 0; k <= N; ++k)
        out += pow(half_one_minus_x, k) * (poch(Rat(-N), k) * poch(a + b + N + 1, k) / (poch(a + 1, k) * factorial(k)));
    return out.monic();
}

const std::vector<std::pair<std::string, Params>>& two_weight_cases()
{
    static const std::vector<std::pair<std::string, Params>> c = {
        {"multiple_hermite", {{"c1", 1}, {"c2", -1}}},
        {"multiple_hermite", {{"c1", 0}, {"c2", Rat(3, 2)}}},
        {"mlaguerre1", {{"alpha1", Rat(1, 2)}, {"alpha2", 1}}},
        {"mlaguerre2", {{"alpha", 1}, {"c1", 1}, {"c2", 2}}},
        {"jacobi_pineiro", {{"alpha", 0}, {"beta1", 0}, {"beta2", Rat(-1, 2)}}},
        {"jacobi_pineiro", {{"alpha", Rat(1, 3)}, {"beta1", Rat(1, 2)}, {"beta2", 0}}},
        {"appell", {}},
        {"angelesco_jacobi", {{"a", -1}, {"alpha", 0}, {"beta", Rat(1, 2)}, {"gamma", 0}}},
        {"angelesco_jacobi", {{"a", Rat(-1, 2)}, {"alpha", 0}, {"beta", 0}, {"gamma", 0}}},
    };
    return c;
}

}  // namespace

TEST_CASE("classical partners are constant")
{
    for (int N : {2, 3, 5, 8}) {
        auto h = solve1("hermite", {{"c", 0}}, N);
        REQUIRE(h.rec.partners[0].degree() == 0);
        Rat hN = factorial(N) / Rat(mpz_class(1) << N);
        CHECK(h.rec.m[0] == hN);
        CHECK(h.rec.partners[0] == ExactPoly{-2 * hN});
        CHECK(h.rec.vanvleck[0] == h.rec.partners[0] * Rat(2 * N));

        auto l = solve1("jacobi", {{"alpha", 0}, {"beta", 0}}, N);
        REQUIRE(l.rec.partners[0].degree() == 0);
        Rat u0 = pearson_moments(l.ws[0], 1).values[0];
        Rat r = Rat(mpz_class(1) << N) * factorial(N) * factorial(N) / factorial(2 * N);
        Rat hL = u0 / 2 * Rat(2, 2 * N + 1) * r * r;
        CHECK(l.rec.m[0] == hL);
        CHECK(l.rec.partners[0] == ExactPoly{(2 * N + 1) * hL});
    }
}

TEST_CASE("multiple Hermite partner matches the printed one")
{
    auto s = solve("multiple_hermite", {{"c1", 1}, {"c2", -1}}, 5, 5);
    ExactPoly printed{39971, 39970, 17560, 4240, 560, 32};
    CHECK(s.rec.partners[0].monic() == printed.monic());
    CHECK(s.rec.partners[1].monic() == printed.reflect().monic());
    CHECK(s.rec.r_poly->degree() == 0);
}

TEST_CASE("nonstandard Jacobi: S is a power of (x - 1) and C = -lambda S")
{
    Rat a(-5, 2), b(1, 3);
    const int N = 6;
    ExactPoly P = monic_jacobi(N, a, b);
    for (int k : {2, 3}) {
        auto w = family("jacobi", {{"alpha", a + k}, {"beta", b}})[0];
        auto u = pearson_moments(w, 3 * N + 8).values;
        auto tail = cauchy_tail(P, u, 2 * N + 8);
        CHECK(tail.valuation() == N - k);
        auto bundle = electrostatic_partner(P, w, tail);
        CHECK(bundle.S.monic() == pow(ExactPoly{-1, 1}, k));
        auto ode = van_vleck(P, bundle, w);
        CHECK(ode.C == bundle.S * -(Rat(N) * (a + b + N + 1)));
        CHECK(ode2_residual(w.A, w.B, bundle.S, ode.C, P).is_zero());
    }
}

TEST_CASE("nonstandard family record")
{
    for (int shift : {2, 3}) {
        auto ws = family("nonstandard_jacobi", {{"alpha", Rat(-5, 2)}, {"beta", Rat(1, 3)}, {"N", 6}, {"shift", shift}});
        SolveOptions o;
        o.lenient = true;
        auto rec = solve_mop(ws[0], ws[1], {6 - shift, shift}, o);
        complete_record(rec, ws);
        CHECK(rec.P == monic_jacobi(6, Rat(-5, 2), Rat(1, 3)));
        CHECK(rec.partners[0].monic() == pow(ExactPoly{-1, 1}, shift));
        CHECK(rec.r_poly->is_zero());
        CHECK(!rec.normal);
    }
}

TEST_CASE("U, H and the determinant identity")
{
    auto h = solve1("hermite", {{"c", 0}}, 3);
    auto uh = compute_U_H(h.rec.P, h.ws[0], h.rec.cauchy[0]);
    CHECK(uh.H.is_zero());
    CHECK(uh.U.monic() == solve_quasi(h.ws[0], 2, 2).P);
    CHECK(verify_polynD(h.rec.P, uh.U, uh.H, h.rec.partners[0], h.ws[0], h.rec.cauchy[0]).ok);
    auto bad = verify_polynD(h.rec.P, uh.U, uh.H + ExactPoly{1}, h.rec.partners[0], h.ws[0], h.rec.cauchy[0]);
    CHECK(!bad.ok);

    auto h2 = solve1("hermite", {{"c", 0}}, 2);
    auto uh2 = compute_U_H(h2.rec.P, h2.ws[0], h2.rec.cauchy[0]);
    CHECK(verify_polynD(h2.rec.P, uh2.U, uh2.H, h2.rec.partners[0], h2.ws[0], h2.rec.cauchy[0]).ok);

    auto l = solve1("jacobi", {{"alpha", 0}, {"beta", 0}}, 2);
    CHECK(compute_U_H(l.rec.P, l.ws[0], l.rec.cauchy[0]).H.is_zero());
    auto l3 = solve1("jacobi", {{"alpha", 0}, {"beta", 0}}, 3);
    auto uh3 = compute_U_H(l3.rec.P, l3.ws[0], l3.rec.cauchy[0]);
    auto ok3 = verify_polynD(l3.rec.P, uh3.U, uh3.H, l3.rec.partners[0], l3.ws[0], l3.rec.cauchy[0]);
    CHECK(ok3.ok);
    CHECK(!verify_polynD(l3.rec.P, uh3.U, uh3.H + ExactPoly{1}, l3.rec.partners[0], l3.ws[0], l3.rec.cauchy[0]).ok);

    // P = x against w = 1 on [0, 1], no orthogonality: D = 1/2 and the E + B integral adds 1/2
    auto w = family("jacobi_pineiro", {{"alpha", 0}, {"beta1", 0}, {"beta2", Rat(1, 2)}})[0];
    ExactPoly x = ExactPoly::x();
    auto tail = cauchy_tail(x, pearson_moments(w, 12).values, 10);
    auto r = compute_U_H(x, w, tail);
    CHECK(r.U.is_zero());
    CHECK(r.H == ExactPoly{1});
}

TEST_CASE("identities hold on every two-weight family")
{
    for (const auto& [fam, p] : two_weight_cases())
        for (auto [n1, n2] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 3}, {3, 3}, {4, 3}}) {
            CAPTURE(fam);
            CAPTURE(n1);
            CAPTURE(n2);
            auto s = solve(fam, p, n1, n2);
            const auto& rec = s.rec;
            const auto &w1 = s.ws[0], &w2 = s.ws[1];
            for (int i = 0; i < 2; ++i) {
                const auto& w = s.ws[static_cast<size_t>(i)];
                const auto& S = rec.partners[static_cast<size_t>(i)];
                int ni = rec.n[static_cast<size_t>(i)];
                CHECK(S.degree() <= rec.N - ni + w.sigma);
                CHECK(ode2_residual(w.A, w.B, S, rec.vanvleck[static_cast<size_t>(i)], rec.P).is_zero());
                CHECK(leading_check(PartnerBundle{S, 0, 1}, rec.m[static_cast<size_t>(i)], rec.N, ni, w));
            }
            REQUIRE(rec.r_poly);
            CHECK(rec.r_poly->degree() <= 2 * w1.sigma + 2 * w2.sigma + 3);
            CHECK(idr1_residual(rec, w1, w2).is_zero());
            CHECK(idr0_residual(rec, w1, w2).is_zero());
            CHECK(ode3_residual(rec, w1, w2, rec.P).is_zero());
            CHECK(rec.f_poly->degree() <= w1.sigma + w2.sigma + rec.r_poly->degree() + 1);
            for (int k = 1; k <= 2; ++k)
                if (rec.partners[static_cast<size_t>(k - 1)].degree() >= 1)
                    CHECK(partner_ode_residual(rec, w1, w2, k, rec.partners[static_cast<size_t>(k - 1)]).is_zero());
            if (equal_weights(w1, w2)) {
                REQUIRE(rec.r_star);
                CHECK(w1.A * w1.A * wronskian(rec.partners[0], rec.partners[1]) == *rec.r_poly * rec.P);
                if (n1 == n2)
                    CHECK(rec.r_star->degree() == 0);
            }
            for (const auto& c : verify_record(rec, s.ws)) {
                CAPTURE(c.name);
                CAPTURE(c.detail);
                CHECK(c.ok);
            }
        }
}

TEST_CASE("R structure")
{
    for (int n : {2, 3, 5}) {
        auto h = solve("multiple_hermite", {{"c1", 1}, {"c2", -1}}, n, n);
        CHECK(h.rec.r_poly->degree() == 0);
        auto l1 = solve("mlaguerre1", {{"alpha1", Rat(1, 2)}, {"alpha2", 1}}, n, n);
        CHECK(l1.rec.r_poly->monic() == ExactPoly::x());
        auto l2 = solve("mlaguerre2", {{"alpha", 1}, {"c1", 1}, {"c2", 2}}, n, n);
        CHECK(l2.rec.r_poly->monic() == ExactPoly{0, 0, 1});
        auto jp = solve("jacobi_pineiro", {{"alpha", 0}, {"beta1", 0}, {"beta2", Rat(-1, 2)}}, n, n);
        CHECK(jp.rec.r_poly->monic() == ExactPoly::from_roots({0, 1, 1}));
        auto ap = solve("appell", {}, n, n);
        CHECK(ap.rec.r_star->degree() == 0);
    }
}

TEST_CASE("printed third order coefficients")
{
    for (auto [n1, n2] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 4}}) {
        Rat N = n1 + n2;
        auto h = solve("multiple_hermite", {{"c1", 1}, {"c2", -1}}, n1, n2);
        Rat r = h.rec.r_poly->lc();
        ExactPoly B1 = h.ws[0].B, B2 = h.ws[1].B;
        CHECK(*h.rec.e_poly * (1 / r) == B1 * B2 + ExactPoly{2 * (N - 1)});
        CHECK(*h.rec.f_poly * (1 / r) == B1 * Rat(2 * n2) + B2 * Rat(2 * n1));

        Rat a1(1, 2), a2(1);
        auto l = solve("mlaguerre1", {{"alpha1", a1}, {"alpha2", a2}}, n1, n2);
        Rat rl = l.rec.r_poly->lc();
        CHECK(*l.rec.e_poly * (1 / rl) == ExactPoly{0, (1 + a1) * (1 + a2), N - a1 - a2 - 3, 1});
        CHECK(*l.rec.f_poly * (1 / rl) == ExactPoly{0, N + n1 * n2 + a1 * n2 + a2 * n1, -N});
    }
}

TEST_CASE("Appell reflection of the partners")
{
    for (int n = 1; n <= 7; ++n) {
        auto s = solve("appell", {}, n, n);
        CHECK(s.rec.partners[0] == -s.rec.partners[1].reflect());
        ExactPoly m2 = s.rec.partners[1].monic().reflect();
        CHECK(s.rec.partners[0].degree() == n + 1);
        CHECK(s.rec.partners[0].monic() == (n % 2 ? m2 : -m2));
    }
}

TEST_CASE("root of P at a zero of A is shared by S")
{
    auto w = family("laguerre", {{"alpha", Rat(1, 2)}, {"c", 1}})[0];
    for (int k : {1, 2, 3}) {
        ExactPoly P = pow(ExactPoly::x(), k) * ExactPoly::from_roots({1, 3, Rat(7, 2)});
        auto tail = cauchy_tail(P, pearson_moments(w, 3 * P.degree() + 12).values, 2 * P.degree() + 8);
        auto S = electrostatic_partner(P, w, tail).S;
        REQUIRE(!S.is_zero());
        CHECK(root_multiplicity(S, 0) >= k);
    }
    auto a = family("appell", {})[1];
    ExactPoly P = pow(ExactPoly{-1, 1}, 2) * ExactPoly::from_roots({Rat(1, 3), Rat(1, 2)});
    auto tail = cauchy_tail(P, pearson_moments(a, 3 * P.degree() + 12).values, 2 * P.degree() + 8);
    CHECK(root_multiplicity(electrostatic_partner(P, a, tail).S, 1) >= 2);
}

TEST_CASE("scale covariance of the partner")
{
    auto w = family("jacobi", {{"alpha", Rat(1, 2)}, {"beta", Rat(-1, 3)}})[0];
    auto u = pearson_moments(w, 30).values;
    ExactPoly P = ExactPoly::from_roots({Rat(-1, 2), Rat(1, 5), Rat(2, 3), Rat(9, 10)});
    auto S = electrostatic_partner(P, w, cauchy_tail(P, u, 16)).S;
    for (Rat lam : {Rat(3), Rat(-2, 7)}) {
        ExactPoly Q = P * lam;
        auto SQ = electrostatic_partner(Q, w, cauchy_tail(Q, u, 16)).S;
        CHECK(SQ == S * (lam * lam));
        auto C = van_vleck(P, {S, 0, 1}, w).C;
        auto CQ = van_vleck(Q, {SQ, 0, 1}, w).C;
        CHECK(CQ == C * (lam * lam));
        CHECK(ode2_residual(w.A, w.B, SQ, CQ, Q).is_zero());
    }
}

TEST_CASE("partner equation needs two weights")
{
    auto h = solve1("hermite", {}, 4);
    auto w = family("hermite", {})[0];
    CHECK_THROWS_AS(partner_ode(h.rec, w, w, 1), Error);
}

TEST_CASE("common roots of P and A S produce a warning")
{
    auto ws = family("nonstandard_jacobi", {{"alpha", Rat(-5, 2)}, {"beta", Rat(1, 3)}, {"N", 6}});
    SolveOptions o;
    o.lenient = true;
    auto rec = solve_mop(ws[0], ws[1], {4, 2}, o);
    complete_record(rec, ws);
    CHECK(!rec.warnings.empty());
}
