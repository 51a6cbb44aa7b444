#include "hpe/error.hpp"
#include "hpe/partner.hpp"

#include <functional>

namespace hpe {

namespace {

// p(-x) made monic with the sign that keeps it monic
ExactPoly mirror_monic(const ExactPoly& p) { return p.is_zero() ? p : p.reflect().monic(); }

Endpoint neg(const Endpoint& e) { return e.is_finite() ? Endpoint::finite(-e.value) : Endpoint{-e.infinite, Rat(0)}; }

}  // namespace

bool mirrored(const SemiclassicalWeight& w1, const SemiclassicalWeight& w2)
{
    if (mirror_monic(w1.A) != w2.A)
        return false;
    // w2'/w2 (x) = -B1(-x)/A1(-x); rescale by the factor that made A2 monic
    ExactPoly Ar = w1.A.reflect();
    Rat s = w2.A.lc() / Ar.lc();
    if (w2.B != -(w1.B.reflect() * s))
        return false;
    if (w1.support.size() != w2.support.size())
        return false;
    for (size_t k = 0; k < w1.support.size(); ++k) {
        const auto &c1 = w1.support[k], &c2 = w2.support[k];
        if (c1.kind == SupportComponent::Kind::contour_tag || c1.kind != c2.kind)
            return false;
        if (!(neg(c1.right) == c2.left && neg(c1.left) == c2.right))
            return false;
    }
    return true;
}

std::vector<IdentityCheck> verify_record(const MopRecord& rec, const std::vector<SemiclassicalWeight>& ws)
{
    std::vector<IdentityCheck> out;
    auto run = [&](const std::string& name, const std::function<std::string()>& body) {
        IdentityCheck c;
        c.name = name;
        try {
            c.detail = body();
            c.ok = c.detail.empty() || c.detail.rfind("skipped", 0) == 0;
        } catch (const Error& e) {
            c.ok = false;
            c.detail = e.what();
        }
        out.push_back(std::move(c));
    };
    auto zero = [](const ExactPoly& r, const std::string& what) {
        return r.is_zero() ? std::string() : what + " residual has degree " + std::to_string(r.degree());
    };

    if (ws.size() != rec.n.size())
        throw Error(ErrorKind::InvalidInput, "record and weight list disagree in length");
    if (rec.P.degree() != rec.N || rec.P.lc() != 1) {
        out.push_back({"P_monic_degree_N", false, "P is not monic of degree N"});
        return out;
    }
    out.push_back({"P_monic_degree_N", true, ""});

    for (size_t i = 0; i < ws.size(); ++i) {
        const auto& w = ws[i];
        const std::string tag = "_" + std::to_string(i + 1);
        const int ni = rec.n[i];
        run("cauchy_tail" + tag, [&]() -> std::string {
            if (!w.backend.exact())
                return "skipped: numeric moments";
            const auto& stored = rec.cauchy.at(i);
            auto u = pearson_moments(w, rec.N + stored.order()).values;
            if (cauchy_tail(rec.P, u, stored.order()) != stored)
                return "stored Cauchy tail differs from the one recomputed from P";
            return "";
        });
        run("orthogonality" + tag, [&]() -> std::string {
            for (int j = 0; j < ni; ++j)
                if (rec.cauchy.at(i).coeff(j) != 0)
                    return "moment " + std::to_string(j) + " of P does not vanish";
            return "";
        });
        run("m" + tag, [&]() -> std::string {
            Rat m = -rec.cauchy.at(i).coeff(ni);
            if (rec.m.at(i) != m)
                return "stored m differs from the Cauchy tail";
            if (rec.normal && m == 0)
                return "record claims normality but m vanishes";
            return "";
        });
        const ExactPoly& S = rec.partners.at(i);
        run("partner_definition" + tag, [&]() -> std::string {
            if (electrostatic_partner(rec.P, w, rec.cauchy.at(i)).S != S)
                return "stored S differs from D_w[P]";
            return "";
        });
        run("degree_bound" + tag, [&]() -> std::string {
            if (S.degree() > rec.N - ni + w.sigma)
                return "deg S = " + std::to_string(S.degree()) + " > N - n + sigma";
            return "";
        });
        run("leading_coefficient" + tag, [&]() -> std::string {
            if (rec.m.at(i) == 0)
                return "skipped: m vanishes";
            PartnerBundle b{S, 0, 1};
            return leading_check(b, rec.m.at(i), rec.N, ni, w) ? "" : "top coefficient of S disagrees with m";
        });
        run("ode2" + tag, [&]() { return zero(ode2_residual(w.A, w.B, S, rec.vanvleck.at(i), rec.P), "P"); });
    }
    if (!rec.two_weight())
        return out;

    const auto &w1 = ws[0], &w2 = ws[1];
    if (!rec.r_poly) {
        out.push_back({"R_present", false, "R is missing"});
        return out;
    }
    run("IdR1", [&]() { return zero(idr1_residual(rec, w1, w2), "IdR1"); });
    run("IdR0", [&]() { return zero(idr0_residual(rec, w1, w2), "IdR0"); });
    if (w1.A == w2.A)
        run("R_divisible_by_A", [&]() -> std::string {
            if (!divmod(*rec.r_poly, w1.A).second.is_zero())
                return "A does not divide R";
            return "";
        });
    if (rec.r_poly->is_zero()) {
        out.push_back({"independence", false, "R vanishes identically"});
        return out;
    }
    if (equal_weights(w1, w2)) {
        run("R_star", [&]() -> std::string {
            if (!rec.r_star)
                return "R* is missing";
            if (*rec.r_star * w1.A * w1.A != *rec.r_poly)
                return "R != A^2 R*";
            return "";
        });
        run("wronskian_equal_weights", [&]() -> std::string {
            if (!rec.r_star)
                return "R* is missing";
            return zero(wronskian(rec.partners[0], rec.partners[1]) - rec.P * *rec.r_star, "W(S1,S2) - P R*");
        });
    }
    run("third_order_routes", [&]() -> std::string {
        auto ef = third_order(rec, w1, w2);
        if (!rec.e_poly || !rec.f_poly)
            return "E, F missing";
        if (ef.first != *rec.e_poly || ef.second != *rec.f_poly)
            return "stored E, F differ from the recomputed ones";
        return "";
    });
    run("ode3", [&]() { return zero(ode3_residual(rec, w1, w2, rec.P), "third order"); });
    for (int k = 1; k <= 2; ++k)
        run("partner_ode_" + std::to_string(k), [&]() -> std::string {
            if (rec.partners[static_cast<size_t>(k - 1)].degree() < 1)
                return "skipped: constant partner";
            partner_ode(rec, w1, w2, k);
            return "";
        });
    if (mirrored(w1, w2) && rec.n[0] == rec.n[1])
        run("mirror_symmetry", [&]() -> std::string {
            ExactPoly Pm = rec.P.reflect();
            if (rec.N % 2)
                Pm = -Pm;
            if (Pm != rec.P)
                return "P(-x) != (-1)^N P(x)";
            if (!proportional(rec.partners[0].reflect(), rec.partners[1]))
                return "S1(-x) is not proportional to S2(x)";
            return "";
        });
    return out;
}

}  // namespace hpe
