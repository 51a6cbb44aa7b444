#include "hpe/partner.hpp"

#include "hpe/error.hpp"

#include <algorithm>

namespace hpe {

namespace {

ExactPoly d1(const ExactPoly& p) { return p.derivative(); }
ExactPoly d2(const ExactPoly& p) { return p.derivative().derivative(); }

const ExactPoly& partner_of(const MopRecord& rec, int i)
{
    if (static_cast<int>(rec.partners.size()) <= i)
        throw Error(ErrorKind::NotApplicable, "partner S_" + std::to_string(i + 1) + " not computed");
    return rec.partners[static_cast<size_t>(i)];
}

const ExactPoly& vanvleck_of(const MopRecord& rec, int i)
{
    if (static_cast<int>(rec.vanvleck.size()) <= i)
        throw Error(ErrorKind::NotApplicable, "van Vleck polynomial C_" + std::to_string(i + 1) + " not computed");
    return rec.vanvleck[static_cast<size_t>(i)];
}

void need_two(const MopRecord& rec)
{
    if (!rec.two_weight())
        throw Error(ErrorKind::NotApplicable, "operation needs a two-weight record");
}

const ExactPoly& r_of(const MopRecord& rec)
{
    if (!rec.r_poly)
        throw Error(ErrorKind::NotApplicable, "R has not been computed");
    return *rec.r_poly;
}

// E and F through partner i, the other weight being j
std::pair<ExactPoly, ExactPoly> ef_route(const ExactPoly& R, const SemiclassicalWeight& wi,
                                         const SemiclassicalWeight& wj, const ExactPoly& Si, const ExactPoly& Ci)
{
    const ExactPoly &Ai = wi.A, &Bi = wi.B, &Aj = wj.A, &Bj = wj.B;
    ExactPoly Rp = d1(R);
    ExactPoly numE = -(Ai * Aj * R * d2(Si)) +
                     ((-(Ai * (Rat(2) * d1(Aj) + Bj)) + Aj * Bi) * R + Ai * Aj * Rp) * d1(Si) + Aj * R * Ci;
    ExactPoly E = poly_div_exact(numE, Si) +
                  (d2(Ai) * Aj + d1(Ai) * (Rat(2) * d1(Aj) + Bj) + Rat(2) * d1(Aj) * Bi + Aj * d1(Bi) + Bi * Bj) * R -
                  Aj * (d1(Ai) + Bi) * Rp;
    ExactPoly numF = (Aj * d1(Ci) + (Bj + Rat(2) * d1(Aj)) * Ci) * R - Aj * Ci * Rp;
    return {E, poly_div_exact(numF, Si)};
}

}  // namespace

PartnerBundle electrostatic_partner(const ExactPoly& P, const SemiclassicalWeight& w, const LaurentTail& cauchy)
{
    const ExactPoly& A = w.A;
    const ExactPoly& B = w.B;
    LaurentTail inner = A * cauchy.derivative() - B * cauchy;
    LaurentTail t = P * inner - (A * P.derivative()) * cauchy;
    for (int k = 0; k < t.order(); ++k)
        if (t.coeffs()[static_cast<size_t>(k)] != 0)
            throw Error(ErrorKind::TailNotVanishing,
                        "coefficient of z^-" + std::to_string(k + 1) + " in D_w[P] is nonzero");
    PartnerBundle b;
    b.S = t.poly_part();
    b.tail_checked_to = t.order();
    if (b.S.degree() > P.degree() + w.sigma)
        throw Error(ErrorKind::IdentityViolation, "deg S exceeds N + sigma");
    return b;
}

bool leading_check(const PartnerBundle& b, const Rat& m_n, int N, int n, const SemiclassicalWeight& w)
{
    const int top = N - n + w.sigma;
    Rat expect = 0;
    if (w.A.degree() - 2 == w.sigma)
        expect += Rat(N + n + 1);
    if (!w.B.is_zero() && w.B.degree() - 1 == w.sigma)
        expect += w.B.lc();
    expect *= m_n;
    return b.S.degree() <= top && b.S[top] == expect;
}

UHResult compute_U_H(const ExactPoly& P, const SemiclassicalWeight& w, const LaurentTail& cauchy)
{
    auto [E, U] = divmod(w.A * P.derivative(), P);
    LaurentTail t = w.A * cauchy.derivative() - (w.B + E) * cauchy;
    int order = t.order();
    std::vector<Rat> u = pearson_moments(w, std::max(U.degree(), 0) + order).values;
    std::vector<Rat> cu(static_cast<size_t>(order));
    if (!U.is_zero())
        cu = cauchy_tail(U, u, order).coeffs();
    for (int k = 0; k < order; ++k)
        if (t.coeffs()[static_cast<size_t>(k)] != cu[static_cast<size_t>(k)])
            throw Error(ErrorKind::TailNotVanishing,
                        "A c' - (B+E) c - c[U] has a nonzero z^-" + std::to_string(k + 1) + " coefficient");
    return {U, t.poly_part(), E};
}

PolynDCheck verify_polynD(const ExactPoly& P, const ExactPoly& U, const ExactPoly& H, const ExactPoly& S,
                          const SemiclassicalWeight& w, const LaurentTail& cauchy)
{
    int order = cauchy.order();
    std::vector<Rat> u = pearson_moments(w, std::max(U.degree(), 0) + order).values;
    std::vector<Rat> cu(static_cast<size_t>(order));
    if (!U.is_zero())
        cu = cauchy_tail(U, u, order).coeffs();
    LaurentTail det = P * LaurentTail(cu, H) - U * cauchy;
    PolynDCheck r;
    const ExactPoly& D = det.poly_part();
    int top = std::max(D.degree(), S.degree());
    int idx = 0;
    for (int k = top; k >= 0; --k, ++idx)
        if (D[k] != S[k]) {
            r.ok = false;
            r.first_mismatch = idx;
            return r;
        }
    for (int k = 0; k < det.order(); ++k, ++idx)
        if (det.coeffs()[static_cast<size_t>(k)] != 0) {
            r.ok = false;
            r.first_mismatch = idx;
            return r;
        }
    return r;
}

OdePair van_vleck(const ExactPoly& P, const PartnerBundle& b, const SemiclassicalWeight& w)
{
    const ExactPoly& A = w.A;
    const ExactPoly& S = b.S;
    ExactPoly num = A * S * d2(P) + (d1(A) * S - A * d1(S) + w.B * S) * d1(P);
    return {S, -poly_div_exact(num, P)};
}

ExactPoly ode2_residual(const ExactPoly& A, const ExactPoly& B, const ExactPoly& S, const ExactPoly& C,
                        const ExactPoly& y)
{
    return A * S * d2(y) + (d1(A) * S - A * d1(S) + B * S) * d1(y) + C * y;
}

bool equal_weights(const SemiclassicalWeight& w1, const SemiclassicalWeight& w2)
{
    return w1.A == w2.A && w1.B == w2.B;
}

namespace {

ExactPoly idr1_rhs(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2)
{
    const ExactPoly& S1 = partner_of(rec, 0);
    const ExactPoly& S2 = partner_of(rec, 1);
    const ExactPoly &A1 = w1.A, &A2 = w2.A;
    return -(wronskian(A1, A2) * S1 * S2) + A1 * A2 * wronskian(S1, S2) + (A2 * w1.B - A1 * w2.B) * S1 * S2;
}

}  // namespace

RResult r_polynomial(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2)
{
    need_two(rec);
    RResult r;
    r.R = poly_div_exact(idr1_rhs(rec, w1, w2), rec.P);
    if (w1.A == w2.A) {
        poly_div_exact(r.R, w1.A);
        if (w1.B == w2.B)
            r.R_star = poly_div_exact(r.R, w1.A * w1.A);
    }
    return r;
}

ExactPoly idr0_residual(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2)
{
    need_two(rec);
    return r_of(rec) * d1(rec.P) -
           (w1.A * partner_of(rec, 0) * vanvleck_of(rec, 1) - w2.A * partner_of(rec, 1) * vanvleck_of(rec, 0));
}

ExactPoly idr1_residual(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2)
{
    need_two(rec);
    return r_of(rec) * rec.P - idr1_rhs(rec, w1, w2);
}

std::pair<ExactPoly, ExactPoly> third_order(const MopRecord& rec, const SemiclassicalWeight& w1,
                                            const SemiclassicalWeight& w2)
{
    need_two(rec);
    const ExactPoly& R = r_of(rec);
    if (R.is_zero())
        throw Error(ErrorKind::NotApplicable, "R vanishes identically; the third order equation degenerates");
    auto first = ef_route(R, w1, w2, partner_of(rec, 0), vanvleck_of(rec, 0));
    auto second = ef_route(R, w2, w1, partner_of(rec, 1), vanvleck_of(rec, 1));
    if (first != second)
        throw Error(ErrorKind::AsymmetryDetected, "E, F through S1 and through S2 differ");
    return first;
}

ExactPoly ode3_residual(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2,
                        const ExactPoly& y)
{
    need_two(rec);
    if (!rec.e_poly || !rec.f_poly)
        throw Error(ErrorKind::NotApplicable, "E and F have not been computed");
    const ExactPoly& R = r_of(rec);
    const ExactPoly &A1 = w1.A, &A2 = w2.A, &B1 = w1.B, &B2 = w2.B;
    ExactPoly c2 = A1 * (Rat(2) * d1(A2) + B2) * R + A2 * (Rat(2) * d1(A1) + B1) * R - A1 * A2 * d1(R);
    return A1 * A2 * R * d1(d2(y)) + c2 * d2(y) + *rec.e_poly * d1(y) + *rec.f_poly * y;
}

namespace {

// coefficients (of y'' and y') of the partner equation
std::pair<ExactPoly, ExactPoly> partner_coeffs(const MopRecord& rec, const SemiclassicalWeight& w1,
                                               const SemiclassicalWeight& w2, int which)
{
    const ExactPoly& P = rec.P;
    if (equal_weights(w1, w2)) {
        if (!rec.r_star)
            throw Error(ErrorKind::NotApplicable, "R* has not been computed");
        ExactPoly PR = P * *rec.r_star;
        return {PR, -d1(PR)};
    }
    const ExactPoly& R = r_of(rec);
    const ExactPoly &A1 = w1.A, &A2 = w2.A, &B1 = w1.B, &B2 = w2.B;
    ExactPoly PR = P * R;
    ExactPoly k = which == 1 ? Rat(2) * A1 * d1(A2) + A1 * B2 - A2 * B1 : Rat(2) * d1(A1) * A2 - A1 * B2 + A2 * B1;
    return {A1 * A2 * PR, k * PR - A1 * A2 * d1(PR)};
}

}  // namespace

ExactPoly partner_ode(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2, int which)
{
    need_two(rec);
    if (which != 1 && which != 2)
        throw Error(ErrorKind::InvalidInput, "partner index must be 1 or 2");
    const ExactPoly& S = partner_of(rec, which - 1);
    if (S.is_zero())
        throw Error(ErrorKind::NotApplicable, "partner vanishes identically");
    auto [c2, c1] = partner_coeffs(rec, w1, w2, which);
    return -poly_div_exact(c2 * d2(S) + c1 * d1(S), S);
}

ExactPoly partner_ode_residual(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2,
                               int which, const ExactPoly& y)
{
    ExactPoly D = partner_ode(rec, w1, w2, which);
    auto [c2, c1] = partner_coeffs(rec, w1, w2, which);
    return c2 * d2(y) + c1 * d1(y) + D * y;
}

void complete_record(MopRecord& rec, const std::vector<SemiclassicalWeight>& ws)
{
    if (ws.size() != rec.n.size())
        throw Error(ErrorKind::InvalidInput, "record and weight list disagree in length");
    rec.partners.clear();
    rec.vanvleck.clear();
    for (size_t i = 0; i < ws.size(); ++i) {
        PartnerBundle b = electrostatic_partner(rec.P, ws[i], rec.cauchy[i]);
        OdePair ode = van_vleck(rec.P, b, ws[i]);
        rec.partners.push_back(b.S);
        rec.vanvleck.push_back(ode.C);
        ExactPoly g = gcd(rec.P, ws[i].A * b.S);
        if (g.degree() > 0)
            rec.warnings.push_back("P and A S_" + std::to_string(i + 1) + " share the factor " + g.str());
    }
    if (!rec.two_weight())
        return;
    RResult r = r_polynomial(rec, ws[0], ws[1]);
    rec.r_poly = r.R;
    rec.r_star = r.R_star;
    if (r.R.is_zero()) {
        rec.warnings.push_back("R vanishes identically: the two quasi-orthogonality systems are dependent");
        return;
    }
    auto [E, F] = third_order(rec, ws[0], ws[1]);
    rec.e_poly = E;
    rec.f_poly = F;
}

}  // namespace hpe
