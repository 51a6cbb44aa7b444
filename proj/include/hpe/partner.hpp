#pragma once

#include "hpe/mop.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hpe {

struct PartnerBundle {
    ExactPoly S;
    int tail_checked_to = 0;
    int scale_power = 1;  // S carries the weight's scale tag to this power
    ExactPoly monic() const { return S.is_zero() ? S : S.monic(); }
};

struct OdePair {
    ExactPoly S;
    ExactPoly C;
};

struct UHResult {
    ExactPoly U;
    ExactPoly H;
    ExactPoly Epart;
};

// S = polynomial part of P (A c' - B c) - A P' c; the tail must vanish within the trusted order
PartnerBundle electrostatic_partner(const ExactPoly& P, const SemiclassicalWeight& w, const LaurentTail& cauchy);

// compares the coefficient of z^{N-n+sigma} of S with the prediction from m_n, and deg S <= N - n + sigma
bool leading_check(const PartnerBundle& b, const Rat& m_n, int N, int n, const SemiclassicalWeight& w);

UHResult compute_U_H(const ExactPoly& P, const SemiclassicalWeight& w, const LaurentTail& cauchy);

struct PolynDCheck {
    bool ok = true;
    int first_mismatch = -1;  // counted from the top power of the expansion
};
// det [[P, c[P]], [U, c[U] + H]] against S using the weight's exact moments
PolynDCheck verify_polynD(const ExactPoly& P, const ExactPoly& U, const ExactPoly& H, const ExactPoly& S,
                          const SemiclassicalWeight& w, const LaurentTail& cauchy);

OdePair van_vleck(const ExactPoly& P, const PartnerBundle& b, const SemiclassicalWeight& w);

// A S y'' + (A'S - AS' + BS) y' + C y
ExactPoly ode2_residual(const ExactPoly& A, const ExactPoly& B, const ExactPoly& S, const ExactPoly& C,
                        const ExactPoly& y);

struct RResult {
    ExactPoly R;
    std::optional<ExactPoly> R_star;  // R / A^2 when A1 = A2 and B1 = B2
};
RResult r_polynomial(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2);
// R P' - (A1 S1 C2 - A2 S2 C1)
ExactPoly idr0_residual(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2);
// R P - [-W(A1,A2) S1 S2 + A1 A2 W(S1,S2) + (A2 B1 - A1 B2) S1 S2]
ExactPoly idr1_residual(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2);

// E and F of the third order equation, computed through S1 and checked against the S2 route
std::pair<ExactPoly, ExactPoly> third_order(const MopRecord& rec, const SemiclassicalWeight& w1,
                                            const SemiclassicalWeight& w2);
ExactPoly ode3_residual(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2,
                        const ExactPoly& y);

// D_which of the partner equation; in the equal weight case D* of the reduced equation
ExactPoly partner_ode(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2, int which);
// residual of the partner equation at y, using D from partner_ode
ExactPoly partner_ode_residual(const MopRecord& rec, const SemiclassicalWeight& w1, const SemiclassicalWeight& w2,
                               int which, const ExactPoly& y);
bool equal_weights(const SemiclassicalWeight& w1, const SemiclassicalWeight& w2);

struct IdentityCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};
// Every identity the record should satisfy, evaluated on the stored polynomials.
std::vector<IdentityCheck> verify_record(const MopRecord& rec, const std::vector<SemiclassicalWeight>& ws);
// true when w2(x) = w1(-x) as Pearson data and supports
bool mirrored(const SemiclassicalWeight& w1, const SemiclassicalWeight& w2);

// Fills partners, van Vleck polynomials, R, R*, E, F and warnings. Stops quietly after R when R = 0.
void complete_record(MopRecord& rec, const std::vector<SemiclassicalWeight>& ws);

}  // namespace hpe
