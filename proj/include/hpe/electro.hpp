#pragma once

#include "hpe/mop.hpp"
#include "hpe/zeros.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hpe {

// One summand of an external field phi = Re Phi.
//   log_abs_poly:   coeff * log|poly|,          Phi' = coeff * poly'/poly
//   log_abs_weight: coeff * log|w|, w'/w = B/A, Phi' = coeff * B/A
//   real_poly:      Re(coeff * poly),            Phi' = coeff * poly'
struct FieldTerm {
    enum class Kind { log_abs_poly, log_abs_weight, real_poly };
    Kind kind = Kind::log_abs_poly;
    Rat coeff;
    ExactPoly poly;
    ExactPoly A, B;
    std::optional<LogDensity> density;  // needed to evaluate phi for weight terms

    static FieldTerm log_abs(const Rat& c, ExactPoly p);
    static FieldTerm weight(const Rat& c, const SemiclassicalWeight& w);
    static FieldTerm real(const Rat& c, ExactPoly q);
};

struct ExternalField {
    std::vector<FieldTerm> terms;

    ExternalField& add(FieldTerm t);
    // merges log terms of the same polynomial and drops zero coefficients
    ExternalField simplified() const;

    BigComplex dphi(const BigComplex& z) const;
    // exact value at a rational point; nullopt at a pole
    std::optional<Rat> dphi_exact(const Rat& x) const;
    BigFloat phi(const BigComplex& z) const;
    // polynomials whose zeros are the possible poles of Phi'
    std::vector<ExactPoly> pole_polys() const;
    std::string str() const;
};

struct EquilibriumReport {
    enum class Component { scalar, vector_1, vector_2 };
    Component component = Component::scalar;
    std::vector<size_t> index;  // position in the zero set of each residual
    std::vector<BigComplex> residuals;
    BigFloat max_abs{64};
    long precision = kDefaultPrecision;
    std::vector<size_t> excluded;  // points within twice their radius of a pole
};
const char* to_string(EquilibriumReport::Component c);

// residual_j = sum_{i != j} m_i / (z_j - z_i) - Phi'(z_j)
EquilibriumReport scalar_residual(const ZeroSet& z, const ExternalField& field);
// component 1 on zP, component 2 on zS
std::pair<EquilibriumReport, EquilibriumReport> vector_residual(const ZeroSet& zP, const ZeroSet& zS, const Rat& a,
                                                                const ExternalField& f1, const ExternalField& f2);

// Raw forms on point lists (unit charges, no pole screening).
std::vector<BigComplex> scalar_residual_points(const std::vector<BigComplex>& z, const ExternalField& field);
std::pair<std::vector<BigComplex>, std::vector<BigComplex>> vector_residual_points(
    const std::vector<BigComplex>& z1, const std::vector<BigComplex>& z2, const Rat& a, const ExternalField& f1,
    const ExternalField& f2);

// sum over ordered pairs i != j of -log|z_i - z_j| plus 2 sum phi(z_j); +inf on coincident points
BigFloat energy_points(const std::vector<BigComplex>& z, const ExternalField& field);
BigFloat energy_points(const std::vector<BigComplex>& z1, const std::vector<BigComplex>& z2, const Rat& a,
                       const ExternalField& f1, const ExternalField& f2);
BigFloat energy(const ZeroSet& z, const ExternalField& field);
BigFloat energy(const ZeroSet& z1, const ZeroSet& z2, const Rat& a, const ExternalField& f1,
                const ExternalField& f2);

struct Histogram {
    std::vector<double> left, right, density;
    double min = 0, max = 0;
    int count = 0;
    std::string csv() const;
};
// real parts of the real points times `scaling`, normalised to unit mass
Histogram histogram_export(const ZeroSet& z, const Rat& scaling, int bins);

// phi = 1/2 log|S_i / v_i| for weight i of the record
ExternalField scalar_field(const MopRecord& rec, const std::vector<SemiclassicalWeight>& ws, int i);
// field pair acting on (zeros of P, zeros of S_i)
std::pair<ExternalField, ExternalField> vector_fields(const MopRecord& rec, const std::vector<SemiclassicalWeight>& ws,
                                                      int i);

}  // namespace hpe
