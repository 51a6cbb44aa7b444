#include "hpe/electro.hpp"

#include "hpe/error.hpp"
#include "hpe/partner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hpe {

FieldTerm FieldTerm::log_abs(const Rat& c, ExactPoly p)
{
    FieldTerm t;
    t.kind = Kind::log_abs_poly;
    t.coeff = c;
    t.poly = std::move(p);
    return t;
}

FieldTerm FieldTerm::weight(const Rat& c, const SemiclassicalWeight& w)
{
    FieldTerm t;
    t.kind = Kind::log_abs_weight;
    t.coeff = c;
    t.A = w.A;
    t.B = w.B;
    t.density = w.density;
    return t;
}

FieldTerm FieldTerm::real(const Rat& c, ExactPoly q)
{
    FieldTerm t;
    t.kind = Kind::real_poly;
    t.coeff = c;
    t.poly = std::move(q);
    return t;
}

ExternalField& ExternalField::add(FieldTerm t)
{
    terms.push_back(std::move(t));
    return *this;
}

ExternalField ExternalField::simplified() const
{
    ExternalField out;
    for (const auto& t : terms) {
        if (t.kind == FieldTerm::Kind::log_abs_poly && t.poly.degree() < 1)
            continue;  // log of a constant only shifts the energy
        bool merged = false;
        for (auto& u : out.terms) {
            if (u.kind != t.kind)
                continue;
            bool same = t.kind == FieldTerm::Kind::log_abs_weight ? (u.A == t.A && u.B == t.B) : u.poly == t.poly;
            if (t.kind == FieldTerm::Kind::log_abs_poly)
                same = same || (u.poly.degree() >= 1 && proportional(u.poly, t.poly));
            if (same) {
                u.coeff += t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged)
            out.terms.push_back(t);
    }
    out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(), [](const FieldTerm& t) { return t.coeff == 0; }),
                    out.terms.end());
    return out;
}

BigComplex ExternalField::dphi(const BigComplex& z) const
{
    const long prec = z.prec();
    BigComplex acc(prec);
    for (const auto& t : terms) {
        BigComplex c(prec, t.coeff);
        switch (t.kind) {
        case FieldTerm::Kind::log_abs_poly: {
            auto [v, d] = t.poly.eval_with_derivative(z);
            acc += c * d / v;
            break;
        }
        case FieldTerm::Kind::log_abs_weight:
            acc += c * t.B.eval(z) / t.A.eval(z);
            break;
        case FieldTerm::Kind::real_poly:
            acc += c * t.poly.derivative().eval(z);
            break;
        }
    }
    return acc;
}

std::optional<Rat> ExternalField::dphi_exact(const Rat& x) const
{
    Rat acc = 0;
    for (const auto& t : terms) {
        switch (t.kind) {
        case FieldTerm::Kind::log_abs_poly: {
            Rat v = t.poly.eval(x);
            if (v == 0)
                return std::nullopt;
            acc += t.coeff * t.poly.derivative().eval(x) / v;
            break;
        }
        case FieldTerm::Kind::log_abs_weight: {
            Rat v = t.A.eval(x);
            if (v == 0)
                return std::nullopt;
            acc += t.coeff * t.B.eval(x) / v;
            break;
        }
        case FieldTerm::Kind::real_poly:
            acc += t.coeff * t.poly.derivative().eval(x);
            break;
        }
    }
    return acc;
}

namespace {

BigFloat log_abs(const BigComplex& z) { return log(abs(z)); }

}  // namespace

BigFloat ExternalField::phi(const BigComplex& z) const
{
    const long prec = z.prec();
    BigFloat acc(prec);
    for (const auto& t : terms) {
        BigFloat c(prec, t.coeff);
        switch (t.kind) {
        case FieldTerm::Kind::log_abs_poly:
            acc += c * log_abs(t.poly.eval(z));
            break;
        case FieldTerm::Kind::log_abs_weight: {
            if (!t.density)
                throw Error(ErrorKind::NotApplicable, "weight term without a closed-form density");
            BigFloat lw = t.density->exp_poly.is_zero() ? BigFloat(prec) : t.density->exp_poly.eval(z).re;
            for (const auto& [r, e] : t.density->factors)
                lw += BigFloat(prec, e) * log_abs(z - BigComplex(prec, r));
            acc += c * lw;
            break;
        }
        case FieldTerm::Kind::real_poly:
            acc += (BigComplex(prec, t.coeff) * t.poly.eval(z)).re;
            break;
        }
    }
    return acc;
}

std::vector<ExactPoly> ExternalField::pole_polys() const
{
    std::vector<ExactPoly> out;
    for (const auto& t : terms) {
        const ExactPoly* p = nullptr;
        if (t.kind == FieldTerm::Kind::log_abs_poly)
            p = &t.poly;
        else if (t.kind == FieldTerm::Kind::log_abs_weight)
            p = &t.A;
        if (p && p->degree() >= 1)
            out.push_back(*p);
    }
    return out;
}

std::string ExternalField::str() const
{
    std::ostringstream os;
    for (size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (i)
            os << " + ";
        os << "(" << format_rat(t.coeff) << ")*";
        switch (t.kind) {
        case FieldTerm::Kind::log_abs_poly:
            os << "log|" << t.poly.str() << "|";
            break;
        case FieldTerm::Kind::log_abs_weight:
            os << "log|w| [w'/w = (" << t.B.str() << ")/(" << t.A.str() << ")]";
            break;
        case FieldTerm::Kind::real_poly:
            os << "Re(" << t.poly.str() << ")";
            break;
        }
    }
    return terms.empty() ? "0" : os.str();
}

const char* to_string(EquilibriumReport::Component c)
{
    switch (c) {
    case EquilibriumReport::Component::scalar:
        return "scalar";
    case EquilibriumReport::Component::vector_1:
        return "vector_1";
    case EquilibriumReport::Component::vector_2:
        return "vector_2";
    }
    return "?";
}

namespace {

// indices of points that sit within twice their radius of a pole of the field
std::vector<size_t> near_poles(const ZeroSet& z, const ExternalField& f)
{
    std::vector<bool> bad(z.size(), false);
    for (const ExactPoly& p : f.pole_polys()) {
        for (size_t i = 0; i < z.size(); ++i)
            if (z.exact[i] && z.real[i] && p.eval(z.points[i].re.to_rat()) == 0)
                throw Error(ErrorKind::PoleCollision, "point " + z.points[i].str(20) + " is a pole of the field");
        ZeroOptions o;
        o.precision = z.precision;
        ZeroSet poles = find_zeros(p, o);
        for (size_t i = 0; i < z.size(); ++i)
            for (size_t k = 0; k < poles.size(); ++k) {
                BigFloat d = abs(z.points[i] - poles.points[k]);
                if (d.is_zero())
                    throw Error(ErrorKind::PoleCollision, "point " + z.points[i].str(20) + " is a pole of the field");
                if (d <= (z.radius[i] + poles.radius[k]) * 2)
                    bad[i] = true;
            }
    }
    std::vector<size_t> out;
    for (size_t i = 0; i < z.size(); ++i)
        if (bad[i])
            out.push_back(i);
    return out;
}

BigComplex inv(const BigComplex& z)
{
    BigComplex one(z.prec(), 1.0);
    return one / z;
}

// sum_{i != j} m_i / (z_j - z_i) + a sum_k m_k / (z_j - y_k) - Phi'(z_j) over the included points
EquilibriumReport residuals(const ZeroSet& z, const ZeroSet* other, const Rat& a, const ExternalField& f,
                            EquilibriumReport::Component comp)
{
    EquilibriumReport rep;
    rep.component = comp;
    rep.precision = z.precision;
    rep.excluded = near_poles(z, f);
    const long prec = z.precision;
    BigFloat max_abs(64);
    for (size_t j = 0; j < z.size(); ++j) {
        if (std::find(rep.excluded.begin(), rep.excluded.end(), j) != rep.excluded.end())
            continue;
        const BigComplex& zj = z.points[j];
        BigComplex s(prec);
        for (size_t i = 0; i < z.size(); ++i)
            if (i != j)
                s += inv(zj - z.points[i]) * BigFloat(prec, static_cast<double>(z.multiplicity[i]));
        if (other) {
            BigComplex t(prec);
            for (size_t k = 0; k < other->size(); ++k)
                t += inv(zj - other->points[k]) * BigFloat(prec, static_cast<double>(other->multiplicity[k]));
            s += t * BigFloat(prec, a);
        }
        s -= f.dphi(zj);
        BigFloat m = abs(s);
        if (m > max_abs)
            max_abs = m.with_prec(64);
        rep.index.push_back(j);
        rep.residuals.push_back(std::move(s));
    }
    rep.max_abs = max_abs;
    return rep;
}

}  // namespace

EquilibriumReport scalar_residual(const ZeroSet& z, const ExternalField& field)
{
    return residuals(z, nullptr, 0, field, EquilibriumReport::Component::scalar);
}

std::pair<EquilibriumReport, EquilibriumReport> vector_residual(const ZeroSet& zP, const ZeroSet& zS, const Rat& a,
                                                                const ExternalField& f1, const ExternalField& f2)
{
    for (size_t i = 0; i < zP.size(); ++i)
        for (size_t k = 0; k < zS.size(); ++k)
            if (abs(zP.points[i] - zS.points[k]) <= zP.radius[i] + zS.radius[k])
                throw Error(ErrorKind::OverlapDetected, "point " + zP.points[i].str(20) + " belongs to both sets");
    return {residuals(zP, &zS, a, f1, EquilibriumReport::Component::vector_1),
            residuals(zS, &zP, a, f2, EquilibriumReport::Component::vector_2)};
}

std::vector<BigComplex> scalar_residual_points(const std::vector<BigComplex>& z, const ExternalField& field)
{
    return vector_residual_points(z, {}, 0, field, {}).first;
}

std::pair<std::vector<BigComplex>, std::vector<BigComplex>> vector_residual_points(
    const std::vector<BigComplex>& z1, const std::vector<BigComplex>& z2, const Rat& a, const ExternalField& f1,
    const ExternalField& f2)
{
    auto side = [&](const std::vector<BigComplex>& u, const std::vector<BigComplex>& v, const ExternalField& f) {
        std::vector<BigComplex> out;
        for (size_t j = 0; j < u.size(); ++j) {
            const long prec = u[j].prec();
            BigComplex s(prec), t(prec);
            for (size_t i = 0; i < u.size(); ++i)
                if (i != j)
                    s += inv(u[j] - u[i]);
            for (const auto& y : v)
                t += inv(u[j] - y);
            s += t * BigFloat(prec, a);
            s -= f.dphi(u[j]);
            out.push_back(std::move(s));
        }
        return out;
    };
    return {side(z1, z2, f1), side(z2, z1, f2)};
}

namespace {

// sum over ordered pairs of -log|u_i - v_j| (i != j when same), or nullopt on a coincidence
std::optional<BigFloat> log_sum(const std::vector<BigComplex>& u, const std::vector<BigComplex>& v, bool same, long prec)
{
    BigFloat acc(prec);
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) {
            if (same && i == j)
                continue;
            BigFloat d = abs(u[i] - v[j]);
            if (d.is_zero())
                return std::nullopt;
            acc -= log(d);
        }
    return acc;
}

long points_prec(const std::vector<BigComplex>& a, const std::vector<BigComplex>& b)
{
    long p = 64;
    for (const auto& z : a)
        p = std::max(p, z.prec());
    for (const auto& z : b)
        p = std::max(p, z.prec());
    return p;
}

std::vector<BigComplex> expand(const ZeroSet& z)
{
    std::vector<BigComplex> out;
    for (size_t i = 0; i < z.size(); ++i)
        for (int m = 0; m < z.multiplicity[i]; ++m)
            out.push_back(z.points[i]);
    return out;
}

}  // namespace

BigFloat energy_points(const std::vector<BigComplex>& z, const ExternalField& field)
{
    const long prec = points_prec(z, {});
    auto e = log_sum(z, z, true, prec);
    if (!e)
        return BigFloat::inf(prec);
    BigFloat acc = *e;
    for (const auto& p : z)
        acc += field.phi(p) * 2;
    return acc;
}

BigFloat energy_points(const std::vector<BigComplex>& z1, const std::vector<BigComplex>& z2, const Rat& a,
                       const ExternalField& f1, const ExternalField& f2)
{
    const long prec = points_prec(z1, z2);
    auto e1 = log_sum(z1, z1, true, prec);
    auto e2 = log_sum(z2, z2, true, prec);
    auto c = log_sum(z1, z2, false, prec);
    if (!e1 || !e2 || (!c && a != 0))
        return BigFloat::inf(prec);
    BigFloat acc = *e1 + *e2;
    if (a != 0)
        acc += *c * BigFloat(prec, a) * 2;
    for (const auto& p : z1)
        acc += f1.phi(p) * 2;
    for (const auto& p : z2)
        acc += f2.phi(p) * 2;
    return acc;
}

BigFloat energy(const ZeroSet& z, const ExternalField& field) { return energy_points(expand(z), field); }

BigFloat energy(const ZeroSet& z1, const ZeroSet& z2, const Rat& a, const ExternalField& f1, const ExternalField& f2)
{
    return energy_points(expand(z1), expand(z2), a, f1, f2);
}

std::string Histogram::csv() const
{
    std::ostringstream os;
    os.precision(17);
    os << "bin_left,bin_right,density\n";
    for (size_t i = 0; i < density.size(); ++i)
        os << left[i] << ',' << right[i] << ',' << density[i] << '\n';
    return os.str();
}

Histogram histogram_export(const ZeroSet& z, const Rat& scaling, int bins)
{
    if (bins < 1)
        throw Error(ErrorKind::InvalidInput, "need at least one bin");
    std::vector<double> x;
    for (size_t i = 0; i < z.size(); ++i)
        if (z.real[i]) {
            double v = (z.points[i].re * BigFloat(z.points[i].re.prec(), scaling)).to_double();
            for (int m = 0; m < z.multiplicity[i]; ++m)
                x.push_back(v);
        }
    Histogram h;
    h.count = static_cast<int>(x.size());
    if (x.empty())
        return h;
    std::sort(x.begin(), x.end());
    h.min = x.front();
    h.max = x.back();
    double lo = h.min, hi = h.max;
    if (hi == lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double w = (hi - lo) / bins;
    std::vector<int> cnt(static_cast<size_t>(bins), 0);
    for (double v : x) {
        int b = static_cast<int>((v - lo) / w);
        cnt[static_cast<size_t>(std::clamp(b, 0, bins - 1))]++;
    }
    for (int b = 0; b < bins; ++b) {
        h.left.push_back(lo + w * b);
        h.right.push_back(lo + w * (b + 1));
        h.density.push_back(cnt[static_cast<size_t>(b)] / (w * static_cast<double>(x.size())));
    }
    return h;
}

ExternalField scalar_field(const MopRecord& rec, const std::vector<SemiclassicalWeight>& ws, int i)
{
    if (i < 0 || static_cast<size_t>(i) >= ws.size() || static_cast<size_t>(i) >= rec.partners.size())
        throw Error(ErrorKind::InvalidInput, "no partner for weight " + std::to_string(i + 1));
    const auto& w = ws[static_cast<size_t>(i)];
    ExternalField f;
    f.add(FieldTerm::log_abs(Rat(1, 2), rec.partners[static_cast<size_t>(i)]));
    f.add(FieldTerm::log_abs(Rat(-1, 2), w.A));
    f.add(FieldTerm::weight(Rat(-1, 2), w));
    return f.simplified();
}

std::pair<ExternalField, ExternalField> vector_fields(const MopRecord& rec, const std::vector<SemiclassicalWeight>& ws,
                                                      int i)
{
    if (ws.size() != 2 || !rec.two_weight())
        throw Error(ErrorKind::NotApplicable, "the vector model needs two weights");
    if (i != 0 && i != 1)
        throw Error(ErrorKind::InvalidInput, "weight index must be 1 or 2");
    const auto& wi = ws[static_cast<size_t>(i)];
    const auto& wj = ws[static_cast<size_t>(1 - i)];
    ExternalField f1;
    f1.add(FieldTerm::log_abs(Rat(-1, 2), wi.A));
    f1.add(FieldTerm::weight(Rat(-1, 2), wi));
    ExternalField f2;
    if (equal_weights(ws[0], ws[1])) {
        if (!rec.r_star)
            throw Error(ErrorKind::NotApplicable, "R* is missing from the record");
        if (rec.r_star->is_zero())
            throw Error(ErrorKind::NonNormalIndex, "R* vanishes identically");
        f2.add(FieldTerm::log_abs(Rat(1, 2), *rec.r_star));
    } else {
        if (!rec.r_poly)
            throw Error(ErrorKind::NotApplicable, "R is missing from the record");
        if (rec.r_poly->is_zero())
            throw Error(ErrorKind::NonNormalIndex, "R vanishes identically");
        f2.add(FieldTerm::log_abs(Rat(1, 2), *rec.r_poly));
        f2.add(FieldTerm::log_abs(Rat(-1, 2), ws[0].A));
        f2.add(FieldTerm::log_abs(Rat(-1, 2), ws[1].A));
        f2.add(FieldTerm::log_abs(Rat(1, 2), wi.A));
        f2.add(FieldTerm::weight(Rat(1, 2), wi));
        f2.add(FieldTerm::log_abs(Rat(-1, 2), wj.A));
        f2.add(FieldTerm::weight(Rat(-1, 2), wj));
    }
    return {f1.simplified(), f2.simplified()};
}

}  // namespace hpe
