#include "hpe/weights.hpp"

#include "hpe/error.hpp"

#include <algorithm>

namespace hpe {

bool Endpoint::operator<(const Endpoint& o) const
{
    if (infinite != o.infinite)
        return infinite < o.infinite;
    return infinite == 0 && value < o.value;
}

SupportComponent SupportComponent::interval(const Rat& a, const Rat& b)
{
    SupportComponent c;
    c.kind = Kind::bounded_interval;
    c.left = Endpoint::finite(a);
    c.right = Endpoint::finite(b);
    return c;
}

SupportComponent SupportComponent::half_line(const Endpoint& a, const Endpoint& b)
{
    SupportComponent c;
    c.kind = Kind::ray;
    c.left = a;
    c.right = b;
    return c;
}

SupportComponent SupportComponent::contour(std::string id, std::vector<ContourRay> rays)
{
    SupportComponent c;
    c.kind = Kind::contour_tag;
    c.contour_id = std::move(id);
    c.rays = std::move(rays);
    return c;
}

std::pair<ExactPoly, ExactPoly> LogDensity::log_derivative() const
{
    std::vector<Rat> roots;
    for (const auto& f : factors)
        roots.push_back(f.first);
    ExactPoly den = ExactPoly::from_roots(roots);
    ExactPoly num = exp_poly.derivative() * den;
    for (size_t i = 0; i < factors.size(); ++i) {
        std::vector<Rat> others;
        for (size_t j = 0; j < factors.size(); ++j)
            if (j != i)
                others.push_back(factors[j].first);
        num += ExactPoly::from_roots(others) * factors[i].second;
    }
    return {num, den};
}

int weight_class(const ExactPoly& A, const ExactPoly& B)
{
    int s = std::max(A.degree() - 2, B.degree() - 1);
    return std::max(s, 0);
}

void validate(const SemiclassicalWeight& w)
{
    if (w.A.is_zero() || w.A.lc() != 1)
        throw Error(ErrorKind::InvalidParameters, "A must be monic");
    if (w.sigma != weight_class(w.A, w.B))
        throw Error(ErrorKind::InvalidParameters,
                    "declared class " + std::to_string(w.sigma) + " differs from max(deg A - 2, deg B - 1)");
    if (w.support.empty())
        throw Error(ErrorKind::InvalidParameters, "weight without support");
    for (const auto& c : w.support) {
        if (c.kind == SupportComponent::Kind::contour_tag)
            continue;
        if (!(c.left < c.right))
            throw Error(ErrorKind::InvalidParameters, "support interval must satisfy left < right");
        for (const Endpoint* e : {&c.left, &c.right})
            if (e->is_finite() && w.A.eval(e->value) != 0)
                throw Error(ErrorKind::InvalidParameters,
                            "finite endpoint " + format_rat(e->value) + " is not a zero of A");
    }
    if (w.density) {
        auto [num, den] = w.density->log_derivative();
        if (num * w.A != w.B * den)
            throw Error(ErrorKind::InvalidParameters, "density is inconsistent with w'/w = B/A");
    }
}

int pearson_seed_count(const ExactPoly& A, const ExactPoly& B)
{
    int d = std::max(A.degree(), B.degree() + 1);
    return std::max(d - 1, 0);
}

namespace {

// coefficient multiplying u_{k+d-1} in the k-th relation
Rat top_coefficient(const ExactPoly& A, const ExactPoly& B, int k)
{
    int d = std::max(A.degree(), B.degree() + 1);
    ExactPoly G = A.derivative() + B;
    Rat t = G[d - 1];
    if (A.degree() == d)
        t += Rat(k) * A.lc();
    return t;
}

// sum of every term of the k-th relation except the top one
Rat lower_terms(const ExactPoly& A, const ExactPoly& G, const std::vector<Rat>& u, int k, int d)
{
    Rat s = 0;
    for (int j = 0; j <= G.degree(); ++j)
        if (k + j < k + d - 1)
            s += G[j] * u[static_cast<size_t>(k + j)];
    if (k > 0)
        for (int j = 0; j <= A.degree(); ++j)
            if (k - 1 + j < k + d - 1)
                s += Rat(k) * A[j] * u[static_cast<size_t>(k - 1 + j)];
    return s;
}

std::vector<Rat> pochhammer_moments(const std::map<std::string, Rat>& p, int count)
{
    auto get = [&](const char* key, const Rat& dflt) {
        auto it = p.find(key);
        return it == p.end() ? dflt : it->second;
    };
    Rat a = get("a", Rat(1));
    bool has_b = p.count("b") != 0;
    Rat b = get("b", Rat(1));
    Rat s = get("s", Rat(1));
    std::vector<Rat> u(static_cast<size_t>(count));
    Rat v = 1;
    for (int k = 0; k < count; ++k) {
        u[static_cast<size_t>(k)] = v;
        v *= s * (a + k);
        if (has_b) {
            if (b + k == 0)
                throw Error(ErrorKind::InvalidParameters, "closed-form moment denominator vanishes");
            v /= (b + k);
        }
    }
    return u;
}

}  // namespace

Rat pearson_residual(const ExactPoly& A, const ExactPoly& B, const std::vector<Rat>& u, int k)
{
    int d = std::max(A.degree(), B.degree() + 1);
    ExactPoly G = A.derivative() + B;
    if (static_cast<int>(u.size()) < k + d)
        throw Error(ErrorKind::InsufficientMoments, "residual needs moments up to index " + std::to_string(k + d - 1));
    return lower_terms(A, G, u, k, d) + top_coefficient(A, B, k) * u[static_cast<size_t>(k + d - 1)];
}

MomentSequence pearson_moments(const SemiclassicalWeight& w, int count)
{
    if (!w.backend.exact())
        throw Error(ErrorKind::SeedMomentsMissing, "weight '" + w.name + "' has a numeric moment backend only");
    MomentSequence out;
    out.scale_tag = w.scale_tag;
    out.values.assign(static_cast<size_t>(std::max(count, 0)), Rat(0));
    if (w.backend.kind == MomentBackend::Kind::closed_form) {
        out.values = pochhammer_moments(w.backend.params, count);
        return out;
    }
    const int d = std::max(w.A.degree(), w.B.degree() + 1);
    if (d < 1)
        throw Error(ErrorKind::InvalidParameters, "weight has no finite moments (A constant, B = 0)");
    const int nseed = d - 1;
    ExactPoly G = w.A.derivative() + w.B;
    if (w.backend.seeds.size() != w.support.size())
        throw Error(ErrorKind::SeedMomentsMissing, "one seed list per support component is required");
    if (!w.backend.pinned.empty() && w.support.size() != 1)
        throw Error(ErrorKind::InvalidParameters, "pinned moments require a single support component");
    for (const auto& seeds : w.backend.seeds) {
        if (static_cast<int>(seeds.size()) < nseed)
            throw Error(ErrorKind::SeedMomentsMissing, "need " + std::to_string(nseed) + " seed moments, got " +
                                                           std::to_string(seeds.size()));
        std::vector<Rat> u(static_cast<size_t>(std::max(count, static_cast<int>(seeds.size()))));
        std::vector<bool> known(u.size(), false);
        for (size_t i = 0; i < seeds.size(); ++i) {
            u[i] = seeds[i];
            known[i] = true;
        }
        for (const auto& [idx, val] : w.backend.pinned)
            if (idx >= 0 && idx < static_cast<int>(u.size())) {
                u[static_cast<size_t>(idx)] = val;
                known[static_cast<size_t>(idx)] = true;
            }
        for (int k = 0; k + d - 1 < static_cast<int>(u.size()); ++k) {
            size_t t = static_cast<size_t>(k + d - 1);
            Rat T = top_coefficient(w.A, w.B, k);
            Rat rest = lower_terms(w.A, G, u, k, d);
            if (T == 0) {
                if (rest != 0)
                    throw Error(ErrorKind::RecurrenceSingular,
                                "relation " + std::to_string(k) + " is singular and violated by the seed moments");
                if (!known[t])
                    throw Error(ErrorKind::RecurrenceSingular,
                                "leading coefficient vanishes at k=" + std::to_string(k) + "; supply moment " +
                                    std::to_string(t));
                continue;
            }
            Rat val = -rest / T;
            if (known[t]) {
                if (u[t] != val)
                    throw Error(ErrorKind::InvalidParameters,
                                "supplied moment " + std::to_string(t) + " contradicts the Pearson recurrence");
                continue;
            }
            u[t] = val;
            known[t] = true;
        }
        for (int k = 0; k < count; ++k)
            out.values[static_cast<size_t>(k)] += u[static_cast<size_t>(k)];
    }
    return out;
}

MomentSequence numeric_moments(const SemiclassicalWeight& w, int count, long precision)
{
    if (!w.density)
        throw Error(ErrorKind::QuadratureNotConverged, "weight '" + w.name + "' has no density for quadrature");
    MomentSequence out;
    out.scale_tag = "1";
    long wp = precision + 40;
    out.numeric.assign(static_cast<size_t>(count), BigComplex(precision));
    out.error.assign(static_cast<size_t>(count), BigFloat(precision));
    const LogDensity& dens = *w.density;
    for (const auto& comp : w.support) {
        VectorIntegrand f = [&](const QuadNode& node, std::vector<BigComplex>& vals) {
            BigComplex wz = eval_density(dens, node);
            BigComplex zk = wz;
            for (int k = 0; k < count; ++k) {
                vals[static_cast<size_t>(k)] = zk;
                zk = zk * node.z;
            }
        };
        QuadResult r = integrate(comp, f, static_cast<size_t>(count), precision);
        for (int k = 0; k < count; ++k) {
            out.numeric[static_cast<size_t>(k)] += r.values[static_cast<size_t>(k)];
            out.error[static_cast<size_t>(k)] += r.error[static_cast<size_t>(k)];
        }
    }
    (void)wp;
    return out;
}

BigComplex cauchy_numeric(const SemiclassicalWeight& w, const ExactPoly& P, const BigComplex& z, long precision)
{
    if (!w.density)
        throw Error(ErrorKind::QuadratureNotConverged, "weight '" + w.name + "' has no density for quadrature");
    BigComplex total(precision);
    for (const auto& comp : w.support) {
        VectorIntegrand f = [&](const QuadNode& node, std::vector<BigComplex>& vals) {
            BigComplex zz = z.with_prec(node.z.prec());
            vals[0] = eval_density(*w.density, node) * P.eval(node.z) / (node.z - zz);
        };
        total += integrate(comp, f, 1, precision).values[0];
    }
    return total;
}

namespace {

using Params = std::map<std::string, Rat>;

Rat need(const Params& p, const std::string& key)
{
    auto it = p.find(key);
    if (it == p.end())
        throw Error(ErrorKind::InvalidParameters, "missing parameter '" + key + "'");
    return it->second;
}

Rat opt(const Params& p, const std::string& key, const Rat& dflt)
{
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
}

void require(bool ok, const std::string& constraint)
{
    if (!ok)
        throw Error(ErrorKind::InvalidParameters, "violated constraint: " + constraint);
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

// floor of a rational
mpz_class floor_rat(const Rat& q)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

SemiclassicalWeight make(std::string name, ExactPoly A, ExactPoly B, std::vector<SupportComponent> support)
{
    SemiclassicalWeight w;
    w.name = std::move(name);
    w.A = std::move(A);
    w.B = std::move(B);
    w.support = std::move(support);
    w.sigma = weight_class(w.A, w.B);
    return w;
}

void exact_seeds(SemiclassicalWeight& w, const std::string& fam, const Params& p)
{
    w.backend.kind = MomentBackend::Kind::exact_recurrence;
    w.backend.family = fam;
    w.backend.params = p;
    w.backend.seeds.assign(w.support.size(), {Rat(1)});
}

void closed_form(SemiclassicalWeight& w, const std::string& fam, const Params& gen)
{
    w.backend.kind = MomentBackend::Kind::closed_form;
    w.backend.family = fam;
    w.backend.params = gen;
    // the leading seeds are kept so the recurrence can regenerate the sequence
    int ns = pearson_seed_count(w.A, w.B);
    auto u = pochhammer_moments(gen, std::max(ns, 1));
    u.resize(static_cast<size_t>(ns));
    w.backend.seeds = {u};
}

void numeric_backend(SemiclassicalWeight& w, const std::string& fam, const Params& p)
{
    w.backend.kind = MomentBackend::Kind::numeric_quadrature;
    w.backend.family = fam;
    w.backend.params = p;
    w.backend.seeds.clear();
    w.scale_tag = "1";
}

ExactPoly lin(const Rat& c0, const Rat& c1) { return ExactPoly({c0, c1}); }

SemiclassicalWeight hermite_weight(const Rat& c, const std::string& name)
{
    auto w = make(name, ExactPoly::constant(1), lin(c, -2),
                  {SupportComponent::half_line(Endpoint::neg_inf(), Endpoint::pos_inf())});
    exact_seeds(w, "hermite", {{"c", c}});
    w.scale_tag = "sqrt(pi)*exp((" + format_rat(c) + ")^2/4)";
    w.density = LogDensity{ExactPoly({Rat(0), c, Rat(-1)}), {}};
    return w;
}

SemiclassicalWeight laguerre_weight(const Rat& alpha, const Rat& c, const std::string& name)
{
    auto w = make(name, ExactPoly::x(), lin(alpha, -c),
                  {SupportComponent::half_line(Endpoint::finite(0), Endpoint::pos_inf())});
    closed_form(w, "laguerre", {{"a", alpha + 1}, {"s", 1 / c}});
    w.scale_tag = "Gamma(" + format_rat(alpha + 1) + ")/(" + format_rat(c) + ")^(" + format_rat(alpha + 1) + ")";
    w.density = LogDensity{ExactPoly({Rat(0), -c}), {{Rat(0), alpha}}};
    return w;
}

SemiclassicalWeight jacobi01_weight(const Rat& alpha, const Rat& beta, const std::string& name)
{
    // x^beta (1-x)^alpha on [0,1]
    auto w = make(name, ExactPoly({Rat(0), Rat(-1), Rat(1)}), lin(-beta, alpha + beta),
                  {SupportComponent::interval(0, 1)});
    closed_form(w, "jacobi01", {{"a", beta + 1}, {"b", alpha + beta + 2}, {"s", Rat(1)}});
    w.scale_tag = "Beta(" + format_rat(beta + 1) + "," + format_rat(alpha + 1) + ")";
    w.density = LogDensity{ExactPoly(), {{Rat(0), beta}, {Rat(1), alpha}}};
    return w;
}

std::vector<SemiclassicalWeight> angelesco(const Rat& a, const Rat& alpha, const Rat& beta, const Rat& gamma,
                                           const std::string& fam)
{
    require(a < 0, "a < 0");
    require(alpha > -1 && beta > -1 && gamma > -1, "alpha, beta, gamma > -1");
    ExactPoly A = ExactPoly::from_roots({Rat(0), a, Rat(1)});
    ExactPoly B = ExactPoly::from_roots({Rat(0), Rat(1)}) * alpha + ExactPoly::from_roots({a, Rat(1)}) * beta +
                  ExactPoly::from_roots({Rat(0), a}) * gamma;
    LogDensity dens{ExactPoly(), {{a, alpha}, {Rat(0), beta}, {Rat(1), gamma}}};
    Params p{{"a", a}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
    auto w1 = make(fam + "_1", A, B, {SupportComponent::interval(a, 0)});
    auto w2 = make(fam + "_2", A, B, {SupportComponent::interval(0, 1)});
    w1.density = dens;
    w2.density = dens;
    if (gamma == 0) {
        // (x-a)^alpha |x|^beta on [a,0]; x = a t maps it to a Beta integral
        closed_form(w1, fam, {{"a", beta + 1}, {"b", alpha + beta + 2}, {"s", a}});
        w1.scale_tag = "|a|^(" + format_rat(alpha + beta + 1) + ")*Beta(" + format_rat(beta + 1) + "," +
                       format_rat(alpha + 1) + ")";
    } else {
        numeric_backend(w1, fam, p);
    }
    if (alpha == 0) {
        closed_form(w2, fam, {{"a", beta + 1}, {"b", beta + gamma + 2}, {"s", Rat(1)}});
        w2.scale_tag = "Beta(" + format_rat(beta + 1) + "," + format_rat(gamma + 1) + ")";
    } else {
        numeric_backend(w2, fam, p);
    }
    return {w1, w2};
}

SemiclassicalWeight jacobi_weight(const Rat& alpha, const Rat& beta, const std::string& name)
{
    // (x-1)^alpha (x+1)^beta, i.e. |1-x|^alpha |1+x|^beta on [-1,1]
    auto w = make(name, ExactPoly({Rat(-1), Rat(0), Rat(1)}), lin(alpha - beta, alpha + beta),
                  {SupportComponent::interval(-1, 1)});
    exact_seeds(w, "jacobi", {{"alpha", alpha}, {"beta", beta}});
    w.scale_tag = "2^(" + format_rat(alpha + beta + 1) + ")*Beta(" + format_rat(alpha + 1) + "," +
                  format_rat(beta + 1) + ")";
    w.density = LogDensity{ExactPoly(), {{Rat(1), alpha}, {Rat(-1), beta}}};
    return w;
}

}  // namespace

const std::vector<FamilyInfo>& family_catalog()
{
    static const std::vector<FamilyInfo> cat = {
        {"multiple_hermite", "c1, c2", "exp(-x^2 + c_i x) on the real line"},
        {"mlaguerre1", "alpha1, alpha2", "x^alpha_i exp(-x) on [0, inf)"},
        {"mlaguerre2", "alpha, c1, c2", "x^alpha exp(-c_i x) on [0, inf)"},
        {"jacobi_pineiro", "alpha, beta1, beta2", "x^beta_i (1-x)^alpha on [0, 1]"},
        {"angelesco_jacobi", "a, alpha, beta, gamma", "(x-a)^alpha |x|^beta (1-x)^gamma on [a,0] and [0,1]"},
        {"appell", "", "angelesco_jacobi with a = -1 and all exponents 0"},
        {"nonstandard_jacobi", "alpha, beta, N, shift", "Jacobi with -N < alpha < -1 split into two quasi-systems; n = (N - shift, shift)"},
        {"cubic", "", "exp(-z^3) on two complex contours (numeric moments only)"},
        {"hermite", "c", "single weight exp(-x^2 + c x)"},
        {"laguerre", "alpha, c", "single weight x^alpha exp(-c x)"},
        {"jacobi", "alpha, beta", "single weight (1-x)^alpha (1+x)^beta on [-1, 1]"},
    };
    return cat;
}

std::vector<SemiclassicalWeight> family(const std::string& name, const std::map<std::string, Rat>& p)
{
    std::vector<SemiclassicalWeight> out;
    if (name == "multiple_hermite") {
        Rat c1 = need(p, "c1"), c2 = need(p, "c2");
        require(c1 != c2, "c1 != c2");
        out = {hermite_weight(c1, "multiple_hermite_1"), hermite_weight(c2, "multiple_hermite_2")};
    } else if (name == "hermite") {
        out = {hermite_weight(opt(p, "c", 0), "hermite")};
    } else if (name == "mlaguerre1") {
        Rat a1 = need(p, "alpha1"), a2 = need(p, "alpha2");
        require(a1 > -1 && a2 > -1, "alpha1, alpha2 > -1");
        require(!is_integer(a1 - a2), "alpha1 - alpha2 not an integer");
        out = {laguerre_weight(a1, 1, "mlaguerre1_1"), laguerre_weight(a2, 1, "mlaguerre1_2")};
    } else if (name == "mlaguerre2") {
        Rat a = need(p, "alpha"), c1 = need(p, "c1"), c2 = need(p, "c2");
        require(a > -1, "alpha > -1");
        require(c1 > 0 && c2 > 0, "c1, c2 > 0");
        require(c1 != c2, "c1 != c2");
        out = {laguerre_weight(a, c1, "mlaguerre2_1"), laguerre_weight(a, c2, "mlaguerre2_2")};
    } else if (name == "laguerre") {
        Rat a = need(p, "alpha"), c = opt(p, "c", 1);
        require(a > -1, "alpha > -1");
        require(c > 0, "c > 0");
        out = {laguerre_weight(a, c, "laguerre")};
    } else if (name == "jacobi_pineiro") {
        Rat a = need(p, "alpha"), b1 = need(p, "beta1"), b2 = need(p, "beta2");
        require(a > -1 && b1 > -1 && b2 > -1, "alpha, beta1, beta2 > -1");
        require(!is_integer(b1 - b2), "beta1 - beta2 not an integer");
        out = {jacobi01_weight(a, b1, "jacobi_pineiro_1"), jacobi01_weight(a, b2, "jacobi_pineiro_2")};
    } else if (name == "angelesco_jacobi") {
        out = angelesco(need(p, "a"), opt(p, "alpha", 0), opt(p, "beta", 0), opt(p, "gamma", 0), name);
    } else if (name == "appell") {
        out = angelesco(-1, 0, 0, 0, name);
    } else if (name == "jacobi") {
        Rat a = need(p, "alpha"), b = need(p, "beta");
        require(a > -1 && b > -1, "alpha, beta > -1");
        out = {jacobi_weight(a, b, "jacobi")};
    } else if (name == "nonstandard_jacobi") {
        Rat a = need(p, "alpha"), b = need(p, "beta"), N = need(p, "N");
        require(is_integer(N) && N >= 1, "N a positive integer");
        require(-N < a && a < -1, "-N < alpha < -1");
        require(b > -1, "beta > -1");
        require(!is_integer(a) && !is_integer(b) && !is_integer(a + b), "alpha, beta, alpha+beta not integers");
        Rat shift = opt(p, "shift", Rat(floor_rat(-a)));
        require(is_integer(shift) && shift >= 1 && shift < N, "shift an integer in [1, N)");
        require(a + shift > -1, "alpha + shift > -1");
        auto w1 = jacobi_weight(a + shift, b, "nonstandard_jacobi_1");
        auto w2 = make("nonstandard_jacobi_2", w1.A, lin(a - b, a + b),
                       {SupportComponent::contour("loop_around_1_from_-1", {})});
        exact_seeds(w2, "jacobi", {{"alpha", a}, {"beta", b}});
        w2.scale_tag = "contour";
        w2.density = LogDensity{ExactPoly(), {{Rat(1), a}, {Rat(-1), b}}};
        out = {w1, w2};
    } else if (name == "cubic") {
        auto base = [&](const std::string& nm, std::vector<ContourRay> rays) {
            auto w = make(nm, ExactPoly::constant(1), ExactPoly({Rat(0), Rat(0), Rat(-3)}),
                          {SupportComponent::contour(nm, std::move(rays))});
            numeric_backend(w, "cubic", {});
            w.density = LogDensity{ExactPoly({Rat(0), Rat(0), Rat(0), Rat(-1)}), {}};
            return w;
        };
        out = {base("cubic_1", {{Rat(0), Rat(-2, 3), -1}, {Rat(0), Rat(0), 1}}),
               base("cubic_2", {{Rat(0), Rat(-2, 3), -1}, {Rat(0), Rat(2, 3), 1}})};
    } else {
        throw Error(ErrorKind::InvalidParameters, "unknown family '" + name + "'");
    }
    for (auto& w : out)
        validate(w);
    return out;
}

}  // namespace hpe
