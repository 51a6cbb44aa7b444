#include "hpe/io.hpp"

#include "hpe/error.hpp"

#include <fstream>
#include <sstream>

namespace hpe {

namespace {

std::string endpoint_str(const Endpoint& e)
{
    if (e.infinite < 0)
        return "-inf";
    if (e.infinite > 0)
        return "inf";
    return format_rat(e.value);
}

Endpoint endpoint_from(const std::string& s)
{
    if (s == "-inf")
        return Endpoint::neg_inf();
    if (s == "inf" || s == "+inf")
        return Endpoint::pos_inf();
    return Endpoint::finite(parse_rat(s));
}

const char* kind_str(SupportComponent::Kind k)
{
    switch (k) {
    case SupportComponent::Kind::bounded_interval:
        return "interval";
    case SupportComponent::Kind::ray:
        return "ray";
    case SupportComponent::Kind::contour_tag:
        return "contour";
    }
    return "?";
}

const char* backend_str(MomentBackend::Kind k)
{
    switch (k) {
    case MomentBackend::Kind::exact_recurrence:
        return "exact_recurrence";
    case MomentBackend::Kind::closed_form:
        return "closed_form";
    case MomentBackend::Kind::numeric_quadrature:
        return "numeric_quadrature";
    }
    return "?";
}

std::vector<Rat> rats_from(const Json& j)
{
    std::vector<Rat> v;
    for (const auto& x : j)
        v.push_back(parse_rat(x.get<std::string>()));
    return v;
}

Json rats_to(const std::vector<Rat>& v)
{
    Json a = Json::array();
    for (const auto& q : v)
        a.push_back(format_rat(q));
    return a;
}

Json require(const Json& j, const char* key)
{
    if (!j.contains(key))
        throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json to_json(const ExactPoly& p) { return rats_to(p.coeffs()); }

ExactPoly poly_from_json(const Json& j)
{
    if (!j.is_array())
        throw Error(ErrorKind::InvalidInput, "a polynomial is a list of coefficient strings, lowest degree first");
    return ExactPoly(rats_from(j));
}

Json to_json(const LaurentTail& t)
{
    return Json{{"order", t.order()}, {"coeffs", rats_to(t.coeffs())}, {"poly_part", to_json(t.poly_part())}};
}

LaurentTail tail_from_json(const Json& j)
{
    return LaurentTail(rats_from(require(j, "coeffs")), j.contains("poly_part") ? poly_from_json(j["poly_part"]) : ExactPoly());
}

Json params_to_json(const std::map<std::string, Rat>& p)
{
    Json o = Json::object();
    for (const auto& [k, v] : p)
        o[k] = format_rat(v);
    return o;
}

std::map<std::string, Rat> params_from_json(const Json& j)
{
    std::map<std::string, Rat> p;
    for (const auto& [k, v] : j.items())
        p[k] = v.is_string() ? parse_rat(v.get<std::string>()) : parse_rat(v.dump());
    return p;
}

Json to_json(const SemiclassicalWeight& w)
{
    Json sup = Json::array();
    for (const auto& c : w.support) {
        Json s{{"kind", kind_str(c.kind)}};
        if (c.kind == SupportComponent::Kind::contour_tag) {
            s["id"] = c.contour_id;
            Json rays = Json::array();
            for (const auto& r : c.rays)
                rays.push_back({{"origin", format_rat(r.origin)}, {"angle", format_rat(r.angle)}, {"orientation", r.orientation}});
            s["rays"] = rays;
        } else {
            s["left"] = endpoint_str(c.left);
            s["right"] = endpoint_str(c.right);
        }
        s["orientation"] = c.orientation;
        sup.push_back(s);
    }
    Json seeds = Json::array();
    for (const auto& s : w.backend.seeds)
        seeds.push_back(rats_to(s));
    Json pinned = Json::object();
    for (const auto& [k, v] : w.backend.pinned)
        pinned[std::to_string(k)] = format_rat(v);
    Json j{{"name", w.name},
           {"A", to_json(w.A)},
           {"B", to_json(w.B)},
           {"sigma", w.sigma},
           {"support", sup},
           {"backend",
            {{"kind", backend_str(w.backend.kind)},
             {"family", w.backend.family},
             {"params", params_to_json(w.backend.params)},
             {"seeds", seeds},
             {"pinned", pinned},
             {"precision", w.backend.precision},
             {"scheme", w.backend.scheme}}},
           {"scale_tag", w.scale_tag}};
    if (w.density) {
        Json f = Json::array();
        for (const auto& [r, e] : w.density->factors)
            f.push_back({format_rat(r), format_rat(e)});
        j["density"] = {{"exp_poly", to_json(w.density->exp_poly)}, {"factors", f}};
    }
    return j;
}

SemiclassicalWeight weight_from_json(const Json& j)
{
    SemiclassicalWeight w;
    w.name = j.value("name", "");
    w.A = poly_from_json(require(j, "A"));
    w.B = poly_from_json(require(j, "B"));
    w.sigma = weight_class(w.A, w.B);
    for (const auto& s : require(j, "support")) {
        std::string kind = require(s, "kind").get<std::string>();
        SupportComponent c;
        if (kind == "contour") {
            std::vector<ContourRay> rays;
            for (const auto& r : s.value("rays", Json::array()))
                rays.push_back({parse_rat(r.at("origin").get<std::string>()), parse_rat(r.at("angle").get<std::string>()),
                                r.value("orientation", 1)});
            c = SupportComponent::contour(s.value("id", ""), rays);
        } else if (kind == "interval") {
            c = SupportComponent::interval(parse_rat(require(s, "left").get<std::string>()),
                                           parse_rat(require(s, "right").get<std::string>()));
        } else if (kind == "ray") {
            c = SupportComponent::half_line(endpoint_from(require(s, "left").get<std::string>()),
                                            endpoint_from(require(s, "right").get<std::string>()));
        } else {
            throw Error(ErrorKind::InvalidInput, "unknown support kind '" + kind + "'");
        }
        c.orientation = s.value("orientation", 1);
        w.support.push_back(c);
    }
    const Json b = j.value("backend", Json::object());
    std::string kind = b.value("kind", "exact_recurrence");
    if (kind == "exact_recurrence")
        w.backend.kind = MomentBackend::Kind::exact_recurrence;
    else if (kind == "closed_form")
        w.backend.kind = MomentBackend::Kind::closed_form;
    else if (kind == "numeric_quadrature")
        w.backend.kind = MomentBackend::Kind::numeric_quadrature;
    else
        throw Error(ErrorKind::InvalidInput, "unknown moment backend '" + kind + "'");
    w.backend.family = b.value("family", "");
    w.backend.params = params_from_json(b.value("params", Json::object()));
    for (const auto& s : b.value("seeds", Json::array()))
        w.backend.seeds.push_back(rats_from(s));
    const Json pinned = b.value("pinned", Json::object());
    for (const auto& [k, v] : pinned.items())
        w.backend.pinned[std::stoi(k)] = parse_rat(v.get<std::string>());
    w.backend.precision = b.value("precision", 128L);
    w.backend.scheme = b.value("scheme", "tanh-sinh");
    w.scale_tag = j.value("scale_tag", "");
    if (j.contains("density")) {
        LogDensity d;
        d.exp_poly = poly_from_json(j["density"].at("exp_poly"));
        for (const auto& f : j["density"].at("factors"))
            d.factors.emplace_back(parse_rat(f.at(0).get<std::string>()), parse_rat(f.at(1).get<std::string>()));
        w.density = d;
    }
    validate(w);
    return w;
}

Json record_to_json(const MopRecord& rec, const std::vector<SemiclassicalWeight>& ws)
{
    Json weights = Json::array();
    for (const auto& w : ws)
        weights.push_back(to_json(w));
    Json cauchy = Json::array();
    for (const auto& t : rec.cauchy)
        cauchy.push_back(to_json(t));
    Json partners = Json::array(), monic = Json::array(), vv = Json::array();
    for (const auto& s : rec.partners) {
        partners.push_back(to_json(s));
        monic.push_back(to_json(s.is_zero() ? s : s.monic()));
    }
    for (const auto& c : rec.vanvleck)
        vv.push_back(to_json(c));
    auto opt = [](const std::optional<ExactPoly>& p) { return p ? to_json(*p) : Json(nullptr); };
    return Json{{"version", kVersion},
                {"family", rec.family},
                {"params", params_to_json(rec.params)},
                {"index", rec.n},
                {"N", rec.N},
                {"normal", rec.normal},
                {"non_normal_reason", rec.non_normal_reason},
                {"weights", weights},
                {"P", to_json(rec.P)},
                {"cauchy", cauchy},
                {"m", rats_to(rec.m)},
                {"partners", partners},
                {"partners_monic", monic},
                {"vanvleck", vv},
                {"R", opt(rec.r_poly)},
                {"R_star", opt(rec.r_star)},
                {"E", opt(rec.e_poly)},
                {"F", opt(rec.f_poly)},
                {"warnings", rec.warnings}};
}

std::pair<MopRecord, std::vector<SemiclassicalWeight>> record_from_json(const Json& j)
{
    try {
        MopRecord rec;
        rec.family = j.value("family", "");
        rec.params = params_from_json(j.value("params", Json::object()));
        rec.n = require(j, "index").get<std::vector<int>>();
        rec.N = require(j, "N").get<int>();
        rec.normal = j.value("normal", true);
        rec.non_normal_reason = j.value("non_normal_reason", "");
        rec.P = poly_from_json(require(j, "P"));
        for (const auto& t : require(j, "cauchy"))
            rec.cauchy.push_back(tail_from_json(t));
        rec.m = rats_from(require(j, "m"));
        for (const auto& s : j.value("partners", Json::array()))
            rec.partners.push_back(poly_from_json(s));
        for (const auto& c : j.value("vanvleck", Json::array()))
            rec.vanvleck.push_back(poly_from_json(c));
        auto opt = [&](const char* key) -> std::optional<ExactPoly> {
            if (!j.contains(key) || j[key].is_null())
                return std::nullopt;
            return poly_from_json(j[key]);
        };
        rec.r_poly = opt("R");
        rec.r_star = opt("R_star");
        rec.e_poly = opt("E");
        rec.f_poly = opt("F");
        rec.warnings = j.value("warnings", std::vector<std::string>{});
        std::vector<SemiclassicalWeight> ws;
        for (const auto& w : require(j, "weights"))
            ws.push_back(weight_from_json(w));
        if (ws.size() != rec.n.size() || rec.cauchy.size() != rec.n.size() || rec.m.size() != rec.n.size())
            throw Error(ErrorKind::InvalidInput, "record lists disagree in length");
        return {rec, ws};
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed record: ") + e.what());
    }
}

Json to_json(const ZeroSet& z, int digits)
{
    Json pts = Json::array();
    for (size_t i = 0; i < z.size(); ++i)
        pts.push_back({{"re", z.points[i].re.str(digits)},
                       {"im", z.points[i].im.str(digits)},
                       {"radius", z.radius[i].str(6)},
                       {"multiplicity", z.multiplicity[i]},
                       {"real", static_cast<bool>(z.real[i])},
                       {"exact", static_cast<bool>(z.exact[i])}});
    return Json{{"source", z.source}, {"precision", z.precision}, {"certified", z.certified}, {"count", z.count()},
                {"points", pts}};
}

Json to_json(const InterlaceReport& r)
{
    return Json{{"interval",
                 {{"lo", format_rat(r.interval.lo)},
                  {"hi", format_rat(r.interval.hi)},
                  {"lo_closed", r.interval.lo_closed},
                  {"hi_closed", r.interval.hi_closed}}},
                {"count_inside_a", r.count_inside_a},
                {"count_inside_b", r.count_inside_b},
                {"interlaced_pairs", r.interlaced_pairs},
                {"violations", r.violations},
                {"outside_hull_b", r.outside_hull_b}};
}

Json to_json(const EquilibriumReport& r, const ZeroSet& z, int digits)
{
    Json res = Json::array();
    for (size_t k = 0; k < r.residuals.size(); ++k)
        res.push_back({{"point", z.points[r.index[k]].str(digits)},
                       {"re", r.residuals[k].re.str(8)},
                       {"im", r.residuals[k].im.str(8)},
                       {"abs", abs(r.residuals[k]).str(8)}});
    Json ex = Json::array();
    for (size_t i : r.excluded)
        ex.push_back(z.points[i].str(digits));
    return Json{{"component", to_string(r.component)},
                {"precision", r.precision},
                {"max_abs", r.max_abs.str(8)},
                {"log2_max_abs", r.max_abs.is_zero() ? Json(nullptr) : Json(r.max_abs.exponent())},
                {"residuals", res},
                {"excluded", ex}};
}

Json to_json(const std::vector<IdentityCheck>& checks)
{
    Json a = Json::array();
    for (const auto& c : checks)
        a.push_back({{"identity", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return a;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::InvalidInput, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    out << text;
}

}  // namespace hpe
