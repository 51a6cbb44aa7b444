#include "hpe/electro.hpp"
#include "hpe/error.hpp"
#include "hpe/io.hpp"
#include "hpe/partner.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

using namespace hpe;
namespace fs = std::filesystem;

namespace {

const char* kParamNames[] = {"c",     "c1",     "c2",    "alpha", "alpha1", "alpha2", "beta",
                             "beta1", "beta2",  "gamma", "a",     "N",      "shift"};

struct RunConfig {
    std::string family;
    std::map<std::string, Rat> params;
    std::vector<int> n;
    long precision = 256;
    int guard = 8;
    std::string out;
    bool lenient = false;
    std::string record;
    Json extra = Json::object();  // command specific settings, echoed into run_config.json
};

Json config_to_json(const RunConfig& c, const std::string& command)
{
    Json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["family"] = c.family;
    j["params"] = params_to_json(c.params);
    j["n"] = c.n;
    j["precision"] = c.precision;
    j["guard"] = c.guard;
    j["lenient"] = c.lenient;
    if (!c.record.empty())
        j["record"] = c.record;
    j["out"] = c.out;
    for (auto& [k, v] : c.extra.items())
        j[k] = v;
    return j;
}

std::vector<int> parse_index(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 0)
                throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidInput, "bad multi-index '" + s + "'");
        }
    }
    if (out.empty() || out.size() > 2)
        throw Error(ErrorKind::InvalidInput, "multi-index needs one or two entries: '" + s + "'");
    return out;
}

std::vector<Rat> parse_rat_list(const std::string& s)
{
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(parse_rat(tok));
    return out;
}

// "[0,1)" style intervals; bare "0,1" is closed
RealInterval parse_interval(std::string s)
{
    RealInterval r;
    if (!s.empty() && (s.front() == '[' || s.front() == '(')) {
        r.lo_closed = s.front() == '[';
        s.erase(0, 1);
    }
    if (!s.empty() && (s.back() == ']' || s.back() == ')')) {
        r.hi_closed = s.back() == ']';
        s.pop_back();
    }
    auto v = parse_rat_list(s);
    if (v.size() != 2 || !(v[0] < v[1]))
        throw Error(ErrorKind::InvalidInput, "bad interval '" + s + "'");
    r.lo = v[0];
    r.hi = v[1];
    return r;
}

struct Built {
    MopRecord rec;
    std::vector<SemiclassicalWeight> ws;
};

Built build(const RunConfig& c)
{
    if (!c.record.empty()) {
        auto [rec, ws] = record_from_json(read_json_file(c.record));
        return {std::move(rec), std::move(ws)};
    }
    if (c.family.empty())
        throw Error(ErrorKind::InvalidInput, "either --family or --record is required");
    auto ws = family(c.family, c.params);
    std::vector<int> n = c.n;
    if (n.empty() && c.family == "nonstandard_jacobi") {
        auto N = c.params.at("N");
        auto it = c.params.find("shift");
        Rat shift;
        if (it != c.params.end()) {
            shift = it->second;
        } else {
            Rat na = -c.params.at("alpha");
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), na.get_num_mpz_t(), na.get_den_mpz_t());
            shift = fl;
        }
        Rat rest = N - shift;
        n = {static_cast<int>(rest.get_d()), static_cast<int>(shift.get_d())};
    }
    if (n.empty())
        throw Error(ErrorKind::InvalidInput, "--n is required");
    if (n.size() != ws.size())
        throw Error(ErrorKind::InvalidInput, "family '" + c.family + "' needs a multi-index with " +
                                                 std::to_string(ws.size()) + " entries");
    SolveOptions o;
    o.guard = c.guard;
    o.lenient = c.lenient;
    MopRecord rec = ws.size() == 2 ? solve_mop(ws[0], ws[1], {n[0], n[1]}, o) : solve_quasi(ws[0], n[0], n[0], {}, o);
    rec.family = c.family;
    rec.params = c.params;
    complete_record(rec, ws);
    return {std::move(rec), std::move(ws)};
}

std::vector<Rat> support_hints(const std::vector<SemiclassicalWeight>& ws)
{
    std::vector<Rat> h;
    for (const auto& w : ws)
        for (const auto& s : w.support)
            for (const auto* e : {&s.left, &s.right})
                if (s.kind != SupportComponent::Kind::contour_tag && e->is_finite())
                    h.push_back(e->value);
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    return h;
}

ZeroSet zeros_of(const ExactPoly& p, const std::string& name, const Built& b, long precision)
{
    ZeroOptions o;
    o.precision = precision;
    o.hints = support_hints(b.ws);
    o.source = name;
    return find_zeros(p, o);
}

const ExactPoly& pick(const Built& b, const std::string& name)
{
    if (name == "P")
        return b.rec.P;
    if (name == "S1" || name == "S2") {
        size_t i = name == "S1" ? 0 : 1;
        if (i < b.rec.partners.size())
            return b.rec.partners[i];
    }
    if ((name == "R" && b.rec.r_poly) || (name == "Rstar" && b.rec.r_star))
        return name == "R" ? *b.rec.r_poly : *b.rec.r_star;
    throw Error(ErrorKind::InvalidInput, "no polynomial '" + name + "' in this record");
}

fs::path prepare_out(const RunConfig& c)
{
    fs::path p(c.out);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec)
        throw Error(ErrorKind::InvalidInput, "cannot create output directory " + c.out);
    return p;
}

void emit(const fs::path& dir, const std::string& file, const Json& j) { write_text_file((dir / file).string(), j.dump(2) + "\n"); }

std::string log2_str(const BigFloat& x) { return x.is_zero() ? "-inf" : std::to_string(x.exponent()); }

int cmd_solve(const RunConfig& c)
{
    auto b = build(c);
    auto dir = prepare_out(c);
    emit(dir, "mop_record.json", record_to_json(b.rec, b.ws));
    emit(dir, "run_config.json", config_to_json(c, "solve"));
    std::cout << "P = " << b.rec.P.str() << "\n";
    for (size_t i = 0; i < b.rec.partners.size(); ++i)
        std::cout << "S" << i + 1 << " = " << b.rec.partners[i].str() << "\n";
    if (b.rec.r_poly)
        std::cout << "R = " << b.rec.r_poly->str() << "\n";
    for (const auto& w : b.rec.warnings)
        std::cerr << "warning: " << w << "\n";
    return 0;
}

int cmd_verify(const RunConfig& c)
{
    auto b = build(c);
    auto checks = verify_record(b.rec, b.ws);
    auto dir = prepare_out(c);
    Json j;
    j["config"] = config_to_json(c, "verify");
    j["checks"] = to_json(checks);
    const IdentityCheck* first = nullptr;
    for (const auto& k : checks) {
        std::cout << (k.ok ? "pass " : "FAIL ") << k.name << (k.detail.empty() ? "" : "  (" + k.detail + ")") << "\n";
        if (!k.ok && !first)
            first = &k;
    }
    j["ok"] = first == nullptr;
    emit(dir, "verification.json", j);
    emit(dir, "run_config.json", j["config"]);
    if (first) {
        std::cerr << "identity violated: " << first->name << ": " << first->detail << "\n";
        return exit_code(ErrorKind::IdentityViolation);
    }
    return 0;
}

struct ZerosFlags {
    std::string polys = "P";
    std::string interlace;
    std::string cluster;
    double gap_factor = 3.0;
    int digits = 40;
};

int cmd_zeros(const RunConfig& c, const ZerosFlags& f)
{
    auto b = build(c);
    auto dir = prepare_out(c);
    Json j;
    j["config"] = config_to_json(c, "zeros");
    std::map<std::string, ZeroSet> sets;
    std::stringstream ss(f.polys);
    std::string name;
    while (std::getline(ss, name, ',')) {
        auto z = zeros_of(pick(b, name), name, b, c.precision);
        write_text_file((dir / ("zeros_" + name + ".csv")).string(), zeros_csv(z, f.digits));
        Json zj = to_json(z, f.digits);
        auto real = z.real_points();
        int nreal = 0;
        for (size_t i = 0; i < z.size(); ++i)
            nreal += z.real[i] ? z.multiplicity[i] : 0;
        zj["real_count"] = nreal;
        if (!real.empty()) {
            zj["min_real"] = real.front().str(f.digits);
            zj["max_real"] = real.back().str(f.digits);
        }
        std::cout << name << ": " << z.count() << " zeros, " << nreal << " real";
        if (!real.empty())
            std::cout << ", real range [" << real.front().str(12) << ", " << real.back().str(12) << "]";
        std::cout << "\n";
        j["zeros"][name] = zj;
        sets.emplace(name, std::move(z));
    }
    if (!f.interlace.empty()) {
        auto iv = parse_interval(f.interlace);
        if (!sets.count("P"))
            sets.emplace("P", zeros_of(b.rec.P, "P", b, c.precision));
        for (size_t i = 0; i < b.rec.partners.size(); ++i) {
            std::string s = "S" + std::to_string(i + 1);
            if (!sets.count(s))
                sets.emplace(s, zeros_of(b.rec.partners[i], s, b, c.precision));
            auto r = interlacing_report(sets.at("P"), sets.at(s), iv);
            j["interlacing"][s] = to_json(r);
            std::cout << "interlacing P/" << s << " on " << f.interlace << ": " << r.count_inside_a << " and "
                      << r.count_inside_b << " inside, " << r.interlaced_pairs << " interlaced pairs, "
                      << r.violations.size() << " violations\n";
        }
    }
    if (!f.cluster.empty()) {
        auto w = parse_rat_list(f.cluster);
        if (w.size() != 2)
            throw Error(ErrorKind::InvalidInput, "--cluster needs lo,hi");
        if (!sets.count("P"))
            sets.emplace("P", zeros_of(b.rec.P, "P", b, c.precision));
        auto ci = cluster_gap(sets.at("P"), {w[0].get_d(), w[1].get_d()}, f.gap_factor);
        Json cj;
        cj["clusters"] = ci.clusters;
        cj["max_gap"] = ci.max_gap;
        cj["gap_factor"] = f.gap_factor;
        for (auto& [lo, hi] : ci.spans)
            cj["spans"].push_back({lo, hi});
        j["clusters"] = cj;
        std::cout << "clusters of P: " << ci.clusters << "\n";
    }
    emit(dir, "zeros.json", j);
    emit(dir, "run_config.json", j["config"]);
    return 0;
}

struct EquilibriumFlags {
    bool scalar = false;
    bool vector = false;
    std::string a = "-1/2";
    int which = 0;
};

int cmd_equilibrium(const RunConfig& c, const EquilibriumFlags& f)
{
    auto b = build(c);
    auto dir = prepare_out(c);
    Rat a = parse_rat(f.a);
    bool scalar = f.scalar || !f.vector;
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(b.ws.size()); ++i)
        if (f.which == 0 || f.which == i + 1)
            idx.push_back(i);
    if (idx.empty())
        throw Error(ErrorKind::InvalidInput, "--which out of range");
    Json j;
    j["config"] = config_to_json(c, "equilibrium");
    auto zp = zeros_of(b.rec.P, "P", b, c.precision);
    auto report = [&](const std::string& key, const EquilibriumReport& r, const ZeroSet& z) {
        j["reports"][key] = to_json(r, z);
        std::cout << key << ": max_abs " << r.max_abs.str(6) << " (2^" << log2_str(r.max_abs) << ")";
        if (!r.excluded.empty())
            std::cout << ", " << r.excluded.size() << " excluded near poles";
        std::cout << "\n";
    };
    for (int i : idx) {
        std::string tag = std::to_string(i + 1);
        if (scalar)
            report("scalar_" + tag, scalar_residual(zp, scalar_field(b.rec, b.ws, i)), zp);
        if (f.vector) {
            auto zs = zeros_of(b.rec.partners.at(static_cast<size_t>(i)), "S" + tag, b, c.precision);
            auto [f1, f2] = vector_fields(b.rec, b.ws, i);
            auto [r1, r2] = vector_residual(zp, zs, a, f1, f2);
            report("vector_" + tag + "_P", r1, zp);
            report("vector_" + tag + "_S", r2, zs);
        }
    }
    emit(dir, "equilibrium.json", j);
    emit(dir, "run_config.json", j["config"]);
    return 0;
}

struct ExportFlags {
    bool histogram = false;
    std::string scale = "1";
    int bins = 40;
    std::string poly = "P";
};

int cmd_export(const RunConfig& c, const ExportFlags& f)
{
    auto b = build(c);
    auto dir = prepare_out(c);
    if (!f.histogram)
        throw Error(ErrorKind::InvalidInput, "nothing to export; pass --histogram");
    if (f.bins < 1)
        throw Error(ErrorKind::InvalidInput, "--bins must be positive");
    auto z = zeros_of(pick(b, f.poly), f.poly, b, c.precision);
    auto h = histogram_export(z, parse_rat(f.scale), f.bins);
    write_text_file((dir / ("histogram_" + f.poly + ".csv")).string(), h.csv());
    emit(dir, "run_config.json", config_to_json(c, "export"));
    std::cout << "histogram of " << h.count << " real zeros of " << f.poly << " on [" << h.min << ", " << h.max
              << "] -> " << (dir / ("histogram_" + f.poly + ".csv")).string() << "\n";
    return 0;
}

int cmd_families()
{
    for (const auto& f : family_catalog())
        std::cout << f.id << "  [" << f.params << "]  " << f.description << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& c, int from, int to, int jobs)
{
    if (from < 0 || to < from)
        throw Error(ErrorKind::InvalidInput, "bad sweep range");
    auto dir = prepare_out(c);
    std::vector<Json> rows(static_cast<size_t>(to - from + 1));
    std::vector<int> codes(rows.size(), 0);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t k; (k = next++) < rows.size();) {
            RunConfig rc = c;
            int n = from + static_cast<int>(k);
            rc.record.clear();
            Json row;
            row["n"] = n;
            try {
                auto probe = family(c.family, c.params);
                rc.n = probe.size() == 2 ? std::vector<int>{n, n} : std::vector<int>{n};
                auto b = build(rc);
                auto checks = verify_record(b.rec, b.ws);
                int bad = 0;
                for (const auto& x : checks)
                    if (!x.ok) {
                        if (!bad)
                            row["first_failure"] = x.name;
                        ++bad;
                    }
                row["P"] = to_json(b.rec.P);
                row["checks"] = checks.size();
                row["failed"] = bad;
                row["normal"] = b.rec.normal;
                codes[k] = bad ? exit_code(ErrorKind::IdentityViolation) : 0;
            } catch (const Error& e) {
                row["error"] = e.what();
                codes[k] = exit_code(e.kind());
            }
            rows[k] = std::move(row);
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    Json j;
    RunConfig shown = c;
    shown.extra["from"] = from;
    shown.extra["to"] = to;
    j["config"] = config_to_json(shown, "sweep");
    j["results"] = rows;
    emit(dir, "sweep.json", j);
    emit(dir, "run_config.json", j["config"]);
    int worst = 0;
    for (size_t k = 0; k < rows.size(); ++k) {
        std::cout << "n=" << from + static_cast<int>(k) << ": ";
        if (rows[k].contains("error"))
            std::cout << rows[k]["error"].get<std::string>() << "\n";
        else
            std::cout << rows[k]["failed"].get<int>() << " of " << rows[k]["checks"].get<size_t>()
                      << " checks failed\n";
        if (codes[k] && !worst)
            worst = codes[k];
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hermite-Pade electrostatics toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    const char* env_out = std::getenv("HPE_OUTPUT_DIR");
    std::string config_file, index, out;
    long precision = 0;
    int guard = -1;
    bool lenient = false;
    std::string record, family_id;
    std::map<std::string, std::string> flag_params;

    auto common = [&](CLI::App* sub, bool needs_source) {
        sub->add_option("--config", config_file, "JSON run configuration; flags override it");
        sub->add_option("--out", out, "output directory (default $HPE_OUTPUT_DIR or .)");
        if (!needs_source)
            return;
        sub->add_option("--family", family_id, "family id, see `families`");
        sub->add_option("--record", record, "read a mop_record.json instead of solving");
        sub->add_option("--n", index, "multi-index, e.g. 5,5");
        sub->add_option("--precision", precision, "working precision in bits (default 256)");
        sub->add_option("--guard", guard, "extra Cauchy tail terms (default 8)");
        sub->add_flag("--lenient", lenient, "keep non-normal records instead of failing");
        for (const char* p : kParamNames)
            sub->add_option_function<std::string>(
                std::string("--") + p, [&flag_params, p](const std::string& v) { flag_params[p] = v; },
                "family parameter, rational p/q");
    };

    auto* solve = app.add_subcommand("solve", "compute P, partners, van Vleck polynomials, R, E, F");
    common(solve, true);
    auto* verify = app.add_subcommand("verify", "check every identity of a record");
    common(verify, true);

    ZerosFlags zf;
    auto* zeros = app.add_subcommand("zeros", "certified zeros, interlacing and cluster reports");
    common(zeros, true);
    zeros->add_option("--poly", zf.polys, "comma separated subset of P,S1,S2,R,Rstar");
    zeros->add_option("--interlace", zf.interlace, "interval such as [0,1) for P/S interlacing");
    zeros->add_option("--cluster", zf.cluster, "window lo,hi for the cluster count of P");
    zeros->add_option("--gap-factor", zf.gap_factor, "cluster split threshold in median gaps");
    zeros->add_option("--digits", zf.digits, "decimal digits in the outputs");

    EquilibriumFlags ef;
    auto* equil = app.add_subcommand("equilibrium", "residuals of the discrete equilibrium conditions");
    common(equil, true);
    equil->add_flag("--scalar", ef.scalar, "scalar problem for each weight");
    equil->add_flag("--vector", ef.vector, "vector problem on zeros of P and S_i");
    equil->add_option("--interaction", ef.a, "interaction parameter a of the vector problem (default -1/2)");
    equil->add_option("--which", ef.which, "weight index 1 or 2 (default both)");

    ExportFlags xf;
    auto* exp = app.add_subcommand("export", "histograms of real zeros");
    common(exp, true);
    exp->add_flag("--histogram", xf.histogram, "histogram CSV of real zeros");
    exp->add_option("--scale", xf.scale, "scaling applied to the zeros, rational");
    exp->add_option("--bins", xf.bins, "number of bins");
    exp->add_option("--poly", xf.poly, "P, S1 or S2");

    auto* fams = app.add_subcommand("families", "list the weight families");

    int from = 1, to = 10, jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "solve and verify along the diagonal n = (k, k)");
    common(sweep, true);
    sweep->add_option("--from", from, "first k");
    sweep->add_option("--to", to, "last k");
    sweep->add_option("--jobs", jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (fams->parsed())
            return cmd_families();

        RunConfig c;
        if (!config_file.empty()) {
            Json j = read_json_file(config_file);
            try {
                c.family = j.value("family", "");
                if (j.contains("params"))
                    c.params = params_from_json(j["params"]);
                if (j.contains("n"))
                    c.n = j["n"].get<std::vector<int>>();
                c.precision = j.value("precision", c.precision);
                c.guard = j.value("guard", c.guard);
                c.lenient = j.value("lenient", false);
                c.record = j.value("record", "");
                c.out = j.value("out", "");
            } catch (const Json::exception& e) {
                throw Error(ErrorKind::InvalidInput, std::string("bad config: ") + e.what());
            }
        }
        if (!family_id.empty())
            c.family = family_id;
        for (auto& [k, v] : flag_params)
            c.params[k] = parse_rat(v);
        if (!index.empty())
            c.n = parse_index(index);
        if (precision)
            c.precision = precision;
        if (c.precision < 32)
            throw Error(ErrorKind::InvalidInput, "precision must be at least 32 bits");
        if (guard >= 0)
            c.guard = guard;
        c.lenient = c.lenient || lenient;
        if (!record.empty())
            c.record = record;
        if (!out.empty())
            c.out = out;
        if (c.out.empty())
            c.out = env_out && *env_out ? env_out : ".";

        if (solve->parsed())
            return cmd_solve(c);
        if (verify->parsed())
            return cmd_verify(c);
        if (zeros->parsed()) {
            c.extra["poly"] = zf.polys;
            if (!zf.interlace.empty())
                c.extra["interlace"] = zf.interlace;
            if (!zf.cluster.empty()) {
                c.extra["cluster"] = zf.cluster;
                c.extra["gap_factor"] = zf.gap_factor;
            }
            return cmd_zeros(c, zf);
        }
        if (equil->parsed()) {
            c.extra["scalar"] = ef.scalar || !ef.vector;
            c.extra["vector"] = ef.vector;
            c.extra["a"] = ef.a;
            c.extra["which"] = ef.which;
            return cmd_equilibrium(c, ef);
        }
        if (exp->parsed()) {
            c.extra["histogram"] = xf.histogram;
            c.extra["scale"] = xf.scale;
            c.extra["bins"] = xf.bins;
            c.extra["poly"] = xf.poly;
            return cmd_export(c, xf);
        }
        if (sweep->parsed())
            return cmd_sweep(c, from, to, jobs);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::out_of_range& e) {
        std::cerr << "error: missing parameter (" << e.what() << ")\n";
        return 1;
    }
    return 1;
}
