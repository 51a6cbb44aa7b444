#pragma once

#include "hpe/exactpoly.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hpe {

// A point of the extended real line.
struct Endpoint {
    int infinite = 0;  // -1, 0 or +1
    Rat value;

    static Endpoint finite(const Rat& v) { return {0, v}; }
    static Endpoint neg_inf() { return {-1, Rat(0)}; }
    static Endpoint pos_inf() { return {1, Rat(0)}; }
    bool is_finite() const { return infinite == 0; }
    bool operator<(const Endpoint& o) const;
    bool operator==(const Endpoint& o) const { return infinite == o.infinite && (infinite != 0 || value == o.value); }
};

// Straight ray origin + t e^{i pi angle}, t >= 0; orientation +1 runs outwards.
struct ContourRay {
    Rat origin;
    Rat angle;  // in units of pi
    int orientation = 1;
};

struct SupportComponent {
    enum class Kind { bounded_interval, ray, contour_tag };
    Kind kind = Kind::bounded_interval;
    Endpoint left, right;
    int orientation = 1;
    // contour_tag only
    std::string contour_id;
    std::vector<ContourRay> rays;

    static SupportComponent interval(const Rat& a, const Rat& b);
    static SupportComponent half_line(const Endpoint& a, const Endpoint& b);
    static SupportComponent contour(std::string id, std::vector<ContourRay> rays);
};

// w(z) = exp(exp_poly(z)) * prod |z - r|^e over `factors` (principal powers off the real line)
struct LogDensity {
    ExactPoly exp_poly;
    std::vector<std::pair<Rat, Rat>> factors;

    // d/dz log w as a rational function num/den with den = prod (z - r)
    std::pair<ExactPoly, ExactPoly> log_derivative() const;
};

struct MomentBackend {
    enum class Kind { exact_recurrence, closed_form, numeric_quadrature };
    Kind kind = Kind::exact_recurrence;
    // one seed list per support component
    std::vector<std::vector<Rat>> seeds;
    // user-provided moments at indices where the recurrence is singular
    std::map<int, Rat> pinned;
    std::string family;
    std::map<std::string, Rat> params;
    long precision = 128;
    std::string scheme = "tanh-sinh";

    bool exact() const { return kind != Kind::numeric_quadrature; }
};

struct SemiclassicalWeight {
    std::string name;
    ExactPoly A;
    ExactPoly B;
    std::vector<SupportComponent> support;
    int sigma = 0;
    MomentBackend backend;
    std::string scale_tag;
    std::optional<LogDensity> density;
};

int weight_class(const ExactPoly& A, const ExactPoly& B);
// validates A monic, sigma consistent, support endpoints, density compatible with (A, B)
void validate(const SemiclassicalWeight& w);

struct MomentSequence {
    std::vector<Rat> values;
    std::vector<BigComplex> numeric;
    std::vector<BigFloat> error;  // absolute error estimate per numeric moment
    std::string scale_tag;
    bool is_exact() const { return numeric.empty(); }
    size_t size() const { return is_exact() ? values.size() : numeric.size(); }
};

// number of free initial moments per component
int pearson_seed_count(const ExactPoly& A, const ExactPoly& B);
// left-hand side of the k-th recurrence relation evaluated on u (exactly zero for valid sequences)
Rat pearson_residual(const ExactPoly& A, const ExactPoly& B, const std::vector<Rat>& u, int k);

MomentSequence pearson_moments(const SemiclassicalWeight& w, int count);
MomentSequence numeric_moments(const SemiclassicalWeight& w, int count, long precision);

// Integral of P(t) w(t) / (t - z) over the support, by quadrature
BigComplex cauchy_numeric(const SemiclassicalWeight& w, const ExactPoly& P, const BigComplex& z, long precision);

// Double exponential quadrature of a vector-valued integrand over one component.
// The integrand receives the node z and, on real intervals, the distances to the
// finite endpoints (computed without cancellation).
struct QuadNode {
    BigComplex z;
    std::optional<Rat> left, right;
    std::optional<BigFloat> dist_left, dist_right;
    // on contours, z - left = direction * dist_left
    std::optional<BigComplex> direction;
};
using VectorIntegrand = std::function<void(const QuadNode&, std::vector<BigComplex>&)>;
struct QuadResult {
    std::vector<BigComplex> values;
    std::vector<BigFloat> error;
    int levels = 0;
};
QuadResult integrate(const SupportComponent& c, const VectorIntegrand& f, size_t width, long precision);

BigComplex eval_density(const LogDensity& d, const QuadNode& node);

struct FamilyInfo {
    std::string id;
    std::string params;
    std::string description;
};
const std::vector<FamilyInfo>& family_catalog();

// Builds the weights of a catalog family. Single-weight families return one entry.
std::vector<SemiclassicalWeight> family(const std::string& name, const std::map<std::string, Rat>& params);

}  // namespace hpe
