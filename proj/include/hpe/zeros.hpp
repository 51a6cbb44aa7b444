#pragma once

#include "hpe/exactpoly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hpe {

// All roots of one polynomial, listed with multiplicity once per distinct root.
// radius[i] is an inclusion radius; zero for roots found exactly.
struct ZeroSet {
    std::vector<BigComplex> points;
    std::vector<BigFloat> radius;
    std::vector<int> multiplicity;
    std::vector<bool> real;  // proven real (the disk meets the axis and holds a single root)
    std::vector<bool> exact;
    long precision = kDefaultPrecision;
    std::string source;
    bool certified = false;

    int count() const;  // with multiplicity
    size_t size() const { return points.size(); }
    // real points sorted ascending (as doubles are not enough, kept as BigFloat)
    std::vector<BigFloat> real_points() const;
};

struct ZeroOptions {
    long precision = kDefaultPrecision;
    long precision_cap = 8192;
    // rational values tried as exact roots before the numeric search
    std::vector<Rat> hints;
    std::string source;
};

// Throws PrecisionCapExceeded when the disks cannot be separated below the cap.
ZeroSet find_zeros(const ExactPoly& p, const ZeroOptions& opts);
ZeroSet find_zeros(const ExactPoly& p, long precision);

struct RealInterval {
    Rat lo, hi;
    bool lo_closed = true;
    bool hi_closed = true;
    bool contains(const BigFloat& x) const;
};

struct InterlaceReport {
    RealInterval interval;
    int count_inside_a = 0;
    int count_inside_b = 0;
    int interlaced_pairs = 0;
    // gaps (between consecutive a-points, counted from the left) holding no b-point or more than one
    std::vector<int> violations;
    // b-points inside the interval but outside the hull of the a-points
    int outside_hull_b = 0;
};

// Throws AmbiguousAtPrecision when a decision depends on points closer than their radii.
InterlaceReport interlacing_report(const ZeroSet& zp, const ZeroSet& zs, const RealInterval& interval);

// Lower bound for the sign changes of f on the open interval (a, b). Starts from a
// uniform grid and looks for hidden pairs of changes near local minima of |f|.
int sign_changes(const std::function<BigFloat(const BigFloat&)>& f, const BigFloat& a, const BigFloat& b,
                 int grid, int refine_depth = 24);

struct ClusterInfo {
    int clusters = 0;
    double max_gap = 0;
    // boundaries (left, right) of each cluster
    std::vector<std::pair<double, double>> spans;
};
// gap_factor: a gap larger than gap_factor times the median gap splits clusters
ClusterInfo cluster_gap(const ZeroSet& zs, std::pair<double, double> window, double gap_factor = 3.0);

// re, im, radius, multiplicity
std::string zeros_csv(const ZeroSet& z, int digits = 30);

}  // namespace hpe
