#pragma once

#include "hpe/weights.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hpe {

struct MultiIndex {
    int n1 = 0;
    int n2 = 0;
    int N() const { return n1 + n2; }
};

// Everything known about one multiple (or quasi-) orthogonal polynomial.
// Single-weight records carry one entry in the per-weight vectors.
struct MopRecord {
    std::string family;
    std::map<std::string, Rat> params;
    std::vector<int> n;  // orthogonality conditions per weight
    int N = 0;
    ExactPoly P;
    std::vector<LaurentTail> cauchy;
    std::vector<Rat> m;  // m_{n_i}
    bool normal = true;
    std::string non_normal_reason;

    std::vector<ExactPoly> partners;
    std::vector<ExactPoly> vanvleck;
    std::optional<ExactPoly> r_poly;
    std::optional<ExactPoly> r_star;
    std::optional<ExactPoly> e_poly;
    std::optional<ExactPoly> f_poly;
    std::vector<std::string> warnings;

    bool two_weight() const { return n.size() == 2; }
    MultiIndex index() const { return n.size() == 2 ? MultiIndex{n[0], n[1]} : MultiIndex{n.at(0), 0}; }
};

struct SolveOptions {
    int guard = 8;
    // number of stored Cauchy tail coefficients; -1 means 2N + sigma + guard
    int tail_order = -1;
    // return non-normal records (m_{n_i} = 0) instead of throwing
    bool lenient = false;
};

// Extra conditions fixing a quasi-orthogonal polynomial when n < N.
struct QuasiRule {
    enum class Kind { none, pinned, lower_combination };
    Kind kind = Kind::none;
    // pinned: coefficient of x^k fixed to the given value
    std::map<int, Rat> pinned;
    // lower_combination: P = p_N + combo[0] p_{N-1} + combo[1] p_{N-2} + ... with monic orthogonal p_j
    std::vector<Rat> combo;
};

// Solves sum_m A[i][m] x_m = b[i] exactly. Throws NonNormalIndex when singular.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> b);

// Laurent tail of the weighted Cauchy transform of P from the moments u (coeffs[k] = -sum p_m u_{m+k}).
LaurentTail cauchy_tail(const ExactPoly& P, const std::vector<Rat>& u, int order);

MopRecord solve_mop(const SemiclassicalWeight& w1, const SemiclassicalWeight& w2, MultiIndex n,
                    const SolveOptions& opts = {});
MopRecord solve_quasi(const SemiclassicalWeight& w, int N, int n, const QuasiRule& rule = {},
                      const SolveOptions& opts = {});

// true iff R is not identically zero; requires the partner slots of a two-weight record
bool check_independence(const MopRecord& rec);

}  // namespace hpe
