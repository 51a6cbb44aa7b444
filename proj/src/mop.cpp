#include "hpe/mop.hpp"

#include "hpe/error.hpp"

#include <algorithm>

namespace hpe {

std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> b)
{
    const size_t n = b.size();
    if (A.size() != n)
        throw Error(ErrorKind::InvalidInput, "linear system is not square");
    if (n == 0)
        return {};
    // clear denominators row by row, then eliminate fraction-free
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        mpz_class l = b[i].get_den();
        for (size_t j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), A[i][j].get_den_mpz_t());
        for (size_t j = 0; j < n; ++j)
            M[i][j] = A[i][j].get_num() * (l / A[i][j].get_den());
        M[i][n] = b[i].get_num() * (l / b[i].get_den());
    }
    mpz_class prev = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && M[piv][k] == 0)
            ++piv;
        if (piv == n)
            throw Error(ErrorKind::NonNormalIndex, "moment system is singular (rank < " + std::to_string(n) + ")");
        if (piv != k)
            std::swap(M[piv], M[k]);
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j <= n; ++j) {
                mpz_class t = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    std::vector<Rat> x(n);
    for (size_t i = n; i-- > 0;) {
        Rat s = Rat(M[i][n]);
        for (size_t j = i + 1; j < n; ++j)
            s -= Rat(M[i][j]) * x[j];
        x[i] = s / Rat(M[i][i]);
        x[i].canonicalize();
    }
    return x;
}

LaurentTail cauchy_tail(const ExactPoly& P, const std::vector<Rat>& u, int order)
{
    const int N = P.degree();
    if (static_cast<int>(u.size()) < N + order)
        throw Error(ErrorKind::InsufficientMoments, "need " + std::to_string(N + order) + " moments, have " +
                                                        std::to_string(u.size()));
    std::vector<Rat> c(static_cast<size_t>(order));
    for (int k = 0; k < order; ++k) {
        Rat s = 0;
        for (int m = 0; m <= N; ++m)
            if (P[m] != 0)
                s += P[m] * u[static_cast<size_t>(m + k)];
        c[static_cast<size_t>(k)] = -s;
    }
    return LaurentTail(std::move(c));
}

namespace {

int default_tail(int N, int sigma, const SolveOptions& o)
{
    return o.tail_order >= 0 ? o.tail_order : 2 * N + sigma + o.guard;
}

std::vector<Rat> moments_for(const SemiclassicalWeight& w, int count)
{
    if (!w.backend.exact())
        throw Error(ErrorKind::NotApplicable,
                    "weight '" + w.name + "' has only numeric moments; exact solving is refused");
    return pearson_moments(w, count).values;
}

void record_m(MopRecord& rec, size_t i, const SolveOptions& opts)
{
    int ni = rec.n[i];
    Rat mi = -rec.cauchy[i].coeff(ni);
    rec.m.push_back(mi);
    if (mi == 0) {
        std::string why = "m_" + std::to_string(ni) + " vanishes for weight " + std::to_string(i + 1);
        if (!opts.lenient)
            throw Error(ErrorKind::NonNormalIndex, why);
        rec.normal = false;
        if (rec.non_normal_reason.empty())
            rec.non_normal_reason = why;
    }
}

}  // namespace

MopRecord solve_mop(const SemiclassicalWeight& w1, const SemiclassicalWeight& w2, MultiIndex n,
                    const SolveOptions& opts)
{
    const int N = n.N();
    if (N < 1 || n.n1 < 0 || n.n2 < 0)
        throw Error(ErrorKind::InvalidInput, "multi-index must be nonnegative with N >= 1");
    const SemiclassicalWeight* ws[2] = {&w1, &w2};
    const int ni[2] = {n.n1, n.n2};
    std::vector<std::vector<Rat>> u(2);
    std::vector<int> order(2);
    for (int i = 0; i < 2; ++i) {
        order[static_cast<size_t>(i)] = std::max(default_tail(N, ws[i]->sigma, opts), ni[i] + 1);
        u[static_cast<size_t>(i)] = moments_for(*ws[i], N + order[static_cast<size_t>(i)]);
    }
    std::vector<std::vector<Rat>> M;
    std::vector<Rat> rhs;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < ni[i]; ++j) {
            const auto& ui = u[static_cast<size_t>(i)];
            std::vector<Rat> row(static_cast<size_t>(N));
            for (int m = 0; m < N; ++m)
                row[static_cast<size_t>(m)] = ui[static_cast<size_t>(m + j)];
            M.push_back(std::move(row));
            rhs.push_back(-ui[static_cast<size_t>(N + j)]);
        }
    std::vector<Rat> p = solve_linear(std::move(M), std::move(rhs));
    p.push_back(1);

    MopRecord rec;
    rec.n = {n.n1, n.n2};
    rec.N = N;
    rec.P = ExactPoly(std::move(p));
    for (size_t i = 0; i < 2; ++i) {
        rec.cauchy.push_back(cauchy_tail(rec.P, u[i], order[i]));
        record_m(rec, i, opts);
    }
    return rec;
}

MopRecord solve_quasi(const SemiclassicalWeight& w, int N, int n, const QuasiRule& rule, const SolveOptions& opts)
{
    if (N < 1 || n < 0 || n > N)
        throw Error(ErrorKind::InvalidInput, "need 0 <= n <= N and N >= 1");
    const int order = std::max(default_tail(N, w.sigma, opts), n + 1);
    std::vector<Rat> u = moments_for(w, N + order);

    ExactPoly P;
    if (rule.kind == QuasiRule::Kind::lower_combination) {
        if (static_cast<int>(rule.combo.size()) != N - n)
            throw Error(ErrorKind::InvalidInput, "combination rule needs N - n = " + std::to_string(N - n) +
                                                     " coefficients");
        SolveOptions inner = opts;
        inner.lenient = false;
        P = solve_quasi(w, N, N, {}, inner).P;
        for (int k = 1; k <= N - n; ++k) {
            Rat g = rule.combo[static_cast<size_t>(k - 1)];
            if (g != 0)
                P += g * solve_quasi(w, N - k, N - k, {}, inner).P;
        }
    } else {
        std::vector<std::vector<Rat>> M;
        std::vector<Rat> rhs;
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> row(static_cast<size_t>(N));
            for (int m = 0; m < N; ++m)
                row[static_cast<size_t>(m)] = u[static_cast<size_t>(m + j)];
            M.push_back(std::move(row));
            rhs.push_back(-u[static_cast<size_t>(N + j)]);
        }
        if (n < N) {
            if (rule.kind != QuasiRule::Kind::pinned || static_cast<int>(rule.pinned.size()) != N - n)
                throw Error(ErrorKind::InvalidInput, "quasi-orthogonal solve with n < N needs " +
                                                         std::to_string(N - n) + " pinned coefficients");
            for (const auto& [deg, val] : rule.pinned) {
                if (deg < 0 || deg >= N)
                    throw Error(ErrorKind::InvalidInput, "pinned degree out of range 0..N-1");
                std::vector<Rat> row(static_cast<size_t>(N));
                row[static_cast<size_t>(deg)] = 1;
                M.push_back(std::move(row));
                rhs.push_back(val);
            }
        }
        std::vector<Rat> p = solve_linear(std::move(M), std::move(rhs));
        p.push_back(1);
        P = ExactPoly(std::move(p));
    }

    MopRecord rec;
    rec.family = w.backend.family;
    rec.params = w.backend.params;
    rec.n = {n};
    rec.N = N;
    rec.P = P;
    rec.cauchy.push_back(cauchy_tail(P, u, order));
    for (int j = 0; j < n; ++j)
        if (rec.cauchy[0].coeff(j) != 0)
            throw Error(ErrorKind::InvalidInput, "completion rule breaks orthogonality condition " + std::to_string(j));
    record_m(rec, 0, opts);
    return rec;
}

bool check_independence(const MopRecord& rec)
{
    if (!rec.two_weight())
        throw Error(ErrorKind::NotApplicable, "independence needs two weights");
    if (!rec.r_poly)
        throw Error(ErrorKind::NotApplicable, "R has not been computed for this record");
    return !rec.r_poly->is_zero();
}

}  // namespace hpe
