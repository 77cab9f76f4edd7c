#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eqkit/graph.hpp"

namespace eqkit {

/// Relative tolerance shared by every rank / PSD decision unless overridden.
inline constexpr double kDefaultRankTol = 1e-9;

/// Dense real symmetric matrix; writes go to both (i,j) and (j,i).
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

    static SymMatrix identity(std::size_t n) {
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1.0;
        return m;
    }

    std::size_t dim() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }
    std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
    const std::vector<double>& data() const { return a_; }

    /// Maximum absolute row sum.
    double norm_inf() const {
        double best = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += std::abs(a_[i * n_ + j]);
            best = std::max(best, s);
        }
        return best;
    }

    double norm_frobenius() const {
        double s = 0.0;
        for (double x : a_) s += x * x;
        return std::sqrt(s);
    }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
        return t;
    }

    bool all_finite() const {
        return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
    }

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
        for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] += b.a_[k];
        return a;
    }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
        for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] -= b.a_[k];
        return a;
    }
    friend SymMatrix operator*(double s, SymMatrix a) {
        for (double& x : a.a_) x *= s;
        return a;
    }

    /// D M D for a diagonal of +-1 signs.
    SymMatrix conjugated(std::span<const int> signs) const {
        if (signs.size() != n_) throw std::invalid_argument("SymMatrix::conjugated: sign vector length mismatch");
        SymMatrix m(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) m.a_[i * n_ + j] = signs[i] * signs[j] * a_[i * n_ + j];
        return m;
    }

private:
    friend struct JacobiSolver;
    std::size_t n_ = 0;
    std::vector<double> a_;
};

inline SymMatrix adjacency_matrix(const Graph& g) {
    SymMatrix m(g.order());
    for (auto [u, v] : g.edges()) m.set(u, v, 1.0);
    return m;
}

inline SymMatrix ones_matrix(std::size_t n) { return SymMatrix(n, 1.0); }

/// Gram matrix of row vectors.
inline SymMatrix gram_matrix(const std::vector<std::vector<double>>& vectors) {
    SymMatrix m(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i; j < vectors.size(); ++j) {
            if (vectors[i].size() != vectors[j].size()) throw std::invalid_argument("gram_matrix: ragged vectors");
            m.set(i, j, std::inner_product(vectors[i].begin(), vectors[i].end(), vectors[j].begin(), 0.0));
        }
    return m;
}

/// Eigenvalues sorted descending with aligned orthonormal eigenvectors.
struct Spectrum {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]; empty if not requested
    double residual = 0.0;                     // max_k |M v_k - values[k] v_k|_inf
    int sweeps = 0;
};

struct JacobiSolver {
    static constexpr int kMaxSweeps = 50;
    static constexpr double kRelativeOffTol = 1e-13;

    static Spectrum solve(const SymMatrix& input, bool want_vectors) {
        if (!input.all_finite()) throw std::invalid_argument("eig_sym: non-finite matrix entry");
        const std::size_t n = input.dim();
        std::vector<double> a = input.a_;
        std::vector<double> v;
        if (want_vectors) {
            v.assign(n * n, 0.0);
            for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
        }
        const double target = kRelativeOffTol * input.norm_frobenius();
        int sweep = 0;
        for (; sweep < kMaxSweeps; ++sweep) {
            double off = 0.0;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
            if (std::sqrt(2.0 * off) <= target) break;
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const double apq = a[p * n + q];
                    if (apq == 0.0) continue;
                    const double app = a[p * n + p];
                    const double aqq = a[q * n + q];
                    const double theta = (aqq - app) / (2.0 * apq);
                    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    const double tau = s / (1.0 + c);
                    a[p * n + p] = app - t * apq;
                    a[q * n + q] = aqq + t * apq;
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    for (std::size_t r = 0; r < n; ++r) {
                        if (r == p || r == q) continue;
                        const double g = a[r * n + p];
                        const double h = a[r * n + q];
                        const double np = g - s * (h + g * tau);
                        const double nq = h + s * (g - h * tau);
                        a[r * n + p] = np;
                        a[p * n + r] = np;
                        a[r * n + q] = nq;
                        a[q * n + r] = nq;
                    }
                    if (want_vectors) {
                        for (std::size_t r = 0; r < n; ++r) {
                            const double g = v[r * n + p];
                            const double h = v[r * n + q];
                            v[r * n + p] = g - s * (h + g * tau);
                            v[r * n + q] = h + s * (g - h * tau);
                        }
                    }
                }
            }
        }

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] > a[y * n + y]; });
        Spectrum out;
        out.sweeps = sweep;
        out.values.reserve(n);
        for (std::size_t k : order) out.values.push_back(a[k * n + k]);
        if (want_vectors) {
            out.vectors.assign(n, std::vector<double>(n));
            for (std::size_t idx = 0; idx < n; ++idx)
                for (std::size_t r = 0; r < n; ++r) out.vectors[idx][r] = v[r * n + order[idx]];
            double res = 0.0;
            for (std::size_t idx = 0; idx < n; ++idx) {
                const auto& x = out.vectors[idx];
                for (std::size_t i = 0; i < n; ++i) {
                    double mv = 0.0;
                    for (std::size_t j = 0; j < n; ++j) mv += input(i, j) * x[j];
                    res = std::max(res, std::abs(mv - out.values[idx] * x[i]));
                }
            }
            out.residual = res;
        }
        return out;
    }
};

/// Full eigendecomposition by cyclic Jacobi.
inline Spectrum eig_sym(const SymMatrix& m) { return JacobiSolver::solve(m, true); }

/// Eigenvalues only (descending).
inline std::vector<double> eigenvalues(const SymMatrix& m) { return JacobiSolver::solve(m, false).values; }

inline std::vector<double> graph_eigenvalues(const Graph& g) { return eigenvalues(adjacency_matrix(g)); }

/// lambda_1 of a graph; 0 for the empty vertex set.
inline double spectral_radius(const Graph& g) {
    if (g.order() == 0) return 0.0;
    return graph_eigenvalues(g).front();
}

inline double psd_scale(const SymMatrix& m) { return std::max(1.0, m.norm_inf()); }

struct PsdRank {
    bool is_psd = false;
    std::size_t rank = 0;
    double min_eigenvalue = 0.0;
    double tolerance = 0.0;  // absolute threshold actually applied
};

inline PsdRank psd_rank(const SymMatrix& m, double tol = kDefaultRankTol) {
    if (!(tol > 0)) throw std::invalid_argument("psd_rank: tolerance must be positive");
    PsdRank r;
    r.tolerance = tol * psd_scale(m);
    if (m.dim() == 0) {
        r.is_psd = true;
        return r;
    }
    auto vals = eigenvalues(m);
    r.min_eigenvalue = vals.back();
    r.is_psd = r.min_eigenvalue >= -r.tolerance;
    r.rank = static_cast<std::size_t>(std::count_if(vals.begin(), vals.end(), [&](double x) { return x > r.tolerance; }));
    return r;
}

/// Rows of Q Lambda^{1/2} over the eigenvalues above an absolute threshold.
inline std::vector<std::vector<double>> psd_factor_absolute(const SymMatrix& m, double thresh) {
    const std::size_t n = m.dim();
    if (n == 0) return {};
    Spectrum sp = eig_sym(m);
    if (sp.values.back() < -thresh) throw std::domain_error("psd_factor: matrix is not positive semidefinite within tolerance");
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < n; ++k)
        if (sp.values[k] > thresh) kept.push_back(k);
    std::vector<std::vector<double>> out(n, std::vector<double>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
        const double root = std::sqrt(sp.values[kept[c]]);
        for (std::size_t i = 0; i < n; ++i) out[i][c] = sp.vectors[kept[c]][i] * root;
    }
    return out;
}

/// Vectors v_1..v_n in R^rank with <v_i, v_j> = M(i,j): rows of Q Lambda^{1/2}
/// over the eigenvalues above tol * scale.
inline std::vector<std::vector<double>> psd_factor(const SymMatrix& m, double tol = kDefaultRankTol) {
    return psd_factor_absolute(m, tol * psd_scale(m));
}

/// Numerical rank of the matrix whose rows are `vectors`, via its Gram matrix.
inline std::size_t numerical_rank(const std::vector<std::vector<double>>& vectors, double tol = kDefaultRankTol) {
    if (vectors.empty()) return 0;
    return psd_rank(gram_matrix(vectors), tol).rank;
}

}  // namespace eqkit
