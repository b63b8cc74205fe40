#pragma once

#include <cmath>
#include <cstring>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dualprism/errors.hpp"
#include "dualprism/graph.hpp"

namespace dualprism {

/// Full eigensystem of a symmetric matrix.
///
/// eigenvalues are ascending; column k of the eigenvector matrix is the unit
/// eigenvector paired with eigenvalues[k]. Storage is column-major so a
/// single eigenvector is contiguous.
struct Spectrum {
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> eigenvectors; // column-major n*n

    double eigenvector(int i, int k) const {
        return eigenvectors[static_cast<std::size_t>(k) * n + i];
    }
};

namespace detail {

// Sign convention: the entry of largest magnitude in each eigenvector is made
// nonnegative (first such entry wins on exact ties). Eigenvector signs are
// otherwise arbitrary, which would make golden tests unstable.
inline void normalize_column_signs(Eigen::MatrixXd& u) {
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            const double a = std::abs(u(i, k));
            if (a > best) {
                best = a;
                imax = i;
            }
        }
        if (u(imax, k) < 0.0) u.col(k) = -u.col(k);
    }
}

inline Eigen::MatrixXd to_eigen(const SymmetricMatrix& m) {
    const int n = m.dim();
    Eigen::MatrixXd out(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out(i, j) = m(i, j);
    return out;
}

} // namespace detail

/// Eigendecomposition of a symmetric matrix.
///
/// Deterministic for a given input; eigenvalues come back ascending and the
/// eigenvector matrix is orthonormal to machine precision (well inside any
/// tol >= 1e-10). Throws NonConvergence if the underlying QL iteration hits
/// its budget, which signals numerically pathological input.
inline Spectrum eigendecompose(const SymmetricMatrix& m, double tol = 1e-10) {
    if (tol <= 0.0) throw std::invalid_argument("eigendecompose: tol must be > 0");
    const int n = m.dim();
    Spectrum s;
    s.n = n;
    if (n == 0) return s;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(detail::to_eigen(m));
    if (solver.info() != Eigen::Success)
        throw NonConvergence("eigendecompose: QL iteration did not converge");

    Eigen::MatrixXd u = solver.eigenvectors();
    detail::normalize_column_signs(u);

    s.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    s.eigenvectors.resize(static_cast<std::size_t>(n) * n);
    std::memcpy(s.eigenvectors.data(), u.data(), sizeof(double) * s.eigenvectors.size());
    return s;
}

/// U diag(new_eigenvalues) U^T, symmetrized by averaging with its transpose
/// to remove floating-point asymmetry.
inline SymmetricMatrix reconstruct(const Spectrum& s,
                                   std::span<const double> new_eigenvalues) {
    const int n = s.n;
    if (static_cast<int>(new_eigenvalues.size()) != n)
        throw DimensionMismatch("reconstruct: eigenvalue count != spectrum dimension");

    Eigen::Map<const Eigen::MatrixXd> u(s.eigenvectors.data(), n, n);
    Eigen::Map<const Eigen::VectorXd> lam(new_eigenvalues.data(), n);
    Eigen::MatrixXd prod = u * lam.asDiagonal() * u.transpose();
    prod = ((prod + prod.transpose()) * 0.5).eval();

    SymmetricMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out.set(i, j, prod(i, j));
    return out;
}

/// Euclidean distance between two ascending eigenvalue vectors.
inline double spectral_l2_distance(const Spectrum& a, const Spectrum& b) {
    if (a.n != b.n)
        throw DimensionMismatch("spectral_l2_distance: spectra of different sizes");
    double sum = 0.0;
    for (int i = 0; i < a.n; ++i) {
        const double d = a.eigenvalues[i] - b.eigenvalues[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

/// Per-eigenvalue absolute change when flipping one edge, given the base
/// graph's spectrum. Shared by edge_flip_deltas and the flip-scan command so
/// a full scan decomposes the base graph only once.
inline std::vector<double> edge_flip_deltas_from(const Graph& g,
                                                 const Spectrum& base,
                                                 Edge flip, bool add) {
    if (g.has_edge(flip.first, flip.second) == add)
        throw EdgeStateMismatch(add ? "edge_flip_deltas: edge already present"
                                    : "edge_flip_deltas: edge not present");
    const Spectrum flipped = eigendecompose(laplacian(g.with_edge_flipped(flip, add)));
    std::vector<double> deltas(static_cast<std::size_t>(g.node_count()));
    for (int i = 0; i < g.node_count(); ++i)
        deltas[static_cast<std::size_t>(i)] =
            std::abs(flipped.eigenvalues[i] - base.eigenvalues[i]);
    return deltas;
}

/// |lambda_i(g') - lambda_i(g)| for the graph with one edge added or removed.
inline std::vector<double> edge_flip_deltas(const Graph& g, Edge flip, bool add) {
    return edge_flip_deltas_from(g, eigendecompose(laplacian(g)), flip, add);
}

/// Number of eigenvalues equal to zero up to tol. For a Laplacian spectrum
/// this is the number of connected components.
inline int zero_eigenvalue_multiplicity(const Spectrum& s, double tol = 1e-6) {
    int count = 0;
    for (double lam : s.eigenvalues)
        if (std::abs(lam) <= tol) ++count;
    return count;
}

} // namespace dualprism
