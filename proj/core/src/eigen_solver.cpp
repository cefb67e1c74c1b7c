#include "tilekit/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace tilekit {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}
double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
void scale(Vec& a, double s) {
  for (double& v : a) v *= s;
}

EigenPairs denseSolve(std::int64_t dim, const std::function<void(const double*, double*)>& apply,
                      int k) {
  Eigen::MatrixXd H(dim, dim);
  Vec e(dim, 0.0), col(dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    e[j] = 1.0;
    apply(e.data(), col.data());
    for (std::int64_t i = 0; i < dim; ++i) H(i, j) = col[i];
    e[j] = 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  EigenPairs out;
  for (int i = 0; i < k && i < dim; ++i) {
    out.values.push_back(es.eigenvalues()(i));
    Vec v(dim);
    for (std::int64_t r = 0; r < dim; ++r) v[r] = es.eigenvectors()(r, i);
    out.vectors.push_back(std::move(v));
  }
  for (int i = 0; i < (int)out.values.size(); ++i) {
    Vec r(dim);
    apply(out.vectors[i].data(), r.data());
    axpy(-out.values[i], out.vectors[i], r);
    out.residuals.push_back(norm(r));
  }
  return out;
}

}  // namespace

EigenPairs lowestEigenpairs(std::int64_t dim,
                            const std::function<void(const double*, double*)>& apply, int k,
                            const EigenOptions& opts) {
  if (k < 1) throw std::invalid_argument("lowestEigenpairs: k >= 1");
  if (dim <= opts.denseCutoff) return denseSolve(dim, apply, k);

  // Thick-restart Lanczos.  `basis` holds the retained vectors; the small
  // projected matrix starts as diag(ritz) with an arrow border after each
  // restart and grows tridiagonally within a sweep.
  const int m = std::max(opts.maxBasis, k + 12);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Vec> basis;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, m + 1);
  int kept = 0;  // locked Ritz directions at the front of `basis`

  Vec v(dim);
  for (auto& x : v) x = gauss(rng);
  scale(v, 1.0 / norm(v));
  basis.push_back(v);

  Vec w(dim);
  EigenPairs out;
  int iterations = 0;

  auto reorth = [&](Vec& x) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) axpy(-dot(b, x), b, x);
  };

  for (int restart = 0; restart < opts.maxRestarts; ++restart) {
    // extend with Lanczos steps until the basis holds m vectors plus the
    // residual direction
    while ((int)basis.size() <= m) {
      int j = (int)basis.size() - 1;
      apply(basis[j].data(), w.data());
      ++iterations;
      // subtract projections recorded in T's column j (arrow + tridiagonal)
      for (int i = 0; i <= j; ++i)
        if (T(i, j) != 0.0) axpy(-T(i, j), basis[i], w);
      double alpha = dot(basis[j], w);
      axpy(-alpha, basis[j], w);
      T(j, j) += alpha;
      reorth(w);
      double beta = norm(w);
      if (beta < 1e-14) {
        // invariant subspace; restart with a fresh random direction
        for (auto& x : w) x = gauss(rng);
        reorth(w);
        beta = norm(w);
      }
      T(j, j + 1) = T(j + 1, j) = beta;
      Vec next = w;
      scale(next, 1.0 / beta);
      basis.push_back(std::move(next));
    }

    // Ritz pairs of the leading m x m block
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T.topLeftCorner(m, m));
    const auto& theta = es.eigenvalues();
    const auto& S = es.eigenvectors();
    double betaM = T(m - 1, m);

    int want = std::min(k + 6, m - 2);
    // residual estimates for the k requested pairs
    bool converged = true;
    for (int i = 0; i < k; ++i)
      if (std::abs(betaM * S(m - 1, i)) > opts.tol * 0.1) converged = false;

    // rotate the basis into the kept Ritz vectors plus the residual vector
    std::vector<Vec> newBasis;
    int keepCount = converged ? k : want;
    for (int i = 0; i < keepCount; ++i) {
      Vec y(dim, 0.0);
      for (int j = 0; j < m; ++j) axpy(S(j, i), basis[j], y);
      newBasis.push_back(std::move(y));
    }
    Vec resider = basis[m];
    basis = std::move(newBasis);
    kept = (int)basis.size();

    T.setZero();
    for (int i = 0; i < kept; ++i) {
      T(i, i) = theta(i);
      T(i, kept) = T(kept, i) = betaM * S(m - 1, i);
    }
    basis.push_back(std::move(resider));

    if (converged) {
      out.iterations = iterations;
      for (int i = 0; i < k; ++i) {
        out.values.push_back(theta(i));
        out.vectors.push_back(basis[i]);
      }
      // true residuals
      for (int i = 0; i < k; ++i) {
        apply(out.vectors[i].data(), w.data());
        axpy(-out.values[i], out.vectors[i], w);
        out.residuals.push_back(norm(w));
      }
      bool ok = true;
      for (double r : out.residuals)
        if (r > opts.tol) ok = false;
      if (ok) return out;
      out = EigenPairs{};  // keep iterating
    }
  }
  throw ResourceError("lowestEigenpairs: no convergence within the restart cap");
}

EigenPairs lowestEigenpairs(const SparseOperator& h, int k, const EigenOptions& opts) {
  return lowestEigenpairs(
      h.dim, [&h](const double* x, double* y) { h.apply(x, y); }, k, opts);
}

}  // namespace tilekit
