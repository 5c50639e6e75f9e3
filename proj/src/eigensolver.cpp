#include "cfree/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "cfree/errors.hpp"

namespace cfree {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

void project_out(Matrix& x, const std::vector<Vector>& basis) {
  for (const Vector& d : basis) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) x.col(c) -= d.dot(x.col(c)) * d;
  }
}

}  // namespace

EigenResult top_eigen(const SymmetricApply& apply, std::size_t n, const EigenOptions& options) {
  const auto N = static_cast<Eigen::Index>(n);
  std::vector<Vector> basis;
  for (const auto& d : options.deflate) {
    if (d.size() != n) throw ParameterError("top_eigen: deflation vector has the wrong size");
    basis.emplace_back(Eigen::Map<const Vector>(d.data(), N));
  }
  const std::size_t free_dim = n > basis.size() ? n - basis.size() : 0;
  const auto b = static_cast<Eigen::Index>(std::min(std::max<std::size_t>(options.block, 1), free_dim));
  EigenResult result;
  result.vector.assign(n, 0.0);
  if (b == 0) return result;

  Rng rng(options.seed);
  Matrix x(N, b);
  for (Eigen::Index i = 0; i < N; ++i) x(i, 0) = 1.0 + 1e-3 * rng.normal();
  for (Eigen::Index c = 1; c < b; ++c) {
    for (Eigen::Index i = 0; i < N; ++i) x(i, c) = rng.normal();
  }

  Matrix q(N, b), y(N, b);
  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    project_out(x, basis);
    Eigen::HouseholderQR<Matrix> qr(x);
    q = qr.householderQ() * Matrix::Identity(N, b);
    project_out(q, basis);
    for (Eigen::Index c = 0; c < b; ++c) {
      apply(std::span<const double>(q.col(c).data(), n), std::span<double>(y.col(c).data(), n));
    }
    project_out(y, basis);
    Matrix h = q.transpose() * y;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Vector& theta = es.eigenvalues();
    Eigen::Index pick = b - 1;
    if (options.which == Which::largest_magnitude) {
      for (Eigen::Index i = 0; i < b; ++i) {
        if (std::abs(theta(i)) > std::abs(theta(pick))) pick = i;
      }
    }
    const Matrix z = q * es.eigenvectors();
    const Matrix az = y * es.eigenvectors();
    const double value = theta(pick);
    const double residual = (az.col(pick) - value * z.col(pick)).norm();
    if (residual <= std::max(options.rel_tol * std::abs(value), options.abs_tol)) {
      result.value = value;
      Vector v = z.col(pick);
      v.normalize();
      std::copy(v.data(), v.data() + N, result.vector.begin());
      result.residual = residual;
      result.iterations = iter;
      return result;
    }
    x = az;
    if (x.norm() == 0.0) x = z;
  }
  throw ConvergenceError("top_eigen: no convergence after " + std::to_string(options.max_iter) + " iterations");
}

}  // namespace cfree
