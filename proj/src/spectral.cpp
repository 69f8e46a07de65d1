#include "entbound/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace entbound {

namespace {

// Fixed pseudo-random start vector so repeated runs are bit-identical.
Vector deterministic_start(Index dim) {
  std::uint64_t x = 0x9e3779b97f4a7c15ull;
  auto next = [&x]() {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return (z >> 11) * 0x1.0p-53;
  };
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = Complex(next() - 0.5, next() - 0.5);
  v /= v.norm();
  return v;
}

// Lanczos factorization with full reorthogonalization (fine at these sizes).
// After `steps` completed steps: alpha has `steps` entries, beta and basis
// have one more coupling/vector each unless the Krylov space closed early.
struct Lanczos {
  std::vector<Vector> basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  bool invariant = false;

  Index steps() const { return static_cast<Index>(alpha.size()); }
};

Lanczos build_lanczos(const HermitianOperator& op, const Vector& start, Index max_steps) {
  Lanczos f;
  f.basis.push_back(start / start.norm());
  for (Index j = 0; j < max_steps; ++j) {
    Vector w = op.apply(f.basis[j]);
    f.alpha.push_back(std::real(f.basis[j].dot(w)));
    w -= f.alpha[j] * f.basis[j];
    if (j > 0) w -= f.beta[j - 1] * f.basis[j - 1];
    for (const Vector& q : f.basis) w -= q.dot(w) * q;
    const double b = w.norm();
    if (b < 1e-12) {
      f.invariant = true;
      return f;
    }
    f.beta.push_back(b);
    f.basis.push_back(w / b);
  }
  return f;
}

Eigen::SelfAdjointEigenSolver<RealMatrix> solve_tridiagonal(const Lanczos& f) {
  const Index m = f.steps();
  RealMatrix t = RealMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    t(i, i) = f.alpha[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = f.beta[i];
  }
  return Eigen::SelfAdjointEigenSolver<RealMatrix>(t);
}

}  // namespace

namespace detail {

std::pair<double, Vector> lanczos_ground_state(const HermitianOperator& op,
                                               int max_iterations, double tolerance) {
  const Index dim = op.dim();
  if (dim == 1) {
    Vector v(1);
    v[0] = 1.0;
    return {std::real(op.to_dense()(0, 0)), v};
  }
  const double scale = std::max(1.0, op.norm_bound());
  const Vector start = deterministic_start(dim);
  const Index block = 24;
  for (Index size = block;; size += block) {
    const Index steps = std::min<Index>(size, dim);
    const Lanczos f = build_lanczos(op, start, steps);
    const auto solver = solve_tridiagonal(f);
    const double value = solver.eigenvalues()[0];
    const RealVector s = solver.eigenvectors().col(0);
    const Index m = f.steps();
    const double residual = f.invariant ? 0.0 : f.beta[m - 1] * std::abs(s[m - 1]);
    const bool last_chance = f.invariant || steps == dim || size + block > max_iterations;
    if (residual <= tolerance * scale || last_chance) {
      if (residual > 1e-6 * scale)
        throw std::runtime_error("lanczos_ground_state: did not converge");
      Vector ground = Vector::Zero(dim);
      for (Index j = 0; j < m; ++j) ground += s[j] * f.basis[j];
      ground /= ground.norm();
      return {value, ground};
    }
  }
}

Vector krylov_evolve(const HermitianOperator& op, const Vector& v, double time,
                     double tolerance) {
  const Index dim = op.dim();
  if (dim == 1) return v * std::exp(Complex(0, -1) * op.to_dense()(0, 0) * time);
  if (time == 0.0) return v;
  const double scale = std::max(1.0, op.norm_bound());
  int steps = std::max(1, static_cast<int>(std::ceil(std::abs(time) * scale / 8.0)));
  for (int attempt = 0; attempt < 8; ++attempt, steps *= 2) {
    const double dt = time / steps;
    Vector current = v;
    bool good = true;
    for (int s = 0; s < steps && good; ++s) {
      const Index max_steps = std::min<Index>(dim, 36);
      const Lanczos f = build_lanczos(op, current, max_steps);
      const auto solver = solve_tridiagonal(f);
      const Index k = f.steps();
      // exp(-i T dt) e_1 expressed in the Krylov basis, truncated to `size`.
      auto propagate = [&](Index size) {
        const RealMatrix& u = solver.eigenvectors();
        Vector small = Vector::Zero(k);
        for (Index i = 0; i < k; ++i) {
          const Complex phase = std::exp(Complex(0, -1) * solver.eigenvalues()[i] * dt);
          for (Index j = 0; j < k; ++j) small[j] += u(j, i) * phase * u(0, i);
        }
        Vector out = Vector::Zero(dim);
        for (Index j = 0; j < std::min(size, k); ++j) out += small[j] * f.basis[j];
        return out;
      };
      const Vector full = propagate(k);
      if (!f.invariant && k == max_steps && k > 6) {
        if ((full - propagate(k - 6)).norm() > tolerance) {
          good = false;
          break;
        }
      }
      current = current.norm() * full;
    }
    if (good) return current;
  }
  throw std::runtime_error("krylov_evolve: did not converge");
}

}  // namespace detail

std::pair<double, StateVector> ground_state(const HermitianOperator& op) {
  double value = 0.0;
  Vector vec;
  if (op.dim() < dense_spectral_limit) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.to_dense());
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("ground_state: eigensolver failed");
    value = solver.eigenvalues()[0];
    vec = solver.eigenvectors().col(0);
  } else {
    auto [v, ground] = detail::lanczos_ground_state(op);
    value = v;
    vec = std::move(ground);
  }
  const double residual = (op.apply(vec) - value * vec).norm();
  if (residual > 1e-8 * std::max(1.0, op.norm_bound()))
    throw std::runtime_error("ground_state: residual check failed");
  return {value, StateVector(std::move(vec))};
}

StateVector evolve(const HermitianOperator& op, const StateVector& psi, double time) {
  if (psi.dim() != op.dim())
    throw std::invalid_argument("evolve: state dimension does not match operator");
  Vector out;
  if (op.dim() < dense_spectral_limit) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.to_dense());
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("evolve: eigensolver failed");
    const Matrix& u = solver.eigenvectors();
    Vector phases(op.dim());
    for (Index i = 0; i < op.dim(); ++i)
      phases[i] = std::exp(Complex(0, -1) * solver.eigenvalues()[i] * time);
    out = u * phases.asDiagonal() * (u.adjoint() * psi.amplitudes());
  } else {
    out = detail::krylov_evolve(op, psi.amplitudes(), time);
  }
  return StateVector(std::move(out), psi.split());
}

}  // namespace entbound
