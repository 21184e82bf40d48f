#pragma once

#include <hartogs/hua.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <vector>

namespace hartogs {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// A point of a Cartan-Hartogs domain: one coordinate block per factor
/// (matrix-shaped for types I-III, a row vector for type IV and balls) plus
/// the fiber vector w.
struct DomainPoint {
  std::vector<ComplexMatrix> blocks;
  ComplexVector fiber;
};

namespace detail {

/// Deterministic, platform-independent generator (splitmix64).
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::complex<double> disc(double radius) {
    double r = radius * std::sqrt(uniform());
    double a = 2 * M_PI * uniform();
    return {r * std::cos(a), r * std::sin(a)};
  }
};

constexpr double kMembershipMargin = 1e-12;

inline void check_block_shape(const Domain& inv, const ComplexMatrix& z) {
  auto bad = [&](const std::string& why) {
    throw std::invalid_argument("block shape mismatch for " + inv.name() + ": " + why);
  };
  switch (inv.family) {
    case Family::I:
      if (z.rows() != inv.par_m || z.cols() != inv.par_n) bad("expected m x n matrix");
      break;
    case Family::II: {
      if (z.rows() != inv.par_n || z.cols() != inv.par_n) bad("expected n x n matrix");
      double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
      if (((z + z.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * scale) bad("expected skew-symmetric matrix");
      break;
    }
    case Family::III: {
      if (z.rows() != inv.par_n || z.cols() != inv.par_n) bad("expected n x n matrix");
      double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
      if (((z - z.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * scale) bad("expected symmetric matrix");
      break;
    }
    case Family::IV:
      if (z.rows() != 1 || z.cols() != inv.par_n) bad("expected row vector");
      break;
    default:
      throw std::invalid_argument("no point-level realization for " + inv.name());
  }
}

/// Eigenvalues of I - z z^dagger (Hermitian), ascending.
inline Eigen::VectorXd gram_complement_eigs(const ComplexMatrix& z) {
  ComplexMatrix a = ComplexMatrix::Identity(z.rows(), z.rows()) - z * z.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double type_iv_norm_value(const ComplexMatrix& z) {
  double nz = z.squaredNorm();
  std::complex<double> zzt = (z * z.transpose())(0, 0);
  return 1 - 2 * nz + std::norm(zzt);
}

}  // namespace detail

/// Strict membership test; the block must already have the family's shape.
inline bool contains(const Domain& inv, const ComplexMatrix& z) {
  detail::check_block_shape(inv, z);
  if (inv.family == Family::IV)
    return detail::type_iv_norm_value(z) > detail::kMembershipMargin &&
           z.squaredNorm() < 1 - detail::kMembershipMargin;
  return detail::gram_complement_eigs(z).minCoeff() > detail::kMembershipMargin;
}

/// Generic norm of the factor at z. Defined for types I-IV; 1 at the origin,
/// decreasing to 0 on the boundary. Throws outside the closure.
inline double generic_norm(const Domain& inv, const ComplexMatrix& z) {
  detail::check_block_shape(inv, z);
  if (inv.family == Family::IV) {
    if (z.squaredNorm() > 1 + detail::kMembershipMargin)
      throw std::domain_error("point outside the closure of " + inv.name());
    double value = detail::type_iv_norm_value(z);
    if (value < -detail::kMembershipMargin)
      throw std::domain_error("point outside the closure of " + inv.name());
    return value;
  }
  Eigen::VectorXd eigs = detail::gram_complement_eigs(z);
  if (eigs.minCoeff() < -detail::kMembershipMargin)
    throw std::domain_error("point outside the closure of " + inv.name());
  double det = 1;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) det *= std::max(eigs[i], 0.0);
  return inv.family == Family::II ? std::sqrt(det) : det;
}

/// prod_i N_i(z_i)^{mu_i}.
inline double norm_product(const CartanHartogs& spec, const DomainPoint& pt) {
  if (static_cast<int>(pt.blocks.size()) != spec.factor_count())
    throw std::invalid_argument("point has wrong number of blocks");
  double prod = 1;
  for (std::size_t i = 0; i < spec.factors.size(); ++i)
    prod *= std::pow(generic_norm(spec.factors[i], pt.blocks[i]), to_double(spec.mu[i]));
  return prod;
}

/// Global Kaehler potential Phi = -ln(prod N^mu - ||w||^2).
inline double phi_potential(const CartanHartogs& spec, const DomainPoint& pt) {
  double gap = norm_product(spec, pt) - pt.fiber.squaredNorm();
  if (gap <= 0) throw std::domain_error("point outside the Hartogs domain");
  return -std::log(gap);
}

/// The scalar X = 1 - ||w||^2 / prod N^mu in (0, 1]; the epsilon function
/// depends on position only through it.
inline double hartogs_scalar_X(const CartanHartogs& spec, const DomainPoint& pt) {
  return 1 - pt.fiber.squaredNorm() / norm_product(spec, pt);
}

/// Deterministic interior sample. Entries are drawn in discs small enough to
/// keep each block well inside its factor and the fiber well inside the
/// Hartogs bound; membership is still verified and re-drawn on failure.
inline DomainPoint sample_point(const CartanHartogs& spec, std::uint64_t seed) {
  detail::Rng rng(seed);
  DomainPoint pt;
  for (const Domain& inv : spec.factors) {
    ComplexMatrix z;
    double radius = 0;
    switch (inv.family) {
      case Family::I:
        z = ComplexMatrix::Zero(inv.par_m, inv.par_n);
        radius = 0.55 / std::sqrt(static_cast<double>(inv.par_m * inv.par_n));
        break;
      case Family::II:
      case Family::III:
        z = ComplexMatrix::Zero(inv.par_n, inv.par_n);
        radius = 0.55 / inv.par_n;
        break;
      case Family::IV:
        z = ComplexMatrix::Zero(1, inv.par_n);
        radius = 0.4 / std::sqrt(static_cast<double>(inv.par_n));
        break;
      default:
        throw std::invalid_argument("cannot sample points of " + inv.name());
    }
    bool ok = false;
    for (int attempt = 0; attempt < 500 && !ok; ++attempt) {
      switch (inv.family) {
        case Family::I:
        case Family::IV:
          for (Eigen::Index r = 0; r < z.rows(); ++r)
            for (Eigen::Index c = 0; c < z.cols(); ++c) z(r, c) = rng.disc(radius);
          break;
        case Family::II:
          for (int r = 0; r < inv.par_n; ++r)
            for (int c = r + 1; c < inv.par_n; ++c) {
              z(r, c) = rng.disc(radius);
              z(c, r) = -z(r, c);
            }
          break;
        case Family::III:
          for (int r = 0; r < inv.par_n; ++r)
            for (int c = r; c < inv.par_n; ++c) {
              z(r, c) = rng.disc(radius);
              z(c, r) = z(r, c);
            }
          break;
        default: break;
      }
      ok = contains(inv, z);
    }
    if (!ok) throw std::runtime_error("sample_point: rejection budget exhausted for " + inv.name());
    pt.blocks.push_back(std::move(z));
  }
  double bound = norm_product(spec, pt);
  double radius = 0.8 * std::sqrt(bound / spec.fiber_dim);
  pt.fiber = ComplexVector::Zero(spec.fiber_dim);
  for (int i = 0; i < spec.fiber_dim; ++i) pt.fiber[i] = rng.disc(radius);
  return pt;
}

namespace detail {

inline std::vector<double> difference_weights(const CartanHartogs& spec) {
  auto diffs = chi_tilde_differences(spec);
  Rational mu_prod = spec.mu_power_product();
  std::vector<double> w(diffs.size());
  Rational fact(1);
  for (std::size_t l = 0; l < diffs.size(); ++l) {
    if (l > 0) fact *= static_cast<int>(l);
    w[l] = to_double(diffs[l] / (fact * mu_prod));
  }
  return w;
}

}  // namespace detail

/// Epsilon function evaluated through its X-dependence only.
inline double epsilon_from_X(const CartanHartogs& spec, double alpha, double X) {
  int d = spec.base_dim(), d0 = spec.fiber_dim, n = spec.total_dim();
  std::vector<double> w = detail::difference_weights(spec);
  double rising = 1;  // (alpha - n)_{d0}
  for (int i = 0; i < d0; ++i) rising *= alpha - n + i;
  double acc = 0;
  for (int j = 0; j <= d; ++j) {
    if (j > 0) rising *= alpha - n + d0 + j - 1;  // now (alpha - n)_{d0 + j}
    acc += w[static_cast<std::size_t>(j)] * std::pow(X, d - j) * rising;
  }
  return acc;
}

/// Rawnsley epsilon function at a point. Rejects alpha strictly below the
/// threshold (the weighted Bergman space is trivial there).
inline double epsilon_eval(const CartanHartogs& spec, double alpha, const DomainPoint& pt) {
  if (alpha < to_double(spec.alpha_threshold()))
    throw std::domain_error("alpha below the Bergman-space threshold");
  return epsilon_from_X(spec, alpha, hartogs_scalar_X(spec, pt));
}

struct KernelValue {
  double phi = 0;
  double epsilon = 0;
  double kernel = 0;
  double X = 0;
};

/// Weighted Bergman kernel on the diagonal, together with the potential and
/// the epsilon value; kernel = epsilon * exp(alpha * phi) holds identically.
inline KernelValue bergman_kernel_diag(const CartanHartogs& spec, double alpha,
                                       const DomainPoint& pt) {
  if (alpha < to_double(spec.alpha_threshold()))
    throw std::domain_error("alpha below the Bergman-space threshold");
  KernelValue out;
  out.phi = phi_potential(spec, pt);
  out.X = hartogs_scalar_X(spec, pt);
  out.epsilon = epsilon_from_X(spec, alpha, out.X);

  int d = spec.base_dim(), d0 = spec.fiber_dim, n = spec.total_dim();
  std::vector<double> w = detail::difference_weights(spec);
  double norm_factor = 1;
  for (std::size_t i = 0; i < spec.factors.size(); ++i)
    norm_factor *= std::pow(generic_norm(spec.factors[i], pt.blocks[i]),
                            -to_double(spec.mu[i]) * alpha);
  double rising = 1;
  for (int i = 0; i < d0; ++i) rising *= alpha - n + i;
  double acc = 0;
  for (int j = 0; j <= d; ++j) {
    if (j > 0) rising *= alpha - n + d0 + j - 1;
    acc += w[static_cast<std::size_t>(j)] * rising * std::pow(out.X, -(alpha - d + j));
  }
  out.kernel = norm_factor * acc;
  return out;
}

/// det of the complex Hessian of Phi divided by the product of the factor
/// constants C_Omega, i.e. prod(mu_i^{d_i} N_i^{mu_i(d+1)-p_i}) over
/// (prod N^mu - ||w||^2)^(n+1). Strictly positive on the domain.
inline double monge_ampere_det(const CartanHartogs& spec, const DomainPoint& pt) {
  double gap = norm_product(spec, pt) - pt.fiber.squaredNorm();
  if (gap <= 0) throw std::domain_error("point outside the Hartogs domain");
  int d = spec.base_dim(), n = spec.total_dim();
  double num = 1;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    double mu = to_double(spec.mu[i]);
    double N = generic_norm(spec.factors[i], pt.blocks[i]);
    num *= std::pow(mu, spec.factors[i].dim) * std::pow(N, mu * (d + 1) - spec.factors[i].genus);
  }
  return num / std::pow(gap, n + 1);
}

namespace detail {

/// Adds delta to the q-th intrinsic coordinate of a factor block, mirroring
/// the symmetric/skew entry for types III/II.
inline void bump_block_coordinate(const Domain& inv, ComplexMatrix& z, int q,
                                  std::complex<double> delta) {
  switch (inv.family) {
    case Family::I:
    case Family::IV: {
      int cols = static_cast<int>(z.cols());
      z(q / cols, q % cols) += delta;
      return;
    }
    case Family::II: {
      int idx = 0;
      for (int r = 0; r < inv.par_n; ++r)
        for (int c = r + 1; c < inv.par_n; ++c, ++idx)
          if (idx == q) {
            z(r, c) += delta;
            z(c, r) -= delta;
            return;
          }
      break;
    }
    case Family::III: {
      int idx = 0;
      for (int r = 0; r < inv.par_n; ++r)
        for (int c = r; c < inv.par_n; ++c, ++idx)
          if (idx == q) {
            z(r, c) += delta;
            if (r != c) z(c, r) += delta;
            return;
          }
      break;
    }
    default: break;
  }
  throw std::logic_error("bump_block_coordinate: coordinate out of range");
}

/// Adds delta to global coordinate q of the point (base coordinates first,
/// fiber last).
inline void bump_coordinate(const CartanHartogs& spec, DomainPoint& pt, int q,
                            std::complex<double> delta) {
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    int di = spec.factors[i].dim;
    if (q < di) {
      bump_block_coordinate(spec.factors[i], pt.blocks[i], q, delta);
      return;
    }
    q -= di;
  }
  pt.fiber[q] += delta;
}

inline bool point_inside(const CartanHartogs& spec, const DomainPoint& pt) {
  for (std::size_t i = 0; i < spec.factors.size(); ++i)
    if (!contains(spec.factors[i], pt.blocks[i])) return false;
  return norm_product(spec, pt) - pt.fiber.squaredNorm() > 0;
}

}  // namespace detail

/// Central-difference complex Hessian d^2 Phi / dZ_a dZ_b-bar over the n
/// intrinsic coordinates. Step must be > 0 and the point at coordinate-wise
/// distance > 4*step from the boundary; Hermitian up to O(step^2).
inline ComplexMatrix hessian_fd_oracle(const CartanHartogs& spec, const DomainPoint& pt,
                                       double step) {
  if (step <= 0) throw std::invalid_argument("hessian_fd_oracle: step must be positive");
  int n = spec.total_dim();

  auto shifted_phi = [&](int a, std::complex<double> da, int b, std::complex<double> db) {
    DomainPoint moved = pt;
    detail::bump_coordinate(spec, moved, a, da);
    if (b >= 0) detail::bump_coordinate(spec, moved, b, db);
    return phi_potential(spec, moved);
  };

  // boundary proximity: +-4*step along every real axis must stay inside
  for (int a = 0; a < n; ++a) {
    for (std::complex<double> dir : {std::complex<double>(4 * step, 0),
                                     std::complex<double>(-4 * step, 0),
                                     std::complex<double>(0, 4 * step),
                                     std::complex<double>(0, -4 * step)}) {
      DomainPoint moved = pt;
      detail::bump_coordinate(spec, moved, a, dir);
      if (!detail::point_inside(spec, moved))
        throw std::domain_error("hessian_fd_oracle: point closer than 4*step to the boundary");
    }
  }

  double phi0 = phi_potential(spec, pt);
  double h2 = step * step;
  ComplexMatrix hess(n, n);
  std::complex<double> I(0, 1);
  for (int a = 0; a < n; ++a) {
    // d^2/dx^2 + d^2/dy^2 on coordinate a
    double dxx = (shifted_phi(a, {step, 0}, -1, {}) - 2 * phi0 + shifted_phi(a, {-step, 0}, -1, {})) / h2;
    double dyy = (shifted_phi(a, {0, step}, -1, {}) - 2 * phi0 + shifted_phi(a, {0, -step}, -1, {})) / h2;
    hess(a, a) = (dxx + dyy) / 4;
    for (int b = a + 1; b < n; ++b) {
      auto mixed = [&](std::complex<double> ea, std::complex<double> eb) {
        return (shifted_phi(a, ea, b, eb) - shifted_phi(a, ea, b, -eb) -
                shifted_phi(a, -ea, b, eb) + shifted_phi(a, -ea, b, -eb)) /
               (4 * h2);
      };
      double xx = mixed({step, 0}, {step, 0});
      double yy = mixed({0, step}, {0, step});
      double xy = mixed({step, 0}, {0, step});
      double yx = mixed({0, step}, {step, 0});
      hess(a, b) = (xx + yy + I * (xy - yx)) / 4.0;
      hess(b, a) = std::conj(hess(a, b));
    }
  }
  return hess;
}

/// The constant C_Omega = det of the Hessian of -ln N at the origin,
/// computed once per factor by central differences and cached (the cache is
/// safe for concurrent readers).
inline double domain_c_constant(const Domain& inv) {
  using Key = std::tuple<Family, int, int>;
  static std::shared_mutex mutex;
  static std::map<Key, double> cache;
  Key key{inv.family, inv.par_m, inv.par_n};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  ComplexMatrix zero;
  switch (inv.family) {
    case Family::I: zero = ComplexMatrix::Zero(inv.par_m, inv.par_n); break;
    case Family::II:
    case Family::III: zero = ComplexMatrix::Zero(inv.par_n, inv.par_n); break;
    case Family::IV: zero = ComplexMatrix::Zero(1, inv.par_n); break;
    default: throw std::invalid_argument("no numeric norm for " + inv.name());
  }
  const double step = 2e-4, h2 = step * step;
  int d = inv.dim;
  auto f = [&](int a, std::complex<double> da, int b, std::complex<double> db) {
    ComplexMatrix z = zero;
    detail::bump_block_coordinate(inv, z, a, da);
    if (b >= 0) detail::bump_block_coordinate(inv, z, b, db);
    return -std::log(generic_norm(inv, z));
  };
  ComplexMatrix hess(d, d);
  std::complex<double> I(0, 1);
  for (int a = 0; a < d; ++a) {
    double dxx = (f(a, {step, 0}, -1, {}) + f(a, {-step, 0}, -1, {})) / h2;
    double dyy = (f(a, {0, step}, -1, {}) + f(a, {0, -step}, -1, {})) / h2;
    hess(a, a) = (dxx + dyy) / 4;  // f(0) = 0
    for (int b = a + 1; b < d; ++b) {
      auto mixed = [&](std::complex<double> ea, std::complex<double> eb) {
        return (f(a, ea, b, eb) - f(a, ea, b, -eb) - f(a, -ea, b, eb) + f(a, -ea, b, -eb)) /
               (4 * h2);
      };
      double xx = mixed({step, 0}, {step, 0});
      double yy = mixed({0, step}, {0, step});
      double xy = mixed({step, 0}, {0, step});
      double yx = mixed({0, step}, {step, 0});
      hess(a, b) = (xx + yy + I * (xy - yx)) / 4.0;
      hess(b, a) = std::conj(hess(a, b));
    }
  }
  double det = hess.determinant().real();

  std::unique_lock lock(mutex);
  return cache.emplace(key, det).first->second;
}

}  // namespace hartogs
