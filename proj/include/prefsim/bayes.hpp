#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include <Eigen/Dense>

#include "prefsim/core.hpp"

namespace prefsim {

/// Standard normal CDF.
template <typename Scalar>
Scalar gaussian_cdf(Scalar x) {
  using std::erfc;
  using std::sqrt;
  return Scalar(0.5) * erfc(-x / sqrt(Scalar(2)));
}

/// Binary entropy in bits, with 0 log 0 = 0.
template <typename Scalar>
Scalar binary_entropy(Scalar p) {
  using std::log2;
  if (!(p >= Scalar(0) && p <= Scalar(1))) throw PreconditionError("binary_entropy needs p in [0, 1]");
  if (p == Scalar(0) || p == Scalar(1)) return Scalar(0);
  return -p * log2(p) - (Scalar(1) - p) * log2(Scalar(1) - p);
}

/// sqrt(pi * ln 2 / 2), the width matching h(Phi(x)) ~ exp(-x^2 / (pi ln 2)).
template <typename Scalar>
Scalar bald_constant() {
  using std::sqrt;
  return sqrt(std::numbers::pi_v<Scalar> * std::numbers::ln2_v<Scalar> / Scalar(2));
}

/// Closed-form BALD information score of a probit-link query whose latent
/// value has posterior mean mu and variance sigma2:
///
///   h(Phi(mu / sqrt(sigma2 + 1))) - C exp(-mu^2 / (2 (sigma2 + C^2))) / sqrt(sigma2 + C^2)
///
/// The second term approximates the expected conditional entropy and can
/// exceed the first by up to ~3e-3 bits near sigma2 = 0, so the result is
/// clamped to [0, 1]. NaN inputs score 0.
template <typename Scalar>
Scalar bald_score(Scalar mu, Scalar sigma2) {
  using std::abs;
  using std::exp;
  using std::sqrt;
  if (std::isnan(mu) || std::isnan(sigma2)) return Scalar(0);
  sigma2 = std::max(sigma2, Scalar(0));
  mu = abs(mu);  // the score is even in mu; folding keeps it exactly so
  const Scalar c = bald_constant<Scalar>();
  const Scalar c2 = c * c;
  const Scalar marginal = binary_entropy(gaussian_cdf(mu / sqrt(sigma2 + Scalar(1))));
  const Scalar conditional = c * exp(-mu * mu / (Scalar(2) * (sigma2 + c2))) / sqrt(sigma2 + c2);
  return std::clamp(marginal - conditional, Scalar(0), Scalar(1));
}

struct ArdOptions {
  double tolerance = 1e-4;  // max relative change of alpha and beta
  int max_iterations = 300;
  double alpha_min = 1e-6;
  double alpha_max = 1e6;
  // Gamma(shape, rate) hyperpriors on every alpha_i and on beta.
  double prior_shape = 1.0;
  double prior_rate = 1.0;
  /// Add 1/beta to the predictive variance.
  bool predictive_includes_noise = false;
};

template <typename Scalar>
struct ArdPosteriorT {
  using VectorS = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using MatrixS = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  VectorS mean;
  MatrixS covariance;
  VectorS alpha;  // per-feature prior precisions
  Scalar beta = Scalar(1);  // noise precision
  int iterations = 0;
  bool converged = false;
  bool include_noise = false;
};

using ArdPosterior = ArdPosteriorT<double>;

template <typename Scalar>
struct PredictiveMomentsT {
  Scalar mu = Scalar(0);
  Scalar sigma2 = Scalar(0);
};

using PredictiveMoments = PredictiveMomentsT<double>;

/// Gaussian posterior for fixed hyperparameters:
///   Sigma = (diag(alpha) + beta Z'Z)^-1,  m = beta Sigma Z'y
template <typename Scalar, typename DerivedZ, typename DerivedY, typename DerivedA>
ArdPosteriorT<Scalar> ard_posterior(const Eigen::MatrixBase<DerivedZ>& z,
                                    const Eigen::MatrixBase<DerivedY>& y,
                                    const Eigen::MatrixBase<DerivedA>& alpha, Scalar beta) {
  using MatrixS = typename ArdPosteriorT<Scalar>::MatrixS;
  const Eigen::Index d = z.cols();
  MatrixS precision = beta * (z.transpose() * z);
  precision.diagonal() += alpha;
  ArdPosteriorT<Scalar> post;
  post.covariance = precision.llt().solve(MatrixS::Identity(d, d));
  post.covariance = Scalar(0.5) * (post.covariance + post.covariance.transpose()).eval();
  post.mean = beta * (post.covariance * (z.transpose() * y));
  post.alpha = alpha;
  post.beta = beta;
  return post;
}

/// Evidence maximization for linear ARD regression of y on z. Each round
/// recomputes the posterior, then applies the MAP fixed-point updates
///   gamma_i = 1 - alpha_i Sigma_ii
///   alpha_i = (gamma_i + 2(shape-1)) / (m_i^2 + 2 rate)
///   beta    = (n - sum gamma + 2(shape-1)) / (|y - Z m|^2 + 2 rate)
/// The returned posterior is consistent with the returned alpha and beta.
template <typename Scalar, typename DerivedZ, typename DerivedY>
ArdPosteriorT<Scalar> fit_ard(const Eigen::MatrixBase<DerivedZ>& z,
                              const Eigen::MatrixBase<DerivedY>& y, const ArdOptions& options) {
  using std::abs;
  using VectorS = typename ArdPosteriorT<Scalar>::VectorS;
  const Eigen::Index n = z.rows();
  const Eigen::Index d = z.cols();
  if (n == 0) throw PreconditionError("fit_ard needs a non-empty history");
  if (y.size() != n) throw StructuralError("fit_ard: z and y row counts differ");
  if (!z.allFinite() || !y.allFinite()) throw NumericError("fit_ard: non-finite input");

  const Scalar lo = Scalar(options.alpha_min);
  const Scalar hi = Scalar(options.alpha_max);
  const Scalar shape_term = Scalar(2) * (Scalar(options.prior_shape) - Scalar(1));
  const Scalar rate_term = Scalar(2) * Scalar(options.prior_rate);

  VectorS alpha = VectorS::Ones(d);
  Scalar beta = Scalar(1);
  int iterations = 0;
  bool converged = false;
  while (iterations < options.max_iterations) {
    ++iterations;
    const auto post = ard_posterior(z, y, alpha, beta);
    VectorS gamma = VectorS::Ones(d) - alpha.cwiseProduct(post.covariance.diagonal());
    VectorS next_alpha(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const Scalar m2 = post.mean[i] * post.mean[i];
      next_alpha[i] = std::clamp((gamma[i] + shape_term) / (m2 + rate_term), lo, hi);
    }
    const Scalar rss = (y - z * post.mean).squaredNorm();
    const Scalar dof = Scalar(n) - gamma.sum() + shape_term;
    const Scalar next_beta = std::clamp(dof / (rss + rate_term), lo, hi);

    Scalar change = abs(next_beta - beta) / beta;
    for (Eigen::Index i = 0; i < d; ++i) change = std::max(change, abs(next_alpha[i] - alpha[i]) / alpha[i]);
    alpha = next_alpha;
    beta = next_beta;
    if (change < Scalar(options.tolerance)) {
      converged = true;
      break;
    }
  }
  auto post = ard_posterior(z, y, alpha, beta);
  post.iterations = iterations;
  post.converged = converged;
  post.include_noise = options.predictive_includes_noise;
  return post;
}

/// fit_ard over labeled comparisons: y = 2r - 1 regressed on z = left - right.
ArdPosterior fit_ard(std::span<const LabeledComparison> history, const ArdOptions& options = {});

/// Latent predictive moments at feature difference z: mu = m'z, sigma2 = z' Sigma z
/// (plus 1/beta when the posterior was fit with predictive_includes_noise).
template <typename Scalar, typename Derived>
PredictiveMomentsT<Scalar> predictive(const ArdPosteriorT<Scalar>& post,
                                      const Eigen::MatrixBase<Derived>& z) {
  if (z.size() != post.mean.size()) throw StructuralError("predictive: dimension mismatch");
  PredictiveMomentsT<Scalar> out;
  out.mu = post.mean.dot(z);
  out.sigma2 = std::max(Scalar(0), z.dot(post.covariance * z));
  if (post.include_noise) out.sigma2 += Scalar(1) / post.beta;
  return out;
}

}  // namespace prefsim
