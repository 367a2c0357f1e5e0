#pragma once

// Limited-memory BFGS with Armijo backtracking, used by the fiducial
// and equiangular-line searches. Unconstrained; callers fold any
// normalization into the objective.

#include <Eigen/Dense>

#include <functional>

namespace qplex {

struct LbfgsOptions {
  int max_iters = 2000;
  int history = 10;
  double grad_tol = 1e-13;
  double f_tol = 0.0;  // stop when f drops below this
  double step_shrink = 0.5;
  double armijo_c = 1e-4;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iters = 0;
  bool converged = false;
};

inline LbfgsResult lbfgs_minimize(
    const std::function<double(const Eigen::VectorXd&)>& func,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
    Eigen::VectorXd x0, const LbfgsOptions& opt = {}) {
  using Eigen::VectorXd;
  const int n = static_cast<int>(x0.size());
  const int m = opt.history;

  std::vector<VectorXd> s_hist, y_hist;
  std::vector<double> rho_hist;

  VectorXd x = std::move(x0);
  double f = func(x);
  VectorXd g = grad(x);

  LbfgsResult res;
  for (int it = 0; it < opt.max_iters; ++it) {
    if (g.norm() <= opt.grad_tol || f <= opt.f_tol) {
      res.converged = true;
      res.iters = it;
      break;
    }

    // two-loop recursion
    VectorXd q = g;
    const int k = static_cast<int>(s_hist.size());
    std::vector<double> alpha(k);
    for (int i = k - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    if (k > 0) {
      double gamma = s_hist[k - 1].dot(y_hist[k - 1]) / y_hist[k - 1].squaredNorm();
      q *= gamma;
    }
    for (int i = 0; i < k; ++i) {
      double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    VectorXd dir = -q;
    double slope = g.dot(dir);
    if (slope >= 0.0) {  // not a descent direction; fall back to steepest
      dir = -g;
      slope = -g.squaredNorm();
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    // Armijo backtracking
    double step = 1.0;
    double f_new = f;
    VectorXd x_new = x;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * dir;
      f_new = func(x_new);
      if (f_new <= f + opt.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= opt.step_shrink;
    }
    if (!accepted) {
      res.iters = it;
      break;  // line search stalled at the noise floor
    }

    VectorXd g_new = grad(x_new);
    VectorXd s = x_new - x;
    VectorXd y = g_new - g;
    double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (static_cast<int>(s_hist.size()) == m) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
    }
    x = std::move(x_new);
    f = f_new;
    g = std::move(g_new);
    res.iters = it + 1;
  }
  res.x = std::move(x);
  res.f = f;
  (void)n;
  return res;
}

}  // namespace qplex
