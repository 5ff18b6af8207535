#include "gsee/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gsee/error.hpp"

namespace gsee {

ClassificationMetrics classification_metrics(const std::vector<bool>& predicted,
                                             const std::vector<bool>& truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::LengthMismatch, "predictions and labels differ in length");
  }
  ClassificationMetrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] && truth[i]) ++m.tp;
    else if (predicted[i] && !truth[i]) ++m.fp;
    else if (!predicted[i] && truth[i]) ++m.fn;
    else ++m.tn;
  }
  if (m.tp + m.fp > 0) m.precision = static_cast<double>(m.tp) / (m.tp + m.fp);
  else m.precision_undefined = true;
  if (m.tp + m.fn > 0) m.recall = static_cast<double>(m.tp) / (m.tp + m.fn);
  else m.recall_undefined = true;
  if (m.precision + m.recall > 0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f1_undefined = true;
  }
  if (!truth.empty()) m.accuracy = static_cast<double>(m.tp + m.tn) / truth.size();
  return m;
}

namespace {

Eigen::MatrixXd rbf_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double gamma) {
  const Eigen::VectorXd na = a.rowwise().squaredNorm();
  const Eigen::VectorXd nb = b.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = (-2.0 * a * b.transpose()).colwise() + na;
  d2.rowwise() += nb.transpose();
  return (-gamma * d2.cwiseMax(0.0)).array().exp().matrix();
}

// Dual C-SVC solver: min 1/2 a'Qa - e'a, 0 <= a <= C, y'a = 0,
// with Q_ij = y_i y_j K_ij held in full.
class SmoSolver {
 public:
  SmoSolver(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& y, double c, double tol)
      : k_(kernel), y_(y), c_(c), tol_(tol), n_(y.size()),
        alpha_(Eigen::VectorXd::Zero(n_)), grad_(Eigen::VectorXd::Constant(n_, -1.0)) {}

  long solve(long max_iter) {
    long iter = 0;
    Eigen::Index i = -1, j = -1;
    while (iter < max_iter && select(i, j)) {
      ++iter;
      step(i, j);
    }
    return iter;
  }

  const Eigen::VectorXd& alpha() const { return alpha_; }

  double rho() const {
    double ub = std::numeric_limits<double>::infinity();
    double lb = -ub;
    double sum_free = 0.0;
    int n_free = 0;
    for (Eigen::Index t = 0; t < n_; ++t) {
      const double yg = y_(t) * grad_(t);
      if (at_upper(t)) {
        if (y_(t) < 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else if (at_lower(t)) {
        if (y_(t) > 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else {
        ++n_free;
        sum_free += yg;
      }
    }
    return n_free > 0 ? sum_free / n_free : 0.5 * (ub + lb);
  }

 private:
  static constexpr double kTau = 1e-12;

  bool at_upper(Eigen::Index t) const { return alpha_(t) >= c_; }
  bool at_lower(Eigen::Index t) const { return alpha_(t) <= 0.0; }
  double q(Eigen::Index a, Eigen::Index b) const { return y_(a) * y_(b) * k_(a, b); }

  bool select(Eigen::Index& out_i, Eigen::Index& out_j) const {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    Eigen::Index imax = -1, jmin = -1;
    double obj_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n_; ++t) {
      if (y_(t) > 0) {
        if (!at_upper(t) && -grad_(t) >= gmax) { gmax = -grad_(t); imax = t; }
      } else {
        if (!at_lower(t) && grad_(t) >= gmax) { gmax = grad_(t); imax = t; }
      }
    }
    if (imax < 0) return false;
    const Eigen::Index i = imax;
    for (Eigen::Index t = 0; t < n_; ++t) {
      const double quad_base = k_(i, i) + k_(t, t) - 2.0 * k_(i, t);
      if (y_(t) > 0) {
        if (!at_lower(t)) {
          const double diff = gmax + grad_(t);
          gmax2 = std::max(gmax2, grad_(t));
          if (diff > 0) {
            const double quad = quad_base > 0 ? quad_base : kTau;
            const double obj = -diff * diff / quad;
            if (obj <= obj_min) { jmin = t; obj_min = obj; }
          }
        }
      } else {
        if (!at_upper(t)) {
          const double diff = gmax - grad_(t);
          gmax2 = std::max(gmax2, -grad_(t));
          if (diff > 0) {
            const double quad = quad_base > 0 ? quad_base : kTau;
            const double obj = -diff * diff / quad;
            if (obj <= obj_min) { jmin = t; obj_min = obj; }
          }
        }
      }
    }
    if (gmax + gmax2 < tol_ || jmin < 0) return false;
    out_i = i;
    out_j = jmin;
    return true;
  }

  void step(Eigen::Index i, Eigen::Index j) {
    const double old_ai = alpha_(i), old_aj = alpha_(j);
    double& ai = alpha_(i);
    double& aj = alpha_(j);
    if (y_(i) != y_(j)) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (-grad_(i) - grad_(j)) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0) {
        if (aj < 0) { aj = 0; ai = diff; }
      } else {
        if (ai < 0) { ai = 0; aj = -diff; }
      }
      if (diff > 0) {
        if (ai > c_) { ai = c_; aj = c_ - diff; }
      } else {
        if (aj > c_) { aj = c_; ai = c_ + diff; }
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (grad_(i) - grad_(j)) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c_) {
        if (ai > c_) { ai = c_; aj = sum - c_; }
      } else {
        if (aj < 0) { aj = 0; ai = sum; }
      }
      if (sum > c_) {
        if (aj > c_) { aj = c_; ai = sum - c_; }
      } else {
        if (ai < 0) { ai = 0; aj = sum; }
      }
    }
    const double dai = ai - old_ai, daj = aj - old_aj;
    for (Eigen::Index t = 0; t < n_; ++t) grad_(t) += q(i, t) * dai + q(j, t) * daj;
  }

  const Eigen::MatrixXd& k_;
  const Eigen::VectorXd& y_;
  double c_;
  double tol_;
  Eigen::Index n_;
  Eigen::VectorXd alpha_;
  Eigen::VectorXd grad_;
};

void check_labels(const Eigen::MatrixXd& x, const std::vector<bool>& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != x.rows()) {
    throw Error(ErrorCode::LengthMismatch, "labels and rows differ in count");
  }
  if (!x.allFinite()) throw Error(ErrorCode::NonFiniteInput, "SVM training data not finite");
}

}  // namespace

Eigen::VectorXd RbfSvm::decision(const Eigen::MatrixXd& x) const {
  if (support_vectors.rows() == 0) return Eigen::VectorXd::Constant(x.rows(), -rho);
  if (x.cols() != support_vectors.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "query has " + std::to_string(x.cols()) +
                                                  " columns, model expects " +
                                                  std::to_string(support_vectors.cols()));
  }
  return (rbf_kernel(x, support_vectors, gamma) * coef).array() - rho;
}

RbfSvm svm_train(const Eigen::MatrixXd& x, const std::vector<bool>& labels,
                 const SvmParams& params) {
  check_labels(x, labels);
  const Eigen::Index n = x.rows();
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = labels[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
  const Eigen::MatrixXd kernel = rbf_kernel(x, x, params.gamma);
  SmoSolver solver(kernel, y, params.c, params.tol);

  RbfSvm svm;
  svm.gamma = params.gamma;
  svm.c = params.c;
  svm.iterations = solver.solve(std::max(params.max_iter, 100 * static_cast<long>(n)));
  svm.rho = solver.rho();
  std::vector<Eigen::Index> sv;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (solver.alpha()(i) > 0) sv.push_back(i);
  }
  svm.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), x.cols());
  svm.coef.resize(static_cast<Eigen::Index>(sv.size()));
  for (std::size_t s = 0; s < sv.size(); ++s) {
    svm.support_vectors.row(static_cast<Eigen::Index>(s)) = x.row(sv[s]);
    svm.coef(static_cast<Eigen::Index>(s)) = y(sv[s]) * solver.alpha()(sv[s]);
  }
  return svm;
}

double PlattScaling::operator()(double decision) const {
  const double f = a * decision + b;
  return f >= 0 ? std::exp(-f) / (1.0 + std::exp(-f)) : 1.0 / (1.0 + std::exp(f));
}

// Newton's method with backtracking on the regularized-target log loss.
PlattScaling platt_fit(const Eigen::VectorXd& decision, const std::vector<bool>& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != decision.size()) {
    throw Error(ErrorCode::LengthMismatch, "decision values and labels differ in count");
  }
  const auto n = decision.size();
  double prior1 = 0, prior0 = 0;
  for (bool l : labels) (l ? prior1 : prior0) += 1;
  const double hi = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo = 1.0 / (prior0 + 2.0);
  std::vector<double> target(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) target[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(i)] ? hi : lo;

  constexpr int kMaxIter = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;
  constexpr double kEps = 1e-5;

  auto objective = [&](double a, double b) {
    double f = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = target[static_cast<std::size_t>(i)];
      const double z = decision(i) * a + b;
      f += z >= 0 ? t * z + std::log1p(std::exp(-z)) : (t - 1) * z + std::log1p(std::exp(z));
    }
    return f;
  };

  double a = 0.0;
  double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
  double fval = objective(a, b);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double h11 = kSigma, h22 = kSigma, h21 = 0, g1 = 0, g2 = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = decision(i) * a + b;
      double p, q;
      if (z >= 0) {
        p = std::exp(-z) / (1.0 + std::exp(-z));
        q = 1.0 / (1.0 + std::exp(-z));
      } else {
        p = 1.0 / (1.0 + std::exp(z));
        q = std::exp(z) / (1.0 + std::exp(z));
      }
      const double d2 = p * q;
      h11 += decision(i) * decision(i) * d2;
      h22 += d2;
      h21 += decision(i) * d2;
      const double d1 = target[static_cast<std::size_t>(i)] - p;
      g1 += decision(i) * d1;
      g2 += d1;
    }
    if (std::abs(g1) < kEps && std::abs(g2) < kEps) break;
    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    while (step >= kMinStep) {
      const double na = a + step * da, nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) break;
  }
  return PlattScaling{a, b};
}

std::vector<int> stratified_folds(const std::vector<bool>& labels, int k, std::uint64_t seed) {
  std::vector<int> fold(labels.size(), 0);
  std::mt19937_64 rng(seed);
  int offset = 0;
  for (bool cls : {true, false}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) idx.push_back(i);
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t n = 0; n < idx.size(); ++n) {
      fold[idx[n]] = static_cast<int>((n + static_cast<std::size_t>(offset)) % static_cast<std::size_t>(k));
    }
    // Continue dealing where the first class stopped to balance fold sizes.
    offset = static_cast<int>((idx.size() + static_cast<std::size_t>(offset)) % static_cast<std::size_t>(k));
  }
  return fold;
}

Eigen::VectorXd SvmModel::decision(const Eigen::MatrixXd& x) const {
  if (x.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "query has " + std::to_string(x.cols()) +
                                                  " columns, model expects " + std::to_string(dim));
  }
  return svm.decision(x);
}

namespace {

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& x, const std::vector<Eigen::Index>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = x.row(rows[r]);
  return out;
}

struct FoldRun {
  std::vector<ClassificationMetrics> per_fold;
  Eigen::VectorXd out_of_fold;
  double mean_f1 = 0.0;
};

FoldRun cross_validate(const Eigen::MatrixXd& x, const std::vector<bool>& labels,
                       const std::vector<int>& folds, int k, const SvmParams& params) {
  FoldRun run;
  run.out_of_fold = Eigen::VectorXd::Zero(x.rows());
  for (int f = 0; f < k; ++f) {
    std::vector<Eigen::Index> train, test;
    std::vector<bool> train_labels, test_labels;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const bool l = labels[static_cast<std::size_t>(i)];
      if (folds[static_cast<std::size_t>(i)] == f) {
        test.push_back(i);
        test_labels.push_back(l);
      } else {
        train.push_back(i);
        train_labels.push_back(l);
      }
    }
    if (test.empty()) continue;
    const RbfSvm svm = svm_train(select_rows(x, train), train_labels, params);
    const Eigen::VectorXd dec = svm.decision(select_rows(x, test));
    std::vector<bool> predicted(test.size());
    for (std::size_t t = 0; t < test.size(); ++t) {
      run.out_of_fold(test[t]) = dec(static_cast<Eigen::Index>(t));
      predicted[t] = dec(static_cast<Eigen::Index>(t)) > 0;
    }
    run.per_fold.push_back(classification_metrics(predicted, test_labels));
    run.mean_f1 += run.per_fold.back().f1;
  }
  if (!run.per_fold.empty()) run.mean_f1 /= static_cast<double>(run.per_fold.size());
  return run;
}

}  // namespace

SvmModel svm_fit_cv(const Eigen::MatrixXd& x, const std::vector<bool>& labels,
                    const CvOptions& options) {
  check_labels(x, labels);
  const auto n_pos = std::count(labels.begin(), labels.end(), true);
  const auto n_neg = static_cast<long>(labels.size()) - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorCode::SingleClass, "training labels contain a single class");
  }
  if (options.folds < 2 || x.rows() < options.folds) {
    throw Error(ErrorCode::TooFewSamples, std::to_string(x.rows()) + " rows cannot fill " +
                                              std::to_string(options.folds) + " folds");
  }

  std::vector<double> gammas = options.gamma_grid;
  if (gammas.empty()) gammas = {0.01, 0.1, 1.0, 1.0 / static_cast<double>(x.cols())};

  const std::vector<int> folds = stratified_folds(labels, options.folds, options.seed);
  SvmModel model;
  model.dim = x.cols();
  FoldRun best;
  double best_f1 = -1.0;
  SvmParams best_params;
  for (double c : options.c_grid) {
    for (double g : gammas) {
      SvmParams params{c, g, options.tol};
      FoldRun run = cross_validate(x, labels, folds, options.folds, params);
      model.grid.push_back({c, g, run.mean_f1});
      if (run.mean_f1 > best_f1) {
        best_f1 = run.mean_f1;
        best = std::move(run);
        best_params = params;
      }
    }
  }

  model.svm = svm_train(x, labels, best_params);
  model.cv_metrics = best.per_fold;
  std::vector<bool> oof_pred(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) oof_pred[i] = best.out_of_fold(static_cast<Eigen::Index>(i)) > 0;
  model.cv_pooled = classification_metrics(oof_pred, labels);
  model.platt = platt_fit(best.out_of_fold, labels);

  const Eigen::VectorXd dec = model.svm.decision(x);
  std::vector<bool> train_pred(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) train_pred[i] = dec(static_cast<Eigen::Index>(i)) > 0;
  model.training_accuracy = classification_metrics(train_pred, labels).accuracy;

  model.degenerate = true;
  for (Eigen::Index r = 1; r < x.rows() && model.degenerate; ++r) {
    if (x.row(r) != x.row(0)) model.degenerate = false;
  }
  return model;
}

Eigen::VectorXd predict_proba(const SvmModel& model, const Eigen::MatrixXd& x) {
  const Eigen::VectorXd dec = model.decision(x);
  Eigen::VectorXd p(dec.size());
  for (Eigen::Index i = 0; i < dec.size(); ++i) p(i) = model.platt(dec(i));
  return p;
}

}  // namespace gsee
