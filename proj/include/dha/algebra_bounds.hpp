#pragma once

#include <utility>

namespace dha {

/// Parameters of [tanh(aX), P] = i(a/cosh^2(aX) + b P^2 + d), in units hbar = 1, m = 1/2.
///
/// delta = 0 is accepted: it is the pure minimal-length sub-family and simply
/// yields zero lower bounds. Construction rejects beta*delta > 4, where the
/// algebra contradicts its own uncertainty relation.
class TanhAlgebra {
 public:
  TanhAlgebra(double alpha, double beta, double delta);

  /// Same as the constructor but skips the beta*delta <= 4 check, so that the
  /// consistency report can describe contradictory parameter sets too.
  static TanhAlgebra unchecked(double alpha, double beta, double delta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double delta() const { return delta_; }
  bool consistent() const { return beta_ * delta_ <= 4.0; }

 private:
  struct Unchecked {};
  TanhAlgebra(double alpha, double beta, double delta, Unchecked);

  double alpha_;
  double beta_;
  double delta_;
};

/// Parameters of [X, P] = i(1 + a X^4 + b P^2).
class QuarticAlgebra {
 public:
  QuarticAlgebra(double alpha, double beta);
  static QuarticAlgebra unchecked(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  bool consistent() const { return alpha_ * beta_ * beta_ <= 4.0; }

 private:
  struct Unchecked {};
  QuarticAlgebra(double alpha, double beta, Unchecked);

  double alpha_;
  double beta_;
};

enum class Criterion { paper, sharp };

struct ConsistencyReport {
  bool consistent;
  /// Distance to the boundary: 4 - beta*delta (4 - alpha*beta^2 for the quartic
  /// algebra), or 1 - beta*delta under the sharp criterion.
  double margin;
  Criterion criterion;
  /// margin == 0: consistent, but every window collapses to a point.
  bool degenerate;
};

ConsistencyReport check_consistency(const TanhAlgebra& algebra,
                                     Criterion criterion = Criterion::paper);
ConsistencyReport check_consistency(const QuarticAlgebra& algebra);

struct TanhWindow {
  double dp_min, dp_max;  // Delta P
  double p2_min, p2_max;  // <P^2>
  double dtanh_min;       // Delta tanh(aX)
  double dx_min;          // Delta X
};

struct QuarticWindow {
  double p2_max;   // <P^2>
  double dp2_min;  // (Delta P)^2
  double x2_max;   // <X^2>
  double dx2_min;  // (Delta X)^2
};

/// Throws InconsistentAlgebra if beta*delta > 4.
TanhWindow tanh_window(const TanhAlgebra& algebra);

/// Exact solution set of beta t^2 - 2t + delta <= 0 for t = Delta P.
/// Always nested in [delta/2, 2/beta]. Throws NoRealWindow if beta*delta > 1.
std::pair<double, double> tanh_sharp_momentum_window(const TanhAlgebra& algebra);

/// Throws InconsistentAlgebra if alpha*beta^2 > 4.
QuarticWindow quartic_window(const QuarticAlgebra& algebra);

/// Delta X_min = sqrt(beta) for [X, P] = i(1 + beta P^2). Throws
/// std::domain_error for beta <= 0.
double kempf_minimal_length(double beta);

}  // namespace dha
