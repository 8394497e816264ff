#include "sonine/singular_rule.hpp"

#include <cmath>

#include "sonine/error.hpp"

namespace sonine {

struct SingularRule::Piece {
  std::size_t panel;  // mesh panel [t_j, t_{j+1}] the piece belongs to
  double t;           // row endpoint t_i
  double lo;
  double hi;
  bool near_zero;  // lo == 0
  bool near_end;   // hi == t_i
};

SingularRule::SingularRule(Mesh mesh, double right_exponent, double left_exponent, int order)
    : mesh_(std::move(mesh)), right_(right_exponent), left_(left_exponent) {
  if (!(right_ >= 0.0 && right_ < 1.0) || !(left_ >= 0.0 && left_ < 1.0))
    throw DomainError("singular rule exponents must lie in [0,1)");
  plain_ = gauss_legendre(order);
  at_end_ = gauss_jacobi(order, -right_, 0.0);
  at_zero_ = gauss_jacobi(order, 0.0, -left_);
  both_ = gauss_jacobi(order, -right_, -left_);
}

const QuadratureRule& SingularRule::rule_for(bool near_zero, bool near_end) const {
  if (near_zero && near_end) return both_;
  if (near_end) return at_end_;
  if (near_zero) return at_zero_;
  return plain_;
}

void SingularRule::row(std::size_t i, const std::function<double(double)>& right_regular,
                       std::vector<double>& out) const {
  if (i < 1 || i > mesh_.intervals()) throw DomainError("singular rule: row index out of range");
  out.assign(i + 1, 0.0);
  const double t = mesh_[i];
  for (std::size_t j = 0; j < i; ++j) {
    const Piece piece{j, t, mesh_[j], mesh_[j + 1], j == 0, j + 1 == i};
    integrate(piece, right_regular, out, 0);
  }
}

void SingularRule::integrate(const Piece& p, const std::function<double(double)>& R, std::vector<double>& out,
                             int depth) const {
  const double width = p.hi - p.lo;
  const bool split_left = !p.near_zero && left_ > 0.0 && p.lo < width;
  const bool split_right = !p.near_end && (p.t - p.hi) < width;
  if ((split_left || split_right) && depth < 60) {
    const double mid = 0.5 * (p.lo + p.hi);
    integrate({p.panel, p.t, p.lo, mid, p.near_zero, false}, R, out, depth + 1);
    integrate({p.panel, p.t, mid, p.hi, false, p.near_end}, R, out, depth + 1);
    return;
  }

  const QuadratureRule& rule = rule_for(p.near_zero, p.near_end);
  // Jacobi weight (hi - y)^a (y - lo)^b contributes width^(1 + a + b).
  const double a = p.near_end ? -right_ : 0.0;
  const double b = p.near_zero ? -left_ : 0.0;
  const double scale = (a == 0.0 && b == 0.0) ? width : std::pow(width, 1.0 + a + b);

  const double y0 = mesh_[p.panel];
  const double h = mesh_[p.panel + 1] - y0;
  double left_acc = 0.0;
  double right_acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double s = rule.nodes[k];
    const double y = p.near_zero ? width * s : p.lo + width * s;
    const double tau = p.near_end ? width * (1.0 - s) : p.t - y;
    double f = R(tau);
    if (!p.near_end && right_ > 0.0) f *= std::pow(tau, -right_);
    if (!p.near_zero && left_ > 0.0) f *= std::pow(y, -left_);
    const double wf = rule.weights[k] * f;
    const double lam = (y - y0) / h;
    left_acc += wf * (1.0 - lam);
    right_acc += wf * lam;
  }
  out[p.panel] += scale * left_acc;
  out[p.panel + 1] += scale * right_acc;
}

}  // namespace sonine
