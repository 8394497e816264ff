#include "sonine/product_rule.hpp"

#include <cmath>
#include <string>

#include "sonine/error.hpp"

namespace sonine {
namespace {

void check_beta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("product weights: beta must lie in (0,1], got " + std::to_string(beta));
}

// integral_{far-h}^{far} sigma^(beta-1) (sigma - near) d sigma.
double first_moment(double near, double far, double beta, double mass) {
  const double h = far - near;
  const double x = h / far;
  if (near == 0.0) return std::pow(far, beta + 1.0) / (beta + 1.0);
  if (x > 0.5) {
    const double upper = (std::pow(far, beta + 1.0) - std::pow(near, beta + 1.0)) / (beta + 1.0);
    return upper - near * mass;
  }
  // far^(beta+1) * sum_k q_k x^(k+2) / ((k+1)(k+2)), q_k = prod_{m<=k} (m - beta)/m.
  double q = 1.0;
  double xp = x * x;
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      q *= (static_cast<double>(k) - beta) / static_cast<double>(k);
      xp *= x;
    }
    const double term = q * xp / ((k + 1.0) * (k + 2.0));
    sum += term;
    if (term <= 1e-18 * sum) break;
  }
  return std::pow(far, beta + 1.0) * sum;
}

}  // namespace

double singular_panel_mass(double near, double far, double beta) {
  check_beta(beta);
  if (!(far > near && near >= 0.0)) throw DomainError("singular panel needs 0 <= near < far");
  if (near == 0.0) return std::pow(far, beta) / beta;
  const double x = (far - near) / far;
  return -std::pow(far, beta) * std::expm1(beta * std::log1p(-x)) / beta;
}

PanelWeights singular_panel_weights(double near, double far, double beta) {
  const double mass = singular_panel_mass(near, far, beta);
  const double h = far - near;
  // Hat of the far node is (sigma - near)/h.
  const double far_w = first_moment(near, far, beta, mass) / h;
  return {mass - far_w, far_w};
}

std::vector<double> product_weights(const Mesh& mesh, std::size_t i, double beta) {
  check_beta(beta);
  if (i < 1 || i > mesh.intervals()) throw DomainError("product weights: node index out of range");
  std::vector<double> w(i + 1, 0.0);
  const double ti = mesh[i];
  for (std::size_t j = 0; j < i; ++j) {
    // sigma = t_i - s: node t_{j+1} is the near end, t_j the far end.
    const PanelWeights pw = singular_panel_weights(ti - mesh[j + 1], ti - mesh[j], beta);
    w[j] += pw.far_node;
    w[j + 1] += pw.near_node;
  }
  return w;
}

std::vector<double> product_weights_constant(const Mesh& mesh, std::size_t i, double beta) {
  check_beta(beta);
  if (i < 1 || i > mesh.intervals()) throw DomainError("product weights: node index out of range");
  std::vector<double> w(i + 1, 0.0);
  const double ti = mesh[i];
  for (std::size_t j = 0; j < i; ++j) w[j] = singular_panel_mass(ti - mesh[j + 1], ti - mesh[j], beta);
  return w;
}

std::vector<double> left_singular_weights(const std::vector<double>& nodes, double beta) {
  check_beta(beta);
  if (nodes.size() < 2) throw DomainError("left-singular weights need at least one panel");
  std::vector<double> w(nodes.size(), 0.0);
  const double origin = nodes.front();
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    const PanelWeights pw = singular_panel_weights(nodes[j] - origin, nodes[j + 1] - origin, beta);
    w[j] += pw.near_node;
    w[j + 1] += pw.far_node;
  }
  return w;
}

}  // namespace sonine
