#include "fermispec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fermispec/series_io.hpp"

namespace fermispec {

void Poly2::add(int i, int j, double c) {
  if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
  if (c == 0.0) return;
  auto key = std::array<int, 2>{i, j};
  auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Poly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

int Poly2::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1]);
  return d;
}

double Poly2::eval(const Eigen::Vector2d& x) const {
  double v = 0;
  for (const auto& [e, c] : terms_)
    v += c * std::pow(x[0], e[0]) * std::pow(x[1], e[1]);
  return v;
}

Poly2 Poly2::derivative(int var) const {
  Poly2 out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::array<int, 2> d = e;
    d[var] -= 1;
    out.add(d[0], d[1], c * e[var]);
  }
  return out;
}

Eigen::Vector2d Poly2::gradient(const Eigen::Vector2d& x) const {
  return {derivative(0).eval(x), derivative(1).eval(x)};
}

Eigen::Matrix2d Poly2::hessian(const Eigen::Vector2d& x) const {
  const Poly2 d0 = derivative(0), d1 = derivative(1);
  Eigen::Matrix2d h;
  h(0, 0) = d0.derivative(0).eval(x);
  h(0, 1) = d0.derivative(1).eval(x);
  h(1, 0) = h(0, 1);
  h(1, 1) = d1.derivative(1).eval(x);
  return h;
}

double Poly2::third_partial(int i, const Eigen::Vector2d& x) const {
  if (i < 0 || i > 3) throw std::invalid_argument("third_partial needs 0<=i<=3");
  Poly2 d = *this;
  for (int k = 0; k < i; ++k) d = d.derivative(0);
  for (int k = 0; k < 3 - i; ++k) d = d.derivative(1);
  return d.eval(x);
}

Poly2 Poly2::operator*(const Poly2& other) const {
  Poly2 out;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : other.terms_)
      out.add(ea[0] + eb[0], ea[1] + eb[1], ca * cb);
  return out;
}

Poly2& Poly2::operator+=(const Poly2& other) {
  for (const auto& [e, c] : other.terms_) add(e[0], e[1], c);
  return *this;
}

Poly2 Poly2::scaled(double s) const {
  Poly2 out;
  for (const auto& [e, c] : terms_) out.add(e[0], e[1], c * s);
  return out;
}

Poly2 Poly2::affine_substitute(const Eigen::Vector2d& origin,
                               const Eigen::Matrix2d& frame) const {
  // x_k = origin_k + frame(k,0) y1 + frame(k,1) y2
  std::array<Poly2, 2> image;
  for (int k = 0; k < 2; ++k) {
    image[k].add(0, 0, origin[k]);
    image[k].add(1, 0, frame(k, 0));
    image[k].add(0, 1, frame(k, 1));
  }
  Poly2 out;
  for (const auto& [e, c] : terms_) {
    Poly2 term;
    term.add(0, 0, c);
    for (int k = 0; k < 2; ++k)
      for (int p = 0; p < e[k]; ++p) term = term * image[k];
    out += term;
  }
  return out;
}

Poly2 Poly2::arg_scaled(const Eigen::Vector2d& inv_scale) const {
  Poly2 out;
  for (const auto& [e, c] : terms_)
    out.add(e[0], e[1],
            c * std::pow(inv_scale[0], e[0]) * std::pow(inv_scale[1], e[1]));
  return out;
}

Poly2 Poly2::homogeneous_part(int d) const {
  Poly2 out;
  for (const auto& [e, c] : terms_)
    if (e[0] + e[1] == d) out.add(e[0], e[1], c);
  return out;
}

PolyPotential make_potential(Poly2 v0, Poly2 v1) {
  PolyPotential p;
  p.v0 = std::move(v0);
  p.v1 = std::move(v1);
  p.max_total_degree = std::max(p.v0.total_degree(), p.v1.total_degree());
  return p;
}

PolyPotential fermi_example_potential(double gamma, double c) {
  Poly2 v0;
  v0.add(2, 0, 0.5);
  v0.add(0, 2, 2.0);
  v0.add(3, 0, 1.0);
  v0.add(1, 2, 0.5);
  v0.add(2, 1, gamma);
  v0.add(4, 0, 1.0);
  v0.add(0, 4, 1.0);
  Poly2 v1;
  v1.add(2, 0, 1.0);
  v1.add(0, 2, 2.0 * c);
  return make_potential(std::move(v0), std::move(v1));
}

PolyPotential fermi_example_quadratic(double c) {
  Poly2 v0;
  v0.add(2, 0, 0.5);
  v0.add(0, 2, 2.0);
  Poly2 v1;
  v1.add(2, 0, 1.0);
  v1.add(0, 2, 2.0 * c);
  return make_potential(std::move(v0), std::move(v1));
}

PolyPotential parse_potential_file(const std::string& text) {
  Poly2 v0, v1;
  Poly2* target = &v0;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string body = line.substr(first);
    while (!body.empty() && (body.back() == '\r' || body.back() == ' '))
      body.pop_back();
    if (body == "[eps]") {
      target = &v1;
      continue;
    }
    std::istringstream ls(body);
    int i, j;
    char colon;
    double c;
    if (!(ls >> i >> j >> colon >> c) || colon != ':')
      throw std::invalid_argument("potential file: bad line " +
                                  std::to_string(lineno) + ": " + line);
    target->add(i, j, c);
  }
  return make_potential(std::move(v0), std::move(v1));
}

std::string serialize_potential(const PolyPotential& p) {
  std::string out = "# i j : coeff\n";
  for (const auto& [e, c] : p.v0.terms())
    out += std::to_string(e[0]) + ' ' + std::to_string(e[1]) + " : " +
           format_double(c) + '\n';
  if (!p.v1.empty()) {
    out += "[eps]\n";
    for (const auto& [e, c] : p.v1.terms())
      out += std::to_string(e[0]) + ' ' + std::to_string(e[1]) + " : " +
             format_double(c) + '\n';
  }
  return out;
}

}  // namespace fermispec
