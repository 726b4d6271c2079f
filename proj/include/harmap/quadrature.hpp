#pragma once

#include "harmap/core.hpp"

#include <vector>

namespace harmap {

/// Quadrature rule on the reference simplex (unit interval, unit
/// triangle, unit tetrahedron). Points are stored in barycentric
/// coordinates; weights are normalized so that they sum to the
/// reference volume (1, 1/2, 1/6).
template <int Dim>
struct QuadratureRule {
  int exactness = 0;
  std::vector<Vec<Dim + 1>> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

namespace detail {

template <int Dim>
void push_orbit(QuadratureRule<Dim>& rule, const Vec<Dim + 1>& bary, double w) {
  // all distinct permutations of the barycentric tuple
  std::array<double, Dim + 1> p;
  for (int i = 0; i <= Dim; ++i) p[i] = bary[i];
  std::sort(p.begin(), p.end());
  do {
    Vec<Dim + 1> q;
    for (int i = 0; i <= Dim; ++i) q[i] = p[i];
    rule.points.push_back(q);
    rule.weights.push_back(w);
  } while (std::next_permutation(p.begin(), p.end()));
}

inline QuadratureRule<1> gauss_legendre_interval(int exactness) {
  // nodes/weights on [0,1]; barycentric = (1-x, x)
  QuadratureRule<1> r;
  r.exactness = exactness;
  std::vector<std::pair<double, double>> nw;
  if (exactness <= 1) {
    r.exactness = 1;
    nw = {{0.5, 1.0}};
  } else if (exactness <= 3) {
    r.exactness = 3;
    const double a = 0.5 / std::sqrt(3.0);
    nw = {{0.5 - a, 0.5}, {0.5 + a, 0.5}};
  } else if (exactness <= 5) {
    r.exactness = 5;
    const double a = 0.5 * std::sqrt(3.0 / 5.0);
    nw = {{0.5 - a, 5.0 / 18}, {0.5, 8.0 / 18}, {0.5 + a, 5.0 / 18}};
  } else {
    r.exactness = 7;
    const double t1 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double t2 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double w1 = (18.0 + std::sqrt(30.0)) / 72.0;
    const double w2 = (18.0 - std::sqrt(30.0)) / 72.0;
    nw = {{0.5 - 0.5 * t2, w2}, {0.5 - 0.5 * t1, w1}, {0.5 + 0.5 * t1, w1}, {0.5 + 0.5 * t2, w2}};
  }
  for (auto [x, w] : nw) {
    r.points.push_back(Vec<2>(1.0 - x, x));
    r.weights.push_back(w);
  }
  return r;
}

inline QuadratureRule<2> triangle_rule(int exactness) {
  QuadratureRule<2> r;
  const double V = 0.5;
  if (exactness <= 1) {
    r.exactness = 1;
    push_orbit(r, Vec<3>(1.0 / 3, 1.0 / 3, 1.0 / 3), V);
  } else if (exactness <= 2) {
    r.exactness = 2;
    push_orbit(r, Vec<3>(2.0 / 3, 1.0 / 6, 1.0 / 6), V / 3);
  } else if (exactness <= 4) {
    r.exactness = 4;
    push_orbit(r, Vec<3>(0.108103018168070, 0.445948490915965, 0.445948490915965), V * 0.223381589678011);
    push_orbit(r, Vec<3>(0.816847572980459, 0.091576213509771, 0.091576213509771), V * 0.109951743655322);
  } else if (exactness <= 5) {
    r.exactness = 5;
    push_orbit(r, Vec<3>(1.0 / 3, 1.0 / 3, 1.0 / 3), V * 0.225);
    push_orbit(r, Vec<3>(0.059715871789770, 0.470142064105115, 0.470142064105115), V * 0.132394152788506);
    push_orbit(r, Vec<3>(0.797426985353087, 0.101286507323456, 0.101286507323456), V * 0.125939180544827);
  } else if (exactness <= 6) {
    r.exactness = 6;
    push_orbit(r, Vec<3>(0.501426509658179, 0.249286745170910, 0.249286745170910), V * 0.116786275726379);
    push_orbit(r, Vec<3>(0.873821971016996, 0.063089014491502, 0.063089014491502), V * 0.050844906370207);
    push_orbit(r, Vec<3>(0.053145049844817, 0.310352451033784, 0.636502499121399), V * 0.082851075618374);
  } else {
    throw std::invalid_argument("triangle quadrature: exactness above 6 not tabulated");
  }
  return r;
}

inline QuadratureRule<3> tetrahedron_rule(int exactness) {
  QuadratureRule<3> r;
  const double V = 1.0 / 6;
  if (exactness <= 1) {
    r.exactness = 1;
    push_orbit(r, Vec<4>(0.25, 0.25, 0.25, 0.25), V);
  } else if (exactness <= 2) {
    r.exactness = 2;
    const double a = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
    const double b = (5.0 - std::sqrt(5.0)) / 20.0;
    push_orbit(r, Vec<4>(a, b, b, b), V / 4);
  } else if (exactness <= 5) {
    // 14-point rule, degree 5, positive weights
    r.exactness = 5;
    push_orbit(r, Vec<4>(0.0673422422100983, 0.3108859192633005, 0.3108859192633005, 0.3108859192633005),
               V * 0.1126879257180162);
    push_orbit(r, Vec<4>(0.7217942490673264, 0.0927352503108912, 0.0927352503108912, 0.0927352503108912),
               V * 0.0734930431163619);
    push_orbit(r, Vec<4>(0.4544962958743506, 0.4544962958743506, 0.0455037041256494, 0.0455037041256494),
               V * 0.0425460207770812);
  } else if (exactness <= 6) {
    // 24-point rule, degree 6, positive weights
    r.exactness = 6;
    push_orbit(r, Vec<4>(0.3561913862225449, 0.2146028712591517, 0.2146028712591517, 0.2146028712591517),
               V * 0.0399227502581679);
    push_orbit(r, Vec<4>(0.8779781243961660, 0.0406739585346113, 0.0406739585346113, 0.0406739585346113),
               V * 0.0100772110553207);
    push_orbit(r, Vec<4>(0.0329863295731731, 0.3223378901422757, 0.3223378901422757, 0.3223378901422757),
               V * 0.0553571815436544);
    push_orbit(r, Vec<4>(0.6030056647916491, 0.2696723314583159, 0.0636610018750175, 0.0636610018750175),
               V * 0.0482142857142857);
  } else {
    throw std::invalid_argument("tetrahedron quadrature: exactness above 6 not tabulated");
  }
  return r;
}

} // namespace detail

/// Smallest tabulated symmetric rule that integrates polynomials of the
/// requested total degree exactly on the reference simplex.
template <int Dim>
QuadratureRule<Dim> quadrature_rule(int exactness) {
  static_assert(Dim >= 1 && Dim <= 3);
  if (exactness < 0 || exactness > 7) throw std::invalid_argument("quadrature exactness out of range");
  if constexpr (Dim == 1) return detail::gauss_legendre_interval(exactness);
  if constexpr (Dim == 2) return detail::triangle_rule(exactness);
  return detail::tetrahedron_rule(exactness);
}

} // namespace harmap
