#pragma once

#include "harmap/core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace harmap {

/// Uniform simplicial triangulation of the cube (-1/2,1/2)^Dim at
/// refinement level r. The triangulation is conforming, covers the cube
/// exactly, and every element lies inside a single cell of the
/// (2^r)^Dim lattice, which makes point location a constant-time
/// cell lookup.
///
/// Construction: per-square Kuhn split in 2d. In 3d the level-1 grid is
/// the 48-tet Kuhn triangulation and finer grids arise by recursive
/// octasection (four corner tets plus an octahedron cut along its
/// shortest interior diagonal). The two constructions coincide in 2d;
/// in 3d the octasection hierarchy is what uniform refinement of the
/// coarse grid produces, and it is *not* the per-cube Kuhn mesh for
/// r >= 2.
template <int Dim>
struct SimplicialMesh {
  static_assert(Dim == 2 || Dim == 3, "only 2d and 3d domains");

  using Point = Vec<Dim>;
  using Element = std::array<Index, Dim + 1>;

  int level = 0;
  std::vector<Point> vertices;
  std::vector<Element> elements;
  std::vector<char> boundary_vertex;
  // elements overlapping each lattice cell, simplices_per_cell() entries per cell
  std::vector<Index> cell_table;

  static constexpr int simplices_per_cell() { return Dim == 2 ? 2 : 6; }
  int cells_per_axis() const { return 1 << level; }
  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_elements() const { return elements.size(); }

  double mesh_size() const { return std::ldexp(std::sqrt(double(Dim)), -level); }

  Mat<Dim, Dim> edge_matrix(Index e) const {
    Mat<Dim, Dim> J;
    const auto& el = elements[e];
    for (int c = 0; c < Dim; ++c) J.col(c) = vertices[el[c + 1]] - vertices[el[0]];
    return J;
  }

  double element_volume(Index e) const {
    const double f = Dim == 2 ? 2.0 : 6.0;
    return edge_matrix(e).determinant() / f;
  }
};

namespace detail {

inline bool on_boundary_coord(double c) { return std::abs(std::abs(c) - 0.5) <= 1e-12; }

template <int Dim>
bool is_boundary_point(const Vec<Dim>& x) {
  for (int d = 0; d < Dim; ++d)
    if (on_boundary_coord(x[d])) return true;
  return false;
}

inline SimplicialMesh<2> build_mesh_2d(int level) {
  SimplicialMesh<2> m;
  m.level = level;
  const int L = 1 << level;
  const auto vid = [L](int i, int j) { return Index(j * (L + 1) + i); };
  m.vertices.reserve(std::size_t(L + 1) * (L + 1));
  for (int j = 0; j <= L; ++j)
    for (int i = 0; i <= L; ++i)
      m.vertices.push_back(Vec<2>(double(i) / L - 0.5, double(j) / L - 0.5));
  m.elements.reserve(std::size_t(2) * L * L);
  for (int j = 0; j < L; ++j)
    for (int i = 0; i < L; ++i) {
      const Index v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      m.elements.push_back({v00, v10, v11});
      m.elements.push_back({v00, v11, v01});
    }
  return m;
}

inline SimplicialMesh<3> build_mesh_3d(int level) {
  // level-1 Kuhn base: 6 permutation-chain tets per cube, 8 cubes,
  // orientation corrected at this level only
  std::vector<Vec<3>> verts;
  const int L0 = 2;
  const auto vid0 = [L0](int i, int j, int k) { return Index((k * (L0 + 1) + j) * (L0 + 1) + i); };
  for (int k = 0; k <= L0; ++k)
    for (int j = 0; j <= L0; ++j)
      for (int i = 0; i <= L0; ++i)
        verts.push_back(Vec<3>(double(i) / L0 - 0.5, double(j) / L0 - 0.5, double(k) / L0 - 0.5));

  std::vector<std::array<Index, 4>> tets;
  constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int k = 0; k < L0; ++k)
    for (int j = 0; j < L0; ++j)
      for (int i = 0; i < L0; ++i)
        for (const auto& s : perms) {
          int c[3] = {i, j, k};
          std::array<Index, 4> t;
          t[0] = vid0(c[0], c[1], c[2]);
          for (int d = 0; d < 3; ++d) {
            ++c[s[d]];
            t[d + 1] = vid0(c[0], c[1], c[2]);
          }
          Mat<3, 3> J;
          for (int cc = 0; cc < 3; ++cc) J.col(cc) = verts[t[cc + 1]] - verts[t[0]];
          if (J.determinant() < 0) std::swap(t[2], t[3]);
          tets.push_back(t);
        }

  // recursive octasection up to the requested level. Child vertex order
  // matters: it fixes the diagonal choices of the next level.
  for (int r = 1; r < level; ++r) {
    std::vector<std::array<Index, 4>> fine;
    fine.reserve(tets.size() * 8);
    const std::int64_t nv = std::int64_t(verts.size());
    // unique edges, sorted; midpoint ids follow the existing vertices
    std::vector<std::int64_t> keys;
    keys.reserve(tets.size() * 6);
    for (const auto& t : tets)
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          Index u = t[a], v = t[b];
          if (u > v) std::swap(u, v);
          keys.push_back(std::int64_t(u) * nv + v);
        }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    const auto midpoint_id = [&](Index a, Index b) -> Index {
      if (a > b) std::swap(a, b);
      const std::int64_t key = std::int64_t(a) * nv + b;
      const auto it = std::lower_bound(keys.begin(), keys.end(), key);
      return Index(nv + (it - keys.begin()));
    };
    for (const auto key : keys) {
      const Index a = Index(key / nv), b = Index(key % nv);
      verts.push_back(0.5 * (verts[std::size_t(a)] + verts[std::size_t(b)]));
    }

    for (const auto& t : tets) {
      const Index m01 = midpoint_id(t[0], t[1]), m02 = midpoint_id(t[0], t[2]), m03 = midpoint_id(t[0], t[3]);
      const Index m12 = midpoint_id(t[1], t[2]), m13 = midpoint_id(t[1], t[3]), m23 = midpoint_id(t[2], t[3]);
      fine.push_back({t[0], m01, m02, m03});
      fine.push_back({m01, t[1], m12, m13});
      fine.push_back({m02, m12, t[2], m23});
      fine.push_back({m03, m13, m23, t[3]});
      // octahedron: shortest interior diagonal, ties broken in fixed order
      const Vec<3> d0 = 0.5 * (verts[t[0]] + verts[t[3]]) - 0.5 * (verts[t[1]] + verts[t[2]]); // (03|12)
      const Vec<3> d1 = 0.5 * (verts[t[0]] + verts[t[1]]) - 0.5 * (verts[t[2]] + verts[t[3]]); // (01|23)
      const Vec<3> d2 = 0.5 * (verts[t[0]] + verts[t[2]]) - 0.5 * (verts[t[1]] + verts[t[3]]); // (02|13)
      const double l0 = d0.squaredNorm(), l1 = d1.squaredNorm(), l2 = d2.squaredNorm();
      int diag = 0;
      double best = l0;
      if (l1 < best - 1e-24) { best = l1; diag = 1; }
      if (l2 < best - 1e-24) { best = l2; diag = 2; }
      if (diag == 0) {
        fine.push_back({m03, m12, m01, m02});
        fine.push_back({m03, m12, m02, m23});
        fine.push_back({m03, m12, m23, m13});
        fine.push_back({m03, m12, m13, m01});
      } else if (diag == 1) {
        fine.push_back({m01, m02, m23, m12});
        fine.push_back({m01, m02, m03, m23});
        fine.push_back({m01, m12, m13, m23});
        fine.push_back({m01, m03, m13, m23});
      } else {
        fine.push_back({m01, m02, m03, m13});
        fine.push_back({m01, m02, m12, m13});
        fine.push_back({m02, m03, m13, m23});
        fine.push_back({m02, m12, m13, m23});
      }
    }
    tets = std::move(fine);
  }

  // renumber lexicographically by (z,y,x) lattice index
  SimplicialMesh<3> m;
  m.level = level;
  const int L = 1 << level;
  std::vector<Index> perm(verts.size());
  {
    std::vector<std::int64_t> lat(verts.size());
    for (std::size_t v = 0; v < verts.size(); ++v) {
      std::int64_t idx = 0;
      for (int d = 2; d >= 0; --d) {
        const double u = (verts[v][d] + 0.5) * L;
        const auto i = std::int64_t(std::llround(u));
        idx = idx * (L + 1) + i;
      }
      lat[v] = idx;
    }
    std::vector<Index> order(verts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return lat[a] < lat[b]; });
    for (std::size_t i = 0; i < order.size(); ++i) perm[std::size_t(order[i])] = Index(i);
    m.vertices.resize(verts.size());
    for (std::size_t v = 0; v < verts.size(); ++v) m.vertices[std::size_t(perm[v])] = verts[v];
  }
  m.elements.reserve(tets.size());
  for (auto t : tets) {
    for (auto& v : t) v = perm[std::size_t(v)];
    Mat<3, 3> J;
    for (int c = 0; c < 3; ++c) J.col(c) = m.vertices[t[c + 1]] - m.vertices[t[0]];
    if (J.determinant() < 0) std::swap(t[2], t[3]);
    m.elements.push_back(t);
  }
  return m;
}

} // namespace detail

/// Builds the uniform triangulation of (-1/2,1/2)^dim at the given level.
/// Throws std::invalid_argument for unsupported dimension or level, and
/// when the vertex/element count would overflow the 32-bit index type.
template <int Dim>
SimplicialMesh<Dim> build_uniform_mesh(int level) {
  if (level < 1 || level > 12) throw std::invalid_argument("mesh level must be in [1,12]");
  {
    const std::int64_t n_per_axis = (std::int64_t(1) << level) + 1;
    std::int64_t nv = 1;
    for (int d = 0; d < Dim; ++d) nv *= n_per_axis;
    const std::int64_t ne = (Dim == 2 ? 2 : 6) * (std::int64_t(1) << (Dim * level));
    if (nv > std::numeric_limits<Index>::max() || ne > std::numeric_limits<Index>::max())
      throw std::invalid_argument("mesh level overflows 32-bit indices");
  }

  SimplicialMesh<Dim> m;
  if constexpr (Dim == 2)
    m = detail::build_mesh_2d(level);
  else
    m = detail::build_mesh_3d(level);

  m.boundary_vertex.resize(m.vertices.size());
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    m.boundary_vertex[v] = detail::is_boundary_point<Dim>(m.vertices[v]);

  // cell -> elements table (every element lies in exactly one cell)
  const int L = m.cells_per_axis();
  const int spc = SimplicialMesh<Dim>::simplices_per_cell();
  std::int64_t ncells = 1;
  for (int d = 0; d < Dim; ++d) ncells *= L;
  m.cell_table.assign(std::size_t(ncells) * spc, -1);
  std::vector<int> fill(std::size_t(ncells), 0);
  for (std::size_t e = 0; e < m.elements.size(); ++e) {
    Vec<Dim> c = Vec<Dim>::Zero();
    for (int v = 0; v <= Dim; ++v) c += m.vertices[m.elements[e][v]];
    c /= (Dim + 1);
    std::int64_t cell = 0;
    for (int d = Dim - 1; d >= 0; --d) {
      int i = int(std::floor((c[d] + 0.5) * L));
      i = std::clamp(i, 0, L - 1);
      cell = cell * L + i;
    }
    if (fill[std::size_t(cell)] >= spc) throw std::logic_error("mesh cell table overflow");
    m.cell_table[std::size_t(cell) * spc + fill[std::size_t(cell)]++] = Index(e);
  }
  for (int f : fill)
    if (f != spc) throw std::logic_error("mesh cell table underfull");
  return m;
}

/// Maximal element diameter (longest edge over all elements).
template <int Dim>
double element_diameter(const SimplicialMesh<Dim>& mesh) {
  double d2 = 0;
  for (const auto& el : mesh.elements)
    for (int a = 0; a <= Dim; ++a)
      for (int b = a + 1; b <= Dim; ++b)
        d2 = std::max(d2, (mesh.vertices[el[a]] - mesh.vertices[el[b]]).squaredNorm());
  return std::sqrt(d2);
}

/// Barycentric coordinates of x in element e.
template <int Dim>
Vec<Dim + 1> barycentric(const SimplicialMesh<Dim>& mesh, Index e, const Vec<Dim>& x) {
  const Mat<Dim, Dim> J = mesh.edge_matrix(e);
  const Vec<Dim> xi = J.inverse() * (x - mesh.vertices[mesh.elements[e][0]]);
  Vec<Dim + 1> lam;
  lam[0] = 1.0 - xi.sum();
  lam.template tail<Dim>() = xi;
  return lam;
}

/// Locates a point of the closed cube: returns the containing element and
/// its barycentric coordinates there. Constant-time via the lattice cell
/// table. Points outside the closed cube raise std::domain_error.
template <int Dim>
std::pair<Index, Vec<Dim + 1>> locate_point(const SimplicialMesh<Dim>& mesh, const Vec<Dim>& x) {
  for (int d = 0; d < Dim; ++d)
    if (std::abs(x[d]) > 0.5 + 1e-12) throw std::domain_error("locate_point: point outside domain");

  const int L = mesh.cells_per_axis();
  std::int64_t cell = 0;
  for (int d = Dim - 1; d >= 0; --d) {
    int i = int(std::floor((x[d] + 0.5) * L));
    i = std::clamp(i, 0, L - 1);
    cell = cell * L + i;
  }
  const int spc = SimplicialMesh<Dim>::simplices_per_cell();
  Index best = -1;
  double best_min = -std::numeric_limits<double>::infinity();
  Vec<Dim + 1> best_lam = Vec<Dim + 1>::Zero();
  for (int s = 0; s < spc; ++s) {
    const Index e = mesh.cell_table[std::size_t(cell) * spc + s];
    const Vec<Dim + 1> lam = barycentric(mesh, e, x);
    const double mn = lam.minCoeff();
    if (mn > best_min) {
      best_min = mn;
      best = e;
      best_lam = lam;
    }
    if (mn >= 0) break;
  }
  if (best_min < -1e-10) {
    // point sits on a cell boundary and rounding put it in the wrong cell;
    // search the neighbouring cells
    for (int d = 0; d < Dim; ++d) {
      for (int off : {-1, 1}) {
        Vec<Dim> y = x;
        y[d] += off * 0.5 / L;
        if (std::abs(y[d]) > 0.5) continue;
        std::int64_t c2 = 0;
        for (int dd = Dim - 1; dd >= 0; --dd) {
          int i = int(std::floor((y[dd] + 0.5) * L));
          i = std::clamp(i, 0, L - 1);
          c2 = c2 * L + i;
        }
        for (int s = 0; s < spc; ++s) {
          const Index e = mesh.cell_table[std::size_t(c2) * spc + s];
          const Vec<Dim + 1> lam = barycentric(mesh, e, x);
          const double mn = lam.minCoeff();
          if (mn > best_min) {
            best_min = mn;
            best = e;
            best_lam = lam;
          }
        }
      }
    }
  }
  if (best_min < -1e-10) throw std::logic_error("locate_point: no containing element found");
  return {best, best_lam};
}

} // namespace harmap
