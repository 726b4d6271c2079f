#include "harmap/mesh.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace harmap;

TEST_CASE("uniform mesh element and vertex counts", "[mesh]") {
  const auto m2 = build_uniform_mesh<2>(1);
  CHECK(m2.num_elements() == 8);
  CHECK(m2.num_vertices() == 9);

  const auto m3 = build_uniform_mesh<3>(1);
  CHECK(m3.num_elements() == 48);
  CHECK(m3.num_vertices() == 27);

  for (int r = 1; r <= 4; ++r) {
    CHECK(build_uniform_mesh<2>(r).num_elements() == std::size_t(2) << (2 * r));
    const auto m = build_uniform_mesh<3>(r);
    CHECK(m.num_elements() == std::size_t(6) << (3 * r));
    CHECK(m.num_vertices() == std::size_t(std::pow((1 << r) + 1, 3)));
  }
}

TEST_CASE("mesh construction rejects bad input", "[mesh]") {
  CHECK_THROWS_AS(build_uniform_mesh<2>(0), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh<2>(13), std::invalid_argument);
  // 3d at level 11 would need more than 2^31 vertices
  CHECK_THROWS_AS(build_uniform_mesh<3>(11), std::invalid_argument);
}

TEST_CASE("element diameter equals 2^-r sqrt(n)", "[mesh]") {
  CHECK(element_diameter(build_uniform_mesh<2>(2)) == Catch::Approx(0.25 * std::sqrt(2.0)).epsilon(0).margin(1e-12));
  CHECK(element_diameter(build_uniform_mesh<3>(1)) == Catch::Approx(std::sqrt(3.0) / 2).epsilon(0).margin(1e-12));
  for (int r = 1; r <= 3; ++r) {
    CHECK(element_diameter(build_uniform_mesh<2>(r)) ==
          Catch::Approx(std::ldexp(std::sqrt(2.0), -r)).epsilon(0).margin(1e-12));
    CHECK(element_diameter(build_uniform_mesh<3>(r)) ==
          Catch::Approx(std::ldexp(std::sqrt(3.0), -r)).epsilon(0).margin(1e-12));
  }
}

TEST_CASE("element volumes are positive and sum to one", "[mesh]") {
  for (int r = 1; r <= 3; ++r) {
    const auto check = [&](const auto& mesh) {
      double total = 0;
      for (Index e = 0; e < Index(mesh.num_elements()); ++e) {
        const double v = mesh.element_volume(e);
        REQUIRE(v > 0);
        total += v;
      }
      CHECK(total == Catch::Approx(1.0).epsilon(0).margin(1e-12));
    };
    check(build_uniform_mesh<2>(r));
    check(build_uniform_mesh<3>(r));
  }
}

TEST_CASE("boundary vertices are exactly those with a +-1/2 coordinate", "[mesh]") {
  const auto m = build_uniform_mesh<3>(2);
  std::size_t nb = 0;
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    bool expect = false;
    for (int d = 0; d < 3; ++d) expect |= std::abs(std::abs(m.vertices[v][d]) - 0.5) < 1e-12;
    CHECK(bool(m.boundary_vertex[v]) == expect);
    nb += m.boundary_vertex[v] ? 1 : 0;
  }
  // 5^3 lattice minus 3^3 interior lattice
  CHECK(nb == 125 - 27);
}

TEST_CASE("vertex lattices are nested across levels", "[mesh]") {
  const auto coarse = build_uniform_mesh<3>(2);
  const auto fine = build_uniform_mesh<3>(3);
  std::set<std::array<long, 3>> fine_pts;
  for (const auto& p : fine.vertices)
    fine_pts.insert({std::lround((p[0] + 0.5) * 1024), std::lround((p[1] + 0.5) * 1024), std::lround((p[2] + 0.5) * 1024)});
  for (const auto& p : coarse.vertices)
    CHECK(fine_pts.count({std::lround((p[0] + 0.5) * 1024), std::lround((p[1] + 0.5) * 1024),
                          std::lround((p[2] + 0.5) * 1024)}) == 1);
}

TEST_CASE("meshes are conforming: interior faces shared by exactly two elements", "[mesh]") {
  const auto m = build_uniform_mesh<3>(2);
  std::map<std::array<Index, 3>, int> faces;
  for (const auto& el : m.elements) {
    for (int skip = 0; skip < 4; ++skip) {
      std::array<Index, 3> f;
      int k = 0;
      for (int v = 0; v < 4; ++v)
        if (v != skip) f[k++] = el[v];
      std::sort(f.begin(), f.end());
      ++faces[f];
    }
  }
  for (const auto& [f, count] : faces) {
    REQUIRE(count <= 2);
    if (count == 1) {
      // boundary face: all three vertices on one boundary plane
      bool plane = false;
      for (int d = 0; d < 3; ++d)
        for (double s : {-0.5, 0.5})
          plane |= std::abs(m.vertices[f[0]][d] - s) < 1e-12 && std::abs(m.vertices[f[1]][d] - s) < 1e-12 &&
                   std::abs(m.vertices[f[2]][d] - s) < 1e-12;
      CHECK(plane);
    }
  }
}

TEST_CASE("locate_point basics", "[mesh]") {
  const auto m = build_uniform_mesh<2>(2);

  SECTION("vertex coordinate gives barycentric 1") {
    const auto [e, lam] = locate_point(m, m.vertices[5]);
    CHECK(lam.maxCoeff() == Catch::Approx(1.0).epsilon(0).margin(1e-12));
    bool found = false;
    for (int v = 0; v <= 2; ++v)
      if (m.elements[e][v] == 5 && lam[v] > 0.5) found = true;
    CHECK(found);
  }

  SECTION("barycenter of element 0") {
    Vec<2> c = Vec<2>::Zero();
    for (int v = 0; v <= 2; ++v) c += m.vertices[m.elements[0][v]];
    c /= 3;
    const auto [e, lam] = locate_point(m, c);
    CHECK(e == 0);
    for (int v = 0; v <= 2; ++v) CHECK(lam[v] == Catch::Approx(1.0 / 3).epsilon(0).margin(1e-12));
  }

  SECTION("outside the cube is a domain error") {
    CHECK_THROWS_AS(locate_point(m, Vec<2>(0.51, 0.0)), std::domain_error);
  }
}

namespace {

template <int Dim>
void locate_agrees_with_exhaustive_scan(int level, int npts, unsigned seed) {
  const auto m = build_uniform_mesh<Dim>(level);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (int it = 0; it < npts; ++it) {
    Vec<Dim> x;
    for (int d = 0; d < Dim; ++d) x[d] = U(rng);
    const auto [e, lam] = locate_point(m, x);
    REQUIRE(lam.minCoeff() >= -1e-10);
    CHECK(std::abs(lam.sum() - 1.0) < 1e-12);
    // reconstruction
    Vec<Dim> y = Vec<Dim>::Zero();
    for (int v = 0; v <= Dim; ++v) y += lam[v] * m.vertices[m.elements[e][v]];
    CHECK((y - x).norm() < 1e-12);
    // brute force: some element must contain x, and the reported one does
    bool any = false;
    for (Index ee = 0; ee < Index(m.num_elements()); ++ee)
      if (barycentric(m, ee, x).minCoeff() >= -1e-10) {
        any = true;
        break;
      }
    CHECK(any);
  }
}

} // namespace

TEST_CASE("locate_point agrees with exhaustive scan on random points", "[mesh]") {
  locate_agrees_with_exhaustive_scan<2>(3, 500, 101);
  locate_agrees_with_exhaustive_scan<3>(2, 500, 202);
}
