#include <doctest.h>

#include <cmath>
#include <random>

#include "dboltz/checks.hpp"
#include "dboltz/collision.hpp"
#include "dboltz/drift.hpp"
#include "dboltz/errors.hpp"

using namespace dboltz;

namespace {

const double kSqrt3 = std::sqrt(3.0);

DGField box_field(const Grid& g, int k) {
  const Profile box{[](double xi) { return std::abs(xi) <= kSqrt3 ? 0.5 / kSqrt3 : 0.0; }, {-kSqrt3, kSqrt3}};
  return project_initial(box, g, k, gauss_legendre(8));
}

// Random nonnegative-ish compactly supported field on the middle half.
DGField random_field(const Grid& g, int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DGField f(g, k);
  for (int j = g.n_cells() / 4; j < 3 * g.n_cells() / 4; ++j) {
    f.coeff(j, 0) = 0.5 + u(rng);
    for (int m = 1; m <= k; ++m) f.coeff(j, m) = 0.3 * (u(rng) - 0.5) / m;
  }
  return f;
}

CollisionWorkspace workspace(const Grid& g, int k, const ModelParams& p) {
  return build_workspace(g, k, gauss_legendre(default_quadrature_nodes(k, p.gamma())), p);
}

double second_moment(const DGField& f) {
  const double o[] = {2.0};
  return field_moments(f, o).moment(2.0);
}

}  // namespace

TEST_CASE("collision operator conserves mass and momentum") {
  std::mt19937_64 rng(3);
  for (const double gamma : {0.0, 0.5, 1.0, 2.0}) {
    const ModelParams p = ModelParams::make(gamma, 0.3);
    const Grid g(4.0, 24);
    const CollisionWorkspace ws = workspace(g, 2, p);
    const DGField f = random_field(g, 2, rng);
    const DGField q = collision_rhs(f, p, ws);
    const double scale = std::abs(brute_energy_dissipation(f, p, 12));
    CHECK(std::abs(field_mass(q)) < 1e-12 * (1.0 + scale));
    CHECK(std::abs(field_momentum(q)) < 1e-12 * (1.0 + scale));
  }
}

TEST_CASE("energy identity against a direct double quadrature") {
  std::mt19937_64 rng(11);
  for (const double gamma : {1.0, 2.0}) {
    const ModelParams p = ModelParams::make(gamma, 0.5);
    const Grid g(6.0, 32);
    const CollisionWorkspace ws = workspace(g, 2, p);
    for (int t = 0; t < 3; ++t) {
      const DGField f = random_field(g, 2, rng);
      const double lhs = second_moment(collision_rhs(f, p, ws));
      const double rhs = brute_energy_dissipation(f, p);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
    }
  }
  // Box initial datum, gamma = 1, a = 0.5.
  const ModelParams p = ModelParams::make(1.0, 0.5);
  const Grid g(20.0, 128);
  const DGField f = box_field(g, 2);
  const double lhs = second_moment(collision_rhs(f, p, workspace(g, 2, p)));
  CHECK(std::abs(lhs - brute_energy_dissipation(f, p)) <= 1e-8 * std::abs(lhs));
}

TEST_CASE("Maxwellian kernel: the loss rate is the mass") {
  const Grid g(10.0, 40);
  const DGField f = box_field(g, 2);
  for (const double lam : loss_frequency(f, 0.0)) CHECK(lam == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("loss frequency for the box profile") {
  // lambda(xi) = ∫ g(y)|xi - y| dy = (xi^2 + w^2) / (2 w) inside the box.
  const Grid g(4.0, 64);
  const DGField f = box_field(g, 2);
  const std::vector<double> lam = loss_frequency(f, 1.0, 12);
  for (int j = 0; j < g.n_cells(); ++j) {
    const double xi = g.center(j);
    if (std::abs(xi) > kSqrt3 - g.cell_width()) continue;
    CHECK(lam[j] == doctest::Approx((xi * xi + 3.0) / (2.0 * kSqrt3)).epsilon(1e-4));
  }
}

TEST_CASE("workspace entries, budget and threading") {
  const ModelParams p = ModelParams::make(1.0, 0.3);
  const Grid g(4.0, 16);
  const QuadratureRule quad = gauss_legendre(7);
  CollisionWorkspace ws = build_workspace(g, 2, quad, p);
  const PairEntry e = ws.entry(3, 9, 2, 5);
  CHECK(e.x == doctest::Approx(g.to_global(3, quad.nodes[2])));
  CHECK(e.y == doctest::Approx(g.to_global(9, quad.nodes[5])));
  CHECK(e.target_a == doctest::Approx(0.3 * e.x + 0.7 * e.y));
  CHECK(e.target_b == doctest::Approx(0.7 * e.x + 0.3 * e.y));
  CHECK(e.weight == doctest::Approx(quad.weights[2] * quad.weights[5] * std::abs(e.x - e.y)));
  CHECK(g.contains(e.target_a));
  CHECK(e.cell_a == g.locate(e.target_a));
  REQUIRE(e.basis_a.size() == 3);
  CHECK(e.basis_a[1] == doctest::Approx(g.to_local(e.cell_a, e.target_a)));
  CHECK(ws.table_bytes() > 0);

  CHECK_THROWS_AS(build_workspace(g, 2, quad, p, 1024), BudgetExceeded);

  std::mt19937_64 rng(5);
  const DGField f = random_field(g, 2, rng);
  const DGField serial = collision_rhs(f, p, ws);
  ws.set_threads(4);
  CHECK(collision_rhs(f, p, ws) == serial);
  CHECK(build_workspace(g, 2, quad, p) == build_workspace(g, 2, quad, p));
  CHECK_THROWS_AS(collision_rhs(DGField(Grid(4.0, 8), 2), p, ws), InvalidArgument);
}

TEST_CASE("drift term: moments of the transport part") {
  const ModelParams p = ModelParams::make(1.0, 0.5, 0.7);
  const Grid g(8.0, 64);
  // Shifted box, well inside the domain: exact moment rates are
  //   d/ds ∫ g = 0, d/ds ∫ xi g = c ∫ xi g, d/ds ∫ xi^2 g = 2c ∫ xi^2 g.
  const Profile shifted{[](double xi) { return std::abs(xi - 0.4) <= 1.0 ? 0.5 : 0.0; }, {-0.6, 1.4}};
  const DGField f = project_initial(shifted, g, 2, gauss_legendre(8));
  DGField rate = drift_rhs(f, p);
  for (double& v : rate.coeffs()) v = -v;
  CHECK(std::abs(field_mass(rate)) < 1e-13);
  CHECK(field_momentum(rate) == doctest::Approx(0.7 * field_momentum(f)).epsilon(1e-12));
  CHECK(second_moment(rate) == doctest::Approx(1.4 * second_moment(f)).epsilon(1e-12));

  const DGField zero = drift_rhs(f, p.with_drift(0.0));
  for (const double v : zero.coeffs()) CHECK(v == 0.0);
}

TEST_CASE("outflow at the boundary matches the boundary mass flux") {
  // ∫ d_s g = -c L (g(L) + g(-L)) for the transport part.
  const ModelParams p = ModelParams::make(1.0, 0.5, 1.0);
  const Grid g(1.0, 8);
  const DGField f = project_initial({[](double) { return 1.0; }, {}}, g, 1, gauss_legendre(4));
  const DGField rate = drift_rhs(f, p);
  CHECK(-field_mass(rate) == doctest::Approx(-2.0));
}

TEST_CASE("total right-hand side is collision minus drift") {
  const ModelParams p = ModelParams::make(1.0, 0.5, 0.25);
  const Grid g(6.0, 32);
  const DGField f = box_field(g, 2);
  const CollisionWorkspace ws = workspace(g, 2, p);
  const DGField total = rhs_total(f, p, ws);
  DGField expect = collision_rhs(f, p, ws);
  axpy(-1.0, drift_rhs(f, p), expect);
  CHECK(total == expect);
}
