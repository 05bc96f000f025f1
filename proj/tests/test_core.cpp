#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dboltz/dg_field.hpp"
#include "dboltz/errors.hpp"
#include "dboltz/grid.hpp"
#include "dboltz/moments.hpp"
#include "dboltz/params.hpp"
#include "dboltz/quadrature.hpp"

using namespace dboltz;

namespace {

const double kSqrt3 = std::sqrt(3.0);

Profile box() {
  return {[](double xi) { return std::abs(xi) <= kSqrt3 ? 0.5 / kSqrt3 : 0.0; }, {-kSqrt3, kSqrt3}};
}

double m1(double xi) { return 2.0 / (std::numbers::pi * (1.0 + xi * xi) * (1.0 + xi * xi)); }

}  // namespace

TEST_CASE("model parameters validate and default the drift") {
  const ModelParams p0 = ModelParams::make(0.0, 0.3);
  CHECK(p0.drift_coeff() == doctest::Approx(0.21));
  CHECK(ModelParams::make(1.0, 0.3).drift_coeff() == 1.0);
  CHECK(ModelParams::make(1.0, 0.5, 0.25).drift_coeff() == 0.25);
  CHECK(p0.b() == doctest::Approx(0.7));
  // 1 - a^2 - b^2 = 2ab
  CHECK(p0.dissipation(2.0) == doctest::Approx(2 * 0.3 * 0.7));

  try {
    ModelParams::make(1.0, 1.2);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("a ∈ (0,1)") != std::string::npos);
  }
  CHECK_THROWS_AS(ModelParams::make(-1.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(ModelParams::make(1.0, 0.5, 0.0), InvalidArgument);
  CHECK(p0.with_drift(0.0).drift_coeff() == 0.0);
}

TEST_CASE("grid geometry") {
  const Grid g(20.0, 128);
  CHECK(g.cell_width() == doctest::Approx(40.0 / 128));
  CHECK(g.edge(0) == -20.0);
  CHECK(g.edge(128) == 20.0);
  for (int j = 0; j <= 128; ++j) CHECK(g.edge(j) == -g.edge(128 - j));
  CHECK(g.locate(-20.0) == 0);
  CHECK(g.locate(20.0) == 127);
  CHECK(g.locate(0.0) == 64);
  CHECK(g.to_global(5, g.to_local(5, g.center(5) + 0.01)) == doctest::Approx(g.center(5) + 0.01));
  CHECK_THROWS_AS(g.locate(20.5), OutOfDomain);
  CHECK_THROWS_AS(Grid(0.0, 4), InvalidArgument);
  CHECK_THROWS_AS(Grid(1.0, 0), InvalidArgument);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n = 1; n <= 20; ++n) {
    const QuadratureRule q = gauss_legendre(n);
    REQUIRE(q.size() == n);
    for (int m = 0; m <= 2 * n - 1; ++m) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], m);
      const double exact = m % 2 ? 0.0 : 2.0 / (m + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
    for (int i = 1; i < n; ++i) CHECK(q.nodes[i] > q.nodes[i - 1]);
  }
  CHECK_THROWS_AS(gauss_legendre(0), InvalidArgument);
  CHECK(default_quadrature_nodes(2, 1.0) == 7);
  CHECK(default_quadrature_nodes(2, 0.0) == 6);
}

TEST_CASE("Legendre values and derivatives match closed forms") {
  for (const double z : {-1.0, -0.3, 0.0, 0.71, 1.0}) {
    CHECK(legendre(2, z) == doctest::Approx(0.5 * (3 * z * z - 1)));
    CHECK(legendre(3, z) == doctest::Approx(0.5 * (5 * z * z * z - 3 * z)));
    std::vector<double> d(4);
    legendre_derivatives(z, d);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(d[2] == doctest::Approx(3 * z));
    CHECK(d[3] == doctest::Approx(0.5 * (15 * z * z - 3)));
  }
}

TEST_CASE("projection of the box profile has unit mass and energy") {
  // A grid whose edges do not align with ±sqrt(3) exercises the breakpoint split.
  const Grid g(20.0, 128);
  const DGField f = project_initial(box(), g, 2, gauss_legendre(6));
  const double orders[] = {0.0, 1.0, 2.0};
  const MomentRecord rec = field_moments(f, orders);
  CHECK(rec.moment(0.0) == doctest::Approx(1.0).epsilon(1e-13));
  // (1 / (2 sqrt 3)) * 2 * 3 sqrt 3 / 3 = 1
  CHECK(std::abs(rec.moment(2.0) - 1.0) < 1e-10);
  CHECK(rec.moment(1.0) == doctest::Approx(kSqrt3 / 2).epsilon(1e-10));
  CHECK(std::abs(*rec.momentum) < 1e-14);
  CHECK(field_mass(f) == doctest::Approx(1.0));
}

TEST_CASE("moments of the projected M1 profile match the truncated closed forms") {
  const double L = 20.0;
  const DGField f = project_initial({m1, {}}, Grid(L, 256), 2, gauss_legendre(8));
  const double orders[] = {0.0, 2.0};
  const MomentRecord rec = field_moments(f, orders);
  const double at = std::atan(L);
  const double q = L / (1.0 + L * L);
  CHECK(rec.moment(0.0) == doctest::Approx(2.0 / std::numbers::pi * (at + q)).epsilon(1e-7));
  CHECK(rec.moment(2.0) == doctest::Approx(2.0 / std::numbers::pi * (at - q)).epsilon(1e-7));
  CHECK(std::abs(eval_field(f, 0.0) - 2.0 / std::numbers::pi) < 1e-4);
}

TEST_CASE("field evaluation and traces") {
  const Grid g(1.0, 2);
  // cell 0 is 1 + z, cell 1 is 5
  const DGField f(g, 1, {1.0, 1.0, 5.0, 0.0});
  CHECK(eval_field(f, 0.0, Trace::left) == doctest::Approx(2.0));
  CHECK(eval_field(f, 0.0, Trace::right) == doctest::Approx(5.0));
  CHECK(eval_field(f, -1.0) == doctest::Approx(0.0));
  CHECK(eval_field(f, -0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(eval_field(f, 1.5), OutOfDomain);
  CHECK_THROWS_AS(DGField(g, 1, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(DGField(g, -1), InvalidArgument);
}

TEST_CASE("norms, distances and axpy") {
  const Grid g(2.0, 8);
  const DGField f = project_initial({[](double x) { return std::cos(x); }, {}}, g, 3, gauss_legendre(8));
  // ∫_{-2}^{2} cos^2 = 2 + sin(4) / 2
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(2.0 + 0.5 * std::sin(4.0))).epsilon(1e-5));
  CHECK(l1_distance(f, [](double x) { return std::cos(x); }) < 1e-4);
  DGField h(g, 3);
  axpy(2.0, f, h);
  CHECK(l2_norm(h) == doctest::Approx(2.0 * l2_norm(f)));
  CHECK_THROWS_AS(axpy(1.0, DGField(g, 2), h), InvalidArgument);
  CHECK(f.all_finite());
}

TEST_CASE("moment records") {
  MomentRecord r;
  r.moments[2.0] = 3.0;
  CHECK(r.energy() == 3.0);
  CHECK_THROWS_AS(r.moment(4.0), InvalidArgument);
  const double bad[] = {-1.0};
  CHECK_THROWS_AS(validate_orders(bad), InvalidArgument);
  CHECK(default_moment_orders() == std::vector<double>{0, 1, 2, 3, 4});
}
