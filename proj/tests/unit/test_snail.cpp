#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "impa/snail.hpp"
#include "oracles/snail_bisection.hpp"

using impa::FluxBias;
using impa::SnailParams;

namespace {

constexpr double k_pi = std::numbers::pi;

SnailParams reference_snail() { return SnailParams::make(40e-12, 0.25, 3); }

std::vector<FluxBias> flux_grid(double lo, double hi, int n) {
  std::vector<FluxBias> grid;
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    grid.push_back(FluxBias{lo + i * step});
  }
  return grid;
}

}  // namespace

TEST_CASE("snail parameter validation") {
  CHECK_THROWS_AS(SnailParams::make(0.0, 0.25, 3), impa::ContractViolation);
  CHECK_THROWS_AS(SnailParams::make(-1e-12, 0.25, 3),
                  impa::ContractViolation);
  CHECK_THROWS_AS(SnailParams::make(40e-12, 0.0, 3),
                  impa::ContractViolation);
  CHECK_THROWS_AS(SnailParams::make(40e-12, -0.1, 3),
                  impa::ContractViolation);
  CHECK_THROWS_AS(SnailParams::make(40e-12, 0.34, 3),
                  impa::ContractViolation);
  CHECK_THROWS_AS(SnailParams::make(40e-12, 0.25, 0),
                  impa::ContractViolation);

  const SnailParams interior = reference_snail();
  CHECK_FALSE(interior.boundary_alpha);

  const SnailParams boundary = SnailParams::make(40e-12, 1.0 / 3.0, 3);
  CHECK(boundary.boundary_alpha);
}

TEST_CASE("potential derivatives at the symmetry point") {
  const SnailParams p = reference_snail();
  CHECK(impa::potential_derivative(p, 0.0, 0.0, 1) == 0.0);
  CHECK(impa::potential_derivative(p, 0.0, 0.0, 2) == 0.25 + 1.0 / 3.0);
  CHECK(impa::potential_derivative(p, 0.0, 0.0, 3) == 0.0);
  CHECK(impa::potential_derivative(p, 0.0, 0.0, 4) == -0.25 - 1.0 / 27.0);
  CHECK_THROWS_AS(impa::potential_derivative(p, 0.0, 0.0, 0),
                  impa::ContractViolation);
  CHECK_THROWS_AS(impa::potential_derivative(p, 0.0, 0.0, 5),
                  impa::ContractViolation);
}

TEST_CASE("potential derivatives match finite differences of the first") {
  const SnailParams p = reference_snail();
  const double h = 1e-3;
  for (double phi_ext : {0.0, 1.1, 2.0, 2.8}) {
    const double phi = impa::solve_phi_min(p, FluxBias{phi_ext / (2 * k_pi)});
    auto c1 = [&](double x) {
      return impa::potential_derivative(p, x, phi_ext, 1);
    };
    const double d2 = (c1(phi + h) - c1(phi - h)) / (2 * h);
    const double d3 = (c1(phi + h) - 2 * c1(phi) + c1(phi - h)) / (h * h);
    const double d4 = (c1(phi + 2 * h) - 2 * c1(phi + h) + 2 * c1(phi - h) -
                       c1(phi - 2 * h)) /
                      (2 * h * h * h);
    CHECK(impa::potential_derivative(p, phi, phi_ext, 2) ==
          doctest::Approx(d2).epsilon(1e-6).scale(1));
    CHECK(impa::potential_derivative(p, phi, phi_ext, 3) ==
          doctest::Approx(d3).epsilon(1e-6).scale(1));
    CHECK(impa::potential_derivative(p, phi, phi_ext, 4) ==
          doctest::Approx(d4).epsilon(1e-6).scale(1));
  }
}

TEST_CASE("phi_min matches the bisection oracle") {
  const SnailParams p = reference_snail();

  // Frozen oracle values: dense sign-change scan + bisection on c1 over
  // [0, pi], recorded before the production solver existed.
  const double phi_min_042 = impa::solve_phi_min(p, FluxBias{0.42});
  CHECK(phi_min_042 == doctest::Approx(1.9303178146551665).epsilon(1e-13));
  const double phi_min_05 = impa::solve_phi_min(p, FluxBias{0.5});
  CHECK(phi_min_05 == doctest::Approx(3.1415926535897927).epsilon(1e-13));

  // Live oracle recomputation.
  for (double bias : {0.1, 0.27, 0.42, 0.5}) {
    const double phi_ext = 2 * k_pi * bias;
    const double by_oracle =
        oracle::phi_min_by_bisection(0.25, 3, phi_ext, 0.0, k_pi);
    CHECK(impa::solve_phi_min(p, FluxBias{bias}) ==
          doctest::Approx(by_oracle).epsilon(1e-13).scale(1));
  }

  CHECK(std::abs(impa::solve_phi_min(p, FluxBias{0.0})) < 1e-13);
}

TEST_CASE("phi_min residual stays below tolerance across two flux periods") {
  const SnailParams p = reference_snail();
  for (const FluxBias& b : flux_grid(-1.0, 1.0, 101)) {
    const double phi = impa::solve_phi_min(p, b);
    const double residual =
        impa::potential_derivative(p, phi, b.phi_ext(), 1);
    CHECK(std::abs(residual) < 1e-12);
  }
}

TEST_CASE("phi_min branch symmetries") {
  const SnailParams p = reference_snail();
  // Oddness and periodicity of the branch; the reduced-frame solve makes
  // them exact when the flux decomposition is exact in binary.
  CHECK(impa::solve_phi_min(p, FluxBias{-0.42}) ==
        -impa::solve_phi_min(p, FluxBias{0.42}));
  CHECK(impa::solve_phi_min(p, FluxBias{1.25}) ==
        impa::solve_phi_min(p, FluxBias{0.25}) + 2 * k_pi);
  CHECK(impa::solve_phi_min(p, FluxBias{1.42}) ==
        doctest::Approx(impa::solve_phi_min(p, FluxBias{0.42}) + 2 * k_pi)
            .epsilon(1e-12));
}

TEST_CASE("operating point at the reference bias") {
  const SnailParams p = reference_snail();
  const impa::FluxOperatingPoint op = impa::operating_point(p, FluxBias{0.42});
  CHECK(op.c2 == doctest::Approx(0.23612096739073551).epsilon(1e-13));
  CHECK(op.c3 == doctest::Approx(-0.20801450756015166).epsilon(1e-13));
  CHECK(op.c4 == doctest::Approx(0.051947971394300421).epsilon(1e-13));
  CHECK(op.l_s == doctest::Approx(1.6940469303519144e-10).epsilon(1e-13));
  // l_s * c2 = l_j up to rounding.
  CHECK(op.l_s * op.c2 == doctest::Approx(p.l_j).epsilon(1e-15));
}

TEST_CASE("operating point at the symmetry point") {
  const SnailParams p = reference_snail();
  const impa::FluxOperatingPoint op = impa::operating_point(p, FluxBias{0.0});
  CHECK(op.l_s == doctest::Approx(40e-12 * 12.0 / 7.0).epsilon(1e-12));
  CHECK(op.c3 == doctest::Approx(0.0).epsilon(1e-14).scale(1));
  CHECK(op.c4 < 0.0);
}

TEST_CASE("operating point symmetries are exact in the reduced frame") {
  const SnailParams p = reference_snail();
  const impa::FluxOperatingPoint plus = impa::operating_point(p,
                                                              FluxBias{0.42});
  const impa::FluxOperatingPoint minus =
      impa::operating_point(p, FluxBias{-0.42});
  CHECK(plus.l_s == minus.l_s);
  CHECK(plus.c2 == minus.c2);
  CHECK(plus.c3 == -minus.c3);
  CHECK(plus.c4 == minus.c4);

  const impa::FluxOperatingPoint shifted =
      impa::operating_point(p, FluxBias{1.25});
  const impa::FluxOperatingPoint base =
      impa::operating_point(p, FluxBias{0.25});
  CHECK(shifted.l_s == base.l_s);
  CHECK(shifted.c3 == base.c3);

  const impa::FluxOperatingPoint near_shift =
      impa::operating_point(p, FluxBias{1.42});
  CHECK(near_shift.l_s ==
        doctest::Approx(plus.l_s).epsilon(1e-10));
}

TEST_CASE("degenerate minimum on the asymmetry boundary") {
  const SnailParams boundary = SnailParams::make(40e-12, 1.0 / 3.0, 3);
  // At alpha = 1/n and half flux the first three derivatives vanish at
  // phi = pi, so the root location conditioning degrades to the cube root
  // of the residual tolerance and the curvature the solver reports is
  // rounding-level. Both outcomes honor the contract: either the vanishing
  // curvature trips the degenerate-minimum error, or it comes back as a
  // positive value indistinguishable from zero.
  const double phi = impa::solve_phi_min(boundary, FluxBias{0.5});
  CHECK(phi == doctest::Approx(k_pi).epsilon(1e-4));
  try {
    const impa::FluxOperatingPoint op =
        impa::operating_point(boundary, FluxBias{0.5});
    CHECK(op.c2 > 0.0);
    CHECK(op.c2 < 1e-9);
  } catch (const impa::DegenerateMinimumError&) {
    // acceptable: the solver landed close enough for c2 to round to <= 0
  }
  // Just off half flux the curvature is unambiguously positive again.
  CHECK(impa::operating_point(boundary, FluxBias{0.49}).c2 > 1e-6);
}

TEST_CASE("bare frequency against frozen oracle values") {
  const SnailParams p = reference_snail();
  CHECK(impa::bare_frequency(p, FluxBias{0.0}, 5.25e-12) ==
        doctest::Approx(8388202017.414505).epsilon(1e-13));
  CHECK(impa::bare_frequency(p, FluxBias{0.42}, 5.25e-12) ==
        doctest::Approx(5336761089.5698366).epsilon(1e-13));
  CHECK(impa::bare_frequency(p, FluxBias{0.5}, 5.25e-12) ==
        doctest::Approx(3170442355.0070105).epsilon(1e-13));
  // Bias solved so the JPA resonator lands on the design center.
  CHECK(impa::bare_frequency(p, FluxBias{0.35242874241169853}, 5.25e-12) ==
        doctest::Approx(6.5e9).epsilon(1e-9));
  CHECK_THROWS_AS(impa::bare_frequency(p, FluxBias{0.0}, 0.0),
                  impa::ContractViolation);
}

TEST_CASE("bare frequency follows the square-root capacitance law") {
  const SnailParams p = reference_snail();
  const double f1 = impa::bare_frequency(p, FluxBias{0.3}, 5.25e-12);
  const double f2 = impa::bare_frequency(p, FluxBias{0.3}, 4 * 5.25e-12);
  CHECK(f1 / f2 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("tunable range over the reference flux span") {
  const SnailParams p = reference_snail();
  const impa::TunableRange range =
      impa::tunable_range(p, 5.25e-12, flux_grid(0.0, 0.5, 101));
  CHECK(range.f_max == doctest::Approx(8388202017.414505).epsilon(1e-12));
  CHECK(range.f_min == doctest::Approx(3170442355.0070105).epsilon(1e-12));
  REQUIRE(range.curve.size() == 101);
  for (size_t i = 1; i < range.curve.size(); ++i) {
    CHECK(range.curve[i].second < range.curve[i - 1].second);
  }
}

TEST_CASE("tunable range contract checks") {
  const SnailParams p = reference_snail();
  CHECK_THROWS_AS(impa::tunable_range(p, 5.25e-12, {}),
                  impa::ContractViolation);
  CHECK_THROWS_AS(
      impa::tunable_range(p, 5.25e-12, {FluxBias{0.0}, FluxBias{1.2}}),
      impa::ContractViolation);

  const impa::TunableRange single =
      impa::tunable_range(p, 5.25e-12, {FluxBias{0.0}});
  CHECK(single.f_min == single.f_max);
  CHECK(single.f_min == impa::bare_frequency(p, FluxBias{0.0}, 5.25e-12));
}

TEST_CASE("tunable range width grows with asymmetry") {
  double prev_width = -1.0;
  const std::vector<FluxBias> grid = flux_grid(0.0, 0.5, 101);
  for (double alpha : {0.05, 0.10, 0.15, 0.20, 0.25, 0.30}) {
    const SnailParams p = SnailParams::make(40e-12, alpha, 3);
    const impa::TunableRange range = impa::tunable_range(p, 5.25e-12, grid);
    const double width = range.f_max - range.f_min;
    CHECK(width > prev_width);
    prev_width = width;
  }
}

TEST_CASE("three-wave-mixing operating point selection") {
  const SnailParams p = reference_snail();

  SUBCASE("single candidate with zero c3 is still returned") {
    const FluxBias b = impa::find_3wm_operating_point(p, {FluxBias{0.0}});
    CHECK(b.phi_over_phi0 == 0.0);
  }

  SUBCASE("no negative-Kerr point raises not-found") {
    // At half-integer flux c4 flips positive for the reference device.
    CHECK(impa::operating_point(p, FluxBias{0.5}).c4 ==
          doctest::Approx(0.21296296296296297).epsilon(1e-12));
    CHECK_THROWS_AS(impa::find_3wm_operating_point(p, {FluxBias{0.5}}),
                    impa::NotFoundError);
  }

  SUBCASE("dense grid argmax is interior") {
    const std::vector<FluxBias> grid = flux_grid(0.0, 0.5, 501);
    const FluxBias b = impa::find_3wm_operating_point(p, grid);
    CHECK(b.phi_over_phi0 == grid[371].phi_over_phi0);
    const impa::FluxOperatingPoint op = impa::operating_point(p, b);
    CHECK(std::abs(op.c3) ==
          doctest::Approx(0.22222167137307475).epsilon(1e-9));
    CHECK(op.c4 < 0.0);
    CHECK(b.phi_over_phi0 > 0.0);
    CHECK(b.phi_over_phi0 < 0.5);
  }

  SUBCASE("symmetric candidates tie-break to the non-negative bias") {
    REQUIRE(impa::operating_point(p, FluxBias{0.2}).c4 < 0.0);
    const FluxBias b = impa::find_3wm_operating_point(
        p, {FluxBias{-0.2}, FluxBias{0.2}});
    CHECK(b.phi_over_phi0 == 0.2);
  }

  SUBCASE("empty grid violates the contract") {
    CHECK_THROWS_AS(impa::find_3wm_operating_point(p, {}),
                    impa::ContractViolation);
  }
}

TEST_CASE("flux bias exposes the reduced external phase") {
  const FluxBias b{0.42};
  CHECK(b.phi_ext() == 2 * k_pi * 0.42);
}
