#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gpsplit/errors.hpp"
#include "gpsplit/field.hpp"
#include "gpsplit/transforms.hpp"
#include "test_support.hpp"

using namespace gpsplit;
using gpsplit::testing::max_abs_diff;
using gpsplit::testing::random_field;
using gpsplit::testing::random_smooth_field;

namespace {
constexpr double pi = std::numbers::pi;

// Naive O(N^2) DFT, independent of the FFTW path.
std::vector<Complex> naive_dft(std::span<const Complex> f) {
  const std::size_t n = f.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      out[k] += f[j] * std::polar(1.0, -2.0 * pi * static_cast<double>(k * j) / static_cast<double>(n));
  return out;
}
}  // namespace

TEST_CASE("make_grid: Dirichlet interior layout") {
  const Grid g = make_grid(1, 20.0, 8, BoundaryKind::dirichlet);
  CHECK(g.spacing() == doctest::Approx(40.0 / 9.0).epsilon(1e-15));
  for (int j = 1; j <= 8; ++j) CHECK(g.node(j - 1) == doctest::Approx(-20.0 + j * 40.0 / 9.0).epsilon(1e-14));
  CHECK(g.modes()[0] == doctest::Approx(pi / 40.0));
  CHECK(g.modes()[7] == doctest::Approx(8.0 * pi / 40.0));
  CHECK(g.size() == 8);
}

TEST_CASE("make_grid: periodic 2D layout") {
  const Grid g = make_grid(2, 5.0, 256, BoundaryKind::periodic);
  CHECK(g.spacing() == doctest::Approx(10.0 / 256.0).epsilon(1e-15));
  CHECK(g.node(0) == -5.0);
  CHECK(g.size() == 256u * 256u);
  CHECK(g.cell_volume() == doctest::Approx(std::pow(10.0 / 256.0, 2)));
}

TEST_CASE("make_grid: FFT frequency order") {
  // N = 4 is below the minimum grid size; the same layout rule at N = 8.
  CHECK_THROWS_AS(make_grid(1, 5.0, 4, BoundaryKind::periodic), ValidationError);
  const Grid g = make_grid(1, 5.0, 8, BoundaryKind::periodic);
  const double expected[] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int j = 0; j < 8; ++j) CHECK(g.modes()[static_cast<std::size_t>(j)] == doctest::Approx(pi / 5.0 * expected[j]));
}

TEST_CASE("make_grid: rejects invalid input") {
  CHECK_THROWS_AS(make_grid(3, 1.0, 16, BoundaryKind::periodic), ValidationError);
  CHECK_THROWS_AS(make_grid(1, 0.0, 16, BoundaryKind::periodic), ValidationError);
  CHECK_THROWS_AS(make_grid(1, -2.0, 16, BoundaryKind::periodic), ValidationError);
  CHECK_THROWS_AS(make_grid(2, 1.0, 16, BoundaryKind::dirichlet), ValidationError);
}

TEST_CASE("derivative: Fourier eigenfunctions") {
  const Grid g = make_grid(1, 3.0, 32, BoundaryKind::periodic);
  const double k = g.modes()[5];
  const Field f = Field::sample(g, [&](double x, double) { return std::exp(Complex{0.0, k * x}); });
  const Field d2 = derivative(f, {2, 0});
  CHECK(max_abs_diff(d2, Complex{-k * k, 0.0} * f) <= 1e-10 * k * k);
  const Field d1 = derivative(f, {1, 0});
  CHECK(max_abs_diff(d1, Complex{0.0, k} * f) <= 1e-10 * k);

  const Grid g2 = make_grid(2, 2.0, 16, BoundaryKind::periodic);
  const double k1 = g2.modes()[3];
  const double k2 = g2.modes()[14];
  const Field p = Field::sample(g2, [&](double x, double y) { return std::exp(Complex{0.0, k1 * x + k2 * y}); });
  CHECK(max_abs_diff(derivative(p, {1, 1}), Complex{-k1 * k2, 0.0} * p) <= 1e-10 * std::abs(k1 * k2));
}

TEST_CASE("derivative: constants differentiate to zero") {
  const Grid gp = make_grid(2, 4.0, 16, BoundaryKind::periodic);
  const Field c = Field::constant(gp, {0.3, -0.7});
  for (auto alpha : multi_indices(2, 2)) CHECK(derivative(c, alpha).max_modulus() <= 1e-14);

  const Grid gd = make_grid(1, 4.0, 16, BoundaryKind::dirichlet);
  const Complex value{0.3, -0.7};
  const Field cd = Field::constant(gd, value);
  CHECK(derivative(cd, {1, 0}, BoundaryValues{value, value}).max_modulus() == 0.0);
  CHECK(derivative(cd, {2, 0}, BoundaryValues{value, value}).max_modulus() == 0.0);
}

TEST_CASE("derivative: centred differences are exact on quadratics") {
  const Grid g = make_grid(1, 2.0, 15, BoundaryKind::dirichlet);
  const auto quad = [](double x) { return Complex{x * x, 2.0 * x}; };
  const Field f = Field::sample(g, [&](double x, double) { return quad(x); });
  const BoundaryValues bv{quad(-2.0), quad(2.0)};
  const Field d1 = derivative(f, {1, 0}, bv);
  const Field d2 = derivative(f, {2, 0}, bv);
  for (int i = 0; i < g.points(); ++i) {
    CHECK(std::abs(d1[static_cast<std::size_t>(i)] - Complex{2.0 * g.node(i), 2.0}) <= 1e-12);
    CHECK(std::abs(d2[static_cast<std::size_t>(i)] - Complex{2.0, 0.0}) <= 1e-11);
  }
}

TEST_CASE("derivative: rejects orders outside 1..2") {
  const Grid g = make_grid(2, 1.0, 8, BoundaryKind::periodic);
  const Field f = Field::constant(g, 1.0);
  CHECK_THROWS_AS(derivative(f, {2, 1}), ValidationError);
  CHECK_THROWS_AS(derivative(f, {0, 0}), ValidationError);
  const Grid g1 = make_grid(1, 1.0, 8, BoundaryKind::periodic);
  CHECK_THROWS_AS(derivative(Field::constant(g1, 1.0), {0, 1}), ValidationError);
}

TEST_CASE("norm: trivial values") {
  const Grid g = make_grid(2, 3.0, 16, BoundaryKind::periodic);
  CHECK(norm(Field::constant(g, {0.6, 0.8}), NormKind::X2) == doctest::Approx(1.0).epsilon(1e-14));
  for (auto kind : {NormKind::L2, NormKind::Linf, NormKind::H1, NormKind::H2, NormKind::X2})
    CHECK(norm(Field(g), kind) == 0.0);
}

TEST_CASE("norm: L2 of sin on [-pi, pi) equals L against direct summation") {
  const Grid g = make_grid(1, pi, 64, BoundaryKind::periodic);
  const Field f = Field::sample(g, [](double x, double) { return Complex{std::sin(x), 0.0}; });
  double direct = 0.0;
  for (int i = 0; i < g.points(); ++i) direct += std::pow(std::sin(g.node(i)), 2) * g.spacing();
  const double l2sq = std::pow(norm(f, NormKind::L2), 2);
  CHECK(l2sq == doctest::Approx(direct).epsilon(1e-13));
  CHECK(l2sq == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("property: Parseval against a naive DFT") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Grid g = make_grid(1, 1.0 + seed, 24 + 8 * static_cast<int>(seed), BoundaryKind::periodic);
    const Field f = random_field(g, seed);
    const auto coeffs = naive_dft(f.values());
    double spectral = 0.0;
    for (auto c : coeffs) spectral += std::norm(c);
    spectral *= g.cell_volume() / static_cast<double>(g.size());
    const double physical = std::pow(norm(f, NormKind::L2), 2);
    CHECK(std::abs(spectral - physical) <= 1e-12 * physical);

    // FFTW agrees with the oracle too.
    Field copy = f;
    FourierTransform(g).forward(copy.values());
    double worst = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) worst = std::max(worst, std::abs(coeffs[i] - copy[i]));
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("property: sine transform round trip and orthogonality") {
  const int n = 31;
  SineTransform dst(n);
  const Grid g = make_grid(1, 1.0, n, BoundaryKind::dirichlet);
  const Field f = random_field(g, 17);
  Field copy = f;
  dst.forward(copy.values());
  double coeff_sq = 0.0;
  for (auto c : copy.values()) coeff_sq += std::norm(c);
  double sample_sq = 0.0;
  for (auto z : f.values()) sample_sq += std::norm(z);
  // DST-I: sum |Y|^2 = 2(n+1) sum |X|^2.
  CHECK(coeff_sq == doctest::Approx(2.0 * (n + 1) * sample_sq).epsilon(1e-12));
  dst.inverse(copy.values());
  CHECK(max_abs_diff(copy, f) <= 1e-13);
}

TEST_CASE("property: X2 dominates its parts; derivative is linear") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Grid g = seed % 2 == 0 ? make_grid(2, 2.0, 16, BoundaryKind::periodic)
                                 : make_grid(1, 3.0, 33, BoundaryKind::dirichlet);
    const Field f = random_smooth_field(g, seed);
    const Field h = random_smooth_field(g, seed + 100);
    const BoundaryValues bv{{1.0, 0.0}, {1.0, 0.0}};
    const double x2 = norm(f, NormKind::X2, bv);
    CHECK(x2 >= norm(f, NormKind::Linf, bv));
    for (auto alpha : multi_indices(g.dim(), 2))
      CHECK(x2 >= l2_norm(derivative(f, alpha, bv).values(), g.cell_volume()));

    const Complex a{0.7, -1.1}, b{-0.4, 2.5};
    const Field combo = a * f + b * h;
    for (auto alpha : multi_indices(g.dim(), 2)) {
      // Boundary values enter affinely, so compare with homogeneous data.
      const Field lhs = derivative(combo, alpha);
      const Field rhs = a * derivative(f, alpha) + b * derivative(h, alpha);
      CHECK(max_abs_diff(lhs, rhs) <= 1e-11 * std::max(1.0, rhs.max_modulus()));
    }
  }
}

TEST_CASE("field: size and grid checks") {
  const Grid g = make_grid(1, 1.0, 8, BoundaryKind::periodic);
  CHECK_THROWS_AS(Field(g, std::vector<Complex>(7)), ValidationError);
  Field a(g);
  const Field b(make_grid(1, 2.0, 8, BoundaryKind::periodic));
  CHECK_THROWS_AS(a += b, ValidationError);
}
