#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bergman/domain.hpp"
#include "bergman/moebius.hpp"

using namespace bergman;

namespace {

// Forward relations: (a, sigma) -> (c, r).
std::pair<mpcplx, mpreal> forward_relations(const mpcplx& a, const mpreal& sigma) {
  mpreal a2 = norm(a), s2 = sigma * sigma;
  mpreal den = 1 - a2 * s2;
  return {a * (1 - s2) / den, sigma * (1 - a2) / den};
}

double dist(const mpcplx& u, const mpcplx& v) { return to_double(abs(u - v)); }

}  // namespace

TEST_CASE("validate accepts the concentric annulus") {
  auto dom = CircularDomain::validate({DiskSpec(0.0, 0.0, 0.5)});
  REQUIRE(dom.s() == 1);
  CHECK(dom.disk(0).concentric);
  CHECK(dom.rho_a() == 0.0);
  CHECK(dom.all_concentric());
  CHECK_THROWS_AS(dom.rho_x(), DomainError);
}

TEST_CASE("validate accepts the reference single-disk domain") {
  auto dom = CircularDomain::validate({DiskSpec(0.4, 0.0, 0.2)});
  REQUIRE(dom.s() == 1);
  CHECK_FALSE(dom.disk(0).concentric);
  CHECK(dom.rho_a() == Catch::Approx(0.4202041028867288).epsilon(1e-12));
  CHECK(dom.rho_x() == Catch::Approx(5.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("validate containment and overlap checks") {
  // Separation 0.85 > 0.2 + 0.3: fine.
  CHECK_NOTHROW(CircularDomain::validate(
      {DiskSpec(0.4, 0.0, 0.2), DiskSpec(-0.45, 0.0, 0.3)}));
  // Shrink the separation to 0.45 < 0.5: the closures intersect.
  CHECK_THROWS_AS(CircularDomain::validate(
                      {DiskSpec(0.4, 0.0, 0.2), DiskSpec(-0.05, 0.0, 0.3)}),
                  DisksOverlap);
  CHECK_THROWS_AS(CircularDomain::validate({DiskSpec(0.7, 0.0, 0.4)}),
                  DiskNotContained);
  CHECK_THROWS_AS(CircularDomain::validate({DiskSpec(0.9, 0.0, 0.0999999999999)}),
                  DiskNotContained);
  CHECK_THROWS_AS(CircularDomain::validate({}), DomainError);
}

TEST_CASE("derive_pair on the concentric disk is the identity") {
  auto [a, sigma] = derive_pair(mpcplx(0), mpreal("0.5"));
  CHECK(a == mpcplx(0));
  CHECK(sigma == mpreal("0.5"));
}

TEST_CASE("derive_pair on the reference disk") {
  auto [a, sigma] = derive_pair(mpcplx(mpreal("0.4")), mpreal("0.2"));
  CHECK(to_double(real(a)) == Catch::Approx(0.4202041028867288).epsilon(1e-13));
  CHECK(to_double(imag(a)) == 0.0);
  CHECK(to_double(sigma) == Catch::Approx(0.2404082057734576).epsilon(1e-13));
  // a solves the fixed-point quadratic of T_j.
  mpcplx c(mpreal("0.4"));
  mpreal r("0.2");
  mpcplx res = conj(c) * a * a + (r * r - norm(c) - 1) * a + c;
  CHECK(to_double(abs(res)) < 1e-70);
  // Forward relations reproduce the inputs.
  auto [c2, r2] = forward_relations(a, sigma);
  CHECK(dist(c2, c) < 1e-70);
  CHECK(to_double(abs(r2 - r)) < 1e-70);
}

TEST_CASE("round trip (a, sigma) = (0.3, 0.25)") {
  mpcplx a0(mpreal("0.3"));
  mpreal s0("0.25");
  auto [c, r] = forward_relations(a0, s0);
  auto [a1, s1] = derive_pair(c, r);
  CHECK(dist(a1, a0) < 1e-12);
  CHECK(to_double(abs(s1 - s0)) < 1e-12);
}

TEST_CASE("derive_pair round trip over random admissible pairs") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> mag(0.0, 0.85), ang(0.0, 2 * kPi),
      sig(0.05, 0.9);
  int tested = 0;
  while (tested < 100) {
    cplx a = std::polar(mag(rng), ang(rng));
    double s = sig(rng);
    auto [c, r] = forward_relations(to_mpcplx(a), mpreal(s));
    if (to_double(abs(c)) + to_double(r) >= 1 - 1e-6) continue;
    auto [a1, s1] = derive_pair(c, r);
    CHECK(dist(a1, to_mpcplx(a)) < 1e-12);
    CHECK(std::abs(to_double(s1) - s) < 1e-12);
    ++tested;
  }
}

TEST_CASE("fixed point multiplier equals sigma^2") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mag(0.0, 0.6), ang(0.0, 2 * kPi),
      rad(0.02, 0.25);
  for (int i = 0; i < 50; ++i) {
    cplx c = std::polar(mag(rng), ang(rng));
    double r = rad(rng);
    if (std::abs(c) + r >= 1 - 1e-3) continue;
    auto dom = CircularDomain::validate({DiskSpec(c.real(), c.imag(), r)});
    Moebius T = tj(dom, 0);
    const DiskData& d = dom.disk(0);
    cplx mult = T.derivative(d.a_d);
    CHECK(std::abs(mult.imag()) < 1e-12);
    CHECK(mult.real() == Catch::Approx(d.sigma_d * d.sigma_d).margin(1e-12));
  }
}

TEST_CASE("critical data of the reference disk") {
  CriticalData cd = critical_data(mpcplx(mpreal("0.4")), mpreal("0.2"));
  CHECK(to_double(real(cd.x)) == Catch::Approx(5.0 / 3.0).epsilon(1e-14));
  REQUIRE_FALSE(cd.y_infinite);
  CHECK(to_double(real(cd.y)) == Catch::Approx(5.0).epsilon(1e-14));
  CHECK(cd.epsilon == -1);
  CHECK(to_double(real(cd.pole)) == Catch::Approx(2.5).epsilon(1e-14));
  // The pole of T_j is 1/conj(c).
  CHECK(to_double(real(cd.pole)) == Catch::Approx(1.0 / 0.4).epsilon(1e-14));
}

TEST_CASE("critical data when the circle passes through the origin") {
  CriticalData cd = critical_data(mpcplx(mpreal("0.3")), mpreal("0.3"));
  CHECK(to_double(real(cd.x)) == Catch::Approx(1.0 / 0.6).epsilon(1e-14));
  CHECK(cd.y_infinite);
  CHECK(cd.epsilon == 1);
  CHECK(to_double(real(cd.pole)) == Catch::Approx(10.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(critical_data(mpcplx(0), mpreal("0.5")), CenterAtOrigin);
}

TEST_CASE("alternate x, y formulas in terms of a, sigma") {
  auto dom = CircularDomain::validate({DiskSpec(0.4, 0.0, 0.2)});
  const DiskData& d = dom.disk(0);
  cplx a = d.a_d;
  double s = d.sigma_d, aa = std::abs(a);
  cplx x_alt = (a / aa) * (1 + aa * s) / (s + aa);
  cplx y_alt = -(a / aa) * (1 - aa * s) / (s - aa);
  CHECK(std::abs(x_alt - d.x_d) < 1e-12);
  CHECK(std::abs(y_alt - d.y_d) < 1e-12);
}

TEST_CASE("domain invariants for mixed random domains") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> mag(0.05, 0.6), ang(0.0, 2 * kPi),
      rad(0.02, 0.2);
  int built = 0;
  while (built < 25) {
    cplx c1 = std::polar(mag(rng), ang(rng));
    cplx c2 = std::polar(mag(rng), ang(rng));
    double r1 = rad(rng), r2 = rad(rng);
    try {
      auto dom = CircularDomain::validate(
          {DiskSpec(c1.real(), c1.imag(), r1), DiskSpec(c2.real(), c2.imag(), r2)});
      for (const DiskData& d : dom.disks()) {
        // |c| <= |a| and r <= sigma, strict unless concentric.
        CHECK(std::abs(d.c_d) <= d.abs_a + 1e-14);
        CHECK(d.r_d <= d.sigma_d + 1e-14);
        if (!d.concentric) {
          CHECK(std::abs(d.c_d) < d.abs_a);
          CHECK(d.r_d < d.sigma_d);
          CHECK(d.abs_x > 1.0);
          CHECK(d.abs_x < 1.0 / d.abs_a);
          if (!d.y_infinite) CHECK(d.abs_x < std::abs(d.y_d));
        }
      }
      CHECK(dom.rho_x() > 1.0);
      CHECK(dom.rho_x() < 1.0 / dom.rho_a());
      ++built;
    } catch (const Error&) {
      // random configuration was invalid; draw again
    }
  }
}

TEST_CASE("only one circle can pass through the origin") {
  // Two circles through the origin always touch there.
  CHECK_THROWS_AS(CircularDomain::validate(
                      {DiskSpec(0.25, 0.0, 0.25), DiskSpec(-0.25, 0.0, 0.25)}),
                  DisksOverlap);
  auto dom = CircularDomain::validate(
      {DiskSpec(0.25, 0.0, 0.25), DiskSpec(-0.5, 0.0, 0.2)});
  int through = 0;
  for (const DiskData& d : dom.disks())
    if (d.through_origin) ++through;
  CHECK(through == 1);
}

TEST_CASE("decimal string input is preserved in extended precision") {
  auto dom = CircularDomain::validate({DiskSpec("0.1", "0", "0.05")});
  // 0.1 is not a binary double; the stored center must match the decimal.
  mpreal err = abs(real(dom.disk(0).center) - mpreal("0.1"));
  CHECK(to_double(err) < 1e-70);
}
