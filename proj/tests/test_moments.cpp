#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bergman/moments.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;

namespace {

CircularDomain reference() { return CircularDomain::validate({DiskSpec(0.4, 0.0, 0.2)}); }
CircularDomain annulus() { return CircularDomain::validate({DiskSpec(0.0, 0.0, 0.5)}); }

// Brute-force 2-D quadrature oracle for <z^n, z^m>: polar rule per disk,
// exact for monomials once the orders exceed the degree.  Independent of the
// closed-form binomial route in MomentOracle.
cplx disk_moment_quad(cplx c, double R, int n, int m) {
  int radial = (n + m) / 2 + 3;
  int angular = n + m + 4;
  std::vector<double> gx, gw;
  gauss_legendre(radial, gx, gw);
  cplx acc(0);
  for (int i = 0; i < radial; ++i) {
    double u = 0.5 * (gx[std::size_t(i)] + 1.0);
    double wu = 0.5 * gw[std::size_t(i)];
    double rho = R * std::sqrt(u);
    for (int k = 0; k < angular; ++k) {
      cplx z = c + std::polar(rho, 2 * kPi * k / angular);
      cplx f = std::pow(z, n) * std::pow(std::conj(z), m);
      acc += R * R * wu / double(angular) * f;
    }
  }
  return acc;
}

cplx moment_quad(const CircularDomain& dom, int n, int m) {
  cplx acc = disk_moment_quad(cplx(0), 1.0, n, m);
  for (const DiskData& d : dom.disks()) acc -= disk_moment_quad(d.c_d, d.r_d, n, m);
  return acc;
}

mpcplx inner_product(const MomentOracle& mo, const std::vector<mpcplx>& f,
                     const std::vector<mpcplx>& g) {
  // <f, g> = sum_{j,k} f_j conj(g_k) moment(j, k)
  mpcplx acc(0);
  for (std::size_t j = 0; j < f.size(); ++j)
    for (std::size_t k = 0; k < g.size(); ++k)
      acc += f[j] * conj(g[k]) * mo.moment(int(j), int(k));
  return acc;
}

std::vector<mpcplx> full_coeffs(const MonicPolynomial& p) {
  std::vector<mpcplx> c = p.lower_coeffs();
  c.push_back(mpcplx(1));
  return c;
}

}  // namespace

TEST_CASE("annulus diagonal moments") {
  MomentOracle mo(annulus());
  for (int n : {0, 1, 5, 9}) {
    double expect = (1.0 - std::pow(0.5, 2 * n + 2)) / (n + 1);
    CHECK(to_double(real(mo.moment(n, n))) == Catch::Approx(expect).epsilon(1e-14));
    if (n > 0) CHECK(to_double(abs(mo.moment(n, 0))) < 1e-70);
  }
}

TEST_CASE("area moment and the reference (1,0) moment") {
  MomentOracle mo(reference());
  CHECK(to_double(real(mo.moment(0, 0))) == Catch::Approx(0.96).epsilon(1e-14));
  CHECK(to_double(real(mo.moment(1, 0))) == Catch::Approx(-0.016).epsilon(1e-13));
  CHECK(std::abs(to_cplx(mo.moment(1, 0)) - moment_quad(reference(), 1, 0)) < 1e-10);
}

TEST_CASE("closed-form moments match the quadrature oracle") {
  auto dom = CircularDomain::validate(
      {DiskSpec(0.3, 0.25, 0.15), DiskSpec(-0.4, -0.1, 0.2)});
  MomentOracle mo(dom);
  for (auto [n, m] : std::vector<std::pair<int, int>>{
           {0, 0}, {1, 0}, {2, 1}, {3, 3}, {5, 2}, {7, 6}, {8, 8}}) {
    cplx closed = to_cplx(mo.moment(n, m));
    cplx quad = moment_quad(dom, n, m);
    CHECK(std::abs(closed - quad) < 1e-10);
  }
}

TEST_CASE("gram matrix structure") {
  MomentOracle mo_a(annulus());
  auto Ga = mo_a.gram(6);
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j)
      if (i != j) CHECK(to_double(abs(Ga.at(i, j))) < 1e-70);

  MomentOracle mo(reference());
  auto G = mo.gram(10);
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j)
      CHECK(to_double(abs(G.at(i, j) - conj(G.at(j, i)))) < 1e-70);
  // Positive definite: Cholesky succeeds.
  auto ch = CholeskyHerm<mpcplx, mpreal>::factor(G);
  CHECK(ch.has_value());
}

TEST_CASE("orthopoly on the annulus is the pure power") {
  MomentOracle mo(annulus());
  auto res = mo.orthopoly(7);
  CHECK(res.poly.degree() == 7);
  for (const mpcplx& b : res.poly.lower_coeffs()) CHECK(to_double(abs(b)) < 1e-70);
  double kappa_expect = std::sqrt(8.0 / (1.0 - std::pow(0.5, 16)));
  CHECK(to_double(res.kappa) == Catch::Approx(kappa_expect).epsilon(1e-14));
}

TEST_CASE("degree zero and degree one") {
  MomentOracle mo(reference());
  auto r0 = mo.orthopoly(0);
  CHECK(r0.poly.degree() == 0);
  CHECK(to_double(r0.kappa) == Catch::Approx(1.0 / std::sqrt(0.96)).epsilon(1e-14));

  auto r1 = mo.orthopoly(1);
  // P_1(z) = z - <z,1>/<1,1> = z + 0.016/0.96.
  CHECK(to_double(real(r1.poly.coeff(0))) == Catch::Approx(0.016 / 0.96).epsilon(1e-13));
  CHECK(std::abs(to_cplx(inner_product(mo, full_coeffs(r1.poly), {mpcplx(1)}))) < 1e-60);
}

TEST_CASE("orthogonality residuals at degree up to 40") {
  auto dom = reference();
  MomentOracle mo(dom);
  auto all = mo.orthopoly_upto(40);
  for (int n : {5, 17, 28, 40}) {
    const auto& res = all[std::size_t(n)];
    mpreal norm = sqrt(res.norm2);
    auto coeffs = full_coeffs(res.poly);
    double worst = 0;
    for (int m = 0; m < n; ++m) {
      mpcplx ip(0);
      for (int k = 0; k <= n; ++k) ip += coeffs[std::size_t(k)] * mo.moment(k, m);
      worst = std::max(worst, to_double(abs(ip) / norm));
    }
    CHECK(worst < 1e-20);
  }
}

TEST_CASE("extremality of the monic orthogonal polynomial") {
  MomentOracle mo(reference());
  auto res = mo.orthopoly(12);
  mpreal base = res.norm2;
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<mpcplx> q = full_coeffs(res.poly);
    for (int k = 0; k < 12; ++k)
      q[std::size_t(k)] += mpcplx(mpreal(1e-3 * u(rng)), mpreal(1e-3 * u(rng)));
    mpreal norm2 = real(inner_product(mo, q, q));
    CHECK(norm2 > base);
  }
}

TEST_CASE("kappa_n approaches sqrt(n+1)") {
  MomentOracle mo(reference());
  auto res = mo.orthopoly(60);
  CHECK(std::abs(to_double(res.kappa) / std::sqrt(61.0) - 1.0) < 0.02);
}

TEST_CASE("curious identity P_n(0) = sum_j r_j^2 P_n(c_j)") {
  for (auto dom : {reference(), CircularDomain::validate({DiskSpec(0.35, 0.1, 0.15),
                                                          DiskSpec(-0.3, -0.2, 0.18)})}) {
    MomentOracle mo(dom);
    auto all = mo.orthopoly_upto(40);
    for (int n : {3, 11, 26, 40}) {
      const MonicPolynomial& p = all[std::size_t(n)].poly;
      mpcplx lhs = p.eval(mpcplx(0));
      mpcplx rhs(0);
      for (const DiskData& d : dom.disks())
        rhs += d.radius * d.radius * p.eval(d.center);
      double scale = std::max(to_double(abs(lhs)), to_double(abs(rhs)));
      CHECK(to_double(abs(lhs - rhs)) <= 1e-15 * scale);
    }
  }
}

TEST_CASE("monic polynomial evaluation and derivative") {
  // p(z) = z^3 + 2z - 5
  MonicPolynomial p(3, {mpcplx(-5), mpcplx(2), mpcplx(0)}, 256);
  CHECK(std::abs(p.eval(cplx(2.0, 0.0)) - cplx(7.0)) < 1e-14);
  auto [v, dv] = p.eval_with_derivative(mpcplx(2));
  CHECK(to_double(abs(v - mpcplx(7))) < 1e-70);
  CHECK(to_double(abs(dv - mpcplx(14))) < 1e-70);  // 3 z^2 + 2 at z = 2
  auto d = p.derivative_coeffs();
  REQUIRE(d.size() == 3);
  CHECK(to_double(abs(d[2] - mpcplx(3))) == 0);
}
