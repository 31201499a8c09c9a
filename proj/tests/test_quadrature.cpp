#include <cmath>

#include "doctest.h"
#include "logfem/quadrature.hpp"

using logfem::gauss_legendre_unit;
using logfem::QuadratureRule;
using logfem::triangle_degree5;

namespace {

double integrate_1d_monomial(const QuadratureRule& rule, int k) {
  double acc = 0.0;
  for (int q = 0; q < rule.size(); ++q) acc += rule.weights[q] * std::pow(rule.points[q][0], k);
  return acc;
}

double integrate_tri_monomial(const QuadratureRule& rule, int a, int b) {
  double acc = 0.0;
  for (int q = 0; q < rule.size(); ++q)
    acc += rule.weights[q] * std::pow(rule.points[q][0], a) * std::pow(rule.points[q][1], b);
  return acc;
}

// exact integral of x^a y^b over the reference triangle: a! b! / (a + b + 2)!
double tri_monomial_exact(int a, int b) {
  auto factorial = [](int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

}  // namespace

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("gauss rules integrate monomials exactly") {
  for (int n = 1; n <= 8; ++n) {
    const auto rule = gauss_legendre_unit(n);
    REQUIRE(rule.size() == n);
    double wsum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= rule.exact_degree; ++k) {
      CHECK(integrate_1d_monomial(rule, k) == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
    // one degree beyond is inexact (sanity that exact_degree is sharp)
    const int k = rule.exact_degree + 1;
    CHECK(std::abs(integrate_1d_monomial(rule, k) - 1.0 / (k + 1)) > 1e-13 / (k + 1));
  }
}

TEST_CASE("triangle rule is exact to degree five") {
  const auto rule = triangle_degree5();
  REQUIRE(rule.size() == 7);
  double wsum = 0.0;
  for (double w : rule.weights) {
    CHECK(w > 0.0);
    wsum += w;
  }
  CHECK(wsum == doctest::Approx(0.5).epsilon(1e-15));
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; a + b <= 5; ++b) {
      CHECK(integrate_tri_monomial(rule, a, b) ==
            doctest::Approx(tri_monomial_exact(a, b)).epsilon(1e-13));
    }
  }
  // degree six is not matched
  CHECK(std::abs(integrate_tri_monomial(rule, 6, 0) - tri_monomial_exact(6, 0)) > 1e-8);
}

TEST_CASE("points lie inside the reference element") {
  const auto line = gauss_legendre_unit(6);
  for (const auto& p : line.points) {
    CHECK(p[0] > 0.0);
    CHECK(p[0] < 1.0);
  }
  const auto tri = triangle_degree5();
  for (const auto& p : tri.points) {
    CHECK(p[0] > 0.0);
    CHECK(p[1] > 0.0);
    CHECK(p[0] + p[1] < 1.0);
  }
}

TEST_CASE("assembly rule choice") {
  CHECK(logfem::assembly_rule(1, 1).size() == 4);
  CHECK(logfem::assembly_rule(1, 2).size() == 6);
  CHECK(logfem::assembly_rule(2, 1).size() == 7);
}

TEST_SUITE_END();
