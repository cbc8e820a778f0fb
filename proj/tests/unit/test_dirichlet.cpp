#include <random>

#include "doctest.h"
#include "pzeta/dirichlet.hpp"

using namespace pzeta;

namespace {

Rational q(long p, long r = 1) { return make_rational(big(p), big(r)); }
DirichletSeries one() { return DirichletSeries::constant(1); }
DirichletSeries t(long p, long r, long c) { return DirichletSeries::term(q(p, r), big(c)); }

DirichletSeries random_series(std::mt19937& rng) {
  std::uniform_int_distribution<long> base(1, 6), coef(-4, 4), count(0, 4);
  DirichletSeries s;
  for (long i = count(rng); i > 0; --i) s.add_term(q(base(rng), base(rng) % 3 + 1), big(coef(rng)));
  return s;
}

}  // namespace

TEST_CASE("addition and negation") {
  auto a = one() - t(2, 1, 1);
  CHECK(a + DirichletSeries{} == a);
  CHECK((a + t(2, 1, 1)) == one());
  CHECK((a + negate(a)).empty());
}

TEST_CASE("multiplication") {
  auto a = one() - t(2, 1, 1);
  CHECK(a * one() == a);
  auto z6 = (one() - t(2, 1, 1)) * (one() - t(3, 1, 1));
  CHECK(z6 == one() - t(2, 1, 1) - t(3, 1, 1) + t(6, 1, 1));
  auto b = one() - t(5, 3, 1);
  CHECK(b * b == one() - t(5, 3, 2) + t(25, 9, 1));
}

TEST_CASE("evaluation") {
  CHECK(evaluate_exact(DirichletSeries{}, 4) == 0);
  CHECK(evaluate_exact(one() - t(2, 1, 1), 3) == q(7, 8));
  CHECK(evaluate_exact(one() - t(2, 1, 1), -1) == -1);
  CHECK(evaluate_numeric(one(), {2.5, 1.0}) == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(evaluate_numeric(one() - t(2, 1, 1), 1.0) - 0.5) < 1e-12);
}

TEST_CASE("ordinariness") {
  CHECK(is_ordinary(one() - t(2, 1, 1) - t(4, 1, 2)));
  CHECK_FALSE(is_ordinary(one() - t(5, 3, 5)));
  CHECK(is_ordinary(DirichletSeries{}));
}

TEST_CASE("rendering") {
  auto pi5 = one() - t(5, 3, 5) - t(5, 2, 10) + t(10, 3, 20) + t(5, 1, 30) - t(10, 1, 60);
  CHECK(render_pretty(pi5) == "1 - 5/(5/3)^s - 10/(5/2)^s + 20/(10/3)^s + 6/5^(s-1) - 6/10^(s-1)");
  CHECK(render_plain(pi5) == "1 - 5/(5/3)^s - 10/(5/2)^s + 20/(10/3)^s + 30/5^s - 60/10^s");
  CHECK(to_json(one() - t(2, 1, 1)) == R"({"terms":[{"q":"1/1","c":"1"},{"q":"2/1","c":"-1"}]})");
}

TEST_CASE("ring laws and round trip on a random corpus") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_series(rng), b = random_series(rng), c = random_series(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    for (long s = -3; s <= 4; ++s) {
      CHECK(evaluate_exact(a * b, s) == evaluate_exact(a, s) * evaluate_exact(b, s));
      CHECK(evaluate_exact(a + b, s) == evaluate_exact(a, s) + evaluate_exact(b, s));
      const double exact = evaluate_exact(a, s).get_d();
      const double approx = evaluate_numeric(a, static_cast<double>(s)).real();
      CHECK(std::abs(exact - approx) <= 1e-9 * std::max(1.0, std::abs(exact)));
    }
    if (is_ordinary(a) && is_ordinary(b)) CHECK(is_ordinary(a * b));
    CHECK(series_from_json(to_json(a)) == a);
  }
}
