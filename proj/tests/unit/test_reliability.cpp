#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "mfpinn/benchmarks/registry.hpp"
#include "mfpinn/errors.hpp"
#include "mfpinn/reliability/distribution.hpp"
#include "mfpinn/reliability/mcs.hpp"
#include "mfpinn/reliability/normal.hpp"
#include "mfpinn/reliability/sampling.hpp"
#include "mfpinn/reliability/transition.hpp"

using namespace mfpinn;
using namespace mfpinn::reliability;

namespace {

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size()); }

ResponseFn first_column() {
  return [](const Eigen::MatrixXd& s, double) {
    std::vector<double> out(static_cast<std::size_t>(s.rows()));
    for (Eigen::Index i = 0; i < s.rows(); ++i) out[static_cast<std::size_t>(i)] = s(i, 0);
    return out;
  };
}

}  // namespace

TEST_SUITE("reliability") {
  TEST_CASE("normal cdf matches high-precision references") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-14));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-14));
    CHECK(normal_cdf(2.0) == doctest::Approx(0.9772498680518208).epsilon(1e-14));
    // Lower tail keeps relative precision.
    CHECK(normal_cdf(-6.0) == doctest::Approx(9.865876450376946e-10).epsilon(1e-12));
  }

  TEST_CASE("inverse normal cdf reference values") {
    CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(inverse_normal_cdf(0.955) - 1.6954) <= 1e-4);
    CHECK(std::abs(inverse_normal_cdf(0.841345) - 1.0) <= 1e-5);
    CHECK(std::abs(inverse_normal_cdf(0.8413447460685429) - 1.0) <= 1e-12);
    CHECK_THROWS_AS(inverse_normal_cdf(0.0), DomainError);
    CHECK_THROWS_AS(inverse_normal_cdf(1.0), DomainError);
    CHECK_THROWS_AS(inverse_normal_cdf(std::nan("")), DomainError);
  }

  TEST_CASE("inverse normal cdf round trip on [-6, 6]") {
    // p = Phi(x) is a rounded double; above x ~ 5.3 its spacing maps to more
    // than 1e-9 in x. The target is the exact quantile of that double,
    // recovered from a long double evaluation of Phi.
    double worst = 0.0;
    double worst_lower = 0.0;
    for (int i = 0; i <= 12000; ++i) {
      const long double x = -6.0L + 12.0L * i / 12000.0L;
      const double p = normal_cdf(static_cast<double>(x));
      const long double exact = 0.5L * std::erfc(-x / std::sqrt(2.0L));
      const long double density = std::exp(-0.5L * x * x) / std::sqrt(2.0L * 3.14159265358979323846L);
      const long double target = x - (exact - p) / density;
      const double got = inverse_normal_cdf(p);
      worst = std::max(worst, static_cast<double>(std::abs(got - target)));
      if (x <= 0.0L) worst_lower = std::max(worst_lower, static_cast<double>(std::abs(got - x)));
    }
    CHECK(worst <= 1e-9);
    CHECK(worst_lower <= 1e-9);
  }

  TEST_CASE("reliability index") {
    CHECK(reliability_index(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(reliability_index(0.045) == doctest::Approx(1.6954).epsilon(1e-4));
    CHECK(reliability_index(0.0) == std::numeric_limits<double>::infinity());
    CHECK(reliability_index(1.0) == -std::numeric_limits<double>::infinity());
    double prev = std::numeric_limits<double>::infinity();
    for (double pf = 0.01; pf < 1.0; pf += 0.01) {
      const double b = reliability_index(pf);
      CHECK(b < prev);
      CHECK(reliability_index(1.0 - pf) == doctest::Approx(-b).epsilon(1e-9));
      prev = b;
    }
    CHECK_THROWS_AS(reliability_index(-0.1), DomainError);
    CHECK_THROWS_AS(reliability_index(1.1), DomainError);
  }

  TEST_CASE("distribution construction and quantiles") {
    CHECK_THROWS_AS(Distribution::normal(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(Distribution::normal(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(Distribution::uniform(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Distribution::uniform(2.0, 1.0), DomainError);

    const auto u = Distribution::uniform(8.8, 9.2);
    CHECK(u.inverse_cdf(0.25) == doctest::Approx(8.9));
    CHECK(u.mean() == doctest::Approx(9.0));
    CHECK(u.stddev() == doctest::Approx(0.4 / std::sqrt(12.0)));
    CHECK(u.in_support(9.0));
    CHECK_FALSE(u.in_support(9.3));

    const auto n = Distribution::normal(-2.0, 1.0);
    CHECK(n.inverse_cdf(0.5) == doctest::Approx(-2.0));
    CHECK(n.cdf(-1.0) == doctest::Approx(0.8413447460685429));
    CHECK_THROWS_AS(n.inverse_cdf(0.0), DomainError);
    CHECK_THROWS_AS(u.inverse_cdf(1.0), DomainError);
  }

  TEST_CASE("sampling moments and determinism") {
    const auto a = sample(Distribution::uniform(0.0, 1.0), 100000, 7);
    CHECK(std::abs(mean_of(a) - 0.5) <= 0.005);
    const auto b = sample(Distribution::normal(-2.0, 1.0), 1000000, 7);
    CHECK(std::abs(mean_of(b) + 2.0) <= 0.01);
    CHECK(sample(Distribution::normal(-2.0, 1.0), 1000, 3) == sample(Distribution::normal(-2.0, 1.0), 1000, 3));
    CHECK(sample(Distribution::normal(-2.0, 1.0), 1000, 3) != sample(Distribution::normal(-2.0, 1.0), 1000, 4));
  }

  TEST_CASE("sample_matrix columns are independent streams") {
    const std::vector<Distribution> one = {Distribution::uniform(0.0, 1.0)};
    const std::vector<Distribution> two = {Distribution::uniform(0.0, 1.0), Distribution::normal(0.0, 1.0)};
    const Eigen::MatrixXd a = sample_matrix(one, 500, 11);
    const Eigen::MatrixXd b = sample_matrix(two, 500, 11);
    CHECK(a.col(0) == b.col(0));
    CHECK(b.rows() == 500);
    CHECK(b.cols() == 2);
  }

  TEST_CASE("latin hypercube puts one point in every stratum") {
    for (std::size_t n : {1u, 7u, 100u}) {
      const Eigen::MatrixXd u = latin_hypercube_unit(3, n, 5);
      REQUIRE(u.rows() == Eigen::Index(n));
      for (Eigen::Index j = 0; j < 3; ++j) {
        std::vector<int> hits(n, 0);
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
          REQUIRE(u(i, j) > 0.0);
          REQUIRE(u(i, j) < 1.0);
          ++hits[static_cast<std::size_t>(u(i, j) * double(n))];
        }
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
      }
    }
    CHECK(latin_hypercube_unit(2, 50, 9) == latin_hypercube_unit(2, 50, 9));
    const Eigen::MatrixXd g = latin_hypercube({Distribution::normal(-2.0, 1.0)}, 1000, 1);
    CHECK(g.col(0).mean() == doctest::Approx(-2.0).epsilon(0.01));
  }

  TEST_CASE("indicator treats zero as safe") {
    CHECK(indicator(-0.5) == 1);
    CHECK(indicator(0.0) == 0);
    CHECK(indicator(3.1) == 0);
    CHECK_THROWS_AS(indicator(std::nan("")), DomainError);
  }

  TEST_CASE("estimate from responses") {
    LimitState below{.threshold = 1.0, .time = 0.0};
    const std::vector<double> r = {0.0, 0.5, 1.0, 2.0};
    const ReliabilityResult e = estimate_from_responses(r, below);
    CHECK(e.n == 4);
    CHECK(e.failures == 2);
    CHECK(e.pf == doctest::Approx(0.5));
    CHECK(e.beta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 / 4.0)));

    LimitState above = below;
    above.sense = LimitState::Sense::kFailAbove;
    CHECK(estimate_from_responses(r, above).failures == 1);

    const std::vector<double> safe = {5.0, 6.0, 7.0};
    const ReliabilityResult s = estimate_from_responses(safe, below);
    CHECK(s.pf == 0.0);
    CHECK(s.beta == std::numeric_limits<double>::infinity());
    CHECK(s.pf_upper95 == doctest::Approx(1.0));

    const std::vector<double> bad = {1.0, 2.0, std::nan(""), 3.0};
    try {
      estimate_from_responses(bad, below);
      FAIL("expected NumericalError");
    } catch (const NumericalError& err) {
      CHECK(err.index() == 2);
    }
    CHECK_THROWS_AS(estimate_from_responses(std::vector<double>{}, below), DomainError);
  }

  TEST_CASE("mcs on trivial limit states") {
    const std::vector<Distribution> d = {Distribution::normal(0.0, 1.0)};
    const ResponseFn always_safe = [](const Eigen::MatrixXd& s, double) {
      return std::vector<double>(static_cast<std::size_t>(s.rows()), 1.0);
    };
    const ReliabilityResult a = mcs_probability_of_failure(always_safe, LimitState{}, d, 1000, 1);
    CHECK(a.pf == 0.0);
    CHECK(std::isinf(a.beta));

    const ReliabilityResult h = mcs_probability_of_failure(first_column(), LimitState{}, d, 200000, 1);
    CHECK(std::abs(h.pf - 0.5) <= 3.0 * h.std_error);
    CHECK(std::abs(h.beta) <= 0.01);
  }

  TEST_CASE("mcs on the closed-form decay response") {
    const auto def = benchmarks::make_benchmark("decay_ode");
    const ReliabilityResult r =
        mcs_probability_of_failure(def.oracle, def.limit, def.problem.stochastic, 200000, 17);
    CHECK(r.std_error == doctest::Approx(std::sqrt(0.045 * 0.955 / 200000.0)).epsilon(0.05));
    CHECK(std::abs(r.pf - 0.045) <= 3.0 * r.std_error);
  }

  TEST_CASE("pf curve is monotone and shares samples") {
    const std::vector<Distribution> d = {Distribution::normal(0.0, 1.0)};
    std::vector<double> th;
    for (int i = -30; i <= 30; ++i) th.push_back(0.1 * i);
    const auto below = pf_curve(first_column(), LimitState{}, th, d, 20000, 3);
    REQUIRE(below.size() == th.size());
    for (std::size_t i = 1; i < below.size(); ++i) CHECK(below[i].pf >= below[i - 1].pf);
    CHECK(below.front().pf < 0.01);
    CHECK(below.back().pf > 0.99);

    LimitState above{.sense = LimitState::Sense::kFailAbove};
    const auto up = pf_curve(first_column(), above, th, d, 20000, 3);
    for (std::size_t i = 0; i < up.size(); ++i) {
      // Ties have probability zero, so the two senses partition the samples.
      CHECK(up[i].failures + below[i].failures == 20000);
    }

    const std::vector<double> r = {0.0, 1.0, 2.0};
    const std::vector<double> extreme = {-10.0, 10.0};
    const auto e = pf_curve_from_responses(r, LimitState{}, extreme);
    CHECK(e[0].pf == 0.0);
    CHECK(e[1].pf == 1.0);
  }

  TEST_CASE("transition layer by bisection") {
    CHECK(find_transition_layer([](double x) { return x; }, -1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(find_transition_layer([](double x) { return x - 0.3; }, -1.0, 1.0) == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(find_transition_layer([](double x) { return 0.3 - x; }, -1.0, 1.0) == doctest::Approx(0.3).epsilon(1e-10));
    CHECK_THROWS_AS(find_transition_layer([](double x) { return x + 2.0; }, -1.0, 1.0), BracketError);

    const auto batch = find_transition_layers(
        [](const std::vector<double>& x) {
          return std::vector<double>{x[0] - 0.25, x[1] + 5.0, -x[2] - 0.5};
        },
        3, -1.0, 1.0);
    REQUIRE(batch.z.size() == 3);
    CHECK(*batch.z[0] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK_FALSE(batch.z[1].has_value());
    CHECK(*batch.z[2] == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(batch.unbracketed == 1);
  }

  TEST_CASE("transition layer on a sampled profile") {
    const std::vector<double> x = {-1.0, -0.5, 0.0, 0.5, 1.0};
    const std::vector<double> u = {1.0, 0.5, 0.2, -0.2, -1.0};
    CHECK(transition_on_grid(x, u) == doctest::Approx(0.25));
    CHECK_THROWS_AS(transition_on_grid(x, std::vector<double>(5, 1.0)), BracketError);
    CHECK_THROWS_AS(transition_on_grid(x, std::vector<double>(4, 1.0)), DomainError);
  }
}
