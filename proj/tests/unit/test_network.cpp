#include <cmath>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "mfpinn/network/batch.hpp"
#include "mfpinn/network/checkpoint.hpp"
#include "mfpinn/network/network.hpp"
#include "support/derivative_cases.hpp"

using namespace mfpinn;
using network::Architecture;
using network::ParamSet;

namespace {

ParamSet random_params(std::uint64_t seed) {
  Architecture arch = Architecture::fully_connected(3, 2, 5, 2);
  arch.with_input_map(network::InputMap::from_bounds({-2.0, 0.0, -1.0}, {0.0, 4.0, 1.0}));
  ParamSet p = network::xavier_init(arch, seed);
  Rng rng(seed, 3);
  for (double& v : p.values()) v += rng.uniform(-0.2, 0.2);
  return p;
}

Eigen::MatrixXd random_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed, 9);
  Eigen::MatrixXd x(3, static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    x(0, c) = rng.uniform(-2.0, 0.0);
    x(1, c) = rng.uniform(0.0, 4.0);
    x(2, c) = rng.uniform(-1.0, 1.0);
  }
  return x;
}

/// u_hat = 1 + x_0 * raw.
struct Shift : network::AnsatzFor<Shift> {
  std::size_t outputs() const override { return 1; }
  template <class T>
  network::AnsatzTerms<T> make_terms(std::size_t, std::span<const deriv::Jet2<T>> in) const {
    return {deriv::Jet2<T>(T(1.0)), in[0]};
  }
};

}  // namespace

TEST_SUITE("network") {
  TEST_CASE("architecture counts and layout") {
    const Architecture a = Architecture::fully_connected(2, 5, 50, 1);
    CHECK(a.layer_count() == 6);
    CHECK(a.hidden_layers() == 5);
    CHECK(a.parameter_count() == 3 * 50 + 4 * 51 * 50 + 51);
    CHECK(a.activations().front() == network::Activation::kTanh);
    CHECK(a.activations().back() == network::Activation::kLinear);
    const ParamSet p(a);
    CHECK(p.layer(0).offset == 0);
    CHECK(p.layer(1).offset == 150);
    CHECK(p.layer(5).rows == 1);
    CHECK(p.layer(5).cols == 51);
    CHECK_THROWS_AS(Architecture({3}), DomainError);
  }

  TEST_CASE("weights are column-major with the bias in the last column") {
    ParamSet p(Architecture::fully_connected(2, 1, 3, 1));
    p.matrix(0)(1, 0) = 5.0;
    p.matrix(0)(2, 2) = 7.0;
    CHECK(p.values()[1] == 5.0);
    CHECK(p.weight(0, 1, 0) == 5.0);
    CHECK(p.bias(0, 2) == 7.0);
    CHECK(p.values()[8] == 7.0);
  }

  TEST_CASE("xavier initialisation respects its bound and is seeded") {
    const Architecture a = Architecture::fully_connected(2, 3, 20, 1);
    const ParamSet p = network::xavier_init(a, 11);
    const ParamSet q = network::xavier_init(a, 11);
    const ParamSet r = network::xavier_init(a, 12);
    CHECK(std::equal(p.values().begin(), p.values().end(), q.values().begin()));
    CHECK_FALSE(std::equal(p.values().begin(), p.values().end(), r.values().begin()));
    for (std::size_t j = 0; j < p.layer_count(); ++j) {
      const double bound = std::sqrt(6.0 / static_cast<double>(a.fan_in(j) + a.fan_out(j)));
      const auto w = p.matrix(j);
      CHECK(w.leftCols(w.cols() - 1).cwiseAbs().maxCoeff() <= bound);
      CHECK(w.col(w.cols() - 1).isZero(0.0));
    }
  }

  TEST_CASE("jet value channel equals the plain forward pass bitwise") {
    const ParamSet p = random_params(4);
    const std::vector<double> x = {-1.2, 2.5, 0.3};
    const std::vector<std::size_t> active = {1, 2};
    const std::vector<std::size_t> second = {2};
    const auto u = network::forward(p, x);
    const auto j = network::forward_jet(p, deriv::lift(std::span<const double>(x), active, second));
    for (std::size_t o = 0; o < u.size(); ++o) CHECK(j[o].value() == u[o]);
  }

  TEST_CASE("batched forward agrees with the per-point jets") {
    const ParamSet p = random_params(5);
    const Eigen::MatrixXd x = random_points(37, 5);
    network::BatchEvaluator ev;
    ev.forward(p, x, network::JetLayout{{1, 2}, {false, true}});
    const std::vector<std::size_t> active = {1, 2};
    const std::vector<std::size_t> second = {2};
    double worst = 0.0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      const std::vector<double> col(x.col(c).data(), x.col(c).data() + 3);
      const auto j = network::forward_jet(p, deriv::lift(std::span<const double>(col), active, second));
      for (Eigen::Index o = 0; o < 2; ++o) {
        worst = std::max(worst, std::abs(ev.value()(o, c) - j[o].value()));
        worst = std::max(worst, std::abs(ev.d1(0)(o, c) - j[o].d1(0)));
        worst = std::max(worst, std::abs(ev.d1(1)(o, c) - j[o].d1(1)));
        worst = std::max(worst, std::abs(ev.d2(1)(o, c) - j[o].d2(1)));
      }
    }
    CHECK(worst <= 1e-13);
    CHECK_THROWS_AS(ev.d2(0), DomainError);
  }

  TEST_CASE("batched reverse sweep matches the tape") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
      const testing::DerivativeCase c(seed);
      const auto tape = c.tape_gradient();
      const auto batch = c.batch_gradient();
      for (std::size_t i = 0; i < tape.size(); ++i) CHECK(batch[i] == doctest::Approx(tape[i]).epsilon(1e-11));
    }
  }

  TEST_CASE("reverse sweep restricted to trailing layers leaves earlier slices empty") {
    const testing::DerivativeCase c(7);
    const std::size_t first = c.params.layer_count() - 1;
    const auto full = c.batch_gradient();
    const auto part = c.batch_gradient(first);
    const std::size_t off = c.params.layer(first).offset;
    for (std::size_t i = 0; i < off; ++i) CHECK(part[i] == 0.0);
    for (std::size_t i = off; i < full.size(); ++i) CHECK(part[i] == full[i]);
  }

  TEST_CASE("freeze mask drives the tunable slice") {
    ParamSet p = random_params(2);
    CHECK(p.tunable_count() == p.size());
    p.set_trailing_tunable(1);
    CHECK(p.first_tunable_layer() == 2);
    CHECK(p.tunable_count() == p.layer(2).size());
    Eigen::VectorXd x = p.gather_tunable();
    x.setConstant(3.0);
    const std::vector<double> before(p.values().begin(), p.values().end());
    p.scatter_tunable(x);
    for (std::size_t i = 0; i < p.layer(2).offset; ++i) CHECK(p.values()[i] == before[i]);
    CHECK(p.values()[p.size() - 1] == 3.0);
    CHECK_THROWS_AS(p.set_trailing_tunable(0), DomainError);
    CHECK_THROWS_AS(p.set_trailing_tunable(4), DomainError);
  }

  TEST_CASE("checkpoints round-trip bit-exactly") {
    ParamSet p = random_params(8);
    p.set_trailing_tunable(2);
    const ParamSet q = network::checkpoint_from_json(network::checkpoint_to_json(p));
    CHECK(q.architecture() == p.architecture());
    CHECK(q.freeze_mask() == p.freeze_mask());
    CHECK(std::equal(p.values().begin(), p.values().end(), q.values().begin()));
    const auto path = std::filesystem::temp_directory_path() / "mfpinn_ckpt_test.json";
    network::save_checkpoint(p, path);
    const ParamSet r = network::load_checkpoint(path);
    CHECK(std::equal(p.values().begin(), p.values().end(), r.values().begin()));
    std::filesystem::remove(path);
    CHECK_THROWS(network::checkpoint_from_json("{\"format\": \"something else\"}"));
  }

  TEST_CASE("boundary ansatz is applied per output") {
    const Shift s;
    const std::vector<deriv::Jet2<double>> in = {deriv::Jet2<double>(0.0), deriv::Jet2<double>(0.5)};
    const std::vector<deriv::Jet2<double>> raw = {deriv::Jet2<double>(42.0)};
    CHECK(network::apply_ansatz<double>(s, raw, in)[0].value() == 1.0);
    const std::vector<deriv::Jet2<double>> two = {raw[0], raw[0]};
    CHECK_THROWS_AS(network::apply_ansatz<double>(s, two, in), DomainError);
  }
}
