#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include "credal/credal_div.hpp"
#include "credal/duality.hpp"
#include "credal/error.hpp"
#include "credal/parallel.hpp"
#include "credal/random.hpp"

using namespace credal;

TEST_CASE("map_indices matches the serial reference") {
  set_worker_threads(4);
  const auto f = [](std::size_t i) { return static_cast<double>(i * i) / 7.0; };
  CHECK(map_indices(100, f, Execution::parallel) == map_indices_serial(100, f));
  CHECK(map_indices(0, f).empty());
  set_worker_threads(0);
}

TEST_CASE("the first exception by index is rethrown") {
  set_worker_threads(4);
  const auto f = [](std::size_t i) -> int {
    if (i == 3) throw std::runtime_error("three");
    if (i == 7) throw std::runtime_error("seven");
    return 0;
  };
  for (auto exec : {Execution::serial, Execution::parallel}) {
    try {
      map_indices(10, f, exec);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "three");
    }
  }
  set_worker_threads(0);
}

TEST_CASE("argmax takes the lowest index on ties") {
  CHECK(argmax_lowest(std::vector<double>{1, 3, 3, 2}) == 1);
  CHECK(argmax_lowest(std::vector<double>{5}) == 0);
}

TEST_CASE("thread limit from the environment") {
  setenv("CREDAL_DIV_THREADS", "2", 1);
  CHECK(apply_thread_limit_from_env() == 2);
  CHECK(worker_threads() <= 2);
  setenv("CREDAL_DIV_THREADS", "0", 1);
  CHECK(apply_thread_limit_from_env() == 0);
  CHECK(worker_threads() >= 1);
  setenv("CREDAL_DIV_THREADS", "two", 1);
  CHECK_THROWS_AS(apply_thread_limit_from_env(), Error);
  setenv("CREDAL_DIV_THREADS", "-1", 1);
  CHECK_THROWS_AS(apply_thread_limit_from_env(), Error);
  unsetenv("CREDAL_DIV_THREADS");
  CHECK(apply_thread_limit_from_env() == 0);
}

TEST_CASE("parallel kernels equal the serial reference bit for bit") {
  for (int threads : {1, 2, 4}) {
    set_worker_threads(threads);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const CredalSet p = gen_random_credal(seed, 4, 5, 0.01);
      const CredalSet q = gen_random_credal(seed + 40, 4, 3, 0.01);
      const auto s = Execution::serial;
      const auto par = Execution::parallel;
      const SolverReport a = gkl(p, q, kDefaultTolerance, s);
      const SolverReport b = gkl(p, q, kDefaultTolerance, par);
      CHECK(a.value == b.value);
      CHECK(a.witness_outer == b.witness_outer);
      CHECK(a.gap == b.gap);
      const SolverReport ta = directed_tv(p, q, s);
      const SolverReport tb = directed_tv(p, q, par);
      CHECK(ta.value == tb.value);
      CHECK(ta.witness_outer == tb.witness_outer);
      CHECK(gwasserstein(p, q, 2.0, s) == gwasserstein(p, q, 2.0, par));
      CHECK(maximize_dual_tv(p, q, s).dual == maximize_dual_tv(p, q, par).dual);
    }
  }
  set_worker_threads(0);
}
