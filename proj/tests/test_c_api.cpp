// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "neel/neel.h"

TEST_CASE("version and status strings") {
  CHECK(std::string(neel_version()).size() > 0);
  CHECK(std::string(neel_status_string(NEEL_OK)) == "ok");
  CHECK(std::string(neel_minimize_status_string(NEEL_MIN_NO_CRITICAL_POINT)) == "no-critical-point");
}

TEST_CASE("special functions and error reporting") {
  double v = 0, e = 0;
  REQUIRE(neel_eval_I0(&v, &e) == NEEL_OK);
  CHECK(std::abs(v + std::numbers::egamma) <= 1e-8);
  CHECK(std::string(neel_last_error()).empty());
  CHECK(neel_eval_I(-1.0, &v, &e) == NEEL_ERR_DOMAIN);
  CHECK(std::string(neel_last_error()).size() > 0);
  CHECK(neel_eval_I(1.0, nullptr, nullptr) == NEEL_ERR_INVALID_ARGUMENT);
  double t = 0;
  REQUIRE(neel_ratio_root(1.0 / 3.0, &t) == NEEL_OK);
  double q = 0;
  REQUIRE(neel_I_prime_ratio(t, &q) == NEEL_OK);
  CHECK(std::abs(q - 1.0 / 3.0) <= 1e-8);
}

TEST_CASE("config handles and W") {
  const double a[] = {0.0};
  const int d[] = {1};
  neel_config* c = nullptr;
  REQUIRE(neel_config_create(NEEL_MODEL_UNCONFINED, std::numbers::pi / 2, 1, a, d, &c) == NEEL_OK);
  double W = 0;
  int status = -1;
  REQUIRE(neel_W(c, &W, &status, nullptr, nullptr, nullptr) == NEEL_OK);
  CHECK(status == NEEL_ENERGY_FINITE);
  CHECK(W == doctest::Approx(std::numbers::pi / 2 * std::numbers::egamma).epsilon(1e-10));
  neel_config_destroy(c);

  const double bad[] = {0.5, 0.1};
  const int dd[] = {1, -1};
  neel_config* b = nullptr;
  CHECK(neel_config_create(NEEL_MODEL_CONFINED, 1.0, 2, bad, dd, &b) == NEEL_ERR_DOMAIN);
  CHECK(b == nullptr);
  CHECK(neel_config_create(7, 1.0, 2, bad, dd, &b) == NEEL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("minimisation through the C interface") {
  const double a[] = {-0.3, 0.6};
  const int d[] = {1, -1};
  neel_config* c = nullptr;
  REQUIRE(neel_config_create(NEEL_MODEL_CONFINED, std::numbers::pi / 2, 2, a, d, &c) == NEEL_OK);
  double argmin[2], W, g;
  int iters, status;
  REQUIRE(neel_minimize_W(c, 0, 0, argmin, &W, &g, &iters, &status) == NEEL_OK);
  CHECK(status == NEEL_MIN_CONVERGED);
  CHECK(std::abs(argmin[0] + argmin[1]) <= 1e-6);
  neel_config_destroy(c);
}

TEST_CASE("simulation handle") {
  const double a[] = {0.0};
  const int d[] = {1};
  neel_config* c = nullptr;
  REQUIRE(neel_config_create(NEEL_MODEL_CONFINED, std::numbers::pi / 2, 1, a, d, &c) == NEEL_OK);
  neel_simulation* s = nullptr;
  REQUIRE(neel_simulate(c, 1e-2, 1024, 4, 0, 0, 0, 1, &s) == NEEL_OK);
  const std::size_t n = neel_simulation_nodes(s);
  CHECK(n == 1024);
  std::vector<double> x(n), phi(n);
  REQUIRE(neel_simulation_profile(s, x.data(), phi.data()) == NEEL_OK);
  CHECK(x.front() == doctest::Approx(-1.0));
  double ex, an, st, tot;
  REQUIRE(neel_simulation_energy(s, &ex, &an, &st, &tot) == NEEL_OK);
  CHECK(tot == doctest::Approx(ex + an + st));
  int status;
  REQUIRE(neel_simulation_info(s, &status, nullptr, nullptr, nullptr) == NEEL_OK);
  CHECK(status == NEEL_DESCENT_CONVERGED);
  CHECK(neel_simulation_trace_length(s) > 0);
  neel_simulation_destroy(s);
  neel_config_destroy(c);
}

TEST_CASE("step functions") {
  neel_step* s = nullptr;
  const char* json = R"({"alpha": 1.0, "base": -1.0, "jumps": [{"b": 0.1, "size": 2.0}]})";
  REQUIRE(neel_step_from_json(json, &s) == NEEL_OK);
  int iota, simple;
  double eta;
  REQUIRE(neel_step_analyse(s, &iota, &eta, &simple) == NEEL_OK);
  CHECK(iota == 1);
  CHECK(simple == 1);
  std::size_t count = 0;
  CHECK(neel_step_profile(s, 0, nullptr, nullptr, &count) == NEEL_ERR_BUFFER_TOO_SMALL);
  CHECK(count == 1);
  double pa[1];
  int pd[1];
  REQUIRE(neel_step_profile(s, 1, pa, pd, &count) == NEEL_OK);
  CHECK(pd[0] == 1);
  neel_step_destroy(s);
  CHECK(neel_step_from_json("{not json", &s) == NEEL_ERR_DOMAIN);
}

TEST_CASE("verification report") {
  std::size_t count = 0;
  CHECK(neel_suite_criteria("specfun", nullptr, 0, &count) == NEEL_ERR_BUFFER_TOO_SMALL);
  std::vector<int> ids(count);
  REQUIRE(neel_suite_criteria("specfun", ids.data(), ids.size(), &count) == NEEL_OK);
  neel_report* r = nullptr;
  REQUIRE(neel_verify(ids.data(), ids.size(), 1, 1, &r) == NEEL_OK);
  CHECK(neel_report_size(r) == count);
  CHECK(neel_report_all_passed(r) == 1);
  std::size_t need = 0;
  CHECK(neel_report_text(r, 0, nullptr, 0, &need) == NEEL_ERR_BUFFER_TOO_SMALL);
  std::string line(need, '\0');
  REQUIRE(neel_report_text(r, 0, line.data(), line.size(), &need) == NEEL_OK);
  CHECK(line.find("PASS") != std::string::npos);
  neel_report_destroy(r);
}
