#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tightpack/schedule.hpp"

using namespace tightpack;

namespace {

struct Reference {
  std::int64_t T = 0;
  double eps_before = 0, p_before = 0, eps_at = 0, p_at = 0;
};

// Straight transcription of the recursion with its own arithmetic order.
Reference recompute(double n, double eps, double p, double drift, double base, double scale, double power) {
  const double stop = scale * std::pow(eps, power) * p;
  Reference r;
  r.eps_before = eps;
  r.p_before = p;
  while (p > stop) {
    r.eps_before = eps;
    r.p_before = p;
    const double step = eps * eps / (base * std::log(n));
    p = p * (1 - step);
    eps = eps * (1 + drift * step);
    ++r.T;
  }
  r.eps_at = eps;
  r.p_at = p;
  return r;
}

}  // namespace

TEST_CASE("digraph schedule first step at n = e^10") {
  const double n = std::exp(10.0);
  const Schedule s = digraph_schedule(n, 0.1, 0.5);
  REQUIRE(s.steps.size() >= 2);
  // eps_1 = 0.1 (1 + 4.23 * 0.01 / 1e6)
  CHECK(s.steps[1].epsilon == doctest::Approx(0.10000000423).epsilon(1e-13));
  CHECK(s.steps[1].p == doctest::Approx(0.5 * (1 - 1e-8)).epsilon(1e-15));
  CHECK(s.steps[0].kappa == doctest::Approx(1e5 * 10 / 0.01));
  CHECK(s.steps[0].r == doctest::Approx(2 * 1e8 / 0.5));
  CHECK(s.at_stop.p <= s.stop_threshold);
  CHECK(s.before_stop.p > s.stop_threshold);
  CHECK(s.stop_threshold == doctest::Approx(std::pow(0.1, 1.0 / 8) * 0.5 / 8));
  CHECK(s.monotone);
  CHECK(s.bound_holds);
  CHECK(s.truncated);
  CHECK(s.step(s.T).p == s.at_stop.p);
  CHECK(s.step(s.T - 1).epsilon == s.before_stop.epsilon);
}

TEST_CASE("hyper schedule first step at n = e^10") {
  const double n = std::exp(10.0);
  const auto rows = schedule_prefix(ScheduleKind::hypergraph, n, 0.1, 0.7, 3);
  CHECK(rows[1].epsilon == doctest::Approx(0.10000000066).epsilon(1e-13));
  CHECK(rows[1].p == doctest::Approx(0.7 * (1 - 1e-9)).epsilon(1e-15));
  CHECK(rows[0].r == doctest::Approx(n * 1e6 * 10 / 0.01 / (3 * 0.7)));

  const Schedule s = hyper_schedule(n, 0.1, 0.7);
  CHECK(s.steps[1].epsilon == rows[1].epsilon);
  CHECK(s.steps[2].p == rows[2].p);
  CHECK(s.at_stop.p <= s.stop_threshold);
  CHECK(s.before_stop.p > s.stop_threshold);
  CHECK(s.stop_threshold == doctest::Approx(0.5 * std::pow(0.1, 1.0 / 15) * 0.7));
  CHECK(s.bound_holds);
}

TEST_CASE("schedules match an independent recomputation on a grid") {
  for (double eps : {0.3, 0.6, 0.9}) {
    for (double n : {16.0, 100.0}) {
      for (double p : {0.2, 0.7}) {
        CAPTURE(eps);
        CAPTURE(n);
        CAPTURE(p);
        const Schedule d = digraph_schedule(n, eps, p, 1 << 20);
        const Reference rd = recompute(n, eps, p, 4.23, 1e5, 1.0 / 8, 1.0 / 8);
        CHECK(d.T == rd.T);
        CHECK(d.at_stop.p == doctest::Approx(rd.p_at).epsilon(1e-12));
        CHECK(d.before_stop.epsilon == doctest::Approx(rd.eps_before).epsilon(1e-12));
        CHECK(d.monotone);
        CHECK(d.bound_holds);
        CHECK(d.before_stop.epsilon <= eps * std::pow(8 * std::pow(eps, -1.0 / 8), 4.23));

        const Schedule h = hyper_schedule(n, eps, p, 16);
        const Reference rh = recompute(n, eps, p, 6.6, 1e6, 0.5, 1.0 / 15);
        CHECK(h.T == rh.T);
        CHECK(h.at_stop.p == doctest::Approx(rh.p_at).epsilon(1e-12));
        CHECK(h.before_stop.epsilon == doctest::Approx(rh.eps_before).epsilon(1e-12));
        CHECK(h.monotone);
        CHECK(h.bound_holds);
        CHECK(h.truncated);
        CHECK(h.steps.size() == 16);

        // Stored rows: eps nondecreasing, p strictly decreasing.
        for (std::size_t t = 1; t < d.steps.size(); t += 997) {
          CHECK(d.steps[t].epsilon >= d.steps[t - 1].epsilon);
          CHECK(d.steps[t].p < d.steps[t - 1].p);
        }
      }
    }
  }
}

TEST_CASE("step() past the stored prefix agrees with a longer prefix") {
  const Schedule shortp = digraph_schedule(50, 0.5, 0.4, 8);
  const Schedule longp = digraph_schedule(50, 0.5, 0.4, 5000);
  for (std::int64_t t : {0, 7, 8, 100, 4999}) {
    CHECK(shortp.step(t).epsilon == longp.step(t).epsilon);
    CHECK(shortp.step(t).p == longp.step(t).p);
  }
  CHECK_THROWS_AS(shortp.step(shortp.T + 1), std::out_of_range);
  CHECK_THROWS_AS(shortp.step(-1), std::out_of_range);
}

TEST_CASE("fixed kappa schedules") {
  const Schedule s = fixed_kappa_schedule(ScheduleKind::digraph, 64, 0.1, 0.5, 5.0);
  CHECK(s.steps[1].p == doctest::Approx(0.5 * 0.8));
  CHECK(s.steps[1].epsilon == doctest::Approx(0.1 * (1 + 4.23 / 5)));
  CHECK(s.steps[0].r == doctest::Approx(2 * 5 / 0.5));
  CHECK(s.at_stop.p <= s.stop_threshold);
  // Rounds-capped desk runs may read past T.
  CHECK_NOTHROW(s.step(s.T + 3));
  CHECK(s.step(s.T + 1).p < s.at_stop.p);

  const Schedule one = fixed_kappa_schedule(ScheduleKind::hypergraph, 64, 0.1, 1.0, 1.0);
  CHECK(one.T == 1);
  CHECK(one.at_stop.p == 0.0);
  CHECK(one.steps[0].r == doctest::Approx(64 * 1.0 / 3.0));

  CHECK_THROWS_AS(fixed_kappa_schedule(ScheduleKind::digraph, 64, 0.1, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("schedule input validation") {
  CHECK_THROWS_AS(digraph_schedule(100, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(digraph_schedule(100, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(digraph_schedule(100, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hyper_schedule(1.0, 0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(hyper_schedule(100, 0.1, 0.0), std::invalid_argument);
  CHECK(to_string(ScheduleKind::digraph) == "digraph");
  CHECK(constants_for(ScheduleKind::hypergraph).drift == 6.6);
}
