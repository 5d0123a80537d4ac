#include "tightpack/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace tightpack {

ScheduleConstants constants_for(ScheduleKind kind) {
  if (kind == ScheduleKind::digraph) return {4.23, 1e5, 1.0 / 8.0, 1.0 / 8.0};
  return {6.6, 1e6, 0.5, 1.0 / 15.0};
}

std::string to_string(ScheduleKind kind) { return kind == ScheduleKind::digraph ? "digraph" : "hypergraph"; }

namespace {

void check_inputs(double n, double epsilon, double p, bool allow_p_one = false) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("schedule: epsilon must lie in (0, 1)");
  if (!(p > 0.0 && (p < 1.0 || (allow_p_one && p == 1.0)))) {
    throw std::invalid_argument("schedule: p must lie in (0, 1)");
  }
  if (!(n > 1.0)) throw std::invalid_argument("schedule: n must exceed 1");
}

// Carries the recursion forward one row at a time. `inv_kappa` is 1/kappa_t,
// which for the analytic schedule is eps_t^2 / (base log n).
struct Stepper {
  ScheduleKind kind;
  ScheduleConstants c;
  double n;
  double log_n;
  bool fixed;
  double kappa_fixed;

  double inv_kappa(double eps) const {
    return fixed ? 1.0 / kappa_fixed : eps * eps / (c.base * log_n);
  }
  ScheduleStep row(double eps, double p) const {
    ScheduleStep s;
    s.epsilon = eps;
    s.p = p;
    s.kappa = 1.0 / inv_kappa(eps);
    s.r = kind == ScheduleKind::digraph ? 2.0 * s.kappa / p : n * s.kappa / (3.0 * p);
    return s;
  }
  void advance(double& eps, double& p) const {
    const double x = inv_kappa(eps);
    const double next_eps = eps * (1.0 + c.drift * x);
    p = p * (1.0 - x);
    eps = next_eps;
  }
};

Schedule build(const Stepper& st, double epsilon, double p, std::size_t row_cap) {
  Schedule s;
  s.kind = st.kind;
  s.fixed_kappa = st.fixed;
  s.n = st.n;
  s.epsilon = epsilon;
  s.p = p;
  s.stop_threshold = st.c.stop_scale * std::pow(epsilon, st.c.stop_power) * p;
  s.epsilon_bound = epsilon * std::pow(std::pow(epsilon, -st.c.stop_power) / st.c.stop_scale, st.c.drift);

  double eps = epsilon, pt = p;
  double old_eps = eps, old_p = pt;
  std::int64_t t = 0;
  s.steps.push_back(st.row(eps, pt));
  // T reaches the hundreds of millions, so the loop keeps only scalars.
  while (pt > s.stop_threshold) {
    old_eps = eps;
    old_p = pt;
    st.advance(eps, pt);
    ++t;
    if (eps < old_eps || !(pt < old_p)) {
      s.monotone = false;
      break;  // p stuck: no stop index exists
    }
    if (s.steps.size() < row_cap) s.steps.push_back(st.row(eps, pt));
  }
  s.T = t;
  s.truncated = s.steps.size() < static_cast<std::size_t>(t) + 1;
  s.before_stop = t == 0 ? s.steps.front() : st.row(old_eps, old_p);
  s.at_stop = st.row(eps, pt);
  s.bound_holds = s.before_stop.epsilon <= s.epsilon_bound;
  return s;
}

Stepper stepper(ScheduleKind kind, double n, bool fixed, double kappa) {
  return Stepper{kind, constants_for(kind), n, std::log(n), fixed, kappa};
}

}  // namespace

ScheduleStep Schedule::step(std::int64_t t) const {
  if (t < 0 || (t > T && !fixed_kappa)) throw std::out_of_range("Schedule::step: index outside 0..T");
  if (static_cast<std::size_t>(t) < steps.size()) return steps[static_cast<std::size_t>(t)];
  if (t == T) return at_stop;
  if (t == T - 1) return before_stop;
  const double kappa = steps.front().kappa;
  Stepper st = stepper(kind, n, fixed_kappa, kappa);
  // Past T only the fixed-kappa recursion is meaningful (desk rounds cap).
  const bool from_stop = t > T;
  double eps = from_stop ? at_stop.epsilon : steps.back().epsilon;
  double pt = from_stop ? at_stop.p : steps.back().p;
  std::int64_t i = from_stop ? T : static_cast<std::int64_t>(steps.size()) - 1;
  for (; i < t; ++i) st.advance(eps, pt);
  return st.row(eps, pt);
}

Schedule digraph_schedule(double n, double epsilon, double p, std::size_t row_cap) {
  check_inputs(n, epsilon, p);
  return build(stepper(ScheduleKind::digraph, n, false, 0.0), epsilon, p, row_cap);
}

Schedule hyper_schedule(double n, double epsilon, double p, std::size_t row_cap) {
  check_inputs(n, epsilon, p);
  return build(stepper(ScheduleKind::hypergraph, n, false, 0.0), epsilon, p, row_cap);
}

std::vector<ScheduleStep> schedule_prefix(ScheduleKind kind, double n, double epsilon, double p, std::size_t rows) {
  check_inputs(n, epsilon, p);
  const Stepper st = stepper(kind, n, false, 0.0);
  std::vector<ScheduleStep> out;
  double eps = epsilon, pt = p;
  for (std::size_t t = 0; t < rows; ++t) {
    out.push_back(st.row(eps, pt));
    st.advance(eps, pt);
  }
  return out;
}

Schedule fixed_kappa_schedule(ScheduleKind kind, double n, double epsilon, double p, double kappa,
                              std::size_t row_cap) {
  // Complete graphs (p = 1) are routine test inputs for the desk profile.
  check_inputs(n, epsilon, p, true);
  if (!(kappa >= 1.0)) throw std::invalid_argument("schedule: kappa must be >= 1");
  return build(stepper(kind, n, true, kappa), epsilon, p, row_cap);
}

}  // namespace tightpack
