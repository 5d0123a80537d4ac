#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tightpack {

/// Which packing driver a schedule belongs to. The two differ only in their
/// constants.
enum class ScheduleKind { digraph, hypergraph };

struct ScheduleConstants {
  double drift;       // 4.23 or 6.6
  double base;        // 1e5 or 1e6, multiplies log n in kappa_t
  double stop_scale;  // 1/8 or 1/2
  double stop_power;  // 1/8 or 1/15
};

ScheduleConstants constants_for(ScheduleKind kind);

/// One schedule row. kappa_t is the target cover multiplicity and r_t the
/// number of procedure copies run in round t.
struct ScheduleStep {
  double epsilon = 0.0;
  double p = 0.0;
  double kappa = 0.0;
  double r = 0.0;
};

/// Parameter drift for the iterated packing:
///   eps_{t+1} = eps_t (1 + drift / kappa_t),  p_{t+1} = p_t (1 - 1 / kappa_t)
/// stopping at the least T with p_T <= stop_scale * eps^{stop_power} * p.
///
/// With kappa_t = base log n / eps_t^2, T runs into the hundreds of millions
/// for small eps, so only a prefix of rows is kept; the rows at T-1 and T are
/// always available.
struct Schedule {
  ScheduleKind kind = ScheduleKind::digraph;
  bool fixed_kappa = false;  // desk variant: kappa_t = kappa for all t
  double n = 0.0;
  double epsilon = 0.0;
  double p = 0.0;
  double stop_threshold = 0.0;
  std::int64_t T = 0;
  std::vector<ScheduleStep> steps;  // rows 0..steps.size()-1
  bool truncated = false;           // steps holds fewer than T+1 rows
  ScheduleStep before_stop;         // row T-1 (row 0 when T = 0)
  ScheduleStep at_stop;             // row T
  bool monotone = true;             // eps_t nondecreasing, p_t strictly decreasing
  /// eps * (stop_scale^{-1} eps^{-stop_power})^{drift}, the analytic
  /// ceiling on eps_{T-1}.
  double epsilon_bound = 0.0;
  bool bound_holds = true;

  /// Row t for t <= T, or any t >= 0 for a fixed-kappa schedule. Rows past
  /// the stored prefix are recomputed.
  ScheduleStep step(std::int64_t t) const;
};

/// Rows kept by default before truncating.
inline constexpr std::size_t kScheduleRowCap = 4096;

/// kappa_t = 1e5 log n / eps_t^2, r_t = 2 kappa_t / p_t; stop at p_T <= eps^{1/8} p / 8.
/// Requires eps, p in (0, 1) and n > 1 (n is a real so that n = e^10 is exact).
Schedule digraph_schedule(double n, double epsilon, double p, std::size_t row_cap = kScheduleRowCap);

/// kappa_t = 1e6 log n / eps_t^2, r_t = n kappa_t / (3 p_t); stop at p_T <= eps^{1/15} p / 2.
Schedule hyper_schedule(double n, double epsilon, double p, std::size_t row_cap = kScheduleRowCap);

/// Rows 0..rows-1 of the analytic schedule without searching for T, which
/// takes a second or more at n = e^10.
std::vector<ScheduleStep> schedule_prefix(ScheduleKind kind, double n, double epsilon, double p, std::size_t rows);

/// Same recursion with a constant kappa >= 1, used by the desk profile.
/// Requires eps in (0, 1), p in (0, 1]. kappa = 1 drives p to 0 after one round.
Schedule fixed_kappa_schedule(ScheduleKind kind, double n, double epsilon, double p, double kappa,
                              std::size_t row_cap = kScheduleRowCap);

std::string to_string(ScheduleKind kind);

}  // namespace tightpack
