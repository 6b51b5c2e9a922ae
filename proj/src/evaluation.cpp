#include "smurf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>

#include "smurf/errors.hpp"
#include "smurf/machine.hpp"

namespace smurf {
namespace {

constexpr const char* kMetricNote =
    "# metric: mean over the evaluation grid of |simulated - normalized target|, "
    "normalized [0,1] units";

struct Grid {
  std::size_t count = 1;
  int per_axis = 0;
};

Grid make_grid(int arity, int per_axis) {
  Grid g;
  g.per_axis = per_axis;
  for (int j = 0; j < arity; ++j) g.count *= static_cast<std::size_t>(per_axis);
  return g;
}

void validate(const WeightTable& table, const TargetFunction& target, const EvalOptions& opt) {
  if (table.arity() != target.arity) {
    throw ConfigError("coefficient table has arity " + std::to_string(table.arity()) +
                      " but target '" + target.name + "' has " + std::to_string(target.arity));
  }
  if (opt.lengths.empty()) throw ConfigError("no bitstream lengths given");
  for (long l : opt.lengths) {
    if (l < 1) throw ConfigError("bitstream lengths must be positive");
  }
  if (opt.burn_in < 0) throw ConfigError("burn-in must be non-negative");
  if (opt.grid_points == 1) throw ConfigError("evaluation grid needs at least 2 points per axis");
}

/// Everything about one grid point except the simulation.
EvalRecord prepare_point(const WeightTable& table, const TargetFunction& target,
                         const std::vector<AffineMap>& in_maps, const Grid& grid,
                         std::size_t point) {
  EvalRecord r;
  r.point = point;
  const auto m = static_cast<std::size_t>(table.arity());
  r.probs.resize(m);
  r.inputs.resize(m);
  std::size_t rem = point;
  for (std::size_t j = 0; j < m; ++j) {
    r.probs[j] = static_cast<double>(rem % grid.per_axis) / (grid.per_axis - 1);
    rem /= static_cast<std::size_t>(grid.per_axis);
    r.inputs[j] = in_maps[j].backward(Probability::from_unchecked(r.probs[j]));
  }
  r.target = target(r.probs);
  if (!std::isfinite(r.target)) {
    throw ConfigError("target '" + target.name + "' is not finite on the evaluation grid");
  }
  r.analytic = smurf_expected_output(table, r.probs).value();
  return r;
}

void simulate_point(SmurfMachine& machine, EvalRecord& r, long length, std::uint64_t master) {
  r.length = length;
  r.simulated = smurf_run(machine, r.probs, length, eval_point_seed(master, r.point, length));
  r.abs_error = std::abs(r.simulated - r.target);
  r.abs_error_fit = std::abs(r.simulated - r.analytic);
}

void aggregate(EvalReport& report, const std::vector<long>& lengths, std::size_t per_length) {
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    EvalAggregate a;
    a.n_states = report.n_states;
    a.length = lengths[li];
    double sum = 0.0, sum_fit = 0.0, sum_gap = 0.0;
    for (std::size_t p = 0; p < per_length; ++p) {
      const EvalRecord& r = report.records[li * per_length + p];
      sum += r.abs_error;
      sum_fit += r.abs_error_fit;
      sum_gap += std::abs(r.analytic - r.target);
      a.max_abs_error = std::max(a.max_abs_error, r.abs_error);
    }
    const double n = static_cast<double>(per_length);
    a.avg_abs_error = sum / n;
    a.avg_abs_error_fit = sum_fit / n;
    a.avg_fit_gap = sum_gap / n;
    report.aggregates.push_back(a);
  }
}

MachineOptions machine_options(const EvalOptions& opt) {
  MachineOptions mo;
  mo.rng = opt.rng;
  mo.seed = opt.seed;
  mo.burn_in = opt.burn_in;
  return mo;
}

int points_per_axis(const WeightTable& table, const EvalOptions& opt) {
  return opt.grid_points > 0 ? opt.grid_points : default_eval_points(table.arity());
}

}  // namespace

int default_eval_points(int arity) {
  if (arity <= 2) return 21;
  if (arity == 3) return 9;
  return 5;
}

std::uint64_t eval_point_seed(std::uint64_t master, std::size_t point, long length) {
  return derive_seed(master, static_cast<std::uint64_t>(point), static_cast<std::uint64_t>(length));
}

EvalReport evaluate_table(const WeightTable& table, const TargetFunction& target,
                          const EvalOptions& options) {
  validate(table, target, options);
  const Grid grid = make_grid(table.arity(), points_per_axis(table, options));
  const auto in_maps = target.input_maps();
  const std::size_t lengths = options.lengths.size();

  EvalReport report;
  report.n_states = table.n_states();
  report.arity = table.arity();
  report.records.resize(lengths * grid.count);

  std::exception_ptr failure;
  std::once_flag once;
  const auto count = static_cast<long>(grid.count);
#pragma omp parallel
  {
    // One machine per worker; smurf_run resets and reseeds it per point.
    std::optional<SmurfMachine> machine;
    try {
      machine.emplace(table, machine_options(options));
    } catch (...) {
      std::call_once(once, [&] { failure = std::current_exception(); });
    }
#pragma omp for schedule(dynamic, 4)
    for (long p = 0; p < count; ++p) {
      if (!machine) continue;
      try {
        const EvalRecord base =
            prepare_point(table, target, in_maps, grid, static_cast<std::size_t>(p));
        for (std::size_t li = 0; li < lengths; ++li) {
          EvalRecord& r = report.records[li * grid.count + static_cast<std::size_t>(p)];
          r = base;
          simulate_point(*machine, r, options.lengths[li], options.seed);
        }
      } catch (...) {
        std::call_once(once, [&] { failure = std::current_exception(); });
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  aggregate(report, options.lengths, grid.count);
  return report;
}

namespace reference {

EvalReport evaluate_table(const WeightTable& table, const TargetFunction& target,
                          const EvalOptions& options) {
  validate(table, target, options);
  const Grid grid = make_grid(table.arity(), points_per_axis(table, options));
  const auto in_maps = target.input_maps();
  EvalReport report;
  report.n_states = table.n_states();
  report.arity = table.arity();
  SmurfMachine machine(table, machine_options(options));
  for (long length : options.lengths) {
    for (std::size_t p = 0; p < grid.count; ++p) {
      EvalRecord r = prepare_point(table, target, in_maps, grid, p);
      simulate_point(machine, r, length, options.seed);
      report.records.push_back(std::move(r));
    }
  }
  aggregate(report, options.lengths, grid.count);
  return report;
}

}  // namespace reference

std::vector<EvalAggregate> sweep_tables(const std::vector<WeightTable>& tables,
                                        const TargetFunction& target,
                                        const EvalOptions& options) {
  if (!std::is_sorted(options.lengths.begin(), options.lengths.end())) {
    throw ConfigError("sweep lengths must be sorted ascending");
  }
  std::vector<EvalAggregate> rows;
  for (const auto& table : tables) {
    const EvalReport report = evaluate_table(table, target, options);
    rows.insert(rows.end(), report.aggregates.begin(), report.aggregates.end());
  }
  return rows;
}

void write_eval_csv(const EvalReport& report, std::ostream& out) {
  out << kMetricNote << '\n';
  out << "length,point";
  for (int j = 1; j <= report.arity; ++j) out << ",x" << j;
  for (int j = 1; j <= report.arity; ++j) out << ",p" << j;
  out << ",target,analytic,simulated,abs_error,abs_error_fit\n";
  out << std::setprecision(17);
  for (const auto& r : report.records) {
    out << r.length << ',' << r.point;
    for (double v : r.inputs) out << ',' << v;
    for (double v : r.probs) out << ',' << v;
    out << ',' << r.target << ',' << r.analytic << ',' << r.simulated << ',' << r.abs_error
        << ',' << r.abs_error_fit << '\n';
  }
}

void write_sweep_csv(const std::vector<EvalAggregate>& rows, std::ostream& out) {
  out << kMetricNote << '\n';
  out << "n_states,length,avg_abs_error,max_abs_error,avg_abs_error_fit,avg_fit_gap\n";
  out << std::setprecision(17);
  for (const auto& a : rows) {
    out << a.n_states << ',' << a.length << ',' << a.avg_abs_error << ',' << a.max_abs_error
        << ',' << a.avg_abs_error_fit << ',' << a.avg_fit_gap << '\n';
  }
}

}  // namespace smurf
