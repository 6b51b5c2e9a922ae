// smurf: synthesize, simulate and inspect SMURF weight tables.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smurf/smurf.hpp"

namespace fs = std::filesystem;
using namespace smurf;

namespace {

enum Exit { kOk = 0, kConfig = 2, kSolver = 3, kIo = 4 };

// Raw flag values; only options that were actually given override the config.
struct Flags {
  std::string config;
  std::string target;
  std::string expr;
  std::vector<int> n_states;
  int arity = 0;
  std::vector<long> lengths;
  long burn_in = 0;
  std::uint64_t seed = 0;
  int grid = 0;
  int eval_points = 0;
  std::string rng;
  std::string out;
  std::vector<std::string> coeffs;
  std::vector<std::string> input_boxes;
  std::string output_box;
};

AffineMap parse_box(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("box '" + text + "' must be 'lo,hi'");
  try {
    std::size_t used = 0;
    const double lo = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("trailing text");
    const std::string rest = text.substr(comma + 1);
    std::size_t used_hi = 0;
    const double hi = std::stod(rest, &used_hi);
    if (used_hi != rest.size()) throw std::invalid_argument("trailing text");
    return AffineMap(lo, hi);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("box '" + text + "' must be 'lo,hi'");
  }
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file (flags override it)");
  cmd->add_option("--target", f.target, "builtin target name");
  cmd->add_option("--expr", f.expr, "target expression over x1..xM");
  cmd->add_option("--n-states", f.n_states, "states per chain (list allowed)")->delimiter(',');
  cmd->add_option("--arity", f.arity, "number of inputs M");
  cmd->add_option("--lengths", f.lengths, "bitstream lengths")->delimiter(',');
  cmd->add_option("--burn-in", f.burn_in, "unrecorded cycles before each run");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--grid", f.grid, "quadrature points per dimension");
  cmd->add_option("--eval-points", f.eval_points, "evaluation grid points per dimension");
  cmd->add_option("--rng", f.rng, "independent | lagged | lowdisc");
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--coeffs", f.coeffs, "coefficient file(s)");
  cmd->add_option("--input-box", f.input_boxes, "raw input range 'lo,hi' (one per input)");
  cmd->add_option("--output-box", f.output_box, "raw output range 'lo,hi'");
}

RunConfig merge(const CLI::App* cmd, const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--target")) {
    c.target = f.target;
    c.expression.reset();
  }
  if (given("--expr")) {
    c.expression = f.expr;
    if (!given("--target")) c.target.reset();
  }
  if (given("--n-states")) c.n_states = f.n_states;
  if (given("--arity")) c.arity = f.arity;
  if (given("--lengths")) c.lengths = f.lengths;
  if (given("--burn-in")) c.burn_in = f.burn_in;
  if (given("--seed")) c.seed = f.seed;
  if (given("--grid")) c.grid = f.grid;
  if (given("--eval-points")) c.eval_points = f.eval_points;
  if (given("--rng")) c.rng = parse_rng_kind(f.rng);
  if (given("--out")) c.out = f.out;
  if (given("--coeffs")) c.coeffs = f.coeffs;
  if (given("--input-box")) {
    c.input_boxes.clear();
    for (const auto& b : f.input_boxes) c.input_boxes.push_back(parse_box(b));
  }
  if (given("--output-box")) c.output_box = parse_box(f.output_box);
  c.validate();
  return c;
}

// Runs `body` with stdout or the file at `path`.
template <typename F>
void with_output(const std::optional<std::string>& path, F&& body) {
  if (!path) {
    body(std::cout);
    return;
  }
  std::ofstream out(*path);
  if (!out) throw IoError("cannot write '" + *path + "'");
  body(out);
  if (!out) throw IoError("write to '" + *path + "' failed");
}

fs::path path_for_n(const std::string& out, int n, bool several) {
  if (!several) return out;
  fs::path p(out);
  return p.parent_path() / (p.stem().string() + "_N" + std::to_string(n) + p.extension().string());
}

EvalOptions eval_options(const RunConfig& c) {
  EvalOptions o;
  o.lengths = c.lengths;
  o.burn_in = c.burn_in;
  o.seed = c.seed;
  o.rng = c.rng;
  o.grid_points = c.eval_points;
  return o;
}

WeightTable synthesize_for(const RunConfig& c, const TargetFunction& target, int n) {
  SynthesisOptions opts;
  opts.grid_resolution = c.grid;
  WeightTable table = synthesize(target, n, target.arity, opts);
  table.metadata.master_seed = c.seed;
  return table;
}

int cmd_synthesize(const RunConfig& c) {
  const TargetFunction target = resolve_target(c);
  const bool several = c.n_states.size() > 1;
  if (several && !c.out) throw ConfigError("--out is required when synthesizing several N");
  for (int n : c.n_states) {
    const WeightTable table = synthesize_for(c, target, n);
    const auto& s = table.metadata.solver;
    std::cerr << target.name << " N=" << n << " M=" << target.arity
              << " iterations=" << s.iterations << " phi=" << s.phi
              << " residual=" << s.residual << '\n';
    if (c.out) {
      write_coefficients(table, path_for_n(*c.out, n, several));
    } else {
      std::cout << coefficients_to_json(table);
    }
  }
  return kOk;
}

// Target for a loaded table: the one named on the command line if any,
// otherwise the one recorded in the file.
TargetFunction target_for(const RunConfig& c, const WeightTable& table) {
  if (!c.target && !c.expression) return target_for_table(table);
  RunConfig probe = c;
  if (probe.arity == 0) probe.arity = table.arity();
  TargetFunction t = resolve_target(probe);
  if (t.arity != table.arity()) {
    throw ConfigError("target arity " + std::to_string(t.arity) +
                      " does not match the coefficient file (M=" +
                      std::to_string(table.arity()) + ")");
  }
  return t;
}

void check_table(const RunConfig& c, const WeightTable& table, const std::string& path) {
  if (c.arity > 0 && c.arity != table.arity()) {
    throw ConfigError("'" + path + "' has M=" + std::to_string(table.arity()) +
                      " but the config asks for M=" + std::to_string(c.arity));
  }
}

void print_aggregates(const std::vector<EvalAggregate>& rows) {
  for (const auto& a : rows) {
    std::cerr << "N=" << a.n_states << " L=" << a.length << " avg_abs_error=" << a.avg_abs_error
              << " max_abs_error=" << a.max_abs_error << " avg_fit_gap=" << a.avg_fit_gap
              << '\n';
  }
}

int cmd_eval(const RunConfig& c) {
  if (c.coeffs.size() != 1) throw ConfigError("eval needs exactly one --coeffs file");
  const WeightTable table = read_coefficients(c.coeffs.front());
  check_table(c, table, c.coeffs.front());
  const TargetFunction target = target_for(c, table);
  const EvalReport report = evaluate_table(table, target, eval_options(c));
  print_aggregates(report.aggregates);
  with_output(c.out, [&](std::ostream& os) { write_eval_csv(report, os); });
  return kOk;
}

int cmd_sweep(const RunConfig& c) {
  for (std::size_t i = 1; i < c.lengths.size(); ++i) {
    if (c.lengths[i] <= c.lengths[i - 1]) throw ConfigError("lengths must be sorted ascending");
  }
  std::vector<WeightTable> tables;
  std::optional<TargetFunction> target;
  if (!c.coeffs.empty()) {
    for (const auto& path : c.coeffs) {
      tables.push_back(read_coefficients(path));
      check_table(c, tables.back(), path);
    }
    target = target_for(c, tables.front());
    for (const auto& t : tables) {
      if (t.arity() != target->arity) throw ConfigError("coefficient files disagree on M");
    }
  } else {
    target = resolve_target(c);
    for (int n : c.n_states) tables.push_back(synthesize_for(c, *target, n));
  }
  const auto rows = sweep_tables(tables, *target, eval_options(c));
  print_aggregates(rows);
  with_output(c.out, [&](std::ostream& os) { write_sweep_csv(rows, os); });
  return kOk;
}

struct SteadyFlags {
  int n_states = 4;
  std::vector<double> px;
  bool curves = false;
  int points = 101;
  std::string out;
};

int cmd_steady(const CLI::App* cmd, const SteadyFlags& f) {
  std::optional<std::string> out;
  if (cmd->count("--out")) out = f.out;
  table_size(f.n_states, std::max<std::size_t>(1, f.px.size()));
  with_output(out, [&](std::ostream& os) {
    os << std::setprecision(10);
    if (f.curves) {
      if (f.points < 2) throw ConfigError("--points must be >= 2");
      os << "px";
      for (int i = 0; i < f.n_states; ++i) os << ",P" << i;
      os << '\n';
      std::vector<double> probs(f.n_states);
      for (int k = 0; k < f.points; ++k) {
        const double px = static_cast<double>(k) / (f.points - 1);
        chain_steady_probs_into(f.n_states, px, probs);
        os << px;
        for (double p : probs) os << ',' << p;
        os << '\n';
      }
      return;
    }
    if (f.px.empty()) throw ConfigError("give --px (one value per chain) or --curves");
    for (double p : f.px) static_cast<void>(Probability(p));
    const auto probs = f.px.size() == 1 ? chain_steady_probs(f.n_states, Probability(f.px[0]))
                                        : joint_steady_probs(f.n_states, f.px);
    for (std::size_t t = 0; t < probs.size(); ++t) os << t << ',' << probs[t] << '\n';
  });
  return kOk;
}

int cmd_show(const std::string& path) {
  const WeightTable table = read_coefficients(path);
  const auto& md = table.metadata;
  std::cout << "target: " << md.target_name << '\n';
  if (md.expression) std::cout << "expression: " << *md.expression << '\n';
  std::cout << "N=" << table.n_states() << " M=" << table.arity() << " (" << table.size()
            << " weights, digit 1 least significant)\n";
  for (std::size_t j = 0; j < md.input_maps.size(); ++j) {
    std::cout << "input x" << j + 1 << ": [" << md.input_maps[j].lo() << ", "
              << md.input_maps[j].hi() << "]\n";
  }
  std::cout << "output: [" << md.output_map.lo() << ", " << md.output_map.hi() << "]\n";
  std::cout << "solver: iterations=" << md.solver.iterations << " phi=" << md.solver.phi
            << " residual=" << md.solver.residual << " grid=" << md.grid_resolution << '\n';
  const std::size_t row = static_cast<std::size_t>(table.n_states());
  std::cout << std::fixed << std::setprecision(4);
  for (std::size_t t = 0; t < table.size(); ++t) {
    std::cout << "w" << std::left << std::setw(5) << t << std::right << table.weight(t)
              << ((t + 1) % row == 0 || t + 1 == table.size() ? "\n" : "   ");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SMURF stochastic function synthesis"};
  app.require_subcommand(1);

  Flags syn_f, eval_f, sweep_f;
  auto* syn = app.add_subcommand("synthesize", "fit a weight table to a target");
  add_common(syn, syn_f);
  auto* ev = app.add_subcommand("eval", "simulate a table over an input grid");
  add_common(ev, eval_f);
  auto* sw = app.add_subcommand("sweep", "error versus bitstream length");
  add_common(sw, sweep_f);

  SteadyFlags steady_f;
  auto* st = app.add_subcommand("steady", "print steady-state probabilities");
  st->add_option("--n-states", steady_f.n_states, "states per chain");
  st->add_option("--px", steady_f.px, "input probability per chain")->delimiter(',');
  st->add_flag("--curves", steady_f.curves, "CSV of every P_i over a grid of Px");
  st->add_option("--points", steady_f.points, "grid size for --curves");
  st->add_option("--out", steady_f.out, "output path");

  std::string show_path;
  auto* sh = app.add_subcommand("show", "pretty-print a coefficient file");
  sh->add_option("coeffs", show_path, "coefficient file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (syn->parsed()) return cmd_synthesize(merge(syn, syn_f));
    if (ev->parsed()) return cmd_eval(merge(ev, eval_f));
    if (sw->parsed()) return cmd_sweep(merge(sw, sweep_f));
    if (st->parsed()) return cmd_steady(st, steady_f);
    if (sh->parsed()) return cmd_show(show_path);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
