#include "dcr/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dcr/factor.hpp"
#include "dcr/irrelevance.hpp"
#include "dcr/network.hpp"
#include "dcr/oracles.hpp"
#include "dcr/reductions.hpp"
#include "dcr/report.hpp"

namespace dcr {
namespace {

using nlohmann::json;

constexpr double kGateTolerance = 1e-9;

/// Unreadable input files; reported like parse errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string graph;
  std::optional<int> diameter;
  std::string format = "text";
};

struct MethodOptions {
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000000;
  std::optional<std::uint64_t> tie_break_seed;
  bool prune = true;
};

struct Loaded {
  Network net;
  std::string digest;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Loaded load(const Input& input) {
  std::string bytes = read_file(input.graph);
  return {parse_network(bytes, input.diameter), content_digest(bytes)};
}

RunReport run_method(const std::string& method, const Network& net,
                     const MethodOptions& opt) {
  RunReport report;
  report.method = method;
  report.diameter = net.diameter();
  const auto start = std::chrono::steady_clock::now();
  if (method == "factor") {
    FactorOptions fo;
    fo.prune_irrelevant = opt.prune;
    fo.tie_break_seed = opt.tie_break_seed;
    FactorOutcome r = factor(net, fo);
    report.reliability = r.reliability;
    report.stats = {{"recursion_nodes", static_cast<double>(r.recursion_nodes)},
                    {"leaves_one", static_cast<double>(r.leaves_one)},
                    {"leaves_zero", static_cast<double>(r.leaves_zero)},
                    {"reductions_applied", static_cast<double>(r.reductions_applied)}};
  } else if (method == "enum") {
    report.reliability = enum_exact(net);
    report.stats = {{"links", static_cast<double>(net.links().size())},
                    {"states", std::ldexp(1.0, static_cast<int>(net.links().size()))}};
  } else if (method == "ie") {
    MinpathSet minpaths = enumerate_minpaths(net);
    report.reliability = inclusion_exclusion(net, minpaths);
    report.stats = {{"minpaths", static_cast<double>(minpaths.paths.size())}};
  } else if (method == "mc") {
    McEstimate r = monte_carlo(net, opt.samples, opt.seed);
    report.reliability = r.estimate;
    report.stats = {{"standard_error", r.standard_error},
                    {"samples", static_cast<double>(r.samples)},
                    {"seed", static_cast<double>(r.seed)}};
  } else {
    throw std::invalid_argument(fmt::format("unknown method '{}'", method));
  }
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

int cmd_compute(const Input& input, const std::string& method, const MethodOptions& opt,
                bool stats, std::ostream& out) {
  Loaded in = load(input);
  RunReport report = run_method(method, in.net, opt);
  report.input_digest = in.digest;
  if (input.format == "json") {
    out << json(report).dump(2) << '\n';
    return kExitOk;
  }
  fmt::print(out, "{:.12g}\n", report.reliability);
  if (stats) {
    for (const auto& [key, value] : report.stats) fmt::print(out, "{}: {:.12g}\n", key, value);
    fmt::print(out, "wall_time_seconds: {:.6f}\n", report.wall_time_seconds);
  }
  return kExitOk;
}

int cmd_irrelevant(const Input& input, std::ostream& out) {
  Loaded in = load(input);
  const Network& net = in.net;
  auto reports = sweep(net);
  if (input.format == "json") {
    json rows = json::array();
    for (const auto& r : reports) {
      const Link& l = net.link(r.link_id);
      rows.push_back({{"id", r.link_id},
                      {"u", l.u},
                      {"v", l.v},
                      {"cond1", r.cond1},
                      {"cond2", r.cond2},
                      {"cond3", r.cond3},
                      {"exact", r.exact_irrelevant},
                      {"relevance_threshold", r.relevance_threshold
                                                  ? json(*r.relevance_threshold)
                                                  : json(nullptr)}});
    }
    out << json{{"diameter", net.diameter()}, {"links", rows}}.dump(2) << '\n';
    return kExitOk;
  }
  fmt::print(out, "# diameter {}\n", net.diameter());
  fmt::print(out, "{:>4} {:>4} {:>4} {:>6} {:>6} {:>6} {:>6} {:>9}\n", "id", "u", "v",
             "cond1", "cond2", "cond3", "exact", "threshold");
  for (const auto& r : reports) {
    const Link& l = net.link(r.link_id);
    std::string threshold =
        r.relevance_threshold ? std::to_string(*r.relevance_threshold) : "inf";
    fmt::print(out, "{:>4} {:>4} {:>4} {:>6} {:>6} {:>6} {:>6} {:>9}\n", r.link_id, l.u,
               l.v, r.cond1, r.cond2, r.cond3, r.exact_irrelevant, threshold);
  }
  return kExitOk;
}

int cmd_reduce(const Input& input, bool trace, std::ostream& out) {
  Loaded in = load(input);
  auto [reduced, steps] = apply_all(in.net);
  if (trace) {
    for (const auto& step : steps.steps) fmt::print(out, "# step {}\n", format_step(step));
    fmt::print(out, "# total-factor {:.17g}\n", steps.total_factor);
    fmt::print(out, "# total-d-delta {}\n", steps.total_diameter_delta);
  }
  out << serialize(reduced);
  return kExitOk;
}

std::vector<std::string> split_methods(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_compare(const Input& input, const std::string& methods, const MethodOptions& opt,
                const std::vector<std::string>& saved, std::ostream& out) {
  Loaded in = load(input);
  struct Row {
    std::string name;
    RunReport report;
    bool gated;
    std::string note;
  };
  std::vector<Row> rows;
  std::optional<double> baseline;
  for (const auto& method : split_methods(methods)) {
    RunReport r = run_method(method, in.net, opt);
    r.input_digest = in.digest;
    if (method == "enum") baseline = r.reliability;
    rows.push_back({method, r, method != "mc", ""});
  }
  for (const auto& path : saved) {
    RunReport r;
    try {
      json::parse(read_file(path)).get_to(r);
    } catch (const json::exception& e) {
      throw InputError(fmt::format("{}: not a run report ({})", path, e.what()));
    }
    std::string note;
    if (r.input_digest != in.digest) note = "digest mismatch";
    else if (r.diameter != in.net.diameter()) note = "diameter mismatch";
    rows.push_back({"report:" + r.method, r, r.method != "mc", note});
  }

  bool pass = true;
  json table = json::array();
  std::vector<std::string> lines;
  for (const auto& row : rows) {
    std::optional<double> delta;
    if (baseline) delta = std::fabs(row.report.reliability - *baseline);
    bool failed = baseline && row.gated && (*delta > kGateTolerance || !row.note.empty());
    pass = pass && !failed;
    table.push_back({{"method", row.name},
                     {"reliability", row.report.reliability},
                     {"delta_vs_enum", delta ? json(*delta) : json(nullptr)},
                     {"wall_time_seconds", row.report.wall_time_seconds},
                     {"gated", row.gated},
                     {"ok", !failed},
                     {"note", row.note}});
    lines.push_back(fmt::format("{:<16} {:<20.12g} {:<14} {:<12.6f} {}{}", row.name,
                                row.report.reliability,
                                delta ? fmt::format("{:.3g}", *delta) : std::string("n/a"),
                                row.report.wall_time_seconds, failed ? "FAIL" : "ok",
                                row.note.empty() ? "" : " (" + row.note + ")"));
  }
  const char* verdict = !baseline ? "skipped" : pass ? "pass" : "fail";
  if (input.format == "json") {
    out << json{{"diameter", in.net.diameter()},
                {"input_digest", in.digest},
                {"tolerance", kGateTolerance},
                {"rows", table},
                {"gate", verdict}}
               .dump(2)
        << '\n';
  } else {
    fmt::print(out, "{:<16} {:<20} {:<14} {:<12} {}\n", "method", "value", "|delta| enum",
               "seconds", "status");
    for (const auto& line : lines) fmt::print(out, "{}\n", line);
    fmt::print(out, "gate: {} (tolerance {:g}, mc excluded)\n", verdict, kGateTolerance);
  }
  return pass ? kExitOk : kExitGateFailed;
}

void add_input(CLI::App* cmd, Input& input) {
  cmd->add_option("--graph", input.graph, "Network file")->required();
  cmd->add_option("--diameter", input.diameter, "Hop budget (overrides the file's d line)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", input.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact diameter-constrained two-terminal network reliability"};
  app.require_subcommand(1);

  Input input;
  MethodOptions opt;
  std::string method = "factor";
  std::string methods = "factor,enum,ie,mc";
  std::vector<std::string> saved;
  bool stats = false, trace = false, no_prune = false;
  std::optional<std::uint64_t> tie_seed;

  auto* compute = app.add_subcommand("compute", "Compute the reliability with one method");
  add_input(compute, input);
  compute->add_option("--method", method, "factor | enum | ie | mc")
      ->check(CLI::IsMember({"factor", "enum", "ie", "mc"}));
  compute->add_option("--seed", opt.seed, "Monte Carlo seed");
  compute->add_option("--samples", opt.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  compute->add_option("--tie-break-seed", tie_seed,
                      "Break factorization pivot ties at random from this seed");
  compute->add_flag("--no-prune", no_prune, "Skip irrelevant-link pruning in factorization");
  compute->add_flag("--stats", stats, "Print method statistics");

  auto* irrelevant = app.add_subcommand("irrelevant", "Per-link irrelevance detectors");
  add_input(irrelevant, input);

  auto* reduce = app.add_subcommand("reduce", "Apply all reductions and print the result");
  add_input(reduce, input);
  reduce->add_flag("--trace", trace, "Print reduction steps as comments");

  auto* compare = app.add_subcommand("compare", "Run several methods and gate against enum");
  add_input(compare, input);
  compare->add_option("--methods", methods, "Comma-separated methods");
  compare->add_option("--seed", opt.seed, "Monte Carlo seed");
  compare->add_option("--samples", opt.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  compare->add_option("--report", saved, "Saved JSON run report to include in the gate");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitParseError;
  }

  opt.tie_break_seed = tie_seed;
  opt.prune = !no_prune;
  try {
    if (compare->parsed()) {
      for (const auto& m : split_methods(methods))
        if (m != "factor" && m != "enum" && m != "ie" && m != "mc")
          throw InputError(fmt::format("unknown method '{}'", m));
    }
    if (compute->parsed()) return cmd_compute(input, method, opt, stats, out);
    if (irrelevant->parsed()) return cmd_irrelevant(input, out);
    if (reduce->parsed()) return cmd_reduce(input, trace, out);
    if (compare->parsed()) return cmd_compare(input, methods, opt, saved, out);
  } catch (const GuardError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitGuardRefused;
  } catch (const ParseError& e) {
    err << "parse error: " << input.graph << ": " << e.what() << '\n';
    return kExitParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }
  return kExitParseError;
}

}  // namespace dcr
