#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "relfix/finite_oracle.hpp"
#include "relfix/frac.hpp"
#include "relfix/gspace.hpp"
#include "relfix/io_json.hpp"
#include "relfix/picard.hpp"
#include "relfix/plane.hpp"
#include "relfix/plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace relfix;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitCounterexample = 3;

/// Reads nested JSON objects as CLI11 config sections: {"solve-fde": {"grid": 256}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json doc;
    try {
      doc = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError("config", e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config", "top level must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void collect(const json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(key);
        collect(value, nested, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      out.push_back(std::move(item));
    }
  }
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_force = false;

/// Fails early, before any work, if an output would clobber an existing file.
void check_output(const std::string& path) {
  if (path.empty()) return;
  if (fs::exists(path) && !g_force) {
    throw IoError(path + ": file exists (pass --force to overwrite)");
  }
}

void write_file(const std::string& path, const std::string& contents) {
  if (path.empty()) return;
  check_output(path);
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw IoError(target.parent_path().string() + ": cannot create directory: " + ec.message());
  }
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing: " + std::strerror(errno));
  out << contents;
  out.flush();
  if (!out) throw IoError(path + ": write failed: " + std::strerror(errno));
  std::cout << "wrote " << path << "\n";
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open for reading: " + std::strerror(errno));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": invalid JSON: " + e.what());
  }
}

std::string trace_csv(std::span<const double> residuals) {
  std::ostringstream out;
  write_trace_csv(out, residuals);
  return out.str();
}

std::string plot_svg(const std::vector<PlotSeries>& series, const PlotLabels& labels) {
  std::ostringstream out;
  emit_plot(out, series, labels);
  return out.str();
}

std::string trace_summary(bool converged, bool certified, bool preserved, std::size_t steps, double last_residual) {
  std::ostringstream out;
  out << "steps: " << steps << "\n"
      << "final residual: " << format_real(last_residual) << "\n"
      << "converged: " << (converged ? "yes" : "no") << "\n"
      << "certified start: " << (certified ? "yes" : "no") << "\n"
      << "relation preserved: " << (preserved ? "yes" : "no") << "\n";
  return out.str();
}

// ---------------------------------------------------------------- verify

struct PlaneSetup {
  GFunctional<plane::PlanePoint> g;
  SelfMap<plane::PlanePoint> map;
};

PlaneSetup plane_setup(int which) {
  if (which == 1) return {plane::second_difference_g(), plane::shrink_second_map()};
  return {plane::l1_g(), plane::square_shrink_map()};
}

json verify_plane(int which) {
  using plane::PlanePoint;
  const auto [g, map] = plane_setup(which);
  const auto related = plane::same_first_coordinate();

  auto samples = plane::halton_points(48, 4.0);
  const auto [w1, w2] = plane::example1_g1_violation_witness();
  samples.push_back(w1);
  samples.push_back(w2);
  const auto global = verify_g_properties(g, universal_relation<PlanePoint>(), std::span<const PlanePoint>(samples));

  std::vector<std::pair<PlanePoint, PlanePoint>> unrestricted;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) unrestricted.emplace_back(samples[i], samples[i + 1]);
  for (double scale : {2.0, 10.0}) {
    const auto w = plane::example2_noncontraction_witness(scale);
    unrestricted.emplace_back(w.u, w.v);
  }
  const auto free_ratio = estimate_contraction_factor(g, map, universal_relation<PlanePoint>(),
                                                      std::span<const std::pair<PlanePoint, PlanePoint>>(unrestricted));

  // Restricted check: (g1)-(g3) among points sharing a first coordinate.
  bool restricted_clean = true;
  for (double a : {0.0, 1.5, -2.25, 3.0}) {
    std::vector<PlanePoint> line;
    for (const auto& p : plane::halton_points(24, 4.0)) line.push_back({a, p.second});
    restricted_clean = restricted_clean && verify_g_properties(g, related, std::span<const PlanePoint>(line)).clean();
  }
  const auto pairs = plane::shared_first_pairs(256, 4.0);
  bool closed = true;
  for (const auto& [p, q] : pairs) closed = closed && related(map(p), map(q));
  const PlanePoint seed{0.0, 1.0};
  const bool seeded = related(seed, map(seed));
  const auto ratio = estimate_contraction_factor(g, map, related, std::span<const std::pair<PlanePoint, PlanePoint>>(pairs));
  const bool holds = restricted_clean && closed && seeded && ratio.ratio <= plane::kPlaneAlpha;

  json doc;
  doc["example"] = which;
  doc["unrestricted"] = property_report_to_json(global, point_to_json);
  doc["unrestricted"]["contraction_ratio"] = free_ratio.ratio;
  doc["unrestricted"]["worst_pair"] = {point_to_json(free_ratio.worst.first), point_to_json(free_ratio.worst.second)};
  doc["restricted"] = {{"g_properties_clean", restricted_clean},
                       {"S_closed", closed},
                       {"seed", point_to_json(seed)},
                       {"seed_in_omega", seeded},
                       {"contraction_ratio", ratio.ratio},
                       {"alpha", plane::kPlaneAlpha}};
  doc["holds"] = holds;
  return doc;
}

json verify_instance(const FiniteInstance& inst) {
  const auto verdict = hypotheses_hold(inst);
  json doc = verdict_to_json(verdict);
  doc["fixed_points"] = fixed_points(inst);
  doc["conclusion_holds"] = conclusion_holds(inst);
  doc["image_symmetric_connected"] = image_symmetric_connected(inst);
  return doc;
}

// ---------------------------------------------------------------- commands

struct VerifyArgs {
  std::string instance;
  int example = 0;
  std::string json_out;
};

int run_verify(const VerifyArgs& a) {
  check_output(a.json_out);
  json doc;
  bool holds = false;
  if (!a.instance.empty()) {
    doc = verify_instance(instance_from_json(read_json(a.instance)));
    holds = doc["holds"].get<bool>();
  } else {
    doc = verify_plane(a.example);
    holds = doc["holds"].get<bool>();
  }
  const std::string text = doc.dump(2) + "\n";
  if (a.json_out.empty()) {
    std::cout << text;
  } else {
    write_file(a.json_out, text);
  }
  std::cout << (holds ? "hypotheses hold\n" : "hypotheses fail\n");
  return holds ? kExitOk : kExitHypothesis;
}

struct IterateArgs {
  std::string instance;
  std::size_t start = 0;
  int example = 0;
  double x0 = 0.0;
  double y0 = 1.0;
  double tol = 1e-12;
  std::size_t max_iter = 1000;
  std::string out;
  std::string svg;
};

template <class Element>
int report_trace(const IterationTrace<Element>& trace, const IterateArgs& a, const std::string& label) {
  std::cout << trace_summary(trace.converged, trace.certified, trace.preserved, trace.steps(), trace.residuals.back());
  if (trace.alpha_used) std::cout << "certificate violations: " << certificate_violations(trace) << "\n";
  for (const auto& w : trace.warnings) std::cout << "warning: " << w << "\n";
  write_file(a.out, trace_csv(trace.residuals));
  if (!a.svg.empty()) write_file(a.svg, plot_svg({{label, trace.residuals}}, {"Picard residuals", "iteration n", "|g(r_n, r_n+1)|"}));
  return kExitOk;
}

int run_iterate(const IterateArgs& a) {
  check_output(a.out);
  check_output(a.svg);
  const StoppingPolicy policy{a.tol, a.max_iter};
  if (!a.instance.empty()) {
    const auto inst = instance_from_json(read_json(a.instance));
    if (a.start >= inst.n) throw std::invalid_argument("--start is outside the carrier");
    const GFunctional<Index> g{[&](const Index& i, const Index& j) { return double(inst.g_at(i, j)); }};
    auto map = [&](const Index& i) { return inst.map[i]; };
    auto related = [&](const Index& i, const Index& j) { return inst.rel.contains(i, j); };
    std::optional<double> alpha;
    if (inst.alpha) alpha = double(inst.alpha->num) / inst.alpha->den;
    const auto trace = iterate(map, g, related, a.start, policy, alpha);
    std::cout << "last iterate: " << trace.last() << "\n";
    return report_trace(trace, a, "instance");
  }
  if (a.example == 2 && !(std::abs(a.x0) < 4.0)) throw std::domain_error("example 2 needs |x0| < 4");
  const auto [g, map] = plane_setup(a.example);
  const auto trace = iterate(map, g, plane::same_first_coordinate(), plane::PlanePoint{a.x0, a.y0}, policy, plane::kPlaneAlpha);
  std::cout << "last iterate: (" << format_real(trace.last().first) << ", " << format_real(trace.last().second) << ")\n";
  return report_trace(trace, a, "example " + std::to_string(a.example));
}

struct FdeArgs {
  double zeta = 0.9;
  std::size_t grid = kDefaultGridIntervals;
  double tol = 1e-12;
  std::size_t max_iter = 1000;
  std::string gamma_variant = "zeta";
  std::string out;
  std::string trace;
  std::string svg;
};

int run_solve_fde(const FdeArgs& a) {
  for (const auto* p : {&a.out, &a.trace, &a.svg}) check_output(*p);
  FdeProblem prob = demo_problem();
  prob.zeta = a.zeta;
  prob.n_intervals = a.grid;
  prob.policy = {a.tol, a.max_iter};
  prob.gamma_variant = a.gamma_variant == "alpha" ? GammaVariant::alpha_plus_one : GammaVariant::zeta_plus_one;

  auto emit_trace = [&](const std::vector<double>& residuals) {
    write_file(a.trace, trace_csv(residuals));
    if (!a.svg.empty()) {
      write_file(a.svg, plot_svg({{"sup |u_n+1 - u_n|", residuals}}, {"Fixed-point iteration", "iteration n", "sup-norm difference"}));
    }
  };

  const FdeSolution sol = [&] {
    try {
      return solve_fde(prob);
    } catch (const NonConvergenceError& e) {
      emit_trace(e.trace().residuals);
      throw;
    }
  }();
  const auto br = boundary_residuals(sol.solution);
  std::cout << trace_summary(sol.trace.converged, sol.trace.certified, sol.trace.preserved, sol.trace.steps(),
                             sol.trace.residuals.back())
            << "lipschitz bound: " << format_real(sol.lipschitz.bound) << "\n"
            << "lipschitz margin: " << format_real(sol.lipschitz.margin) << (sol.lipschitz.passes ? " (passes)" : " (fails)")
            << "\n"
            << "boundary residual u(0): " << format_real(br.at_origin) << "\n"
            << "boundary residual integral: " << format_real(br.integral) << "\n";
  for (const auto& note : sol.notes) std::cout << "note: " << note << "\n";
  if (!a.out.empty()) {
    std::ostringstream csv;
    write_csv(csv, sol.solution);
    write_file(a.out, csv.str());
  }
  emit_trace(sol.trace.residuals);
  return kExitOk;
}

struct OracleArgs {
  std::size_t n = 3;
  int g_max = 3;
  int large_g_max = 1;
  std::size_t rel_cap = 0;
  unsigned threads = 0;
  std::string json_out;
};

int run_oracle_cmd(const OracleArgs& a) {
  check_output(a.json_out);
  const auto report = run_oracle({a.n, a.g_max, a.rel_cap, a.threads, a.large_g_max});
  std::cout << "   n  g_max  relations      instances   hypotheses  m2-filter  counterexamples\n";
  for (const auto& s : report.sweeps) {
    char line[160];
    std::snprintf(line, sizeof line, "%4zu  %5d  %9llu  %13llu  %11llu  %9llu  %15llu\n", s.n, s.g_max,
                  static_cast<unsigned long long>(s.relations_enumerated),
                  static_cast<unsigned long long>(s.instances_checked),
                  static_cast<unsigned long long>(s.hypotheses_satisfied),
                  static_cast<unsigned long long>(s.uniqueness_filtered),
                  static_cast<unsigned long long>(s.counterexample_total));
    std::cout << line;
  }
  for (const auto& r : report.readings) std::cout << "reading: " << r << "\n";
  write_file(a.json_out, oracle_report_to_json(report).dump(2) + "\n");
  const auto bad = report.counterexample_count();
  std::cout << "counterexamples: " << bad << "\n";
  return bad == 0 ? kExitOk : kExitCounterexample;
}

struct ExampleArgs {
  std::string which = "1";
  std::size_t n = 30;
  std::string out;
  std::string trace;
  std::string svg;
};

int run_example(const ExampleArgs& a) {
  for (const auto* p : {&a.out, &a.trace, &a.svg}) check_output(*p);
  std::vector<IterationTrace<plane::PlanePoint>> traces;
  std::vector<std::string> labels;
  if (a.which != "2") {
    traces.push_back(plane::example1_run(1.0, a.n));
    labels.emplace_back("S(u,a) = (u, a/4)");
  }
  if (a.which != "1") {
    traces.push_back(plane::example2_run(0.0, 1.0, a.n));
    labels.emplace_back("S(u,a) = (u^2/4, a/4)");
  }

  std::ostringstream csv;
  if (traces.size() == 1) {
    csv << "iteration,first,second\n";
    for (std::size_t k = 0; k < traces[0].iterates.size(); ++k) {
      csv << k << ',' << format_real(traces[0].iterates[k].first) << ',' << format_real(traces[0].iterates[k].second) << '\n';
    }
  } else {
    csv << "iteration,example1_second,example2_second\n";
    for (std::size_t k = 0; k < traces[0].iterates.size(); ++k) {
      csv << k << ',' << format_real(traces[0].iterates[k].second) << ',' << format_real(traces[1].iterates[k].second) << '\n';
    }
  }

  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    PlotSeries s{labels[i], {}};
    for (const auto& p : traces[i].iterates) s.values.push_back(std::abs(p.second));
    series.push_back(std::move(s));
  }
  const auto& t = traces.front();
  std::cout << "iterations: " << t.steps() << "\n"
            << "last iterate: (" << format_real(t.last().first) << ", " << format_real(t.last().second) << ")\n";
  write_file(a.out, csv.str());
  write_file(a.trace, trace_csv(t.residuals));
  if (!a.svg.empty()) write_file(a.svg, plot_svg(series, {"Convergence of the second coordinate", "iteration n", "|y_n|"}));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relation-theoretic fixed-point toolkit"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; command-line flags take precedence");
  app.add_flag("--force", g_force, "Overwrite existing output files");
  app.require_subcommand(1);
  app.fallthrough();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the fixed-point hypotheses for a finite instance or a plane example");
  auto* vi = verify->add_option("--instance", va.instance, "Finite instance JSON")->check(CLI::ExistingFile);
  auto* ve = verify->add_option("--example", va.example, "Plane example")->check(CLI::IsMember({1, 2}));
  vi->excludes(ve);
  verify->add_option("--json", va.json_out, "Write the report here instead of stdout");

  IterateArgs ia;
  auto* iter = app.add_subcommand("iterate", "Run a Picard iteration and export its residual trace");
  auto* ii = iter->add_option("--instance", ia.instance, "Finite instance JSON")->check(CLI::ExistingFile);
  auto* ie = iter->add_option("--example", ia.example, "Plane example")->check(CLI::IsMember({1, 2}));
  ii->excludes(ie);
  iter->add_option("--start", ia.start, "Start element for a finite instance");
  iter->add_option("--x0", ia.x0, "First coordinate of the plane start point");
  iter->add_option("--y0", ia.y0, "Second coordinate of the plane start point");
  iter->add_option("--tol", ia.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  iter->add_option("--max-iter", ia.max_iter, "Iteration budget")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 32));
  iter->add_option("--out", ia.out, "Trace CSV path");
  iter->add_option("--svg", ia.svg, "Residual plot path");

  FdeArgs fa;
  auto* fde = app.add_subcommand("solve-fde", "Solve the demo boundary value problem by fixed-point iteration");
  fde->add_option("--zeta", fa.zeta, "Order of the integral operator")->check(CLI::PositiveNumber);
  fde->add_option("--grid", fa.grid, "Number of grid intervals")->check(CLI::Range(std::size_t{8}, std::size_t{1} << 20));
  fde->add_option("--tol", fa.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  fde->add_option("--max-iter", fa.max_iter, "Iteration budget")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 32));
  fde->add_option("--gamma-variant", fa.gamma_variant, "Gamma argument in the Lipschitz bound")
      ->check(CLI::IsMember({"alpha", "zeta"}));
  fde->add_option("--out", fa.out, "Solution CSV path (t,value)");
  fde->add_option("--trace", fa.trace, "Trace CSV path (iteration,residual)");
  fde->add_option("--svg", fa.svg, "Residual plot path");

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Exhaustively model-check small finite instances");
  oracle->add_option("--n", oa.n, "Largest carrier size")->check(CLI::Range(2, 4));
  oracle->add_option("--g-max", oa.g_max, "Bound on |g| entries for carrier size 2")->check(CLI::Range(0, 8));
  oracle->add_option("--large-g-max", oa.large_g_max, "Bound on |g| entries for carrier sizes 3 and 4")->check(CLI::Range(0, 8));
  oracle->add_option("--rel-cap", oa.rel_cap, "Relations per size, spread over the lattice (0 = all)");
  oracle->add_option("--threads", oa.threads, "Worker threads (0 = hardware concurrency)");
  oracle->add_option("--json", oa.json_out, "Write the full report as JSON");

  ExampleArgs ea;
  auto* example = app.add_subcommand("example", "Iterate the plane examples from (0,1)");
  example->add_option("--which", ea.which, "1, 2, or both")->check(CLI::IsMember({"1", "2", "both"}));
  example->add_option("--n", ea.n, "Iterations")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  example->add_option("--out", ea.out, "Iterate CSV path");
  example->add_option("--trace", ea.trace, "Residual CSV path (first selected example)");
  example->add_option("--svg", ea.svg, "Plot of |second coordinate| path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (verify->parsed()) {
      if (va.instance.empty() && va.example == 0) throw CLI::RequiredError("--instance or --example");
      return run_verify(va);
    }
    if (iter->parsed()) {
      if (ia.instance.empty() && ia.example == 0) throw CLI::RequiredError("--instance or --example");
      return run_iterate(ia);
    }
    if (fde->parsed()) return run_solve_fde(fa);
    if (oracle->parsed()) return run_oracle_cmd(oa);
    if (example->parsed()) return run_example(ea);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "relfix: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
