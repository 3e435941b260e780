#include "twocopy/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "twocopy/chsh.hpp"
#include "twocopy/fock.hpp"
#include "twocopy/two_copy.hpp"

namespace twocopy::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

double parse_number(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    fail(field + ": '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v)) {
    fail(field + ": '" + text + "' is not a number");
  }
  return v;
}

double parse_angle(std::string text) {
  double scale = 1.0;
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    scale = std::numbers::pi;
    text.erase(text.size() - 2);
    if (!text.empty() && text.back() == '*') text.pop_back();
    if (text.empty()) return scale;
    if (text == "-") return -scale;
  }
  return scale * parse_number(text, "grid");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

enum class Format { Csv, Json };

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  fail("format: expected csv or json, got '" + name + "'");
}

void write_csv_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_number(v);
    first = false;
  }
  out << '\n';
}

json probabilities_json(const CollisionProbabilities& p) {
  return {{"p_cc", p.p_cc}, {"p_ca", p.p_ca}, {"p_ac", p.p_ac}, {"p_aa", p.p_aa}};
}

json purities_json(double tr, double tr_a, double tr_b) {
  return {{"tr_rho2", tr}, {"tr_rho_a2", tr_a}, {"tr_rho_b2", tr_b}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json fit_json(const experiment::FitResult& f) {
  return {{"offset", f.offset},
          {"amplitude", f.amplitude},
          {"phase_origin", f.phase_origin},
          {"offset_sigma", f.offset_sigma},
          {"amplitude_sigma", f.amplitude_sigma},
          {"residual_rms", f.residual_rms},
          {"chi2", f.chi2},
          {"minima_locations", f.minima_locations},
          {"minimum_value", f.minimum_value},
          {"minimum_sigma", f.minimum_sigma}};
}

json reading_json(const experiment::WitnessReading& r) {
  return {{"value", r.value}, {"sigma", r.sigma}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail("out: cannot open '" + path + "' for writing");
  f << content;
  if (!f) fail("out: write to '" + path + "' failed");
}

// Subcommands.

void cmd_purity(const std::string& state_spec, Format format, std::ostream& out) {
  const DensityOperator rho = parse_state(state_spec);
  const CollisionProbabilities p = collision_probabilities(rho);
  const Purities two_copy = purities_from_probabilities(p);
  const double tr = purity(rho);
  const double tr_a = purity(partial_trace(rho, Subsystem::A));
  const double tr_b = purity(partial_trace(rho, Subsystem::B));
  const CollisionProbabilities direct = probabilities_from_purities(tr, tr_a, tr_b);
  const WitnessVerdict w = entropic_witness(p);
  const WitnessVerdict w_direct = entropic_witness(direct.p_ca, direct.p_ac, direct.p_aa);

  if (format == Format::Json) {
    json j = {{"state", state_spec},
              {"collision", {{"two_copy", probabilities_json(p)},
                             {"direct", probabilities_json(direct)}}},
              {"purities", {{"two_copy", purities_json(two_copy.tr_rho2, two_copy.tr_rho_a2,
                                                       two_copy.tr_rho_b2)},
                            {"direct", purities_json(tr, tr_a, tr_b)}}},
              {"witness", {{"violated_a", w.violated_a},
                           {"violated_b", w.violated_b},
                           {"margins", {{"a", w.margin_a}, {"b", w.margin_b}}}}}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "quantity,two_copy,direct\n";
  auto row = [&](const char* name, double a, double b) {
    out << name << ',' << format_number(a) << ',' << format_number(b) << '\n';
  };
  row("p_cc", p.p_cc, direct.p_cc);
  row("p_ca", p.p_ca, direct.p_ca);
  row("p_ac", p.p_ac, direct.p_ac);
  row("p_aa", p.p_aa, direct.p_aa);
  row("tr_rho2", two_copy.tr_rho2, tr);
  row("tr_rho_a2", two_copy.tr_rho_a2, tr_a);
  row("tr_rho_b2", two_copy.tr_rho_b2, tr_b);
  row("margin_a", w.margin_a, w_direct.margin_a);
  row("margin_b", w.margin_b, w_direct.margin_b);
}

void cmd_werner_scan(double pmin, double pmax, int steps, Format format, std::ostream& out) {
  if (!(pmin >= 0.0 && pmax <= 1.0 && pmin < pmax)) {
    fail("pmin/pmax: need 0 <= pmin < pmax <= 1");
  }
  if (steps < 1) fail("steps: must be at least 1");
  json rows = json::array();
  if (format == Format::Csv) out << "p,ppt_min_eig,entropic_margin,max_chsh\n";
  for (int i = 0; i <= steps; ++i) {
    const double p = i == steps ? pmax : pmin + (pmax - pmin) * i / steps;
    const DensityOperator rho = werner(p);
    const WitnessVerdict w = entropic_witness(collision_probabilities(rho));
    const double ppt = ppt_min_eigenvalue(rho);
    const double margin = std::max(w.margin_a, w.margin_b);
    const double chsh = max_chsh(rho);
    if (format == Format::Csv) {
      write_csv_row(out, {p, ppt, margin, chsh});
    } else {
      rows.push_back(
          {{"p", p}, {"ppt_min_eig", ppt}, {"entropic_margin", margin}, {"max_chsh", chsh}});
    }
  }
  if (format == Format::Json) out << rows.dump(2) << '\n';
}

void cmd_phase_scan(const std::string& grid_spec, Format format, std::ostream& out) {
  const std::vector<double> grid = parse_grid(grid_spec);
  const auto curves = fock::coincidence_curves(grid);
  if (format == Format::Csv) {
    out << "phi,p_cc,p_ca,p_ac,p_aa\n";
    for (const auto& c : curves) write_csv_row(out, {c.phi, c.p.p_cc, c.p.p_ca, c.p.p_ac, c.p.p_aa});
    return;
  }
  json rows = json::array();
  for (const auto& c : curves) {
    rows.push_back({{"phi", c.phi},
                    {"p_cc", c.p.p_cc},
                    {"p_ca", c.p.p_ca},
                    {"p_ac", c.p.p_ac},
                    {"p_aa", c.p.p_aa}});
  }
  out << rows.dump(2) << '\n';
}

struct SimulateArgs {
  std::string config_path;
  std::string grid;
  std::string out_prefix;
  std::optional<std::uint64_t> seed;
};

void cmd_simulate(const SimulateArgs& a, Format format, std::ostream& out) {
  json j = json::object();
  if (!a.config_path.empty()) {
    std::ifstream f(a.config_path);
    if (!f) fail("config: cannot open '" + a.config_path + "'");
    try {
      j = json::parse(f);
    } catch (const json::parse_error& e) {
      fail("config: invalid JSON (" + std::string(e.what()) + ")");
    }
  }
  experiment::RunConfig config = config_from_json(j);
  if (!a.grid.empty()) config.phi_grid = parse_grid(a.grid);
  if (a.seed) config.seed = *a.seed;

  const experiment::RunReport report = experiment::witness_from_run(config);
  const std::string csv = counts_csv(report.counts);
  const std::string report_text = report_to_json(report).dump(2) + "\n";
  if (!a.out_prefix.empty()) {
    write_file(a.out_prefix + ".counts.csv", csv);
    write_file(a.out_prefix + ".report.json", report_text);
    return;
  }
  out << (format == Format::Csv ? csv : report_text);
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) fail("grid: expected start:stop:n, got '" + spec + "'");
  const double start = parse_angle(parts[0]);
  const double stop = parse_angle(parts[1]);
  const double n = parse_number(parts[2], "grid");
  if (n < 1.0 || n != std::floor(n) || n > 1e7) {
    fail("grid: point count must be a positive integer, got '" + parts[2] + "'");
  }
  return experiment::phase_grid(start, stop, static_cast<std::size_t>(n));
}

DensityOperator parse_state(const std::string& spec) {
  if (spec == "singlet") return singlet();
  if (spec.rfind("werner:", 0) == 0) {
    const double p = parse_number(spec.substr(7), "state");
    if (p < 0.0 || p > 1.0) fail("state: werner parameter must be in [0, 1]");
    return werner(p);
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream f(path);
    if (!f) fail("state: cannot open '" + path + "'");
    std::vector<std::vector<Complex>> rows;
    std::string line;
    while (std::getline(f, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      std::vector<double> nums;
      std::string tok;
      while (ls >> tok) nums.push_back(parse_number(tok, "state"));
      if (nums.empty()) continue;
      if (nums.size() % 2 != 0) fail("state: row " + std::to_string(rows.size() + 1) +
                                     " has an odd number of entries");
      std::vector<Complex> row;
      for (std::size_t k = 0; k < nums.size(); k += 2) row.emplace_back(nums[k], nums[k + 1]);
      rows.push_back(std::move(row));
    }
    const std::size_t dim = rows.size();
    const auto d = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(dim))));
    if (dim < 4 || d * d != dim) {
      fail("state: matrix must have d*d rows with d >= 2, got " + std::to_string(dim));
    }
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (rows[i].size() != dim) {
        fail("state: row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
             " entries, expected " + std::to_string(dim));
      }
      for (std::size_t k = 0; k < dim; ++k) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
      }
    }
    try {
      return make_density(m, d, d);
    } catch (const InvariantViolation& e) {
      fail(std::string("state: ") + e.what());
    }
  }
  fail("state: unknown family '" + spec + "' (expected singlet, werner:P or file:PATH)");
}

experiment::RunConfig config_from_json(const json& j) {
  if (!j.is_object()) fail("config: expected a JSON object");
  experiment::RunConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "phi_grid") {
      if (value.is_string()) {
        c.phi_grid = parse_grid(value.get<std::string>());
        continue;
      }
      if (!value.is_array()) fail("phi_grid: expected an array of numbers or a grid string");
      c.phi_grid.clear();
      for (const auto& v : value) {
        if (!v.is_number()) fail("phi_grid: expected an array of numbers");
        c.phi_grid.push_back(v.get<double>());
      }
    } else if (key == "shots_per_phase") {
      if (!value.is_number_unsigned()) fail("shots_per_phase: expected a positive integer");
      c.shots_per_phase = value.get<std::uint64_t>();
    } else if (key == "visibility") {
      if (!value.is_number()) fail("visibility: expected a number");
      c.visibility = value.get<double>();
    } else if (key == "background_rate") {
      if (!value.is_number()) fail("background_rate: expected a number");
      c.background_rate = value.get<double>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) fail("seed: expected a non-negative integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "detector_model") {
      if (!value.is_string()) fail("detector_model: expected a string");
      c.detector_model = experiment::detector_model_from_string(value.get<std::string>());
    } else {
      fail("config: unknown key '" + key + "'");
    }
  }
  return c;
}

json config_to_json(const experiment::RunConfig& c) {
  return {{"phi_grid", c.phi_grid},
          {"shots_per_phase", c.shots_per_phase},
          {"visibility", c.visibility},
          {"background_rate", c.background_rate},
          {"seed", c.seed},
          {"detector_model", experiment::to_string(c.detector_model)}};
}

json report_to_json(const experiment::RunReport& r) {
  json counts = json::array();
  for (const auto& pc : r.counts) {
    counts.push_back({{"phi", pc.phi},
                      {"n_cc", pc.n[0]},
                      {"n_ca", pc.n[1]},
                      {"n_ac", pc.n[2]},
                      {"n_aa", pc.n[3]},
                      {"n_other", pc.n[4]}});
  }
  const WitnessVerdict& w = r.witness;
  return {{"config", config_to_json(r.config)},
          {"counts", counts},
          {"fits", {{"ca", fit_json(r.fit_ca)}, {"ac", fit_json(r.fit_ac)}, {"aa", fit_json(r.fit_aa)}}},
          {"minima", {{"ca", reading_json(r.min_ca)},
                      {"ac", reading_json(r.min_ac)},
                      {"aa", reading_json(r.min_aa)}}},
          {"singlet_equivalent_minima", {{"ca", reading_json(r.singlet_ca)},
                                         {"ac", reading_json(r.singlet_ac)},
                                         {"aa", reading_json(r.singlet_aa)}}},
          {"witness", {{"violated_a", w.violated_a},
                       {"violated_b", w.violated_b},
                       {"margins", {{"a", w.margin_a}, {"b", w.margin_b}}},
                       {"significance", optional_json(w.significance())},
                       {"significances", {{"a", optional_json(w.significance_a)},
                                          {"b", optional_json(w.significance_b)}}},
                       {"threshold_sigma", r.detection_threshold_sigma},
                       {"verdict", r.violated ? "violated" : "not violated"}}}};
}

std::string counts_csv(const experiment::CountRecord& counts) {
  std::ostringstream os;
  os << "phi,n_cc,n_ca,n_ac,n_aa,n_other\n";
  for (const auto& pc : counts) {
    os << format_number(pc.phi);
    for (auto n : pc.n) os << ',' << n;
    os << '\n';
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-copy entanglement detection toolkit", "twocopy"};
  app.require_subcommand(1);

  std::string format_name;

  std::string state_spec;
  auto* purity_cmd = app.add_subcommand("purity", "collision probabilities and purities of a state");
  purity_cmd->add_option("--state", state_spec, "singlet | werner:P | file:PATH")->required();

  double pmin = 0.0, pmax = 1.0;
  int steps = 100;
  auto* scan_cmd = app.add_subcommand("werner-scan", "witnesses across the Werner family");
  scan_cmd->add_option("--pmin", pmin, "lower end of p")->capture_default_str();
  scan_cmd->add_option("--pmax", pmax, "upper end of p")->capture_default_str();
  scan_cmd->add_option("--steps", steps, "number of intervals")->capture_default_str();

  std::string grid = "0:pi:181";
  auto* phase_cmd = app.add_subcommand("phase-scan", "ideal four-fold coincidence curves");
  phase_cmd->add_option("--grid", grid, "start:stop:n")->capture_default_str();

  SimulateArgs sim;
  std::uint64_t seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "simulated counting run and witness analysis");
  sim_cmd->add_option("--config", sim.config_path, "flat JSON run configuration");
  sim_cmd->add_option("--grid", sim.grid, "start:stop:n, overrides phi_grid");
  sim_cmd->add_option("--out", sim.out_prefix,
                      "write PREFIX.counts.csv and PREFIX.report.json");
  auto* seed_opt = sim_cmd->add_option("--seed", seed, "overrides the config seed");

  for (auto* sub : {purity_cmd, scan_cmd, phase_cmd}) {
    sub->add_option("--format", format_name, "csv or json")->default_str("csv");
  }
  sim_cmd->add_option("--format", format_name, "csv (counts) or json (report)")
      ->default_str("json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const char* fallback = sim_cmd->parsed() ? "json" : "csv";
    const Format format = parse_format(format_name.empty() ? fallback : format_name);
    if (purity_cmd->parsed()) {
      cmd_purity(state_spec, format, out);
    } else if (scan_cmd->parsed()) {
      cmd_werner_scan(pmin, pmax, steps, format, out);
    } else if (phase_cmd->parsed()) {
      cmd_phase_scan(grid, format, out);
    } else {
      if (seed_opt->count() > 0) sim.seed = seed;
      cmd_simulate(sim, format, out);
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return 1;
  }
  return 0;
}

}  // namespace twocopy::cli
