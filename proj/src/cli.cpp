#include "ucqc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace ucqc::cli {

namespace {

using nlohmann::json;

std::string pair_key(QubitPair const &p) { return std::to_string(p.first) + std::to_string(p.second); }

json ckw_json(CkwReport<double> const &r)
{
  return {{"qubit", r.qubit}, {"tau", r.tau}, {"sum_sq_concurrence", r.sum_sq_concurrence}, {"saturation", r.saturation}};
}

json ckw_list_json(std::vector<CkwReport<double>> const &reports)
{
  json arr = json::array();
  for (auto const &r : reports) {
    arr.push_back(ckw_json(r));
  }
  return arr;
}

char const *command_name(Command c)
{
  switch (c) {
  case Command::BipartiteSweep: return "bipartite-sweep";
  case Command::Ghz: return "ghz";
  case Command::Ckw: return "ckw";
  case Command::Verify: return "verify";
  }
  return "?";
}

std::vector<double> alpha_points(RunConfig const &config)
{
  if (config.alpha) {
    return {*config.alpha};
  }
  return unit_grid(config.grid_points);
}

template <typename Result> void emit(Result const &result, RunConfig const &config, std::ostream &out)
{
  if (config.output_path.empty()) {
    write_table(result, config.format, out);
  } else {
    write_table(result, config.format, config.output_path);
  }
}

} // namespace

void RunConfig::validate() const
{
  if (grid_points < 2) {
    throw std::invalid_argument("grid must have at least 2 points, got " + std::to_string(grid_points));
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0)) {
    throw std::invalid_argument("range error: alpha = " + format_real(*alpha) + " outside [0, 1]");
  }
  if (samples < 1) {
    throw std::invalid_argument("samples must be at least 1");
  }
  if (first_measured != 3 && first_measured != 4) {
    throw std::invalid_argument("first measured qubit must be 3 or 4");
  }
}

std::string format_real(double x)
{
  if (x == 0.0) {
    x = 0.0; // drops the sign of -0
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_table(SweepResult const &result, Format format, std::ostream &os)
{
  if (format == Format::Json) {
    json surfaces = json::object();
    for (auto const &[pair, grid] : result.concurrence_surfaces) {
      json rows = json::array();
      for (Eigen::Index i = 0; i < grid.rows(); ++i) {
        std::vector<double> row(grid.cols());
        for (Eigen::Index j = 0; j < grid.cols(); ++j) {
          row[static_cast<std::size_t>(j)] = grid(i, j);
        }
        rows.push_back(row);
      }
      surfaces[pair_key(pair)] = rows;
    }
    json doc = {{"family", to_string(result.family)},
                {"alpha_grid", result.alpha_grid},
                {"c0_grid", result.c0_grid},
                {"concurrence_surfaces", surfaces}};
    os << doc.dump(2) << '\n';
    return;
  }
  os << "alpha,c0";
  for (auto const &p : bipartite_pairs) {
    os << ",c" << pair_key(p);
  }
  os << '\n';
  for (std::size_t i = 0; i < result.alpha_grid.size(); ++i) {
    for (std::size_t j = 0; j < result.c0_grid.size(); ++j) {
      os << format_real(result.alpha_grid[i]) << ',' << format_real(result.c0_grid[j]);
      for (auto const &p : bipartite_pairs) {
        os << ',' << format_real(result.surface(p.first, p.second)(Eigen::Index(i), Eigen::Index(j)));
      }
      os << '\n';
    }
  }
}

void write_table(std::vector<GhzReport> const &reports, Format format, std::ostream &os)
{
  if (format == Format::Json) {
    json arr = json::array();
    for (auto const &r : reports) {
      arr.push_back({{"alpha", r.alpha},
                     {"curve_a", r.curve_a},
                     {"curve_b", r.curve_b},
                     {"curve_c", r.curve_c},
                     {"curve_d", r.curve_d},
                     {"curve_e", r.curve_e},
                     {"outcome_probabilities", r.outcome_probabilities},
                     {"ckw_after_first", ckw_list_json(r.ckw_after_first)},
                     {"ckw_after_second", ckw_list_json(r.ckw_after_second)}});
    }
    os << json{{"reports", arr}}.dump(2) << '\n';
    return;
  }
  os << "alpha,curve_a,curve_b,curve_c,curve_d,curve_e,p_first_plus,p_second_plus\n";
  for (auto const &r : reports) {
    os << format_real(r.alpha) << ',' << format_real(r.curve_a) << ',' << format_real(r.curve_b) << ','
       << format_real(r.curve_c) << ',' << format_real(r.curve_d) << ',' << format_real(r.curve_e) << ','
       << format_real(r.outcome_probabilities[0]) << ',' << format_real(r.outcome_probabilities[2]) << '\n';
  }
}

void write_table(std::vector<CkwScanRow> const &rows, Format format, std::ostream &os)
{
  if (format == Format::Json) {
    json arr = json::array();
    for (auto const &row : rows) {
      arr.push_back({{"alpha", row.alpha}, {"stage", to_string(row.stage)}, {"reports", ckw_list_json(row.reports)}});
    }
    os << json{{"scan", arr}}.dump(2) << '\n';
    return;
  }
  os << "alpha,stage,qubit,tau,sum_c2,s\n";
  for (auto const &row : rows) {
    for (auto const &r : row.reports) {
      os << format_real(row.alpha) << ',' << to_string(row.stage) << ',' << r.qubit << ',' << format_real(r.tau)
         << ',' << format_real(r.sum_sq_concurrence) << ',' << format_real(r.saturation) << '\n';
    }
  }
}

void write_table(VerificationReport const &report, Format format, std::ostream &os)
{
  if (format == Format::Json) {
    json doc = {{"n_samples", report.n_samples},         {"alpha_points", report.alpha_points},
                {"tolerance", report.tolerance},         {"max_deviation", report.max_deviation},
                {"worst_alpha", report.worst_alpha},     {"worst_sample", report.worst_sample},
                {"passed", report.passed}};
    os << doc.dump(2) << '\n';
    return;
  }
  os << "n_samples,alpha_points,tolerance,max_deviation,worst_alpha,worst_sample,passed\n";
  os << report.n_samples << ',' << report.alpha_points << ',' << format_real(report.tolerance) << ','
     << format_real(report.max_deviation) << ',' << format_real(report.worst_alpha) << ',' << report.worst_sample
     << ',' << (report.passed ? "true" : "false") << '\n';
}

template <typename Result> void write_table(Result const &result, Format format, std::string const &path)
{
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  write_table(result, format, file);
  file.flush();
  if (!file) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

template void write_table(SweepResult const &, Format, std::string const &);
template void write_table(std::vector<GhzReport> const &, Format, std::string const &);
template void write_table(std::vector<CkwScanRow> const &, Format, std::string const &);
template void write_table(VerificationReport const &, Format, std::string const &);

int run_command(RunConfig const &config, std::ostream &out, std::ostream &err)
{
  try {
    config.validate();
  } catch (std::exception const &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }

  try {
    GhzOptions ghz_options;
    ghz_options.first_measured = config.first_measured;

    switch (config.command) {
    case Command::BipartiteSweep: {
      auto const grid = unit_grid(config.grid_points);
      emit(bipartite_sweep(grid, grid, config.family), config, out);
      break;
    }
    case Command::Ghz: {
      std::vector<GhzReport> reports;
      for (double a : alpha_points(config)) {
        reports.push_back(ghz_pipeline(a, ghz_options));
      }
      emit(reports, config, out);
      break;
    }
    case Command::Ckw:
      emit(ckw_scan(alpha_points(config), ghz_options), config, out);
      break;
    case Command::Verify: {
      auto const rep = verify_circuit_vs_analytic(config.samples, config.seed, config.tolerance);
      if (!config.output_path.empty()) {
        write_table(rep, config.format, config.output_path);
      }
      out << "max deviation: " << format_real(rep.max_deviation) << " (tolerance " << format_real(rep.tolerance)
          << ", " << rep.n_samples << " samples x " << rep.alpha_points << " alpha values) "
          << (rep.passed ? "PASS" : "FAIL") << '\n';
      return rep.passed ? exit_code::ok : exit_code::verification_failed;
    }
    }
  } catch (std::exception const &e) {
    err << "error: " << command_name(config.command) << ": " << e.what() << '\n';
    return exit_code::usage;
  }
  return exit_code::ok;
}

int cli_main(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Exact density-operator simulation of the universal covariant qubit cloner"};
  app.require_subcommand(1);

  RunConfig config;
  std::string family = to_string(config.family);
  std::string format = "csv";
  double alpha = 0;

  auto add_output = [&](CLI::App *sub) {
    sub->add_option("-o,--out", config.output_path, "Output file (default: standard output)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto *sweep = app.add_subcommand("bipartite-sweep", "Pairwise concurrences over an (alpha, c0) grid");
  sweep->add_option("--grid", config.grid_points, "Points per axis")->capture_default_str();
  sweep->add_option("--family", family, "phi-plus, phi-minus, psi-plus or psi-minus")
    ->check(CLI::IsMember({"phi-plus", "phi-minus", "psi-plus", "psi-minus"}))
    ->capture_default_str();
  add_output(sweep);

  auto *ghz = app.add_subcommand("ghz", "GHZ cloning and measurement pipeline (curves A-E)");
  auto *ckw = app.add_subcommand("ckw", "CKW saturation after each GHZ measurement");
  for (auto *sub : {ghz, ckw}) {
    sub->add_option("--grid", config.grid_points, "Points on the alpha grid")->capture_default_str();
    sub->add_option("--alpha", alpha, "Single alpha value instead of a grid");
    sub->add_option("--first", config.first_measured, "Qubit measured first (4 = clone, 3 = original)")
      ->capture_default_str();
    add_output(sub);
  }

  auto *verify = app.add_subcommand("verify", "Compare circuit marginals with the closed-form cloner output");
  verify->add_option("--samples", config.samples, "Random input states")->capture_default_str();
  verify->add_option("--seed", config.seed, "Generator seed")->capture_default_str();
  verify->add_option("--tol", config.tolerance, "Maximum elementwise deviation")->capture_default_str();
  add_output(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const &) {
    out << app.help();
    return exit_code::ok;
  } catch (CLI::ParseError const &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_code::usage;
  }

  if (sweep->parsed()) {
    config.command = Command::BipartiteSweep;
  } else if (ghz->parsed()) {
    config.command = Command::Ghz;
  } else if (ckw->parsed()) {
    config.command = Command::Ckw;
  } else {
    config.command = Command::Verify;
  }
  for (auto *sub : {ghz, ckw}) {
    if (sub->parsed() && sub->count("--alpha") > 0) {
      config.alpha = alpha;
    }
  }
  config.family = parse_bell_family(family);
  config.format = format == "json" ? Format::Json : Format::Csv;
  return run_command(config, out, err);
}

} // namespace ucqc::cli
