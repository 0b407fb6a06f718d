#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <pagecert/asymptotic.hpp>
#include <pagecert/search.hpp>
#include <pagecert/selfcheck.hpp>

namespace pagecert::cli {

namespace {

using nlohmann::json;

struct run_config {
  std::string command;
  std::string table_path;
  std::string parity_filter = "both";
  double c_start = 0, c_step = 0;
  double q_lo = 0, q_hi = 0;
  std::vector<double> x_grid;
  std::string precision = "extended";
  bool pomerance = false;
  std::string e_model = "sound";
  std::string format = "json";
  std::string output;
  unsigned threads = 0;
  double q0_for_A = asymptotic_q0;
  double c = 0;
  bool allow_reduction = true;
};

std::vector<parity> parities(const std::string& f) {
  if (f == "both") return {parity::even, parity::odd};
  return {parse_parity(f)};
}

candidate_config base_config(const run_config& rc) {
  candidate_config cfg;
  cfg.f.e.pomerance = rc.pomerance;
  cfg.f.e.model = rc.e_model == "printed" ? e_model::printed : e_model::sound;
  cfg.long_double_escalation = rc.precision != "double";
  return cfg;
}

void write(const run_config& rc, const std::string& text, std::ostream& out) {
  if (rc.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(rc.output);
  if (!f) throw std::runtime_error("cannot write " + rc.output);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string describe(const row_verification& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "row %zu %s c=%s x=10^%s: %s%s", r.row_index + 1, to_string(r.par),
                format_number(r.c_used).c_str(), format_number(r.log10_x).c_str(), to_string(r.certificate.status),
                r.reduced ? " (c reduced)" : "");
  std::string s = buf;
  if (!r.certificate.note.empty()) s += " [" + r.certificate.note + "]";
  return s;
}

int verify_table_cmd(const run_config& rc, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(rc.table_path);
  const auto rows = rc.table_path.size() > 5 && rc.table_path.substr(rc.table_path.size() - 5) == ".json"
                        ? parse_json(text)
                        : parse_csv(text);
  const auto results = verify_table(rows, parities(rc.parity_filter), base_config(rc), rc.threads, rc.allow_reduction);

  // the certified part of the table, with the c actually used
  std::vector<table_row> verified = rows;
  for (auto& r : verified) r.even = r.odd = std::nullopt;
  bool all = true;
  double cmin = 2;
  for (const auto& r : results) {
    all &= r.ok();
    cmin = std::min(cmin, r.published_c);
    if (r.ok()) (r.par == parity::even ? verified[r.row_index].even : verified[r.row_index].odd) =
        row_entry{r.c_used, r.log10_x};
  }
  const auto th_even = solve_threshold(cmin, parity::even, rc.q0_for_A);
  const auto th_odd = solve_threshold(cmin, parity::odd, rc.q0_for_A);
  const auto cov = theorem_coverage(verified, th_even, th_odd);

  if (rc.format == "text") {
    std::ostringstream os;
    for (const auto& r : results) os << describe(r) << "\n";
    os << "thresholds at c=" << format_number(cmin) << ": even " << th_even.combined_threshold << ", odd "
       << th_odd.combined_threshold << "\n";
    os << "coverage: " << (cov.covered ? "yes" : "no: " + cov.reason) << "\n";
    write(rc, os.str(), out);
  } else if (rc.format == "csv") {
    write(rc, emit_csv(verified), out);
  } else {
    json rep;
    rep["command"] = "verify-table";
    rep["rows"] = json::array();
    for (const auto& r : results) rep["rows"].push_back(to_json(r));
    rep["thresholds"] = {to_json(th_even), to_json(th_odd)};
    rep["coverage"] = {{"covered", cov.covered}, {"reason", cov.reason}};
    rep["all_certified"] = all;
    write(rc, rep.dump(2) + "\n", out);
  }
  for (const auto& r : results)
    if (!r.ok()) err << "not certified: " << describe(r) << "\n";
  return all ? 0 : 1;
}

int search_cmd(const run_config& rc, std::ostream& out, std::ostream& err) {
  const auto ps = parities(rc.parity_filter);
  if (ps.size() != 1) throw parse_error("search needs --parity even or odd");
  const parity p = ps.front();
  const modulus_range range = row_range(rc.q_lo, rc.q_hi, p);
  search_options opt;
  opt.base = base_config(rc);
  opt.x_grid = rc.x_grid;
  const double step = rc.c_step > 0 ? rc.c_step : default_c_step(rc.q_lo);
  const auto best = find_best(range, rc.c_start, step, opt);
  if (!best) {
    err << "no certified c at c_start=" << format_number(rc.c_start) << "\n";
    json rep{{"command", "search"}, {"found", false}};
    if (rc.format == "json") write(rc, rep.dump(2) + "\n", out);
    return 1;
  }
  table_row row{rc.q_lo, rc.q_hi, std::nullopt, std::nullopt};
  (p == parity::even ? row.even : row.odd) = row_entry{best->c, best->log10_x};
  if (rc.format == "csv") {
    write(rc, emit_csv({row}), out);
  } else if (rc.format == "text") {
    write(rc, "c=" + format_number(best->c) + " x=10^" + format_number(best->log10_x) + "\n", out);
  } else {
    json rep{{"command", "search"},
             {"found", true},
             {"row", to_json(row)},
             {"steps", best->steps},
             {"certificate", to_json(best->certificate)}};
    write(rc, rep.dump(2) + "\n", out);
  }
  return 0;
}

int thresholds_cmd(const run_config& rc, std::ostream& out, std::ostream& err) {
  try {
    const auto e = solve_threshold(rc.c, parity::even, rc.q0_for_A);
    const auto o = solve_threshold(rc.c, parity::odd, rc.q0_for_A);
    if (rc.format == "text") {
      std::ostringstream os;
      os << "calypso " << e.calypso_threshold << "\neven " << e.combined_threshold << "\nodd " << o.combined_threshold
         << "\n";
      write(rc, os.str(), out);
    } else {
      json rep{{"command", "thresholds"}, {"thresholds", {to_json(e), to_json(o)}}};
      write(rc, rep.dump(2) + "\n", out);
    }
  } catch (const solver_error& ex) {
    err << "threshold solver: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}

int selfcheck_cmd(const run_config& rc, std::ostream& out) {
  const auto suites = containment_suite();
  bool all = true;
  json rep{{"command", "selfcheck"}, {"suites", json::array()}};
  std::ostringstream os;
  for (const auto& s : suites) {
    all &= s.ok();
    rep["suites"].push_back({{"name", s.name}, {"passed", s.passed}, {"total", s.total}, {"failures", s.failures}});
    os << s.name << ": " << s.passed << "/" << s.total << "\n";
    for (const auto& f : s.failures) os << "  failed " << f << "\n";
  }
  rep["ok"] = all;
  write(rc, rc.format == "text" ? os.str() : rep.dump(2) + "\n", out);
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  run_config rc;
  if (const char* env = std::getenv("PAGECERT_PRECISION")) rc.precision = env;

  CLI::App app{"certify Page-type zero-free constants for real characters"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--parity", rc.parity_filter, "even, odd or both")->check(CLI::IsMember({"even", "odd", "both"}));
    s->add_option("--precision", rc.precision, "double or extended (env PAGECERT_PRECISION)")
        ->check(CLI::IsMember({"double", "extended"}));
    s->add_flag("--pomerance", rc.pomerance, "halve the even prefix-sum bound");
    s->add_option("--e-model", rc.e_model, "sound or printed")->check(CLI::IsMember({"sound", "printed"}));
    s->add_option("--format", rc.format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
    s->add_option("-o,--output", rc.output, "write the report here");
    s->add_option("--threads", rc.threads, "worker threads, 0 for all cores");
  };
  auto* vt = app.add_subcommand("verify-table", "certify every entry of a table");
  common(vt);
  vt->add_option("--input", rc.table_path, "csv or json table")->required();
  vt->add_option("--q0-for-a", rc.q0_for_A, "q0 used for A in the large-moduli inequality");
  bool no_reduce = false;
  vt->add_flag("--no-reduction", no_reduce, "do not retry failing rows with c lowered by 0.5%");

  auto* se = app.add_subcommand("search", "find the largest certified c on a range");
  common(se);
  se->add_option("--c-start", rc.c_start)->required();
  se->add_option("--c-step", rc.c_step);
  se->add_option("--q-lo", rc.q_lo)->required();
  se->add_option("--q-hi", rc.q_hi)->required();
  se->add_option("--x-grid", rc.x_grid, "log10 x values")->delimiter(',');

  auto* th = app.add_subcommand("thresholds", "solve the large-moduli inequalities");
  common(th);
  th->add_option("--c", rc.c)->required();
  th->add_option("--q0-for-a", rc.q0_for_A);

  auto* sc = app.add_subcommand("selfcheck", "run the oracle containment suite");
  common(sc);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }
  rc.allow_reduction = !no_reduce;

  try {
    if (*vt) return verify_table_cmd(rc, out, err);
    if (*se) return search_cmd(rc, out, err);
    if (*th) return thresholds_cmd(rc, out, err);
    return selfcheck_cmd(rc, out);
  } catch (const parse_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const tiling_error& e) {
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace pagecert::cli
