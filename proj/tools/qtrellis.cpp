#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtrellis/qtrellis.hpp"

using namespace qtrellis;
using nlohmann::json;

namespace {

struct Cell {
  long v = 0, e = 0, cost = 0;
};

struct Reference {
  Cell t, tx, tz;
};

// Published complexities of the bundled codes.
const std::map<std::string, Reference>& reference_table() {
  static const std::map<std::string, Reference> table{
      {"code422", {{101, 148, 195}, {19, 22, 25}, {19, 22, 25}}},
      {"steane713", {{185, 293, 401}, {33, 42, 51}, {33, 42, 51}}},
      {"shor913", {{81, 131, 183}, {27, 42, 57}, {27, 30, 32}}},
      {"rm1513", {{4773, 8852, 12931}, {219, 273, 246}, {219, 374, 529}}},
  };
  return table;
}

enum class Sector { full, x, z };

Sector parse_sector(const std::string& s) {
  if (s == "full") return Sector::full;
  if (s == "x") return Sector::x;
  if (s == "z") return Sector::z;
  throw std::invalid_argument("unknown sector '" + s + "'");
}

JointCode sector_code(const LoadedCode& lc, Sector s) {
  if (s == Sector::full) return JointCode::cosets_of_stabilizer(lc.code);
  if (!lc.css) throw std::invalid_argument("sector trellises need a CSS code");
  return s == Sector::x ? lc.css->x_sector() : lc.css->z_sector();
}

// Single-goal trellises accept "tof" or "bcjr_wolf".
Trellis make_trellis(const LoadedCode& lc, Sector sector, bool multigoal, const std::string& method) {
  const JointCode jc = sector_code(lc, sector);
  if (multigoal) return build_multigoal_trellis(jc, parse_construction(method.empty() ? "extended_shannon" : method));
  if (method == "bcjr_wolf") {
    Trellis t = bcjr_wolf(jc.checks, jc.symbols());
    reduce(t, [](std::uint64_t syn) { return syn == 0; });
    t.goal_bits = 0;
    t.goal_labels = {0};
    return t;
  }
  if (!method.empty() && method != "tof") throw std::invalid_argument("single-goal method must be tof or bcjr_wolf");
  PauliMatrix rows = jc.subcode;
  rows.insert(rows.end(), jc.logicals.begin(), jc.logicals.end());
  return canonical_form(minimal_trellis_tof(rows, jc.n));
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void print_summary(std::ostream& os, const Trellis& t) {
  const auto r = complexity(t);
  os << "vertices " << r.num_vertices << "\nedges " << r.num_edges << "\nviterbi_cost " << r.viterbi_cost
     << "\ngoals " << t.goal_count() << "\nstate_profile " << join(r.state_profile) << "\nedge_profile "
     << join(r.edge_profile) << '\n';
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string fmt_double(double v, int prec = 12) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

struct TrellisOpts {
  std::string code, method, sector = "full", out, format = "json";
  bool multigoal = false;
};

int cmd_build(const TrellisOpts& o, bool summary_to_stdout) {
  const LoadedCode lc = resolve_code(o.code);
  const Trellis t = make_trellis(lc, parse_sector(o.sector), o.multigoal, o.method);
  std::string text;
  if (o.format == "json") text = to_json(t).dump(2) + "\n";
  else if (o.format == "dot") text = to_dot(t, lc.name);
  else throw std::invalid_argument("unknown format '" + o.format + "'");
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    if (summary_to_stdout) print_summary(std::cerr, t);
  } else {
    write_file(o.out, text);
    if (summary_to_stdout) print_summary(std::cout, t);
  }
  return 0;
}

int cmd_complexity(const std::vector<std::string>& codes, const std::string& method, bool as_json) {
  const Construction c = parse_construction(method);
  json rows = json::array();
  std::ostringstream table;
  auto pad = [](const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; };
  if (!codes.empty()) {
    table << std::left << std::setw(12) << "code" << std::right;
    for (const char* h : {"T.V", "T.E", "T.2E-V", "TX.V", "TX.E", "TX.2E-V", "TZ.V", "TZ.E", "TZ.2E-V"})
      table << pad(h, 10);
    table << "\n";
  }
  std::vector<std::string> notes;
  for (const auto& name : codes) {
    const LoadedCode lc = resolve_code(name);
    std::vector<std::pair<std::string, Trellis>> ts;
    ts.emplace_back("T", build_multigoal_trellis(lc.code, c));
    if (lc.css) {
      ts.emplace_back("TX", build_multigoal_trellis(lc.css->x_sector(), c));
      ts.emplace_back("TZ", build_multigoal_trellis(lc.css->z_sector(), c));
    }
    const auto ref_it = reference_table().find(name);
    json row{{"code", name}};
    table << std::left << std::setw(12) << name << std::right;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto r = complexity(ts[i].second);
      json cell{{"vertices", r.num_vertices}, {"edges", r.num_edges}, {"viterbi_cost", r.viterbi_cost}};
      std::string mark_v, mark_e;
      if (ref_it != reference_table().end()) {
        const Cell ref = i == 0 ? ref_it->second.t : (i == 1 ? ref_it->second.tx : ref_it->second.tz);
        cell["reference"] = {{"vertices", ref.v}, {"edges", ref.e}, {"viterbi_cost", ref.cost}};
        cell["matches_reference"] = ref.v == static_cast<long>(r.num_vertices) && ref.e == static_cast<long>(r.num_edges);
        if (ref.v != static_cast<long>(r.num_vertices)) mark_v = "*";
        if (ref.e != static_cast<long>(r.num_edges)) mark_e = "*";
        if (2 * ref.e - ref.v != ref.cost) {
          cell["reference_cost_inconsistent"] = true;
          notes.push_back(name + " " + ts[i].first + ": reference 2E-V column reads " + std::to_string(ref.cost) +
                          " but 2*" + std::to_string(ref.e) + "-" + std::to_string(ref.v) + " = " +
                          std::to_string(2 * ref.e - ref.v));
        }
        if (!mark_v.empty() || !mark_e.empty())
          notes.push_back(name + " " + ts[i].first + ": computed " + std::to_string(r.num_vertices) + "/" +
                          std::to_string(r.num_edges) + ", reference " + std::to_string(ref.v) + "/" +
                          std::to_string(ref.e));
      }
      row[ts[i].first] = cell;
      table << pad(std::to_string(r.num_vertices) + mark_v, 10) << pad(std::to_string(r.num_edges) + mark_e, 10)
            << pad(std::to_string(r.viterbi_cost), 10);
    }
    table << "\n";
    rows.push_back(row);
  }
  if (as_json) {
    std::cout << json{{"method", method}, {"rows", rows}}.dump(2) << "\n";
  } else {
    std::cout << table.str();
    for (const auto& n : notes) std::cout << "note: " << n << "\n";
  }
  return 0;
}

struct DecodeOpts {
  std::string code, mode = "dml", syndrome, marginal = "independent", tie = "canonical";
  double p = 0.1;
  std::uint64_t seed = 0;
  bool oracle = false, as_json = false;
};

json coset_json(const std::vector<double>& log_probs, std::size_t bits, const std::vector<double>* oracle_probs) {
  json a = json::array();
  for (std::size_t l = 0; l < log_probs.size(); ++l) {
    json c{{"label", label_string(l, bits)}, {"log_prob", log_probs[l]}};
    if (oracle_probs) c["oracle_log_prob"] = std::log((*oracle_probs)[l]);
    a.push_back(c);
  }
  return a;
}

int cmd_decode(const DecodeOpts& o) {
  const LoadedCode lc = resolve_code(o.code);
  const DecodeMode mode = parse_decode_mode(o.mode);
  const auto slash = o.syndrome.find('/');
  BinaryVector sigma, sigma_x, sigma_z;
  if (slash != std::string::npos) {
    if (!lc.css) throw std::invalid_argument("split syndrome given for a non-CSS code");
    sigma_x = BinaryVector::parse(o.syndrome.substr(0, slash));
    sigma_z = BinaryVector::parse(o.syndrome.substr(slash + 1));
    sigma = lc.css->join_syndrome(sigma_x, sigma_z);
  } else {
    sigma = BinaryVector::parse(o.syndrome);
    if (sigma.size() != lc.code.stab_gens().size())
      throw std::invalid_argument("syndrome has " + std::to_string(sigma.size()) + " bits, expected " +
                                  std::to_string(lc.code.stab_gens().size()));
    if (lc.css) std::tie(sigma_x, sigma_z) = lc.css->split_syndrome(sigma);
  }
  const ChannelModel ch = ChannelModel::depolarizing(o.p);
  DecodeResult r;
  json out{{"code", lc.name}, {"mode", o.mode}, {"p", o.p}, {"syndrome", sigma.to_string()}};
  std::optional<std::vector<double>> oracle_probs;
  std::ostringstream extra;
  switch (mode) {
    case DecodeMode::ndml: {
      NdmlOptions opt;
      if (o.tie == "random") opt.tie = TieBreak::random;
      else if (o.tie != "canonical") throw std::invalid_argument("tie must be canonical or random");
      opt.seed = o.seed;
      r = ndml_decode(build_min_trellis_tof(lc.code), lc.code, sigma, ch, opt);
      if (o.oracle) {
        const auto b = oracle::brute_ndml(lc.code, sigma, ch);
        out["oracle"] = {{"error", b.error.to_string()}, {"log_prob", std::log(b.prob)}};
        extra << "oracle estimate " << b.error.to_string() << "  log_prob " << fmt_double(std::log(b.prob)) << "\n";
      }
      break;
    }
    case DecodeMode::dml: {
      r = dml_decode(build_multigoal_trellis(lc.code, Construction::extended_shannon), lc.code, sigma, ch);
      if (o.oracle) oracle_probs = oracle::brute_dml(lc.code, sigma, ch);
      break;
    }
    case DecodeMode::css: {
      if (!lc.css) throw std::invalid_argument("mode css needs a CSS code");
      const auto& css = *lc.css;
      const ChannelModel sc = css_sector_channel(o.p, parse_css_marginal(o.marginal));
      r = css_dml_decode(build_multigoal_trellis(css.x_sector(), Construction::extended_shannon),
                         build_multigoal_trellis(css.z_sector(), Construction::extended_shannon), css, sigma_x, sigma_z,
                         sc);
      out["sigma_x"] = sigma_x.to_string();
      out["sigma_z"] = sigma_z.to_string();
      if (o.oracle) {
        const auto px = oracle::brute_coset_probs(css.x_sector(), joint_representative(css.x_sector(), sigma_x), sc);
        const auto pz = oracle::brute_coset_probs(css.z_sector(), joint_representative(css.z_sector(), sigma_z), sc);
        std::vector<double> joint(std::size_t{1} << (2 * css.k()));
        for (std::size_t a = 0; a < px.size(); ++a)
          for (std::size_t b = 0; b < pz.size(); ++b) joint[css.join_label(a, b).bits()] = px[a] * pz[b];
        oracle_probs = joint;
      }
      break;
    }
  }
  out["estimate"] = r.error_estimate.to_string();
  out["log_prob"] = r.log_prob;
  out["winning_logical"] = r.winning_logical.to_string();
  if (!r.coset_log_probs.empty())
    out["cosets"] = coset_json(r.coset_log_probs, 2 * lc.code.k(), oracle_probs ? &*oracle_probs : nullptr);
  if (o.as_json) {
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "estimate " << r.error_estimate.to_string() << "\nlog_prob " << fmt_double(r.log_prob)
            << "\nwinning_logical " << r.winning_logical.to_string() << "\n"
            << extra.str();
  if (!r.coset_log_probs.empty()) {
    std::cout << std::left << std::setw(10) << "coset" << std::right << std::setw(22) << "log_prob";
    if (oracle_probs) std::cout << std::setw(22) << "oracle";
    std::cout << "\n";
    for (std::size_t l = 0; l < r.coset_log_probs.size(); ++l) {
      std::cout << std::left << std::setw(10) << label_string(l, 2 * lc.code.k()) << std::right << std::setw(22)
                << fmt_double(r.coset_log_probs[l]);
      if (oracle_probs) std::cout << std::setw(22) << fmt_double(std::log((*oracle_probs)[l]));
      std::cout << "\n";
    }
  }
  return 0;
}

struct SimOpts {
  std::string code, mode = "all", ps = "0.05:0.35:0.05", out, marginal = "independent";
  std::uint64_t trials = 10000, seed = 1;
  std::size_t threads = 0;
};

int cmd_simulate(const SimOpts& o) {
  const LoadedCode lc = resolve_code(o.code);
  SimConfig cfg;
  cfg.code_name = lc.name;
  if (o.mode == "all") {
    cfg.modes = {SimMode::ndml, SimMode::dml};
    if (lc.css) cfg.modes.push_back(SimMode::css);
  } else {
    cfg.modes = {parse_sim_mode(o.mode)};
  }
  cfg.ps = parse_p_list(o.ps);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.css_marginal = parse_css_marginal(o.marginal);
  const SimReport report = run_monte_carlo(lc, cfg);
  if (o.out.empty() || o.out == "-") {
    write_csv(std::cout, report);
  } else {
    std::ostringstream csv;
    write_csv(csv, report);
    write_file(o.out, csv.str());
  }
  std::cerr << "wall " << fmt_double(report.wall_seconds, 4) << " s\n";
  return 0;
}

void add_trellis_flags(CLI::App* sub, TrellisOpts& o, bool with_format) {
  sub->add_option("--code", o.code, "built-in code name or definition file")->required();
  sub->add_flag("--multigoal", o.multigoal, "one goal per coset of the stabilizer group");
  sub->add_option("--method", o.method, "extended_shannon|atomic_multigoal|bcjr_wolf|merge (multi-goal, default extended_shannon), tof|bcjr_wolf (default tof)");
  sub->add_option("--sector", o.sector, "full|x|z")->check(CLI::IsMember({"full", "x", "z"}));
  sub->add_option("--out", o.out, "output file, '-' for stdout");
  if (with_format) sub->add_option("--format", o.format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal trellises and trellis decoders for stabilizer codes"};
  app.require_subcommand(1, 1);

  TrellisOpts build_opts;
  auto* build = app.add_subcommand("build-trellis", "build a trellis and write it as JSON");
  add_trellis_flags(build, build_opts, false);

  TrellisOpts export_opts;
  export_opts.format = "dot";
  auto* exp = app.add_subcommand("export", "export a trellis as DOT or JSON");
  add_trellis_flags(exp, export_opts, true);

  std::vector<std::string> table_codes{"code422", "steane713", "shor913", "rm1513"};
  std::string table_method = "extended_shannon";
  bool table_json = false;
  auto* table = app.add_subcommand("complexity-table", "vertex/edge counts of T, T_X, T_Z");
  table->add_option("--codes", table_codes, "codes to tabulate")->delimiter(',')->expected(0, -1);
  table->add_option("--method", table_method, "multi-goal construction");
  table->add_flag("--json", table_json, "machine-readable output");

  DecodeOpts dec_opts;
  auto* decode = app.add_subcommand("decode", "decode one syndrome");
  decode->add_option("--code", dec_opts.code, "built-in code name or definition file")->required();
  decode->add_option("--mode", dec_opts.mode, "ndml|dml|css")->check(CLI::IsMember({"ndml", "dml", "css"}));
  decode->add_option("--syndrome", dec_opts.syndrome, "bits, or sigma_X/sigma_Z for CSS codes")->required();
  decode->add_option("--p", dec_opts.p, "depolarizing parameter")->required();
  decode->add_option("--marginal", dec_opts.marginal, "independent|exact (css mode)");
  decode->add_option("--tie", dec_opts.tie, "canonical|random (ndml mode)");
  decode->add_option("--seed", dec_opts.seed, "seed for random tie-breaking");
  decode->add_flag("--oracle", dec_opts.oracle, "also run the exhaustive decoder");
  decode->add_flag("--json", dec_opts.as_json, "machine-readable output");

  SimOpts sim_opts;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo logical error rates");
  sim->add_option("--code", sim_opts.code, "built-in code name or definition file")->required();
  sim->add_option("--mode", sim_opts.mode, "ndml|dml|css|oracle_dml|all");
  sim->add_option("--p", sim_opts.ps, "start:stop:step or comma list");
  sim->add_option("--trials", sim_opts.trials, "trials per p")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_opts.seed, "rng seed");
  sim->add_option("--threads", sim_opts.threads, "worker threads (default QTRELLIS_THREADS or all cores)");
  sim->add_option("--marginal", sim_opts.marginal, "independent|exact (css mode)");
  sim->add_option("--out", sim_opts.out, "CSV output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*build) return cmd_build(build_opts, true);
    if (*exp) return cmd_build(export_opts, false);
    if (*table) {
      std::vector<std::string> codes;
      for (const auto& c : table_codes)
        if (!c.empty()) codes.push_back(c);
      return cmd_complexity(codes, table_method, table_json);
    }
    if (*decode) return cmd_decode(dec_opts);
    if (*sim) return cmd_simulate(sim_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
