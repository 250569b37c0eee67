#include "phplab/cli.hpp"

#include "phplab/bigint.hpp"
#include "phplab/condition.hpp"
#include "phplab/forcing.hpp"
#include "phplab/formula.hpp"
#include "phplab/matching.hpp"
#include "phplab/php_tree.hpp"
#include "phplab/tree_compiler.hpp"
#include "phplab/warray.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace phplab::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

int parse_int(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw UsageError("expected an integer for " + std::string(what) + ", got '" + t + "'");
  }
  return value;
}

template <typename T>
T parse_unsigned(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  T value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw UsageError("expected a nonnegative integer for " + std::string(what) + ", got '" + t +
                     "'");
  }
  return value;
}

bool parse_bool(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw UsageError("expected true or false for " + std::string(what) + ", got '" + t + "'");
}

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string item = trim(rest.substr(0, comma));
    if (!item.empty()) {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(parse_int(item, "list item"));
      } else {
        const int lo = parse_int(std::string_view(item).substr(0, dots), "range start");
        const int hi = parse_int(std::string_view(item).substr(dots + 2), "range end");
        if (hi < lo) throw UsageError("empty range " + item);
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::string format_int_list(const std::vector<int>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] == values[j] + 1) ++j;
    if (!out.empty()) out += ",";
    if (j - i >= 2) {
      out += std::to_string(values[i]) + ".." + std::to_string(values[j]);
    } else {
      for (std::size_t t = i; t <= j; ++t) {
        if (t > i) out += ",";
        out += std::to_string(values[t]);
      }
    }
    i = j + 1;
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (n.empty() || k.empty() || s.empty() || m.empty()) {
    throw UsageError("sweep ranges must be non-empty (n, k, s, m)");
  }
  if (k_cap < 1) throw UsageError("k_cap must be positive");
  if (budget_nodes == 0) throw UsageError("budget_nodes must be positive");
  if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
  for (int v : n) {
    if (v < 2) throw UsageError("every n must be at least 2");
  }
  for (int v : m) {
    if (v < 1) throw UsageError("every m must be positive");
  }
  for (const auto* list : {&k, &s}) {
    for (int v : *list) {
      if (v < 0) throw UsageError("k and s values must be nonnegative");
    }
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "n") c.n = parse_int_list(value);
    else if (key == "k") c.k = parse_int_list(value);
    else if (key == "s") c.s = parse_int_list(value);
    else if (key == "m") c.m = parse_int_list(value);
    else if (key == "k_cap") c.k_cap = parse_int(value, key);
    else if (key == "search") c.search = parse_bool(value, key);
    else if (key == "format") c.format = value;
    else if (key == "seed") c.seed = parse_unsigned<std::uint64_t>(value, key);
    else if (key == "budget_nodes") c.budget_nodes = parse_unsigned<std::size_t>(value, key);
    else throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  return c;
}

std::string write_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "n = " << format_int_list(c.n) << "\n"
      << "k = " << format_int_list(c.k) << "\n"
      << "s = " << format_int_list(c.s) << "\n"
      << "m = " << format_int_list(c.m) << "\n"
      << "k_cap = " << c.k_cap << "\n"
      << "search = " << (c.search ? "true" : "false") << "\n"
      << "format = " << c.format << "\n"
      << "seed = " << c.seed << "\n"
      << "budget_nodes = " << c.budget_nodes << "\n";
  return out.str();
}

namespace {

Json config_json(const ExperimentConfig& c) {
  return Json{{"n", format_int_list(c.n)},
              {"k", format_int_list(c.k)},
              {"s", format_int_list(c.s)},
              {"m", format_int_list(c.m)},
              {"k_cap", c.k_cap},
              {"search", c.search},
              {"format", c.format},
              {"seed", c.seed},
              {"budget_nodes", c.budget_nodes}};
}

struct SweepRow {
  int n, cap, s, k, m;
  std::string lower, upper, ratio, contradiction, search;
};

std::string search_outcome(int n, int cap, int s, int k, int m, std::size_t budget) {
  if (s > 0) return "skipped";
  try {
    const auto r = brute_force_search_array(Scale::make(n, cap), m, k, Condition(), budget);
    return r.found ? "found" : "none found";
  } catch (const BudgetError&) {
    return "budget exceeded";
  } catch (const Error&) {
    return "skipped";
  }
}

std::vector<SweepRow> sweep_rows(const ExperimentConfig& c) {
  std::vector<SweepRow> rows;
  for (int n : c.n) {
    const int cap = std::min(c.k_cap, n);
    for (int k : c.k) {
      for (int s : c.s) {
        for (int m : c.m) {
          SweepRow r{n, cap, s, k, m, "n/a", "n/a", "n/a", "n/a", ""};
          try {
            r.lower = to_string(lower_bound(n, s, k, m));
          } catch (const DomainError&) {
          }
          try {
            r.upper = to_string(upper_bound(n, s, k, m));
          } catch (const DomainError&) {
          }
          try {
            const auto cc = contradiction_check(n, s, k);
            r.ratio = to_string(cc.ratio);
            r.contradiction = cc.contradiction ? "true" : "false";
          } catch (const DomainError&) {
          }
          if (c.search) r.search = search_outcome(n, cap, s, k, m, c.budget_nodes);
          rows.push_back(std::move(r));
        }
      }
    }
  }
  return rows;
}

}  // namespace

std::string sweep(const ExperimentConfig& c) {
  c.validate();
  const auto rows = sweep_rows(c);
  std::ostringstream out;
  if (c.format == "json") {
    Json table = Json::array();
    for (const auto& r : rows) {
      Json row{{"n", r.n}, {"K", r.cap}, {"s", r.s}, {"k", r.k}, {"m", r.m},
               {"lower", r.lower}, {"upper", r.upper}, {"ratio", r.ratio},
               {"contradiction", r.contradiction}};
      if (c.search) row["search"] = r.search;
      table.push_back(std::move(row));
    }
    out << Json{{"config", config_json(c)}, {"rows", std::move(table)}}.dump(2) << "\n";
    return out.str();
  }
  std::istringstream cfg(write_config(c));
  for (std::string line; std::getline(cfg, line);) out << "# " << line << "\n";
  out << "n,K,s,k,m,lower,upper,ratio,contradiction" << (c.search ? ",search" : "") << "\n";
  for (const auto& r : rows) {
    out << r.n << "," << r.cap << "," << r.s << "," << r.k << "," << r.m << "," << r.lower << ","
        << r.upper << "," << r.ratio << "," << r.contradiction;
    if (c.search) out << "," << r.search;
    out << "\n";
  }
  return out.str();
}

namespace {

void render_text(const Json& j, std::ostream& out, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix + key;
    if (value.is_object()) {
      render_text(value, out, name + ".");
    } else if (value.is_string()) {
      out << name << ": " << value.get<std::string>() << "\n";
    } else if (value.is_array() && std::all_of(value.begin(), value.end(),
                                               [](const Json& v) { return v.is_primitive(); })) {
      out << name << ":";
      for (const auto& v : value) out << " " << (v.is_string() ? v.get<std::string>() : v.dump());
      out << "\n";
    } else {
      out << name << ": " << value.dump() << "\n";
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
}

Json tree_summary(const PhpTree& t) {
  Json leaves_json = Json::array();
  for (const auto& l : labeled_leaves(t)) {
    Json leaf{{"label", l.label.to_string()}, {"depth", l.depth}};
    leaf["mark"] = l.mark ? Json(*l.mark) : Json(nullptr);
    leaves_json.push_back(std::move(leaf));
  }
  const auto family = leaves(t);
  return Json{{"depth", depth(t)},
              {"leaf_count", leaf_count(t)},
              {"antichain", is_antichain(family.leaves)},
              {"covering", check_covering(family, t.scale())},
              {"leaves", std::move(leaves_json)},
              {"tree", Json::parse(to_json(t).dump())}};
}

// Option storage shared by every subcommand; each leaf reads what it needs.
struct Options {
  bool json = false;
  int n = 3;
  int k_cap = 0;  // 0 means "same as n"
  std::string sigma = "{}";
  std::string tau = "{}";
  std::string formula;
  std::string file;
  int depth = 0;
  bool trace = false;
  bool hard_horizon = false;
  int d = 0;
  int c = 0;
  int k = 1;
  int k_prime = -1;
  int m = 1;
  int s = 0;
  std::string eps = "1/2";
  bool pseudo = false;
  std::size_t budget = 0;
  std::string x = "x";
  std::string y = "y";
  std::string config_path;
  std::string sweep_n, sweep_k, sweep_s, sweep_m, sweep_format;
  int sweep_k_cap = 0;
  bool sweep_search = false;
  std::uint64_t sweep_seed = 0;
  std::size_t sweep_budget = 0;
};

Scale scale_of(const Options& o) { return Scale::make(o.n, o.k_cap > 0 ? o.k_cap : o.n); }

std::size_t budget_of(const Options& o) { return o.budget > 0 ? o.budget : budget_from_env(); }

struct Outcome {
  Json report;
  int code = 0;
};

Outcome run_force_check(const Options& o) {
  const Scale s = scale_of(o);
  const Formula phi = parse_formula(o.formula);
  ForcingContext ctx(s, {o.hard_horizon ? ExtensionRange::HardHorizon : ExtensionRange::Full});
  const auto all = enumerate_conditions(s);
  std::vector<char> forced(all.size());
  Json forcing = Json::array();
  for (std::size_t i = 0; i < all.size(); ++i) {
    forced[i] = ctx.forces(all[i], phi);
    if (forced[i]) forcing.push_back(all[i].to_string());
  }
  Json violations = Json::array();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!forced[i]) continue;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (!forced[j] && extends(all[j], all[i])) {
        violations.push_back({{"property", "monotonicity"},
                              {"sigma", all[i].to_string()},
                              {"tau", all[j].to_string()}});
      }
    }
  }
  const FormulaShape shape = classify(phi);
  if (shape == FormulaShape::Atomic || shape == FormulaShape::SharplyBounded) {
    const Formula neg = Formula::negation(phi);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (forced[i] && ctx.forces(all[i], neg)) {
        violations.push_back({{"property", "consistency"}, {"sigma", all[i].to_string()}});
      }
    }
  }
  Json r{{"shape", to_string(shape)},
         {"conditions", all.size()},
         {"forcing_count", forcing.size()},
         {"forcing", std::move(forcing)},
         {"violations", violations}};
  return {std::move(r), violations.empty() ? 0 : 1};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite laboratory for forcing, PHP-trees and WPHP arrays", "lab"};
  app.require_subcommand(1);

  auto common_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Emit JSON"); };
  auto scale_opts = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Number of holes")->required();
    sub->add_option("--k-cap", o.k_cap, "Condition size cap K (default n)");
  };

  auto* tree = app.add_subcommand("tree", "PHP-tree constructions");
  tree->require_subcommand(1);
  auto* tree_chain = tree->add_subcommand("chain", "Uniform tree querying free pigeons in order");
  scale_opts(tree_chain);
  tree_chain->add_option("--sigma", o.sigma, "Base condition");
  tree_chain->add_option("--depth", o.depth, "Depth")->required();
  common_json(tree_chain);
  auto* tree_decide = tree->add_subcommand("decide", "Tree deciding every pair of tau");
  scale_opts(tree_decide);
  tree_decide->add_option("--sigma", o.sigma, "Base condition");
  tree_decide->add_option("--tau", o.tau, "Condition to decide")->required();
  tree_decide->add_option("--depth", o.depth, "Extend to this uniform depth (0 = no)");
  common_json(tree_decide);
  auto* tree_check = tree->add_subcommand("check", "Check antichain and covering of a tree file");
  tree_check->add_option("--file", o.file, "Tree JSON")->required();
  tree_check->add_option("--k-cap", o.k_cap, "Override K");
  common_json(tree_check);

  auto* force = app.add_subcommand("force", "Forcing relation");
  force->require_subcommand(1);
  auto* force_eval = force->add_subcommand("eval", "Decide sigma forces phi");
  scale_opts(force_eval);
  force_eval->add_option("--sigma", o.sigma, "Condition");
  force_eval->add_option("--formula", o.formula, "Closed formula")->required();
  force_eval->add_flag("--trace", o.trace, "Include the clause trace");
  force_eval->add_flag("--hard-horizon", o.hard_horizon, "Quantify over extensions of size <= K");
  common_json(force_eval);
  auto* force_check = force->add_subcommand("check", "Monotonicity and consistency over P(n,K)");
  scale_opts(force_check);
  force_check->add_option("--formula", o.formula, "Closed formula")->required();
  force_check->add_flag("--hard-horizon", o.hard_horizon, "Quantify over extensions of size <= K");
  common_json(force_check);

  auto* compile_cmd = app.add_subcommand("compile", "Compile a formula into a marked tree");
  scale_opts(compile_cmd);
  compile_cmd->add_option("--sigma", o.sigma, "Base condition");
  compile_cmd->add_option("--formula", o.formula, "Closed formula")->required();
  common_json(compile_cmd);

  auto* family = app.add_subcommand("family", "Matching families of K_{d,c}");
  family->require_subcommand(1);
  auto family_opts = [&](CLI::App* sub, bool needs_c) {
    sub->add_option("--d", o.d, "Left part size")->required();
    auto* c = sub->add_option("--c", o.c, "Right part size");
    if (needs_c) c->required();
    sub->add_option("--k", o.k, "Matching size")->required();
    common_json(sub);
  };
  auto* family_bound_cmd = family->add_subcommand("bound", "d!/(d-k)! and the extension identity");
  family_opts(family_bound_cmd, false);
  auto* family_count = family->add_subcommand("count", "Count k-matchings and extensions");
  family_opts(family_count, true);
  auto* family_search = family->add_subcommand("search", "Maximum incompatible family");
  family_opts(family_search, true);
  family_search->add_option("--budget", o.budget, "Node budget");

  auto* array = app.add_subcommand("array", "WPHP arrays");
  array->require_subcommand(1);
  auto* array_verify = array->add_subcommand("verify", "Check the four properties");
  array_verify->add_option("--file", o.file, "Array JSON")->required();
  common_json(array_verify);
  auto* array_size_cmd = array->add_subcommand("size", "Size and its row/column decompositions");
  array_size_cmd->add_option("--file", o.file, "Array JSON")->required();
  common_json(array_size_cmd);
  auto* array_uniformize = array->add_subcommand("uniformize", "Uniformize rows");
  array_uniformize->add_option("--file", o.file, "Array JSON")->required();
  array_uniformize->add_flag("--pseudo", o.pseudo, "Only require row-local properties");
  common_json(array_uniformize);
  auto* array_search = array->add_subcommand("search", "Exhaustive search for an array");
  scale_opts(array_search);
  array_search->add_option("--m", o.m, "Columns (rows are 2m)");
  array_search->add_option("--k", o.k, "Entry size bound");
  array_search->add_option("--sigma", o.sigma, "Base condition");
  array_search->add_option("--budget", o.budget, "Node budget");
  common_json(array_search);
  auto* array_bounds = array->add_subcommand("bounds", "Lower and upper size bounds");
  array_bounds->add_option("--n", o.n, "Number of holes")->required();
  array_bounds->add_option("--s", o.s, "Base size");
  array_bounds->add_option("--k", o.k, "Entry size")->required();
  array_bounds->add_option("--k-prime", o.k_prime, "Uniform size for the lower bound (default k)");
  array_bounds->add_option("--m", o.m, "Columns");
  common_json(array_bounds);
  auto* array_contra = array->add_subcommand("contradiction", "Compare (n+1-s)/(n+1-s-k) with 2");
  array_contra->add_option("--n", o.n, "Number of holes")->required();
  array_contra->add_option("--s", o.s, "Base size");
  array_contra->add_option("--k", o.k, "Entry size")->required();
  common_json(array_contra);
  auto* array_ajtai = array->add_subcommand("ajtai", "Compare (r+1)/r, r = floor(n^(1-eps))");
  array_ajtai->add_option("--n", o.n, "Number of holes")->required();
  array_ajtai->add_option("--s", o.s, "Base size");
  array_ajtai->add_option("--k", o.k, "Entry size")->required();
  array_ajtai->add_option("--eps", o.eps, "Exponent as p/q");
  common_json(array_ajtai);
  auto* array_formula = array->add_subcommand("from-formula", "Array of accepting leaves");
  scale_opts(array_formula);
  array_formula->add_option("--formula", o.formula, "Formula with free x (row) and y (column)")
      ->required();
  array_formula->add_option("--m", o.m, "Columns");
  array_formula->add_option("--sigma", o.sigma, "Base condition");
  array_formula->add_option("--x", o.x, "Row variable");
  array_formula->add_option("--y", o.y, "Column variable");
  common_json(array_formula);

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep of bounds and searches");
  sweep_cmd->add_option("--config", o.config_path, "Config file (key = value)");
  sweep_cmd->add_option("--n", o.sweep_n, "List of n, e.g. 8..12");
  sweep_cmd->add_option("--k", o.sweep_k, "List of k");
  sweep_cmd->add_option("--s", o.sweep_s, "List of base sizes");
  sweep_cmd->add_option("--m", o.sweep_m, "List of m");
  sweep_cmd->add_option("--k-cap", o.sweep_k_cap, "Condition size cap for searches");
  sweep_cmd->add_flag("--search", o.sweep_search, "Run exhaustive searches");
  sweep_cmd->add_option("--format", o.sweep_format, "csv or json");
  sweep_cmd->add_option("--seed", o.sweep_seed, "Seed recorded in the report");
  sweep_cmd->add_option("--budget-nodes", o.sweep_budget, "Search node budget");
  common_json(sweep_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  std::string command;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    command += (command.empty() ? "" : " ") + sub->get_name();
  }

  try {
    if (sweep_cmd->parsed()) {
      ExperimentConfig cfg;
      if (!o.config_path.empty()) cfg = parse_config(read_file(o.config_path));
      else cfg.budget_nodes = budget_from_env(cfg.budget_nodes);
      if (!o.sweep_n.empty()) cfg.n = parse_int_list(o.sweep_n);
      if (!o.sweep_k.empty()) cfg.k = parse_int_list(o.sweep_k);
      if (!o.sweep_s.empty()) cfg.s = parse_int_list(o.sweep_s);
      if (!o.sweep_m.empty()) cfg.m = parse_int_list(o.sweep_m);
      if (o.sweep_k_cap > 0) cfg.k_cap = o.sweep_k_cap;
      if (o.sweep_search) cfg.search = true;
      if (!o.sweep_format.empty()) cfg.format = o.sweep_format;
      if (o.json) cfg.format = "json";
      if (o.sweep_seed > 0) cfg.seed = o.sweep_seed;
      if (o.sweep_budget > 0) cfg.budget_nodes = o.sweep_budget;
      out << sweep(cfg);
      return 0;
    }

    Json config{{"command", command}};
    Outcome result;
    auto with_scale = [&] {
      config["n"] = o.n;
      config["k_cap"] = o.k_cap > 0 ? o.k_cap : o.n;
    };

    if (tree_chain->parsed() || tree_decide->parsed()) {
      with_scale();
      config["sigma"] = o.sigma;
      config["depth"] = o.depth;
      const Scale s = scale_of(o);
      const Condition sigma = Condition::parse(o.sigma);
      std::optional<PhpTree> t;
      if (tree_chain->parsed()) {
        t = pigeon_chain(sigma, o.depth, s);
      } else {
        config["tau"] = o.tau;
        t = decide_condition_tree(sigma, Condition::parse(o.tau), s);
        if (o.depth > 0) t = extend_uniform(*t, o.depth);
      }
      result.report = tree_summary(*t);
      if (tree_chain->parsed()) {
        result.report["min_leaf_count"] =
            to_string(min_leaf_count(s.n, static_cast<int>(sigma.size()), o.depth));
      }
    } else if (tree_check->parsed()) {
      config["file"] = o.file;
      const auto j = parse_json_file(o.file);
      // Reports from `tree chain` and `tree decide` carry the tree under "tree".
      PhpTree t = tree_from_json(nlohmann::json::parse((j.contains("tree") ? j.at("tree") : j).dump()));
      if (o.k_cap > 0) t = PhpTree(Scale::make(t.scale().n, o.k_cap), t.base(), t.root());
      config["k_cap"] = t.scale().k_cap;
      result.report = tree_summary(t);
      const bool ok = result.report["antichain"].get<bool>() &&
                      result.report["covering"].get<bool>();
      result.code = ok ? 0 : 1;
    } else if (force_eval->parsed()) {
      with_scale();
      config["sigma"] = o.sigma;
      config["formula"] = o.formula;
      config["horizon"] = o.hard_horizon ? "hard" : "full";
      ForcingOptions fo;
      fo.range = o.hard_horizon ? ExtensionRange::HardHorizon : ExtensionRange::Full;
      fo.trace = o.trace;
      ForcingContext ctx(scale_of(o), fo);
      const bool verdict = ctx.forces(Condition::parse(o.sigma), parse_formula(o.formula));
      result.report["result"] = verdict;
      if (o.trace) {
        Json trace = Json::array();
        for (const auto& e : ctx.trace()) {
          trace.push_back({{"condition", e.condition.to_string()},
                           {"subformula", e.subformula},
                           {"clause", e.clause},
                           {"verdict", e.verdict}});
        }
        result.report["clause_trace"] = std::move(trace);
        result.report["trace_truncated"] = ctx.trace_truncated();
      }
    } else if (force_check->parsed()) {
      with_scale();
      config["formula"] = o.formula;
      config["horizon"] = o.hard_horizon ? "hard" : "full";
      result = run_force_check(o);
    } else if (compile_cmd->parsed()) {
      with_scale();
      config["sigma"] = o.sigma;
      config["formula"] = o.formula;
      const Formula phi = parse_formula(o.formula);
      const PhpTree t = compile(phi, Condition::parse(o.sigma), scale_of(o));
      result.report = tree_summary(t);
      Json accepting = Json::array();
      for (const auto& l : accepting_leaves(t).leaves) accepting.push_back(l.to_string());
      result.report["shape"] = to_string(classify(phi));
      result.report["accepting"] = std::move(accepting);
    } else if (family->parsed()) {
      config["d"] = o.d;
      config["c"] = o.c;
      config["k"] = o.k;
      if (family_bound_cmd->parsed()) {
        result.report["value"] = to_string(family_bound(o.d, o.k));
        if (o.c > 0) {
          result.report["via_extensions"] = to_string(family_bound_via_extensions(o.d, o.c, o.k));
        }
      } else if (family_count->parsed()) {
        result.report["k_matchings"] = to_string(count_k_matchings(o.d, o.c, o.k));
        if (o.k <= o.c && o.c <= o.d) {
          result.report["extensions"] = to_string(count_extensions(o.d, o.c, o.k));
        }
      } else {
        const std::size_t budget = budget_of(o);
        config["budget"] = budget;
        const auto r = brute_force_max_family(o.d, o.c, o.k, budget);
        Json witness = Json::array();
        for (const auto& w : r.witness.members) witness.push_back(w.to_string());
        result.report["max"] = r.size;
        if (o.k <= o.d) result.report["bound"] = to_string(family_bound(o.d, o.k));
        result.report["nodes"] = r.nodes;
        result.report["witness"] = std::move(witness);
      }
    } else if (array_verify->parsed() || array_size_cmd->parsed() ||
               array_uniformize->parsed()) {
      config["file"] = o.file;
      const auto j = parse_json_file(o.file);
      const WArray A =
          warray_from_json(nlohmann::json::parse((j.contains("array") ? j.at("array") : j).dump()));
      if (array_verify->parsed()) {
        const auto report = verify_properties(A);
        result.report = Json::parse(to_json(report).dump());
        result.code = report.all_ok() ? 0 : 1;
      } else if (array_size_cmd->parsed()) {
        const auto size = array_size(A);
        result.report = Json{{"N", size.total},
                             {"row_sum", size.row_sum},
                             {"column_sum", size.column_sum}};
      } else {
        config["mode"] = o.pseudo ? "pseudo" : "strict";
        try {
          const WArray U = uniformize(A, o.pseudo ? UniformizeMode::Pseudo : UniformizeMode::Strict);
          const auto size = array_size(U);
          result.report["array"] = Json::parse(to_json(U).dump());
          result.report["N"] = size.total;
          result.report["lower_bound"] = to_string(
              lower_bound(A.scale.n, static_cast<int>(A.sigma.size()), U.k, A.m));
        } catch (const ArrayPreconditionError& e) {
          result.report["error"] = e.what();
          result.report["properties"] = Json::parse(to_json(e.report()).dump());
          result.code = 1;
        }
      }
    } else if (array_search->parsed()) {
      with_scale();
      config["m"] = o.m;
      config["k"] = o.k;
      config["sigma"] = o.sigma;
      const std::size_t budget = budget_of(o);
      config["budget"] = budget;
      try {
        const auto r =
            brute_force_search_array(scale_of(o), o.m, o.k, Condition::parse(o.sigma), budget);
        result.report["found"] = r.found.has_value();
        result.report["nodes"] = r.nodes;
        result.report["candidates"] = r.candidates;
        if (r.found) result.report["array"] = Json::parse(to_json(*r.found).dump());
      } catch (const BudgetError& e) {
        result.report["found"] = nullptr;
        result.report["budget_exceeded"] = true;
        result.report["error"] = e.what();
        result.code = 1;
      }
    } else if (array_bounds->parsed()) {
      const int kp = o.k_prime >= 0 ? o.k_prime : o.k;
      config["n"] = o.n;
      config["s"] = o.s;
      config["k"] = o.k;
      config["k_prime"] = kp;
      config["m"] = o.m;
      const BigInt lower = lower_bound(o.n, o.s, kp, o.m);
      const BigInt upper = upper_bound(o.n, o.s, o.k, o.m);
      result.report["lower"] = to_string(lower);
      result.report["upper"] = to_string(upper);
      result.report["lower_exceeds_upper"] = lower > upper;
    } else if (array_contra->parsed()) {
      config["n"] = o.n;
      config["s"] = o.s;
      config["k"] = o.k;
      const auto r = contradiction_check(o.n, o.s, o.k);
      result.report["contradiction"] = r.contradiction;
      result.report["ratio"] = to_string(r.ratio);
    } else if (array_ajtai->parsed()) {
      config["n"] = o.n;
      config["s"] = o.s;
      config["k"] = o.k;
      config["eps"] = o.eps;
      const auto r = ajtai_check(o.n, o.s, o.k, parse_rational(o.eps));
      result.report["contradiction"] = r.contradiction;
      result.report["root"] = to_string(r.root);
      result.report["lhs"] = to_string(r.lhs);
      result.report["rhs"] = to_string(r.rhs);
    } else if (array_formula->parsed()) {
      with_scale();
      config["formula"] = o.formula;
      config["m"] = o.m;
      config["sigma"] = o.sigma;
      const WArray A = build_array_from_formula(parse_formula(o.formula, {o.x, o.y}), o.m,
                                                Condition::parse(o.sigma), scale_of(o), o.x, o.y);
      result.report["array"] = Json::parse(to_json(A).dump());
      result.report["properties"] = Json::parse(to_json(verify_properties(A)).dump());
    }

    Json report{{"config", std::move(config)}};
    for (auto& [key, value] : result.report.items()) report[key] = value;
    if (o.json) {
      out << report.dump(2) << "\n";
    } else {
      render_text(report, out);
    }
    return result.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace phplab::cli
