#include "weld/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weld/codec.hpp"
#include "weld/correspondence.hpp"
#include "weld/invariants.hpp"
#include "weld/moves.hpp"
#include "weld/search.hpp"

namespace weld::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Gauss, Ribbon };

std::string read_all(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Document {
  Format format;
  bool json;
  std::string text;
};

// Extension decides (.gauss, .ribbon, .json by its "kind"); --format wins;
// stdin defaults to Gauss text.
Document load(const std::string& path, const std::string& format_flag, std::istream& in) {
  Document doc{Format::Gauss, false, read_all(path, in)};
  if (ends_with(path, ".json")) {
    doc.json = true;
    const auto j = nlohmann::json::parse(doc.text);
    doc.format = j.value("kind", "") == "solid_ribbon" ? Format::Ribbon : Format::Gauss;
  } else if (ends_with(path, ".ribbon")) {
    doc.format = Format::Ribbon;
  }
  if (format_flag == "gauss") doc.format = Format::Gauss;
  else if (format_flag == "ribbon") doc.format = Format::Ribbon;
  else if (!format_flag.empty()) throw UsageError("unknown format '" + format_flag + "' (expected gauss or ribbon)");
  return doc;
}

GaussCode to_gauss(const Document& doc) {
  if (doc.format != Format::Gauss) throw UsageError("expected a Gauss code, got solid ribbon data");
  return doc.json ? gauss_code_from_json(nlohmann::json::parse(doc.text)) : parse_gauss_text(doc.text);
}

SolidRibbonData to_ribbon(const Document& doc) {
  if (doc.format != Format::Ribbon) throw UsageError("expected solid ribbon data, got a Gauss code");
  return doc.json ? solid_ribbon_from_json(nlohmann::json::parse(doc.text)) : parse_ribbon_text(doc.text);
}

std::size_t env_or(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(v, &end, 10);
  if (*end) throw UsageError(std::string(name) + " must be a non-negative integer");
  return static_cast<std::size_t>(parsed);
}

nlohmann::json report_json(const ValidationReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    nlohmann::json item{{"rule", to_string(v.rule)}, {"message", v.message}};
    item["crossing"] = v.crossing ? nlohmann::json(*v.crossing) : nlohmann::json(nullptr);
    violations.push_back(std::move(item));
  }
  return {{"ok", report.ok()}, {"violations", std::move(violations)}};
}

MoveInstance instance_from_json(const nlohmann::json& j) {
  MoveInstance inst;
  inst.pattern = j.at("pattern").get<std::size_t>();
  for (const auto& s : j.at("sites"))
    inst.sites.push_back({s.at("component").get<std::size_t>(), s.at("position").get<std::size_t>(),
                          s.value("order", std::size_t{0})});
  inst.crossings = j.at("crossings").get<std::vector<CrossingId>>();
  return inst;
}

std::string path_text(const std::vector<PathStep>& path) {
  if (path.empty()) return "(empty)";
  std::string out;
  for (const auto& step : path) out += (out.empty() ? "" : " ; ") + step.move.to_string();
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Welded link diagrams: Gauss codes, solid ribbon data, moves, invariants"};
  app.name("weld");
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::string format;
  app.add_flag("--json", json, "machine-readable output");
  app.add_option("--format", format, "input format override: gauss or ribbon");

  std::string input, input_b, output, kinds_text, group_path, instance_path;
  long apply_index = -1;
  std::optional<std::size_t> max_crossings, max_states;
  std::size_t census_crossings = 0, components = 1, workers = 1;

  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "input file, or - for stdin")->required(); };

  auto* validate = app.add_subcommand("validate", "check a Gauss code or solid ribbon file");
  add_input(validate);
  auto* conn = app.add_subcommand("conn", "solid ribbon data -> Gauss code");
  add_input(conn);
  auto* tube = app.add_subcommand("tube", "Gauss code -> solid ribbon data");
  add_input(tube);
  auto* canon = app.add_subcommand("canon", "canonical representative and key");
  add_input(canon);
  auto* moves = app.add_subcommand("moves", "list applicable moves, or apply one");
  add_input(moves);
  moves->add_option("--kinds", kinds_text, "comma-separated kinds (default: all)");
  moves->add_option("--apply", apply_index, "apply the listed move with this index");
  moves->add_option("--instance", instance_path, "apply a move instance from a JSON file");
  auto* equiv = app.add_subcommand("equiv", "bounded equivalence search");
  equiv->add_option("a", input, "first Gauss code")->required();
  equiv->add_option("b", input_b, "second Gauss code")->required();
  equiv->add_option("--max-crossings", max_crossings, "crossing cap during search (env WELD_MAX_CROSSINGS)");
  equiv->add_option("--max-states", max_states, "distinct keys to visit (env WELD_MAX_STATES)");
  auto* invariants = app.add_subcommand("invariants", "invariant fingerprint and presentation data");
  add_input(invariants);
  invariants->add_option("--group", group_path, "also count colorings by this finite group table");
  auto* census_cmd = app.add_subcommand("census", "classes of small codes");
  census_cmd->add_option("--max-crossings", census_crossings, "at most 4")->required();
  census_cmd->add_option("--components", components, "number of components")->required();
  census_cmd->add_option("--search-crossings", max_crossings, "crossing cap for merging searches");
  census_cmd->add_option("--max-states", max_states, "state cap for merging searches (env WELD_MAX_STATES)");
  census_cmd->add_option("--workers", workers, "threads for fingerprinting");
  auto* render = app.add_subcommand("render", "Gauss code -> SVG");
  add_input(render);
  render->add_option("-o,--output", output, "write the SVG here instead of stdout");
  auto* movetable = app.add_subcommand("movetable", "print the generated move table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) {
      const Document doc = load(input, format, in);
      ValidationReport report;
      try {
        if (doc.format == Format::Gauss) to_gauss(doc);
        else to_ribbon(doc);
      } catch (const ValidationError& e) {
        report = e.report();
      }
      if (json) {
        out << report_json(report).dump(2) << '\n';
      } else if (report.ok()) {
        out << "ok\n";
      } else {
        for (const auto& v : report.violations) out << v.message << " [" << to_string(v.rule) << "]\n";
      }
      return report.ok() ? kExitOk : kExitDomain;
    }
    if (conn->parsed()) {
      const GaussCode code = conn_map(to_ribbon(load(input, format.empty() ? "ribbon" : format, in)));
      out << (json ? to_json(code).dump(2) : emit_gauss_text(code)) << '\n';
      return kExitOk;
    }
    if (tube->parsed()) {
      const SolidRibbonData data = tube_map(to_gauss(load(input, format, in)));
      out << (json ? to_json(data).dump(2) : emit_ribbon_text(data)) << '\n';
      return kExitOk;
    }
    if (canon->parsed()) {
      const auto form = canonical_form(to_gauss(load(input, format, in)));
      if (json)
        out << nlohmann::json{{"representative", to_json(form.representative)}, {"key", form.key.to_string()}}.dump(2) << '\n';
      else
        out << "representative: " << emit_gauss_text(form.representative) << "\nkey: " << form.key.to_string() << '\n';
      return kExitOk;
    }
    if (moves->parsed()) {
      const GaussCode code = to_gauss(load(input, format, in));
      MoveKindSet kinds;
      if (kinds_text.empty()) {
        kinds = all_move_kinds();
      } else {
        std::stringstream ss(kinds_text);
        for (std::string name; std::getline(ss, name, ',');) {
          try {
            kinds.insert(move_kind_from_string(name));
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
        }
      }
      if (!instance_path.empty()) {
        const MoveInstance inst = instance_from_json(nlohmann::json::parse(read_all(instance_path, in)));
        const GaussCode result = apply_move(code, inst);
        out << (json ? to_json(result).dump(2) : emit_gauss_text(result)) << '\n';
        return kExitOk;
      }
      const auto list = applicable_moves(code, kinds);
      if (apply_index >= 0) {
        if (static_cast<std::size_t>(apply_index) >= list.size())
          throw StaleInstanceError("no move with index " + std::to_string(apply_index) + " (" +
                                   std::to_string(list.size()) + " applicable)");
        const GaussCode result = apply_move(code, list[static_cast<std::size_t>(apply_index)]);
        out << (json ? to_json(result).dump(2) : emit_gauss_text(result)) << '\n';
        return kExitOk;
      }
      if (json) {
        nlohmann::json items = nlohmann::json::array();
        for (std::size_t i = 0; i < list.size(); ++i) {
          auto item = to_json(list[i]);
          item["index"] = i;
          item["result"] = emit_gauss_text(apply_move(code, list[i]));
          items.push_back(std::move(item));
        }
        out << items.dump(2) << '\n';
      } else {
        for (std::size_t i = 0; i < list.size(); ++i)
          out << i << '\t' << list[i].to_string() << '\t' << emit_gauss_text(apply_move(code, list[i])) << '\n';
      }
      return kExitOk;
    }
    if (equiv->parsed()) {
      const GaussCode a = to_gauss(load(input, format, in));
      const GaussCode b = to_gauss(load(input_b, format, in));
      SearchBudget budget;
      budget.max_crossings = max_crossings.value_or(
          env_or("WELD_MAX_CROSSINGS", std::max(a.crossing_count(), b.crossing_count()) + 2));
      budget.max_states = max_states.value_or(env_or("WELD_MAX_STATES", budget.max_states));
      const auto verdict = equivalent_within(a, b, budget);
      if (json) {
        out << to_json(verdict).dump(2) << '\n';
      } else if (verdict.status == VerdictStatus::Equivalent) {
        out << "equivalent, path: " << path_text(verdict.path) << '\n';
      } else if (verdict.status == VerdictStatus::Distinct) {
        out << "distinct, witness: " << verdict.witness->name << ' ' << verdict.witness->lhs << " vs "
            << verdict.witness->rhs << '\n';
      } else {
        out << "unknown, budget exhausted after " << verdict.states << " states\n";
      }
      return kExitOk;
    }
    if (invariants->parsed()) {
      const GaussCode code = to_gauss(load(input, format, in));
      const auto print = fingerprint(code);
      const auto lm = linking_matrix(code);
      const auto w = wirtinger(code);
      std::optional<std::uint64_t> group_count;
      if (!group_path.empty()) group_count = group_colorings(code, parse_group_text(read_all(group_path, in)));
      if (json) {
        auto j = to_json(print);
        j["linking_matrix"] = lm.entries;
        j["wirtinger"] = {{"generators", w.generators}, {"relations", w.relations.size()}};
        if (group_count) j["group_colorings"] = *group_count;
        out << j.dump(2) << '\n';
      } else {
        out << "components: " << print.components << '\n' << "linking matrix (diagonal not invariant):\n";
        for (const auto& row : lm.entries) {
          out << ' ';
          for (auto v : row) out << ' ' << v;
          out << '\n';
        }
        out << "wirtinger: " << w.generators << " generators, " << w.relations.size() << " relations\n";
        for (std::size_t i = 0; i < kFingerprintPrimes.size(); ++i)
          out << "fox" << kFingerprintPrimes[i] << ": " << print.fox[i] << '\n';
        out << "alexander: " << print.alexander.to_string() << '\n';
        if (group_count) out << "group colorings: " << *group_count << '\n';
      }
      return kExitOk;
    }
    if (census_cmd->parsed()) {
      CensusOptions options;
      options.max_crossings = census_crossings;
      options.components = components;
      options.workers = workers;
      options.budget = default_census_budget(census_crossings);
      if (max_crossings) options.budget.max_crossings = *max_crossings;
      options.budget.max_states = max_states.value_or(env_or("WELD_MAX_STATES", options.budget.max_states));
      const auto report = census(options);
      out << (json ? to_json(report).dump(2) + "\n" : census_table(report));
      return kExitOk;
    }
    if (render->parsed()) {
      const std::string svg = emit_svg(realize_planar(to_gauss(load(input, format, in))));
      if (output.empty()) {
        out << svg;
      } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) throw UsageError("cannot write " + output);
        file << svg;
      }
      return kExitOk;
    }
    if (movetable->parsed()) {
      out << move_table_json(move_table()).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "weld: invalid input: " << e.report().summary() << '\n';
    return kExitDomain;
  } catch (const StaleInstanceError& e) {
    err << "weld: stale move instance: " << e.what() << '\n';
    return kExitDomain;
  } catch (const SyntaxError& e) {
    err << "weld: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "weld: bad JSON: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CensusCapError& e) {
    err << "weld: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "weld: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "weld: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace weld::cli
