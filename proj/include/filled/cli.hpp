#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "filled/build.hpp"
#include "filled/classifier.hpp"
#include "filled/errors.hpp"
#include "filled/search.hpp"
#include "filled/spec.hpp"
#include "filled/witnesses.hpp"

namespace filled::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kLedgerEnv = "FILLED_GROUPS_LEDGER";

enum ExitCode : int { kDecided = 0, kInternalError = 1, kUndecided = 2, kInputError = 3 };

// Malformed command-line input that is not a group spec.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::uint64_t seed = 1;
  std::size_t max_restarts = SearchConfig{}.max_restarts;
  double time_budget = SearchConfig{}.time_budget;
  bool no_2kp_shortcut = false;
  bool no_orbit_reduction = false;
  unsigned parallel = 1;
  bool exhaustive_opt_in = false;
  std::string ledger;
  bool pretty = false;
  bool no_table = false;
  bool pure_search = false;
  bool attach_witness = false;
  std::string involution_seed = "auto";

  SearchConfig search_config() const {
    SearchConfig cfg;
    cfg.rng_seed = seed;
    cfg.max_restarts = max_restarts;
    cfg.time_budget = time_budget;
    cfg.parallel_width = parallel;
    cfg.orbit_reduction = !no_orbit_reduction;
    cfg.exhaustive_opt_in = exhaustive_opt_in;
    cfg.involution_seed = involution_seed == "on"    ? InvolutionSeed::On
                          : involution_seed == "off" ? InvolutionSeed::Off
                                                     : InvolutionSeed::Auto;
    return cfg;
  }

  ClassifierFlags classifier_flags() const {
    ClassifierFlags f;
    f.use_2kp_shortcut = !no_2kp_shortcut;
    f.exhaustive_opt_in = exhaustive_opt_in;
    f.use_table = !no_table;
    f.pure_search = pure_search;
    f.attach_witness = attach_witness;
    f.search = search_config();
    return f;
  }
};

namespace detail {

inline std::string error_kind(const std::exception& e) {
#define FILLED_KIND(T) \
  if (dynamic_cast<const T*>(&e)) return #T
  FILLED_KIND(ParseError);
  FILLED_KIND(SpecDomainError);
  FILLED_KIND(OrderCapExceeded);
  FILLED_KIND(DomainError);
  FILLED_KIND(FrameTooSmall);
  FILLED_KIND(NotCentralProductC4);
  FILLED_KIND(OrderOutOfRange);
  FILLED_KIND(PreconditionViolated);
  FILLED_KIND(ExhaustiveCapExceeded);
  FILLED_KIND(InputError);
  FILLED_KIND(InternalCheckFailed);
#undef FILLED_KIND
  return "Error";
}

inline bool is_input_error(const std::exception& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const SpecDomainError*>(&e) ||
         dynamic_cast<const OrderCapExceeded*>(&e) || dynamic_cast<const DomainError*>(&e) ||
         dynamic_cast<const FrameTooSmall*>(&e) || dynamic_cast<const NotCentralProductC4*>(&e) ||
         dynamic_cast<const OrderOutOfRange*>(&e) || dynamic_cast<const PreconditionViolated*>(&e) ||
         dynamic_cast<const InputError*>(&e);
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline Json labels_json(const ElemSet& s) { return Json(s.labels()); }

inline Json checks_json(const WitnessReport& r) {
  Json j;
  j["product_free"] = r.product_free;
  j["locally_maximal"] = r.locally_maximal ? Json(*r.locally_maximal) : Json(nullptr);
  j["fills"] = r.fills ? Json(*r.fills) : Json(nullptr);
  return j;
}

inline Json stats_json(const SearchStats& s) {
  Json j;
  j["restarts"] = s.restarts;
  j["orbits_examined"] = s.orbits_examined;
  j["sets_extended"] = s.sets_extended;
  j["lmpfs_examined"] = s.lmpfs_examined;
  j["inverse_property_violations"] = s.inverse_property_violations;
  return j;
}

inline Json filled_json(Outcome o) {
  if (o == Outcome::Undecided) return "undecided";
  return o == Outcome::Filled;
}

inline Json verdict_json(const std::string& command, const FiniteGroup& g, const Verdict& v,
                         const Options& opts, double elapsed_ms) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["group_spec"] = g.spec_string();
  j["order"] = g.order();
  j["filled"] = filled_json(v.outcome);
  j["outcome"] = outcome_name(v.outcome);
  j["rule_chain"] = v.rule_chain;
  if (v.witness) {
    j["witness"] = labels_json(*v.witness);
    j["witness_checks"] = checks_json(verify_witness(g, *v.witness));
  } else {
    j["witness"] = nullptr;
  }
  if (v.quotient) j["quotient_order"] = v.quotient->order();
  j["stats"] = stats_json(v.stats);
  j["seed"] = opts.seed;
  j["elapsed_ms"] = elapsed_ms;
  j["tool_version"] = kToolVersion;
  return j;
}

inline Json witness_json(const std::string& command, const Witness& w, double elapsed_ms) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["group_spec"] = w.group->spec_string();
  j["order"] = w.group->order();
  j["family"] = w.family;
  j["set"] = labels_json(w.set);
  j["checks"] = checks_json(w.report);
  j["excluded_element"] = w.excluded ? Json(w.group->label(*w.excluded)) : Json(nullptr);
  j["seed"] = w.seed ? Json(*w.seed) : Json(nullptr);
  j["elapsed_ms"] = elapsed_ms;
  j["tool_version"] = kToolVersion;
  return j;
}

// A set literal: a JSON array of element labels or element indices.
inline ElemSet parse_set_literal(const FiniteGroup& g, const std::string& text) {
  Json arr;
  try {
    arr = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed set JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!arr.is_array()) throw InputError("set must be a JSON array");
  ElemSet s(g);
  for (const auto& item : arr) {
    if (item.is_string()) {
      const auto e = g.find_label(item.get<std::string>());
      if (!e) throw InputError("unknown element label: " + item.get<std::string>());
      s.insert(*e);
    } else if (item.is_number_unsigned()) {
      const auto idx = item.get<std::uint64_t>();
      if (idx >= g.order()) throw InputError("element index out of range: " + std::to_string(idx));
      s.insert(static_cast<Elem>(idx));
    } else {
      throw InputError("set entries must be labels or non-negative indices");
    }
  }
  return s;
}

inline void append_ledger(const std::string& path, const Json& result, const std::vector<std::string>& args) {
  Json rec;
  rec["spec_string"] = result.value("group_spec", "");
  rec["order"] = result.value("order", Json(nullptr));
  rec["filled"] = result.contains("filled") ? result["filled"] : Json(false);
  rec["rule_chain"] = result.contains("rule_chain") ? result["rule_chain"] : Json::array({"witness-" + result.value("family", std::string())});
  rec["witness"] = result.contains("witness") ? result["witness"] : result.value("set", Json(nullptr));
  rec["seed"] = result.value("seed", Json(nullptr));
  rec["elapsed_ms"] = result.value("elapsed_ms", 0.0);
  rec["tool_version"] = kToolVersion;
  rec["timestamp"] = utc_timestamp();
  rec["command"] = result.value("command", "");
  rec["args"] = args;
  std::ofstream f(path, std::ios::app);
  if (!f) throw InputError("cannot open ledger file: " + path);
  // One write per record.
  f << (rec.dump() + "\n") << std::flush;
}

}  // namespace detail

// Runs one command; JSON goes to out, diagnostics to err.
inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether finite groups are filled", "filled"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--seed", opts.seed, "RNG seed");
  app.add_option("--max-restarts", opts.max_restarts, "random search restarts")->check(CLI::PositiveNumber);
  app.add_option("--time-budget", opts.time_budget, "random search wall-clock budget in seconds")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-2kp-shortcut", opts.no_2kp_shortcut, "disable the order 2^k p rule");
  app.add_flag("--no-orbit-reduction", opts.no_orbit_reduction, "search every product-free triple");
  app.add_option("--parallel", opts.parallel, "exhaustive search workers")->check(CLI::PositiveNumber);
  app.add_flag("--exhaustive-opt-in", opts.exhaustive_opt_in, "allow exhaustive search at order >= 64");
  app.add_option("--ledger", opts.ledger, "append a JSON Lines record to this file");
  app.add_flag("--pretty", opts.pretty, "indented JSON");
  app.add_flag("--no-table", opts.no_table, "do not use the table of filled groups of order <= 32");
  app.add_flag("--pure-search", opts.pure_search, "decide by search alone");
  app.add_flag("--witness", opts.attach_witness, "search for a witness after a rule-based negative verdict");
  app.add_option("--involution-seed", opts.involution_seed, "auto, on or off")
      ->check(CLI::IsMember({"auto", "on", "off"}));

  std::string spec_text, set_text;
  std::uint64_t n = 0, order = 0;
  auto* classify = app.add_subcommand("classify", "decide filledness by rules then search");
  classify->add_option("spec", spec_text, "group spec")->required();
  auto* find_nfs = app.add_subcommand("find-nfs", "random search for a non-filling set");
  find_nfs->add_option("spec", spec_text, "group spec")->required();
  auto* exhaustive = app.add_subcommand("exhaustive", "exhaustive search");
  exhaustive->add_option("spec", spec_text, "group spec")->required();
  auto* witness = app.add_subcommand("witness", "explicit non-filling sets");
  witness->require_subcommand(1);
  auto* w_dihedral = witness->add_subcommand("dihedral", "witness in D(2n), n odd >= 13");
  w_dihedral->add_option("n", n, "odd n >= 13")->required();
  auto* w_d44 = witness->add_subcommand("d44", "witness in D(44)");
  auto* w_extra = witness->add_subcommand("extraspecial", "witness in an extraspecial group of order > 128");
  w_extra->add_option("spec", spec_text, "ESP(2^m) or ESM(2^m)")->required();
  auto* w_esc4 = witness->add_subcommand("esc4", "random witness in E*C4");
  w_esc4->add_option("spec", spec_text, "ESC4(2^m)")->required();
  auto* verify = app.add_subcommand("verify", "check a set");
  verify->add_option("spec", spec_text, "group spec")->required();
  verify->add_option("--set", set_text, "JSON array of labels or indices")->required();
  auto* table = app.add_subcommand("table", "known filled groups of a given order <= 32");
  table->add_option("order", order, "group order")->required();
  for (auto* sub : {classify, find_nfs, exhaustive, witness, w_dihedral, w_d44, w_extra, w_esc4, verify, table})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kDecided : kInputError;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  if (opts.ledger.empty())
    if (const char* env = std::getenv(kLedgerEnv)) opts.ledger = env;

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  auto emit = [&](const Json& j, bool record) {
    out << (opts.pretty ? j.dump(2) : j.dump()) << "\n";
    if (record && !opts.ledger.empty()) detail::append_ledger(opts.ledger, j, args);
  };

  try {
    if (classify->parsed() || find_nfs->parsed() || exhaustive->parsed()) {
      const auto g = build_group(spec_text).group;
      Verdict v;
      std::string command;
      if (classify->parsed()) {
        command = "classify";
        v = classify_filled(g, opts.classifier_flags());
      } else if (find_nfs->parsed()) {
        command = "find-nfs";
        if (auto w = random_nonfilling_lmpfs(*g, opts.search_config(), &v.stats)) {
          v.outcome = Outcome::NotFilled;
          v.witness = std::move(w);
          v.rule_chain.push_back("nfs");
        } else {
          v.rule_chain.push_back("undecided-at-budget");
        }
      } else {
        command = "exhaustive";
        try {
          v = exhaustive_filled_check(*g, opts.search_config());
        } catch (const ExhaustiveCapExceeded& e) {
          err << "filled: " << e.what() << "\n";
          v.rule_chain.push_back("undecided-at-budget");
        }
      }
      emit(detail::verdict_json(command, *g, v, opts, elapsed()), true);
      return v.decided() ? kDecided : kUndecided;
    }
    if (witness->parsed()) {
      std::optional<Witness> w;
      std::string command = "witness ";
      if (w_dihedral->parsed()) {
        command += "dihedral";
        w = dihedral_witness(n);
      } else if (w_d44->parsed()) {
        command += "d44";
        w = d44_witness();
      } else if (w_extra->parsed()) {
        command += "extraspecial";
        const auto built = build_group(spec_text);
        if (!built.extraspecial) throw InputError("not an extraspecial spec: " + spec_text);
        w = extraspecial_witness(*built.extraspecial);
      } else {
        command += "esc4";
        w = central_c4_witness(build_group(spec_text), opts.seed);
      }
      emit(detail::witness_json(command, *w, elapsed()), true);
      return kDecided;
    }
    if (verify->parsed()) {
      const auto g = build_group(spec_text).group;
      const auto s = detail::parse_set_literal(*g, set_text);
      const auto report = verify_witness(*g, s);
      Json j;
      j["schema"] = kSchemaVersion;
      j["command"] = "verify";
      j["group_spec"] = g->spec_string();
      j["order"] = g->order();
      j["set"] = detail::labels_json(s);
      j["checks"] = detail::checks_json(report);
      j["non_filling_lmpfs"] = report.non_filling_lmpfs();
      emit(j, false);
      return kDecided;
    }
    // table
    Json members = Json::array();
    for (const auto& m : known_filled_members(order)) members.push_back(m.to_string());
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "table";
    j["order"] = order;
    j["members"] = members;
    emit(j, false);
    return kDecided;
  } catch (const std::exception& e) {
    const bool input = detail::is_input_error(e);
    Json j;
    j["schema"] = kSchemaVersion;
    j["error"] = {{"kind", detail::error_kind(e)}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) j["error"]["offset"] = pe->offset();
    out << j.dump() << "\n";
    err << "filled: " << e.what() << "\n";
    return input ? kInputError : kInternalError;
  }
}

}  // namespace filled::cli
