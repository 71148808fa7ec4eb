// Command-line front end. Talks to the library exclusively through the C API
// in turanfas.h; everything structured goes over JSON strings.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "turanfas.h"

using nlohmann::json;

namespace {

// Exit codes: 0 ok, 2 parameter/input error, 3 structural or stage failure,
// 4 resource budget exceeded.
int exit_code(tfas_status st) {
  switch (st) {
    case TFAS_OK: return 0;
    case TFAS_ERR_PARAM:
    case TFAS_ERR_PARSE:
    case TFAS_ERR_IO: return 2;
    case TFAS_ERR_STRUCTURAL: return 3;
    case TFAS_ERR_RESOURCE: return 4;
    case TFAS_ERR_INTERNAL: break;
  }
  return 1;
}

[[noreturn]] void die(tfas_status st) {
  std::cerr << "error: " << tfas_last_error() << "\n";
  std::exit(exit_code(st));
}

void check(tfas_status st) {
  if (st != TFAS_OK) die(st);
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  tfas_string_free(s);
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(out_path);
  if (!f.good()) {
    std::cerr << "error: cannot open " << out_path << "\n";
    std::exit(2);
  }
  f << text;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f.good()) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(2);
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TournamentHandle {
  tfas_tournament* ptr = nullptr;
  ~TournamentHandle() { tfas_tournament_free(ptr); }
};

json overrides_to_json(const std::vector<std::string>& kvs) {
  json j = json::object();
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: override must look like key=value, got " << kv
                << "\n";
      std::exit(2);
    }
    try {
      j[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "error: override value is not a number: " << kv << "\n";
      std::exit(2);
    }
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random multipartite tournaments, feedback arc sets, and "
               "transversal clique packings"};
  app.require_subcommand(1);

  uint64_t seed = 1;
  uint32_t threads = 1;
  std::string out_path;
  app.add_option("--seed", seed, "base RNG seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads for campaigns")
      ->capture_default_str();
  app.add_option("--out", out_path, "output file (default stdout)");
  app.fallthrough();

  // gen
  auto* gen = app.add_subcommand("gen", "sample a tournament and write it");
  uint32_t gen_k = 2, gen_n = 0, gen_total = 0;
  bool gen_json = false;
  gen->add_option("--k", gen_k, "number of parts")->required();
  gen->add_option("--n", gen_n, "vertices per part (equal parts)");
  gen->add_option("--total", gen_total,
                  "total vertices, split as evenly as possible");
  gen->add_flag("--json", gen_json, "emit the JSON debug format");

  // pack
  auto* pack = app.add_subcommand(
      "pack", "extract disjoint transversal cliques from one order's "
              "feedback arc set");
  std::string pack_input, pack_order_file, pack_order = "random";
  std::string pack_mode = "practical", pack_emit, pack_dump_order;
  uint32_t pack_retries = 20;
  bool pack_no_verify = false;
  std::vector<std::string> pack_overrides;
  pack->add_option("--input", pack_input, ".kpt tournament file")->required();
  pack->add_option("--order-file", pack_order_file,
                   "JSON array of vertex ids");
  pack->add_option("--order", pack_order,
                   "random|identity|witness|degree_sorted");
  pack->add_option("--mode", pack_mode, "practical|theoretical")
      ->capture_default_str();
  pack->add_option("--retries", pack_retries, "pipeline retry budget")
      ->capture_default_str();
  pack->add_option("--override", pack_overrides,
                   "constants override key=value (repeatable)");
  pack->add_flag("--no-verify-extendability", pack_no_verify,
                 "skip the per-stage common-neighborhood audit");
  pack->add_option("--emit-cliques", pack_emit, "write cliques as CSV rows");
  pack->add_option("--dump-order", pack_dump_order,
                   "write the order actually used");

  // constants
  auto* cons = app.add_subcommand("constants", "dump the working constants");
  uint32_t cons_k = 2, cons_n = 100;
  bool cons_practical = false;
  std::vector<std::string> cons_overrides;
  cons->add_option("--k", cons_k)->required();
  cons->add_option("--n", cons_n)->required();
  cons->add_flag("--practical", cons_practical, "desk-scale parameters");
  cons->add_option("--override", cons_overrides,
                   "override key=value (practical mode only, repeatable)");

  // verify
  auto* ver = app.add_subcommand(
      "verify", "Monte Carlo runs of one structural property verifier");
  uint32_t ver_property = 4, ver_k = 3, ver_n = 200, ver_trials = 100;
  uint32_t ver_tournaments = 10, ver_r = 0, ver_d = 3, ver_qmax = 5;
  ver->add_option("--property", ver_property, "1|2|3|4")->required();
  ver->add_option("--k", ver_k)->required();
  ver->add_option("--n", ver_n)->required();
  ver->add_option("--trials", ver_trials)->capture_default_str();
  ver->add_option("--tournaments", ver_tournaments)->capture_default_str();
  ver->add_option("--r", ver_r, "tuple arity (0 = per-property default)");
  ver->add_option("--d", ver_d, "patterns per witness (property 3)");
  ver->add_option("--qmax", ver_qmax, "max sequence length (property 4)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact ground truth, tiny only");
  auto* fk = oracle->add_subcommand("fk", "exact f_k of one tournament");
  std::string fk_input;
  fk->add_option("--input", fk_input, ".kpt tournament file")->required();
  auto* exhaust = oracle->add_subcommand(
      "exhaust", "every orientation of the layout, one CSV row each");
  uint32_t ex_k = 2, ex_n = 2;
  exhaust->add_option("--k", ex_k)->required();
  exhaust->add_option("--n", ex_n)->required();
  oracle->require_subcommand(1);

  // campaign
  auto* camp = app.add_subcommand(
      "campaign", "batched generation + packing with per-strategy stats");
  uint32_t camp_k = 2, camp_n = 50, camp_trials = 10, camp_retries = 20;
  std::string camp_strategies = "random", camp_mode = "practical";
  std::string camp_format = "json";
  std::vector<std::string> camp_overrides;
  camp->add_option("--k", camp_k)->required();
  camp->add_option("--n", camp_n)->required();
  camp->add_option("--trials", camp_trials)->required();
  camp->add_option("--strategies", camp_strategies,
                   "comma list: random,identity,witness,degree_sorted")
      ->capture_default_str();
  camp->add_option("--mode", camp_mode, "practical|theoretical")
      ->capture_default_str();
  camp->add_option("--retries", camp_retries)->capture_default_str();
  camp->add_option("--override", camp_overrides,
                   "constants override key=value (repeatable)");
  camp->add_option("--format", camp_format, "json|csv")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    if ((gen_n == 0) == (gen_total == 0)) {
      std::cerr << "error: give exactly one of --n or --total\n";
      return 2;
    }
    TournamentHandle t;
    check(gen_n > 0 ? tfas_sample_random(gen_n, gen_k, seed, &t.ptr)
                    : tfas_sample_turan(gen_total, gen_k, seed, &t.ptr));
    if (gen_json) {
      char* js = nullptr;
      check(tfas_to_json(t.ptr, &js));
      emit(take_string(js), out_path);
    } else {
      if (out_path.empty() || out_path == "-") {
        std::cerr << "error: binary output needs --out FILE\n";
        return 2;
      }
      check(tfas_write_file(t.ptr, out_path.c_str()));
    }
    return 0;
  }

  if (pack->parsed()) {
    TournamentHandle t;
    check(tfas_read_file(pack_input.c_str(), &t.ptr));
    std::string order_json;
    if (!pack_order_file.empty()) {
      order_json = slurp(pack_order_file);
    } else {
      char* oj = nullptr;
      check(tfas_derive_order(t.ptr, pack_order.c_str(), seed, &oj));
      order_json = take_string(oj);
    }
    if (!pack_dump_order.empty()) emit(order_json, pack_dump_order);

    json options = {{"mode", pack_mode},
                    {"seed", seed},
                    {"retries", pack_retries},
                    {"verify_extendability", !pack_no_verify}};
    if (!pack_overrides.empty()) {
      options["overrides"] = overrides_to_json(pack_overrides);
    }
    char* res_js = nullptr;
    tfas_status st = tfas_pack(t.ptr, order_json.c_str(),
                               options.dump().c_str(), &res_js);
    if (st != TFAS_OK && st != TFAS_ERR_STRUCTURAL) die(st);
    std::string result = take_string(res_js);
    emit(result, out_path);
    if (!pack_emit.empty()) {
      json parsed = json::parse(result);
      std::ostringstream csv;
      for (const auto& clique : parsed.at("cliques")) {
        for (size_t i = 0; i < clique.size(); ++i) {
          csv << (i ? "," : "") << clique[i].get<uint32_t>();
        }
        csv << "\n";
      }
      emit(csv.str(), pack_emit);
    }
    return exit_code(st);
  }

  if (cons->parsed()) {
    char* js = nullptr;
    const std::string ov = overrides_to_json(cons_overrides).dump();
    check(tfas_constants_json(cons_k, cons_n, cons_practical ? 1 : 0,
                              cons_overrides.empty() ? nullptr : ov.c_str(),
                              &js));
    emit(take_string(js), out_path);
    return 0;
  }

  if (ver->parsed()) {
    json spec = {{"property", ver_property}, {"k", ver_k},
                 {"n", ver_n},               {"trials", ver_trials},
                 {"tournaments", ver_tournaments}, {"r", ver_r},
                 {"d", ver_d},               {"q_max", ver_qmax},
                 {"seed", seed}};
    char* js = nullptr;
    check(tfas_verify_property(spec.dump().c_str(), &js));
    emit(take_string(js), out_path);
    return 0;
  }

  if (oracle->parsed()) {
    if (fk->parsed()) {
      TournamentHandle t;
      check(tfas_read_file(fk_input.c_str(), &t.ptr));
      char* js = nullptr;
      check(tfas_oracle_fk(t.ptr, &js));
      emit(take_string(js), out_path);
      return 0;
    }
    char* csv = nullptr;
    check(tfas_oracle_exhaust(ex_n, ex_k, &csv));
    emit(take_string(csv), out_path);
    return 0;
  }

  if (camp->parsed()) {
    json strategies = json::array();
    std::stringstream ss(camp_strategies);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) strategies.push_back(item);
    }
    json spec = {{"k", camp_k},
                 {"n", camp_n},
                 {"trials", camp_trials},
                 {"strategies", strategies},
                 {"mode", camp_mode},
                 {"seed", seed},
                 {"threads", threads},
                 {"retries", camp_retries}};
    if (!camp_overrides.empty()) {
      spec["overrides"] = overrides_to_json(camp_overrides);
    }
    char* js = nullptr;
    check(tfas_campaign_run(spec.dump().c_str(), &js));
    std::string report = take_string(js);
    if (camp_format == "csv") {
      char* csv = nullptr;
      check(tfas_campaign_csv(report.c_str(), &csv));
      emit(take_string(csv), out_path);
    } else {
      emit(report, out_path);
    }
    return 0;
  }

  return 0;
}
