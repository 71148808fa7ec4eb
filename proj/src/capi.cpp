#include "turanfas.h"

#include <cstring>
#include <sstream>

#include "core/campaign.hpp"
#include "core/oracle.hpp"

using nlohmann::json;

struct tfas_tournament {
  tfas::Tournament impl;
};

namespace {

thread_local std::string g_last_error;

tfas_status status_of(const tfas::Error& e) {
  switch (e.kind()) {
    case tfas::ErrorKind::parameter: return TFAS_ERR_PARAM;
    case tfas::ErrorKind::structural: return TFAS_ERR_STRUCTURAL;
    case tfas::ErrorKind::resource: return TFAS_ERR_RESOURCE;
    case tfas::ErrorKind::parse: return TFAS_ERR_PARSE;
    case tfas::ErrorKind::io: return TFAS_ERR_IO;
  }
  return TFAS_ERR_INTERNAL;
}

template <class F>
tfas_status guarded(F&& f) {
  try {
    return f();
  } catch (const tfas::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const json::exception& e) {
    g_last_error = std::string("json: ") + e.what();
    return TFAS_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TFAS_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tfas_status need(bool cond, const char* msg) {
  if (!cond) {
    g_last_error = msg;
    return TFAS_ERR_PARAM;
  }
  return TFAS_OK;
}

json parse_json(const char* text, const char* what) {
  if (text == nullptr) return json::object();
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    tfas::fail(tfas::ErrorKind::parse, std::string("malformed ") + what);
  }
  return j;
}

tfas::Constants constants_from_options(const tfas_tournament* t,
                                       const json& options) {
  const auto mode =
      options.value("mode", std::string("practical")) == "theoretical"
          ? tfas::Constants::Mode::theoretical
          : tfas::Constants::Mode::practical;
  std::map<std::string, double> overrides;
  if (options.contains("overrides")) {
    overrides = options.at("overrides").get<std::map<std::string, double>>();
  }
  return tfas::make_constants(mode, t->impl.parts(),
                              t->impl.layout().min_part_size(), overrides);
}

}  // namespace

extern "C" {

const char* tfas_version(void) { return "1.0.0"; }

const char* tfas_last_error(void) { return g_last_error.c_str(); }

void tfas_string_free(char* s) { std::free(s); }
void tfas_buffer_free(uint8_t* buf) { std::free(buf); }

tfas_status tfas_sample_random(uint32_t n, uint32_t k, uint64_t seed,
                               tfas_tournament** out) {
  if (auto st = need(out != nullptr, "out must not be null")) return st;
  return guarded([&] {
    *out = new tfas_tournament{tfas::Tournament::sample_random(n, k, seed)};
    return TFAS_OK;
  });
}

tfas_status tfas_sample_turan(uint32_t total, uint32_t k, uint64_t seed,
                              tfas_tournament** out) {
  if (auto st = need(out != nullptr, "out must not be null")) return st;
  return guarded([&] {
    *out = new tfas_tournament{tfas::Tournament::sample_turan(total, k, seed)};
    return TFAS_OK;
  });
}

tfas_status tfas_reduce_to_equal_parts(const tfas_tournament* t,
                                       tfas_tournament** out) {
  if (auto st = need(t && out, "t and out must not be null")) return st;
  return guarded([&] {
    *out = new tfas_tournament{t->impl.reduce_to_equal_parts()};
    return TFAS_OK;
  });
}

void tfas_tournament_free(tfas_tournament* t) { delete t; }

uint32_t tfas_parts(const tfas_tournament* t) {
  return t ? t->impl.parts() : 0;
}

uint32_t tfas_vertices(const tfas_tournament* t) {
  return t ? t->impl.vertices() : 0;
}

tfas_status tfas_part_sizes(const tfas_tournament* t, uint32_t* buf,
                            size_t buflen) {
  if (auto st = need(t && buf, "t and buf must not be null")) return st;
  if (auto st = need(buflen >= t->impl.parts(), "buffer too small")) return st;
  const auto& sizes = t->impl.layout().sizes();
  std::copy(sizes.begin(), sizes.end(), buf);
  return TFAS_OK;
}

int tfas_has_edge(const tfas_tournament* t, uint32_t u, uint32_t v) {
  if (!t || u >= t->impl.vertices() || v >= t->impl.vertices()) return -1;
  return t->impl.has_edge(u, v) ? 1 : 0;
}

tfas_status tfas_serialize(const tfas_tournament* t, uint8_t** buf,
                           size_t* len) {
  if (auto st = need(t && buf && len, "t, buf, len must not be null")) {
    return st;
  }
  return guarded([&] {
    auto bytes = t->impl.serialize();
    *buf = static_cast<uint8_t*>(std::malloc(bytes.size()));
    std::memcpy(*buf, bytes.data(), bytes.size());
    *len = bytes.size();
    return TFAS_OK;
  });
}

tfas_status tfas_deserialize(const uint8_t* buf, size_t len,
                             tfas_tournament** out) {
  if (auto st = need(buf && out, "buf and out must not be null")) return st;
  return guarded([&] {
    *out = new tfas_tournament{tfas::Tournament::deserialize(buf, len)};
    return TFAS_OK;
  });
}

tfas_status tfas_write_file(const tfas_tournament* t, const char* path) {
  if (auto st = need(t && path, "t and path must not be null")) return st;
  return guarded([&] {
    t->impl.write_file(path);
    return TFAS_OK;
  });
}

tfas_status tfas_read_file(const char* path, tfas_tournament** out) {
  if (auto st = need(path && out, "path and out must not be null")) return st;
  return guarded([&] {
    *out = new tfas_tournament{tfas::Tournament::read_file(path)};
    return TFAS_OK;
  });
}

tfas_status tfas_to_json(const tfas_tournament* t, char** out_json) {
  if (auto st = need(t && out_json, "t and out must not be null")) return st;
  return guarded([&] {
    *out_json = dup_string(t->impl.to_json().dump());
    return TFAS_OK;
  });
}

tfas_status tfas_from_json(const char* text, tfas_tournament** out) {
  if (auto st = need(text && out, "json and out must not be null")) return st;
  return guarded([&] {
    *out = new tfas_tournament{
        tfas::Tournament::from_json(parse_json(text, "tournament json"))};
    return TFAS_OK;
  });
}

tfas_status tfas_smallest_d(uint32_t k, uint32_t* out) {
  if (auto st = need(out != nullptr, "out must not be null")) return st;
  return guarded([&] {
    *out = tfas::smallest_d(k);
    return TFAS_OK;
  });
}

tfas_status tfas_constants_json(uint32_t k, uint32_t n, int practical,
                                const char* overrides_json, char** out_json) {
  if (auto st = need(out_json != nullptr, "out must not be null")) return st;
  return guarded([&] {
    std::map<std::string, double> overrides;
    if (overrides_json != nullptr) {
      overrides = parse_json(overrides_json, "overrides json")
                      .get<std::map<std::string, double>>();
    }
    tfas::Constants c = tfas::make_constants(
        practical ? tfas::Constants::Mode::practical
                  : tfas::Constants::Mode::theoretical,
        k, n, overrides);
    *out_json = dup_string(c.to_json().dump());
    return TFAS_OK;
  });
}

tfas_status tfas_derive_order(const tfas_tournament* t, const char* strategy,
                              uint64_t seed, char** out_order_json) {
  if (auto st = need(t && strategy && out_order_json,
                     "t, strategy, out must not be null")) {
    return st;
  }
  return guarded([&] {
    tfas::VertexOrder order =
        tfas::derive_order(t->impl, tfas::parse_strategy(strategy), seed);
    *out_order_json = dup_string(order.to_json().dump());
    return TFAS_OK;
  });
}

tfas_status tfas_upper_bound_witness(const tfas_tournament* t,
                                     char** out_json) {
  if (auto st = need(t && out_json, "t and out must not be null")) return st;
  return guarded([&] {
    tfas::WitnessResult w = tfas::upper_bound_witness(t->impl);
    json edges = json::array();
    for (auto [u, v] : w.fas) edges.push_back({u, v});
    *out_json = dup_string(json{{"order", w.order.to_json()},
                                {"excluded", w.excluded},
                                {"fas_edges", edges},
                                {"fas_size", w.fas.size()}}
                               .dump());
    return TFAS_OK;
  });
}

tfas_status tfas_pack(const tfas_tournament* t, const char* order_json,
                      const char* options_json, char** out_json) {
  if (auto st = need(t && order_json && out_json,
                     "t, order, out must not be null")) {
    return st;
  }
  return guarded([&] {
    tfas::VertexOrder order =
        tfas::VertexOrder::from_json(parse_json(order_json, "order json"));
    const json options = parse_json(options_json, "options json");
    const tfas::Constants c = constants_from_options(t, options);
    tfas::PackingResult res = tfas::find_clique_packing(
        t->impl, order, c, options.value("seed", uint64_t(1)),
        options.value("retries", uint32_t(20)),
        options.value("verify_extendability", true));
    *out_json = dup_string(res.to_json().dump());
    if (!res.success()) {
      g_last_error = "packing stage failure: " + res.diagnostic;
      return TFAS_ERR_STRUCTURAL;
    }
    return TFAS_OK;
  });
}

tfas_status tfas_verify_property(const char* spec_json, char** out_json) {
  if (auto st = need(spec_json && out_json, "spec and out must not be null")) {
    return st;
  }
  return guarded([&] {
    const json spec = parse_json(spec_json, "verify spec");
    tfas::VerifySpec v;
    v.property = spec.value("property", 4u);
    v.k = spec.value("k", 3u);
    v.n = spec.value("n", 100u);
    v.r = spec.value("r", 0u);
    v.d = spec.value("d", 3u);
    v.q_max = spec.value("q_max", 5u);
    v.trials = spec.value("trials", 100u);
    v.tournaments = spec.value("tournaments", 10u);
    v.seed = spec.value("seed", uint64_t(1));
    v.mode = spec.value("mode", std::string("practical")) == "theoretical"
                 ? tfas::Constants::Mode::theoretical
                 : tfas::Constants::Mode::practical;
    *out_json = dup_string(tfas::run_verify(v).dump());
    return TFAS_OK;
  });
}

tfas_status tfas_oracle_fk(const tfas_tournament* t, char** out_json) {
  if (auto st = need(t && out_json, "t and out must not be null")) return st;
  return guarded([&] {
    tfas::FkResult r = tfas::brute_force_fk_witness(t->impl);
    *out_json = dup_string(json{{"fk", r.fk},
                                {"argmin_order", r.argmin_order.to_json()},
                                {"packing", r.packing}}
                               .dump());
    return TFAS_OK;
  });
}

tfas_status tfas_oracle_exhaust(uint32_t n, uint32_t k, char** out_csv) {
  if (auto st = need(out_csv != nullptr, "out must not be null")) return st;
  return guarded([&] {
    std::vector<uint32_t> sizes(k, n);
    const uint64_t space = tfas::enumeration_size(sizes);
    std::ostringstream csv;
    csv << "mask,fk,bound,bound_tight\n";
    const int64_t bound = std::max<int64_t>(0, int64_t(n) - int64_t(k) + 1);
    for (uint64_t mask = 0; mask < space; ++mask) {
      const uint32_t fk =
          tfas::brute_force_fk(tfas::tournament_from_mask(sizes, mask));
      csv << mask << "," << fk << "," << bound << ","
          << (int64_t(fk) == bound ? 1 : 0) << "\n";
    }
    *out_csv = dup_string(csv.str());
    return TFAS_OK;
  });
}

tfas_status tfas_campaign_run(const char* spec_json, char** out_json) {
  if (auto st = need(spec_json && out_json, "spec and out must not be null")) {
    return st;
  }
  return guarded([&] {
    tfas::CampaignSpec spec =
        tfas::CampaignSpec::from_json(parse_json(spec_json, "campaign spec"));
    *out_json = dup_string(tfas::run_campaign(spec).to_json().dump());
    return TFAS_OK;
  });
}

tfas_status tfas_campaign_csv(const char* report_json, char** out_csv) {
  if (auto st = need(report_json && out_csv,
                     "report and out must not be null")) {
    return st;
  }
  return guarded([&] {
    const json rep = parse_json(report_json, "campaign report");
    std::ostringstream csv;
    csv << "strategy,outcome,detail,cliques,count\n";
    for (const auto& [name, st] : rep.at("results").items()) {
      for (const auto& [cliques, runs] : st.at("clique_histogram").items()) {
        csv << name << ",success,," << cliques << "," << runs.get<uint64_t>()
            << "\n";
      }
      for (const auto& [stage, runs] : st.at("failure_stages").items()) {
        csv << name << ",failure," << stage << ",," << runs.get<uint64_t>()
            << "\n";
      }
    }
    *out_csv = dup_string(csv.str());
    return TFAS_OK;
  });
}

}  // extern "C"
