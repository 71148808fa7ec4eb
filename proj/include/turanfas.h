/* turanfas: random multipartite tournaments, feedback arc sets from vertex
 * orders, and disjoint transversal clique packings, behind a C ABI.
 *
 * Conventions:
 *  - every fallible call returns a tfas_status; 0 is success
 *  - on failure, tfas_last_error() describes what went wrong (thread-local,
 *    overwritten by the next failing call on the same thread)
 *  - strings and buffers returned through out-parameters are owned by the
 *    caller; release them with tfas_string_free / tfas_buffer_free
 *  - structured inputs and outputs are JSON documents, matching the CLI
 */
#ifndef TURANFAS_H
#define TURANFAS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tfas_tournament tfas_tournament;

typedef enum tfas_status {
  TFAS_OK = 0,
  TFAS_ERR_INTERNAL = 1,
  TFAS_ERR_PARAM = 2,      /* bad arguments or violated preconditions */
  TFAS_ERR_STRUCTURAL = 3, /* input lacks required structure / stage failed */
  TFAS_ERR_RESOURCE = 4,   /* exact-computation budget exceeded */
  TFAS_ERR_PARSE = 5,      /* malformed serialized data */
  TFAS_ERR_IO = 6          /* filesystem failure */
} tfas_status;

const char* tfas_version(void);
const char* tfas_last_error(void);

void tfas_string_free(char* s);
void tfas_buffer_free(uint8_t* buf);

/* ---- tournaments -------------------------------------------------------- */

/* k parts of n vertices each; every cross-part edge is a fair coin. */
tfas_status tfas_sample_random(uint32_t n, uint32_t k, uint64_t seed,
                               tfas_tournament** out);

/* Random orientation of the complete k-partite graph on `total` vertices
 * with parts as equal as possible (larger parts first). */
tfas_status tfas_sample_turan(uint32_t total, uint32_t k, uint64_t seed,
                              tfas_tournament** out);

/* Drops the last vertex of every oversized part; sizes may differ by <= 1. */
tfas_status tfas_reduce_to_equal_parts(const tfas_tournament* t,
                                       tfas_tournament** out);

void tfas_tournament_free(tfas_tournament* t);

uint32_t tfas_parts(const tfas_tournament* t);
uint32_t tfas_vertices(const tfas_tournament* t);
tfas_status tfas_part_sizes(const tfas_tournament* t, uint32_t* buf,
                            size_t buflen);
/* 1 if the directed edge u->v exists, 0 if not, -1 on bad arguments. */
int tfas_has_edge(const tfas_tournament* t, uint32_t u, uint32_t v);

/* .kpt binary format; see README for the exact layout. */
tfas_status tfas_serialize(const tfas_tournament* t, uint8_t** buf,
                           size_t* len);
tfas_status tfas_deserialize(const uint8_t* buf, size_t len,
                             tfas_tournament** out);
tfas_status tfas_write_file(const tfas_tournament* t, const char* path);
tfas_status tfas_read_file(const char* path, tfas_tournament** out);

/* JSON debug mirror of the binary format. */
tfas_status tfas_to_json(const tfas_tournament* t, char** out_json);
tfas_status tfas_from_json(const char* json, tfas_tournament** out);

/* ---- constants ---------------------------------------------------------- */

tfas_status tfas_smallest_d(uint32_t k, uint32_t* out);

/* overrides_json: optional {"delta":0.1,...}; only valid with practical=1. */
tfas_status tfas_constants_json(uint32_t k, uint32_t n, int practical,
                                const char* overrides_json, char** out_json);

/* ---- orders and packing ------------------------------------------------- */

/* strategy: "random" | "identity" | "witness" | "degree_sorted".
 * Returns the order as a JSON array of vertex ids. */
tfas_status tfas_derive_order(const tfas_tournament* t, const char* strategy,
                              uint64_t seed, char** out_order_json);

/* Star-cut construction: order, excluded vertices, and the feedback arc set
 * that avoids all excluded stars, as one JSON document. */
tfas_status tfas_upper_bound_witness(const tfas_tournament* t,
                                     char** out_json);

/* order_json: JSON array of vertex ids.
 * options_json (optional): {"mode":"practical"|"theoretical",
 *   "overrides":{...}, "seed":1, "retries":20, "verify_extendability":true}.
 * On a stage failure the return value is TFAS_ERR_STRUCTURAL and *out_json
 * still carries the full result with diagnostics. */
tfas_status tfas_pack(const tfas_tournament* t, const char* order_json,
                      const char* options_json, char** out_json);

/* ---- verification, oracle, campaigns ------------------------------------ */

/* spec_json: {"property":1..4,"k":..,"n":..,"trials":..,"tournaments":..,
 *   "r":..,"d":..,"q_max":..,"seed":..}. Returns pass counts as JSON. */
tfas_status tfas_verify_property(const char* spec_json, char** out_json);

/* Exact f_k with certificate; exponential, gated to tiny inputs. */
tfas_status tfas_oracle_fk(const tfas_tournament* t, char** out_json);

/* Every orientation of the k-partite layout with n vertices per part, one
 * CSV row each: mask, fk, bound s-k+1, whether the bound is met exactly. */
tfas_status tfas_oracle_exhaust(uint32_t n, uint32_t k, char** out_csv);

/* spec_json matches the campaign CLI: {"k":..,"n":..,"trials":..,
 *   "strategies":["random",...],"mode":"practical","seed":..,"threads":..,
 *   "retries":..}. */
tfas_status tfas_campaign_run(const char* spec_json, char** out_json);
tfas_status tfas_campaign_csv(const char* report_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* TURANFAS_H */
