#ifndef CONTAIN_CAPI_H
#define CONTAIN_CAPI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define CONTAIN_API __attribute__((visibility("default")))
#else
#define CONTAIN_API
#endif

typedef enum {
    CONTAIN_OK = 0,
    CONTAIN_E_ARGUMENT = 1,       /* null or malformed argument */
    CONTAIN_E_INVALID_CONFIG = 2,
    CONTAIN_E_UNKNOWN_POLICY = 3,
    CONTAIN_E_ILLEGAL_MOVE = 4,
    CONTAIN_E_BUDGET = 5,
    CONTAIN_E_CONFLICT = 6,       /* wrong half-turn or game over */
    CONTAIN_E_PARSE = 7,          /* trace or JSON input */
    CONTAIN_E_NOT_FOUND = 8,
    CONTAIN_E_UNWINNABLE = 9,
    CONTAIN_E_RANGE = 10,
    CONTAIN_E_IO = 11,
    CONTAIN_E_INTERNAL = 12
} contain_status;

typedef struct contain_game contain_game;

/* Strings returned through char** are owned by the caller: release them
   with contain_string_free. The last error message is per thread. */
CONTAIN_API const char* contain_version(void);
CONTAIN_API const char* contain_status_name(int status);
CONTAIN_API const char* contain_last_error(void);
CONTAIN_API void contain_string_free(char* s);

/* Games. config_json mirrors GameConfig. role: "container", "spreader" or
   "observer"; container/spreader name the engine policies. */
CONTAIN_API int contain_game_new(const char* config_json, const char* role, const char* container,
                                 const char* spreader, contain_game** out);
CONTAIN_API void contain_game_free(contain_game* g);
/* human half-turn then engine half-turn; cells_json is [[x,y],...] */
CONTAIN_API int contain_game_move(contain_game* g, const char* cells_json, char** record_json);
/* observer games: one full engine turn */
CONTAIN_API int contain_game_step(contain_game* g, char** record_json);
/* viewport_json: null or [x0,y0,x1,y1] */
CONTAIN_API int contain_game_state(contain_game* g, const char* viewport_json, char** state_json);
CONTAIN_API int contain_game_trace(contain_game* g, char** jsonl);
CONTAIN_API int contain_game_hash(contain_game* g, char** hex);

/* Batch commands. spec_json: {"config": {...}, "container": "...",
   "spreader": "..."}; trace_path may be null. */
CONTAIN_API int contain_run(const char* spec_json, const char* trace_path, char** summary_json);
/* suites_csv null: all suites. The report's "clean" field carries the verdict. */
CONTAIN_API int contain_verify(const char* trace_path, const char* suites_csv, char** report_json);
CONTAIN_API int contain_replay(const char* trace_path, const char* out_path, char** result_json);
/* options_json: {"format": "ascii"|"svg", "from", "to", "x0", "width"} */
CONTAIN_API int contain_render(const char* trace_path, const char* options_json, char** out);
/* options_json: {"turns", "plane_turns", "hs", "random_seeds", "plane"} */
CONTAIN_API int contain_calibrate(const char* options_json, char** constants_json);
/* kind "eighth": a sieve plan; "plane": the four-wall reduction */
CONTAIN_API int contain_plan(const char* kind, const char* c, int64_t r0, char** plan_json);
/* blocks serving HTTP until the process ends; port 0 picks one and prints it */
CONTAIN_API int contain_serve(const char* host, int port);

#ifdef __cplusplus
}
#endif

#endif
