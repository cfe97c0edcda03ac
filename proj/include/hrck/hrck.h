#ifndef HRCK_H
#define HRCK_H

#include <stddef.h>

#if defined(_WIN32)
#define HRCK_API __declspec(dllexport)
#else
#define HRCK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hrck_status {
  HRCK_OK = 0,
  HRCK_E_VALIDATION = 1,  /* input rejected by a validation, H-check or diagnostic */
  HRCK_E_PARSE = 2,
  HRCK_E_CONSISTENCY = 3, /* internal cross-check failed */
  HRCK_E_DOMAIN = 4,
  HRCK_E_UNSUPPORTED = 5,
  HRCK_E_IO = 6,
  HRCK_E_ARGUMENT = 7,
  HRCK_E_INTERNAL = 8
} hrck_status;

typedef enum hrck_format { HRCK_FORMAT_TEXT = 0, HRCK_FORMAT_JSON = 1 } hrck_format;

typedef struct hrck_session hrck_session;
typedef struct hrck_report hrck_report;
typedef struct hrck_presentation hrck_presentation;
typedef struct hrck_building hrck_building;
typedef struct hrck_ktheory hrck_ktheory;

HRCK_API const char* hrck_version(void);
/* Message for the most recent failure on the calling thread ("" if none). */
HRCK_API const char* hrck_last_error(void);
/* Process exit code (0..3) conventionally associated with a status. */
HRCK_API int hrck_status_exit_code(hrck_status status);
HRCK_API void hrck_string_free(char* s);

/* Sessions hold run options. Defaults: 1 thread, text format, no timings,
   periodicity bound 2, no condition override. */
HRCK_API hrck_status hrck_session_create(hrck_session** out);
HRCK_API void hrck_session_destroy(hrck_session* session);
HRCK_API hrck_status hrck_session_set_threads(hrck_session* session, unsigned threads);
HRCK_API hrck_status hrck_session_set_format(hrck_session* session, hrck_format format);
HRCK_API hrck_status hrck_session_set_timings(hrck_session* session, int enabled);
HRCK_API hrck_status hrck_session_set_periodicity_bound(hrck_session* session, int bound);
HRCK_API hrck_status hrck_session_set_override_conditions(hrck_session* session, int enabled);

/* Commands. On HRCK_OK and HRCK_E_VALIDATION a report is returned through
   `out`; otherwise *out is NULL and hrck_last_error() explains. Optional
   path arguments may be NULL. */
HRCK_API hrck_status hrck_validate_presentation(hrck_session* s, const char* path, hrck_report** out);
HRCK_API hrck_status hrck_validate_graph(hrck_session* s, const char* path, hrck_report** out);
HRCK_API hrck_status hrck_ktheory_presentation(hrck_session* s, const char* path, const char* matrix_out,
                                               hrck_report** out);
HRCK_API hrck_status hrck_ktheory_graph(hrck_session* s, const char* path, const char* matrix_out,
                                        hrck_report** out);
HRCK_API hrck_status hrck_ktheory_tensor(hrck_session* s, const char* first, const char* second,
                                         const char* matrix_out, hrck_report** out);
HRCK_API hrck_status hrck_ktheory_matrices(hrck_session* s, const char* path, hrck_report** out);
HRCK_API hrck_status hrck_search(hrck_session* s, int q, const char* lambda_path, size_t limit,
                                 const char* out_dir, hrck_report** out);
/* Correspondence file text for a presentation; free with hrck_string_free. */
HRCK_API hrck_status hrck_lambda_file(const char* presentation_path, char** out);

/* Rendered in the session's format at the time of the call. */
HRCK_API const char* hrck_report_text(const hrck_report* report);
HRCK_API void hrck_report_destroy(hrck_report* report);

/* Object-level access. */
HRCK_API hrck_status hrck_presentation_parse(const char* text, hrck_presentation** out);
HRCK_API void hrck_presentation_destroy(hrck_presentation* p);
HRCK_API int hrck_presentation_order(const hrck_presentation* p);
HRCK_API size_t hrck_presentation_triple_count(const hrck_presentation* p);
/* HRCK_OK when valid, HRCK_E_VALIDATION otherwise (reason in hrck_last_error). */
HRCK_API hrck_status hrck_presentation_validate(const hrck_presentation* p);

HRCK_API hrck_status hrck_building_create(const hrck_presentation* p, hrck_building** out);
HRCK_API void hrck_building_destroy(hrck_building* b);
HRCK_API size_t hrck_building_tile_count(const hrck_building* b);
/* direction is 1 or 2; *value receives M_direction(row, col). */
HRCK_API hrck_status hrck_building_matrix_entry(const hrck_building* b, int direction, size_t row, size_t col,
                                                int* value);

HRCK_API hrck_status hrck_building_ktheory(hrck_session* s, const hrck_building* b, hrck_ktheory** out);
HRCK_API void hrck_ktheory_destroy(hrck_ktheory* k);
/* Strings stay valid for the lifetime of the handle. */
HRCK_API const char* hrck_ktheory_k0(const hrck_ktheory* k);
HRCK_API const char* hrck_ktheory_k1(const hrck_ktheory* k);
HRCK_API const char* hrck_ktheory_identity_order(const hrck_ktheory* k);
HRCK_API size_t hrck_ktheory_free_rank(const hrck_ktheory* k);

#ifdef __cplusplus
}
#endif

#endif
