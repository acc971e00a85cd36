/* C-compatible surface for foreign-language bindings.
 *
 * All results are UTF-8 JSON documents owned by the caller and released
 * with dice_free_string. A successful roll yields
 *   {"groups": [...], "records": [...], "warnings": [...]}
 * and any failure yields
 *   {"error": {"code": "...", "message": "...", "span": [begin, end]}}.
 * No function lets a C++ exception escape. A session is not thread-safe;
 * distinct sessions may be used concurrently. */
#ifndef DICE_C_API_H
#define DICE_C_API_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dice_session dice_session;

/* Creates a session with its own macro table; returns NULL on allocation failure. */
dice_session* dice_session_create(int load_builtin_macros);
void dice_session_destroy(dice_session* session);

/* Loads "#NAME = expr" lines. Returns NULL on success, or an error document. */
char* dice_session_load_macros(dice_session* session, const char* macro_text);

/* Rolls with a SeededSource when has_seed is non-zero, otherwise with a
 * nondeterministic seed. */
char* dice_session_roll(dice_session* session, const char* expression, uint64_t seed, int has_seed);

/* Rolls replaying the given face indices (0-based, one per draw). */
char* dice_session_roll_scripted(dice_session* session, const char* expression, const uint64_t* indices,
                                 size_t count);

/* One-shot roll in a fresh session with built-in macros plus macro_text (may be NULL). */
char* dice_roll(const char* expression, uint64_t seed, int has_seed, const char* macro_text);

void dice_free_string(char* text);

const char* dice_version(void);

#ifdef __cplusplus
}
#endif

#endif /* DICE_C_API_H */
