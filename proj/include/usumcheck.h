#ifndef USUMCHECK_H
#define USUMCHECK_H

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque context. Holds the result or error of the last call. */
typedef struct usc_ctx usc_ctx;

#define USC_OK 0
#define USC_ERR_ARG 1 /* malformed or unsupported config */
#define USC_ERR_RUN 2 /* execution failure */

usc_ctx* usc_ctx_new(void);
void usc_ctx_free(usc_ctx* ctx);

/* Execute a protocol run (single, trials or flaw demo) described by a JSON
   config. Returns USC_OK and stores the report JSON, retrievable until the
   next call on the same context. */
int usc_ctx_run(usc_ctx* ctx, const char* config_json);

/* Prover scaling bench over m in [m_lo, m_hi] for the configured protocol. */
int usc_ctx_bench(usc_ctx* ctx, const char* config_json, unsigned m_lo,
                  unsigned m_hi);

/* Last report JSON, or NULL if the last call failed. */
const char* usc_ctx_result(const usc_ctx* ctx);

/* Last error message, or NULL if the last call succeeded. */
const char* usc_ctx_error(const usc_ctx* ctx);

#ifdef __cplusplus
}
#endif

#endif /* USUMCHECK_H */
