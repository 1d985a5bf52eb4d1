/* Minimal C consumer of the sltensor C ABI.
 *
 * Build (after `cargo build --release -p sltensor-ffi`):
 *   cc smoke.c -I ../include ../../../target/release/libsltensor_ffi.a \
 *      -lpthread -ldl -lm -o smoke
 */
#include <assert.h>
#include <stdio.h>
#include <string.h>

#include "sltensor.h"

int main(void) {
    printf("sltensor %s\n", slt_version());

    SltPoly *poly = NULL;
    SltStatus status = slt_poly_parse("(t1 + t2)^2 - 1/2*t1", 2, &poly);
    assert(status == SLT_STATUS_OK);
    char *text = slt_poly_to_string(poly);
    printf("canonical form: %s\n", text);
    slt_string_free(text);
    slt_poly_free(poly);

    SltReport *report = NULL;
    status = slt_suite_run(12, 20240501, &report);
    assert(status == SLT_STATUS_OK);
    printf("checks: %u, failed: %u\n", slt_report_len(report),
           slt_report_failed(report));
    char *json = slt_report_json(report);
    printf("%.60s...\n", json);
    slt_string_free(json);
    slt_report_free(report);
    return 0;
}
