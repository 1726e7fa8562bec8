#include <stdio.h>
#include <string.h>

#include "mbqc.h"

static int fail(const char *what, MbqcStatus s) {
    fprintf(stderr, "%s: status %d: %s\n", what, (int)s, mbqc_last_error());
    return 1;
}

int main(void) {
    const char *text = "circuit 2\nJ 0 1/4\nCZ 0 1\nJ 1 1/3\n";
    MbqcCircuit *c = NULL;
    MbqcStatus s = mbqc_circuit_parse(text, &c);
    if (s != MBQC_STATUS_OK) return fail("parse", s);

    MbqcPattern *p = NULL;
    s = mbqc_circuit_to_pattern(c, MBQC_VARIANT_DIRECT, &p);
    if (s != MBQC_STATUS_OK) return fail("translate", s);

    size_t depth = 0;
    s = mbqc_pattern_quantum_depth(p, &depth);
    if (s != MBQC_STATUS_OK) return fail("depth", s);

    char *ptext = mbqc_pattern_serialize(p);
    int same = 0;
    s = mbqc_equivalent(text, ptext, 1e-9, &same);
    if (s != MBQC_STATUS_OK) return fail("equivalent", s);

    MbqcCircuit *bad = NULL;
    MbqcStatus e = mbqc_circuit_parse("circuit 1\nFOO 0\n", &bad);

    printf("depth=%zu same=%d parse_error=%d msg=%s\n", depth, same, (int)e,
           strlen(mbqc_last_error()) > 0 ? "yes" : "no");

    mbqc_string_free(ptext);
    mbqc_pattern_free(p);
    mbqc_circuit_free(c);
    return 0;
}
