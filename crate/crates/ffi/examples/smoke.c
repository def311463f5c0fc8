#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "diagram_periods.h"

static char *slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return NULL;
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    rewind(f);
    char *buf = malloc(n + 1);
    size_t got = fread(buf, 1, n, f);
    buf[got] = '\0';
    fclose(f);
    return buf;
}

int main(int argc, char **argv) {
    if (argc < 2) {
        fprintf(stderr, "usage: %s DIAGRAM.json\n", argv[0]);
        return 2;
    }
    char *json = slurp(argv[1]);
    if (!json) {
        perror(argv[1]);
        return 2;
    }
    DpDocument *doc = NULL;
    DpStatus s = dp_document_from_json(json, &doc);
    if (s != DP_OK) {
        fprintf(stderr, "load failed (%d): %s\n", s, dp_last_error());
        free(json);
        return 2;
    }
    size_t end_dim = 0, dim_p = 0, dim_hom = 0;
    if (dp_end_dimension(doc, 0, &end_dim) != DP_OK) {
        fprintf(stderr, "%s\n", dp_last_error());
        return 2;
    }
    s = dp_psi_check(doc, 0, 0, &dim_p, &dim_hom);
    printf("end %zu periods %zu hom %zu bijective %d\n", end_dim, dim_p, dim_hom, s == DP_OK);

    char *report = NULL;
    s = dp_run("validate", json, NULL, &report);
    printf("validate %d %s\n", s, report ? report : "null");
    dp_string_free(report);

    dp_document_free(doc);
    free(json);
    return 0;
}
