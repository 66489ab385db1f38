#include <stdio.h>
#include "comte.h"

int main(void) {
    ComteHandle *h = NULL;
    if (comte_from_gauss("O1+U2+O3+U1+O2+U3+", &h) != COMTE_STATUS_OK) return 1;
    size_t v, a;
    if (comte_counts(h, &v, &a) != COMTE_STATUS_OK) return 1;
    printf("%zu %zu\n", v, a);
    char *s = NULL;
    if (comte_alexander(h, 1, &s) != COMTE_STATUS_OK) return 1;
    printf("%s\n", s);
    comte_string_free(s);
    if (comte_phi_tetrahedron(h, &s) != COMTE_STATUS_OK) return 1;
    printf("%s\n", s);
    comte_string_free(s);
    comte_free(h);
    ComteStatus st = comte_from_json("{", &h);
    printf("parse error: %s\n", st == COMTE_STATUS_PARSE && comte_last_error_message() ? "yes" : "no");
    return 0;
}
