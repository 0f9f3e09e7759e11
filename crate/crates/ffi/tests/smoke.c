#include <stdio.h>
#include <string.h>
#include "quartic_euclid.h"

int main(void) {
    QeField *field = NULL;
    if (qe_field_open("K_1", &field) != QE_STATUS_OK) return 10;

    uint64_t g = 0;
    if (qe_field_torsion_order(field, &g) != QE_STATUS_OK || g != 4) return 11;

    QeCertificate *cert = NULL;
    if (qe_search(field, 100, true, &cert) != QE_STATUS_OK) return 12;

    char *json = NULL;
    if (qe_certificate_to_json(cert, &json) != QE_STATUS_OK) return 13;
    if (qe_verify_json(json, false, NULL) != QE_STATUS_OK) return 14;

    uint64_t p1 = 0, p2 = 0;
    qe_certificate_pair(cert, &p1, &p2);
    printf("%llu %llu\n", (unsigned long long)p1, (unsigned long long)p2);

    QeField *missing = NULL;
    if (qe_field_open("K_99", &missing) != QE_STATUS_UNKNOWN_LABEL) return 15;
    if (qe_last_error() == NULL || strstr(qe_last_error(), "K_99") == NULL) return 16;

    qe_string_free(json);
    qe_certificate_free(cert);
    qe_field_free(field);
    return 0;
}
