#pragma once

#include <string>

namespace agolomb {

// Outcome of a range verification. Failures are data, not errors: `pass`
// stays meaningful after partial scans and `first_witness` records the least
// failing index (-1 when none was found).
struct VerifyReport {
    bool pass = true;
    long long checked = 0;
    long long first_witness = -1;
    std::string detail;

    void fail(long long witness, std::string what) {
        if (pass || witness < first_witness) {
            first_witness = witness;
            detail = std::move(what);
        }
        pass = false;
    }
    void merge(const VerifyReport& o) {
        checked += o.checked;
        if (!o.pass) {
            if (pass || o.first_witness < first_witness) {
                first_witness = o.first_witness;
                detail = o.detail;
            }
            pass = false;
        }
    }
    std::string summary() const {
        if (pass) return "pass (" + std::to_string(checked) + " checked)";
        return "FAIL at n=" + std::to_string(first_witness) + ": " + detail;
    }
};

}  // namespace agolomb
