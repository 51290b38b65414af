#include "semicrf/segment.h"

namespace semicrf {

namespace {

std::string describe(const segment& s) {
    return "(" + std::to_string(s.begin + 1) + "," + std::to_string(s.end) + "," +
           std::to_string(s.label) + ")";
}

}  // namespace

void validate_segmentation(const segmentation& segs, int n, int max_len, int num_labels) {
    if (n <= 0) {
        throw data_error("segmentation: empty sequence");
    }
    if (segs.empty()) {
        throw data_error("segmentation: no segments for sequence of length " + std::to_string(n));
    }
    int expect = 0;
    for (const auto& s : segs) {
        if (s.begin != expect) {
            throw data_error("segmentation: segment " + describe(s) + " does not start at position " +
                             std::to_string(expect + 1));
        }
        if (s.end <= s.begin || s.end > n) {
            throw data_error("segmentation: segment " + describe(s) + " has invalid bounds for length " +
                             std::to_string(n));
        }
        if (s.length() > max_len) {
            throw data_error("segmentation: segment " + describe(s) + " exceeds maximum length " +
                             std::to_string(max_len));
        }
        if (s.label < 0 || s.label >= num_labels) {
            throw data_error("segmentation: segment " + describe(s) + " has label outside [0," +
                             std::to_string(num_labels) + ")");
        }
        expect = s.end;
    }
    if (expect != n) {
        throw data_error("segmentation: segments cover only " + std::to_string(expect) + " of " +
                         std::to_string(n) + " units");
    }
}

}
