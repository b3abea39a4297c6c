#pragma once

namespace polling {

// Queue indices are cyclic modulo n. All internal indices are 0-based; the
// CLI and docs use 1-based labels. cyc() accepts any offset a few multiples
// of n away from [0, n).
inline int cyc(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

// Number of steps from i to j walking forward around the cycle (0 when i == j).
inline int cyc_dist(int i, int j, int n) {
    return cyc(j - i, n);
}

}  // namespace polling
