#pragma once

#include <vector>

namespace polling {

// Affine expression c + a.x in the solver unknowns; used to assemble the
// MVA linear systems term by term before moving everything to one side.
struct Affine {
    explicit Affine(int m) : c(0.0), a(m, 0.0) {}

    double value(const std::vector<double>& x) const {
        double v = c;
        for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * x[i];
        return v;
    }

    double c;
    std::vector<double> a;
};

}  // namespace polling
