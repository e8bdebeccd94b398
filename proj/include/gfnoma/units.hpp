#pragma once

#include <cmath>
#include <stdexcept>

namespace gfnoma {

// Normalized power unit is 1 mW, so dBm values compare directly against
// 10*log10 of the normalized value.
inline double to_dbm(double p) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("to_dbm: power must be > 0");
    }
    return 10.0 * std::log10(p);
}

inline double from_db(double x) { return std::pow(10.0, x / 10.0); }

} // namespace gfnoma
