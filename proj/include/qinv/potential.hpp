#pragma once

#include <cstdint>
#include <vector>

#include "qinv/grid.hpp"

namespace qinv {

/// MinZero: values are shifted so the true minimum of the potential is zero
/// and `energy` holds the ground energy above that minimum.
/// RawTableConstant: the potential is unbounded below on its domain, values
/// hold V - E as assembled and `energy` is zero.
enum class OffsetConvention { MinZero, RawTableConstant };

struct PotentialCurve {
    Grid1D grid;
    std::vector<double> values;
    std::vector<uint8_t> mask;  // 1 = valid
    double energy = 0.0;
    OffsetConvention offset = OffsetConvention::MinZero;

    bool fully_valid() const {
        for (uint8_t m : mask)
            if (!m) return false;
        return true;
    }
    int valid_count() const {
        int c = 0;
        for (uint8_t m : mask) c += (m != 0);
        return c;
    }
};

struct PotentialField {
    Grid2D grid;
    std::vector<double> values;
    std::vector<uint8_t> mask;
    double energy = 0.0;
    OffsetConvention offset = OffsetConvention::MinZero;

    bool fully_valid() const {
        for (uint8_t m : mask)
            if (!m) return false;
        return true;
    }
    size_t valid_count() const {
        size_t c = 0;
        for (uint8_t m : mask) c += (m != 0);
        return c;
    }
};

}  // namespace qinv
