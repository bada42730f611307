#pragma once

#include <cmath>
#include <filesystem>
#include <string>

// Shared helpers for the test binaries.

inline std::filesystem::path data_dir() {
    return std::filesystem::path(CARBONSCOPE_DATA_DIR);
}

inline bool close_rel(double actual, double expected, double rel_tol = 1e-9) {
    if (expected == 0.0)
        return std::abs(actual) <= rel_tol;
    return std::abs(actual - expected) <= rel_tol * std::abs(expected);
}
