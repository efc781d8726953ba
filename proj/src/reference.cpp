#include "rarburn/reference.hpp"

#include <cmath>
#include <limits>

namespace rarburn {

namespace {

constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

const MetricRef kTable1[] = {
    {"", 200, "ER", 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, kNone, kNone, kNone, kNone},
    {"", 200, "PBB", 65.77, 0.0, 0.0, 0.0, 65.77, 0.0, 65.0, 0.82, 64.94, 0.82},
    {"", 200, "BRAR (U)", 34.25, 1.17, 0.83, 0.31, 35.09, 1.19, 51.0, 0.96, 50.13, 0.96},
    {"", 200, "BRAR (T)", 9.72, 0.41, 0.36, 0.12, 10.08, 0.41, 30.0, 1.29, 29.55, 1.29},
    {"", 200, "N0", 18.91, 1.09, 1.53, 0.18, 20.43, 1.1, 37.0, 1.39, 36.63, 1.39},
    {"", 200, "N1", 13.62, 1.03, 32.41, 1.06, 46.03, 1.21, 54.0, 1.26, 53.64, 1.26},
    {"", 200, "R0", 19.48, 1.12, 1.18, 0.13, 20.65, 1.12, 37.0, 1.43, 36.37, 1.43},
    {"", 200, "R1", 25.12, 1.15, 16.97, 1.12, 42.09, 1.48, 54.0, 1.11, 53.91, 1.11},
    {"", 200, "PTW", 36.15, 1.52, 1.29, 0.15, 37.44, 1.49, 52.0, 1.08, 51.88, 1.08},
    {"", 200, "RPW", 25.41, 1.29, 1.79, 0.21, 27.2, 1.25, 43.0, 1.25, 42.3, 1.25},
    {"", 500, "ER", 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, kNone, kNone, kNone, kNone},
    {"", 500, "PBB", 72.02, 0.0, 0.0, 0.0, 72.02, 0.0, 137.0, 1.46, 54.46, 0.58},
    {"", 500, "BRAR (U)", 38.61, 1.24, 1.07, 0.36, 39.68, 1.24, 109.0, 1.68, 43.3, 0.67},
    {"", 500, "BRAR (T)", 11.93, 0.47, 0.12, 0.06, 12.05, 0.46, 63.0, 2.37, 24.81, 0.95},
    {"", 500, "N0", 23.05, 1.07, 0.9, 0.12, 23.95, 1.07, 80.0, 2.78, 31.73, 1.11},
    {"", 500, "N1", 21.01, 1.19, 33.94, 1.06, 54.95, 1.44, 119.0, 2.59, 47.58, 1.04},
    {"", 500, "R0", 24.69, 1.14, 0.85, 0.11, 25.54, 1.14, 82.0, 2.75, 32.46, 1.1},
    {"", 500, "R1", 33.84, 1.19, 17.38, 1.15, 51.22, 1.66, 118.0, 2.15, 46.92, 0.86},
    {"", 500, "PTW", 38.76, 1.35, 0.85, 0.1, 39.61, 1.33, 109.0, 1.83, 43.42, 0.73},
    {"", 500, "RPW", 26.74, 1.23, 1.25, 0.14, 27.99, 1.2, 91.0, 2.29, 36.13, 0.92},
    {"", 1000, "ER", 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, kNone, kNone, kNone, kNone},
    {"", 1000, "PBB", 75.5, 0.0, 0.0, 0.0, 75.5, 0.0, 210.0, 2.02, 41.93, 0.4},
    {"", 1000, "BRAR (U)", 43.92, 1.22, 0.6, 0.26, 44.52, 1.21, 170.0, 2.1, 33.88, 0.42},
    {"", 1000, "BRAR (T)", 13.23, 0.49, 0.1, 0.06, 13.32, 0.49, 102.0, 3.31, 20.38, 0.66},
    {"", 1000, "N0", 26.03, 1.03, 0.57, 0.07, 26.59, 1.04, 128.0, 4.04, 25.48, 0.81},
    {"", 1000, "N1", 28.11, 1.23, 34.54, 1.05, 62.65, 1.5, 192.0, 3.66, 38.21, 0.73},
    {"", 1000, "R0", 29.64, 1.1, 0.62, 0.07, 30.27, 1.09, 135.0, 3.77, 26.98, 0.75},
    {"", 1000, "R1", 37.76, 1.2, 18.41, 1.18, 56.17, 1.78, 188.0, 3.31, 37.42, 0.66},
    {"", 1000, "PTW", 40.25, 1.26, 0.58, 0.08, 40.83, 1.25, 165.0, 2.57, 32.8, 0.51},
    {"", 1000, "RPW", 30.39, 1.21, 0.85, 0.12, 31.24, 1.19, 138.0, 3.2, 27.59, 0.64},
    {"", 2000, "ER", 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, kNone, kNone, kNone, kNone},
    {"", 2000, "PBB", 78.24, 0.0, 0.0, 0.0, 78.24, 0.0, 288.0, 2.28, 28.72, 0.23},
    {"", 2000, "BRAR (U)", 45.72, 1.18, 0.51, 0.24, 46.23, 1.16, 235.0, 2.66, 23.45, 0.27},
    {"", 2000, "BRAR (T)", 15.46, 0.55, 0.09, 0.05, 15.55, 0.54, 144.0, 4.65, 14.31, 0.46},
    {"", 2000, "N0", 28.98, 0.94, 0.4, 0.04, 29.37, 0.93, 177.0, 5.35, 17.62, 0.53},
    {"", 2000, "N1", 34.87, 1.28, 34.35, 1.07, 69.22, 1.67, 274.0, 4.62, 27.36, 0.46},
    {"", 2000, "R0", 31.65, 1.07, 0.39, 0.05, 32.04, 1.07, 186.0, 5.05, 18.51, 0.51},
    {"", 2000, "R1", 42.11, 1.17, 17.84, 1.17, 59.95, 1.86, 258.0, 4.43, 25.73, 0.44},
    {"", 2000, "PTW", 41.76, 1.17, 0.39, 0.04, 42.16, 1.16, 221.0, 3.2, 22.1, 0.32},
    {"", 2000, "RPW", 31.05, 1.13, 0.69, 0.1, 31.74, 1.11, 190.0, 4.15, 18.91, 0.41},
};

const MetricRef kArrestMetrics[] = {
    {"ARREST", 86, "ER", 0.0, kNone, 0.0, kNone, 0.0, kNone, kNone, kNone, kNone, kNone},
    {"ARREST", 86, "PBB", 57.6, kNone, 0.0, kNone, 57.6, kNone, 32.0, kNone, 72.66, kNone},
    {"ARREST", 86, "BRAR (U)", 22.19, kNone, 0.16, kNone, 22.36, kNone, 20.0, kNone, 46.4, kNone},
    {"ARREST", 86, "BRAR (T)", 6.62, kNone, 0.06, kNone, 6.68, kNone, 12.0, kNone, 27.12, kNone},
    {"ARREST", 86, "N0", 27.94, kNone, 2.05, kNone, 29.99, kNone, 23.0, kNone, 52.63, kNone},
    {"ARREST", 86, "N1", 4.83, kNone, 32.86, kNone, 37.69, kNone, 26.0, kNone, 59.02, kNone},
    {"ARREST", 86, "R0", 19.65, kNone, 1.76, kNone, 21.4, kNone, 20.0, kNone, 45.61, kNone},
    {"ARREST", 86, "R1", 13.66, kNone, 29.06, kNone, 42.73, kNone, 27.0, kNone, 62.27, kNone},
    {"ARREST", 86, "PTW", 31.95, kNone, 0.96, kNone, 32.91, kNone, 24.0, kNone, 54.64, kNone},
    {"ARREST", 86, "RPW", 18.82, kNone, 1.44, kNone, 20.26, kNone, 18.0, kNone, 41.7, kNone},
};

const MetricRef kCalistoMetrics[] = {
    {"CALISTO", 360, "ER", 0.0, kNone, 0.0, kNone, 0.0, kNone, kNone, kNone, kNone, kNone},
    {"CALISTO", 360, "PBB", 70.03, kNone, 0.0, kNone, 70.03, kNone, 124.0, kNone, 68.55, kNone},
    {"CALISTO", 360, "BRAR (U)", 25.64, kNone, 0.51, kNone, 26.15, kNone, 98.0, kNone, 54.09, kNone},
    {"CALISTO", 360, "BRAR (T)", 4.13, kNone, 0.02, kNone, 4.15, kNone, 69.0, kNone, 37.87, kNone},
    {"CALISTO", 360, "N0", 22.0, kNone, 4.11, kNone, 26.12, kNone, 98.0, kNone, 54.38, kNone},
    {"CALISTO", 360, "N1", 24.83, kNone, 27.04, kNone, 51.87, kNone, 116.0, kNone, 63.95, kNone},
    {"CALISTO", 360, "R0", 7.26, kNone, 0.21, kNone, 7.47, kNone, 61.0, kNone, 33.44, kNone},
    {"CALISTO", 360, "R1", 7.42, kNone, 0.21, kNone, 7.64, kNone, 67.0, kNone, 36.84, kNone},
    {"CALISTO", 360, "PTW", 35.1, kNone, 2.77, kNone, 37.86, kNone, 106.0, kNone, 58.8, kNone},
    {"CALISTO", 360, "RPW", 7.56, kNone, 5.66, kNone, 13.22, kNone, 79.0, kNone, 43.76, kNone},
};

const OcRef kArrestOc[] = {
    {"ER", 0, 5.93, 5.93, 80.88, 79.94, 0.5, 0.0078},
    {"PBB", 2, 78.24, 5.83, 78.47, 0.42, 0.977, 0.0591},
    {"PBB", 32, 6.66, 4.17, 79.56, 74.34, 0.628, 0.0078},
    {"PBB", 29, 4.82, 7.06, 71.86, 79.71, 0.663, 0.0078},
    {"BRAR (U)", 2, 20.86, 0.64, 74.82, 40.71, 0.835, 0.0113},
    {"BRAR (U)", 20, 13.83, 2.7, 77.97, 66.21, 0.735, 0.0079},
    {"BRAR (U)", 29, 4.38, 9.9, 73.8, 80.14, 0.649, 0.0078},
    {"BRAR (T)", 2, 9.95, 4.1, 80.78, 74.03, 0.691, 0.0081},
    {"BRAR (T)", 12, 9.19, 4.21, 80.31, 73.79, 0.685, 0.008},
    {"BRAR (T)", 29, 4.4, 7.67, 76.38, 80.65, 0.615, 0.0079},
    {"N0", 2, kNone, 5.94, kNone, 79.52, 0.393, 0.009},
    {"N0", 23, kNone, 5.52, kNone, 79.15, 0.399, 0.0091},
    {"N0", 29, kNone, 3.59, kNone, 78.27, 0.415, 0.0087},
    {"N1", 2, 89.8, kNone, 94.79, kNone, 0.714, 0.053},
    {"N1", 26, 12.16, kNone, 81.86, kNone, 0.591, 0.0077},
    {"N1", 29, 4.96, kNone, 79.04, kNone, 0.581, 0.0077},
    {"R0", 2, kNone, 5.5, kNone, 77.74, 0.442, 0.0082},
    {"R0", 20, kNone, 5.75, kNone, 79.07, 0.442, 0.008},
    {"R0", 29, kNone, 3.93, kNone, 79.25, 0.446, 0.0078},
    {"R1", 2, 89.65, kNone, 94.84, kNone, 0.753, 0.0347},
    {"R1", 27, 11.37, kNone, 82.07, kNone, 0.609, 0.0075},
    {"R1", 29, 5.36, kNone, 78.42, kNone, 0.598, 0.0077},
    {"PTW", 2, 5.12, 4.51, 81.01, 78.84, 0.578, 0.0075},
    {"PTW", 24, 5.61, 4.41, 81.38, 79.12, 0.536, 0.0076},
    {"PTW", 29, 4.6, 5.87, 79.23, 81.65, 0.526, 0.0075},
    {"RPW", 2, 6.05, 4.42, 80.26, 76.87, 0.578, 0.0077},
    {"RPW", 18, 5.84, 4.52, 81.18, 78.45, 0.559, 0.0077},
    {"RPW", 29, 4.8, 5.66, 79.08, 81.42, 0.536, 0.0077},
};

const OcRef kCalistoOc[] = {
    {"ER", 0, 4.91, 4.9, 79.53, 79.53, 0.5, 0.0004},
    {"PBB", 2, 88.58, 11.74, 35.58, 12.15, 0.994, 0.0289},
    {"PBB", 124, 5.45, 4.71, 71.1, 81.57, 0.656, 0.0005},
    {"PBB", 120, 4.79, 5.24, 79.57, 67.91, 0.667, 0.0005},
    {"BRAR (U)", 2, 2.62, 16.94, 5.13, 76.12, 0.881, 0.0176},
    {"BRAR (U)", 98, 2.93, 6.55, 56.24, 80.63, 0.708, 0.0005},
    {"BRAR (U)", 120, 5.94, 3.07, 82.8, 71.1, 0.655, 0.0005},
    {"BRAR (T)", 2, 3.38, 6.39, 63.66, 81.21, 0.701, 0.0007},
    {"BRAR (T)", 69, 3.31, 6.02, 67.31, 81.89, 0.681, 0.0006},
    {"BRAR (T)", 120, 5.29, 3.7, 82.12, 73.15, 0.62, 0.0005},
    {"N0", 2, kNone, 5.25, kNone, 79.97, 0.723, 0.0016},
    {"N0", 98, kNone, 5.17, kNone, 79.86, 0.663, 0.0005},
    {"N0", 120, kNone, 3.51, kNone, 70.65, 0.624, 0.0004},
    {"N1", 2, 96.23, kNone, 94.17, kNone, 0.158, 0.0009},
    {"N1", 116, 7.92, kNone, 83.94, kNone, 0.363, 0.0003},
    {"N1", 120, 4.8, kNone, 75.5, kNone, 0.371, 0.0003},
    {"R0", 2, kNone, 5.75, kNone, 81.37, 0.672, 0.0007},
    {"R0", 61, kNone, 6.32, kNone, 81.39, 0.661, 0.0005},
    {"R0", 120, kNone, 3.48, kNone, 71.09, 0.599, 0.0004},
    {"R1", 2, 5.65, kNone, 78.79, kNone, 0.506, 0.0024},
    {"R1", 67, 5.28, kNone, 79.05, kNone, 0.505, 0.0004},
    {"R1", 120, 4.94, kNone, 79.45, kNone, 0.505, 0.0004},
    {"PTW", 2, 2.72, 6.12, 9.56, 74.53, 0.847, 0.0049},
    {"PTW", 106, 4.23, 5.52, 69.23, 80.31, 0.636, 0.0005},
    {"PTW", 120, 5.4, 4.41, 80.3, 72.88, 0.607, 0.0004},
    {"RPW", 2, 4.85, 5.43, 67.77, 75.95, 0.582, 0.0006},
    {"RPW", 79, 5.07, 5.24, 79.39, 80.12, 0.519, 0.0004},
    {"RPW", 120, 5.28, 5.38, 79.97, 79.45, 0.51, 0.0004},
};
}  // namespace

std::span<const MetricRef> reference_sweep() { return kTable1; }

std::span<const MetricRef> reference_metrics(std::string_view scenario) {
    if (scenario == "ARREST") return kArrestMetrics;
    if (scenario == "CALISTO") return kCalistoMetrics;
    return {};
}

std::span<const OcRef> reference_oc(std::string_view scenario) {
    if (scenario == "ARREST") return kArrestOc;
    if (scenario == "CALISTO") return kCalistoOc;
    return {};
}

const MetricRef* find_reference_metric(std::string_view scenario, int n, std::string_view design) {
    const auto rows = scenario.empty() ? reference_sweep() : reference_metrics(scenario);
    for (const auto& r : rows)
        if (r.n == n && r.design == design) return &r;
    return nullptr;
}

const OcRef* find_reference_oc(std::string_view scenario, std::string_view design, int slot) {
    int seen = 0;
    for (const auto& r : reference_oc(scenario)) {
        if (r.design != design) continue;
        if (r.burnin == 0 || seen++ == slot) return &r;
    }
    return nullptr;
}

std::optional<int> reference_formula_b(std::string_view scenario, std::string_view design) {
    for (const auto& r : reference_metrics(scenario))
        if (r.design == design && !std::isnan(r.b)) return static_cast<int>(r.b);
    return std::nullopt;
}

}  // namespace rarburn
