#pragma once

// Chi-square machinery for the statistical acceptance checks. Critical
// values are embedded for df <= 120 at significance 0.05 / 0.01 / 0.001;
// larger df falls back to the Wilson-Hilferty cube approximation, keeping
// the library free of a statistics dependency.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cardgroup/errors.hpp"

namespace cardgroup {

struct ChiSquareResult {
    std::size_t cells = 0;
    double statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double significance = 0.0;
    double critical_value = 0.0;
    bool pass = false;
};

namespace detail {

// Upper critical values, df = 1..120 (row-major per significance).
inline constexpr std::array<double, 120> kCritical05 = {
    3.841459, 5.991465, 7.814728, 9.487729, 11.070498, 12.591587,
    14.067140, 15.507313, 16.918978, 18.307038, 19.675138, 21.026070,
    22.362032, 23.684791, 24.995790, 26.296228, 27.587112, 28.869299,
    30.143527, 31.410433, 32.670573, 33.924438, 35.172462, 36.415029,
    37.652484, 38.885139, 40.113272, 41.337138, 42.556968, 43.772972,
    44.985343, 46.194260, 47.399884, 48.602367, 49.801850, 50.998460,
    52.192320, 53.383541, 54.572228, 55.758479, 56.942387, 58.124038,
    59.303512, 60.480887, 61.656233, 62.829620, 64.001112, 65.170769,
    66.338649, 67.504807, 68.669294, 69.832160, 70.993453, 72.153216,
    73.311493, 74.468324, 75.623748, 76.777803, 77.930524, 79.081944,
    80.232098, 81.381015, 82.528727, 83.675261, 84.820645, 85.964907,
    87.108072, 88.250164, 89.391208, 90.531225, 91.670239, 92.808270,
    93.945340, 95.081467, 96.216671, 97.350970, 98.484383, 99.616927,
    100.748619, 101.879474, 103.009509, 104.138738, 105.267177, 106.394840,
    107.521741, 108.647893, 109.773309, 110.898003, 112.021986, 113.145270,
    114.267868, 115.389790, 116.511047, 117.631651, 118.751612, 119.870939,
    120.989644, 122.107735, 123.225221, 124.342113, 125.458419, 126.574148,
    127.689308, 128.803908, 129.917955, 131.031458, 132.144425, 133.256862,
    134.368777, 135.480178, 136.591071, 137.701464, 138.811363, 139.920774,
    141.029704, 142.138160, 143.246147, 144.353672, 145.460740, 146.567358};

inline constexpr std::array<double, 120> kCritical01 = {
    6.634897, 9.210340, 11.344867, 13.276704, 15.086272, 16.811894,
    18.475307, 20.090235, 21.665994, 23.209251, 24.724970, 26.216967,
    27.688250, 29.141238, 30.577914, 31.999927, 33.408664, 34.805306,
    36.190869, 37.566235, 38.932173, 40.289360, 41.638398, 42.979820,
    44.314105, 45.641683, 46.962942, 48.278236, 49.587884, 50.892181,
    52.191395, 53.485772, 54.775540, 56.060909, 57.342073, 58.619215,
    59.892500, 61.162087, 62.428121, 63.690740, 64.950071, 66.206236,
    67.459348, 68.709513, 69.956832, 71.201400, 72.443307, 73.682639,
    74.919474, 76.153891, 77.385962, 78.615756, 79.843338, 81.068772,
    82.292117, 83.513430, 84.732766, 85.950176, 87.165711, 88.379419,
    89.591344, 90.801532, 92.010024, 93.216860, 94.422079, 95.625719,
    96.827816, 98.028403, 99.227515, 100.425184, 101.621441, 102.816314,
    104.009834, 105.202028, 106.392923, 107.582545, 108.770919, 109.958069,
    111.144019, 112.328793, 113.512410, 114.694895, 115.876266, 117.056544,
    118.235749, 119.413900, 120.591015, 121.767111, 122.942207, 124.116319,
    125.289463, 126.461656, 127.632913, 128.803249, 129.972679, 131.141217,
    132.308877, 133.475672, 134.641617, 135.806723, 136.971004, 138.134471,
    139.297137, 140.459013, 141.620111, 142.780442, 143.940016, 145.098844,
    146.256938, 147.414305, 148.570958, 149.726905, 150.882155, 152.036719,
    153.190604, 154.343821, 155.496377, 156.648281, 157.799541, 158.950166};

inline constexpr std::array<double, 120> kCritical001 = {
    10.827566, 13.815511, 16.266236, 18.466827, 20.515006, 22.457744,
    24.321886, 26.124482, 27.877165, 29.588298, 31.264134, 32.909490,
    34.528179, 36.123274, 37.697298, 39.252355, 40.790217, 42.312396,
    43.820196, 45.314747, 46.797038, 48.267942, 49.728232, 51.178598,
    52.619656, 54.051962, 55.476020, 56.892285, 58.301173, 59.703064,
    61.098306, 62.487219, 63.870099, 65.247217, 66.618829, 67.985168,
    69.346452, 70.702887, 72.054663, 73.401958, 74.744938, 76.083763,
    77.418578, 78.749524, 80.076732, 81.400326, 82.720423, 84.037134,
    85.350565, 86.660815, 87.967980, 89.272151, 90.573412, 91.871847,
    93.167533, 94.460545, 95.750954, 97.038829, 98.324234, 99.607233,
    100.887885, 102.166248, 103.442377, 104.716325, 105.988143, 107.257880,
    108.525582, 109.791296, 111.055066, 112.316932, 113.576936, 114.835117,
    116.091513, 117.346161, 118.599095, 119.850350, 121.099959, 122.347954,
    123.594366, 124.839224, 126.082558, 127.324397, 128.564766, 129.803693,
    131.041204, 132.277323, 133.512074, 134.745481, 135.977567, 137.208354,
    138.437864, 139.666117, 140.893134, 142.118935, 143.343540, 144.566966,
    145.789233, 147.010358, 148.230359, 149.449253, 150.667056, 151.883784,
    153.099453, 154.314080, 155.527677, 156.740261, 157.951845, 159.162444,
    160.372071, 161.580740, 162.788463, 163.995253, 165.201123, 166.406085,
    167.610151, 168.813332, 170.015640, 171.217086, 172.417682, 173.617436};

// Standard normal upper quantiles for the Wilson-Hilferty fallback.
inline double z_for(double significance) {
    if (significance == 0.05) return 1.6448536269514722;
    if (significance == 0.01) return 2.3263478740408408;
    if (significance == 0.001) return 3.0902323061678132;
    throw std::invalid_argument("supported significance levels: 0.05, 0.01, 0.001");
}

}  // namespace detail

inline double chi_square_critical(std::size_t df, double significance) {
    if (df == 0) throw std::invalid_argument("zero degrees of freedom");
    if (df <= 120) {
        if (significance == 0.05) return detail::kCritical05[df - 1];
        if (significance == 0.01) return detail::kCritical01[df - 1];
        if (significance == 0.001) return detail::kCritical001[df - 1];
        throw std::invalid_argument("supported significance levels: 0.05, 0.01, 0.001");
    }
    const double z = detail::z_for(significance);
    const double d = static_cast<double>(df);
    const double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
    return d * t * t * t;
}

// Goodness of fit against the uniform distribution over the cells. Requires
// the expected count per cell to reach min_expected.
inline ChiSquareResult chi_square_goodness_of_fit(const std::vector<std::size_t>& counts,
                                                  double significance,
                                                  double min_expected = 20.0) {
    if (counts.size() < 2) throw InsufficientSamples("need at least two cells");
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    if (expected < min_expected)
        throw InsufficientSamples("expected count per cell " + std::to_string(expected) +
                                  " below " + std::to_string(min_expected));
    double stat = 0.0;
    for (std::size_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    ChiSquareResult r;
    r.cells = counts.size();
    r.statistic = stat;
    r.degrees_of_freedom = counts.size() - 1;
    r.significance = significance;
    r.critical_value = chi_square_critical(r.degrees_of_freedom, significance);
    r.pass = stat < r.critical_value;
    return r;
}

// Independence test on an r x c contingency table. Rows or columns whose
// totals are zero are dropped before computing expectations.
inline ChiSquareResult chi_square_independence(const std::vector<std::vector<std::size_t>>& table,
                                               double significance, double min_expected = 5.0) {
    if (table.empty()) throw InsufficientSamples("empty contingency table");
    const std::size_t cols = table.front().size();
    for (const auto& row : table)
        if (row.size() != cols) throw std::invalid_argument("ragged contingency table");

    std::vector<double> row_totals, col_totals(cols, 0.0);
    double total = 0.0;
    std::vector<std::vector<double>> live;
    for (const auto& row : table) {
        double rt = 0.0;
        for (std::size_t j = 0; j < cols; ++j) rt += static_cast<double>(row[j]);
        if (rt == 0.0) continue;
        live.emplace_back(row.begin(), row.end());
        row_totals.push_back(rt);
        for (std::size_t j = 0; j < cols; ++j) col_totals[j] += static_cast<double>(row[j]);
        total += rt;
    }
    std::vector<std::size_t> live_cols;
    for (std::size_t j = 0; j < cols; ++j)
        if (col_totals[j] > 0.0) live_cols.push_back(j);

    if (live.size() < 2 || live_cols.size() < 2)
        throw InsufficientSamples("contingency table needs two live rows and columns");

    double stat = 0.0;
    for (std::size_t i = 0; i < live.size(); ++i) {
        for (std::size_t j : live_cols) {
            const double expected = row_totals[i] * col_totals[j] / total;
            if (expected < min_expected)
                throw InsufficientSamples("expected cell count " + std::to_string(expected) +
                                          " below " + std::to_string(min_expected));
            const double d = live[i][j] - expected;
            stat += d * d / expected;
        }
    }
    ChiSquareResult r;
    r.cells = live.size() * live_cols.size();
    r.statistic = stat;
    r.degrees_of_freedom = (live.size() - 1) * (live_cols.size() - 1);
    r.significance = significance;
    r.critical_value = chi_square_critical(r.degrees_of_freedom, significance);
    r.pass = stat < r.critical_value;
    return r;
}

}  // namespace cardgroup
