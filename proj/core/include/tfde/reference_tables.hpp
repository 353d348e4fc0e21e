#pragma once

#include <array>
#include <span>
#include <string_view>

namespace tfde::reference {

/// One published error column with its rate column (rates[i] is CR for
/// M[i] -> M[i+1]).
struct Column {
    double mu;
    std::array<double, 5> errors;
    std::array<double, 4> rates;
};

struct Table {
    std::string_view name;
    std::string_view example;
    std::size_t N;
    std::array<int, 5> M;
    std::span<const Column> columns;
};

inline constexpr std::array<int, 5> kMeshes{4, 8, 16, 32, 64};

inline constexpr std::array<Column, 1> kTable1{{
    {0.0, {1.2759e-02, 3.3749e-03, 8.7940e-04, 2.2284e-04, 5.6414e-05}, {1.9186, 1.9402, 1.9805, 1.9819}},
}};

// The CR entry of E_0 at M=16 is printed as 9.536; the errors give 0.954.
inline constexpr std::array<Column, 4> kTable2{{
    {0.0, {3.008e-02, 1.054e-02, 5.441e-03, 1.876e-03, 8.667e-04}, {1.513, 9.536, 1.536, 1.114}},
    {0.25, {9.521e-03, 1.412e-03, 4.112e-04, 1.391e-04, 6.425e-05}, {2.754, 1.779, 1.564, 1.114}},
    {0.5, {3.610e-03, 5.342e-04, 1.279e-04, 3.344e-05, 8.598e-06}, {2.757, 2.062, 1.936, 1.959}},
    {0.75, {1.597e-03, 2.401e-04, 5.678e-05, 1.513e-05, 4.055e-06}, {2.734, 2.080, 1.908, 1.900}},
}};

inline constexpr std::array<Column, 4> kTable3{{
    {0.0, {1.0160e+00, 9.7501e-01, 7.0054e-01, 3.2311e-01, 1.5301e-01}, {0.0594, 0.4769, 1.1164, 1.0783}},
    {0.5, {3.453e-02, 8.545e-03, 3.852e-03, 1.776e-03, 8.409e-04}, {2.015, 1.150, 1.117, 1.078}},
    {0.75, {1.531e-02, 2.245e-03, 6.809e-04, 2.000e-04, 6.234e-05}, {2.769, 1.721, 1.767, 1.682}},
    {1.0, {9.898e-03, 1.525e-03, 4.783e-04, 1.442e-04, 4.945e-05}, {2.699, 1.672, 1.730, 1.544}},
}};

inline constexpr Table kTables[] = {
    {"table1", "example1", 1000, kMeshes, kTable1},
    {"table2", "example2", 1300, kMeshes, kTable2},
    {"table3", "example3", 1300, kMeshes, kTable3},
};

/// Rate entries whose printed digits are known to be shifted: (table, column, index).
struct Misprint {
    std::string_view table;
    std::size_t column;
    std::size_t index;
    double corrected;
};

inline constexpr Misprint kMisprints[] = {{"table2", 0, 1, 0.9536}};

}  // namespace tfde::reference
