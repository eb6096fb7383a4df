#include "teleopt/tables.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace teleopt {

namespace {

constexpr std::array<std::array<double, 4>, 27> kBitFlip = {{
    {{-3.19566, 4.47589, -2.05096, 0.34890}},  // phi
    {{-2.75823, 2.85939, -0.80722, 0.05076}},  // theta
    {{3.07688, -4.80518, 2.40834, -0.40830}},  // lambda
    {{-1.25059, 1.90817, -0.80286, 0.67329}},  // a_Re
    {{2.46227, -3.79581, 1.57566, -0.18197}},  // a_Im
    {{0.78856, -0.35731, -0.13478, 0.03160}},  // b_Re
    {{1.04767, -1.49070, 0.62490, -0.05020}},  // b_Im
    {{-1.42129, 1.37480, -0.33560, 0.01502}},  // c_Re
    {{-0.24185, 0.14827, 0.04126, 0.00547}},  // c_Im
    {{-1.03166, 1.32752, -0.38844, 0.59382}},  // d_Re
    {{4.33951, -6.40711, 2.60280, -0.27179}},  // d_Im
    {{-1.36861, 4.89742, -3.70071, 1.17404}},  // J0_00_Re
    {{1.02923, -1.46764, 0.38218, 0.04519}},  // J0_00_Im
    {{-1.74901, 2.01367, -0.58463, 0.02676}},  // J0_01_Re
    {{-0.65824, 0.79852, -0.21673, -0.00525}},  // J0_01_Im
    {{-1.70102, 2.79437, -0.95799, 0.03271}},  // J0_10_Re
    {{-1.57402, 2.36598, -0.87298, 0.02934}},  // J0_10_Im
    {{-1.39055, 2.42984, -1.22099, 1.00784}},  // J0_11_Re
    {{0.34971, 0.09438, -0.47051, 0.13094}},  // J0_11_Im
    {{0.57527, -0.86101, 0.62407, -0.11917}},  // J1_00_Re
    {{-1.24827, 0.86290, 0.02263, -0.01000}},  // J1_00_Im
    {{-0.08687, 0.34619, -0.29553, 0.01892}},  // J1_01_Re
    {{-0.14088, 0.47265, -0.29435, 0.02397}},  // J1_01_Im
    {{0.85304, -0.17969, -0.58972, 0.04944}},  // J1_10_Re
    {{-1.82525, 2.91298, -1.24804, 0.08751}},  // J1_10_Im
    {{-0.27887, 0.19052, 0.39792, -0.10734}},  // J1_11_Re
    {{0.39307, -1.83602, 1.21293, -0.08596}},  // J1_11_Im
}};

constexpr std::array<std::array<double, 4>, 27> kAmplitudeDamping = {{
    {{-3.23134, 4.29830, -1.25000, -0.04303}},  // phi
    {{-0.59474, 0.85622, -0.25179, -0.02840}},  // theta
    {{-1.45810, 1.46173, -0.04692, -0.02635}},  // lambda
    {{-1.44015, 1.55017, -0.05865, 0.68185}},  // a_Re
    {{7.79834, -11.18077, 4.16295, -0.25890}},  // a_Im
    {{-1.10491, 1.38771, -0.37876, -0.01559}},  // b_Re
    {{-1.16209, 1.32030, -0.32948, 0.00612}},  // b_Im
    {{-0.17175, 0.04318, 0.05307, 0.00335}},  // c_Re
    {{-0.21119, 0.18075, 0.03270, -0.03216}},  // c_Im
    {{-0.08703, 0.50701, -0.79097, 0.60592}},  // d_Re
    {{2.51441, -4.26052, 2.26491, -0.30296}},  // d_Im
    {{-0.33374, 0.72229, -0.44594, 0.96429}},  // J0_00_Re
    {{1.04365, -1.34519, 0.38789, 0.01670}},  // J0_00_Im
    {{-0.23821, 0.35202, -0.10401, -0.01349}},  // J0_01_Re
    {{-0.10246, 0.20890, -0.12498, 0.01963}},  // J0_01_Im
    {{0.27255, -0.39856, 0.11651, 0.01341}},  // J0_10_Re
    {{-0.23766, 0.47804, -0.29271, 0.05147}},  // J0_10_Im
    {{0.54378, -0.58491, 0.05423, 0.92038}},  // J0_11_Re
    {{3.57623, -4.48358, 0.93630, 0.11963}},  // J0_11_Im
    {{-0.96251, 2.16678, -1.28424, 0.09387}},  // J1_00_Re
    {{-1.80414, 2.89257, -1.00898, -0.07814}},  // J1_00_Im
    {{-0.02540, 0.01731, 0.01736, -0.00990}},  // J1_01_Re
    {{0.08683, -0.13175, 0.05424, -0.00290}},  // J1_01_Im
    {{-0.06653, 0.19122, -0.13316, 0.02229}},  // J1_10_Re
    {{-0.28118, 0.51619, -0.25638, 0.02811}},  // J1_10_Im
    {{0.34447, 0.51378, -0.84387, 0.10727}},  // J1_11_Re
    {{-2.29937, 3.60398, -1.25272, -0.05816}},  // J1_11_Im
}};

constexpr std::array<std::array<double, 4>, 27> kDepolarizing = {{
    {{2.07663, -1.56677, -0.26709, 0.19440}},  // phi
    {{-1.65785, 3.83734, -2.04913, 0.15462}},  // theta
    {{0.53181, -0.60673, 0.28908, -0.07386}},  // lambda
    {{2.14708, -3.16446, 0.66607, 0.65088}},  // a_Re
    {{-5.84633, 7.55918, -2.07774, -0.01125}},  // a_Im
    {{-0.16095, 0.13377, -0.06449, 0.00528}},  // b_Re
    {{-4.10010, 5.14140, -1.49738, 0.07053}},  // b_Im
    {{-0.09390, -0.51717, 0.49244, -0.05162}},  // c_Re
    {{1.35993, -1.97570, 0.53961, -0.01903}},  // c_Im
    {{2.13406, -2.99971, 0.80368, 0.63719}},  // d_Re
    {{2.45063, -2.75896, 0.67344, -0.01700}},  // d_Im
    {{3.21564, -3.23014, -0.85101, 1.00296}},  // J0_00_Re
    {{-0.42514, 0.91070, -0.57524, 0.10961}},  // J0_00_Im
    {{-0.20289, 0.36513, -0.17663, 0.01555}},  // J0_01_Re
    {{0.00641, 0.02784, -0.04757, 0.01604}},  // J0_01_Im
    {{-0.02901, -0.62196, 0.40364, -0.02699}},  // J0_10_Re
    {{-2.26739, 3.37979, -1.15590, 0.05136}},  // J0_10_Im
    {{-0.54610, 0.67453, -0.34442, 0.94700}},  // J0_11_Re
    {{2.48892, -3.29262, 1.25133, -0.09061}},  // J0_11_Im
    {{-0.64919, 0.86281, -0.19275, -0.05214}},  // J1_00_Re
    {{-1.46790, 2.57694, -1.29761, 0.16067}},  // J1_00_Im
    {{-0.02786, 0.05647, -0.02175, -0.00048}},  // J1_01_Re
    {{-0.22180, 0.32368, -0.14133, 0.01963}},  // J1_01_Im
    {{-4.38474, 6.95693, -2.51534, 0.08025}},  // J1_10_Re
    {{1.56049, -0.83828, -0.47893, 0.03398}},  // J1_10_Im
    {{0.99533, -1.44058, 0.46795, -0.03724}},  // J1_11_Re
    {{-1.02098, 3.11069, -2.05930, 0.23449}},  // J1_11_Im
}};

}  // namespace

CoefficientTable load_reference_table(NoiseModel model) {
    CoefficientTable t;
    switch (model) {
        case NoiseModel::BitFlip: t.rows = kBitFlip; return t;
        case NoiseModel::AmplitudeDamping: t.rows = kAmplitudeDamping; return t;
        case NoiseModel::Depolarizing: t.rows = kDepolarizing; return t;
        case NoiseModel::PhaseFlip: break;
    }
    throw std::invalid_argument("load_reference_table: no published table for " +
                                to_string(model));
}

ParamVector table_at(const CoefficientTable& table, double p) {
    ParamVector v{};
    for (int i = 0; i < 27; ++i) v[i] = eval_cubic(table.rows[i], p);
    return v;
}

CoefficientTable parse_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_table_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_table_csv: empty file " + path);
    CoefficientTable t;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= 27) throw std::runtime_error("parse_table_csv: too many rows in " + path);
        std::stringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');
        if (field != param_names()[row])
            throw std::runtime_error("parse_table_csv: row " + std::to_string(row) +
                                     " named '" + field + "', expected '" +
                                     param_names()[row] + "'");
        for (int c = 0; c < 4; ++c) {
            if (!std::getline(ss, field, ','))
                throw std::runtime_error("parse_table_csv: short row in " + path);
            t.rows[row][c] = std::stod(field);
        }
        if (std::getline(ss, field, ',')) t.residuals[row] = std::stod(field);
        ++row;
    }
    if (row != 27) throw std::runtime_error("parse_table_csv: expected 27 rows in " + path);
    return t;
}

void write_table_csv(const CoefficientTable& table, const std::string& path,
                     bool with_residuals) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_table_csv: cannot open " + path);
    out << (with_residuals ? "parameter,p3,p2,p1,c0,residual\n" : "parameter,p3,p2,p1,c0\n");
    char buf[32];
    for (int i = 0; i < 27; ++i) {
        out << param_names()[i];
        for (int c = 0; c < 4; ++c) {
            std::snprintf(buf, sizeof buf, "%.9g", table.rows[i][c]);
            out << ',' << buf;
        }
        if (with_residuals) {
            std::snprintf(buf, sizeof buf, "%.9g", table.residuals[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_table_csv: write failed for " + path);
}

}  // namespace teleopt
