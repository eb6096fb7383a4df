#pragma once

#include <array>
#include <string>

#include "teleopt/noise.hpp"
#include "teleopt/optimizer.hpp"

namespace teleopt {

/// Cubic coefficients per parameter, rows in param_names() order.
struct CoefficientTable {
    std::array<std::array<double, 4>, 27> rows{};  // p^3, p^2, p, constant
    std::array<double, 27> residuals{};            // zero where not applicable
};

/// The published fully-adaptive coefficient table for the given model.
/// Available for BitFlip, AmplitudeDamping and Depolarizing; PhaseFlip has no
/// published table and throws.
CoefficientTable load_reference_table(NoiseModel model);

/// Raw 27-vector from evaluating every table row at p (pre-projection).
ParamVector table_at(const CoefficientTable& table, double p);

/// Parse "parameter,p3,p2,p1,c0[,residual]" rows; order must match
/// param_names().
CoefficientTable parse_table_csv(const std::string& path);

void write_table_csv(const CoefficientTable& table, const std::string& path,
                     bool with_residuals);

}  // namespace teleopt
