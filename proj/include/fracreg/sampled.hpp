#pragma once

#include <string>
#include <vector>

namespace fracreg {

/// Ordered abscissae with values, tagged with the evaluator that produced them.
struct SampledCurve {
    std::vector<double> x;
    std::vector<double> y;
    std::string provenance;
    double est_error = 0.0;  ///< uniform bound on the error of y, if known

    std::size_t size() const noexcept { return x.size(); }
};

}  // namespace fracreg
