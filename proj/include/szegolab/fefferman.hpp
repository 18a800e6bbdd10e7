#pragma once

#include <functional>
#include <vector>

#include "szegolab/domain.hpp"

namespace szegolab {

/// Fefferman surface-measure density at a boundary point, relative to
/// Euclidean surface measure: w = c_n M^{1/(n+1)} / |grad r|_R.
struct MeasureDensity {
    double bordered_det = 0.0;  // M = -det of the bordered Hessian
    double density = 0.0;       // w
    double c_n = 1.0;
};

/// -det [[0, r_jbar], [r_i, r_ijbar]] ((n+1) x (n+1)).
double bordered_determinant(const DefiningFunctionJet& jet);

MeasureDensity fefferman_density(const DefiningFunctionJet& jet, double c_n = 1.0);

/// Max over the sample of the relative deviation of the density computed
/// with r and with h*r. h supplies exact jets.
double independence_check(const DomainSpec& spec,
                          const std::function<ScalarJet(const CVec&)>& h,
                          const std::vector<CVec>& sample, double c_n = 1.0);

}  // namespace szegolab
