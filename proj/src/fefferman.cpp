#include "szegolab/fefferman.hpp"

#include <cmath>

namespace szegolab {

double bordered_determinant(const DefiningFunctionJet& jet) {
    const int n = jet.n();
    CMat B(n + 1, n + 1);
    B(0, 0) = 0.0;
    for (int j = 0; j < n; ++j) {
        B(0, j + 1) = std::conj(jet.grad_z(j));  // r_{jbar}
        B(j + 1, 0) = jet.grad_z(j);             // r_i
    }
    B.block(1, 1, n, n) = jet.hess_mixed;
    return -B.determinant().real();
}

MeasureDensity fefferman_density(const DefiningFunctionJet& jet, double c_n) {
    const int n = jet.n();
    MeasureDensity out;
    out.c_n = c_n;
    out.bordered_det = bordered_determinant(jet);
    if (out.bordered_det <= 0.0)
        throw Error("degenerate-levi", "bordered determinant is not positive");
    const double grad_norm = 2.0 * jet.grad_z.norm();  // |grad r|_R
    out.density = c_n * std::pow(out.bordered_det, 1.0 / (n + 1)) / grad_norm;
    return out;
}

double independence_check(const DomainSpec& spec,
                          const std::function<ScalarJet(const CVec&)>& h,
                          const std::vector<CVec>& sample, double c_n) {
    double worst = 0.0;
    for (const CVec& z : sample) {
        DefiningFunctionJet r = evaluate_jet(spec, z);
        DefiningFunctionJet hr = product_jet(h(z), r);
        const double w0 = fefferman_density(r, c_n).density;
        const double w1 = fefferman_density(hr, c_n).density;
        worst = std::max(worst, std::abs(w1 - w0) / std::abs(w0));
    }
    return worst;
}

}  // namespace szegolab
