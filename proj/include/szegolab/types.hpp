#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <Eigen/Dense>

namespace szegolab {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Error with a stable machine-readable code ("zero-vector", "pole-proximity", ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

inline CVec unit_vector(int n, int i) {
    CVec e = CVec::Zero(n);
    e(i) = 1.0;
    return e;
}

/// Hermitian inner product <x, y> = sum x_i conj(y_i).
inline cplx hdot(const CVec& x, const CVec& y) { return y.dot(x); }

}  // namespace szegolab
