#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "szegolab/domain.hpp"

namespace szegolab {

/// Sampled boundary profile curve of a complete Reinhardt domain in C^2:
/// t_k in [0, pi/2], (x, y) = (R cos t, R sin t) on {rho(x^2, y^2) = 0},
/// the surface Jacobian x y sqrt(x'^2 + y'^2), the Fefferman density, and
/// the combined quadrature weights.
struct ProfileCurve {
    DomainSpec spec;
    double c_n = 1.0;
    int resolution = 0;  // panels per smooth profile piece
    std::vector<double> t, x, y, jacobian, density, weight;
};

ProfileCurve build_profile_curve(const DomainSpec& spec, int resolution = 32,
                                 double c_n = 1.0);

/// Squared Hardy norm (2pi)^2 * integral of x^{2a1} y^{2a2} * density *
/// jacobian over the curve.
double monomial_norm_szego(const ProfileCurve& curve, int a1, int a2);

/// Squared Bergman norm: pi^2 * double integral of s1^a1 s2^a2 over
/// {rho < 0, s >= 0}, reduced to an outer quadrature in s2.
double monomial_norm_bergman(const DomainSpec& spec, int a1, int a2,
                             int resolution = 32);

/// |<z^alpha, z^beta>| / (|z^alpha| |z^beta|) in H^2, computed with an
/// explicit torus sum; zero to roundoff for distinct multi-indices.
double orthogonality_check(const ProfileCurve& curve, const std::array<int, 2>& alpha,
                           const std::array<int, 2>& beta, int angular_points = 0);

struct NormRow {
    int a1 = 0, a2 = 0;
    double hardy = 0.0, bergman = 0.0;
};

struct NormTable {
    std::string kind = "table";  // szego | bergman | table
    int n = 2;
    int degree = 0;
    double c_n = 1.0;
    std::vector<NormRow> rows;  // all |alpha| <= degree, lexicographic

    const NormRow& at(int a1, int a2) const;
};

/// All monomial norms with |alpha| <= degree; rows computed concurrently
/// when threads != 1 (0 = hardware concurrency).
NormTable build_norm_table(const DomainSpec& spec, int degree, double c_n = 1.0,
                           int resolution = 32, unsigned threads = 1);

/// Text format: header "kind n D c_n", then one "a1 a2 hardy bergman" line
/// per row with 17-significant-digit reals.
void write_norm_table(std::ostream& os, const NormTable& table);
NormTable read_norm_table(std::istream& is);

}  // namespace szegolab
