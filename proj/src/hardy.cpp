#include "szegolab/hardy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "szegolab/fefferman.hpp"
#include "szegolab/quadrature.hpp"

namespace szegolab {

namespace {

void require_reinhardt_c2(const DomainSpec& spec) {
    if (!spec.is_reinhardt() || spec.n() != 2)
        throw Error("unsupported-spec", "monomial norms need a complete Reinhardt spec in C^2");
}

// t with y(t)^2 = s2 on the boundary curve, by bisection.
double curve_parameter_for_s2(const DomainSpec& spec, double s2) {
    auto f = [&](double t) {
        const double y = reinhardt_boundary_radius(spec, t) * std::sin(t);
        return y * y - s2;
    };
    double lo = 0.0, hi = kPi / 2;
    if (f(lo) >= 0.0 || f(hi) <= 0.0) return -1.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// s1 >= 0 with rho(s1, s2) = 0.
double profile_s1_root(const DomainSpec& spec, double s2) {
    if (spec.profile(0.0, s2).value >= 0.0) return 0.0;
    double lo = 0.0;
    const double r0 = reinhardt_boundary_radius(spec, 0.0);
    double hi = r0 * r0;
    for (int it = 0; spec.profile(hi, s2).value < 0.0; ++it) {
        if (it > 60) throw Error("root-finding-failure", "no upper bracket for s1 root");
        hi *= 2.0;
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (spec.profile(mid, s2).value < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct BergmanGrid {
    std::vector<double> s2, weight, s1max;
};

BergmanGrid build_bergman_grid(const DomainSpec& spec, int resolution) {
    require_reinhardt_c2(spec);
    const double r_top = reinhardt_boundary_radius(spec, kPi / 2);
    const double s2max = r_top * r_top;

    std::vector<double> pts{0.0};
    for (double s : spec.profile_breakpoints())
        if (s > 0.0 && s < s2max) pts.push_back(s);
    pts.push_back(s2max);
    std::sort(pts.begin(), pts.end());

    const GaussRule& rule = gauss_legendre(31);
    BergmanGrid grid;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double h = (pts[i + 1] - pts[i]) / resolution;
        for (int p = 0; p < resolution; ++p) {
            const double a = pts[i] + p * h;
            for (int k = 0; k < rule.nodes.size(); ++k) {
                const double s2 = a + 0.5 * h * (1.0 + rule.nodes(k));
                grid.s2.push_back(s2);
                grid.weight.push_back(0.5 * h * rule.weights(k));
                grid.s1max.push_back(profile_s1_root(spec, s2));
            }
        }
    }
    return grid;
}

double bergman_from_grid(const BergmanGrid& grid, int a1, int a2) {
    double sum = 0.0;
    for (size_t k = 0; k < grid.s2.size(); ++k)
        sum += grid.weight[k] * std::pow(grid.s2[k], a2) *
               std::pow(grid.s1max[k], a1 + 1);
    return kPi * kPi * sum / (a1 + 1);
}

}  // namespace

ProfileCurve build_profile_curve(const DomainSpec& spec, int resolution, double c_n) {
    require_reinhardt_c2(spec);
    if (resolution < 1) throw Error("unsupported-spec", "resolution must be positive");

    std::vector<double> pts{0.0};
    for (double s : spec.profile_breakpoints()) {
        const double tb = curve_parameter_for_s2(spec, s);
        if (tb > 0.0) pts.push_back(tb);
    }
    pts.push_back(kPi / 2);
    std::sort(pts.begin(), pts.end());

    ProfileCurve curve;
    curve.spec = spec;
    curve.c_n = c_n;
    curve.resolution = resolution;
    const GaussRule& rule = gauss_legendre(31);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double h = (pts[i + 1] - pts[i]) / resolution;
        for (int p = 0; p < resolution; ++p) {
            const double a = pts[i] + p * h;
            for (int k = 0; k < rule.nodes.size(); ++k) {
                const double t = a + 0.5 * h * (1.0 + rule.nodes(k));
                const double qw = 0.5 * h * rule.weights(k);
                const double R = reinhardt_boundary_radius(spec, t);
                const double ct = std::cos(t), st = std::sin(t);
                const double x = R * ct, y = R * st;
                const ProfileJet pj = spec.profile(x * x, y * y);
                // implicit differentiation of rho(x^2, y^2) = 0 along t
                const double Rp = R * (x * pj.d1 * st - y * pj.d2 * ct) /
                                  (x * pj.d1 * ct + y * pj.d2 * st);
                const double xp = Rp * ct - R * st, yp = Rp * st + R * ct;
                const double jac = x * y * std::hypot(xp, yp);

                CVec z(2);
                z << x, y;
                const double w = fefferman_density(evaluate_jet(spec, z), c_n).density;

                curve.t.push_back(t);
                curve.x.push_back(x);
                curve.y.push_back(y);
                curve.jacobian.push_back(jac);
                curve.density.push_back(w);
                curve.weight.push_back(qw * jac * w);
            }
        }
    }
    return curve;
}

double monomial_norm_szego(const ProfileCurve& curve, int a1, int a2) {
    if (a1 < 0 || a2 < 0) throw Error("unsupported-spec", "multi-index must be nonnegative");
    double sum = 0.0;
    for (size_t k = 0; k < curve.t.size(); ++k)
        sum += curve.weight[k] * std::pow(curve.x[k], 2 * a1) * std::pow(curve.y[k], 2 * a2);
    const double norm2 = 4.0 * kPi * kPi * sum;
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw Error("quadrature-nonconvergence", "Hardy norm did not evaluate to a positive real");
    return norm2;
}

double monomial_norm_bergman(const DomainSpec& spec, int a1, int a2, int resolution) {
    if (a1 < 0 || a2 < 0) throw Error("unsupported-spec", "multi-index must be nonnegative");
    const double norm2 = bergman_from_grid(build_bergman_grid(spec, resolution), a1, a2);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw Error("quadrature-nonconvergence", "Bergman norm did not evaluate to a positive real");
    return norm2;
}

double orthogonality_check(const ProfileCurve& curve, const std::array<int, 2>& alpha,
                           const std::array<int, 2>& beta, int angular_points) {
    const int deg = std::max({alpha[0], alpha[1], beta[0], beta[1]});
    const int N = angular_points > 0 ? angular_points : 2 * deg + 3;

    double radial = 0.0;
    for (size_t k = 0; k < curve.t.size(); ++k)
        radial += curve.weight[k] * std::pow(curve.x[k], alpha[0] + beta[0]) *
                  std::pow(curve.y[k], alpha[1] + beta[1]);

    cplx angular1 = 0.0, angular2 = 0.0;
    for (int j = 0; j < N; ++j) {
        const double th = 2.0 * kPi * j / N;
        angular1 += std::polar(1.0, (alpha[0] - beta[0]) * th);
        angular2 += std::polar(1.0, (alpha[1] - beta[1]) * th);
    }
    const cplx inner = radial * (2.0 * kPi / N) * (2.0 * kPi / N) * angular1 * angular2;
    const double na = monomial_norm_szego(curve, alpha[0], alpha[1]);
    const double nb = monomial_norm_szego(curve, beta[0], beta[1]);
    return std::abs(inner) / std::sqrt(na * nb);
}

const NormRow& NormTable::at(int a1, int a2) const {
    if (a1 < 0 || a2 < 0 || a1 + a2 > degree)
        throw Error("unsupported-spec", "multi-index outside table range");
    const size_t idx = static_cast<size_t>(a1) * (degree + 1) - a1 * (a1 - 1) / 2 + a2;
    return rows[idx];
}

NormTable build_norm_table(const DomainSpec& spec, int degree, double c_n, int resolution,
                           unsigned threads) {
    NormTable table;
    table.n = spec.n();
    table.degree = degree;
    table.c_n = c_n;
    for (int a1 = 0; a1 <= degree; ++a1)
        for (int a2 = 0; a1 + a2 <= degree; ++a2) table.rows.push_back({a1, a2, 0.0, 0.0});

    const ProfileCurve curve = build_profile_curve(spec, resolution, c_n);
    const BergmanGrid grid = build_bergman_grid(spec, resolution);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < table.rows.size(); i = next.fetch_add(1)) {
            NormRow& row = table.rows[i];
            row.hardy = monomial_norm_szego(curve, row.a1, row.a2);
            row.bergman = bergman_from_grid(grid, row.a1, row.a2);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return table;
}

void write_norm_table(std::ostream& os, const NormTable& table) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.17g", table.c_n);
    os << table.kind << ' ' << table.n << ' ' << table.degree << ' ' << buf << '\n';
    for (const NormRow& row : table.rows) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g", row.a1, row.a2, row.hardy,
                      row.bergman);
        os << buf << '\n';
    }
}

NormTable read_norm_table(std::istream& is) {
    NormTable table;
    std::string line;
    if (!std::getline(is, line)) throw Error("io-failure", "empty norm table");
    {
        std::istringstream head(line);
        if (!(head >> table.kind >> table.n >> table.degree >> table.c_n))
            throw Error("io-failure", "bad norm table header");
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        NormRow r;
        if (!(row >> r.a1 >> r.a2 >> r.hardy >> r.bergman))
            throw Error("io-failure", "bad norm table row");
        table.rows.push_back(r);
    }
    const size_t expected = static_cast<size_t>(table.degree + 1) * (table.degree + 2) / 2;
    if (table.rows.size() != expected)
        throw Error("io-failure", "norm table row count does not match degree");
    return table;
}

}  // namespace szegolab
