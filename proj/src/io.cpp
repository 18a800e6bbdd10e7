#include "szegolab/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace szegolab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_cvec(const CVec& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += format_g17(v(i).real());
        out += v(i).imag() < 0 ? '-' : '+';
        out += format_g17(std::abs(v(i).imag()));
        out += 'i';
    }
    return out;
}

CVec parse_cvec(const std::string& text) {
    std::vector<cplx> vals;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ';')) {
        if (piece.empty()) continue;
        // forms: a, a+bi, a-bi, bi
        double re = 0.0, im = 0.0;
        char tail = 0;
        if (std::sscanf(piece.c_str(), "%lf%lf%c", &re, &im, &tail) == 3 && tail == 'i') {
            // a+bi
        } else if (std::sscanf(piece.c_str(), "%lf%c", &re, &tail) == 2 && tail == 'i') {
            im = re;
            re = 0.0;
        } else if (std::sscanf(piece.c_str(), "%lf", &re) == 1) {
            im = 0.0;
        } else {
            throw Error("parse-failure", "bad complex component '" + piece + "'");
        }
        vals.emplace_back(re, im);
    }
    if (vals.empty()) throw Error("parse-failure", "empty vector literal");
    CVec v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v(i) = vals[i];
    return v;
}

std::map<std::string, std::string> parse_key_value(std::istream& is) {
    std::map<std::string, std::string> out;
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (!trim(line).empty())
                throw Error("parse-failure", "expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw Error("parse-failure", "empty key in '" + line + "'");
        out[key] = val;
    }
    return out;
}

std::string serialize_domain_spec(const DomainSpec& spec) {
    std::ostringstream os;
    switch (spec.kind()) {
        case DomainKind::UnitBall:
            os << "kind = ball\n";
            break;
        case DomainKind::BumpedBall:
            os << "kind = bumped-ball\n";
            break;
        case DomainKind::ReinhardtProfile:
            os << "kind = reinhardt\n";
            break;
        case DomainKind::Siegel:
            os << "kind = siegel\n";
            break;
    }
    os << "n = " << spec.n() << '\n';
    if (spec.kind() == DomainKind::BumpedBall)
        os << "epsilon = " << format_g17(spec.epsilon()) << '\n';
    if (spec.kind() == DomainKind::ReinhardtProfile) {
        const auto& c = spec.profile_coeffs();
        os << "coeff_rows = " << c.rows() << '\n';
        os << "coeff_cols = " << c.cols() << '\n';
        for (Eigen::Index i = 0; i < c.rows(); ++i) {
            os << "coeff_row_" << i << " =";
            for (Eigen::Index j = 0; j < c.cols(); ++j) os << ' ' << format_g17(c(i, j));
            os << '\n';
        }
    }
    return os.str();
}

DomainSpec parse_domain_spec(const std::string& text) {
    std::istringstream is(text);
    const auto kv = parse_key_value(is);
    const auto get = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw Error("parse-failure", "missing key '" + key + "'");
        return it->second;
    };
    const std::string kind = get("kind");
    const int n = kv.count("n") ? std::stoi(get("n")) : 2;
    if (kind == "ball") return DomainSpec::unit_ball(n);
    if (kind == "bumped-ball") return DomainSpec::bumped_ball(std::stod(get("epsilon")), n);
    if (kind == "siegel") return DomainSpec::siegel(n);
    if (kind == "reinhardt") {
        const int rows = std::stoi(get("coeff_rows"));
        const int cols = std::stoi(get("coeff_cols"));
        Eigen::MatrixXd c(rows, cols);
        for (int i = 0; i < rows; ++i) {
            std::istringstream row(get("coeff_row_" + std::to_string(i)));
            for (int j = 0; j < cols; ++j)
                if (!(row >> c(i, j)))
                    throw Error("parse-failure", "short coefficient row " + std::to_string(i));
        }
        return DomainSpec::reinhardt_profile(c);
    }
    throw Error("parse-failure", "unknown domain kind '" + kind + "'");
}

DomainSpec domain_from_name(const std::string& name, double epsilon, int n) {
    if (name == "ball") return DomainSpec::unit_ball(n);
    if (name == "bumped-ball") return DomainSpec::bumped_ball(epsilon, n);
    if (name == "siegel") return DomainSpec::siegel(n);
    throw Error("parse-failure", "unknown domain '" + name + "'");
}

void write_scaling_csv(std::ostream& os, const std::vector<ScalingReport>& reports) {
    os << "j,delta,eta,residual,opnorm(Q-I)\n";
    for (const auto& r : reports)
        os << r.j << ',' << format_g17(r.delta) << ',' << format_g17(r.eta) << ','
           << format_g17(r.residual) << ',' << format_g17(r.q_deviation) << '\n';
}

void write_curvature_csv(std::ostream& os, const std::vector<CurvatureReport>& reports) {
    os << "z,X,tau,g,beta,R,Ric,tail_bound\n";
    for (const auto& r : reports)
        os << format_cvec(r.z) << ',' << format_cvec(r.X) << ',' << format_g17(r.tau) << ','
           << format_g17(r.g) << ',' << format_g17(r.beta) << ',' << format_g17(r.R) << ','
           << format_g17(r.Ric) << ',' << format_g17(r.tail_bound) << '\n';
}

}  // namespace szegolab
