#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "szegolab/metric.hpp"
#include "szegolab/scaling.hpp"

namespace szegolab {

/// Plain-text key-value record: kind, n, epsilon, profile coefficients.
std::string serialize_domain_spec(const DomainSpec& spec);
DomainSpec parse_domain_spec(const std::string& text);

/// CLI shorthand: "ball", "bumped-ball" (uses epsilon), "siegel".
DomainSpec domain_from_name(const std::string& name, double epsilon, int n = 2);

/// Key-value config text: one `key = value` per line, '#' comments.
std::map<std::string, std::string> parse_key_value(std::istream& is);

std::string format_g17(double v);
std::string format_cvec(const CVec& v);  // semicolon-joined a+bi components
CVec parse_cvec(const std::string& text);

/// CSV: j,delta,eta,residual,opnorm(Q-I).
void write_scaling_csv(std::ostream& os, const std::vector<ScalingReport>& reports);
/// CSV: z,X,tau,g,beta,R,Ric,tail_bound.
void write_curvature_csv(std::ostream& os, const std::vector<CurvatureReport>& reports);

}  // namespace szegolab
