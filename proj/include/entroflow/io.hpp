// Config parsing (JSON -> typed specs with key-path errors) and artifact
// emission: CSV series with a fixed 17-significant-digit format, JSON
// reports, and optional static SVG plots. Outputs carry no timestamps so
// identical configs produce byte-identical files.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "entroflow/functionals.hpp"
#include "entroflow/heatflow.hpp"
#include "entroflow/lsiopt.hpp"
#include "entroflow/space.hpp"
#include "entroflow/verify.hpp"

namespace entroflow {

std::string fmt17(double v);

SpaceSpec space_from_json(const nlohmann::json& j, const std::string& key_prefix);
FlowConfig flow_config_from_json(const nlohmann::json& j, const std::string& key_prefix);
std::vector<double> times_from_json(const nlohmann::json& j, const std::string& key_path);

// Initial density described by config: uniform, trig polynomial, gaussian
// bump, mixture of bumps, heat-kernel start, or a seeded random trig mix.
Density density_from_json(const WeightedSpace1D& space, const nlohmann::json& j,
                          const std::string& key_prefix, unsigned long long seed);

void write_space_csv(const std::string& path, const WeightedSpace1D& space);
void write_volumes_csv(const std::string& path, const WeightedSpace1D& space,
                       double center, const std::vector<double>& radii);
void write_flow_csv(const std::string& path, const WeightedSpace1D& space,
                    const FlowResult& flow);
void write_functionals_csv(const std::string& path, const FunctionalSeries& series);
void write_minimizer_csv(const std::string& path, const WeightedSpace1D& space,
                         const std::vector<double>& rho);

nlohmann::json check_to_json(const CheckResult& r);
void write_json(const std::string& path, const nlohmann::json& j);

// Minimal static line plot: one SVG per named series against t.
void write_series_svg(const std::string& path, const std::string& title,
                      const std::vector<double>& t, const std::vector<double>& y);

}  // namespace entroflow
