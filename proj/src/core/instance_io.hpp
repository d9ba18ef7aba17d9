#pragma once

#include <string>

#include "core/instance.hpp"

namespace aoc {

// Instance file format: JSON with top-level N, T, the social block list,
// and per-agent tables aligned with the feasible-control lists. The schema
// is documented in the README; read -> write -> read is value-identical.
std::string instance_to_json(const OcInstance& instance);
OcInstance instance_from_json(const std::string& text);

OcInstance read_instance(const std::string& path);
void write_instance(const OcInstance& instance, const std::string& path);

// Per-agent trajectory list as JSON (used for solver solution output).
std::string solution_to_json(const OcInstance& instance,
                             const std::vector<Trajectory>& x, double value);

} // namespace aoc
