#pragma once

#include <string>
#include <string_view>

#include "vmplace/instance.hpp"

namespace vmp {

// Instance files:  {"servers": [{"cpu": x, "mem": y}, ...], "vms": [...],
//                   "alpha": a, "beta": b}
// Placement files: {"assign": [s1, ..., sn]}, one-based server indices.
//
// Serialization is deterministic: equal values always produce equal bytes.
// Parsing throws Error(parse) for malformed JSON, a wrong shape, or values
// that violate the problem invariants.

std::string problem_to_json(const PlacementProblem& p);
PlacementProblem problem_from_json(std::string_view text);

std::string placement_to_json(const Placement& s);
// Checks the indices against the problem.
Placement placement_from_json(std::string_view text, const PlacementProblem& p);

// File helpers; both throw Error(io).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace vmp
