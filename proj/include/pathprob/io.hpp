#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pathprob/axioms.hpp"
#include "pathprob/experiments.hpp"
#include "pathprob/spectral.hpp"

namespace pathprob {

using nlohmann::json;

// Reports. Field names are part of the external contract.
json to_json(const InvariantVector& v);
json to_json(const AxiomReport& report);
json to_json(const SorkinReport& report);
json to_json(const BranchFit& fit);

// Spectral measures: { "n": int, "atoms": [ { "w": real, "alpha": [real…] } ] }.
json to_json(const SpectralMeasure& m);
SpectralMeasure spectral_measure_from_json(const json& j);

// Configuration objects. All parse failures throw Error(InvalidConfig).
KernelBranch kernel_branch_from_string(std::string_view name);
std::string_view to_string(KernelBranch branch);
ParticleParams particle_from_json(const json& j);
SlitExperiment slit_experiment_from_json(const json& j);
LatticeSpec lattice_from_json(const json& j);
Event event_from_json(const json& j);

/// Reads and parses a JSON file; InvalidConfig on I/O or syntax errors.
json load_json_file(const std::string& path);

/// `x,intensity` header, one row per point, 17 significant digits.
void write_pattern_csv(std::ostream& out, const Pattern& pattern);
std::string pattern_csv(const Pattern& pattern);
/// Strict reader: exact header, two numeric fields per row, at least one row.
Pattern read_pattern_csv(std::istream& in);
Pattern load_pattern_csv(const std::string& path);

/// printf("%.17g"), locale-independent for the characters produced.
std::string format_double(double value);

}  // namespace pathprob
