#pragma once

#include <json.hpp>

#include "percolab/certifier.hpp"
#include "percolab/experiment.hpp"
#include "percolab/lemma_report.hpp"
#include "percolab/percolator.hpp"

namespace percolab {

/// Version tag written at the top level of every JSON document.
inline constexpr const char* kSchema = "percolab/1";

nlohmann::json to_json(const PseudoRandomProfile& profile);
nlohmann::json to_json(const HdReport& report);
nlohmann::json to_json(const LemmaReport& report);
/// {rho, seed, retained_count, components, epochs}; epochs as [start, end) pairs.
nlohmann::json to_json(const PercolationOutcome& outcome);
nlohmann::json to_json(const SweepResult& result);
nlohmann::json to_json(const TrialSummary& summary);

/// Adds "schema" and the generator name to a top-level document.
nlohmann::json document(nlohmann::json body);

}  // namespace percolab
