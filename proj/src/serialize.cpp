#include "percolab/serialize.hpp"

#include <string>

#include "percolab/rng.hpp"

namespace percolab {

using nlohmann::json;

namespace {

json optional_vertex(const std::optional<Vertex>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const PseudoRandomProfile& profile) {
  return {{"n", profile.n},
          {"p", profile.p},
          {"a_n", profile.a_n},
          {"b_n", profile.b_n},
          {"min_degree", profile.min_degree},
          {"max_degree", profile.max_degree},
          {"max_codegree", profile.max_codegree},
          {"codegree_pair", {profile.codegree_u, profile.codegree_v}},
          {"codegree_mode", std::string(to_string(profile.codegree_mode))},
          {"a1", profile.a1},
          {"a2", profile.a2},
          {"a3", profile.a3}};
}

json to_json(const HdReport& report) {
  json out = {{"p", report.p},
              {"beta", report.beta},
              {"subset_fraction", report.subset_fraction},
              {"subset_size", report.subset_size},
              {"trials", report.trials},
              {"adversarial_subsets", report.adversarial_subsets},
              {"worst_ratio", report.worst_ratio},
              {"falsified", report.falsified},
              {"witness", nullptr}};
  if (report.witness) {
    const auto& w = *report.witness;
    out["witness"] = {{"subset_seed", w.subset_seed ? json(*w.subset_seed) : json(nullptr)},
                      {"adversarial_root", optional_vertex(w.adversarial_root)},
                      {"vertex", w.vertex},
                      {"degree_in_subset", w.degree_in_subset},
                      {"subset_size", w.subset_size}};
  }
  return out;
}

json to_json(const LemmaReport& report) {
  json out = {{"lemma_id", std::string(to_string(report.id))},
              {"passed", report.passed},
              {"checked_count", report.checked_count},
              {"witness", nullptr},
              {"parameters", report.parameters},
              {"measured", report.measured},
              {"bound", report.bound},
              {"extra", report.extra}};
  if (report.witness) {
    out["witness"] = {{"vertices", report.witness->vertices},
                      {"measured", report.witness->measured},
                      {"bound", report.witness->bound},
                      {"details", report.witness->details}};
  }
  return out;
}

json to_json(const PercolationOutcome& outcome) {
  json epochs = json::array();
  for (const auto& e : outcome.epochs) epochs.push_back({e.start, e.end});
  return {{"rho", outcome.rho},
          {"seed", outcome.seed},
          {"retained_count", outcome.retained.size()},
          {"components", outcome.components},
          {"epochs", std::move(epochs)}};
}

json to_json(const SweepResult& result) {
  json aggregates = json::array();
  for (const auto& a : result.aggregates)
    aggregates.push_back({{"c", a.c},
                          {"rho", a.rho},
                          {"runs", a.runs},
                          {"mean_l1", a.mean_l1},
                          {"median_l1", a.median_l1},
                          {"mean_l2", a.mean_l2},
                          {"median_l2", a.median_l2},
                          {"mean_retained", a.mean_retained},
                          {"giant_fraction", a.giant_fraction},
                          {"l2_within_fraction", a.l2_within_fraction}});
  return {{"graph", result.graph},
          {"n", result.n},
          {"p", result.p},
          {"epsilon", result.epsilon},
          {"log_constant", result.log_constant},
          {"giant_threshold", result.giant_threshold},
          {"l2_bound", result.l2_bound},
          {"profile", to_json(result.profile)},
          {"runs", result.runs.size()},
          {"aggregates", std::move(aggregates)},
          {"c_star", result.c_star ? json(*result.c_star) : json(nullptr)}};
}

json to_json(const TrialSummary& s) {
  json runs = json::array();
  for (const auto& r : s.runs) {
    json row = {{"seed", r.seed}, {"retained", r.retained}, {"L1", r.l1}, {"L2", r.l2}};
    if (r.outer_complement_passed) {
      row["outer_complement"] = {{"passed", *r.outer_complement_passed},
                                 {"size", r.outer_complement_size},
                                 {"bound", r.outer_complement_bound}};
    }
    runs.push_back(std::move(row));
  }
  json out = {{"kind", std::string(to_string(s.kind))},
              {"n", s.n},
              {"p", s.p},
              {"epsilon", s.epsilon},
              {"rho", s.rho},
              {"log_constant", s.log_constant},
              {"giant_threshold", s.giant_threshold},
              {"log_bound", s.log_bound},
              {"log_squared", s.log_squared},
              {"giant_fraction", s.giant_fraction},
              {"l2_within_fraction", s.l2_within_fraction},
              {"l2_log_squared_fraction", s.l2_log_squared_fraction},
              {"l1_within_fraction", s.l1_within_fraction},
              {"l1_below_giant_fraction", s.l1_below_giant_fraction},
              {"max_l1", s.max_l1},
              {"median_l1", s.median_l1},
              {"median_l2", s.median_l2},
              {"outer_complement_checked", s.outer_complement_checked},
              {"outer_complement_passed", s.outer_complement_passed},
              {"profile", to_json(s.profile)},
              {"hd", s.hd ? to_json(*s.hd) : json(nullptr)},
              {"hd_falsified", s.hd_falsified},
              {"runs", std::move(runs)}};
  return out;
}

json document(json body) {
  body["schema"] = kSchema;
  body["prng"] = Rng::algorithm;
  return body;
}

}  // namespace percolab
