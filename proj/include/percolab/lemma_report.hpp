#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

enum class LemmaId { expansion, variance, xi_count, outer_complement, inclusion_exclusion, binomial_tail };

std::string_view to_string(LemmaId id) noexcept;

/// A violating object: a vertex set, vertex or pair, with the measured
/// value and the bound it broke. `details` carries whatever else is needed
/// to replay the violation (stream seed, prefix length, ...).
struct LemmaWitness {
  std::vector<Vertex> vertices;
  double measured = 0;
  double bound = 0;
  std::map<std::string, double> details;
};

/// Verdict of one bound checker. `measured`/`bound` describe the tightest
/// instance examined (or the witness when the check failed). `extra` holds
/// secondary quantities reported alongside the main bound.
struct LemmaReport {
  LemmaId id = LemmaId::expansion;
  bool passed = false;
  std::size_t checked_count = 0;
  std::optional<LemmaWitness> witness;
  std::map<std::string, double> parameters;
  double measured = 0;
  double bound = 0;
  std::map<std::string, double> extra;
};

}  // namespace percolab
