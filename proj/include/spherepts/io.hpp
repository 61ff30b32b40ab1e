#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "spherepts/baselines.hpp"
#include "spherepts/lattice.hpp"
#include "spherepts/sphere_stats.hpp"

namespace spherepts::io {

// Point-set CSV: first line "<dim>,<n>", then one line of dim integer
// coordinates per point, in the set's canonical order.
void write_point_set(std::ostream& out, const lattice::SolutionSet& s);
void write_point_set(const std::string& path, const lattice::SolutionSet& s);

// Parses the format above. Rejects rows of the wrong width and rows whose
// squared norm differs from n (DomainError).
lattice::SolutionSet read_point_set(std::istream& in);
lattice::SolutionSet read_point_set(const std::string& path);

// Pair-correlation CSV: header "t,count", then one row per t with A(n,t) > 0,
// increasing t.
void write_pair_correlation(std::ostream& out, const lattice::PairCorrelationTable& table);

// Histogram CSV: header "lo,hi,mass"; the overflow bin has hi = inf.
void write_histogram(std::ostream& out, const stats::Histogram& h);

// Ripley profile CSV: header "r,count,normalized".
void write_profile(std::ostream& out, const stats::RipleyProfile& p);

// Report JSON. Fields mirror StatsReport; statistics that were not computed
// are null. Floating values round-trip exactly.
nlohmann::json to_json(const stats::StatsReport& report);
nlohmann::json to_json(const baselines::MonteCarloSummary& summary);
nlohmann::json to_json(const Provenance& provenance);

void write_text(const std::string& path, const std::string& content);

}  // namespace spherepts::io
