#include "spherepts/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "spherepts/errors.hpp"

namespace spherepts::io {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

std::int64_t parse_int(const std::string& s, int lineno) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("point set line " + std::to_string(lineno) + ": '" + s + "' is not an integer");
}

}  // namespace

void write_point_set(std::ostream& out, const lattice::SolutionSet& s) {
  out << s.dim << ',' << s.n << '\n';
  for (const auto& p : s.points) {
    for (int i = 0; i < s.dim; ++i) out << (i ? "," : "") << p.coords[i];
    out << '\n';
  }
}

void write_point_set(const std::string& path, const lattice::SolutionSet& s) {
  auto out = open_out(path);
  write_point_set(out, s);
}

lattice::SolutionSet read_point_set(std::istream& in) {
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) throw DomainError("point set: missing header line");
  const auto header = split(line);
  if (header.size() != 2) throw DomainError("point set: header must be '<dim>,<n>'");
  lattice::SolutionSet s;
  s.dim = static_cast<int>(parse_int(header[0], lineno));
  const auto n = parse_int(header[1], lineno);
  if (s.dim < 2 || s.dim > 4) throw DomainError("point set: dim must be 2, 3 or 4");
  if (n < 1) throw DomainError("point set: n must be positive");
  s.n = static_cast<std::uint64_t>(n);
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (static_cast<int>(cells.size()) != s.dim)
      throw DomainError("point set line " + std::to_string(lineno) + ": expected " +
                        std::to_string(s.dim) + " coordinates");
    lattice::LatticePoint p;
    for (int i = 0; i < s.dim; ++i) p.coords[i] = parse_int(cells[i], lineno);
    if (lattice::norm_squared(p) != static_cast<__int128>(s.n))
      throw DomainError("point set line " + std::to_string(lineno) + ": squared norm is not n");
    s.points.push_back(p);
  }
  return s;
}

lattice::SolutionSet read_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return read_point_set(in);
}

void write_pair_correlation(std::ostream& out, const lattice::PairCorrelationTable& table) {
  out << "t,count\n";
  for (const auto& [t, c] : table.entries) out << t << ',' << c << '\n';
}

void write_histogram(std::ostream& out, const stats::Histogram& h) {
  out << "lo,hi,mass\n";
  out.precision(17);
  for (std::size_t b = 0; b < h.masses.size(); ++b) {
    out << h.edges[b] << ',';
    if (b + 1 < h.edges.size())
      out << h.edges[b + 1];
    else
      out << "inf";
    out << ',' << h.masses[b] << '\n';
  }
}

void write_profile(std::ostream& out, const stats::RipleyProfile& p) {
  out << "r,count,normalized\n";
  out.precision(17);
  for (std::size_t i = 0; i < p.thresholds.size(); ++i)
    out << p.thresholds[i] << ',' << p.counts[i] << ',' << p.normalized[i] << '\n';
}

nlohmann::json to_json(const stats::StatsReport& r) {
  using nlohmann::json;
  json j;
  j["N"] = r.N;
  j["energy"] = r.energy ? json(*r.energy) : json(nullptr);
  j["energy_deviation"] = r.energy_deviation ? json(*r.energy_deviation) : json(nullptr);
  if (r.ripley) {
    j["ripley"] = {{"thresholds", r.ripley->thresholds},
                   {"counts", r.ripley->counts},
                   {"normalized", r.ripley->normalized}};
  } else {
    j["ripley"] = nullptr;
  }
  if (r.spacing) {
    j["spacing"] = {{"N", r.spacing->N},
                    {"raw", r.spacing->raw},
                    {"mean", r.spacing->mean()},
                    {"histogram",
                     {{"edges", r.spacing->histogram.edges},
                      {"masses", r.spacing->histogram.masses}}}};
  } else {
    j["spacing"] = nullptr;
  }
  j["min_spacing"] = r.min_spacing ? json(*r.min_spacing) : json(nullptr);
  if (r.covering) {
    j["covering_radius_estimate"] = {{"estimate", r.covering->estimate},
                                     {"error_bound", r.covering->error_bound},
                                     {"probes", r.covering->probes}};
  } else {
    j["covering_radius_estimate"] = nullptr;
  }
  j["discrepancy_estimate"] = r.discrepancy ? json(*r.discrepancy) : json(nullptr);
  return j;
}

nlohmann::json to_json(const baselines::MonteCarloSummary& s) {
  nlohmann::json j;
  j["name"] = s.statistic;
  j["params"] = s.params;
  j["params"]["N"] = s.N;
  j["params"]["k"] = s.k;
  j["seed"] = s.seed;
  j["runs"] = s.runs;
  j["values"] = s.values;
  j["mean"] = s.mean;
  j["std"] = s.stddev ? nlohmann::json(*s.stddev) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const Provenance& p) {
  nlohmann::json j;
  j["kind"] = to_string(p.kind);
  switch (p.kind) {
    case Provenance::Kind::arithmetic:
      j["n"] = p.n;
      break;
    case Provenance::Kind::random:
      j["seed"] = p.seed;
      break;
    case Provenance::Kind::rigid:
      j["params"] = p.params;
      break;
  }
  return j;
}

void write_text(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
}

}  // namespace spherepts::io
