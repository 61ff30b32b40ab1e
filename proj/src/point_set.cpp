#include "spherepts/point_set.hpp"

#include <algorithm>
#include <cmath>

#include "spherepts/errors.hpp"

namespace spherepts {

std::string to_string(Provenance::Kind kind) {
  switch (kind) {
    case Provenance::Kind::arithmetic:
      return "arithmetic";
    case Provenance::Kind::random:
      return "random";
    case Provenance::Kind::rigid:
      return "rigid";
  }
  return "unknown";
}

UnitPointSet::UnitPointSet(int sphere_dim, std::vector<double> coords, Provenance provenance)
    : sphere_dim_(sphere_dim), coords_(std::move(coords)), provenance_(std::move(provenance)) {
  if (sphere_dim < 1 || sphere_dim > 3)
    throw DomainError("UnitPointSet: sphere dimension must be 1, 2 or 3");
  if (coords_.size() % static_cast<std::size_t>(ambient_dim()) != 0)
    throw DomainError("UnitPointSet: coordinate count is not a multiple of the ambient dimension");
}

double UnitPointSet::max_norm_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double s = 0.0;
    for (double c : point(i)) s += c * c;
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

}  // namespace spherepts
