#include <cmath>
#include <stdexcept>

#include "spinvqe/vqe.hpp"

namespace spinvqe {

void ScheduleParams::validate() const {
  if (!(initial > end && end > 0.0)) throw std::invalid_argument("schedule: need initial > end > 0");
  if (!(boundary >= 0.0)) throw std::invalid_argument("schedule: boundary must be non-negative");
  if (!(transition > 0.0)) throw std::invalid_argument("schedule: transition must be positive");
  if (!(power >= 1.0)) throw std::invalid_argument("schedule: power must be at least 1");
}

double schedule_rate(std::uint64_t t, const ScheduleParams& p) {
  const double x = static_cast<double>(t);
  if (x < p.boundary) return p.initial;
  if (x >= p.boundary + p.transition) return p.end;
  return (p.initial - p.end) * std::pow(1.0 - (x - p.boundary) / p.transition, p.power) + p.end;
}

}  // namespace spinvqe
