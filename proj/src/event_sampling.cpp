#include "lightcone/event_sampling.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

#include "lightcone/errors.hpp"

namespace lightcone {

Region Region::make(Event4 lo, Event4 hi) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (hi[i] < lo[i]) throw InvalidArgument("region lower corner exceeds upper corner");
  }
  return Region{std::move(lo), std::move(hi)};
}

Region Region::cube(std::int64_t lo, std::int64_t hi) {
  return make(make_event(lo, lo, lo, lo), make_event(hi, hi, hi, hi));
}

Sample::Sample(std::vector<Event4> events) : events_(std::move(events)) {
  std::vector<const Event4*> sorted;
  sorted.reserve(events_.size());
  for (const auto& e : events_) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return lex_less(*a, *b); });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (*sorted[i] == *sorted[i - 1]) throw InvalidArgument("sample contains a duplicate event");
  }
}

std::string Sample::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& e : events_) {
    for (std::size_t i = 0; i < 4; ++i) mix(to_string(e[i]) + (i == 3 ? ";" : ","));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Sample grid_sample(const Region& region, const Scalar& spacing, std::size_t cap) {
  if (spacing <= 0) throw InvalidArgument("grid spacing must be positive");
  std::array<std::size_t, 4> counts{};
  std::size_t total = 1;
  for (std::size_t i = 0; i < 4; ++i) {
    const Scalar steps = (region.hi[i] - region.lo[i]) / spacing;
    const BigInt whole = numerator_of(steps) / denominator_of(steps);
    if (whole + 1 > BigInt(cap)) throw CapExceeded("grid exceeds the event cap");
    counts[i] = static_cast<std::size_t>(whole) + 1;
    total *= counts[i];
    if (total > cap) throw CapExceeded("grid has more points than the cap of " + std::to_string(cap));
  }

  std::vector<Event4> events;
  events.reserve(total);
  std::array<std::size_t, 4> k{};
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = 4; i-- > 0;) {
      k[i] = rest % counts[i];
      rest /= counts[i];
    }
    Event4 e;
    for (std::size_t i = 0; i < 4; ++i) e[i] = region.lo[i] + spacing * Scalar(k[i]);
    events.push_back(std::move(e));
  }
  return Sample(std::move(events));
}

Sample poisson_sprinkle(const Region& region, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InvalidArgument("sprinkle count must be at least 1");
  bool degenerate = true;
  for (std::size_t i = 0; i < 4; ++i) degenerate = degenerate && region.lo[i] == region.hi[i];
  if (degenerate && count > 1) throw InvalidArgument("cannot sprinkle distinct events into a single point");

  const Scalar unit = Scalar(BigInt(1), BigInt(1) << 53);
  std::mt19937_64 gen(seed);
  auto cmp = [](const Event4& a, const Event4& b) { return lex_less(a, b); };
  std::set<Event4, decltype(cmp)> seen(cmp);
  std::vector<Event4> events;
  events.reserve(count);
  while (events.size() < count) {
    Event4 e;
    for (std::size_t i = 0; i < 4; ++i) {
      const std::uint64_t k = gen() >> 11;
      e[i] = region.lo[i] + (region.hi[i] - region.lo[i]) * Scalar(BigInt(k)) * unit;
    }
    if (seen.insert(e).second) events.push_back(std::move(e));
  }
  return Sample(std::move(events));
}

Sample axis_sample(const Axis& axis, std::size_t count, const Scalar& span) {
  if (count < 2) throw InvalidArgument("axis sample needs at least two points");
  if (span <= 0) throw InvalidArgument("axis span must be positive");
  std::vector<Event4> events;
  events.reserve(count);
  const Scalar step = (span + span) / Scalar(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    events.push_back(translate(axis.base, axis.direction, -span + step * Scalar(i)));
  }
  return Sample(std::move(events));
}

Sample default_fixture() {
  return Sample({origin(), make_event(1, 1, 0, 0), make_event(2, 0, 0, 0), make_event(0, 3, 0, 0)});
}

Sample integer_grid(std::int64_t e0, std::int64_t e1, std::int64_t e2, std::int64_t e3) {
  return grid_sample(Region::make(origin(), make_event(e0, e1, e2, e3)), Scalar(1));
}

}  // namespace lightcone
