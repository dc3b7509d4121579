#include "lightcone/causal_geometry.hpp"

#include <optional>

#include "lightcone/errors.hpp"

namespace lightcone {

bool Displacement::is_zero() const {
  for (const auto& c : d) {
    if (c != 0) return false;
  }
  return true;
}

Displacement Displacement::operator-() const {
  return Displacement{{-d[0], -d[1], -d[2], -d[3]}};
}

Event4 make_event(std::int64_t t, std::int64_t x, std::int64_t y, std::int64_t z) {
  return Event4{{Scalar(t), Scalar(x), Scalar(y), Scalar(z)}};
}

Event4 origin() { return make_event(0, 0, 0, 0); }

Displacement displacement(const Event4& from, const Event4& to) {
  return Displacement{{to[0] - from[0], to[1] - from[1], to[2] - from[2], to[3] - from[3]}};
}

Event4 translate(const Event4& base, const Displacement& d, const Scalar& t) {
  return Event4{{base[0] + t * d[0], base[1] + t * d[1], base[2] + t * d[2], base[3] + t * d[3]}};
}

bool lex_less(const Event4& a, const Event4& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

std::ostream& operator<<(std::ostream& os, const Event4& e) {
  return os << '(' << to_string(e[0]) << ',' << to_string(e[1]) << ',' << to_string(e[2]) << ','
            << to_string(e[3]) << ')';
}

std::string_view to_string(ConeClass c) {
  switch (c) {
    case ConeClass::Zero: return "zero";
    case ConeClass::FutureTimelike: return "future_timelike";
    case ConeClass::PastTimelike: return "past_timelike";
    case ConeClass::FutureNull: return "future_null";
    case ConeClass::PastNull: return "past_null";
    case ConeClass::Spacelike: return "spacelike";
  }
  return "?";
}

bool is_null(ConeClass c) { return c == ConeClass::FutureNull || c == ConeClass::PastNull; }

bool is_timelike(ConeClass c) {
  return c == ConeClass::FutureTimelike || c == ConeClass::PastTimelike;
}

ConeClass reversed(ConeClass c) {
  switch (c) {
    case ConeClass::FutureTimelike: return ConeClass::PastTimelike;
    case ConeClass::PastTimelike: return ConeClass::FutureTimelike;
    case ConeClass::FutureNull: return ConeClass::PastNull;
    case ConeClass::PastNull: return ConeClass::FutureNull;
    default: return c;
  }
}

Scalar q_form(const Displacement& d) {
  return d[0] * d[0] - d[1] * d[1] - d[2] * d[2] - d[3] * d[3];
}

Scalar squared_distance(const Event4& x, const Event4& y) {
  Scalar total = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    Scalar c = y[i] - x[i];
    total += c * c;
  }
  return total;
}

Scalar squared_norm(const Displacement& d) {
  return d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3];
}

ConeClass classify(const Event4& x, const Event4& y) { return classify(displacement(x, y)); }

ConeClass classify(const Displacement& d) {
  if (d.is_zero()) return ConeClass::Zero;
  const int q = sign(q_form(d));
  if (q < 0) return ConeClass::Spacelike;
  // Q >= 0 with d != 0 forces d0 != 0.
  const bool future = d[0] > 0;
  if (q > 0) return future ? ConeClass::FutureTimelike : ConeClass::PastTimelike;
  return future ? ConeClass::FutureNull : ConeClass::PastNull;
}

bool chron(const Event4& x, const Event4& y) { return classify(x, y) == ConeClass::FutureTimelike; }

bool causal(const Event4& x, const Event4& y) {
  const ConeClass c = classify(x, y);
  return c == ConeClass::Zero || c == ConeClass::FutureTimelike || c == ConeClass::FutureNull;
}

bool horismos(const Event4& x, const Event4& y, bool reflexive) {
  const ConeClass c = classify(x, y);
  return c == ConeClass::FutureNull || (reflexive && c == ConeClass::Zero);
}

bool in_ball(const Event4& y, const Event4& center, const Scalar& eps2) {
  if (eps2 <= 0) throw InvalidArgument("squared radius must be positive");
  return squared_distance(center, y) < eps2;
}

bool in_zeeman_nbhd(const Event4& y, const Event4& x, const Scalar& eps2) {
  return in_ball(y, x, eps2) && (in_time_cone(y, x) || in_space_cone(y, x));
}

bool in_horismos_ball(const Event4& y, const Event4& x) { return y == x || !in_light_cone(y, x); }

bool in_time_cone(const Event4& y, const Event4& x) {
  return y == x || q_form(displacement(x, y)) > 0;
}

bool in_light_cone(const Event4& y, const Event4& x) { return q_form(displacement(x, y)) == 0; }

bool in_space_cone(const Event4& y, const Event4& x) {
  return y == x || q_form(displacement(x, y)) < 0;
}

Axis Axis::make(Event4 base, Displacement direction, Kind kind) {
  if (direction.is_zero()) throw InvalidArgument("axis direction must be non-zero");
  const int q = sign(q_form(direction));
  if (kind == Kind::Time && q <= 0) throw InvalidArgument("time axis direction must be timelike");
  if (kind == Kind::Space && q >= 0) throw InvalidArgument("space axis direction must be spacelike");
  return Axis{std::move(base), std::move(direction), kind};
}

bool Axis::contains(const Event4& p) const {
  const Displacement off = displacement(base, p);
  std::optional<Scalar> t;
  for (std::size_t i = 0; i < 4; ++i) {
    if (direction[i] == 0) {
      if (off[i] != 0) return false;
      continue;
    }
    Scalar ti = off[i] / direction[i];
    if (t && *t != ti) return false;
    t = ti;
  }
  return true;
}

}  // namespace lightcone
