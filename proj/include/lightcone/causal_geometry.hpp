#pragma once

#include <array>
#include <ostream>
#include <string_view>

#include "lightcone/scalar.hpp"

namespace lightcone {

/// A point of flat spacetime in natural units (c = 1); index 0 is time.
struct Event4 {
  std::array<Scalar, 4> x;

  const Scalar& operator[](std::size_t i) const { return x[i]; }
  Scalar& operator[](std::size_t i) { return x[i]; }

  friend bool operator==(const Event4&, const Event4&) = default;
};

/// Componentwise difference of two events, y - x.
struct Displacement {
  std::array<Scalar, 4> d;

  const Scalar& operator[](std::size_t i) const { return d[i]; }
  bool is_zero() const;
  Displacement operator-() const;

  friend bool operator==(const Displacement&, const Displacement&) = default;
};

Event4 make_event(std::int64_t t, std::int64_t x, std::int64_t y, std::int64_t z);
Event4 origin();

Displacement displacement(const Event4& from, const Event4& to);
Event4 translate(const Event4& base, const Displacement& d, const Scalar& t);

/// Lexicographic comparison on (x0, x1, x2, x3); used for canonical ordering.
bool lex_less(const Event4& a, const Event4& b);

std::ostream& operator<<(std::ostream& os, const Event4& e);

/// Position of y relative to the cones of x. Future means increasing x0.
enum class ConeClass { Zero, FutureTimelike, PastTimelike, FutureNull, PastNull, Spacelike };

std::string_view to_string(ConeClass c);
bool is_null(ConeClass c);
bool is_timelike(ConeClass c);
/// The class of x seen from y, given the class of y seen from x.
ConeClass reversed(ConeClass c);

/// Q(d) = d0^2 - d1^2 - d2^2 - d3^2, signature (+,-,-,-).
Scalar q_form(const Displacement& d);

/// Euclidean squared norm of y - x; radii are always carried squared.
Scalar squared_distance(const Event4& x, const Event4& y);

ConeClass classify(const Event4& x, const Event4& y);
/// Class of x + d seen from x.
ConeClass classify(const Displacement& d);
/// Euclidean squared norm of d.
Scalar squared_norm(const Displacement& d);

/// x << y: y strictly inside the future cone of x. Irreflexive.
bool chron(const Event4& x, const Event4& y);
/// x < y in the causal sense: y inside or on the future cone of x. Reflexive.
bool causal(const Event4& x, const Event4& y);
/// x -> y: y on the future null cone of x. The reflexive variant also relates x to itself.
bool horismos(const Event4& x, const Event4& y, bool reflexive);

/// y in the open Euclidean ball about center with squared radius eps2 > 0.
bool in_ball(const Event4& y, const Event4& center, const Scalar& eps2);
/// y in Z_eps(x) = B_eps(x) intersected with (C^T(x) u C^S(x)).
bool in_zeeman_nbhd(const Event4& y, const Event4& x, const Scalar& eps2);
/// y in A(x) = (M - C^L(x)) u {x}; both sheets of the null cone are removed.
bool in_horismos_ball(const Event4& y, const Event4& x);

/// Membership in the cones with apex x. C^T and C^S contain x itself.
bool in_time_cone(const Event4& y, const Event4& x);
bool in_light_cone(const Event4& y, const Event4& x);
bool in_space_cone(const Event4& y, const Event4& x);

/// A time axis (Q(direction) > 0) or space axis (Q(direction) < 0) through base.
struct Axis {
  enum class Kind { Time, Space };

  Event4 base;
  Displacement direction;
  Kind kind;

  /// Validates the direction against kind; throws InvalidArgument otherwise.
  static Axis make(Event4 base, Displacement direction, Kind kind);

  /// True iff p = base + t * direction for some rational t.
  bool contains(const Event4& p) const;
};

}  // namespace lightcone
