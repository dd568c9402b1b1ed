#pragma once

#include "sri/convex_set.hpp"
#include "sri/noise.hpp"
#include "sri/steiner.hpp"

#include <string>

namespace sri {

/// Rule picking v in F(x) for the recursion and the Euler inclusion solver.
///   steiner                          v = steiner_point(F(x)), no randomness
///   random-support-direction         v = support_point(F(x), w), w uniform on the sphere, fresh per step
///   extreme-toward-fixed-direction   v = support_point(F(x), e) for a fixed unit e (default e1)
enum class Strategy { kSteiner, kRandomSupportDirection, kExtremeTowardFixedDirection };

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy s);

struct Selector {
  Strategy strategy = Strategy::kSteiner;
  Point direction;  // used by kExtremeTowardFixedDirection; empty means e1
  SteinerOptions steiner{};

  Point select(const ConvexSet& Y, Rng& rng) const;
};

}  // namespace sri
