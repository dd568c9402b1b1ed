#include "sri/selection.hpp"

namespace sri {

Strategy parse_strategy(const std::string& name) {
  if (name == "steiner") return Strategy::kSteiner;
  if (name == "random-support-direction") return Strategy::kRandomSupportDirection;
  if (name == "extreme-toward-fixed-direction") return Strategy::kExtremeTowardFixedDirection;
  throw GeometryError("unknown selection strategy '" + name + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kSteiner: return "steiner";
    case Strategy::kRandomSupportDirection: return "random-support-direction";
    case Strategy::kExtremeTowardFixedDirection: return "extreme-toward-fixed-direction";
  }
  return "?";
}

Point Selector::select(const ConvexSet& Y, Rng& rng) const {
  switch (strategy) {
    case Strategy::kSteiner:
      return steiner_point(Y, steiner);
    case Strategy::kRandomSupportDirection: {
      const Point w = random_direction(Y.dim(), rng);
      if (Y.is_singleton()) return Y.vertices().col(0);
      return support_point(Y, w);
    }
    case Strategy::kExtremeTowardFixedDirection: {
      if (Y.is_singleton()) return Y.vertices().col(0);
      if (direction.size() == 0) return support_point(Y, Point(Point::Unit(Y.dim(), 0)));
      return support_point(Y, direction);
    }
  }
  return steiner_point(Y, steiner);
}

}  // namespace sri
