#include "sri/io.hpp"

#include <cstdio>

namespace sri {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const auto d = traj.X.front().size();
  os << "n,t";
  for (Eigen::Index i = 0; i < d; ++i) os << ",x" << i + 1;
  for (Eigen::Index i = 0; i < d; ++i) os << ",xp" << i + 1;
  os << ",chi,norm_M\n";
  for (std::size_t k = 0; k < traj.X.size(); ++k) {
    os << traj.start_index + static_cast<long>(k) << ',' << fmt(traj.t[k]);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << fmt(traj.X[k](i));
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << fmt(traj.Xp[k](i));
    os << ',' << static_cast<int>(traj.chi[k]) << ',' << fmt(k == 0 ? 0.0 : traj.M[k - 1].norm()) << '\n';
  }
}

void write_funnel_csv(std::ostream& os, const Funnel& f) {
  const auto d = f.paths.front().points.front().size();
  os << "path,t";
  for (Eigen::Index i = 0; i < d; ++i) os << ",x" << i + 1;
  os << '\n';
  for (std::size_t p = 0; p < f.paths.size(); ++p) {
    const auto& path = f.paths[p];
    for (std::size_t k = 0; k < path.times.size(); ++k) {
      os << p << ',' << fmt(path.times[k]);
      for (Eigen::Index i = 0; i < d; ++i) os << ',' << fmt(path.points[k](i));
      os << '\n';
    }
  }
}

void write_lockin_csv(std::ostream& os, const LockInReport& rep) {
  os << "n0,empirical,ci_lo,ci_hi,bound\n";
  for (const auto& r : rep.rows) {
    os << r.n0 << ',' << fmt(r.p) << ',' << fmt(r.ci.lo) << ',' << fmt(r.ci.hi) << ',' << fmt(r.bound) << '\n';
  }
}

}  // namespace sri
