#include "steiner/subsys.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace steiner::subsys {

PairTable make_pair_table(const TripleSystem& s) {
  if (s.v > 64) throw input_error("subsystem search limited to 64 points");
  PairTable t;
  t.v = s.v;
  t.third.assign(static_cast<std::size_t>(s.v) * s.v, -1);
  for (const auto& b : s.blocks) {
    t.third[b[0] * s.v + b[1]] = b[2];
    t.third[b[1] * s.v + b[0]] = b[2];
    t.third[b[0] * s.v + b[2]] = b[1];
    t.third[b[2] * s.v + b[0]] = b[1];
    t.third[b[1] * s.v + b[2]] = b[0];
    t.third[b[2] * s.v + b[1]] = b[0];
  }
  return t;
}

std::vector<Point> closure(const PairTable& table, std::vector<Point> seed) {
  std::uint64_t member = 0;  // v <= 64 in every caller of interest
  std::vector<Point> points;
  auto push = [&](Point p) {
    std::uint64_t bit = std::uint64_t{1} << p;
    if (!(member & bit)) {
      member |= bit;
      points.push_back(p);
    }
  };
  for (Point p : seed) {
    if (p >= table.v) throw input_error("seed point out of range");
    push(p);
  }
  // Worklist over pairs: each new point is paired against all older ones.
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      int t = table.lookup(points[i], points[j]);
      if (t >= 0) push(static_cast<Point>(t));
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

namespace {

// Closure that gives up once it grows past `cap` points; returns empty then.
std::vector<Point> closure_capped(const PairTable& table, Point a, Point b, Point c, int cap) {
  std::uint64_t member =
      (std::uint64_t{1} << a) | (std::uint64_t{1} << b) | (std::uint64_t{1} << c);
  std::vector<Point> points{a, b, c};
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      int t = table.lookup(points[i], points[j]);
      if (t < 0) continue;
      std::uint64_t bit = std::uint64_t{1} << t;
      if (member & bit) continue;
      member |= bit;
      points.push_back(static_cast<Point>(t));
      if (static_cast<int>(points.size()) > cap) return {};
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

}  // namespace

std::vector<std::vector<Point>> find_subsystems(const PairTable& table, int w) {
  if (w != 7 && w != 9) throw input_error("subsystem order must be 7 or 9");
  int v = table.v;
  std::set<std::vector<Point>> found;
  if (v == w) {
    // The improper subsystem: the whole point set (when the design exists,
    // callers have validated it).
    std::vector<Point> all(v);
    for (int p = 0; p < v; ++p) all[p] = static_cast<Point>(p);
    found.insert(all);
  }
  // Close every triangle {a,b,c}: non-collinear seeds suffice, since every
  // proper subsystem of order 7 or 9 contains one.
  for (Point a = 0; a < v; ++a) {
    for (Point b = a + 1; b < v; ++b) {
      int z = table.lookup(a, b);
      for (Point c = b + 1; c < v; ++c) {
        if (static_cast<int>(c) == z) continue;
        auto cl = closure_capped(table, a, b, c, w);
        if (static_cast<int>(cl.size()) == w) found.insert(std::move(cl));
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<std::vector<Point>> find_subsystems(const TripleSystem& s, int w) {
  return find_subsystems(make_pair_table(s), w);
}

IntersectionStats intersection_stats(const std::vector<std::vector<Point>>& subsystems7) {
  IntersectionStats stats;
  stats.u = subsystems7.size();
  for (std::size_t i = 0; i < subsystems7.size(); ++i) {
    std::uint64_t mask_i = 0;
    for (Point p : subsystems7[i]) mask_i |= std::uint64_t{1} << p;
    for (std::size_t j = i + 1; j < subsystems7.size(); ++j) {
      std::uint64_t mask_j = 0;
      for (Point p : subsystems7[j]) mask_j |= std::uint64_t{1} << p;
      int common = std::popcount(mask_i & mask_j);
      switch (common) {
        case 0: ++stats.i0; break;
        case 1: ++stats.i1; break;
        case 3: ++stats.i3; break;
        default:
          throw data_error("subsystem intersection size " + std::to_string(common) +
                           " is impossible in a valid triple system");
      }
    }
  }
  return stats;
}

std::vector<std::vector<Point>> brute_force_subsystems(const TripleSystem& s, int w,
                                                       std::uint64_t subset_cap) {
  if (w != 7 && w != 9) throw input_error("subsystem order must be 7 or 9");
  // C(v, w) against the cap.
  std::uint64_t subsets = 1;
  for (int i = 0; i < w; ++i) subsets = subsets * (s.v - i) / (i + 1);
  if (subsets > subset_cap) throw resource_error("subset count exceeds brute-force cap");

  PairTable table = make_pair_table(s);
  std::vector<std::vector<Point>> out;
  std::vector<Point> pick(w);
  for (int i = 0; i < w; ++i) pick[i] = static_cast<Point>(i);
  while (true) {
    std::uint64_t mask = 0;
    for (Point p : pick) mask |= std::uint64_t{1} << p;
    bool closed = true;
    for (int i = 0; i < w && closed; ++i) {
      for (int j = i + 1; j < w; ++j) {
        int t = table.lookup(pick[i], pick[j]);
        if (t < 0 || !((mask >> t) & 1)) {
          closed = false;
          break;
        }
      }
    }
    if (closed) out.push_back(pick);
    // next combination
    int i = w - 1;
    while (i >= 0 && pick[i] == s.v - w + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < w; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace steiner::subsys
