#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "cell_table.hpp"
#include "gdchfif/attractor.hpp"

namespace gdchfif {

namespace {

inline double squared_distance(const Point3& p, const Point3& q) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double dz = p.z - q.z;
  return dx * dx + dy * dy + dz * dz;
}

void require_nonempty(std::span<const Point3> a, std::span<const Point3> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::EmptySet, "Hausdorff distance needs nonempty sets");
  }
}

double directed_brute_sq(std::span<const Point3> from,
                         std::span<const Point3> to) {
  double worst = 0.0;
  for (const Point3& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point3& q : to) best = std::min(best, squared_distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

// Sparse uniform grid over a point set, answering exact nearest-neighbour
// squared distances by searching Chebyshev shells of cells outward.
class NearestGrid {
 public:
  explicit NearestGrid(std::span<const Point3> points) : points_(points) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    lo_ = {inf, inf, inf};
    std::array<double, 3> hi{-inf, -inf, -inf};
    for (const Point3& p : points_) {
      const std::array<double, 3> c{p.x, p.y, p.z};
      for (int k = 0; k < 3; ++k) {
        lo_[k] = std::min(lo_[k], c[k]);
        hi[k] = std::max(hi[k], c[k]);
      }
    }
    double diag = 0.0;
    for (int k = 0; k < 3; ++k) diag += (hi[k] - lo_[k]) * (hi[k] - lo_[k]);
    diag = std::sqrt(diag);
    if (diag == 0.0) diag = 1.0;

    // Refine the cell until occupied cells hold a handful of points each.
    const double n = static_cast<double>(points_.size());
    cell_ = diag / std::max(1.0, std::sqrt(n));
    for (int round = 0; round < 12; ++round) {
      build();
      const double per_cell = n / static_cast<double>(table_.size());
      if (per_cell <= 8.0) break;
      cell_ *= 0.5;
    }
    for (int k = 0; k < 3; ++k) {
      max_index_[k] = static_cast<std::int64_t>(std::floor((hi[k] - lo_[k]) / cell_));
    }
    slack_ = 1e-6 * cell_;
  }

  double nearest_sq(const Point3& q) const {
    const detail::CellKey c = index_of(q);
    const std::array<double, 3> qc{q.x, q.y, q.z};
    double best = std::numeric_limits<double>::infinity();
    // Beyond this shell radius every occupied cell has been visited.
    std::int64_t reach = 0;
    for (int k = 0; k < 3; ++k) {
      reach = std::max({reach, c[k], max_index_[k] - c[k]});
    }
    for (std::int64_t ring = 0; ring <= reach; ++ring) {
      visit_shell(c, ring, q, best);
      // Distance from q to the outside of the visited block of cells, less
      // a sliver for points binned across a boundary by rounding.
      double clear = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 3; ++k) {
        const double below =
            qc[k] - (lo_[k] + static_cast<double>(c[k] - ring) * cell_);
        const double above =
            lo_[k] + static_cast<double>(c[k] + ring + 1) * cell_ - qc[k];
        clear = std::min({clear, below, above});
      }
      clear -= slack_;
      if (clear > 0.0 && best <= clear * clear) break;
    }
    return best;
  }

 private:
  detail::CellKey index_of(const Point3& p) const {
    return {static_cast<std::int64_t>(std::floor((p.x - lo_[0]) / cell_)),
            static_cast<std::int64_t>(std::floor((p.y - lo_[1]) / cell_)),
            static_cast<std::int64_t>(std::floor((p.z - lo_[2]) / cell_))};
  }

  void build() {
    table_.reset(points_.size());
    std::vector<std::uint32_t> cell_of(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      bool fresh = false;
      cell_of[i] = table_.insert(index_of(points_[i]), fresh);
    }
    start_.assign(table_.size() + 1, 0);
    for (std::uint32_t id : cell_of) ++start_[id + 1];
    for (std::size_t k = 1; k < start_.size(); ++k) start_[k] += start_[k - 1];
    members_.resize(points_.size());
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      members_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
    }
  }

  void scan_cell(const detail::CellKey& key, const Point3& q,
                 double& best) const {
    const std::uint32_t id = table_.find(key);
    if (id == detail::CellTable::kNone) return;
    for (std::uint32_t k = start_[id]; k < start_[id + 1]; ++k) {
      best = std::min(best, squared_distance(q, points_[members_[k]]));
    }
  }

  // Visits cells at Chebyshev index distance exactly `ring` from `c`,
  // clipped to the occupied index box [0, max_index_].
  void visit_shell(const detail::CellKey& c, std::int64_t ring,
                   const Point3& q, double& best) const {
    auto lo = [&](int k) { return std::max<std::int64_t>(c[k] - ring, 0); };
    auto hi = [&](int k) { return std::min<std::int64_t>(c[k] + ring, max_index_[k]); };
    for (std::int64_t x = lo(0); x <= hi(0); ++x) {
      const bool x_edge = std::abs(x - c[0]) == ring;
      for (std::int64_t y = lo(1); y <= hi(1); ++y) {
        const bool xy_edge = x_edge || std::abs(y - c[1]) == ring;
        if (xy_edge) {
          for (std::int64_t z = lo(2); z <= hi(2); ++z) {
            scan_cell({x, y, z}, q, best);
          }
        } else {
          // Only the two z faces of the shell remain.
          if (c[2] - ring >= 0 && c[2] - ring <= max_index_[2]) {
            scan_cell({x, y, c[2] - ring}, q, best);
          }
          if (ring > 0 && c[2] + ring >= 0 && c[2] + ring <= max_index_[2]) {
            scan_cell({x, y, c[2] + ring}, q, best);
          }
        }
      }
    }
  }

  std::span<const Point3> points_;
  std::array<double, 3> lo_{};
  detail::CellKey max_index_{};
  double cell_ = 1.0;
  double slack_ = 0.0;
  detail::CellTable table_;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> members_;
};

double directed_fast_sq(std::span<const Point3> from,
                        std::span<const Point3> to) {
  // Brute force is cheaper than building a grid for tiny inputs.
  if (from.size() * to.size() <= 4096) return directed_brute_sq(from, to);
  const NearestGrid grid(to);
  double worst = 0.0;
  for (const Point3& p : from) worst = std::max(worst, grid.nearest_sq(p));
  return worst;
}

}  // namespace

double directed_hausdorff(std::span<const Point3> from,
                          std::span<const Point3> to) {
  require_nonempty(from, to);
  return std::sqrt(directed_fast_sq(from, to));
}

double hausdorff_distance(std::span<const Point3> a, std::span<const Point3> b) {
  require_nonempty(a, b);
  return std::sqrt(std::max(directed_fast_sq(a, b), directed_fast_sq(b, a)));
}

double hausdorff_distance_brute(std::span<const Point3> a,
                                std::span<const Point3> b) {
  require_nonempty(a, b);
  return std::sqrt(std::max(directed_brute_sq(a, b), directed_brute_sq(b, a)));
}

double hausdorff_distance(const VertexSets& a, const VertexSets& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::StructuralMismatch,
                "vertex set lists differ in length: " +
                    std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    worst = std::max(worst, hausdorff_distance(a[r].points, b[r].points));
  }
  return worst;
}

}  // namespace gdchfif
