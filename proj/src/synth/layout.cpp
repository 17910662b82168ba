#include "sgbot/synth/layout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace sgbot {
namespace {

constexpr double kSlack = 1e-9;
constexpr double kRootGrid = 0.01;   // spacing of candidate spots for extra components
constexpr double kWedgeGrid = 0.005;  // spacing of candidate spots beside a target
constexpr int kWedgeDepth = 300;      // rows of candidates outward from the target

struct NodeBox {
  Box3 box;
  Vec3 hull;  // axis-aligned hull half extents
};

enum class Placement { kNone, kRoot, kDirectional, kRing };

struct Group {
  std::vector<int> members;  // bottom to top
  double hx = 0.0, hy = 0.0;
  bool placed = false;
  double x = 0.0, y = 0.0;
  int parent = -1;
  Placement kind = Placement::kNone;
  int axis = 0;       // constrained axis for directional placement
  double dir = 0.0;   // outward sign along that axis
  int order = -1;

  double half(int a) const { return a == 0 ? hx : hy; }
  double pos(int a) const { return a == 0 ? x : y; }
  void shift(int a, double d) { (a == 0 ? x : y) += d; }
};

struct Direction {
  int axis;
  double sign;
};

Direction direction_of(RelationLabel r) {
  switch (r) {
    case RelationLabel::kLeft: return {0, -1.0};
    case RelationLabel::kRight: return {0, 1.0};
    case RelationLabel::kFront: return {1, 1.0};
    case RelationLabel::kBehind: return {1, -1.0};
    default: return {0, 0.0};
  }
}

std::string edge_text(const GraphEdge& e) {
  return std::to_string(e.from) + " " + std::string(to_string(e.relation)) + " " + std::to_string(e.to);
}

class Solver {
 public:
  Solver(const SceneGraph& graph, const std::map<int, ShapePrior>& priors, std::uint64_t seed,
         const CategoryVocabulary& vocab, const LayoutParams& params)
      : graph_(graph), priors_(priors), seed_(seed), vocab_(vocab), params_(params) {}

  Layout run(const Box3& table) {
    if (graph_.nodes().empty()) return {};
    table_ = table;
    size_nodes();
    build_groups();
    check_orderings();
    place_all();
    separate();
    Layout layout = finalize();
    check_table(layout, table);
    verify(layout);
    return layout;
  }

 private:
  void size_nodes() {
    anchor_ = pick_anchor();
    for (const auto& n : graph_.nodes()) {
      auto it = priors_.find(n.id);
      if (it == priors_.end()) {
        throw Error(ErrorCode::kMissingPrior, "no shape prior for node " + std::to_string(n.id));
      }
      Box3 box;
      box.half_extents = it->second.half_extents();
      if (n.id == anchor_) {
        box.yaw = 0.0;
      } else if (vocab_.role(n.category) == CategoryRole::kCutlery) {
        box.yaw = kPi / 2;
      } else {
        box.yaw = it->second.yaw;
      }
      nodes_[n.id] = NodeBox{box, box.hull_half_extents()};
    }
  }

  int pick_anchor() const {
    std::optional<int> best;
    int best_rank = 0;
    for (const auto& n : graph_.nodes()) {
      auto rank = vocab_.anchor_rank(n.category);
      if (rank && (!best || *rank < best_rank || (*rank == best_rank && n.id < *best))) {
        best = n.id;
        best_rank = *rank;
      }
    }
    if (best) return *best;
    // Largest footprint, lowest id on ties.
    double best_area = -1.0;
    int best_id = 0;
    for (const auto& n : graph_.nodes()) {
      auto it = priors_.find(n.id);
      const double area = it == priors_.end() ? 0.0 : it->second.dims.x() * it->second.dims.y();
      if (area > best_area || (area == best_area && n.id < best_id)) {
        best_area = area;
        best_id = n.id;
      }
    }
    return best_id;
  }

  void build_groups() {
    for (const auto& e : graph_.edges()) {
      if (e.relation != RelationLabel::kStandingOn) continue;
      if (supporter_.contains(e.from)) {
        throw LayoutInfeasibleError("node " + std::to_string(e.from) + " stands on two supporters",
                                    {e});
      }
      supporter_[e.from] = e.to;
    }
    std::map<int, int> stacked_on_me;
    for (const auto& [top, bottom] : supporter_) {
      if (stacked_on_me.contains(bottom)) {
        throw LayoutInfeasibleError("two objects stand on node " + std::to_string(bottom), {});
      }
      stacked_on_me[bottom] = top;
    }
    // Each stack is walked from its base upward.
    for (const auto& n : graph_.nodes()) {
      if (supporter_.contains(n.id)) continue;
      Group g;
      int cur = n.id;
      std::set<int> seen;
      while (true) {
        g.members.push_back(cur);
        seen.insert(cur);
        auto it = stacked_on_me.find(cur);
        if (it == stacked_on_me.end() || seen.contains(it->second)) break;
        cur = it->second;
      }
      for (int id : g.members) {
        group_of_[id] = static_cast<int>(groups_.size());
        g.hx = std::max(g.hx, nodes_[id].hull.x());
        g.hy = std::max(g.hy, nodes_[id].hull.y());
      }
      groups_.push_back(std::move(g));
    }
    for (const auto& n : graph_.nodes()) {
      if (!group_of_.contains(n.id)) {
        std::vector<GraphEdge> cycle;
        for (const auto& e : graph_.edges()) {
          if (e.relation == RelationLabel::kStandingOn && !group_of_.contains(e.from)) cycle.push_back(e);
        }
        throw LayoutInfeasibleError("standing_on edges form a cycle", cycle);
      }
    }
    for (const auto& e : graph_.edges()) {
      if (e.relation != RelationLabel::kStandingOn && group_of_[e.from] == group_of_[e.to]) {
        throw LayoutInfeasibleError("edge " + edge_text(e) + " relates members of one stack", {e});
      }
    }
  }

  // Strict orderings along x and y must be acyclic.
  void check_orderings() {
    for (int axis = 0; axis < 2; ++axis) {
      std::map<int, std::vector<std::pair<int, GraphEdge>>> succ;
      std::map<int, int> indegree;
      for (std::size_t g = 0; g < groups_.size(); ++g) indegree[static_cast<int>(g)] = 0;
      for (const auto& e : graph_.edges()) {
        if (!is_directional(e.relation)) continue;
        const Direction d = direction_of(e.relation);
        if (d.axis != axis) continue;
        int lo = group_of_[e.from], hi = group_of_[e.to];
        if (d.sign > 0) std::swap(lo, hi);
        succ[lo].push_back({hi, e});
        ++indegree[hi];
      }
      std::vector<int> ready;
      for (const auto& [g, deg] : indegree) {
        if (deg == 0) ready.push_back(g);
      }
      std::size_t visited = 0;
      while (!ready.empty()) {
        const int g = ready.back();
        ready.pop_back();
        ++visited;
        for (const auto& [h, e] : succ[g]) {
          if (--indegree[h] == 0) ready.push_back(h);
        }
      }
      if (visited != groups_.size()) {
        std::vector<GraphEdge> involved;
        for (const auto& [g, out] : succ) {
          for (const auto& [h, e] : out) {
            if (indegree[g] > 0 && indegree[h] > 0) involved.push_back(e);
          }
        }
        throw LayoutInfeasibleError("contradictory directional edges", involved);
      }
    }
  }

  bool separated(const Group& a, double ax, double ay, const Group& b) const {
    const double need = params_.gap - kSlack;
    return std::abs(ax - b.x) - (a.hx + b.hx) >= need || std::abs(ay - b.y) - (a.hy + b.hy) >= need;
  }

  bool is_free(int gi, double x, double y) const {
    for (std::size_t h = 0; h < groups_.size(); ++h) {
      if (static_cast<int>(h) == gi || !groups_[h].placed) continue;
      if (!separated(groups_[gi], x, y, groups_[h])) return false;
    }
    return true;
  }

  void mark_placed(int gi, double x, double y, Placement kind, int parent) {
    Group& g = groups_[gi];
    g.placed = true;
    g.x = x;
    g.y = y;
    g.kind = kind;
    g.parent = parent;
    g.order = next_order_++;
  }

  void place_root(int gi) {
    if (next_order_ == 0) {
      mark_placed(gi, 0.0, 0.0, Placement::kRoot, -1);
      return;
    }
    // Later components take the free spot nearest the table center.
    const Group& g = groups_[gi];
    const Vec3 th = table_.hull_half_extents();
    const int nx = static_cast<int>(std::floor((th.x() - g.hx) / kRootGrid));
    const int ny = static_cast<int>(std::floor((th.y() - g.hy) / kRootGrid));
    std::vector<std::pair<int, int>> cells;
    for (int ix = -nx; ix <= nx; ++ix) {
      for (int iy = -ny; iy <= ny; ++iy) cells.emplace_back(ix, iy);
    }
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
      const int ra = a.first * a.first + a.second * a.second;
      const int rb = b.first * b.first + b.second * b.second;
      return ra < rb || (ra == rb && a < b);
    });
    for (const auto& [ix, iy] : cells) {
      const double x = table_.center.x() + ix * kRootGrid;
      const double y = table_.center.y() + iy * kRootGrid;
      if (is_free(gi, x, y)) {
        mark_placed(gi, x, y, Placement::kRoot, -1);
        return;
      }
    }
    double max_x = -1e300;
    for (const auto& other : groups_) {
      if (other.placed) max_x = std::max(max_x, other.x + other.hx);
    }
    mark_placed(gi, max_x + params_.gap + g.hx, 0.0, Placement::kRoot, -1);
  }

  bool on_table(int gi, double x, double y) const {
    const Vec3 th = table_.hull_half_extents();
    return std::abs(x - table_.center.x()) + groups_[gi].hx <= th.x() + kSlack &&
           std::abs(y - table_.center.y()) + groups_[gi].hy <= th.y() + kSlack;
  }

  // Places group `gv` on side `rel` of placed group `gu`: the free spot
  // nearest `gu` on a 5 mm grid inside the wedge where the constrained axis
  // dominates, preferring spots on the table. The first candidate is the
  // plain side-by-side offset.
  void place_directional(int gu, int gv, RelationLabel rel) {
    const Direction d = direction_of(rel);
    const int other = 1 - d.axis;
    const Group& u = groups_[gu];
    const double base = u.half(d.axis) + groups_[gv].half(d.axis) + params_.gap;
    std::optional<std::pair<double, double>> off_table;
    for (int ic = 0; ic <= kWedgeDepth; ++ic) {
      const double c = base + ic * kWedgeGrid;
      const int reach = static_cast<int>(std::ceil(c / kWedgeGrid));
      for (int k = 0; k <= 2 * reach; ++k) {
        const int ip = k % 2 == 1 ? -(k + 1) / 2 : k / 2;
        const double p = ip * kWedgeGrid;
        if (std::abs(p) >= c * (1.0 - 1e-9) - kSlack) continue;
        const double con = u.pos(d.axis) + d.sign * c;
        const double unc = u.pos(other) + p;
        const double x = d.axis == 0 ? con : unc;
        const double y = d.axis == 0 ? unc : con;
        if (!is_free(gv, x, y)) continue;
        if (on_table(gv, x, y)) {
          finish_directional(gu, gv, d, con, unc);
          return;
        }
        if (!off_table) off_table = {con, unc};
      }
    }
    if (!off_table) {
      throw LayoutInfeasibleError("no free pose beside group of node " + std::to_string(u.members.front()), {});
    }
    finish_directional(gu, gv, d, off_table->first, off_table->second);
  }

  void finish_directional(int gu, int gv, Direction d, double con, double unc) {
    const double x = d.axis == 0 ? con : unc;
    const double y = d.axis == 0 ? unc : con;
    mark_placed(gv, x, y, Placement::kDirectional, gu);
    groups_[gv].axis = d.axis;
    groups_[gv].dir = d.sign;
  }

  // First pass: the configured directions on the nominal ring. Second pass:
  // four times as many directions on radii stepping away from the nominal
  // one, up to the close_by limit.
  void place_ring(int gu, int gv, int node_u, int node_v) {
    const double diag_sum = nodes_[node_u].box.xy_half_diagonal() + nodes_[node_v].box.xy_half_diagonal();
    const double limit = params_.grounding.delta_close_factor * diag_sum * (1.0 - 1e-9);
    const double radius = std::min(diag_sum + params_.gap, limit);
    std::vector<double> radii{radius};
    for (int step = 1;; ++step) {
      const double lo = radius - step * kWedgeGrid;
      const double hi = radius + step * kWedgeGrid;
      if (lo <= 0.0 && hi > limit) break;
      if (lo > 0.0) radii.push_back(lo);
      if (hi <= limit) radii.push_back(hi);
    }
    const int k = std::max(1, params_.ring_directions);
    const auto start = static_cast<int>(seed_ % static_cast<std::uint64_t>(k));
    std::optional<std::pair<double, double>> off_table;
    for (int pass = 0; pass < 2; ++pass) {
      const int dirs = pass == 0 ? k : 4 * k;
      const std::size_t n_radii = pass == 0 ? 1 : radii.size();
      for (std::size_t ri = 0; ri < n_radii; ++ri) {
        for (int step = 0; step < dirs; ++step) {
          const int index = (start * (dirs / k) + step) % dirs;
          const double theta = -2.0 * kPi * static_cast<double>(index) / dirs;
          const double x = groups_[gu].x + radii[ri] * std::cos(theta);
          const double y = groups_[gu].y + radii[ri] * std::sin(theta);
          if (!is_free(gv, x, y)) continue;
          if (on_table(gv, x, y)) {
            mark_placed(gv, x, y, Placement::kRing, gu);
            return;
          }
          if (!off_table) off_table = {x, y};
        }
      }
    }
    if (off_table) {
      mark_placed(gv, off_table->first, off_table->second, Placement::kRing, gu);
      return;
    }
    throw LayoutInfeasibleError("no free close_by pose around node " + std::to_string(node_u),
                                {GraphEdge{node_v, node_u, RelationLabel::kCloseBy}});
  }

  // close_by edges first while the space around each target is open, then
  // directional edges; a new component root is started only when
  // nothing else can be attached.
  void place_all() {
    place_root(group_of_[anchor_]);
    std::vector<GraphNode> by_id = graph_.nodes();
    std::sort(by_id.begin(), by_id.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    while (true) {
      if (attach(false) || attach(true)) continue;
      auto next = std::find_if(by_id.begin(), by_id.end(),
                               [&](const GraphNode& n) { return !groups_[group_of_[n.id]].placed; });
      if (next == by_id.end()) break;
      place_root(group_of_[next->id]);
    }
  }

  // Attaches one unplaced group through an edge to a placed one. Among the
  // eligible edges the largest footprint goes first, then graph order.
  bool attach(bool directional) {
    const GraphEdge* pick = nullptr;
    double pick_area = -1.0;
    for (const auto& e : graph_.edges()) {
      if (e.relation == RelationLabel::kStandingOn || is_directional(e.relation) != directional) continue;
      const int gf = group_of_[e.from], gt = group_of_[e.to];
      if (groups_[gf].placed == groups_[gt].placed) continue;
      const Group& loose = groups_[groups_[gt].placed ? gf : gt];
      const double area = loose.hx * loose.hy;
      if (area > pick_area) {
        pick = &e;
        pick_area = area;
      }
    }
    if (!pick) return false;
    const GraphEdge& e = *pick;
    const int gf = group_of_[e.from], gt = group_of_[e.to];
    const bool pt = groups_[gt].placed;
    if (directional) {
      if (pt) {
        place_directional(gt, gf, e.relation);
      } else {
        place_directional(gf, gt, *inverse(e.relation));
      }
    } else {
      if (pt) {
        place_ring(gt, gf, e.to, e.from);
      } else {
        place_ring(gf, gt, e.from, e.to);
      }
    }
    return true;
  }

  bool descends_from(int g, int ancestor) const {
    for (int cur = g; cur >= 0; cur = groups_[cur].parent) {
      if (cur == ancestor) return true;
    }
    return false;
  }

  void shift_subtree(int root, int axis, double delta) {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (descends_from(static_cast<int>(g), root)) groups_[g].shift(axis, delta);
    }
  }

  // Moves the later-placed box of each overlapping pair until every pair is
  // separated by at least the gap. Directional boxes move outward along their
  // constrained axis so the relation to their target keeps holding.
  void separate() {
    std::vector<int> order(groups_.size());
    for (std::size_t g = 0; g < groups_.size(); ++g) order[g] = static_cast<int>(g);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return groups_[a].order < groups_[b].order; });

    for (int round = 0; round < params_.max_separation_rounds; ++round) {
      bool clean = true;
      for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
          const Group& gi = groups_[order[a]];
          Group& gj = groups_[order[b]];
          if (separated(gj, gj.x, gj.y, gi)) continue;
          clean = false;
          if (gj.kind == Placement::kDirectional) {
            const int ax = gj.axis;
            const double target = gi.pos(ax) + gj.dir * (gi.half(ax) + params_.gap + gj.half(ax));
            const double delta = target - gj.pos(ax);
            shift_subtree(order[b], ax, gj.dir > 0 ? std::max(delta, 0.0) : std::min(delta, 0.0));
          } else {
            double best_delta = 0.0;
            int best_axis = 0;
            for (int ax = 0; ax < 2; ++ax) {
              const double need = gi.half(ax) + gj.half(ax) + params_.gap;
              const double sign = gj.pos(ax) >= gi.pos(ax) ? 1.0 : -1.0;
              const double delta = sign * (need - std::abs(gj.pos(ax) - gi.pos(ax)));
              if (ax == 0 || std::abs(delta) < std::abs(best_delta)) {
                best_delta = delta;
                best_axis = ax;
              }
            }
            shift_subtree(order[b], best_axis, best_delta);
          }
        }
      }
      if (clean) return;
    }
    throw LayoutInfeasibleError("box separation did not converge", {});
  }

  Layout finalize() const {
    Layout layout;
    for (const auto& g : groups_) {
      double bottom = 0.0;
      int below = -1;
      for (int id : g.members) {
        Box3 box = nodes_.at(id).box;
        box.center = Vec3(g.x, g.y, bottom + box.half_extents.z());
        bottom = box.top();
        layout.boxes[id] = box;
        if (below >= 0) layout.supporter[id] = below;
        below = id;
      }
    }
    return layout;
  }

  void check_table(const Layout& layout, const Box3& table) const {
    constexpr double kTableSlack = 0.05;
    const Vec3 th = table.hull_half_extents();
    for (const auto& [id, box] : layout.boxes) {
      const Vec3 h = box.hull_half_extents();
      if (std::abs(box.center.x() - table.center.x()) + h.x() > th.x() + kTableSlack ||
          std::abs(box.center.y() - table.center.y()) + h.y() > th.y() + kTableSlack) {
        throw LayoutInfeasibleError("goal box of node " + std::to_string(id) + " leaves the table", {});
      }
    }
  }

  void verify(const Layout& layout) const {
    std::vector<GraphEdge> failing;
    for (const auto& e : graph_.edges()) {
      const RelationSet got = ground_relation(layout.boxes.at(e.from), layout.boxes.at(e.to), params_.grounding);
      if (!got.contains(e.relation)) failing.push_back(e);
    }
    if (!failing.empty()) {
      std::string detail = "layout does not realize:";
      for (const auto& e : failing) detail += " [" + edge_text(e) + "]";
      throw LayoutInfeasibleError(detail, failing);
    }
  }

  const SceneGraph& graph_;
  const std::map<int, ShapePrior>& priors_;
  std::uint64_t seed_;
  const CategoryVocabulary& vocab_;
  const LayoutParams& params_;

  Box3 table_;
  int anchor_ = 0;
  std::map<int, NodeBox> nodes_;
  std::map<int, int> supporter_;
  std::map<int, int> group_of_;
  std::vector<Group> groups_;
  int next_order_ = 0;
};

}  // namespace

Layout solve_layout(const SceneGraph& graph, const std::map<int, ShapePrior>& priors, const Box3& table,
                    std::uint64_t seed, const CategoryVocabulary& vocab, const LayoutParams& params) {
  return Solver(graph, priors, seed, vocab, params).run(table);
}

}  // namespace sgbot
