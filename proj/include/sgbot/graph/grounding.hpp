#pragma once

#include <cstdint>
#include <string>

#include "sgbot/core/geometry.hpp"
#include "sgbot/core/scene_graph.hpp"

namespace sgbot {

struct GroundingParams {
  double eps_z = 0.01;               // bottom/top contact tolerance (m)
  double delta_close_factor = 1.25;  // close_by radius as a multiple of half-diagonal sum
  double footprint_overlap = 0.5;    // fraction of i's footprint that must lie over j
};

class RelationSet {
 public:
  void insert(RelationLabel r) { bits_ |= bit(r); }
  bool contains(RelationLabel r) const { return (bits_ & bit(r)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::string to_string() const;
  friend bool operator==(RelationSet, RelationSet) = default;

 private:
  static std::uint8_t bit(RelationLabel r) { return static_cast<std::uint8_t>(1u << static_cast<int>(r)); }
  std::uint8_t bits_ = 0;
};

/// Fraction of a's axis-aligned footprint hull covered by b's.
double footprint_overlap_fraction(const Box3& a, const Box3& b);

/// Relations holding for box i relative to box j.
RelationSet ground_relation(const Box3& box_i, const Box3& box_j, const GroundingParams& params = {});

}  // namespace sgbot
