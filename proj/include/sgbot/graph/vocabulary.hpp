#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace sgbot {

enum class CategoryRole { kAnchor, kCutlery, kOther, kObstacle };

std::string_view to_string(CategoryRole role);

/// Known tabletop categories and their rule roles. Anything not listed is an
/// obstacle. Anchors are ranked plate > bowl > cup.
class CategoryVocabulary {
 public:
  static CategoryVocabulary standard();

  void add(std::string category, CategoryRole role, int anchor_rank = 0);
  CategoryRole role(std::string_view category) const;
  /// Lower is higher priority; nullopt for non-anchors.
  std::optional<int> anchor_rank(std::string_view category) const;
  bool is_known(std::string_view category) const;

 private:
  struct Entry {
    CategoryRole role;
    int anchor_rank;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace sgbot
