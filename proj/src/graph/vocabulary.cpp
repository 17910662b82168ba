#include "sgbot/graph/vocabulary.hpp"

namespace sgbot {

std::string_view to_string(CategoryRole role) {
  switch (role) {
    case CategoryRole::kAnchor: return "anchor";
    case CategoryRole::kCutlery: return "cutlery";
    case CategoryRole::kOther: return "other";
    case CategoryRole::kObstacle: return "obstacle";
  }
  return "?";
}

CategoryVocabulary CategoryVocabulary::standard() {
  CategoryVocabulary v;
  v.add("plate", CategoryRole::kAnchor, 0);
  v.add("bowl", CategoryRole::kAnchor, 1);
  v.add("cup", CategoryRole::kAnchor, 2);
  for (const char* c : {"fork", "knife", "spoon"}) v.add(c, CategoryRole::kCutlery);
  for (const char* c : {"bottle", "can", "box", "teapot"}) v.add(c, CategoryRole::kOther);
  return v;
}

void CategoryVocabulary::add(std::string category, CategoryRole role, int anchor_rank) {
  entries_[std::move(category)] = Entry{role, anchor_rank};
}

CategoryRole CategoryVocabulary::role(std::string_view category) const {
  auto it = entries_.find(category);
  return it == entries_.end() ? CategoryRole::kObstacle : it->second.role;
}

std::optional<int> CategoryVocabulary::anchor_rank(std::string_view category) const {
  auto it = entries_.find(category);
  if (it == entries_.end() || it->second.role != CategoryRole::kAnchor) return std::nullopt;
  return it->second.anchor_rank;
}

bool CategoryVocabulary::is_known(std::string_view category) const { return entries_.contains(category); }

}  // namespace sgbot
