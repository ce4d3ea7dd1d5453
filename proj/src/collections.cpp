#include "fitbench/collections.hpp"

#include <algorithm>

namespace fitbench {

bool NodeCollection::contains(std::string_view name) const {
  if (index_built_) return name_index_.find(name) != name_index_.end();
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.name == name; });
}

void NodeCollection::build_index() const {
  name_index_.clear();
  name_index_.reserve(entries_.size());
  for (const Entry& e : entries_) name_index_.emplace(e.name, e.id);
  index_built_ = true;
}

bool NodeCollection::insert(NodeId id, std::string name) {
  if (contains(name)) return false;
  if (index_built_) name_index_.emplace(name, id);
  entries_.push_back(Entry{id, std::move(name)});
  ++generation_;
  return true;
}

std::optional<NodeId> NodeCollection::find(std::string_view name) const {
  if (!index_built_ && entries_.size() >= kIndexThreshold) build_index();
  if (index_built_) {
    auto it = name_index_.find(name);
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
  }
  for (const Entry& e : entries_)
    if (e.name == name) return e.id;
  return std::nullopt;
}

bool NodeCollection::erase(std::string_view name) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.name == name; });
  if (it == entries_.end()) return false;
  if (index_built_) name_index_.erase(name_index_.find(it->name));
  entries_.erase(it);
  ++generation_;
  return true;
}

void NodeCollection::sort_by_name() {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.name < b.name; });
  ++generation_;
}

namespace {

class IndexedTraversal final : public TraversalSource {
 public:
  explicit IndexedTraversal(const NodeCollection& coll)
      : coll_(&coll),
        creation_generation_(coll.generation()),
        last_seen_generation_(coll.generation()) {}

  std::optional<NodeId> next() override {
    if (debug_checks_enabled() && pos_ > 0 && coll_->generation() != last_seen_generation_) {
      // The collection changed since the last step. Appends never move the
      // already-consumed prefix, so a mismatch there means something was
      // inserted or deleted before the current position.
      if (pos_ - 1 >= coll_->size() || coll_->name_at(pos_ - 1) != last_yielded_name_) {
        emit_diagnostic(
            "legacy cursor: collection was modified before the current position; "
            "traversal continues by index");
      }
      last_seen_generation_ = coll_->generation();
    }
    if (pos_ >= coll_->size()) return std::nullopt;
    const NodeId id = (*coll_)[pos_];
    last_yielded_name_ = coll_->name_at(pos_);
    last_seen_generation_ = coll_->generation();
    ++pos_;
    return id;
  }

  std::size_t position() const override { return pos_; }
  std::uint64_t creation_generation() const override { return creation_generation_; }

 private:
  const NodeCollection* coll_;
  std::size_t pos_ = 0;
  std::uint64_t creation_generation_;
  std::uint64_t last_seen_generation_;
  std::string last_yielded_name_;
};

}  // namespace

LegacyCursor::LegacyCursor(const NodeCollection& coll)
    : impl_(std::make_unique<IndexedTraversal>(coll)) {}

std::optional<NodeId> LegacyCursor::next() { return impl_->next(); }

}  // namespace fitbench
