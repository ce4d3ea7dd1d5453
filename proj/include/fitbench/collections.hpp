#pragma once

// Ordered, name-unique, array-backed container of node references.
//
// The container is tuned for the dominant access pattern of graph
// evaluation: forward iteration. Appending and finding are less frequent,
// removal is rare. Iteration order equals insertion order unless
// sort_by_name() is called explicitly.
//
// Concurrency: read-only traversal from several threads is safe once
// construction is complete; any mutation needs exclusive access. find() is
// logically const but may build the name index on first use, so the first
// find() also counts as a mutation for synchronization purposes.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fitbench/debug.hpp"
#include "fitbench/node_id.hpp"

// Native iterators carry a generation check in assert-enabled builds.
#if !defined(NDEBUG) || defined(FITBENCH_FORCE_DEBUG_ITERATORS)
#define FITBENCH_DEBUG_ITERATORS 1
#endif

namespace fitbench {

class NodeCollection {
 public:
  struct Entry {
    NodeId id;
    std::string name;
  };

  NodeCollection() = default;

  // Appends (id, name). Returns false and leaves the collection unchanged
  // if the name is already present.
  bool insert(NodeId id, std::string name);

  // Name lookup. Linear scan below the index threshold, hash lookup above.
  std::optional<NodeId> find(std::string_view name) const;

  // Removes the entry with the given name, shifting later positions left.
  // Returns false if the name is absent. Rare operation, linear.
  bool erase(std::string_view name);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // Constant-time random access.
  NodeId operator[](std::size_t pos) const { return entries_[pos].id; }
  std::string_view name_at(std::size_t pos) const { return entries_[pos].name; }

  // Bumped on every structural modification.
  std::uint64_t generation() const noexcept { return generation_; }

  void sort_by_name();

  class const_iterator {
   public:
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;

    const_iterator() = default;

    NodeId operator*() const {
      check();
      return ptr_->id;
    }

    const_iterator& operator++() {
      check();
      ++ptr_;
      return *this;
    }

    const_iterator operator++(int) {
      const_iterator old = *this;
      ++(*this);
      return old;
    }

    friend bool operator==(const const_iterator& a, const const_iterator& b) {
      return a.ptr_ == b.ptr_;
    }

   private:
    friend class NodeCollection;

#ifdef FITBENCH_DEBUG_ITERATORS
    const_iterator(const Entry* ptr, const NodeCollection* coll)
        : ptr_(ptr), coll_(coll), generation_(coll->generation()) {}

    void check() const {
      if (coll_ != nullptr && coll_->generation() != generation_ && debug_checks_enabled() &&
          !warned_) {
        emit_diagnostic("NodeCollection iterator used after the collection was modified");
        warned_ = true;
      }
    }

    const NodeCollection* coll_ = nullptr;
    std::uint64_t generation_ = 0;
    mutable bool warned_ = false;
#else
    explicit const_iterator(const Entry* ptr, const NodeCollection*) : ptr_(ptr) {}

    void check() const {}
#endif

    const Entry* ptr_ = nullptr;
  };

  const_iterator begin() const { return const_iterator(entries_.data(), this); }
  const_iterator end() const { return const_iterator(entries_.data() + entries_.size(), this); }

  const std::vector<Entry>& entries() const noexcept { return entries_; }

  // Hash index kicks in at this size; below it a linear scan wins.
  static constexpr std::size_t kIndexThreshold = 64;

 private:
  bool contains(std::string_view name) const;
  void build_index() const;

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<Entry> entries_;
  mutable std::unordered_map<std::string, NodeId, StringHash, std::equal_to<>> name_index_;
  mutable bool index_built_ = false;
  std::uint64_t generation_ = 0;
};

// Polymorphic traversal backend. Legacy cursors go through this interface so
// one cursor type can serve different backing containers; the indirection
// (one heap allocation per cursor plus a virtual call per step) is the
// measured cost of the compatibility layer.
class TraversalSource {
 public:
  virtual ~TraversalSource() = default;
  virtual std::optional<NodeId> next() = 0;
  virtual std::size_t position() const = 0;
  virtual std::uint64_t creation_generation() const = 0;
};

// Index-based cursor emulating linked-list-era iteration over the
// array-backed collection.
//
// The cursor holds a reference to the collection and uses index access, so
// it stays valid across capacity reallocations, and elements appended after
// creation are reached normally. Inserting or deleting elements strictly
// before the current position is not supported: positions shift and the
// cursor index is NOT adjusted. When the diagnostics are enabled (see
// debug.hpp) such a modification is detected on the following next() and a
// warning is emitted; traversal then simply continues by index.
class LegacyCursor {
 public:
  explicit LegacyCursor(const NodeCollection& coll);

  // Returns the element at the current position and advances, or nullopt at
  // the end.
  std::optional<NodeId> next();

  std::size_t position() const { return impl_->position(); }
  std::uint64_t creation_generation() const { return impl_->creation_generation(); }

 private:
  std::unique_ptr<TraversalSource> impl_;
};

}  // namespace fitbench
