#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lzn {

/// Path of child indices from the root of a rooted tree. The empty
/// address is the root itself.
class TreeAddress {
 public:
  TreeAddress() = default;
  explicit TreeAddress(std::vector<std::uint32_t> steps) : steps_(std::move(steps)) {}

  static TreeAddress root() { return TreeAddress{}; }

  bool is_root() const { return steps_.empty(); }
  int depth() const { return static_cast<int>(steps_.size()); }
  const std::vector<std::uint32_t>& steps() const { return steps_; }
  std::uint32_t step(int i) const { return steps_[static_cast<std::size_t>(i)]; }

  TreeAddress child(std::uint32_t index) const {
    std::vector<std::uint32_t> s = steps_;
    s.push_back(index);
    return TreeAddress(std::move(s));
  }

  TreeAddress parent() const;

  /// Prefix of the first `len` steps.
  TreeAddress prefix(int len) const;

  bool is_prefix_of(const TreeAddress& other) const;
  int common_prefix_length(const TreeAddress& other) const;

  auto operator<=>(const TreeAddress&) const = default;

  /// Renders as "()" for the root, "(0.2.1)" otherwise.
  std::string to_string() const;
  static std::optional<TreeAddress> parse(const std::string& text);

 private:
  std::vector<std::uint32_t> steps_;
};

/// Vertex identity usable across graph kinds: a plain index for finite
/// graphs, a tree address for lazily expanded rooted trees. The total
/// order (indices first, then addresses lexicographically) is the
/// canonical tie-breaking order everywhere.
class VertexId {
 public:
  VertexId() : kind_(Kind::Index), index_(0) {}

  static VertexId from_index(int i) {
    VertexId v;
    v.kind_ = Kind::Index;
    v.index_ = i;
    return v;
  }
  static VertexId from_address(TreeAddress a) {
    VertexId v;
    v.kind_ = Kind::Address;
    v.address_ = std::move(a);
    return v;
  }

  bool is_index() const { return kind_ == Kind::Index; }
  bool is_address() const { return kind_ == Kind::Address; }
  int index() const;
  const TreeAddress& address() const;

  bool operator==(const VertexId& o) const {
    return kind_ == o.kind_ && index_ == o.index_ && address_ == o.address_;
  }
  std::strong_ordering operator<=>(const VertexId& o) const {
    if (kind_ != o.kind_) return kind_ == Kind::Index ? std::strong_ordering::less : std::strong_ordering::greater;
    if (kind_ == Kind::Index) return index_ <=> o.index_;
    return address_ <=> o.address_;
  }

  std::string to_string() const;
  static std::optional<VertexId> parse(const std::string& text);

  std::size_t hash() const;

 private:
  enum class Kind { Index, Address };
  Kind kind_;
  int index_ = 0;
  TreeAddress address_;
};

struct VertexIdHash {
  std::size_t operator()(const VertexId& v) const { return v.hash(); }
};

}  // namespace lzn
