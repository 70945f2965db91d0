#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "anyangle/geometry.hpp"

namespace anyangle {

using NodeId = std::uint32_t;

/// Open list with in-place Close: one entry per node, closed entries are never
/// selected or updated again. Selection order is smallest g+h, then smallest h,
/// then lexicographic (x, y).
class OpenList {
 public:
  enum class Status : std::uint8_t { unseen, open, closed };

  explicit OpenList(std::size_t node_count)
      : status_(node_count, Status::unseen), g_(node_count, 0.0), h_(node_count, 0.0), parent_(node_count, 0) {}

  Status status(NodeId n) const { return status_[n]; }
  bool is_open(NodeId n) const { return status_[n] == Status::open; }
  bool is_closed(NodeId n) const { return status_[n] == Status::closed; }
  double g(NodeId n) const { return g_[n]; }
  double h(NodeId n) const { return h_[n]; }
  NodeId parent(NodeId n) const { return parent_[n]; }

  /// Number of distinct nodes ever inserted.
  std::size_t inserted() const { return inserted_; }

  void insert(NodeId n, const Point& p, NodeId parent, double g, double h) {
    if (status_[n] != Status::unseen) return;
    status_[n] = Status::open;
    ++inserted_;
    set(n, p, parent, g, h);
  }

  void update(NodeId n, const Point& p, NodeId parent, double g, double h) {
    if (status_[n] != Status::open) return;
    set(n, p, parent, g, h);
  }

  void close(NodeId n) { status_[n] = Status::closed; }

  /// Best open node, without removing it.
  std::optional<NodeId> best() {
    while (!heap_.empty()) {
      const Entry& top = heap_.top();
      if (status_[top.id] == Status::open && top.g == g_[top.id]) return top.id;
      heap_.pop();
    }
    return std::nullopt;
  }

 private:
  struct Entry {
    double f;
    double h;
    Point p;
    double g;
    NodeId id;
  };
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.f != b.f) return a.f > b.f;
      if (a.h != b.h) return a.h > b.h;
      return b.p < a.p;
    }
  };

  void set(NodeId n, const Point& p, NodeId parent, double g, double h) {
    g_[n] = g;
    h_[n] = h;
    parent_[n] = parent;
    heap_.push({g + h, h, p, g, n});
  }

  std::vector<Status> status_;
  std::vector<double> g_;
  std::vector<double> h_;
  std::vector<NodeId> parent_;
  std::priority_queue<Entry, std::vector<Entry>, Worse> heap_;
  std::size_t inserted_ = 0;
};

}  // namespace anyangle
