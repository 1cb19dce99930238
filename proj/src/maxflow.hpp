#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

#include "monarel/rational.hpp"

namespace monarel::detail {

/// Edmonds-Karp on exact integer capacities. Scratch state lives in the
/// object; one instance per invocation.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : adj_(nodes) {}

  /// Returns the edge index, usable with flow_on().
  std::size_t add_edge(std::size_t from, std::size_t to, BigInt capacity) {
    std::size_t id = edges_.size();
    edges_.push_back({to, std::move(capacity), 0});
    adj_[from].push_back(id);
    edges_.push_back({from, 0, 0});
    adj_[to].push_back(id + 1);
    return id;
  }

  BigInt run(std::size_t source, std::size_t sink) {
    BigInt total = 0;
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    while (true) {
      std::vector<std::size_t> via(adj_.size(), none);
      std::vector<bool> seen(adj_.size(), false);
      std::deque<std::size_t> queue{source};
      seen[source] = true;
      while (!queue.empty() && !seen[sink]) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t e : adj_[u]) {
          const Edge& edge = edges_[e];
          if (!seen[edge.to] && residual(e) > 0) {
            seen[edge.to] = true;
            via[edge.to] = e;
            queue.push_back(edge.to);
          }
        }
      }
      if (!seen[sink]) break;
      BigInt push = -1;
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        BigInt r = residual(via[v]);
        if (push < 0 || r < push) push = r;
      }
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].flow += push;
        edges_[via[v] ^ 1].flow -= push;
      }
      total += push;
    }
    return total;
  }

  const BigInt& flow_on(std::size_t edge) const { return edges_[edge].flow; }

  /// Nodes reachable from `source` in the residual graph; after run() this is
  /// the source side of a minimum cut.
  std::vector<bool> reachable(std::size_t source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::deque<std::size_t> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t e : adj_[u]) {
        if (!seen[edges_[e].to] && residual(e) > 0) {
          seen[edges_[e].to] = true;
          queue.push_back(edges_[e].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    BigInt capacity;
    BigInt flow;
  };

  BigInt residual(std::size_t e) const { return edges_[e].capacity - edges_[e].flow; }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
};

}  // namespace monarel::detail
