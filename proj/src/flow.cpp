#include "flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace fareylab::detail {

int FlowNetwork::node(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    index_.emplace(name, id);
    names_.push_back(name);
    adj_.emplace_back();
    return id;
}

void FlowNetwork::add_undirected(const std::string& a, const std::string& b, long cap) {
    int ia = node(a), ib = node(b);
    adj_[ia].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({ib, cap, cap});
    adj_[ib].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({ia, cap, cap});
}

void FlowNetwork::add_directed(const std::string& a, const std::string& b, long cap) {
    int ia = node(a), ib = node(b);
    adj_[ia].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({ib, cap, cap});
    adj_[ib].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({ia, 0, 0});
}

long FlowNetwork::max_flow(const std::string& source, const std::string& sink) {
    source_ = node(source);
    sink_ = node(sink);
    if (source_ == sink_) throw std::invalid_argument("flow source equals sink");

    long total = 0;
    const int n = static_cast<int>(names_.size());
    for (;;) {
        // BFS for a shortest augmenting path.
        std::vector<int> pred_arc(n, -1);
        std::vector<bool> seen(n, false);
        std::deque<int> queue{source_};
        seen[source_] = true;
        while (!queue.empty() && !seen[sink_]) {
            int cur = queue.front();
            queue.pop_front();
            for (int ai : adj_[cur]) {
                const Arc& arc = arcs_[ai];
                if (arc.cap > 0 && !seen[arc.to]) {
                    seen[arc.to] = true;
                    pred_arc[arc.to] = ai;
                    queue.push_back(arc.to);
                }
            }
        }
        if (!seen[sink_]) break;
        long bottleneck = std::numeric_limits<long>::max();
        for (int v = sink_; v != source_;) {
            const Arc& arc = arcs_[pred_arc[v]];
            bottleneck = std::min(bottleneck, arc.cap);
            v = arcs_[pred_arc[v] ^ 1].to;
        }
        for (int v = sink_; v != source_;) {
            int ai = pred_arc[v];
            arcs_[ai].cap -= bottleneck;
            arcs_[ai ^ 1].cap += bottleneck;
            v = arcs_[ai ^ 1].to;
        }
        total += bottleneck;
    }
    return total;
}

std::set<std::string> FlowNetwork::min_cut_source_side() const {
    std::set<std::string> side;
    std::vector<bool> seen(names_.size(), false);
    std::deque<int> queue{source_};
    seen[source_] = true;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        side.insert(names_[cur]);
        for (int ai : adj_[cur]) {
            const Arc& arc = arcs_[ai];
            if (arc.cap > 0 && !seen[arc.to]) {
                seen[arc.to] = true;
                queue.push_back(arc.to);
            }
        }
    }
    return side;
}

std::vector<std::vector<std::string>> FlowNetwork::unit_flow_paths() const {
    // Net usage of arc pair (2k, 2k+1): init - cap on whichever direction
    // carries positive flow. With unit capacities each undirected edge is
    // used in at most one direction.
    std::vector<std::vector<int>> used(names_.size());  // arc indices with net flow
    for (std::size_t k = 0; k + 1 < arcs_.size(); k += 2) {
        long net = arcs_[k].init - arcs_[k].cap;  // positive: forward direction
        int from = arcs_[k + 1].to;
        for (long r = 0; r < net; ++r) used[from].push_back(static_cast<int>(k));
        for (long r = 0; r < -net; ++r) used[arcs_[k].to].push_back(static_cast<int>(k + 1));
    }
    // Smallest-target-first for deterministic walks.
    for (auto& list : used)
        std::sort(list.begin(), list.end(),
                  [&](int a, int b) { return names_[arcs_[a].to] < names_[arcs_[b].to]; });

    std::vector<std::size_t> next(names_.size(), 0);
    std::vector<std::vector<std::string>> paths;
    for (;;) {
        if (next[source_] >= used[source_].size()) break;
        std::vector<std::string> walk{names_[source_]};
        int cur = source_;
        while (cur != sink_) {
            if (next[cur] >= used[cur].size())
                throw std::logic_error("flow decomposition stuck (conservation violated)");
            int ai = used[cur][next[cur]++];
            cur = arcs_[ai].to;
            walk.push_back(names_[cur]);
        }
        // Loop-erase: keep first visits only.
        std::vector<std::string> path;
        std::map<std::string, std::size_t> pos;
        for (const auto& v : walk) {
            auto it = pos.find(v);
            if (it != pos.end()) {
                while (path.size() > it->second + 1) {
                    pos.erase(path.back());
                    path.pop_back();
                }
            } else {
                pos.emplace(v, path.size());
                path.push_back(v);
            }
        }
        paths.push_back(std::move(path));
    }
    return paths;
}

}  // namespace fareylab::detail
