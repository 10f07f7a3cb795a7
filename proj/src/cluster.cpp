#include "mixscan/cluster.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace mixscan {

namespace {

// Array-based union find over interned address ids.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

}  // namespace

const std::string& ClusterSet::cluster_of(const std::string& address) const {
    auto it = index_.find(address);
    return it == index_.end() ? address : it->second;
}

const std::vector<std::string>& ClusterSet::members_of(const std::string& cluster_id) const {
    static const std::vector<std::string> empty;
    auto it = members_.find(cluster_id);
    return it == members_.end() ? empty : it->second;
}

std::vector<std::pair<std::string, std::vector<std::string>>> ClusterSet::clusters() const {
    std::vector<std::pair<std::string, std::vector<std::string>>> out(members_.begin(),
                                                                      members_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

ClusterSet build_clusters(const Ledger& ledger) {
    // Intern the address universe in a stable order.
    std::vector<std::string> addresses;
    addresses.reserve(ledger.address_count());
    ledger.for_each_address([&](const std::string& addr) { addresses.push_back(addr); });
    std::sort(addresses.begin(), addresses.end());

    std::unordered_map<std::string, std::size_t> id_of;
    id_of.reserve(addresses.size());
    for (std::size_t i = 0; i < addresses.size(); ++i) id_of.emplace(addresses[i], i);

    UnionFind uf(addresses.size());
    for (const Block& block : ledger.blocks()) {
        for (const Transaction& tx : block.txs) {
            if (tx.inputs.size() < 2) continue;  // coinbase and singletons add no edges
            std::size_t first = id_of.at(ledger.output_at(tx.inputs[0]).address);
            for (std::size_t i = 1; i < tx.inputs.size(); ++i)
                uf.unite(first, id_of.at(ledger.output_at(tx.inputs[i]).address));
        }
    }

    // Canonical id: smallest member. Addresses are sorted, so the first
    // address seen for each root is the minimum.
    ClusterSet set;
    std::unordered_map<std::size_t, std::string> canon;
    for (std::size_t i = 0; i < addresses.size(); ++i) {
        std::size_t root = uf.find(i);
        auto it = canon.find(root);
        if (it == canon.end()) it = canon.emplace(root, addresses[i]).first;
        set.index_.emplace(addresses[i], it->second);
        set.members_[it->second].push_back(addresses[i]);
    }
    return set;
}

DetectionReport propagate_labels(const ClusterSet& clusters, DetectionReport report) {
    // Group existing labels per cluster.
    struct ClusterLabels {
        std::vector<const AddressLabel*> carriers;
    };
    std::unordered_map<std::string, ClusterLabels> by_cluster;
    std::unordered_set<std::string> labeled;
    for (const AddressLabel& label : report.labels) {
        by_cluster[clusters.cluster_of(label.address)].carriers.push_back(&label);
        labeled.insert(label.address);
    }

    std::unordered_set<std::string> conflict_keys;
    for (const LabelConflict& c : report.conflicts)
        conflict_keys.insert(c.address + '|' + label_kind_name(c.first) + '|' +
                             label_kind_name(c.second) + '|' + c.context);

    std::vector<AddressLabel> added;
    std::vector<LabelConflict> new_conflicts;
    for (auto& [cluster_id, info] : by_cluster) {
        // Deterministic carrier order regardless of map iteration.
        std::sort(info.carriers.begin(), info.carriers.end(),
                  [](const AddressLabel* a, const AddressLabel* b) {
                      return a->address < b->address;
                  });
        const AddressLabel* exemplar = info.carriers.front();
        bool conflicted = false;
        for (const AddressLabel* carrier : info.carriers) {
            if (carrier->label != exemplar->label) {
                LabelConflict conflict{cluster_id, exemplar->label, carrier->label,
                                       "cluster:" + cluster_id};
                std::string key = conflict.address + '|' + label_kind_name(conflict.first) + '|' +
                                  label_kind_name(conflict.second) + '|' + conflict.context;
                if (conflict_keys.insert(key).second) new_conflicts.push_back(conflict);
                conflicted = true;
                break;
            }
        }
        if (conflicted) continue;

        for (const std::string& member : clusters.members_of(cluster_id)) {
            if (labeled.count(member)) continue;
            added.push_back({member, exemplar->label, LabelSource::ClusterPropagation,
                             exemplar->chain_id});
        }
    }

    report.labels.insert(report.labels.end(), added.begin(), added.end());
    report.conflicts.insert(report.conflicts.end(), new_conflicts.begin(), new_conflicts.end());
    std::sort(report.labels.begin(), report.labels.end(),
              [](const AddressLabel& a, const AddressLabel& b) { return a.address < b.address; });
    std::sort(report.conflicts.begin(), report.conflicts.end(),
              [](const LabelConflict& a, const LabelConflict& b) { return a.address < b.address; });
    return report;
}

void write_clusters_file(const std::string& path, const ClusterSet& clusters) {
    nlohmann::ordered_json doc;
    auto& list = doc["clusters"] = nlohmann::ordered_json::array();
    for (const auto& [id, members] : clusters.clusters())
        list.push_back({{"id", id}, {"addresses", members}});
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot write " + path);
    out << doc.dump() << '\n';
    if (!out) throw Error(Errc::IoError, "write failed for " + path);
}

}  // namespace mixscan
