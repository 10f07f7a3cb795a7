#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "mixscan/detector.hpp"
#include "mixscan/ledger.hpp"

namespace mixscan {

// Disjoint partition of every address the ledger has paid, under the
// common-input-ownership relation: addresses spent together by one
// transaction share an owner. Cluster id is the lexicographically smallest
// member, so ids do not depend on processing order.
class ClusterSet {
  public:
    // Canonical id of the cluster containing the address. Unknown
    // addresses are their own singleton.
    const std::string& cluster_of(const std::string& address) const;

    // Members of the cluster with the given canonical id, sorted.
    const std::vector<std::string>& members_of(const std::string& cluster_id) const;

    // All clusters as (id -> sorted members), id-sorted.
    std::vector<std::pair<std::string, std::vector<std::string>>> clusters() const;

    std::size_t address_count() const { return index_.size(); }
    std::size_t cluster_count() const { return members_.size(); }

  private:
    friend ClusterSet build_clusters(const Ledger& ledger);

    std::unordered_map<std::string, std::string> index_;  // address -> canonical id
    std::unordered_map<std::string, std::vector<std::string>> members_;
};

ClusterSet build_clusters(const Ledger& ledger);

// Expands labels across clusters: an unlabeled address takes the label of
// its cluster when all labeled members agree; a cluster carrying two
// different labels is frozen and recorded as a conflict instead.
// Idempotent, and never rewrites an existing label.
DetectionReport propagate_labels(const ClusterSet& clusters, DetectionReport report);

// {"clusters":[{"id":...,"addresses":[...]}]}, id-sorted.
void write_clusters_file(const std::string& path, const ClusterSet& clusters);

}  // namespace mixscan
