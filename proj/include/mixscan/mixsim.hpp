#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mixscan/ledger.hpp"

namespace mixscan {

// Synthetic-ledger scenario. Entity populations are sized so that, with
// default detection thresholds, planted mixer chains conform (length and
// gap median inside the accepted band) while exchange chains fail only the
// time filter and wallet chains fail only the length filter. All timing is
// quantized to whole blocks.
struct SimScenario {
    std::uint64_t seed = 42;

    int n_mixers = 3;
    int deposits_per_mixer = 6;
    int sweeper_inputs_min = 12;  // deposits plus service-owned refills
    int sweeper_inputs_max = 25;
    int chain_len_min = 53;  // sweeper included
    int chain_len_max = 120;
    int mixer_delay_min_minutes = 20;
    int mixer_delay_max_minutes = 70;

    int n_exchange_chains = 20;
    int exchange_chain_len_min = 53;
    int exchange_chain_len_max = 90;
    int exchange_delay_minutes = 10;

    int n_wallet_chains = 20;
    int wallet_chain_len_min = 3;
    int wallet_chain_len_max = 9;
    int wallet_delay_min_hours = 110;
    int wallet_delay_max_hours = 150;

    std::int64_t n_noise_txs = 50'000;

    int block_interval_minutes = 10;
    std::int64_t genesis_time_unix = 1'600'000'000;

    void validate() const;  // throws BadParams / ScenarioInfeasible
};

// Exact answers the generator planted, for evaluation.
struct GroundTruth {
    std::vector<std::vector<std::string>> mixer_chains;  // sweeper first
    std::vector<std::string> mixer_addresses;            // sorted
    std::vector<std::string> dirty_addresses;            // sorted
    std::vector<std::string> clean_addresses;            // sorted
    std::map<std::string, std::string> entity_of_address;
};

struct SimResult {
    std::vector<Block> blocks;
    GroundTruth truth;
    std::size_t tx_count = 0;
};

// Deterministic generation: the same scenario yields byte-identical block
// and truth files on every run.
SimResult generate(const SimScenario& scenario);

SimScenario scenario_from_kv(const std::map<std::string, std::string>& kv);
SimScenario scenario_from_file(const std::string& path);

void write_blocks_file(const std::string& path, const std::vector<Block>& blocks);
void write_truth_file(const std::string& path, const GroundTruth& truth);
GroundTruth read_truth_file(const std::string& path);

}  // namespace mixscan
