#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mixscan/errors.hpp"

namespace mixscan {

enum class AddrType { P2PKH, P2SH, P2WPKH, P2WSH, Other };

const char* addr_type_name(AddrType type);                    // "p2pkh" ...
std::optional<AddrType> addr_type_from_name(const std::string& name);

// Reference to one output of a prior transaction.
struct Outpoint {
    std::string txid;  // 64-char lowercase hex
    std::uint32_t vout = 0;

    bool operator==(const Outpoint&) const = default;
};

struct OutpointHash {
    std::size_t operator()(const Outpoint& op) const {
        std::size_t h = std::hash<std::string>{}(op.txid);
        return h ^ (static_cast<std::size_t>(op.vout) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

struct TxOutput {
    std::string address;
    AddrType type = AddrType::Other;
    std::int64_t value_sat = 0;

    bool operator==(const TxOutput&) const = default;
};

struct Transaction {
    std::string txid;
    std::vector<Outpoint> inputs;  // empty <=> coinbase
    std::vector<TxOutput> outputs;
    std::int64_t time_unix = 0;
    std::uint32_t block_height = 0;

    bool is_coinbase() const { return inputs.empty(); }

    bool operator==(const Transaction&) const = default;
};

struct Block {
    std::uint32_t height = 0;
    std::int64_t time_unix = 0;
    std::vector<Transaction> txs;

    bool operator==(const Block&) const = default;
};

bool is_hex64(const std::string& s);

// One JSONL record <-> one Block. Throws Error(MalformedRecord) on any
// schema violation; unknown keys are ignored. Transactions without their
// own "time" inherit the block time.
Block parse_block_line(const std::string& line);
std::string serialize_block(const Block& block);

// Immutable indexed transaction graph. Built once by ingestion, then
// read-only; safe for any number of concurrent readers.
class Ledger {
  public:
    const Transaction* find_tx(const std::string& txid) const;
    const Transaction& tx(const std::string& txid) const;  // throws SeedNotFound

    // Output a given outpoint refers to. Throws UnknownOutpoint.
    const TxOutput& output_at(const Outpoint& op) const;

    // Txid spending the outpoint, or nullopt if unspent. Throws
    // UnknownOutpoint if the outpoint does not refer to an existing output.
    std::optional<std::string> spender_of(const Outpoint& op) const;

    // All txids with an output paying the address, in block order.
    // Unknown address yields an empty list.
    std::vector<std::string> funding_txs(const std::string& address) const;

    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t tx_count() const { return tx_index_.size(); }
    std::size_t address_count() const { return funding_index_.size(); }

    // Iteration over the address universe (every address paid by some output).
    template <typename Fn>
    void for_each_address(Fn&& fn) const {
        for (const auto& [addr, txids] : funding_index_) fn(addr);
    }

    // Builds the indexes without any validation. Exists so tests can
    // construct deliberately corrupt graphs (cycles, dangling refs); real
    // ingestion always validates.
    static Ledger from_blocks_unchecked(std::vector<Block> blocks);

  private:
    friend class LedgerBuilder;

    // Position of a transaction inside blocks_; stable across vector growth.
    struct TxRef {
        std::uint32_t block;
        std::uint32_t idx;
    };

    void index_block(std::size_t block_idx, bool validate);
    const Transaction& resolve(TxRef ref) const { return blocks_[ref.block].txs[ref.idx]; }

    std::vector<Block> blocks_;
    std::unordered_map<std::string, TxRef> tx_index_;
    std::unordered_map<Outpoint, std::string, OutpointHash> spender_index_;
    std::unordered_map<std::string, std::vector<std::string>> funding_index_;
};

// Single-writer ingestion: feed blocks in height order, then take the
// ledger. Validates referential integrity, spend uniqueness, ordering and
// value conservation; every error names the offending txid.
class LedgerBuilder {
  public:
    void add_block(Block block);
    Ledger finish();

    std::size_t tx_count() const { return ledger_.tx_index_.size(); }

  private:
    Ledger ledger_;
    bool finished_ = false;
};

Ledger ingest(std::vector<Block> blocks);

struct LoadStats {
    std::size_t lines = 0;
    std::size_t blocks = 0;
    std::size_t txs = 0;
    std::size_t malformed_skipped = 0;
};

// Reads a JSONL block file and ingests it. With strict=true the first
// malformed record aborts; otherwise malformed records are skipped and
// counted. Structural ledger errors (dangling input, double spend, ...)
// always abort, tagged with the offending line.
Ledger load_ledger_file(const std::string& path, bool strict, LoadStats* stats = nullptr);

}  // namespace mixscan
