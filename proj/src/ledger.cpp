#include "mixscan/ledger.hpp"

#include <fstream>

#include <json.hpp>

namespace mixscan {

const char* addr_type_name(AddrType type) {
    switch (type) {
        case AddrType::P2PKH: return "p2pkh";
        case AddrType::P2SH: return "p2sh";
        case AddrType::P2WPKH: return "p2wpkh";
        case AddrType::P2WSH: return "p2wsh";
        case AddrType::Other: return "other";
    }
    return "other";
}

std::optional<AddrType> addr_type_from_name(const std::string& name) {
    if (name == "p2pkh") return AddrType::P2PKH;
    if (name == "p2sh") return AddrType::P2SH;
    if (name == "p2wpkh") return AddrType::P2WPKH;
    if (name == "p2wsh") return AddrType::P2WSH;
    if (name == "other") return AddrType::Other;
    return std::nullopt;
}

bool is_hex64(const std::string& s) {
    if (s.size() != 64) return false;
    for (char c : s) {
        bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
        if (!ok) return false;
    }
    return true;
}

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
    throw Error(Errc::MalformedRecord, what);
}

std::int64_t require_int(const json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number_integer()) malformed(ctx + ": missing or non-integer '" + key + "'");
    return it->get<std::int64_t>();
}

std::string require_hex64(const json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) malformed(ctx + ": missing or non-string '" + key + "'");
    std::string s = it->get<std::string>();
    if (!is_hex64(s)) malformed(ctx + ": '" + key + "' is not 64-char lowercase hex");
    return s;
}

}  // namespace

Block parse_block_line(const std::string& line) {
    json doc;
    try {
        doc = json::parse(line);
    } catch (const json::exception& e) {
        malformed(std::string("bad JSON: ") + e.what());
    }
    if (!doc.is_object()) malformed("record is not a JSON object");

    Block block;
    std::int64_t height = require_int(doc, "height", "block");
    if (height < 0 || height > static_cast<std::int64_t>(UINT32_MAX)) malformed("block height out of range");
    block.height = static_cast<std::uint32_t>(height);
    block.time_unix = require_int(doc, "time", "block");

    auto txs_it = doc.find("txs");
    if (txs_it == doc.end() || !txs_it->is_array()) malformed("block: missing or non-array 'txs'");

    for (const auto& jtx : *txs_it) {
        if (!jtx.is_object()) malformed("tx entry is not an object");
        Transaction tx;
        tx.txid = require_hex64(jtx, "txid", "tx");
        tx.block_height = block.height;
        tx.time_unix = block.time_unix;
        if (auto t = jtx.find("time"); t != jtx.end()) {
            if (!t->is_number_integer()) malformed("tx " + tx.txid + ": non-integer 'time'");
            tx.time_unix = t->get<std::int64_t>();
        }

        auto in_it = jtx.find("inputs");
        if (in_it == jtx.end() || !in_it->is_array()) malformed("tx " + tx.txid + ": missing 'inputs'");
        for (const auto& jin : *in_it) {
            if (!jin.is_object()) malformed("tx " + tx.txid + ": input is not an object");
            Outpoint op;
            op.txid = require_hex64(jin, "txid", "tx " + tx.txid + " input");
            std::int64_t vout = require_int(jin, "vout", "tx " + tx.txid + " input");
            if (vout < 0 || vout > static_cast<std::int64_t>(UINT32_MAX))
                malformed("tx " + tx.txid + ": input vout out of range");
            op.vout = static_cast<std::uint32_t>(vout);
            tx.inputs.push_back(std::move(op));
        }

        auto out_it = jtx.find("outputs");
        if (out_it == jtx.end() || !out_it->is_array() || out_it->empty())
            malformed("tx " + tx.txid + ": missing or empty 'outputs'");
        for (const auto& jout : *out_it) {
            if (!jout.is_object()) malformed("tx " + tx.txid + ": output is not an object");
            TxOutput out;
            auto addr_it = jout.find("address");
            if (addr_it == jout.end() || !addr_it->is_string()) malformed("tx " + tx.txid + ": output missing 'address'");
            out.address = addr_it->get<std::string>();
            if (out.address.empty()) malformed("tx " + tx.txid + ": empty output address");
            auto type_it = jout.find("type");
            if (type_it == jout.end() || !type_it->is_string()) malformed("tx " + tx.txid + ": output missing 'type'");
            auto type = addr_type_from_name(type_it->get<std::string>());
            if (!type) malformed("tx " + tx.txid + ": unknown output type '" + type_it->get<std::string>() + "'");
            out.type = *type;
            out.value_sat = require_int(jout, "value_sat", "tx " + tx.txid + " output");
            if (out.value_sat < 0) malformed("tx " + tx.txid + ": negative value_sat");
            tx.outputs.push_back(std::move(out));
        }
        block.txs.push_back(std::move(tx));
    }
    return block;
}

std::string serialize_block(const Block& block) {
    nlohmann::ordered_json doc;
    doc["height"] = block.height;
    doc["time"] = block.time_unix;
    auto& txs = doc["txs"] = nlohmann::ordered_json::array();
    for (const Transaction& tx : block.txs) {
        nlohmann::ordered_json jtx;
        jtx["txid"] = tx.txid;
        if (tx.time_unix != block.time_unix) jtx["time"] = tx.time_unix;
        auto& jins = jtx["inputs"] = nlohmann::ordered_json::array();
        for (const Outpoint& op : tx.inputs) jins.push_back({{"txid", op.txid}, {"vout", op.vout}});
        auto& jouts = jtx["outputs"] = nlohmann::ordered_json::array();
        for (const TxOutput& out : tx.outputs)
            jouts.push_back({{"address", out.address},
                             {"type", addr_type_name(out.type)},
                             {"value_sat", out.value_sat}});
        txs.push_back(std::move(jtx));
    }
    return doc.dump();
}

const Transaction* Ledger::find_tx(const std::string& txid) const {
    auto it = tx_index_.find(txid);
    return it == tx_index_.end() ? nullptr : &resolve(it->second);
}

const Transaction& Ledger::tx(const std::string& txid) const {
    const Transaction* t = find_tx(txid);
    if (!t) throw Error(Errc::SeedNotFound, "unknown txid " + txid);
    return *t;
}

const TxOutput& Ledger::output_at(const Outpoint& op) const {
    const Transaction* t = find_tx(op.txid);
    if (!t || op.vout >= t->outputs.size())
        throw Error(Errc::UnknownOutpoint, op.txid + ":" + std::to_string(op.vout));
    return t->outputs[op.vout];
}

std::optional<std::string> Ledger::spender_of(const Outpoint& op) const {
    const Transaction* t = find_tx(op.txid);
    if (!t || op.vout >= t->outputs.size())
        throw Error(Errc::UnknownOutpoint, op.txid + ":" + std::to_string(op.vout));
    auto it = spender_index_.find(op);
    if (it == spender_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Ledger::funding_txs(const std::string& address) const {
    auto it = funding_index_.find(address);
    if (it == funding_index_.end()) return {};
    return it->second;
}

void Ledger::index_block(std::size_t block_idx, bool validate) {
    const Block& block = blocks_[block_idx];
    for (std::size_t i = 0; i < block.txs.size(); ++i) {
        const Transaction& tx = block.txs[i];
        if (validate) {
            if (tx.block_height != block.height)
                throw Error(Errc::MalformedRecord, "tx " + tx.txid + " height disagrees with its block");
            if (tx.outputs.empty())
                throw Error(Errc::MalformedRecord, "tx " + tx.txid + " has no outputs");
            if (!is_hex64(tx.txid))
                throw Error(Errc::MalformedRecord, "tx id is not 64-char lowercase hex");
            if (tx_index_.count(tx.txid))
                throw Error(Errc::DuplicateTxid, tx.txid);

            std::int64_t in_total = 0;
            for (const Outpoint& op : tx.inputs) {
                auto funder = tx_index_.find(op.txid);
                if (funder == tx_index_.end()) {
                    throw Error(Errc::DanglingInput,
                                "tx " + tx.txid + " spends unknown outpoint " + op.txid + ":" +
                                    std::to_string(op.vout));
                }
                const Transaction& prev = resolve(funder->second);
                if (op.vout >= prev.outputs.size())
                    throw Error(Errc::DanglingInput,
                                "tx " + tx.txid + " spends unknown outpoint " + op.txid + ":" +
                                    std::to_string(op.vout));
                if (spender_index_.count(op))
                    throw Error(Errc::DoubleSpend,
                                "tx " + tx.txid + " respends " + op.txid + ":" + std::to_string(op.vout));
                in_total += prev.outputs[op.vout].value_sat;
            }
            if (!tx.is_coinbase()) {
                std::int64_t out_total = 0;
                for (const TxOutput& out : tx.outputs) out_total += out.value_sat;
                if (in_total < out_total)
                    throw Error(Errc::ConservationViolation,
                                "tx " + tx.txid + " pays " + std::to_string(out_total) + " from " +
                                    std::to_string(in_total));
            }
        }

        for (const Outpoint& op : tx.inputs) spender_index_[op] = tx.txid;
        tx_index_.emplace(tx.txid, TxRef{static_cast<std::uint32_t>(block_idx), static_cast<std::uint32_t>(i)});
        for (const TxOutput& out : tx.outputs) {
            auto& list = funding_index_[out.address];
            if (list.empty() || list.back() != tx.txid) list.push_back(tx.txid);
        }
    }
}

Ledger Ledger::from_blocks_unchecked(std::vector<Block> blocks) {
    Ledger ledger;
    ledger.blocks_ = std::move(blocks);
    for (std::size_t b = 0; b < ledger.blocks_.size(); ++b) ledger.index_block(b, false);
    return ledger;
}

void LedgerBuilder::add_block(Block block) {
    if (finished_) throw Error(Errc::IoError, "builder already finished");
    if (!ledger_.blocks_.empty()) {
        const Block& prev = ledger_.blocks_.back();
        if (block.height <= prev.height)
            throw Error(Errc::OutOfOrder, "block " + std::to_string(block.height) + " after " +
                                              std::to_string(prev.height));
        if (block.time_unix < prev.time_unix)
            throw Error(Errc::OutOfOrder, "block " + std::to_string(block.height) + " time regresses");
    }
    ledger_.blocks_.push_back(std::move(block));
    ledger_.index_block(ledger_.blocks_.size() - 1, true);
}

Ledger LedgerBuilder::finish() {
    finished_ = true;
    return std::move(ledger_);
}

Ledger ingest(std::vector<Block> blocks) {
    LedgerBuilder builder;
    for (Block& block : blocks) builder.add_block(std::move(block));
    return builder.finish();
}

Ledger load_ledger_file(const std::string& path, bool strict, LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);

    LoadStats local;
    LedgerBuilder builder;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ++local.lines;
        Block block;
        try {
            block = parse_block_line(line);
        } catch (const Error& e) {
            if (strict || e.code() != Errc::MalformedRecord)
                throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
            ++local.malformed_skipped;
            continue;
        }
        local.txs += block.txs.size();
        ++local.blocks;
        try {
            builder.add_block(std::move(block));
        } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (stats) *stats = local;
    return builder.finish();
}

}  // namespace mixscan
