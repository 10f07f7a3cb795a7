#include "mixscan/mixsim.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>

#include <json.hpp>

#include "mixscan/params.hpp"

namespace mixscan {

namespace {

constexpr std::int64_t kBtc = 100'000'000;
constexpr std::int64_t kFee = 10'000;        // flat per-tx fee
constexpr std::int64_t kMinPayout = 100'000; // smallest clean-side output
constexpr std::int64_t kPoolDust = 60'000;   // noise outputs below this stay unspent

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

// Counter-hashed ids: splitmix64 is a bijection, so distinct counters can
// never collide.
class IdGen {
  public:
    explicit IdGen(std::uint64_t seed)
        : tx_base_(splitmix64(seed ^ 0x7478696400000000ULL)),
          addr_base_(splitmix64(seed ^ 0x6164647200000000ULL)) {}

    std::string next_txid() {
        std::uint64_t base = tx_base_ + 4 * tx_counter_++;
        return hex16(splitmix64(base)) + hex16(splitmix64(base + 1)) + hex16(splitmix64(base + 2)) +
               hex16(splitmix64(base + 3));
    }

    std::string next_address(AddrType type) {
        char prefix = 'x';
        switch (type) {
            case AddrType::P2PKH: prefix = '1'; break;
            case AddrType::P2SH: prefix = '3'; break;
            case AddrType::P2WPKH: prefix = 'q'; break;
            case AddrType::P2WSH: prefix = 'w'; break;
            case AddrType::Other: prefix = 'x'; break;
        }
        return std::string(1, prefix) + hex16(splitmix64(addr_base_ + addr_counter_++));
    }

  private:
    std::uint64_t tx_base_;
    std::uint64_t addr_base_;
    std::uint64_t tx_counter_ = 0;
    std::uint64_t addr_counter_ = 0;
};

// Smallest input value that can sustain `hops` further 1:2 withdrawals
// (input above 1 BTC, payout at least kMinPayout, change at least five
// times the payout).
std::int64_t budget_need(int hops) {
    std::int64_t need = 0;
    for (int i = 0; i < hops; ++i)
        need = std::max<std::int64_t>(kBtc + 1,
                                      kMinPayout + kFee + std::max<std::int64_t>(5 * kMinPayout, need));
    return need;
}

class Generator {
  public:
    explicit Generator(const SimScenario& sc)
        : sc_(sc), rng_(splitmix64(sc.seed)), ids_(sc.seed) {}

    SimResult run() {
        for (int i = 0; i < sc_.n_mixers; ++i) plant_mixer(i);
        for (int i = 0; i < sc_.n_exchange_chains; ++i) plant_exchange(i);
        for (int i = 0; i < sc_.n_wallet_chains; ++i) plant_wallet(i);
        plant_noise();

        SimResult result;
        for (std::uint32_t h = 0; h <= max_height_; ++h) {
            Block block;
            block.height = h;
            block.time_unix = block_time(h);
            auto it = by_block_.find(h);
            if (it != by_block_.end()) block.txs = std::move(it->second);
            result.tx_count += block.txs.size();
            result.blocks.push_back(std::move(block));
        }

        finalize_truth();
        result.truth = std::move(truth_);
        return result;
    }

  private:
    std::int64_t block_time(std::uint32_t h) const {
        return sc_.genesis_time_unix +
               static_cast<std::int64_t>(h) * sc_.block_interval_minutes * 60;
    }

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    std::string emit(std::uint32_t height, std::vector<Outpoint> inputs,
                     std::vector<TxOutput> outputs) {
        Transaction tx;
        tx.txid = ids_.next_txid();
        tx.inputs = std::move(inputs);
        tx.outputs = std::move(outputs);
        tx.block_height = height;
        tx.time_unix = block_time(height);
        max_height_ = std::max(max_height_, height);
        std::string txid = tx.txid;
        by_block_[height].push_back(std::move(tx));
        return txid;
    }

    std::string fresh_address(AddrType type, const std::string& entity) {
        std::string addr = ids_.next_address(type);
        truth_.entity_of_address.emplace(addr, entity);
        return addr;
    }

    AddrType non_p2sh_type() {
        switch (uniform(0, 9)) {
            case 0: case 1: case 2: case 3: case 4: case 5: return AddrType::P2PKH;
            case 6: case 7: return AddrType::P2WPKH;
            case 8: return AddrType::P2WSH;
            default: return AddrType::Other;
        }
    }

    // Sweeper plus 1:2 withdrawal chain, value budget maintained so every
    // hop keeps its input above 1 BTC and its change at least five times
    // the payout. Returns [sweeper, hop txids...].
    struct ChainPlant {
        std::vector<std::string> txids;
        std::vector<std::string> service_addresses;
        std::vector<std::string> payout_addresses;
    };

    ChainPlant plant_patterned_chain(const std::string& entity, std::uint32_t sweeper_height,
                                     const std::vector<Outpoint>& sweeper_inputs,
                                     std::int64_t swept_value, int chain_len,
                                     const std::function<int()>& next_delay_blocks) {
        ChainPlant plant;

        std::string sweep_addr = fresh_address(AddrType::P2SH, entity);
        std::int64_t sweeper_out = swept_value - kFee;
        int hops = chain_len - 1;
        if (sweeper_out < budget_need(hops))
            throw Error(Errc::ScenarioInfeasible,
                        entity + ": swept value cannot sustain a chain of " +
                            std::to_string(chain_len));
        std::string sweeper_txid =
            emit(sweeper_height, sweeper_inputs, {{sweep_addr, AddrType::P2SH, sweeper_out}});
        plant.txids.push_back(sweeper_txid);
        plant.service_addresses.push_back(sweep_addr);

        Outpoint cursor{sweeper_txid, 0};
        std::int64_t running = sweeper_out;
        std::uint32_t height = sweeper_height;
        for (int k = 0; k < hops; ++k) {
            height += static_cast<std::uint32_t>(next_delay_blocks());

            std::int64_t cap_budget = running - kFee - budget_need(hops - k - 1);
            std::int64_t cap_ratio = (running - kFee) / 6;
            std::int64_t hi = std::min(cap_budget, cap_ratio);
            std::int64_t lo = std::max(kMinPayout, std::min(running / 20, hi));
            std::int64_t payout = uniform(lo, hi);
            std::int64_t change = running - payout - kFee;

            std::string change_addr = fresh_address(AddrType::P2SH, entity);
            // A slice of payouts is script-hash too; those txs are labeled
            // by amount alone.
            AddrType payout_type = uniform(0, 99) < 15 ? AddrType::P2SH : non_p2sh_type();
            std::string payout_addr = fresh_address(payout_type, entity + "/recipient");

            TxOutput change_out{change_addr, AddrType::P2SH, change};
            TxOutput payout_out{payout_addr, payout_type, payout};
            std::vector<TxOutput> outputs;
            std::uint32_t change_vout = static_cast<std::uint32_t>(uniform(0, 1));
            if (change_vout == 0) {
                outputs = {change_out, payout_out};
            } else {
                outputs = {payout_out, change_out};
            }

            std::string txid = emit(height, {cursor}, std::move(outputs));
            plant.txids.push_back(txid);
            plant.service_addresses.push_back(change_addr);
            plant.payout_addresses.push_back(payout_addr);

            cursor = {txid, change_vout};
            running = change;
        }
        return plant;
    }

    int mixer_delay_blocks() {
        int lo = (sc_.mixer_delay_min_minutes + sc_.block_interval_minutes - 1) /
                 sc_.block_interval_minutes;
        int hi = sc_.mixer_delay_max_minutes / sc_.block_interval_minutes;
        if (hi < lo) hi = lo;
        // min of two uniform draws skews toward the short end, landing the
        // realized medians near the low third of the window.
        std::int64_t a = uniform(lo, hi);
        std::int64_t b = uniform(lo, hi);
        return static_cast<int>(std::min(a, b));
    }

    void plant_mixer(int idx) {
        std::string entity = "mixer" + std::to_string(idx);
        int chain_len = static_cast<int>(uniform(sc_.chain_len_min, sc_.chain_len_max));
        int n_inputs = static_cast<int>(
            std::max<std::int64_t>(sc_.deposits_per_mixer,
                                   uniform(sc_.sweeper_inputs_min, sc_.sweeper_inputs_max)));
        int n_deposits = sc_.deposits_per_mixer;
        int n_prefund = n_inputs - n_deposits;

        std::int64_t target = uniform(50, 500) * kBtc;
        std::int64_t base = target / std::max(1, n_inputs);
        std::vector<std::int64_t> input_values;
        std::int64_t swept = 0;
        for (int i = 0; i < n_inputs; ++i) {
            std::int64_t v = base + uniform(-base / 4, base / 4);
            input_values.push_back(v);
            swept += v;
        }

        std::vector<Outpoint> sweeper_inputs;
        std::uint32_t last_deposit_block = 1;

        // User deposits: each user funds a fresh service deposit address
        // from their own wallet; those wallet addresses are the dirty side.
        for (int j = 0; j < n_deposits; ++j) {
            std::string user = entity + "/user" + std::to_string(j);
            std::int64_t v_dep = input_values[j];
            int n_sources = static_cast<int>(uniform(1, 3));
            std::int64_t extra = uniform(50'000, std::max<std::int64_t>(60'000, v_dep / 4));
            std::int64_t funding_total = v_dep + kFee + extra;

            std::vector<TxOutput> coinbase_outs;
            std::vector<std::string> user_addrs;
            std::int64_t rest = funding_total;
            for (int s = 0; s < n_sources; ++s) {
                std::int64_t v = (s + 1 == n_sources) ? rest : funding_total / n_sources;
                rest -= v;
                std::string addr = fresh_address(AddrType::P2PKH, user);
                user_addrs.push_back(addr);
                coinbase_outs.push_back({addr, AddrType::P2PKH, v});
            }
            std::string funding_txid = emit(0, {}, std::move(coinbase_outs));

            std::uint32_t deposit_block = static_cast<std::uint32_t>(uniform(2, 30));
            last_deposit_block = std::max(last_deposit_block, deposit_block);

            std::string deposit_addr = fresh_address(AddrType::P2SH, entity);
            std::string change_addr = fresh_address(AddrType::P2PKH, user);
            std::vector<Outpoint> deposit_inputs;
            for (int s = 0; s < n_sources; ++s)
                deposit_inputs.push_back({funding_txid, static_cast<std::uint32_t>(s)});
            TxOutput deposit_out{deposit_addr, AddrType::P2SH, v_dep};
            TxOutput change_out{change_addr, AddrType::P2PKH, extra};
            std::uint32_t deposit_vout = static_cast<std::uint32_t>(uniform(0, 1));
            std::vector<TxOutput> deposit_outs =
                deposit_vout == 0 ? std::vector<TxOutput>{deposit_out, change_out}
                                  : std::vector<TxOutput>{change_out, deposit_out};
            std::string deposit_txid = emit(deposit_block, std::move(deposit_inputs),
                                            std::move(deposit_outs));

            sweeper_inputs.push_back({deposit_txid, deposit_vout});
            truth_.mixer_addresses.push_back(deposit_addr);
            for (const std::string& addr : user_addrs) truth_.dirty_addresses.push_back(addr);
        }

        // Service-owned refills complete the sweep; they come straight from
        // coinbases, so dirty tracing correctly skips them.
        if (n_prefund > 0) {
            std::vector<TxOutput> prefund_outs;
            std::vector<std::string> prefund_addrs;
            for (int p = 0; p < n_prefund; ++p) {
                std::string addr = fresh_address(AddrType::P2SH, entity);
                prefund_addrs.push_back(addr);
                prefund_outs.push_back({addr, AddrType::P2SH, input_values[n_deposits + p]});
            }
            std::string prefund_txid = emit(0, {}, std::move(prefund_outs));
            for (int p = 0; p < n_prefund; ++p) {
                sweeper_inputs.push_back({prefund_txid, static_cast<std::uint32_t>(p)});
                truth_.mixer_addresses.push_back(prefund_addrs[p]);
            }
        }

        std::uint32_t sweeper_block = last_deposit_block + static_cast<std::uint32_t>(uniform(1, 3));
        ChainPlant plant = plant_patterned_chain(entity, sweeper_block, sweeper_inputs, swept,
                                                 chain_len, [this] { return mixer_delay_blocks(); });

        truth_.mixer_chains.push_back(plant.txids);
        for (const std::string& addr : plant.service_addresses)
            truth_.mixer_addresses.push_back(addr);
        for (const std::string& addr : plant.payout_addresses)
            truth_.clean_addresses.push_back(addr);
    }

    // Prefund-only sweeper plus chain; shape matches the mixer pattern, the
    // stats place it on the wrong side of exactly one filter.
    void plant_shape_only_chain(const std::string& entity, int chain_len, std::int64_t target,
                                std::uint32_t sweeper_block,
                                const std::function<int()>& next_delay_blocks) {
        int n_inputs = static_cast<int>(uniform(sc_.sweeper_inputs_min, sc_.sweeper_inputs_max));
        std::int64_t base = target / std::max(1, n_inputs);
        std::vector<TxOutput> prefund_outs;
        std::int64_t swept = 0;
        for (int i = 0; i < n_inputs; ++i) {
            std::int64_t v = base + uniform(-base / 4, base / 4);
            swept += v;
            prefund_outs.push_back({fresh_address(AddrType::P2SH, entity), AddrType::P2SH, v});
        }
        std::string prefund_txid = emit(0, {}, std::move(prefund_outs));
        std::vector<Outpoint> sweeper_inputs;
        for (int i = 0; i < n_inputs; ++i)
            sweeper_inputs.push_back({prefund_txid, static_cast<std::uint32_t>(i)});
        plant_patterned_chain(entity, sweeper_block, sweeper_inputs, swept, chain_len,
                              next_delay_blocks);
    }

    void plant_exchange(int idx) {
        std::string entity = "exchange" + std::to_string(idx);
        int chain_len =
            static_cast<int>(uniform(sc_.exchange_chain_len_min, sc_.exchange_chain_len_max));
        int delay = std::max(1, sc_.exchange_delay_minutes / sc_.block_interval_minutes);
        plant_shape_only_chain(entity, chain_len, uniform(50, 500) * kBtc,
                               static_cast<std::uint32_t>(uniform(1, 30)),
                               [delay] { return delay; });
    }

    void plant_wallet(int idx) {
        std::string entity = "wallet" + std::to_string(idx);
        int chain_len =
            static_cast<int>(uniform(sc_.wallet_chain_len_min, sc_.wallet_chain_len_max));
        int lo = sc_.wallet_delay_min_hours * 60 / sc_.block_interval_minutes;
        int hi = sc_.wallet_delay_max_hours * 60 / sc_.block_interval_minutes;
        plant_shape_only_chain(entity, chain_len, uniform(10, 60) * kBtc,
                               static_cast<std::uint32_t>(uniform(1, 50)),
                               [this, lo, hi] { return static_cast<int>(uniform(lo, hi)); });
    }

    void plant_noise() {
        if (sc_.n_noise_txs <= 0) return;

        std::uint32_t span = std::max<std::uint32_t>(
            max_height_, static_cast<std::uint32_t>(2 + sc_.n_noise_txs / 200));

        struct PoolEntry {
            Outpoint op;
            std::int64_t value;
            std::uint32_t height;  // block that created it
        };
        std::vector<PoolEntry> pool;     // spendable now
        std::vector<PoolEntry> staging;  // created in the current block

        // Faucet coinbases seed the economy, in chunks to keep lines sane.
        std::int64_t n_faucet = 2000 + sc_.n_noise_txs / 50;
        for (std::int64_t i = 0; i < n_faucet; i += 500) {
            std::int64_t chunk = std::min<std::int64_t>(500, n_faucet - i);
            std::vector<TxOutput> outs;
            std::vector<std::int64_t> values;
            for (std::int64_t j = 0; j < chunk; ++j) {
                std::int64_t v = uniform(2'000'000, 200'000'000);
                values.push_back(v);
                AddrType type = non_p2sh_type();
                outs.push_back({fresh_address(type, "noise"), type, v});
            }
            std::string txid = emit(0, {}, std::move(outs));
            for (std::int64_t j = 0; j < chunk; ++j)
                staging.push_back({{txid, static_cast<std::uint32_t>(j)}, values[j], 0});
        }

        // An address keeps one declared type for life, so reuse carries the
        // original type along.
        std::vector<std::pair<std::string, AddrType>> recent_addrs;
        auto output_address = [&](AddrType type) -> std::pair<std::string, AddrType> {
            if (!recent_addrs.empty() && uniform(0, 99) < 15) {
                return recent_addrs[static_cast<std::size_t>(
                    uniform(0, static_cast<std::int64_t>(recent_addrs.size()) - 1))];
            }
            std::string addr = fresh_address(type, "noise");
            if (recent_addrs.size() < 256) {
                recent_addrs.emplace_back(addr, type);
            } else {
                recent_addrs[static_cast<std::size_t>(uniform(0, 255))] = {addr, type};
            }
            return {addr, type};
        };

        std::int64_t emitted = 0;
        for (std::uint32_t h = 1; h <= span && emitted < sc_.n_noise_txs; ++h) {
            // Promote outputs created strictly before this block.
            auto ready = std::stable_partition(staging.begin(), staging.end(),
                                               [h](const PoolEntry& e) { return e.height >= h; });
            pool.insert(pool.end(), ready, staging.end());
            staging.erase(ready, staging.end());

            std::int64_t quota = sc_.n_noise_txs / span + (h <= sc_.n_noise_txs % span ? 1 : 0);
            // Last block drains any deficit left by starved earlier blocks.
            if (h == span) quota = sc_.n_noise_txs - emitted;

            for (std::int64_t q = 0; q < quota; ++q) {
                if (pool.empty()) break;
                int want_in = pool.size() < 3 ? 1 : pick_input_count();
                std::vector<Outpoint> inputs;
                std::int64_t total_in = 0;
                for (int i = 0; i < want_in && !pool.empty(); ++i) {
                    std::size_t idx = static_cast<std::size_t>(
                        uniform(0, static_cast<std::int64_t>(pool.size()) - 1));
                    std::swap(pool[idx], pool.back());
                    inputs.push_back(pool.back().op);
                    total_in += pool.back().value;
                    pool.pop_back();
                }

                std::int64_t spendable = total_in - kFee;
                int n_out = spendable < 3 * kPoolDust ? 1 : pick_output_count();
                std::vector<std::int64_t> values;
                std::int64_t rest = spendable;
                for (int i = 0; i + 1 < n_out; ++i) {
                    std::int64_t v = std::max<std::int64_t>(1, rest * uniform(25, 50) / 100);
                    values.push_back(v);
                    rest -= v;
                }
                values.push_back(rest);

                std::vector<TxOutput> outputs;
                for (int i = 0; i < n_out; ++i) {
                    AddrType proposed = uniform(0, 99) < 25 ? AddrType::P2SH : non_p2sh_type();
                    auto [addr, type] = output_address(proposed);
                    outputs.push_back({addr, type, values[i]});
                }
                std::string txid = emit(h, std::move(inputs), std::move(outputs));
                for (int i = 0; i < n_out; ++i)
                    if (values[i] >= kPoolDust)
                        staging.push_back({{txid, static_cast<std::uint32_t>(i)}, values[i], h});
                ++emitted;
            }
        }
        if (emitted < sc_.n_noise_txs)
            throw Error(Errc::ScenarioInfeasible,
                        "noise pool starved after " + std::to_string(emitted) + " transactions");
    }

    int pick_input_count() {
        std::int64_t r = uniform(0, 99);
        if (r < 50) return 1;
        if (r < 80) return 2;
        return 3;
    }

    int pick_output_count() {
        std::int64_t r = uniform(0, 99);
        if (r < 30) return 1;
        if (r < 75) return 2;
        return 3;
    }

    void finalize_truth() {
        auto sort_unique = [](std::vector<std::string>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        sort_unique(truth_.mixer_addresses);
        sort_unique(truth_.dirty_addresses);
        sort_unique(truth_.clean_addresses);
    }

    const SimScenario& sc_;
    std::mt19937_64 rng_;
    IdGen ids_;
    std::map<std::uint32_t, std::vector<Transaction>> by_block_;
    GroundTruth truth_;
    std::uint32_t max_height_ = 1;
};

}  // namespace

void SimScenario::validate() const {
    auto positive = [](int v, const char* name) {
        if (v <= 0) throw Error(Errc::BadParams, std::string(name) + " must be positive");
    };
    auto non_negative = [](std::int64_t v, const char* name) {
        if (v < 0) throw Error(Errc::BadParams, std::string(name) + " must be >= 0");
    };
    auto ordered = [](int lo, int hi, const char* name) {
        if (lo > hi) throw Error(Errc::BadParams, std::string(name) + ": min exceeds max");
    };

    non_negative(n_mixers, "n_mixers");
    non_negative(deposits_per_mixer, "deposits_per_mixer");
    non_negative(n_exchange_chains, "n_exchange_chains");
    non_negative(n_wallet_chains, "n_wallet_chains");
    non_negative(n_noise_txs, "n_noise_txs");
    positive(block_interval_minutes, "block_interval_minutes");
    positive(sweeper_inputs_min, "sweeper_inputs_min");
    positive(chain_len_min, "chain_len_min");
    positive(wallet_chain_len_min, "wallet_chain_len_min");
    positive(exchange_chain_len_min, "exchange_chain_len_min");
    ordered(sweeper_inputs_min, sweeper_inputs_max, "sweeper_inputs");
    ordered(chain_len_min, chain_len_max, "chain_len");
    ordered(mixer_delay_min_minutes, mixer_delay_max_minutes, "mixer_delay_minutes");
    ordered(exchange_chain_len_min, exchange_chain_len_max, "exchange_chain_len");
    ordered(wallet_chain_len_min, wallet_chain_len_max, "wallet_chain_len");
    ordered(wallet_delay_min_hours, wallet_delay_max_hours, "wallet_delay_hours");
    if (chain_len_min < 2) throw Error(Errc::BadParams, "chain_len_min must be >= 2");
    if (mixer_delay_min_minutes < block_interval_minutes)
        throw Error(Errc::BadParams, "mixer_delay_min_minutes must cover at least one block");
    if (wallet_delay_min_hours < 1)
        throw Error(Errc::BadParams, "wallet_delay_min_hours must be >= 1");

    // Value budget: the smallest sweep this generator can draw must still
    // fund the longest requested chain.
    std::int64_t mixer_floor = 50 * kBtc * 3 / 4;
    if (budget_need(chain_len_max - 1) > mixer_floor)
        throw Error(Errc::ScenarioInfeasible, "chain_len_max exceeds the mixer value budget");
    if (budget_need(exchange_chain_len_max - 1) > mixer_floor)
        throw Error(Errc::ScenarioInfeasible, "exchange_chain_len_max exceeds the value budget");
    if (budget_need(wallet_chain_len_max - 1) > 10 * kBtc * 3 / 4)
        throw Error(Errc::ScenarioInfeasible, "wallet_chain_len_max exceeds the value budget");
}

SimResult generate(const SimScenario& scenario) {
    scenario.validate();
    return Generator(scenario).run();
}

SimScenario scenario_from_kv(const std::map<std::string, std::string>& kv) {
    SimScenario sc;
    auto as_int = [](const std::string& key, const std::string& value) -> std::int64_t {
        try {
            std::size_t used = 0;
            long long v = std::stoll(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return v;
        } catch (const std::exception&) {
            throw Error(Errc::BadParams, "key '" + key + "': '" + value + "' is not an integer");
        }
    };
    for (const auto& [key, value] : kv) {
        std::int64_t v = as_int(key, value);
        if (key == "seed") sc.seed = static_cast<std::uint64_t>(v);
        else if (key == "n_mixers") sc.n_mixers = static_cast<int>(v);
        else if (key == "deposits_per_mixer") sc.deposits_per_mixer = static_cast<int>(v);
        else if (key == "sweeper_inputs_min") sc.sweeper_inputs_min = static_cast<int>(v);
        else if (key == "sweeper_inputs_max") sc.sweeper_inputs_max = static_cast<int>(v);
        else if (key == "chain_len_min") sc.chain_len_min = static_cast<int>(v);
        else if (key == "chain_len_max") sc.chain_len_max = static_cast<int>(v);
        else if (key == "mixer_delay_min_minutes") sc.mixer_delay_min_minutes = static_cast<int>(v);
        else if (key == "mixer_delay_max_minutes") sc.mixer_delay_max_minutes = static_cast<int>(v);
        else if (key == "n_exchange_chains") sc.n_exchange_chains = static_cast<int>(v);
        else if (key == "exchange_chain_len_min") sc.exchange_chain_len_min = static_cast<int>(v);
        else if (key == "exchange_chain_len_max") sc.exchange_chain_len_max = static_cast<int>(v);
        else if (key == "exchange_delay_minutes") sc.exchange_delay_minutes = static_cast<int>(v);
        else if (key == "n_wallet_chains") sc.n_wallet_chains = static_cast<int>(v);
        else if (key == "wallet_chain_len_min") sc.wallet_chain_len_min = static_cast<int>(v);
        else if (key == "wallet_chain_len_max") sc.wallet_chain_len_max = static_cast<int>(v);
        else if (key == "wallet_delay_min_hours") sc.wallet_delay_min_hours = static_cast<int>(v);
        else if (key == "wallet_delay_max_hours") sc.wallet_delay_max_hours = static_cast<int>(v);
        else if (key == "n_noise_txs") sc.n_noise_txs = v;
        else if (key == "block_interval_minutes") sc.block_interval_minutes = static_cast<int>(v);
        else if (key == "genesis_time_unix") sc.genesis_time_unix = v;
        else throw Error(Errc::BadParams, "unknown key '" + key + "'");
    }
    return sc;
}

SimScenario scenario_from_file(const std::string& path) {
    return scenario_from_kv(parse_kv_file(path));
}

void write_blocks_file(const std::string& path, const std::vector<Block>& blocks) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot write " + path);
    for (const Block& block : blocks) out << serialize_block(block) << '\n';
    if (!out) throw Error(Errc::IoError, "write failed for " + path);
}

void write_truth_file(const std::string& path, const GroundTruth& truth) {
    nlohmann::ordered_json doc;
    doc["mixer_chains"] = truth.mixer_chains;
    doc["mixer_addresses"] = truth.mixer_addresses;
    doc["dirty_addresses"] = truth.dirty_addresses;
    doc["clean_addresses"] = truth.clean_addresses;
    doc["entity_of_address"] = truth.entity_of_address;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot write " + path);
    out << doc.dump() << '\n';
    if (!out) throw Error(Errc::IoError, "write failed for " + path);
}

GroundTruth read_truth_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::MalformedRecord, std::string("truth file: ") + e.what());
    }
    GroundTruth truth;
    try {
        truth.mixer_chains = doc.at("mixer_chains").get<std::vector<std::vector<std::string>>>();
        truth.mixer_addresses = doc.at("mixer_addresses").get<std::vector<std::string>>();
        truth.dirty_addresses = doc.at("dirty_addresses").get<std::vector<std::string>>();
        truth.clean_addresses = doc.at("clean_addresses").get<std::vector<std::string>>();
        truth.entity_of_address =
            doc.at("entity_of_address").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::MalformedRecord, std::string("truth file: ") + e.what());
    }
    return truth;
}

}  // namespace mixscan
