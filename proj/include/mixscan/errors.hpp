#pragma once

#include <stdexcept>
#include <string>

namespace mixscan {

// Every failure the toolkit can signal, so callers and tests can branch on
// the kind instead of parsing messages.
enum class Errc {
    MalformedRecord,        // bad JSON, missing field, bad hex, negative value
    DuplicateTxid,          // txid seen twice in one stream
    DanglingInput,          // input references an unknown outpoint
    DoubleSpend,            // outpoint spent by two transactions
    OutOfOrder,             // block heights not strictly increasing / time regression
    ConservationViolation,  // non-coinbase tx pays out more than it takes in
    UnknownOutpoint,        // lookup of an outpoint that does not exist
    UnresolvableInput,      // tx cannot be classified (coinbase or missing funding tx)
    SeedNotFound,           // chain walk asked to start from an unknown txid
    CycleDetected,          // a walk revisited a txid; corrupt fixture
    ChainTooShort,          // statistic needs at least two transactions
    SweeperNotFound,        // dirty trace asked for an unknown txid
    NotASweeper,            // dirty trace asked for a tx that fails the sweeper test
    ScenarioInfeasible,     // simulator config cannot be realized
    BadParams,              // invalid or unknown key in a params/config file
    IoError,                // file could not be read or written
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::MalformedRecord: return "MalformedRecord";
        case Errc::DuplicateTxid: return "DuplicateTxid";
        case Errc::DanglingInput: return "DanglingInput";
        case Errc::DoubleSpend: return "DoubleSpend";
        case Errc::OutOfOrder: return "OutOfOrder";
        case Errc::ConservationViolation: return "ConservationViolation";
        case Errc::UnknownOutpoint: return "UnknownOutpoint";
        case Errc::UnresolvableInput: return "UnresolvableInput";
        case Errc::SeedNotFound: return "SeedNotFound";
        case Errc::CycleDetected: return "CycleDetected";
        case Errc::ChainTooShort: return "ChainTooShort";
        case Errc::SweeperNotFound: return "SweeperNotFound";
        case Errc::NotASweeper: return "NotASweeper";
        case Errc::ScenarioInfeasible: return "ScenarioInfeasible";
        case Errc::BadParams: return "BadParams";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace mixscan
