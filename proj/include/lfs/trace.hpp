#pragma once

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>

namespace lfs {

// Deterministic JSON Lines trace writer: keys sorted (nlohmann objects are
// map-backed), integers/strings/bools only, seq strictly increasing.
class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& os) : os_(os) {}

  void emit(std::uint64_t stage, const std::string& module,
            const std::string& event, nlohmann::json payload) {
    nlohmann::json j;
    j["event"] = event;
    j["module"] = module;
    j["payload"] = std::move(payload);
    j["seq"] = seq_++;
    j["stage"] = stage;
    os_ << j.dump() << '\n';
  }

  std::uint64_t seq() const { return seq_; }

 private:
  std::ostream& os_;
  std::uint64_t seq_ = 0;
};

}  // namespace lfs
