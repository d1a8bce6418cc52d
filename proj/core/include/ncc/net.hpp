#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncc/coro.hpp"
#include "ncc/payload.hpp"
#include "ncc/rng.hpp"

namespace ncc {

using NodeId = std::uint32_t;

constexpr std::uint64_t kNeverWake = std::numeric_limits<std::uint64_t>::max();

/// Raised on protocol bugs: capacity overrun at the sender, oversized
/// payloads, or a stalled network. Model-level message drops are legal
/// behavior and are recorded in the trace instead.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DropPolicy { kRandomSubset, kPrefix };

/// Ceiling of log2 for protocol constants; 0 for n <= 1.
inline std::uint32_t ilog2_ceil(std::uint64_t n) {
  return n <= 1 ? 0u : static_cast<std::uint32_t>(std::bit_width(n - 1));
}

inline std::uint32_t ilog2_floor(std::uint64_t n) {
  return n <= 1 ? 0u : static_cast<std::uint32_t>(std::bit_width(n)) - 1u;
}

struct NetworkConfig {
  std::uint32_t n = 1;
  double kappa = 8.0;  // per-round capacity = ceil(kappa * log2 n), send and receive separately
  std::uint64_t seed = 1;
  DropPolicy drop_policy = DropPolicy::kRandomSubset;
  double payload_factor = 24.0;  // per-message budget = max(192, ceil(factor * log2 n)) bits
  bool skip_payload_check = false;
  std::uint64_t max_rounds = 50'000'000;

  std::uint32_t capacity() const {
    if (n <= 1) return 1;
    auto c = static_cast<std::uint32_t>(std::ceil(kappa * std::log2(static_cast<double>(n))));
    return c < 1 ? 1u : c;
  }

  std::uint32_t payload_bit_limit() const {
    if (n <= 1) return 192;
    auto b = static_cast<std::uint32_t>(
        std::ceil(payload_factor * std::log2(static_cast<double>(n))));
    return b < 192 ? 192u : b;
  }

  /// Applies the NCC_SEED environment override, if set.
  NetworkConfig with_env_overrides() const;
};

struct Message {
  NodeId src = 0;
  NodeId dst = 0;
  Payload payload;
};

struct RoundStats {
  std::uint32_t max_sent = 0;
  std::uint32_t max_recv = 0;
  std::uint32_t dropped = 0;
};

/// One record per communication-primitive invocation, appended by the
/// primitive layer (reported by node 0).
struct PrimitiveMetric {
  std::string primitive;
  std::uint64_t load = 0;       // L
  std::uint64_t ell1 = 0;       // max memberships per node
  std::uint64_t ell2_hat = 0;   // declared bound on groups per target
  std::uint64_t congestion = 0; // trees per butterfly node, where applicable
  std::uint64_t rounds = 0;
};

struct ExecutionTrace {
  std::uint32_t n = 0;
  double kappa = 0;
  std::uint64_t seed = 0;
  std::uint64_t rounds_elapsed = 0;
  std::uint64_t drop_total = 0;
  std::uint32_t peak_send = 0;
  std::uint32_t peak_recv = 0;
  std::vector<RoundStats> per_round;  // index r-1 holds round r
  std::vector<PrimitiveMetric> primitives;
};

class Engine;

/// Per-node interface available to node programs. Handed to the
/// program coroutine by the engine; valid for the duration of the run.
class NodeCtx {
 public:
  NodeId id() const { return id_; }
  std::uint32_t n() const;
  std::uint64_t round() const;
  const NetworkConfig& config() const;

  /// Queue a message for delivery at the beginning of the next round.
  /// Throws SimulationError if this node exceeds its send capacity in
  /// the current round or the payload exceeds the bit budget.
  void send(NodeId dst, Payload payload);

  /// Messages delivered this round, sorted by (src, payload).
  const std::vector<Message>& inbox() const { return inbox_; }

  /// Deterministic per-node random stream.
  Rng& rng() { return rng_; }

  /// Report a primitive invocation record into the trace (callers
  /// conventionally let only node 0 report).
  void record_primitive(PrimitiveMetric m);

  struct WakeAwaiter {
    NodeCtx* ctx;
    std::uint64_t wake_round;
    bool await_ready() const noexcept { return false; }
    void await_suspend(std::coroutine_handle<> h) {
      ctx->resume_point_ = h;
      ctx->wake_round_ = wake_round;
    }
    void await_resume() const noexcept {}
  };

  /// Suspend until the next round.
  WakeAwaiter next_round() { return WakeAwaiter{this, round() + 1}; }

  /// Suspend until round `r` (or earlier if a message arrives first;
  /// the program is always resumed when its inbox is non-empty).
  WakeAwaiter wake_at(std::uint64_t r) { return WakeAwaiter{this, r}; }

  /// Suspend until a message arrives.
  WakeAwaiter wait_message() { return WakeAwaiter{this, kNeverWake}; }

 private:
  friend class Engine;
  NodeId id_ = 0;
  Engine* engine_ = nullptr;
  Rng rng_;
  std::vector<Message> inbox_;
  std::vector<Message> loopback_;  // self-sends staged for next round
  std::coroutine_handle<> resume_point_;
  std::uint64_t wake_round_ = 0;
  std::uint32_t sent_this_round_ = 0;
};

using NodeProgram = std::function<Proto<void>(NodeCtx&)>;

/// Synchronous round engine. Runs one program instance per node until
/// every instance returns; observable behavior is a pure function of
/// (config, program).
class Engine {
 public:
  explicit Engine(NetworkConfig config);

  ExecutionTrace run(const NodeProgram& program);

  const NetworkConfig& config() const { return config_; }
  std::uint64_t round() const { return round_; }

 private:
  friend class NodeCtx;

  void stage_send(NodeCtx& from, NodeId dst, Payload payload);
  void deliver_pending();

  NetworkConfig config_;
  std::uint32_t capacity_;
  std::uint32_t payload_limit_;
  std::uint64_t round_ = 0;
  std::vector<NodeCtx> nodes_;
  std::vector<Message> outbox_;
  ExecutionTrace trace_;
  Prf drop_prf_;
};

/// Delivery rule for one destination: everything up to capacity, the
/// excess selected by the drop policy. Exposed for direct testing.
struct DeliveryResult {
  std::vector<Message> delivered;  // sorted by (src, payload)
  std::uint32_t dropped = 0;
};
DeliveryResult deliver_to(NodeId dst, std::vector<Message> offered, const NetworkConfig& config,
                          std::uint64_t round);

}  // namespace ncc
