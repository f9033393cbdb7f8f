#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "json.hpp"

namespace golfssp {

/// Index 0 is the absorbing target; states are 1..n, actions 1..m.
using StateId = std::int32_t;
using ActionId = std::int32_t;

inline constexpr StateId kTarget = 0;

struct Transition {
  StateId state;
  double probability;
};

/// Stochastic shortest path instance with sparse transition rows. Each action
/// belongs to exactly one state; row mass missing from 1 goes to the target.
class SSPInstance {
 public:
  SSPInstance() = default;
  explicit SSPInstance(StateId n_states);

  /// Appends an action and returns its id (1-based, in insertion order).
  ActionId add_action(StateId state, double cost, std::span<const Transition> row);

  StateId n_states() const { return n_states_; }
  ActionId n_actions() const { return static_cast<ActionId>(costs_.size()) - 1; }

  StateId state_of(ActionId a) const { return action_state_[a]; }
  double cost(ActionId a) const { return costs_[a]; }
  std::span<const Transition> row(ActionId a) const {
    return {entries_.data() + row_ptr_[a], entries_.data() + row_ptr_[a + 1]};
  }
  /// Actions available in state s, in increasing id order.
  std::span<const ActionId> actions_of(StateId s) const;

  /// Completes the state->actions index; must be called after the last add_action.
  void finalize();
  bool finalized() const { return finalized_; }

  /// Throws InvariantViolation on bad structure (empty states, rows not summing
  /// to one within 1e-9, non-finite costs).
  void validate() const;

  std::size_t n_entries() const { return entries_.size(); }

 private:
  StateId n_states_ = 0;
  std::vector<StateId> action_state_{0};
  std::vector<double> costs_{0.0};
  std::vector<std::size_t> row_ptr_{0, 0};
  std::vector<Transition> entries_;
  std::vector<std::size_t> state_ptr_;
  std::vector<ActionId> state_actions_;
  bool finalized_ = false;
};

/// policy[s] is the action chosen in state s; policy[0] is unused.
using Policy = std::vector<ActionId>;
/// value[s] is the expected cost to the target; value[0] = 0.
using ValueVector = std::vector<double>;

struct ValueIterationOptions {
  double epsilon = 1e-4;
  int max_iters = 10000;
  unsigned threads = 1;
  /// Called after every sweep with the iteration count and the new values.
  std::function<void(int, const std::vector<double>&)> observer;
};

struct ValueIterationResult {
  ValueVector values;
  Policy policy;
  int iterations = 0;
  double residual = 0.0;
};

/// Jacobi Bellman sweeps from J = 0 until the sup-norm change is below
/// epsilon. Ties between actions go to the lowest id. Throws NoConvergence.
ValueIterationResult value_iteration(const SSPInstance& instance,
                                     const ValueIterationOptions& options = {});

/// One Bellman backup of `values` at state s: (best value, best action).
std::pair<double, ActionId> bellman_backup(const SSPInstance& instance, const ValueVector& values,
                                           StateId s);

/// Expected cost of the policy from every state, by a sparse LU solve of
/// (I - Q) v = c. Throws ImproperPolicy.
ValueVector evaluate_policy(const SSPInstance& instance, const Policy& policy);

/// True when every state reaches the target through positive-probability
/// transitions of the policy.
bool check_proper(const SSPInstance& instance, const Policy& policy);

/// Throws InvariantViolation unless the policy picks one of each state's own actions.
void check_policy_shape(const SSPInstance& instance, const Policy& policy);

nlohmann::ordered_json instance_to_json(const SSPInstance& instance);
SSPInstance instance_from_json(const nlohmann::json& j);

}  // namespace golfssp
