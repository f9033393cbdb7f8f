#include "golfssp/ssp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "golfssp/errors.hpp"

namespace golfssp {

SSPInstance::SSPInstance(StateId n_states) : n_states_(n_states) {
  if (n_states < 0) throw InvariantViolation("negative state count");
}

ActionId SSPInstance::add_action(StateId state, double cost, std::span<const Transition> row) {
  if (state < 1 || state > n_states_)
    throw InvariantViolation("action state " + std::to_string(state) + " out of range");
  for (const auto& t : row) {
    if (t.state < 0 || t.state > n_states_)
      throw InvariantViolation("transition to unknown state " + std::to_string(t.state));
    if (!(t.probability >= 0.0)) throw InvariantViolation("negative transition probability");
  }
  action_state_.push_back(state);
  costs_.push_back(cost);
  entries_.insert(entries_.end(), row.begin(), row.end());
  row_ptr_.push_back(entries_.size());
  finalized_ = false;
  return n_actions();
}

void SSPInstance::finalize() {
  state_ptr_.assign(static_cast<std::size_t>(n_states_) + 2, 0);
  for (ActionId a = 1; a <= n_actions(); ++a) ++state_ptr_[static_cast<std::size_t>(action_state_[a]) + 1];
  for (std::size_t i = 1; i < state_ptr_.size(); ++i) state_ptr_[i] += state_ptr_[i - 1];
  state_actions_.assign(static_cast<std::size_t>(n_actions()), 0);
  std::vector<std::size_t> fill(state_ptr_.begin(), state_ptr_.end() - 1);
  for (ActionId a = 1; a <= n_actions(); ++a)
    state_actions_[fill[static_cast<std::size_t>(action_state_[a])]++] = a;
  finalized_ = true;
}

std::span<const ActionId> SSPInstance::actions_of(StateId s) const {
  if (!finalized_) throw InvariantViolation("SSPInstance::finalize() not called");
  const auto b = state_ptr_[static_cast<std::size_t>(s)];
  const auto e = state_ptr_[static_cast<std::size_t>(s) + 1];
  return {state_actions_.data() + b, state_actions_.data() + e};
}

void SSPInstance::validate() const {
  if (!finalized_) throw InvariantViolation("SSPInstance::finalize() not called");
  for (StateId s = 1; s <= n_states_; ++s)
    if (actions_of(s).empty())
      throw InvariantViolation("state " + std::to_string(s) + " has no action");
  for (ActionId a = 1; a <= n_actions(); ++a) {
    if (!std::isfinite(costs_[a])) throw InvariantViolation("non-finite action cost");
    double sum = 0.0;
    for (const auto& t : row(a)) sum += t.probability;
    if (sum > 1.0 + 1e-9)
      throw InvariantViolation("row of action " + std::to_string(a) + " sums to " +
                               std::to_string(sum));
  }
}

std::pair<double, ActionId> bellman_backup(const SSPInstance& instance, const ValueVector& values,
                                           StateId s) {
  double best = std::numeric_limits<double>::infinity();
  ActionId arg = 0;
  for (ActionId a : instance.actions_of(s)) {
    double q = instance.cost(a);
    for (const auto& t : instance.row(a)) q += t.probability * values[static_cast<std::size_t>(t.state)];
    if (q < best) {
      best = q;
      arg = a;
    }
  }
  return {best, arg};
}

ValueIterationResult value_iteration(const SSPInstance& instance,
                                     const ValueIterationOptions& options) {
  instance.validate();
  const auto n = static_cast<std::size_t>(instance.n_states());
  ValueVector current(n + 1, 0.0);
  ValueVector next(n + 1, 0.0);
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n)));

  auto sweep = [&](std::size_t lo, std::size_t hi) {
    double residual = 0.0;
    for (std::size_t s = lo; s < hi; ++s) {
      next[s] = bellman_backup(instance, current, static_cast<StateId>(s)).first;
      residual = std::max(residual, std::abs(next[s] - current[s]));
    }
    return residual;
  };

  ValueIterationResult result;
  result.residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= options.max_iters; ++iter) {
    double residual = 0.0;
    if (threads == 1) {
      residual = sweep(1, n + 1);
    } else {
      std::vector<double> partial(threads, 0.0);
      std::vector<std::thread> pool;
      const std::size_t chunk = (n + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = 1 + t * chunk;
        const std::size_t hi = std::min(n + 1, lo + chunk);
        pool.emplace_back([&, t, lo, hi] { partial[t] = lo < hi ? sweep(lo, hi) : 0.0; });
      }
      for (auto& th : pool) th.join();
      residual = *std::max_element(partial.begin(), partial.end());
    }
    std::swap(current, next);
    result.iterations = iter;
    result.residual = residual;
    if (options.observer) options.observer(iter, current);
    if (residual < options.epsilon) break;
  }
  if (!(result.residual < options.epsilon))
    throw NoConvergence("value iteration did not converge in " +
                            std::to_string(options.max_iters) + " sweeps (residual " +
                            std::to_string(result.residual) + ")",
                        result.residual);

  result.policy.assign(n + 1, 0);
  for (std::size_t s = 1; s <= n; ++s)
    result.policy[s] = bellman_backup(instance, current, static_cast<StateId>(s)).second;
  result.values = std::move(current);
  return result;
}

void check_policy_shape(const SSPInstance& instance, const Policy& policy) {
  const auto n = static_cast<std::size_t>(instance.n_states());
  if (policy.size() != n + 1) throw InvariantViolation("policy size does not match the instance");
  for (std::size_t s = 1; s <= n; ++s) {
    const ActionId a = policy[s];
    if (a < 1 || a > instance.n_actions() || instance.state_of(a) != static_cast<StateId>(s))
      throw InvariantViolation("policy picks a foreign action in state " + std::to_string(s));
  }
}

bool check_proper(const SSPInstance& instance, const Policy& policy) {
  check_policy_shape(instance, policy);
  const auto n = static_cast<std::size_t>(instance.n_states());
  std::vector<std::vector<StateId>> preds(n + 1);
  std::vector<char> reaches(n + 1, 0);
  std::vector<StateId> frontier;
  for (std::size_t s = 1; s <= n; ++s) {
    double mass = 0.0;
    bool direct = false;
    for (const auto& t : instance.row(policy[s])) {
      if (t.probability <= 0.0) continue;
      mass += t.probability;
      if (t.state == kTarget) direct = true;
      else preds[static_cast<std::size_t>(t.state)].push_back(static_cast<StateId>(s));
    }
    if (direct || mass < 1.0 - 1e-12) {
      reaches[s] = 1;
      frontier.push_back(static_cast<StateId>(s));
    }
  }
  while (!frontier.empty()) {
    const auto v = static_cast<std::size_t>(frontier.back());
    frontier.pop_back();
    for (StateId u : preds[v]) {
      if (!reaches[static_cast<std::size_t>(u)]) {
        reaches[static_cast<std::size_t>(u)] = 1;
        frontier.push_back(u);
      }
    }
  }
  return std::all_of(reaches.begin() + 1, reaches.end(), [](char r) { return r != 0; });
}

ValueVector evaluate_policy(const SSPInstance& instance, const Policy& policy) {
  if (!check_proper(instance, policy))
    throw ImproperPolicy("policy does not reach the target from every state");
  const auto n = static_cast<Eigen::Index>(instance.n_states());
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ActionId a = policy[static_cast<std::size_t>(i) + 1];
    rhs[i] = instance.cost(a);
    triplets.emplace_back(i, i, 1.0);
    for (const auto& t : instance.row(a))
      if (t.state != kTarget && t.probability != 0.0)
        triplets.emplace_back(i, t.state - 1, -t.probability);
  }
  Eigen::SparseMatrix<double> system(n, n);
  system.setFromTriplets(triplets.begin(), triplets.end());
  system.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(system);
  if (lu.info() != Eigen::Success) throw ImproperPolicy("I - Q is singular for this policy");
  const Eigen::VectorXd v = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw ImproperPolicy("policy evaluation solve failed");
  ValueVector out(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) throw ImproperPolicy("policy evaluation produced a non-finite value");
    out[static_cast<std::size_t>(i) + 1] = v[i];
  }
  return out;
}

nlohmann::ordered_json instance_to_json(const SSPInstance& instance) {
  nlohmann::ordered_json j;
  j["n_states"] = instance.n_states();
  j["n_actions"] = instance.n_actions();
  auto actions = nlohmann::ordered_json::array();
  for (ActionId a = 1; a <= instance.n_actions(); ++a) {
    nlohmann::ordered_json ja;
    ja["state"] = instance.state_of(a);
    ja["cost"] = instance.cost(a);
    auto row = nlohmann::ordered_json::array();
    for (const auto& t : instance.row(a)) row.push_back({t.state, t.probability});
    ja["transitions"] = std::move(row);
    actions.push_back(std::move(ja));
  }
  j["actions"] = std::move(actions);
  return j;
}

SSPInstance instance_from_json(const nlohmann::json& j) {
  try {
    SSPInstance instance(j.at("n_states").get<StateId>());
    const auto& actions = j.at("actions");
    if (actions.size() != j.at("n_actions").get<std::size_t>())
      throw InvariantViolation("n_actions does not match the action records");
    std::vector<Transition> row;
    for (const auto& ja : actions) {
      row.clear();
      double sum = 0.0;
      for (const auto& t : ja.at("transitions")) {
        row.push_back({t.at(0).get<StateId>(), t.at(1).get<double>()});
        sum += row.back().probability;
      }
      if (sum > 1.0 + 1e-6) throw InvariantViolation("transition row sums above one");
      if (sum > 1.0)
        for (auto& t : row) t.probability /= sum;
      instance.add_action(ja.at("state").get<StateId>(), ja.at("cost").get<double>(), row);
    }
    instance.finalize();
    instance.validate();
    return instance;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

}  // namespace golfssp
