#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "effix/errors.hpp"

namespace effix {

using OutcomeIndex = std::size_t;
using AgentIndex = std::size_t;

/// Indifference classes over outcome indices, best class first.
struct WeakOrder {
    std::vector<std::vector<OutcomeIndex>> classes;

    bool strict() const {
        return std::all_of(classes.begin(), classes.end(), [](const auto& c) { return c.size() == 1; });
    }
    bool dichotomous() const { return classes.size() <= 2; }

    bool operator==(const WeakOrder&) const = default;
};

struct Agent {
    std::string id;
    WeakOrder order;

    bool operator==(const Agent&) const = default;
};

/// A finite outcome set plus one weak order per agent. Immutable once built;
/// the constructor enforces the partition invariant and canonicalizes the
/// member order inside each class to outcome-list order.
class PreferenceProfile {
public:
    PreferenceProfile(std::vector<std::string> outcomes, std::vector<Agent> agents)
        : outcomes_(std::move(outcomes)), agents_(std::move(agents)) {
        if (outcomes_.empty()) throw InputError("profile has no outcomes");
        if (agents_.empty()) throw InputError("profile has no agents");
        for (std::size_t x = 0; x < outcomes_.size(); ++x) {
            if (outcomes_[x].empty()) throw InputError("empty outcome label");
            if (!outcome_lookup_.emplace(outcomes_[x], x).second) {
                throw InputError("duplicate outcome label '" + outcomes_[x] + "'");
            }
        }
        const std::size_t m = outcomes_.size();
        rank_.assign(agents_.size() * m, m);
        for (std::size_t a = 0; a < agents_.size(); ++a) {
            Agent& agent = agents_[a];
            if (agent.id.empty()) throw InputError("empty agent id");
            if (!agent_lookup_.emplace(agent.id, a).second) {
                throw InputError("duplicate agent id '" + agent.id + "'");
            }
            std::size_t seen = 0;
            for (std::size_t k = 0; k < agent.order.classes.size(); ++k) {
                auto& cls = agent.order.classes[k];
                if (cls.empty()) throw InputError("agent '" + agent.id + "' has an empty indifference class");
                for (OutcomeIndex x : cls) {
                    if (x >= m) throw InputError("agent '" + agent.id + "' ranks an unknown outcome");
                    std::size_t& r = rank_[a * m + x];
                    if (r != m) {
                        throw InputError("agent '" + agent.id + "' ranking is not a partition: outcome '" +
                                         outcomes_[x] + "' appears twice");
                    }
                    r = k;
                    ++seen;
                }
                std::sort(cls.begin(), cls.end());
            }
            if (seen != m) {
                throw InputError("agent '" + agent.id + "' ranking is not a partition: outcomes missing");
            }
        }
    }

    /// Builds a profile from label-based rankings.
    static PreferenceProfile from_rankings(
        std::vector<std::string> outcomes,
        const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& rankings) {
        std::unordered_map<std::string, OutcomeIndex> lookup;
        for (std::size_t x = 0; x < outcomes.size(); ++x) lookup.emplace(outcomes[x], x);
        std::vector<Agent> agents;
        for (const auto& [id, classes] : rankings) {
            Agent agent{id, {}};
            for (const auto& cls : classes) {
                std::vector<OutcomeIndex> members;
                for (const auto& label : cls) {
                    auto it = lookup.find(label);
                    if (it == lookup.end()) throw InputError("agent '" + id + "' ranks unknown outcome '" + label + "'");
                    members.push_back(it->second);
                }
                agent.order.classes.push_back(std::move(members));
            }
            agents.push_back(std::move(agent));
        }
        return PreferenceProfile(std::move(outcomes), std::move(agents));
    }

    /// Expands approval sets into 2-class weak orders (approved first). An agent
    /// approving everything or nothing gets a single class.
    static PreferenceProfile from_approvals(
        std::vector<std::string> outcomes,
        const std::vector<std::pair<std::string, std::vector<std::string>>>& approvals) {
        std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> rankings;
        for (const auto& [id, approved] : approvals) {
            std::vector<std::string> top, rest;
            for (const auto& x : outcomes) {
                (std::find(approved.begin(), approved.end(), x) != approved.end() ? top : rest).push_back(x);
            }
            for (const auto& label : approved) {
                if (std::find(outcomes.begin(), outcomes.end(), label) == outcomes.end()) {
                    throw InputError("agent '" + id + "' approves unknown outcome '" + label + "'");
                }
            }
            if (top.size() != approved.size()) {
                throw InputError("agent '" + id + "' approves an outcome twice");
            }
            std::vector<std::vector<std::string>> classes;
            if (top.empty() || rest.empty()) {
                classes.push_back(outcomes);
            } else {
                classes.push_back(std::move(top));
                classes.push_back(std::move(rest));
            }
            rankings.emplace_back(id, std::move(classes));
        }
        return from_rankings(std::move(outcomes), rankings);
    }

    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::vector<Agent>& agents() const { return agents_; }
    std::size_t num_outcomes() const { return outcomes_.size(); }
    std::size_t num_agents() const { return agents_.size(); }

    /// Class index of `x` for `agent`; 0 is the top class.
    std::size_t rank(AgentIndex agent, OutcomeIndex x) const { return rank_[agent * outcomes_.size() + x]; }
    bool prefers(AgentIndex agent, OutcomeIndex x, OutcomeIndex y) const { return rank(agent, x) < rank(agent, y); }
    bool indifferent(AgentIndex agent, OutcomeIndex x, OutcomeIndex y) const { return rank(agent, x) == rank(agent, y); }
    std::size_t num_classes(AgentIndex agent) const { return agents_[agent].order.classes.size(); }

    OutcomeIndex outcome_index(std::string_view label) const {
        auto it = outcome_lookup_.find(std::string(label));
        if (it == outcome_lookup_.end()) throw InputError("unknown outcome '" + std::string(label) + "'");
        return it->second;
    }
    AgentIndex agent_index(std::string_view id) const {
        auto it = agent_lookup_.find(std::string(id));
        if (it == agent_lookup_.end()) throw InputError("unknown agent '" + std::string(id) + "'");
        return it->second;
    }

    bool is_strict() const {
        return std::all_of(agents_.begin(), agents_.end(), [](const Agent& a) { return a.order.strict(); });
    }
    bool is_dichotomous() const {
        return std::all_of(agents_.begin(), agents_.end(), [](const Agent& a) { return a.order.dichotomous(); });
    }

    bool operator==(const PreferenceProfile& other) const {
        return outcomes_ == other.outcomes_ && agents_ == other.agents_;
    }

private:
    std::vector<std::string> outcomes_;
    std::vector<Agent> agents_;
    std::vector<std::size_t> rank_;
    std::unordered_map<std::string, OutcomeIndex> outcome_lookup_;
    std::unordered_map<std::string, AgentIndex> agent_lookup_;
};

/// {y : y strictly preferred to x by agent}, in outcome-list order.
inline std::vector<OutcomeIndex> strict_upper_contour(const PreferenceProfile& profile, AgentIndex agent, OutcomeIndex x) {
    if (agent >= profile.num_agents() || x >= profile.num_outcomes()) throw InputError("agent or outcome out of range");
    std::vector<OutcomeIndex> out;
    for (OutcomeIndex y = 0; y < profile.num_outcomes(); ++y) {
        if (profile.prefers(agent, y, x)) out.push_back(y);
    }
    return out;
}

inline std::vector<std::string> strict_upper_contour(const PreferenceProfile& profile, std::string_view agent,
                                                     std::string_view x) {
    std::vector<std::string> out;
    for (OutcomeIndex y : strict_upper_contour(profile, profile.agent_index(agent), profile.outcome_index(x))) {
        out.push_back(profile.outcomes()[y]);
    }
    return out;
}

/// Every agent's class list reversed; outcome and agent order kept.
inline PreferenceProfile reverse_profile(const PreferenceProfile& profile) {
    std::vector<Agent> agents = profile.agents();
    for (Agent& a : agents) std::reverse(a.order.classes.begin(), a.order.classes.end());
    return PreferenceProfile(profile.outcomes(), std::move(agents));
}

}  // namespace effix
