#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "csl/agents/minimax.hpp"
#include "csl/agents/random.hpp"
#include "csl/agents/sequential.hpp"
#include "csl/agents/thinker.hpp"

namespace csl {

// Finds and instantiates agents by name. Each entry is keyed by a fully qualified
// registry name ("csl.baselines.MinimaxAIThinker"); lookups also accept the entry's
// display name in any case ("minimax").
class AgentRegistry {
public:
    using Factory = std::function<std::unique_ptr<Thinker>()>;

    void add(std::string registry_name, Factory factory) {
        factories_.insert_or_assign(std::move(registry_name), std::move(factory));
    }

    template <typename T>
    void add(std::string registry_name) {
        add(std::move(registry_name), [] { return std::make_unique<T>(); });
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [name, _] : factories_) out.push_back(name);
        return out;
    }

    // Registry name for `name`, or nullptr if nothing (or more than one entry) matches.
    const std::string* resolve(std::string_view name) const {
        if (auto it = factories_.find(std::string(name)); it != factories_.end()) return &it->first;
        const std::string wanted = detail::lower(name);
        const std::string* match = nullptr;
        for (const auto& [full, _] : factories_) {
            if (detail::lower(display_name_from(full)) == wanted) {
                if (match) return nullptr;
                match = &full;
            }
        }
        return match;
    }

    bool contains(std::string_view name) const { return resolve(name) != nullptr; }

    // Fresh instance without setup applied. Throws UnknownAgent listing what exists.
    std::unique_ptr<Thinker> instantiate(std::string_view name) const {
        const std::string* full = resolve(name);
        if (!full) {
            std::string msg = "unknown agent '" + std::string(name) + "'; available:";
            for (const auto& n : names()) msg += " " + n;
            throw UnknownAgent(msg);
        }
        auto agent = factories_.at(*full)();
        agent->set_registry_name(*full);
        return agent;
    }

    // Fresh instance with setup applied; setup failures propagate as SetupError.
    std::unique_ptr<Thinker> create(std::string_view name, std::string_view params, const MatchConfig& config) const {
        auto agent = instantiate(name);
        agent->setup(config, params);
        return agent;
    }

    static AgentRegistry with_baselines() {
        AgentRegistry r;
        r.add<SequentialThinker>("csl.baselines.SequentialThinker");
        r.add<RandomThinker>("csl.baselines.RandomThinker");
        r.add<MinimaxThinker>("csl.baselines.MinimaxAIThinker");
        return r;
    }

private:
    std::map<std::string, Factory> factories_;
};

}  // namespace csl
