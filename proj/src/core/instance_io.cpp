#include "core/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace aoc {

using nlohmann::json;

namespace {

json block_to_json(const SocialCostBlock& block) {
    switch (block.kind) {
        case SocialCostBlock::Kind::quadratic:
            return {{"kind", "quadratic"}, {"alpha", block.alpha}, {"target", block.target}};
        case SocialCostBlock::Kind::linear:
            return {{"kind", "linear"}, {"weight", block.weight}};
        case SocialCostBlock::Kind::identity:
            return {{"kind", "identity"}};
        case SocialCostBlock::Kind::zero:
            return {{"kind", "zero"}};
    }
    return {};
}

SocialCostBlock block_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "quadratic")
        return SocialCostBlock::quadratic(j.at("alpha").get<double>(),
                                          j.at("target").get<double>());
    if (kind == "linear") return SocialCostBlock::linear(j.at("weight").get<double>());
    if (kind == "identity") return SocialCostBlock::identity();
    if (kind == "zero") return SocialCostBlock::zero();
    throw IoError("unknown social block kind: " + kind);
}

json agent_to_json(const AgentSpec& agent) {
    json j;
    j["states"] = agent.state_labels;
    j["initial_states"] = agent.initial_states;
    j["controls"] = agent.control_labels;
    j["feasible"] = agent.feasible;
    j["transitions"] = agent.next_state;
    j["contributions"] = agent.contribution;
    j["individual_costs"] = agent.individual_cost;
    return j;
}

AgentSpec agent_from_json(const json& j) {
    AgentSpec agent;
    agent.state_labels = j.at("states").get<std::vector<std::string>>();
    agent.control_labels = j.at("controls").get<std::vector<std::string>>();
    agent.initial_states = j.at("initial_states").get<std::vector<int>>();
    agent.feasible = j.at("feasible").get<std::vector<std::vector<std::vector<int>>>>();
    agent.next_state = j.at("transitions").get<std::vector<std::vector<std::vector<int>>>>();
    agent.contribution = j.at("contributions").get<std::vector<std::vector<std::vector<double>>>>();
    agent.individual_cost =
        j.at("individual_costs").get<std::vector<std::vector<std::vector<double>>>>();
    return agent;
}

} // namespace

std::string instance_to_json(const OcInstance& instance) {
    json j;
    j["N"] = instance.num_agents;
    j["T"] = instance.horizon;
    j["social"] = json::array();
    for (const auto& block : instance.social) j["social"].push_back(block_to_json(block));
    j["agents"] = json::array();
    for (const auto& agent : instance.agents) j["agents"].push_back(agent_to_json(agent));
    return j.dump(1);
}

OcInstance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("instance parse error: ") + e.what());
    }
    try {
        OcInstance instance;
        instance.num_agents = j.at("N").get<int>();
        instance.horizon = j.at("T").get<int>();
        for (const auto& b : j.at("social")) instance.social.push_back(block_from_json(b));
        for (const auto& a : j.at("agents")) instance.agents.push_back(agent_from_json(a));
        return instance;
    } catch (const json::exception& e) {
        throw IoError(std::string("instance schema error: ") + e.what());
    }
}

OcInstance read_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open instance file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json(buffer.str());
}

void write_instance(const OcInstance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write instance file: " + path);
    out << instance_to_json(instance) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

std::string solution_to_json(const OcInstance& instance,
                             const std::vector<Trajectory>& x, double value) {
    json j;
    j["value"] = value;
    j["agents"] = json::array();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const AgentSpec& agent = instance.agents[i];
        json a;
        json states = json::array(), controls = json::array();
        for (int s : x[i].states) states.push_back(agent.state_labels[s]);
        for (int u : x[i].controls) controls.push_back(agent.control_labels[u]);
        a["states"] = states;
        a["controls"] = controls;
        j["agents"].push_back(a);
    }
    return j.dump(1);
}

} // namespace aoc
