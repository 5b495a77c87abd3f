#include "dmaplan/io/task_json.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dmaplan::io {

using nlohmann::json;
using model::Problem;

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw ParseError("task: " + path + ": " + what);
}

const json &expect(const json &obj, const std::string &path, const char *key, json::value_t type) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path + "." + key, "missing");
    bool ok = it->type() == type ||
              (type == json::value_t::number_float && it->is_number());
    if (!ok)
        fail(path + "." + key, "wrong type");
    return *it;
}

std::vector<std::string> string_list(const json &arr, const std::string &path) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string())
            fail(path + "[" + std::to_string(i) + "]", "expected string");
        out.push_back(arr[i].get<std::string>());
    }
    return out;
}

void reject_unknown_keys(const json &obj, const std::string &path,
                         const std::set<std::string> &allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            fail(path + "." + it.key(), "unknown key");
}

} // namespace

Problem parse_task(const std::string &bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("task: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        fail("$", "expected object");
    reject_unknown_keys(doc, "$", {"name", "agents", "facts", "public", "init", "goal", "actions"});

    Problem p;
    p.name = expect(doc, "$", "name", json::value_t::string).get<std::string>();
    std::vector<std::string> agent_names =
        string_list(expect(doc, "$", "agents", json::value_t::array), "$.agents");
    if (agent_names.empty())
        fail("$.agents", "at least one agent required");
    std::vector<std::string> fact_names =
        string_list(expect(doc, "$", "facts", json::value_t::array), "$.facts");
    std::vector<std::string> init_names =
        string_list(expect(doc, "$", "init", json::value_t::array), "$.init");
    std::vector<std::string> goal_names =
        string_list(expect(doc, "$", "goal", json::value_t::array), "$.goal");
    std::vector<std::string> forced_public;
    if (doc.contains("public"))
        forced_public = string_list(doc["public"], "$.public");

    p.agents = agent_names;
    std::map<std::string, int> agent_id;
    for (std::size_t i = 0; i < agent_names.size(); ++i) {
        if (agent_id.count(agent_names[i]))
            fail("$.agents", "duplicate agent '" + agent_names[i] + "'");
        agent_id[agent_names[i]] = static_cast<int>(i);
    }

    // Intern facts in lexicographic name order for deterministic ids.
    std::vector<std::string> sorted_facts = fact_names;
    std::sort(sorted_facts.begin(), sorted_facts.end());
    if (std::adjacent_find(sorted_facts.begin(), sorted_facts.end()) != sorted_facts.end())
        fail("$.facts", "duplicate fact name");
    std::map<std::string, int> fact_id;
    for (std::size_t i = 0; i < sorted_facts.size(); ++i) {
        model::Fact f;
        f.id = static_cast<int>(i);
        f.name = sorted_facts[i];
        p.facts.push_back(f);
        fact_id[f.name] = f.id;
    }

    auto lookup_fact = [&](const std::string &name, const std::string &path) {
        auto it = fact_id.find(name);
        if (it == fact_id.end())
            fail(path, "undeclared fact '" + name + "'");
        return it->second;
    };

    for (const std::string &nm : init_names)
        p.init.push_back(lookup_fact(nm, "$.init"));
    for (const std::string &nm : goal_names)
        p.goals.push_back(lookup_fact(nm, "$.goal"));
    for (const std::string &nm : forced_public)
        lookup_fact(nm, "$.public");
    std::sort(p.init.begin(), p.init.end());
    p.init.erase(std::unique(p.init.begin(), p.init.end()), p.init.end());
    std::sort(p.goals.begin(), p.goals.end());
    p.goals.erase(std::unique(p.goals.begin(), p.goals.end()), p.goals.end());

    const json &actions = expect(doc, "$", "actions", json::value_t::array);
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const std::string path = "$.actions[" + std::to_string(i) + "]";
        const json &a = actions[i];
        if (!a.is_object())
            fail(path, "expected object");
        reject_unknown_keys(a, path, {"agent", "name", "pre", "add", "del", "cost"});

        model::Action act;
        act.name = expect(a, path, "name", json::value_t::string).get<std::string>();
        std::string agent_name = expect(a, path, "agent", json::value_t::string).get<std::string>();
        auto ag = agent_id.find(agent_name);
        if (ag == agent_id.end())
            fail(path + ".agent", "undeclared agent '" + agent_name + "'");
        act.agent = ag->second;

        auto fact_set = [&](const char *key) {
            std::vector<int> ids;
            for (const std::string &nm :
                 string_list(expect(a, path, key, json::value_t::array), path + "." + key))
                ids.push_back(lookup_fact(nm, path + "." + key));
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            return ids;
        };
        act.pre = fact_set("pre");
        act.add = fact_set("add");
        act.del = fact_set("del");
        if (a.contains("cost")) {
            if (!a["cost"].is_number())
                fail(path + ".cost", "expected number");
            act.cost = a["cost"].get<double>();
            if (act.cost < 0)
                fail(path + ".cost", "cost must be non-negative");
        }
        for (int f : act.add)
            if (std::binary_search(act.del.begin(), act.del.end(), f))
                fail(path, "fact '" + p.facts[f].name + "' in both add and del");
        p.actions.push_back(std::move(act));
    }

    classify_facts(p, forced_public);
    p.finalize();
    check_privacy_invariants(p);
    return p;
}

Problem load_task_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("task: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_task(ss.str());
}

std::string serialize_task(const Problem &problem) {
    json doc;
    doc["name"] = problem.name;
    doc["agents"] = problem.agents;
    json facts = json::array();
    json forced_public = json::array();
    for (const model::Fact &f : problem.facts)
        facts.push_back(f.name);
    doc["facts"] = facts;
    json init = json::array(), goal = json::array();
    for (int f : problem.init)
        init.push_back(problem.facts[f].name);
    for (int f : problem.goals)
        goal.push_back(problem.facts[f].name);
    doc["init"] = init;
    doc["goal"] = goal;

    // Facts that usage alone would classify private must be pinned public.
    {
        Problem probe = problem;
        for (model::Fact &f : probe.facts)
            f.owner = model::kPublicOwner;
        probe.warnings.clear();
        classify_facts(probe, {});
        for (std::size_t i = 0; i < probe.facts.size(); ++i)
            if (!probe.facts[i].is_public() && problem.facts[i].is_public())
                forced_public.push_back(problem.facts[i].name);
    }
    if (!forced_public.empty())
        doc["public"] = forced_public;

    json actions = json::array();
    for (const model::Action &a : problem.actions) {
        json obj;
        obj["agent"] = problem.agents[a.agent];
        obj["name"] = a.name;
        auto names = [&](const std::vector<int> &ids) {
            json arr = json::array();
            for (int f : ids)
                arr.push_back(problem.facts[f].name);
            return arr;
        };
        obj["pre"] = names(a.pre);
        obj["add"] = names(a.add);
        obj["del"] = names(a.del);
        obj["cost"] = a.cost;
        actions.push_back(obj);
    }
    doc["actions"] = actions;
    return doc.dump(2) + "\n";
}

} // namespace dmaplan::io
