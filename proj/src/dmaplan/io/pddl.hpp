#pragma once

#include "dmaplan/io/task_json.hpp"

#include <string>

namespace dmaplan::io {

// Grounds a STRIPS-subset PDDL domain/problem pair into the canonical task
// JSON. Supported: :strips and :typing, typed parameters and objects with a
// single-inheritance hierarchy, conjunctive positive preconditions, and
// conjunctive literal effects. Every other construct is a ParseError naming
// the construct and its source line.
//
// Factorization: `agent_type` names a PDDL type; the objects of that type
// become the agents, and each ground action belongs to the agent bound to
// the first parameter of that type. Parameter bindings enumerate
// pairwise-distinct objects.
std::string import_pddl(const std::string &domain_text, const std::string &problem_text,
                        const std::string &agent_type);

std::string import_pddl_files(const std::string &domain_path, const std::string &problem_path,
                              const std::string &agent_type);

} // namespace dmaplan::io
