#pragma once

#include "dmaplan/model/problem.hpp"

#include <stdexcept>
#include <string>

namespace dmaplan::io {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses the canonical task JSON (see docs/task-format.md) into a grounded,
// privacy-classified Problem. Fact ids are interned in lexicographic name
// order. Throws ParseError with a JSON path or symbol name on violation.
model::Problem parse_task(const std::string &bytes);

model::Problem load_task_file(const std::string &path);

// Inverse of parse_task up to Problem equality: parse(serialize(p)) == p.
std::string serialize_task(const model::Problem &problem);

} // namespace dmaplan::io
