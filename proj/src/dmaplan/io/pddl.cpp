#include "dmaplan/io/pddl.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace dmaplan::io {

using nlohmann::json;

namespace {

// ------------------------------------------------------------ s-expressions

struct Sexp {
    bool is_atom = false;
    std::string atom;
    std::vector<Sexp> items;
    int line = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string &text) : text_(text) {}

    Sexp parse_one() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        if (text_[pos_] == '(') {
            Sexp list;
            list.line = line_;
            ++pos_;
            for (;;) {
                skip_ws();
                if (pos_ >= text_.size())
                    fail("unclosed '('");
                if (text_[pos_] == ')') {
                    ++pos_;
                    return list;
                }
                list.items.push_back(parse_one());
            }
        }
        if (text_[pos_] == ')')
            fail("unexpected ')'");
        Sexp atom;
        atom.is_atom = true;
        atom.line = line_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')')
            ++pos_;
        atom.atom = text_.substr(start, pos_ - start);
        std::transform(atom.atom.begin(), atom.atom.end(), atom.atom.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        return atom;
    }

    void skip_ws() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                if (text_[pos_] == '\n')
                    ++line_;
                ++pos_;
            }
            if (pos_ < text_.size() && text_[pos_] == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
                continue;
            }
            return;
        }
    }

    [[noreturn]] void fail(const std::string &what) const {
        throw ParseError("pddl: line " + std::to_string(line_) + ": " + what);
    }

private:
    const std::string &text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

[[noreturn]] void unsupported(const std::string &construct, int line) {
    throw ParseError("pddl: line " + std::to_string(line) + ": unsupported construct '" +
                     construct + "'");
}

[[noreturn]] void fail_at(const std::string &what, int line) {
    throw ParseError("pddl: line " + std::to_string(line) + ": " + what);
}

// --------------------------------------------------------------- structures

struct Predicate {
    std::string name;
    std::vector<std::string> param_types;
};

struct Atom {
    std::string pred;
    std::vector<std::string> args; // variables (?x) or object names
    int line = 0;
};

struct Schema {
    std::string name;
    std::vector<std::string> param_names; // ?x
    std::vector<std::string> param_types;
    std::vector<Atom> pre, add, del;
    int line = 0;
};

struct Domain {
    std::string name;
    std::map<std::string, std::string> type_parent; // type -> parent
    std::map<std::string, Predicate> predicates;
    std::map<std::string, std::string> constants; // name -> type
    std::vector<Schema> schemas;
};

struct Instance {
    std::string name;
    std::map<std::string, std::string> objects; // name -> type
    std::vector<Atom> init;
    std::vector<Atom> goal;
};

// typed-list parsing: a b - t c d - u ...
void parse_typed_list(const std::vector<Sexp> &items, std::size_t begin,
                      const std::function<void(const std::string &, const std::string &, int)> &emit) {
    std::vector<std::pair<std::string, int>> pending;
    for (std::size_t i = begin; i < items.size(); ++i) {
        const Sexp &s = items[i];
        if (!s.is_atom)
            fail_at("expected name in typed list", s.line);
        if (s.atom == "-") {
            if (i + 1 >= items.size() || !items[i + 1].is_atom)
                fail_at("expected type after '-'", s.line);
            const std::string &type = items[i + 1].atom;
            for (auto &[name, line] : pending)
                emit(name, type, line);
            pending.clear();
            ++i;
        } else {
            pending.push_back({s.atom, s.line});
        }
    }
    for (auto &[name, line] : pending)
        emit(name, "object", line);
}

Atom parse_atom(const Sexp &s) {
    if (s.is_atom || s.items.empty() || !s.items[0].is_atom)
        fail_at("expected atom", s.line);
    Atom a;
    a.pred = s.items[0].atom;
    a.line = s.line;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
        if (!s.items[i].is_atom)
            fail_at("nested expression inside atom", s.items[i].line);
        a.args.push_back(s.items[i].atom);
    }
    return a;
}

// conjunctive lists; `allow_not` enables (not ...) literals for effects
void parse_condition(const Sexp &s, bool allow_not, std::vector<Atom> *pos,
                     std::vector<Atom> *neg) {
    if (s.is_atom)
        fail_at("expected condition", s.line);
    if (!s.items.empty() && s.items[0].is_atom) {
        const std::string &head = s.items[0].atom;
        if (head == "and") {
            for (std::size_t i = 1; i < s.items.size(); ++i)
                parse_condition(s.items[i], allow_not, pos, neg);
            return;
        }
        if (head == "not") {
            if (!allow_not)
                unsupported("negative precondition", s.line);
            if (s.items.size() != 2)
                fail_at("(not ...) takes one atom", s.line);
            neg->push_back(parse_atom(s.items[1]));
            return;
        }
        if (head == "or" || head == "imply" || head == "forall" || head == "exists" ||
            head == "when" || head == "=" || head == "increase" || head == "decrease" ||
            head == "assign")
            unsupported(head, s.line);
        pos->push_back(parse_atom(s));
        return;
    }
    fail_at("expected condition", s.line);
}

Domain parse_domain(const std::string &text) {
    Lexer lex(text);
    Sexp top = lex.parse_one();
    if (top.is_atom || top.items.size() < 2 || !top.items[0].is_atom ||
        top.items[0].atom != "define")
        fail_at("expected (define (domain ...) ...)", top.line);

    Domain d;
    d.type_parent["object"] = "";
    const Sexp &head = top.items[1];
    if (head.is_atom || head.items.size() != 2 || head.items[0].atom != "domain")
        fail_at("expected (domain name)", head.line);
    d.name = head.items[1].atom;

    for (std::size_t bi = 2; bi < top.items.size(); ++bi) {
        const Sexp &block = top.items[bi];
        if (block.is_atom || block.items.empty() || !block.items[0].is_atom)
            fail_at("expected domain block", block.line);
        const std::string &kind = block.items[0].atom;
        if (kind == ":requirements") {
            for (std::size_t i = 1; i < block.items.size(); ++i) {
                const std::string &req = block.items[i].atom;
                if (req != ":strips" && req != ":typing")
                    unsupported("requirement " + req, block.items[i].line);
            }
        } else if (kind == ":types") {
            parse_typed_list(block.items, 1,
                             [&](const std::string &name, const std::string &parent, int) {
                                 d.type_parent[name] = parent;
                                 if (!d.type_parent.count(parent))
                                     d.type_parent[parent] = "object";
                             });
        } else if (kind == ":constants") {
            parse_typed_list(block.items, 1,
                             [&](const std::string &name, const std::string &type, int) {
                                 d.constants[name] = type;
                             });
        } else if (kind == ":predicates") {
            for (std::size_t i = 1; i < block.items.size(); ++i) {
                const Sexp &p = block.items[i];
                if (p.is_atom || p.items.empty())
                    fail_at("expected predicate declaration", p.line);
                Predicate pred;
                pred.name = p.items[0].atom;
                parse_typed_list(p.items, 1,
                                 [&](const std::string &, const std::string &type, int) {
                                     pred.param_types.push_back(type);
                                 });
                d.predicates[pred.name] = pred;
            }
        } else if (kind == ":action") {
            Schema schema;
            schema.line = block.line;
            if (block.items.size() < 2 || !block.items[1].is_atom)
                fail_at("expected action name", block.line);
            schema.name = block.items[1].atom;
            for (std::size_t i = 2; i + 1 < block.items.size(); i += 2) {
                const std::string &key = block.items[i].atom;
                const Sexp &value = block.items[i + 1];
                if (key == ":parameters") {
                    parse_typed_list(value.items, 0,
                                     [&](const std::string &name, const std::string &type, int line) {
                                         if (name.empty() || name[0] != '?')
                                             fail_at("parameter must start with '?'", line);
                                         schema.param_names.push_back(name);
                                         schema.param_types.push_back(type);
                                     });
                } else if (key == ":precondition") {
                    std::vector<Atom> neg;
                    parse_condition(value, false, &schema.pre, &neg);
                } else if (key == ":effect") {
                    parse_condition(value, true, &schema.add, &schema.del);
                } else {
                    unsupported(key, block.items[i].line);
                }
            }
            d.schemas.push_back(std::move(schema));
        } else if (kind == ":functions") {
            unsupported(":functions", block.line);
        } else {
            unsupported(kind, block.line);
        }
    }
    return d;
}

Instance parse_instance(const std::string &text) {
    Lexer lex(text);
    Sexp top = lex.parse_one();
    if (top.is_atom || top.items.size() < 2 || !top.items[0].is_atom ||
        top.items[0].atom != "define")
        fail_at("expected (define (problem ...) ...)", top.line);

    Instance inst;
    const Sexp &head = top.items[1];
    if (head.is_atom || head.items.size() != 2 || head.items[0].atom != "problem")
        fail_at("expected (problem name)", head.line);
    inst.name = head.items[1].atom;

    for (std::size_t bi = 2; bi < top.items.size(); ++bi) {
        const Sexp &block = top.items[bi];
        if (block.is_atom || block.items.empty() || !block.items[0].is_atom)
            fail_at("expected problem block", block.line);
        const std::string &kind = block.items[0].atom;
        if (kind == ":domain") {
            // name recorded implicitly; importer takes both files together
        } else if (kind == ":objects") {
            parse_typed_list(block.items, 1,
                             [&](const std::string &name, const std::string &type, int) {
                                 inst.objects[name] = type;
                             });
        } else if (kind == ":init") {
            for (std::size_t i = 1; i < block.items.size(); ++i)
                inst.init.push_back(parse_atom(block.items[i]));
        } else if (kind == ":goal") {
            if (block.items.size() != 2)
                fail_at("expected one goal expression", block.line);
            std::vector<Atom> neg;
            parse_condition(block.items[1], false, &inst.goal, &neg);
        } else {
            unsupported(kind, block.line);
        }
    }
    return inst;
}

// ---------------------------------------------------------------- grounding

std::string ground_name(const std::string &head, const std::vector<std::string> &args) {
    std::string out = head + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i)
            out += ",";
        out += args[i];
    }
    out += ")";
    return out;
}

} // namespace

std::string import_pddl(const std::string &domain_text, const std::string &problem_text,
                        const std::string &agent_type) {
    Domain dom = parse_domain(domain_text);
    Instance inst = parse_instance(problem_text);

    std::map<std::string, std::string> objects = dom.constants;
    for (const auto &[name, type] : inst.objects)
        objects[name] = type;

    auto is_subtype = [&](const std::string &type, const std::string &ancestor) {
        if (ancestor == "object")
            return true;
        std::string cur = type;
        while (!cur.empty()) {
            if (cur == ancestor)
                return true;
            auto it = dom.type_parent.find(cur);
            cur = it == dom.type_parent.end() ? "" : it->second;
        }
        return false;
    };

    // agents: objects of the agent type, sorted for deterministic ids
    std::vector<std::string> agents;
    for (const auto &[name, type] : objects)
        if (is_subtype(type, agent_type))
            agents.push_back(name);
    std::sort(agents.begin(), agents.end());
    if (agents.empty())
        throw ParseError("pddl: no objects of agent type '" + agent_type + "'");

    auto check_atom = [&](const Atom &atom, bool allow_vars,
                          const std::map<std::string, std::string> &var_types) {
        auto pit = dom.predicates.find(atom.pred);
        if (pit == dom.predicates.end())
            fail_at("unknown predicate '" + atom.pred + "'", atom.line);
        if (pit->second.param_types.size() != atom.args.size())
            fail_at("arity mismatch for '" + atom.pred + "'", atom.line);
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            const std::string &arg = atom.args[i];
            std::string type;
            if (!arg.empty() && arg[0] == '?') {
                if (!allow_vars)
                    fail_at("variable in ground atom", atom.line);
                auto vt = var_types.find(arg);
                if (vt == var_types.end())
                    fail_at("unbound variable '" + arg + "'", atom.line);
                type = vt->second;
            } else {
                auto ot = objects.find(arg);
                if (ot == objects.end())
                    fail_at("unknown object '" + arg + "'", atom.line);
                type = ot->second;
            }
            if (!is_subtype(type, pit->second.param_types[i]))
                fail_at("argument " + std::to_string(i) + " of '" + atom.pred +
                            "' has incompatible type",
                        atom.line);
        }
    };

    std::set<std::string> facts;
    json actions = json::array();

    // deterministic object order for binding enumeration
    std::vector<std::string> object_names;
    for (const auto &[name, type] : objects)
        object_names.push_back(name);
    std::sort(object_names.begin(), object_names.end());

    for (const Schema &schema : dom.schemas) {
        std::map<std::string, std::string> var_types;
        for (std::size_t i = 0; i < schema.param_names.size(); ++i)
            var_types[schema.param_names[i]] = schema.param_types[i];
        for (const Atom &a : schema.pre)
            check_atom(a, true, var_types);
        for (const Atom &a : schema.add)
            check_atom(a, true, var_types);
        for (const Atom &a : schema.del)
            check_atom(a, true, var_types);

        int agent_param = -1;
        for (std::size_t i = 0; i < schema.param_types.size(); ++i)
            if (is_subtype(schema.param_types[i], agent_type)) {
                agent_param = static_cast<int>(i);
                break;
            }
        if (agent_param < 0)
            fail_at("action '" + schema.name + "' has no parameter of agent type '" + agent_type +
                        "'",
                    schema.line);

        // enumerate pairwise-distinct typed bindings
        std::vector<std::string> binding(schema.param_names.size());
        std::vector<char> used_obj; // parallel to object_names
        used_obj.assign(object_names.size(), 0);

        std::function<void(std::size_t)> enumerate = [&](std::size_t pi) {
            if (pi == schema.param_names.size()) {
                std::map<std::string, std::string> sub;
                for (std::size_t i = 0; i < binding.size(); ++i)
                    sub[schema.param_names[i]] = binding[i];
                auto instantiate = [&](const Atom &a) {
                    std::vector<std::string> args;
                    for (const std::string &arg : a.args)
                        args.push_back(!arg.empty() && arg[0] == '?' ? sub[arg] : arg);
                    std::string name = ground_name(a.pred, args);
                    facts.insert(name);
                    return name;
                };
                json act;
                act["agent"] = binding[static_cast<std::size_t>(agent_param)];
                act["name"] = ground_name(schema.name, binding);
                json pre = json::array(), add = json::array(), del = json::array();
                for (const Atom &a : schema.pre)
                    pre.push_back(instantiate(a));
                for (const Atom &a : schema.add)
                    add.push_back(instantiate(a));
                for (const Atom &a : schema.del)
                    del.push_back(instantiate(a));
                act["pre"] = pre;
                act["add"] = add;
                act["del"] = del;
                act["cost"] = 1;
                actions.push_back(act);
                return;
            }
            for (std::size_t oi = 0; oi < object_names.size(); ++oi) {
                if (used_obj[oi])
                    continue;
                const std::string &obj = object_names[oi];
                if (!is_subtype(objects[obj], schema.param_types[pi]))
                    continue;
                used_obj[oi] = 1;
                binding[pi] = obj;
                enumerate(pi + 1);
                used_obj[oi] = 0;
            }
        };
        enumerate(0);
    }

    json init = json::array(), goal = json::array();
    for (const Atom &a : inst.init) {
        check_atom(a, false, {});
        std::string name = ground_name(a.pred, a.args);
        facts.insert(name);
        init.push_back(name);
    }
    for (const Atom &a : inst.goal) {
        check_atom(a, false, {});
        std::string name = ground_name(a.pred, a.args);
        facts.insert(name);
        goal.push_back(name);
    }

    json doc;
    doc["name"] = inst.name;
    doc["agents"] = agents;
    doc["facts"] = json(facts); // set -> sorted array
    doc["init"] = init;
    doc["goal"] = goal;
    doc["actions"] = actions;
    return doc.dump(2) + "\n";
}

std::string import_pddl_files(const std::string &domain_path, const std::string &problem_path,
                              const std::string &agent_type) {
    auto slurp = [](const std::string &path) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ParseError("pddl: cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    return import_pddl(slurp(domain_path), slurp(problem_path), agent_type);
}

} // namespace dmaplan::io
