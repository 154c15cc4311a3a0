#pragma once

#include <string>
#include <variant>

#include "cgfa/domain.hpp"
#include "cgfa/model.hpp"

namespace cgfa {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(std::string message, int line_, int column_)
        : std::runtime_error(message + " at line " + std::to_string(line_) + ", column " +
                             std::to_string(column_)),
          line(line_),
          column(column_) {}
};

/// An `init` with any interval count declares an abstract state.
using InitialDecl = std::variant<Multiset, AbstractState>;

struct Model {
    Environment env;
    InitialDecl init;
    bool abstract_init() const { return std::holds_alternative<AbstractState>(init); }
};

Model parse_model(const std::string& text);
Model parse_model_file(const std::string& path);

}  // namespace cgfa
