#ifndef SYZLAB_TOML_HPP
#define SYZLAB_TOML_HPP

#include <string>

#include <json.hpp>

#include "syzlab/errors.hpp"

namespace syzlab::toml {

// Config-file parse error with position information.
struct TomlError : ConfigError {
    int line, col;
    TomlError(int line_, int col_, const std::string& what_)
        : ConfigError("TOML parse error at line " + std::to_string(line_) + " column " +
                      std::to_string(col_) + ": " + what_),
          line(line_),
          col(col_) {}
};

// Parses the TOML subset used by experiment configs: [table] and
// [table.subtable] headers, bare or quoted keys, values that are strings,
// integers, floats, booleans, or (possibly nested, possibly multi-line)
// arrays, with # comments.  The result is a JSON object tree.
nlohmann::json parse(const std::string& text);
nlohmann::json parse_file(const std::string& path);

}  // namespace syzlab::toml

#endif
