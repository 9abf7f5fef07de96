#include "syzlab/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace syzlab::toml {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1, col = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char get() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    [[noreturn]] void fail(const std::string& what) const { throw TomlError(line, col, what); }

    void skip_ws(bool with_newlines) {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else if (c == ' ' || c == '\t' || c == '\r' || (with_newlines && c == '\n')) {
                get();
            } else {
                break;
            }
        }
    }
};

std::string parse_bare_or_quoted_key(Cursor& cur) {
    cur.skip_ws(false);
    if (cur.eof()) cur.fail("expected key");
    if (cur.peek() == '"') {
        cur.get();
        std::string out;
        while (!cur.eof() && cur.peek() != '"') out.push_back(cur.get());
        if (cur.eof()) cur.fail("unterminated quoted key");
        cur.get();
        return out;
    }
    std::string out;
    while (!cur.eof()) {
        char c = cur.peek();
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
            out.push_back(cur.get());
        } else {
            break;
        }
    }
    if (out.empty()) cur.fail("expected key");
    return out;
}

nlohmann::json parse_value(Cursor& cur);

nlohmann::json parse_array(Cursor& cur) {
    cur.get();  // consume [
    nlohmann::json arr = nlohmann::json::array();
    while (true) {
        cur.skip_ws(true);
        if (cur.eof()) cur.fail("unterminated array");
        if (cur.peek() == ']') {
            cur.get();
            return arr;
        }
        arr.push_back(parse_value(cur));
        cur.skip_ws(true);
        if (cur.eof()) cur.fail("unterminated array");
        if (cur.peek() == ',') {
            cur.get();
        } else if (cur.peek() != ']') {
            cur.fail("expected ',' or ']' in array");
        }
    }
}

nlohmann::json parse_value(Cursor& cur) {
    cur.skip_ws(false);
    if (cur.eof()) cur.fail("expected value");
    char c = cur.peek();
    if (c == '[') return parse_array(cur);
    if (c == '"') {
        cur.get();
        std::string out;
        while (!cur.eof() && cur.peek() != '"') {
            char ch = cur.get();
            if (ch == '\\') {
                if (cur.eof()) cur.fail("dangling escape");
                char esc = cur.get();
                switch (esc) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    default: cur.fail("unsupported escape sequence");
                }
            } else if (ch == '\n') {
                cur.fail("newline in string");
            } else {
                out.push_back(ch);
            }
        }
        if (cur.eof()) cur.fail("unterminated string");
        cur.get();
        return out;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string word;
        while (!cur.eof() && std::isalpha(static_cast<unsigned char>(cur.peek()))) word.push_back(cur.get());
        if (word == "true") return true;
        if (word == "false") return false;
        cur.fail("unknown literal '" + word + "'");
    }
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        bool is_float = false;
        while (!cur.eof()) {
            char ch = cur.peek();
            if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '+' || ch == '-') {
                num.push_back(cur.get());
            } else if (ch == '.' || ch == 'e' || ch == 'E') {
                is_float = true;
                num.push_back(cur.get());
            } else if (ch == '_') {
                cur.get();
            } else {
                break;
            }
        }
        try {
            if (is_float) return std::stod(num);
            return static_cast<std::int64_t>(std::stoll(num));
        } catch (const std::exception&) {
            cur.fail("malformed number '" + num + "'");
        }
    }
    cur.fail(std::string("unexpected character '") + c + "'");
}

void expect_line_end(Cursor& cur) {
    cur.skip_ws(false);
    if (cur.eof()) return;
    if (cur.peek() == '\n') {
        cur.get();
        return;
    }
    cur.fail("trailing characters after value");
}

}  // namespace

nlohmann::json parse(const std::string& text) {
    Cursor cur{text};
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;
    while (true) {
        cur.skip_ws(true);
        if (cur.eof()) break;
        if (cur.peek() == '[') {
            cur.get();
            table = &root;
            while (true) {
                std::string part = parse_bare_or_quoted_key(cur);
                if (!table->contains(part)) (*table)[part] = nlohmann::json::object();
                table = &(*table)[part];
                if (!table->is_object()) cur.fail("table header collides with a value");
                cur.skip_ws(false);
                if (cur.eof()) cur.fail("unterminated table header");
                if (cur.peek() == '.') {
                    cur.get();
                    continue;
                }
                if (cur.peek() == ']') {
                    cur.get();
                    break;
                }
                cur.fail("expected '.' or ']' in table header");
            }
            expect_line_end(cur);
            continue;
        }
        std::string key = parse_bare_or_quoted_key(cur);
        cur.skip_ws(false);
        if (cur.eof() || cur.peek() != '=') cur.fail("expected '=' after key '" + key + "'");
        cur.get();
        nlohmann::json value = parse_value(cur);
        if (table->contains(key)) cur.fail("duplicate key '" + key + "'");
        (*table)[key] = std::move(value);
        expect_line_end(cur);
    }
    return root;
}

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

}  // namespace syzlab::toml
