#include "dpv/toml.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpv {

using nlohmann::json;

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;
    int line = 1;

    [[noreturn]] void fail(const std::string& msg) const { fail_at(line, msg); }

    [[noreturn]] static void fail_at(int at_line, const std::string& msg) {
        throw std::runtime_error("toml: line " + std::to_string(at_line) + ": " + msg);
    }

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char take() {
        char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }

    // Whitespace and comments; newlines only when cross_lines is set.
    void skip(bool cross_lines) {
        while (!done()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                take();
            } else if (c == '#') {
                while (!done() && peek() != '\n') take();
            } else if (c == '\n' && cross_lines) {
                take();
            } else {
                break;
            }
        }
    }

    void expect_line_end() {
        skip(false);
        if (done()) return;
        if (peek() != '\n') fail(std::string("unexpected character '") + peek() + "'");
        take();
    }
};

bool bare_key_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
}

std::string parse_basic_string(Cursor& cur) {
    cur.take(); // opening quote
    if (cur.text.compare(cur.pos, 2, "\"\"") == 0 && cur.pos + 1 < cur.text.size())
        cur.fail("multi-line strings are not supported");
    std::string out;
    while (true) {
        if (cur.done()) cur.fail("unterminated string");
        char c = cur.take();
        if (c == '"') return out;
        if (c == '\n') cur.fail("newline inside string");
        if (c == '\\') {
            if (cur.done()) cur.fail("unterminated escape");
            char e = cur.take();
            switch (e) {
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            case 'b': out += '\b'; break;
            case 'f': out += '\f'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            case 't': out += '\t'; break;
            default: cur.fail(std::string("unsupported escape '\\") + e + "'");
            }
        } else {
            out += c;
        }
    }
}

std::string parse_literal_string(Cursor& cur) {
    cur.take(); // opening quote
    std::string out;
    while (true) {
        if (cur.done()) cur.fail("unterminated string");
        char c = cur.take();
        if (c == '\'') return out;
        if (c == '\n') cur.fail("newline inside string");
        out += c;
    }
}

std::vector<std::string> parse_key_path(Cursor& cur) {
    std::vector<std::string> path;
    while (true) {
        cur.skip(false);
        if (cur.done()) cur.fail("expected a key");
        char c = cur.peek();
        std::string part;
        if (c == '"') {
            part = parse_basic_string(cur);
        } else if (c == '\'') {
            part = parse_literal_string(cur);
        } else {
            while (!cur.done() && bare_key_char(cur.peek())) part += cur.take();
            if (part.empty()) cur.fail(std::string("expected a key, found '") + c + "'");
        }
        path.push_back(part);
        cur.skip(false);
        if (!cur.done() && cur.peek() == '.') {
            cur.take();
            continue;
        }
        return path;
    }
}

json parse_value(Cursor& cur);

json parse_array(Cursor& cur) {
    cur.take(); // '['
    json arr = json::array();
    while (true) {
        cur.skip(true);
        if (cur.done()) cur.fail("unterminated array");
        if (cur.peek() == ']') {
            cur.take();
            return arr;
        }
        arr.push_back(parse_value(cur));
        cur.skip(true);
        if (cur.done()) cur.fail("unterminated array");
        if (cur.peek() == ',') {
            cur.take();
            continue;
        }
        if (cur.peek() == ']') {
            cur.take();
            return arr;
        }
        cur.fail("expected ',' or ']' in array");
    }
}

json parse_inline_table(Cursor& cur) {
    cur.take(); // '{'
    json obj = json::object();
    cur.skip(true);
    if (!cur.done() && cur.peek() == '}') {
        cur.take();
        return obj;
    }
    while (true) {
        cur.skip(true);
        std::vector<std::string> path = parse_key_path(cur);
        cur.skip(false);
        if (cur.done() || cur.take() != '=') cur.fail("expected '=' in inline table");
        cur.skip(false);
        json value = parse_value(cur);
        json* slot = &obj;
        for (size_t i = 0; i + 1 < path.size(); ++i) slot = &(*slot)[path[i]];
        if (slot->contains(path.back())) cur.fail("duplicate key '" + path.back() + "'");
        (*slot)[path.back()] = std::move(value);
        cur.skip(true);
        if (cur.done()) cur.fail("unterminated inline table");
        if (cur.peek() == ',') {
            cur.take();
            continue;
        }
        if (cur.peek() == '}') {
            cur.take();
            return obj;
        }
        cur.fail("expected ',' or '}' in inline table");
    }
}

json parse_scalar(Cursor& cur) {
    std::string tok;
    while (!cur.done()) {
        char c = cur.peek();
        if (c == ',' || c == ']' || c == '}' || c == '#' || c == '\n' || c == ' ' || c == '\t' ||
            c == '\r')
            break;
        tok += cur.take();
    }
    if (tok.empty()) cur.fail("expected a value");
    if (tok == "true") return true;
    if (tok == "false") return false;

    std::string digits;
    for (char c : tok)
        if (c != '_') digits += c;
    bool floaty = digits.find('.') != std::string::npos ||
                  digits.find('e') != std::string::npos || digits.find('E') != std::string::npos;
    try {
        size_t used = 0;
        if (floaty) {
            double d = std::stod(digits, &used);
            if (used == digits.size()) return d;
        } else {
            long long v = std::stoll(digits, &used);
            if (used == digits.size()) return v;
        }
    } catch (const std::exception&) {
    }
    cur.fail("cannot parse value '" + tok + "' (dates and exotic literals are not supported)");
}

json parse_value(Cursor& cur) {
    if (cur.done()) cur.fail("expected a value");
    char c = cur.peek();
    if (c == '"') return parse_basic_string(cur);
    if (c == '\'') return parse_literal_string(cur);
    if (c == '[') return parse_array(cur);
    if (c == '{') return parse_inline_table(cur);
    return parse_scalar(cur);
}

// Walks a table path from the root; array segments continue in the last
// element, matching subtable-of-array-entry semantics.
json* navigate(json* node, const std::vector<std::string>& path, size_t upto, Cursor& cur) {
    for (size_t i = 0; i < upto; ++i) {
        json& child = (*node)[path[i]];
        if (child.is_null()) child = json::object();
        if (child.is_array()) {
            if (child.empty()) cur.fail("cannot extend empty table array '" + path[i] + "'");
            node = &child.back();
        } else if (child.is_object()) {
            node = &child;
        } else {
            cur.fail("key '" + path[i] + "' is not a table");
        }
    }
    return node;
}

} // namespace

json parse_toml(const std::string& text) {
    Cursor cur{text};
    json root = json::object();
    json* table = &root;

    while (true) {
        cur.skip(true);
        if (cur.done()) return root;
        char c = cur.peek();
        if (c == '[') {
            const int header_line = cur.line;
            cur.take();
            bool array_of_tables = !cur.done() && cur.peek() == '[';
            if (array_of_tables) cur.take();
            std::vector<std::string> path = parse_key_path(cur);
            cur.skip(false);
            if (cur.done() || cur.take() != ']') cur.fail("expected ']' after table name");
            if (array_of_tables && (cur.done() || cur.take() != ']'))
                cur.fail("expected ']]' after table array name");
            cur.expect_line_end();

            json* parent = navigate(&root, path, path.size() - 1, cur);
            json& slot = (*parent)[path.back()];
            if (array_of_tables) {
                if (slot.is_null()) slot = json::array();
                if (!slot.is_array())
                    Cursor::fail_at(header_line, "'" + path.back() + "' is not a table array");
                slot.push_back(json::object());
                table = &slot.back();
            } else {
                if (slot.is_null()) slot = json::object();
                if (!slot.is_object())
                    Cursor::fail_at(header_line,
                                    "table '" + path.back() + "' already has a value");
                table = &slot;
            }
        } else {
            const int key_line = cur.line;
            std::vector<std::string> path = parse_key_path(cur);
            cur.skip(false);
            if (cur.done() || cur.take() != '=') cur.fail("expected '=' after key");
            cur.skip(false);
            json value = parse_value(cur);
            cur.expect_line_end();

            json* parent = navigate(table, path, path.size() - 1, cur);
            if (parent->contains(path.back()))
                Cursor::fail_at(key_line, "duplicate key '" + path.back() + "'");
            (*parent)[path.back()] = std::move(value);
        }
    }
}

json parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_toml(buf.str());
}

} // namespace dpv
