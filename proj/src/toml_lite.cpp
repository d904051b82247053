#include "accretia/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace accretia::toml {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        const char ch = text[pos++];
        if (ch == '\n') ++line;
        return ch;
    }
    void skip_inline_ws() {
        while (!done() && (peek() == ' ' || peek() == '\t')) ++pos;
    }
};

[[noreturn]] void fail(const Cursor& c, const std::string& message) {
    throw ParseError(message, c.line);
}

void skip_to_eol(Cursor& c) {
    c.skip_inline_ws();
    if (!c.done() && c.peek() == '#') {
        while (!c.done() && c.peek() != '\n') c.take();
    }
    if (!c.done()) {
        if (c.peek() != '\n') fail(c, "unexpected trailing characters");
        c.take();
    }
}

bool bare_key_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
}

std::string parse_key_part(Cursor& c) {
    c.skip_inline_ws();
    if (c.done()) fail(c, "expected key");
    if (c.peek() == '"') {
        c.take();
        std::string key;
        while (!c.done() && c.peek() != '"') key.push_back(c.take());
        if (c.done()) fail(c, "unterminated quoted key");
        c.take();
        return key;
    }
    std::string key;
    while (!c.done() && bare_key_char(c.peek())) key.push_back(c.take());
    if (key.empty()) fail(c, "expected key");
    return key;
}

std::vector<std::string> parse_dotted_key(Cursor& c, char terminator) {
    std::vector<std::string> parts{parse_key_part(c)};
    c.skip_inline_ws();
    while (!c.done() && c.peek() == '.') {
        c.take();
        parts.push_back(parse_key_part(c));
        c.skip_inline_ws();
    }
    if (c.done() || c.peek() != terminator) {
        fail(c, std::string("expected '") + terminator + "' after key");
    }
    c.take();
    return parts;
}

Value parse_value(Cursor& c);

Value parse_string(Cursor& c) {
    c.take();  // opening quote
    std::string out;
    while (!c.done() && c.peek() != '"') {
        char ch = c.take();
        if (ch == '\n') fail(c, "newline in string");
        if (ch == '\\') {
            if (c.done()) fail(c, "dangling escape");
            const char esc = c.take();
            switch (esc) {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                default: fail(c, "unsupported escape sequence");
            }
        } else {
            out.push_back(ch);
        }
    }
    if (c.done()) fail(c, "unterminated string");
    c.take();
    return Value(Value::Storage(out));
}

Value parse_array(Cursor& c) {
    c.take();  // '['
    Array items;
    for (;;) {
        c.skip_inline_ws();
        while (!c.done() && (c.peek() == '\n' || c.peek() == '#')) {
            if (c.peek() == '#') {
                while (!c.done() && c.peek() != '\n') c.take();
            } else {
                c.take();
            }
            c.skip_inline_ws();
        }
        if (c.done()) fail(c, "unterminated array");
        if (c.peek() == ']') {
            c.take();
            break;
        }
        items.push_back(parse_value(c));
        c.skip_inline_ws();
        while (!c.done() && (c.peek() == '\n' || c.peek() == '#')) {
            if (c.peek() == '#') {
                while (!c.done() && c.peek() != '\n') c.take();
            } else {
                c.take();
            }
            c.skip_inline_ws();
        }
        if (c.done()) fail(c, "unterminated array");
        if (c.peek() == ',') {
            c.take();
        } else if (c.peek() != ']') {
            fail(c, "expected ',' or ']' in array");
        }
    }
    return Value(Value::Storage(items));
}

Value parse_scalar(Cursor& c) {
    std::string token;
    while (!c.done() && c.peek() != '\n' && c.peek() != ',' && c.peek() != ']' &&
           c.peek() != '#' && c.peek() != ' ' && c.peek() != '\t') {
        token.push_back(c.take());
    }
    if (token == "true") return Value(Value::Storage(true));
    if (token == "false") return Value(Value::Storage(false));

    const bool looks_float = token.find_first_of(".eE") != std::string::npos ||
                             token == "inf" || token == "-inf" || token == "nan";
    if (!looks_float) {
        std::int64_t iv = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), iv);
        if (ec == std::errc() && ptr == token.data() + token.size()) {
            return Value(Value::Storage(iv));
        }
    }
    try {
        std::size_t used = 0;
        const double dv = std::stod(token, &used);
        if (used == token.size()) return Value(Value::Storage(dv));
    } catch (const std::exception&) {
    }
    fail(c, "cannot parse value '" + token + "'");
}

Value parse_value(Cursor& c) {
    c.skip_inline_ws();
    if (c.done()) fail(c, "expected value");
    if (c.peek() == '"') return parse_string(c);
    if (c.peek() == '[') return parse_array(c);
    return parse_scalar(c);
}

Table* descend(Table& root, const std::vector<std::string>& path, Cursor& c) {
    Table* table = &root;
    for (const std::string& part : path) {
        auto [it, inserted] = table->try_emplace(part, Value{});
        if (!inserted && !it->second.is_table()) {
            fail(c, "key '" + part + "' redefined as a table");
        }
        table = &it->second.as_table();
    }
    return table;
}

}  // namespace

Table parse(const std::string& text) {
    Table root;
    Cursor c{text};
    Table* current = &root;
    while (!c.done()) {
        c.skip_inline_ws();
        if (c.done()) break;
        const char ch = c.peek();
        if (ch == '\n' || ch == '#') {
            skip_to_eol(c);
            continue;
        }
        if (ch == '[') {
            c.take();
            const std::vector<std::string> path = parse_dotted_key(c, ']');
            current = descend(root, path, c);
            skip_to_eol(c);
            continue;
        }
        const std::vector<std::string> path = parse_dotted_key(c, '=');
        Table* table = current;
        if (path.size() > 1) {
            table = descend(*current,
                            std::vector<std::string>(path.begin(), path.end() - 1), c);
        }
        if (table->count(path.back()) > 0) {
            fail(c, "duplicate key '" + path.back() + "'");
        }
        (*table)[path.back()] = parse_value(c);
        skip_to_eol(c);
    }
    return root;
}

}  // namespace accretia::toml
