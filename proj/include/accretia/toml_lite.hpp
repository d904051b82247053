#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace accretia::toml {

// Minimal strict TOML subset: bare/quoted keys, [dotted.table] headers,
// strings, integers, floats, booleans and flat arrays. Enough for scenario
// configs; anything else is a parse error with a line number.

class Value;
using Table = std::map<std::string, Value>;
using Array = std::vector<Value>;

class Value {
public:
    using Storage = std::variant<std::string, std::int64_t, double, bool, Array, Table>;

    Value() : storage_(Table{}) {}
    explicit Value(Storage s) : storage_(std::move(s)) {}

    bool is_table() const { return std::holds_alternative<Table>(storage_); }
    bool is_array() const { return std::holds_alternative<Array>(storage_); }
    bool is_string() const { return std::holds_alternative<std::string>(storage_); }
    bool is_bool() const { return std::holds_alternative<bool>(storage_); }
    bool is_integer() const { return std::holds_alternative<std::int64_t>(storage_); }
    bool is_number() const { return is_integer() || std::holds_alternative<double>(storage_); }

    const Table& as_table() const { return std::get<Table>(storage_); }
    Table& as_table() { return std::get<Table>(storage_); }
    const Array& as_array() const { return std::get<Array>(storage_); }
    const std::string& as_string() const { return std::get<std::string>(storage_); }
    bool as_bool() const { return std::get<bool>(storage_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(storage_); }
    double as_double() const {
        return is_integer() ? static_cast<double>(as_integer()) : std::get<double>(storage_);
    }

private:
    Storage storage_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_number(line) {}
    int line_number;
};

Table parse(const std::string& text);

}  // namespace accretia::toml
