#include "npc/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace npc
{
namespace
{
std::string trim(const std::string &s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string &s)
{
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        if (s[i] == '"')
            quoted = !quoted;
        else if (s[i] == '#' && !quoted)
            return s.substr(0, i);
    }
    return s;
}

// Net '[' minus ']' count outside quoted strings; drives value-line
// continuation for arrays split across lines.
int bracket_balance(const std::string &s)
{
    int depth = 0;
    bool quoted = false;
    for (char c : s)
    {
        if (c == '"')
            quoted = !quoted;
        else if (c == '[' && !quoted)
            ++depth;
        else if (c == ']' && !quoted)
            --depth;
    }
    return depth;
}

bool parse_full_number(const std::string &s, double &out)
{
    if (s.empty())
        return false;
    const char *begin = s.c_str();
    char *end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size();
}

std::vector<std::string> split_top_level(const std::string &body, const std::string &where)
{
    std::vector<std::string> items;
    int depth = 0;
    std::string cur;
    for (char c : body)
    {
        if (c == '[')
        {
            ++depth;
            cur.push_back(c);
        }
        else if (c == ']')
        {
            --depth;
            if (depth < 0)
                throw ConfigError(where + ": unbalanced ']' in array");
            cur.push_back(c);
        }
        else if (c == ',' && depth == 0)
        {
            items.push_back(trim(cur));
            cur.clear();
        }
        else
            cur.push_back(c);
    }
    if (depth != 0)
        throw ConfigError(where + ": unbalanced '[' in array");
    const std::string last = trim(cur);
    if (!last.empty())
        items.push_back(last);
    return items;
}

ConfigValue parse_value(const std::string &raw, const std::string &where, int line)
{
    ConfigValue v;
    v.line = line;
    const std::string s = trim(raw);
    if (s.empty())
        throw ConfigError(where + ": empty value");

    if (s.front() == '[')
    {
        if (s.back() != ']')
            throw ConfigError(where + ": array not closed with ']'");
        const std::string body = trim(s.substr(1, s.size() - 2));
        const std::vector<std::string> items =
            body.empty() ? std::vector<std::string>{} : split_top_level(body, where);
        const bool nested = !items.empty() && !items.front().empty() && items.front().front() == '[';
        if (nested)
        {
            v.kind = ConfigValue::Kind::nested_array;
            for (const std::string &item : items)
            {
                if (item.empty() || item.front() != '[' || item.back() != ']')
                    throw ConfigError(where + ": expected [..] element in nested array");
                std::vector<double> row;
                const std::string inner = trim(item.substr(1, item.size() - 2));
                for (const std::string &cell :
                     inner.empty() ? std::vector<std::string>{} : split_top_level(inner, where))
                {
                    double d = 0.0;
                    if (!parse_full_number(cell, d))
                        throw ConfigError(where + ": non-numeric array element '" + cell + "'");
                    row.push_back(d);
                }
                v.nested.push_back(row);
            }
        }
        else
        {
            v.kind = ConfigValue::Kind::array;
            for (const std::string &item : items)
            {
                double d = 0.0;
                if (!parse_full_number(item, d))
                    throw ConfigError(where + ": non-numeric array element '" + item + "'");
                v.array.push_back(d);
            }
        }
        return v;
    }

    if (s.front() == '"')
    {
        if (s.size() < 2 || s.back() != '"')
            throw ConfigError(where + ": unterminated string");
        v.kind = ConfigValue::Kind::string;
        v.text = s.substr(1, s.size() - 2);
        return v;
    }
    if (s == "true" || s == "false")
    {
        v.kind = ConfigValue::Kind::boolean;
        v.flag = (s == "true");
        return v;
    }
    double d = 0.0;
    if (parse_full_number(s, d))
    {
        v.kind = ConfigValue::Kind::number;
        v.number = d;
        return v;
    }
    // Bare token: treated as a string (convenient for form identifiers).
    v.kind = ConfigValue::Kind::string;
    v.text = s;
    return v;
}
}

ConfigFile ConfigFile::parse_text(const std::string &text, const std::string &origin)
{
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string rawline;
    std::string section;
    int line = 0;
    while (std::getline(in, rawline))
    {
        ++line;
        const std::string stripped = trim(strip_comment(rawline));
        if (stripped.empty())
            continue;
        const std::string where = origin + ":" + std::to_string(line);
        if (stripped.front() == '[')
        {
            if (stripped.back() != ']' || stripped.size() < 3)
                throw ConfigError(where + ": malformed section header '" + stripped + "'");
            section = trim(stripped.substr(1, stripped.size() - 2));
            if (section.empty())
                throw ConfigError(where + ": empty section name");
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        if (key.empty())
            throw ConfigError(where + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.values_.count(full) != 0)
            throw ConfigError(where + ": duplicate key '" + full + "'");
        const int start_line = line;
        std::string value = stripped.substr(eq + 1);
        while (bracket_balance(value) > 0 && std::getline(in, rawline))
        {
            ++line;
            value += " " + trim(strip_comment(rawline));
        }
        if (bracket_balance(value) > 0)
            throw ConfigError(where + ": array not closed with ']'");
        cfg.values_[full] = parse_value(value, where + " (" + full + ")", start_line);
        cfg.order_.push_back(full);
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

bool ConfigFile::has(const std::string &key) const
{
    return values_.count(key) != 0;
}

const ConfigValue &ConfigFile::require(const std::string &key) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError(origin_ + ": missing required key '" + key + "'");
    return it->second;
}

void ConfigFile::fail(const std::string &key, const std::string &why) const
{
    const auto it = values_.find(key);
    const int line = it == values_.end() ? 0 : it->second.line;
    throw ConfigError(origin_ + ":" + std::to_string(line) + ": key '" + key + "' " + why);
}

double ConfigFile::get_number(const std::string &key) const
{
    const ConfigValue &v = require(key);
    if (v.kind != ConfigValue::Kind::number)
        fail(key, "is not a number");
    return v.number;
}

double ConfigFile::get_number_or(const std::string &key, double fallback) const
{
    return has(key) ? get_number(key) : fallback;
}

std::string ConfigFile::get_string(const std::string &key) const
{
    const ConfigValue &v = require(key);
    if (v.kind != ConfigValue::Kind::string)
        fail(key, "is not a string");
    return v.text;
}

std::string ConfigFile::get_string_or(const std::string &key, const std::string &fallback) const
{
    return has(key) ? get_string(key) : fallback;
}

bool ConfigFile::get_bool_or(const std::string &key, bool fallback) const
{
    if (!has(key))
        return fallback;
    const ConfigValue &v = require(key);
    if (v.kind != ConfigValue::Kind::boolean)
        fail(key, "is not a boolean");
    return v.flag;
}

std::vector<double> ConfigFile::get_array(const std::string &key) const
{
    const ConfigValue &v = require(key);
    if (v.kind == ConfigValue::Kind::number)
        return {v.number};  // single scalar accepted where an array is expected
    if (v.kind != ConfigValue::Kind::array)
        fail(key, "is not a numeric array");
    return v.array;
}

std::vector<std::vector<double>> ConfigFile::get_nested_array(const std::string &key) const
{
    const ConfigValue &v = require(key);
    if (v.kind == ConfigValue::Kind::array)
        return {v.array};  // a single pair is accepted
    if (v.kind != ConfigValue::Kind::nested_array)
        fail(key, "is not an array of arrays");
    return v.nested;
}

std::vector<std::string> ConfigFile::keys_with_prefix(const std::string &prefix) const
{
    std::vector<std::string> out;
    for (const std::string &k : order_)
        if (k.size() > prefix.size() && k.compare(0, prefix.size(), prefix) == 0)
            out.push_back(k);
    return out;
}

void ConfigFile::apply_override(const std::string &assignment)
{
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string raw = assignment.substr(eq + 1);
    ConfigValue v = parse_value(raw, "override " + key, 0);
    if (values_.count(key) == 0)
        order_.push_back(key);
    values_[key] = v;
}

int ConfigFile::line_of(const std::string &key) const
{
    return require(key).line;
}
}
