#ifndef NPC_CONFIG_HPP
#define NPC_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace npc
{
// Raised on malformed config text or on typed access that cannot be
// satisfied; the message carries file name, line and key.
struct ConfigError : std::runtime_error
{
    explicit ConfigError(const std::string &what_arg) : std::runtime_error(what_arg) {}
};

// One parsed value. Arrays are numeric; two-level arrays cover integer
// pair lists such as orders = [[2, 1], [2, -1]].
struct ConfigValue
{
    enum class Kind
    {
        string,
        number,
        boolean,
        array,
        nested_array
    };

    Kind kind = Kind::string;
    std::string text;
    double number = 0.0;
    bool flag = false;
    std::vector<double> array;
    std::vector<std::vector<double>> nested;
    int line = 0;
};

// Sectioned key = value text:
//   [section] / [section.subsection] headers,
//   '#' comments, quoted or bare strings, numbers, true/false,
//   [a, b, c] numeric arrays and [[..], [..]] pair lists.
// Keys are stored flattened as "section.key".
class ConfigFile
{
public:
    static ConfigFile parse_file(const std::string &path);
    static ConfigFile parse_text(const std::string &text, const std::string &origin);

    bool has(const std::string &key) const;

    double get_number(const std::string &key) const;
    double get_number_or(const std::string &key, double fallback) const;
    std::string get_string(const std::string &key) const;
    std::string get_string_or(const std::string &key, const std::string &fallback) const;
    bool get_bool_or(const std::string &key, bool fallback) const;
    std::vector<double> get_array(const std::string &key) const;
    std::vector<std::vector<double>> get_nested_array(const std::string &key) const;

    // Keys under "prefix." in file order; used for named coefficient lists.
    std::vector<std::string> keys_with_prefix(const std::string &prefix) const;

    // Applies a "section.key=value" override, parsed with the normal value
    // grammar. Malformed overrides raise ConfigError.
    void apply_override(const std::string &assignment);

    const std::string &origin() const { return origin_; }
    int line_of(const std::string &key) const;

private:
    const ConfigValue &require(const std::string &key) const;
    [[noreturn]] void fail(const std::string &key, const std::string &why) const;

    std::string origin_ = "<none>";
    std::map<std::string, ConfigValue> values_;
    std::vector<std::string> order_;
};
}

#endif
