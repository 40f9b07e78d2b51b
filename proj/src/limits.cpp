#include "stackelkep/limits.hpp"

#include "stackelkep/error.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

namespace stackelkep {

Limits Limits::unbounded() {
    Limits l;
    l.search_nodes = 64;
    l.oracle_nodes = 64;
    l.leader_nodes = hard_max;
    l.sat_vars = hard_max;
    l.adversarial_vars = hard_max;
    return l;
}

Limits Limits::parse(std::string_view spec) { return parse(spec, Limits{}); }

Limits Limits::parse(std::string_view spec, Limits base) {
    while (!spec.empty()) {
        auto comma = spec.find(',');
        auto item = spec.substr(0, comma);
        spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
        if (item.empty())
            continue;

        auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw validation_error("caps: expected key=value, got '" + std::string(item) + "'");
        auto key = item.substr(0, eq);
        auto text = item.substr(eq + 1);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
            throw validation_error("caps: '" + std::string(key) + "' needs a positive integer");

        const std::size_t ceiling = key == "search_nodes" || key == "oracle_nodes" ? 64 : hard_max;
        if (value > ceiling)
            throw validation_error("caps: '" + std::string(key) + "' cannot exceed " +
                                   std::to_string(ceiling));

        if (key == "search_nodes")
            base.search_nodes = value;
        else if (key == "oracle_nodes")
            base.oracle_nodes = value;
        else if (key == "leader_nodes")
            base.leader_nodes = value;
        else if (key == "sat_vars")
            base.sat_vars = value;
        else if (key == "adversarial_vars")
            base.adversarial_vars = value;
        else
            throw validation_error("caps: unknown key '" + std::string(key) + "'");
    }
    return base;
}

Limits Limits::from_env() {
    const char* env = std::getenv("STACKELKEP_CAPS");
    return env ? parse(env) : Limits{};
}

} // namespace stackelkep
