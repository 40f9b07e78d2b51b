#include "stackelkep/serialize.hpp"

#include "stackelkep/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace stackelkep {

using json = nlohmann::ordered_json;

namespace {

std::string dump(const json& j) { return j.dump() + "\n"; }

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string(what) + ": " + e.what());
    }
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object())
        throw validation_error(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw validation_error(where + (where.empty() ? "" : ".") + key + ": missing");
    return *it;
}

std::int64_t as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw validation_error(where + ": expected an integer");
    return j.get<std::int64_t>();
}

NodeId as_node(const json& j, const std::string& where) {
    const auto v = as_int(j, where);
    if (v < 0 || v > static_cast<std::int64_t>(std::numeric_limits<NodeId>::max()))
        throw validation_error(where + ": node id out of range");
    return static_cast<NodeId>(v);
}

json ids(const NodeSet& s) {
    json a = json::array();
    for (auto v : s)
        a.push_back(v);
    return a;
}

json cycles_json(const CyclePacking& p) {
    json a = json::array();
    for (const auto& c : p.cycles)
        a.push_back(c.nodes);
    return a;
}

std::string names(const KepInstance& inst, const std::vector<NodeId>& nodes) {
    std::string out;
    for (auto v : nodes)
        out += (out.empty() ? "" : " ") + inst.display_name(v);
    return out;
}

} // namespace

std::string instance_to_json(const KepInstance& inst) {
    json j;
    j["K"] = inst.max_cycle_length();
    j["k"] = inst.threshold() ? json(*inst.threshold()) : json(nullptr);
    json nodes = json::array();
    for (NodeId v = 0; v < inst.size(); ++v) {
        const auto& n = inst.node(v);
        json node;
        node["id"] = v;
        node["owner"] = n.owner == Owner::Leader ? "leader" : "follower";
        node["label"] = n.label ? json(*n.label) : json(nullptr);
        nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);
    json arcs = json::array();
    for (const auto& a : inst.arcs())
        arcs.push_back({a.from, a.to});
    j["arcs"] = std::move(arcs);
    return dump(j);
}

KepInstance instance_from_json(std::string_view text) {
    const auto j = parse_json(text, "instance");
    if (!j.is_object())
        throw validation_error("instance: expected a JSON object");
    const auto K = as_int(field(j, "K", ""), "K");
    if (K < 2 || K > 64)
        throw validation_error("K: must be between 2 and 64, got " + std::to_string(K));
    std::optional<std::int64_t> k;
    if (auto it = j.find("k"); it != j.end() && !it->is_null())
        k = as_int(*it, "k");

    const auto& nodes_json = field(j, "nodes", "");
    if (!nodes_json.is_array())
        throw validation_error("nodes: expected an array");
    std::vector<std::optional<Node>> slots(nodes_json.size());
    for (std::size_t i = 0; i < nodes_json.size(); ++i) {
        const auto where = "nodes[" + std::to_string(i) + "]";
        const auto& n = nodes_json[i];
        const auto id = as_node(field(n, "id", where), where + ".id");
        if (id >= slots.size())
            throw validation_error(where + ".id: " + std::to_string(id) +
                                   " is not below the node count " + std::to_string(slots.size()));
        if (slots[id])
            throw validation_error(where + ".id: duplicate id " + std::to_string(id));
        const auto& owner = field(n, "owner", where);
        Node node;
        if (owner == "leader")
            node.owner = Owner::Leader;
        else if (owner == "follower")
            node.owner = Owner::Follower;
        else
            throw validation_error(where + ".owner: expected \"leader\" or \"follower\", got " +
                                   owner.dump());
        if (auto it = n.find("label"); it != n.end() && !it->is_null()) {
            if (!it->is_string())
                throw validation_error(where + ".label: expected a string or null");
            node.label = it->get<std::string>();
        }
        slots[id] = std::move(node);
    }
    std::vector<Node> nodes;
    for (auto& s : slots)
        nodes.push_back(std::move(*s));

    const auto& arcs_json = field(j, "arcs", "");
    if (!arcs_json.is_array())
        throw validation_error("arcs: expected an array");
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < arcs_json.size(); ++i) {
        const auto where = "arcs[" + std::to_string(i) + "]";
        const auto& a = arcs_json[i];
        if (!a.is_array() || a.size() != 2)
            throw validation_error(where + ": expected [from, to]");
        arcs.push_back({as_node(a[0], where + "[0]"), as_node(a[1], where + "[1]")});
    }
    return KepInstance(std::move(nodes), std::move(arcs), static_cast<int>(K), k);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out << content;
    if (!out)
        throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

KepInstance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

void save_instance(const KepInstance& inst, const std::string& path) {
    write_file(path, instance_to_json(inst));
}

std::string packing_to_json(const PackingResult& r) {
    json j;
    j["cycles"] = cycles_json(r.packing);
    j["size"] = r.size;
    j["u_covered"] = r.u_covered;
    return dump(j);
}

CyclePacking packing_from_json(std::string_view text) {
    const auto j = parse_json(text, "packing");
    const auto& cycles = field(j, "cycles", "");
    if (!cycles.is_array())
        throw validation_error("cycles: expected an array");
    CyclePacking p;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const auto where = "cycles[" + std::to_string(i) + "]";
        if (!cycles[i].is_array() || cycles[i].empty())
            throw validation_error(where + ": expected a non-empty array of node ids");
        std::vector<NodeId> nodes;
        for (std::size_t k = 0; k < cycles[i].size(); ++k)
            nodes.push_back(as_node(cycles[i][k], where + "[" + std::to_string(k) + "]"));
        p.cycles.push_back(canonical_cycle(std::move(nodes)));
    }
    p.normalize();
    return p;
}

std::string report_to_json(const LeaderReport& r, const std::vector<StrategyRow>* table) {
    json j;
    j["best_value"] = r.best_value;
    j["best_strategy"] = ids(r.best_strategy);
    j["decision"] = r.decision ? json(*r.decision) : json(nullptr);
    if (table) {
        json rows = json::array();
        for (const auto& row : *table)
            rows.push_back({{"strategy", ids(row.strategy)}, {"value", row.value}});
        j["table"] = std::move(rows);
    } else {
        j["table"] = nullptr;
    }
    return dump(j);
}

std::string report_to_text(const KepInstance& inst, const LeaderReport& r,
                           const std::vector<StrategyRow>* table) {
    std::ostringstream out;
    out << "best value     " << r.best_value << "\n";
    out << "best strategy  {" << names(inst, r.best_strategy.ids()) << "}\n";
    out << "internal       " << r.internal.size << " node(s) in G[S]\n";
    out << "external       " << r.external.size << " node(s), " << r.external.u_covered
        << " leader node(s) covered in G[V\\S]\n";
    if (r.decision)
        out << "decision       " << (*r.decision ? "YES" : "NO") << "\n";
    if (table) {
        out << "strategy table\n";
        for (const auto& row : *table)
            out << "  {" << names(inst, row.strategy.ids()) << "} " << row.value << "\n";
    }
    return out.str();
}

std::string verdict_to_json(const Verdict& v) {
    json j;
    j["sat_answer"] = v.sat_answer;
    j["kep_decision"] = v.kep_decision;
    j["equal"] = v.equal;
    j["witness_strategy"] = v.witness_strategy ? json(v.witness_labels) : json(nullptr);
    return dump(j);
}

std::string verdict_to_text(const Verdict& v) {
    std::ostringstream out;
    out << "adversarial SAT  " << (v.sat_answer ? "YES" : "NO") << "\n";
    out << "Stackelberg KEP  " << (v.kep_decision ? "YES" : "NO") << " (best value "
        << v.best_value << ", threshold " << v.threshold << ")\n";
    if (v.witness_strategy) {
        out << "witness          {";
        for (std::size_t i = 0; i < v.witness_labels.size(); ++i)
            out << (i ? " " : "") << v.witness_labels[i];
        out << "} value " << v.witness_value.value_or(0) << "\n";
    }
    out << (v.equal ? "equal\n" : "MISMATCH: the reduction disagrees with brute force\n");
    return out.str();
}

std::string equisat_to_json(const EquisatVerdict& v) {
    json j;
    j["input_satisfiable"] = v.input_satisfiable;
    j["output_satisfiable"] = v.output_satisfiable;
    j["equal"] = v.equal;
    return dump(j);
}

Classification classify_packing(const KepInstance& inst, const CyclePacking& packing) {
    const auto roles = RoleMap::from_instance(inst);
    Classification c;
    c.cycles = packing.cycles;
    c.types = classify_cycles(inst, roles, packing);
    for (const auto& g : roles.gadgets())
        c.gadgets.push_back({g.var, g.side, classify_gadget(inst, roles, packing, g.var)});
    c.d_covered = packing.covered().contains(roles.d());
    return c;
}

std::string classification_to_json(const KepInstance& inst, const Classification& c) {
    json j;
    json gadgets = json::array();
    for (const auto& g : c.gadgets)
        gadgets.push_back(
            {{"var", g.var}, {"side", g.side == Side::X ? "X" : "Y"}, {"class", to_string(g.cls)}});
    j["gadgets"] = std::move(gadgets);
    json cycles = json::array();
    for (std::size_t i = 0; i < c.cycles.size(); ++i) {
        json labels = json::array();
        for (auto v : c.cycles[i].nodes)
            labels.push_back(inst.display_name(v));
        cycles.push_back({{"cycle", std::move(labels)}, {"type", to_string(c.types[i])}});
    }
    j["cycles"] = std::move(cycles);
    j["d_covered"] = c.d_covered;
    return dump(j);
}

std::string classification_to_text(const KepInstance& inst, const Classification& c) {
    std::ostringstream out;
    for (const auto& g : c.gadgets)
        out << (g.side == Side::X ? "x" : "y") << g.var << "  " << to_string(g.cls) << "\n";
    for (std::size_t i = 0; i < c.cycles.size(); ++i)
        out << "(" << names(inst, c.cycles[i].nodes) << ")  " << to_string(c.types[i]) << "\n";
    out << "d " << (c.d_covered ? "covered" : "uncovered") << "\n";
    return out.str();
}

std::string profile_to_json(const Validation22& v) {
    json j;
    j["valid"] = v.valid;
    json profile = json::array();
    for (std::size_t i = 0; i < v.profile.size(); ++i)
        profile.push_back({{"var", i + 1}, {"pos", v.profile[i].positive}, {"neg", v.profile[i].negative}});
    j["profile"] = std::move(profile);
    return dump(j);
}

} // namespace stackelkep
