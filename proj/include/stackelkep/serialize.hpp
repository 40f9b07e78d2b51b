#pragma once

#include "stackelkep/graph.hpp"
#include "stackelkep/packing.hpp"
#include "stackelkep/reduction.hpp"
#include "stackelkep/sat.hpp"
#include "stackelkep/stackelberg.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stackelkep {

// JSON documents are written compactly with a trailing newline; output is a
// pure function of the value, so equal values give byte-identical files.

std::string instance_to_json(const KepInstance& inst);
/// Parse errors carry the JSON parser position; validation errors name the
/// offending field, e.g. `nodes[2].owner`.
KepInstance instance_from_json(std::string_view text);
KepInstance load_instance(const std::string& path);
void save_instance(const KepInstance& inst, const std::string& path);

std::string packing_to_json(const PackingResult& r);
/// Reads `cycles`; size and u_covered are recomputed, not trusted.
CyclePacking packing_from_json(std::string_view text);

std::string report_to_json(const LeaderReport& r, const std::vector<StrategyRow>* table = nullptr);
std::string report_to_text(const KepInstance& inst, const LeaderReport& r,
                           const std::vector<StrategyRow>* table = nullptr);

std::string verdict_to_json(const Verdict& v);
std::string verdict_to_text(const Verdict& v);

struct EquisatVerdict {
    bool input_satisfiable = false;
    bool output_satisfiable = false;
    bool equal = false;
};
std::string equisat_to_json(const EquisatVerdict& v);

struct GadgetRow {
    VarId var = 0;
    Side side = Side::X;
    GadgetClass cls = GadgetClass::Other;
};

struct Classification {
    std::vector<GadgetRow> gadgets;
    std::vector<Cycle> cycles;
    std::vector<CycleType> types;
    bool d_covered = false;
};

Classification classify_packing(const KepInstance& inst, const CyclePacking& packing);
std::string classification_to_json(const KepInstance& inst, const Classification& c);
std::string classification_to_text(const KepInstance& inst, const Classification& c);

std::string profile_to_json(const Validation22& v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace stackelkep
