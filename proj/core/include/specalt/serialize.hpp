#pragma once

#include <nlohmann/json.hpp>

#include "specalt/lattice.hpp"
#include "specalt/tables.hpp"
#include "specalt/unknotting.hpp"

namespace specalt {

using json = nlohmann::json;

void to_json(json& j, const LatticeEmbedding& e);
void from_json(const json& j, LatticeEmbedding& e);
void to_json(json& j, const CoordinatePairing& p);
void to_json(json& j, const ObstructionVerdict& v);
void to_json(json& j, const Move& m);
void from_json(const json& j, Move& m);
void to_json(json& j, const UnlinkCertificate& c);
void to_json(json& j, const SearchResult& r);
void to_json(json& j, const UnlinkingVerdict& v);
void to_json(json& j, const Range& r);
void to_json(json& j, const ReportRow& r);

}  // namespace specalt
