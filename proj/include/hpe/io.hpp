#pragma once

#include "hpe/electro.hpp"
#include "hpe/partner.hpp"

#include "json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hpe {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.3.0";

Json to_json(const ExactPoly& p);
ExactPoly poly_from_json(const Json& j);
Json to_json(const LaurentTail& t);
LaurentTail tail_from_json(const Json& j);
Json params_to_json(const std::map<std::string, Rat>& p);
std::map<std::string, Rat> params_from_json(const Json& j);

Json to_json(const SemiclassicalWeight& w);
SemiclassicalWeight weight_from_json(const Json& j);

// exact record plus the weights it was built from
Json record_to_json(const MopRecord& rec, const std::vector<SemiclassicalWeight>& ws);
std::pair<MopRecord, std::vector<SemiclassicalWeight>> record_from_json(const Json& j);

Json to_json(const ZeroSet& z, int digits = 40);
Json to_json(const InterlaceReport& r);
Json to_json(const EquilibriumReport& r, const ZeroSet& z, int digits = 30);
Json to_json(const std::vector<IdentityCheck>& checks);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hpe
