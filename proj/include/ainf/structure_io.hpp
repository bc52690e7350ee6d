#pragma once

#include <string>
#include <variant>

#include "ainf/ainfty.hpp"
#include "json.hpp"

namespace ainf {

// A-infinity structure JSON. Basis elements are numbered globally in ascending
// degree; within a block, the source (coalgebra) or target (algebra) index is
// local to its degree.
//   coalgebra: {"kind":"coalgebra","field","dims","labels","arity_bound",
//               "ops":[{"n","blocks":[{"src_degree","entries":[[src, [tgt...], "coef"]]}]}]}
//   algebra:   same header, blocks {"tgt_degree","entries":[[[src...], tgt, "coef"]]}
nlohmann::json to_json(const AInftyCoalgebra& s);
nlohmann::json to_json(const AInftyAlgebra& s);

using AnyStructure = std::variant<AInftyCoalgebra, AInftyAlgebra>;
// Throws ParseError on malformed input.
AnyStructure structure_from_json(const nlohmann::json& j);
AInftyCoalgebra coalgebra_from_json(const nlohmann::json& j);
AInftyAlgebra algebra_from_json(const nlohmann::json& j);
AnyStructure load_structure(const std::string& path);

nlohmann::json read_json_file(const std::string& path);

}  // namespace ainf
