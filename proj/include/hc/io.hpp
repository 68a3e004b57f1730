#pragma once

#include <string>

#include <json.hpp>

#include "hc/deform.hpp"
#include "hc/hopf.hpp"
#include "hc/invariants.hpp"
#include "hc/lie.hpp"
#include "hc/pbw.hpp"

namespace hc::io {

using Json = nlohmann::ordered_json;

Json to_json(const Series& s);
Series series_from_json(const Json& j);

Json to_json(const LieAlgebraSpec& spec);
LieAlgebraSpec algebra_from_json(const Json& j);
LieAlgebraSpec load_algebra(const std::string& path);

Json to_json(const LieAlgebraSpec& spec, const LieTensor& t);
LieTensor lie_tensor_from_json(const LieAlgebraSpec& spec, const Json& j);

Json to_json(const RewriteSystem& rs, const Tensor& t);
Tensor tensor_from_json(const RewriteSystem& rs, const Json& j);

Json to_json(const AxiomReport& r);
Json to_json(const HopfSpec& h);
Json to_json(const IsoResult& r);
Json to_json(const RewriteSystem& rs, const TwistResult& r);
Json to_json(const LieAlgebraSpec& spec, const SymTensor& t);
Json to_json(const LieAlgebraSpec& spec, const RestrictionReport& r);
Json to_json(const D0Diagnostics& d);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

} // namespace hc::io
