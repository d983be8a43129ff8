#pragma once

#include "omega/calculus.hpp"
#include "omega/integral.hpp"

#include <json.hpp>

namespace omega {

using Json = nlohmann::ordered_json;

Json to_json(const Hyperreal& x);
Json to_json(const OmegaSumResult& r);
Json to_json(const IntegralVerdict& v);
Json to_json(const GrowthReport& g);
Json to_json(const SplitSumReport& s);
Json to_json(const CheckReport& r);
Json to_json(const AdditivityReport& r);
Json to_json(const DirichletReport& r);
Json to_json(const BoundsReport& r);
Json to_json(const Ftc1Report& r);
Json to_json(const L2Report& r);
Json to_json(const Ftc2Report& r);
Json to_json(const TelescopeReport& r);

} // namespace omega
