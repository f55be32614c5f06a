#pragma once

#include "liestab/builtins.hpp"
#include "liestab/stability.hpp"

#include <json.hpp>

#include <string>

namespace liestab {

using Json = nlohmann::json;

/// Algebra from a catalog name or an object with "dim", optional "labels" and
/// either "structure_constants" (flat, (i*d+j)*d+k) or "brackets":
/// [{"x": "t1", "y": "t4", "result": {"t4": 1}}].
LieAlgebra algebra_from_json(const Json& j);
Json algebra_to_json(const LieAlgebra& a);

/// Scenario file. Errors are InputError messages naming the offending field.
Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::string& path);
Json scenario_to_json(const Scenario& s);

/// "X1" / "W2" (1-based).
Slot parse_slot(const std::string& label);

/// CSV with a '#' comment header; columns k, the coordinates of every state
/// slot, the norm, quotient norms per level and per-slot norms. Values use %.17g.
std::string trajectory_csv(const ClassASystem& sys, const Trajectory& tr, const std::string& title);
Json trajectory_json(const ClassASystem& sys, const Trajectory& tr);

Json to_json(const NilpotentCertificate& c);
Json to_json(const SolvableReport& r);
Json to_json(const DeadbeatCertificate& c);
Json to_json(const DeadbeatRunReport& r);
Json to_json(const EnvelopeFit& f);
Json to_json(const EquilibriumReport& r);
Json to_json(const InvarianceReport& r);
Json to_json(const JacobianReport& r);
Json to_json(const MajorantReport& r);
Json to_json(const RadiusEstimate& r);

void write_text(const std::string& path, const std::string& text);

}  // namespace liestab
