#ifndef FFK_JSONIO_HPP
#define FFK_JSONIO_HPP

#include <json.hpp>

#include "ffk/geosol.hpp"
#include "ffk/kronecker.hpp"
#include "ffk/oracle.hpp"

namespace ffk {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "ffkronecker/1";

Json element_to_json(const FieldElement& e);
FieldElement element_from_json(const Json& j, const Field& f);

Json poly_to_json(const DensePoly& p);
DensePoly poly_from_json(const Json& j, const Field& f);

Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

Json forms_to_json(const LinearForms& forms);
LinearForms forms_from_json(const Json& j, const Field& f);

Json fiber_to_json(const LiftingFiber& fb);
LiftingFiber fiber_from_json(const Json& j);

Json trace_to_json(const SolveTrace& t, u64 seed);

} // namespace ffk

#endif
