#include "aerogrid/model_ir.hpp"

#include "aerogrid/error.hpp"

namespace aerogrid {

const char* row_tag_name(RowTag tag) {
  switch (tag) {
    case RowTag::FlowContinuity: return "flow.continuity";
    case RowTag::Demand: return "demand";
    case RowTag::VirtualForce: return "virtual.force";
    case RowTag::StartCap: return "start.cap";
    case RowTag::ChargeGate: return "charge.gate";
    case RowTag::ChargeVirtual: return "charge.virtual";
    case RowTag::SocDynamics: return "soc.dynamics";
    case RowTag::SocInit: return "soc.init";
    case RowTag::ApronLimit: return "apron.limit";
    case RowTag::PowerSplit: return "power.split";
    case RowTag::BessDynCharge: return "bess.dyn.charge";
    case RowTag::BessDynDischarge: return "bess.dyn.discharge";
    case RowTag::BessPeriodic: return "bess.periodic";
    case RowTag::BessFloor: return "bess.floor";
    case RowTag::SolarCap: return "solar.cap";
  }
  return "unknown";
}

int ModelIR::add_col(double lower, double upper, double obj, bool is_integer, std::string name) {
  col_lower.push_back(lower);
  col_upper.push_back(upper);
  objective.push_back(obj);
  integer.push_back(is_integer ? 1 : 0);
  col_names.push_back(std::move(name));
  return num_cols() - 1;
}

void ModelIR::add_row(Row row) {
  if (row.cols.empty()) fail("ModelIR: empty row '" + row.name + "'");
  if (row.cols.size() != row.coefs.size()) fail("ModelIR: row '" + row.name + "' cols/coefs mismatch");
  rows.push_back(std::move(row));
}

std::map<RowTag, int> ModelIR::rows_per_tag() const {
  std::map<RowTag, int> counts;
  for (const Row& r : rows) ++counts[r.tag];
  return counts;
}

}  // namespace aerogrid
