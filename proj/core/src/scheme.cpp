#include "fdnoma/scheme.hpp"

namespace fdnoma {

std::string_view scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::CFdbNomaOptimal: return "CFdbNomaOptimal";
    case SchemeKind::CFdbNomaSuboptimal: return "CFdbNomaSuboptimal";
    case SchemeKind::FdbNoma: return "FdbNoma";
    case SchemeKind::FdbOma: return "FdbOma";
    case SchemeKind::HdbNoma: return "HdbNoma";
  }
  return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
  for (SchemeKind kind : kAllSchemes) {
    if (scheme_name(kind) == name) return kind;
  }
  return std::nullopt;
}

}  // namespace fdnoma
