#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace fdnoma {

/// Transmission schemes compared by the simulator.
enum class SchemeKind {
  CFdbNomaOptimal,     ///< C-RAN full-duplex NOMA, global (polyblock) power allocation
  CFdbNomaSuboptimal,  ///< C-RAN full-duplex NOMA, SCA power allocation
  FdbNoma,             ///< full-duplex NOMA without DL-to-UL cancellation
  FdbOma,              ///< full-duplex, orthogonal subbands per DL/UL pair
  HdbNoma,             ///< half-duplex NOMA, DL and UL in orthogonal halves
};

inline constexpr std::array<SchemeKind, 5> kAllSchemes = {
    SchemeKind::CFdbNomaOptimal, SchemeKind::CFdbNomaSuboptimal, SchemeKind::FdbNoma,
    SchemeKind::FdbOma, SchemeKind::HdbNoma};

enum class DuplexMode { Full, Half };
enum class AccessMode { Noma, Oma };
enum class DuCancellation { Residual, None, NotApplicable };

struct SchemeTraits {
  DuplexMode duplex;
  AccessMode access;
  DuCancellation du_cancellation;
};

constexpr SchemeTraits scheme_traits(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::CFdbNomaOptimal:
    case SchemeKind::CFdbNomaSuboptimal:
      return {DuplexMode::Full, AccessMode::Noma, DuCancellation::Residual};
    case SchemeKind::FdbNoma:
      return {DuplexMode::Full, AccessMode::Noma, DuCancellation::None};
    case SchemeKind::FdbOma:
      return {DuplexMode::Full, AccessMode::Oma, DuCancellation::Residual};
    case SchemeKind::HdbNoma:
      return {DuplexMode::Half, AccessMode::Noma, DuCancellation::NotApplicable};
  }
  return {DuplexMode::Full, AccessMode::Noma, DuCancellation::Residual};
}

std::string_view scheme_name(SchemeKind kind);
std::optional<SchemeKind> parse_scheme(std::string_view name);

}  // namespace fdnoma
