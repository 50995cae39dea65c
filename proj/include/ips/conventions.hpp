#pragma once

namespace ips {

/// Version tag of the phase-space conventions used throughout the library
/// (see CONVENTIONS.md). Embedded in every exported dataset envelope so
/// that figures stay traceable to the convention set that produced them.
inline constexpr const char* convention_ledger_version = "ips-conventions-1";

}  // namespace ips
